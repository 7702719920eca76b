#pragma once

#include <limits>
#include <string>

#include <json.hpp>

#include "conceptkit/basis.hpp"
#include "conceptkit/text.hpp"

namespace conceptkit {

// Basis file: {"dim": d, "concepts": [{"name": ..., "vector": [...]}]}.
// This is also the import contract for externally produced bases (mean
// concept embeddings, activation-space separators, ...).

inline void export_basis(const ConceptBasis& b, const std::string& path) {
    b.validate();
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t j = 0; j < b.size(); ++j)
        arr.push_back({{"name", b.names[j]}, {"vector", b.vectors[j]}});
    nlohmann::json doc{{"dim", b.dim()}, {"concepts", arr}};
    write_text_file(path, doc.dump(2) + "\n");
}

inline ConceptBasis import_basis(const std::string& path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("basis file: " + std::string(e.what()));
    }
    ConceptBasis b;
    const auto dim = doc.at("dim").get<std::size_t>();
    for (const auto& e : doc.at("concepts")) {
        b.names.push_back(e.at("name").get<std::string>());
        std::vector<double> v;
        for (const auto& entry : e.at("vector"))
            // non-numeric entries (JSON cannot spell NaN) surface as non-finite
            v.push_back(entry.is_number() ? entry.get<double>()
                                          : std::numeric_limits<double>::quiet_NaN());
        if (v.size() != dim)
            throw std::invalid_argument("basis file: ragged vector dimensions (concept '" +
                                        b.names.back() + "' has " + std::to_string(v.size()) +
                                        " entries, expected " + std::to_string(dim) + ")");
        b.vectors.push_back(std::move(v));
    }
    b.validate();
    return b;
}

}  // namespace conceptkit
