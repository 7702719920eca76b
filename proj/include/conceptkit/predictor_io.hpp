#pragma once

#include <string>

#include <json.hpp>

#include "conceptkit/predictor.hpp"
#include "conceptkit/text.hpp"

namespace conceptkit {

// Predictors share the basis file family: a JSON document with a "kind"
// discriminator and a flat row-major weight block.

namespace detail {

inline nlohmann::json matrix_to_json(const Matrix& m) {
    return {{"rows", m.rows}, {"cols", m.cols}, {"data", m.data}};
}

inline Matrix matrix_from_json(const nlohmann::json& j) {
    Matrix m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
    auto data = j.at("data").get<std::vector<double>>();
    if (data.size() != m.rows * m.cols)
        throw std::invalid_argument("predictor file: weight block size mismatch");
    m.data = std::move(data);
    return m;
}

}  // namespace detail

inline void save_concept_predictor(const ConceptPredictor& g, const std::string& path) {
    nlohmann::json doc{{"kind", "concept_predictor"}, {"weights", detail::matrix_to_json(g.weights)}};
    write_text_file(path, doc.dump(2) + "\n");
}

inline void save_label_predictor(const LabelPredictor& f, const std::string& path) {
    nlohmann::json doc{{"kind", "label_predictor"}, {"weights", detail::matrix_to_json(f.weights)}};
    write_text_file(path, doc.dump(2) + "\n");
}

inline ConceptPredictor load_concept_predictor(const std::string& path) {
    auto doc = nlohmann::json::parse(read_text_file(path));
    if (doc.at("kind").get<std::string>() != "concept_predictor")
        throw std::invalid_argument("predictor file: kind is not 'concept_predictor'");
    return ConceptPredictor{detail::matrix_from_json(doc.at("weights"))};
}

inline LabelPredictor load_label_predictor(const std::string& path) {
    auto doc = nlohmann::json::parse(read_text_file(path));
    if (doc.at("kind").get<std::string>() != "label_predictor")
        throw std::invalid_argument("predictor file: kind is not 'label_predictor'");
    return LabelPredictor{detail::matrix_from_json(doc.at("weights"))};
}

}  // namespace conceptkit
