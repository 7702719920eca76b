#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "conceptkit/dataset.hpp"
#include "conceptkit/text.hpp"

namespace conceptkit {

// Dataset directory layout: features.csv (leading "# range lo hi" comment,
// then header f1..fm), concepts.csv (header = concept names, 0/1 body),
// labels.csv (single "label" column), optional groups.json (array of arrays
// of 1-based concept indices).

inline void save_dataset(const ConceptDataset& d, const std::string& dir) {
    d.validate();
    std::filesystem::create_directories(dir);

    std::string feat = "# range " + format_double(d.feature_lo) + " " + format_double(d.feature_hi) + "\n";
    {
        std::vector<std::string> hdr;
        for (std::size_t j = 0; j < d.num_features(); ++j) hdr.push_back("f" + std::to_string(j + 1));
        feat += join_csv(hdr) + "\n";
        for (std::size_t i = 0; i < d.n(); ++i) {
            std::vector<std::string> row;
            for (std::size_t j = 0; j < d.num_features(); ++j)
                row.push_back(format_double(d.features(i, j)));
            feat += join_csv(row) + "\n";
        }
    }
    write_text_file(dir + "/features.csv", feat);

    std::string conc = join_csv(d.concept_names) + "\n";
    for (std::size_t i = 0; i < d.n(); ++i) {
        std::string row;
        for (std::size_t j = 0; j < d.num_concepts(); ++j) {
            if (j) row += ',';
            row += d.concepts(i, j) ? '1' : '0';
        }
        conc += row + "\n";
    }
    write_text_file(dir + "/concepts.csv", conc);

    std::string lab = "label\n";
    for (int y : d.labels) lab += std::to_string(y) + "\n";
    write_text_file(dir + "/labels.csv", lab);

    if (d.groups) {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& g : *d.groups) j.push_back(g);
        write_text_file(dir + "/groups.json", j.dump() + "\n");
    }
}

inline ConceptDataset load_dataset(const std::string& features_path, const std::string& concepts_path,
                                   const std::string& labels_path) {
    ConceptDataset d;

    {
        auto lines = read_lines(features_path);
        std::size_t li = 0;
        bool have_range = false;
        while (li < lines.size() && !lines[li].empty() && lines[li][0] == '#') {
            const auto& l = lines[li];
            if (l.rfind("# range ", 0) == 0) {
                std::istringstream ss(l.substr(8));
                std::string lo_s, hi_s;
                if (!(ss >> lo_s >> hi_s))
                    throw std::invalid_argument("features.csv: malformed range comment");
                d.feature_lo = parse_double(lo_s, "features.csv range");
                d.feature_hi = parse_double(hi_s, "features.csv range");
                have_range = true;
            }
            ++li;
        }
        if (!have_range) throw std::invalid_argument("features.csv: missing '# range lo hi' comment");
        if (li >= lines.size()) throw std::invalid_argument("features.csv: missing header");
        const auto header = split_csv_line(lines[li]);
        for (std::size_t j = 0; j < header.size(); ++j)
            if (header[j] != "f" + std::to_string(j + 1))
                throw std::invalid_argument("features.csv: unknown header column '" + header[j] + "'");
        ++li;
        const std::size_t m = header.size();
        std::vector<double> vals;
        std::size_t rows = 0;
        for (; li < lines.size(); ++li) {
            if (lines[li].empty()) continue;
            const auto fields = split_csv_line(lines[li]);
            if (fields.size() != m)
                throw std::invalid_argument("features.csv: dimension mismatch at row " + std::to_string(rows + 1));
            for (const auto& f : fields) vals.push_back(parse_double(f, "features.csv"));
            ++rows;
        }
        d.features = Matrix(rows, m);
        d.features.data = std::move(vals);
    }

    {
        auto lines = read_lines(concepts_path);
        if (lines.empty()) throw std::invalid_argument("concepts.csv: missing header");
        d.concept_names = split_csv_line(lines[0]);
        const std::size_t k = d.concept_names.size();
        std::vector<std::uint8_t> bits;
        std::size_t rows = 0;
        for (std::size_t li = 1; li < lines.size(); ++li) {
            if (lines[li].empty()) continue;
            const auto fields = split_csv_line(lines[li]);
            if (fields.size() != k)
                throw std::invalid_argument("concepts.csv: dimension mismatch at row " + std::to_string(rows + 1));
            for (const auto& f : fields) {
                if (f == "0")
                    bits.push_back(0);
                else if (f == "1")
                    bits.push_back(1);
                else
                    throw std::invalid_argument("concepts.csv: non-binary concept entry '" + f + "'");
            }
            ++rows;
        }
        d.concepts = BinaryMatrix(rows, k);
        d.concepts.data = std::move(bits);
    }

    {
        auto lines = read_lines(labels_path);
        if (lines.empty() || lines[0] != "label")
            throw std::invalid_argument("labels.csv: unknown header (expected 'label')");
        for (std::size_t li = 1; li < lines.size(); ++li) {
            if (lines[li].empty()) continue;
            try {
                d.labels.push_back(std::stoi(lines[li]));
            } catch (const std::exception&) {
                throw std::invalid_argument("labels.csv: cannot parse label '" + lines[li] + "'");
            }
        }
    }

    if (d.features.rows != d.concepts.rows || d.concepts.rows != d.labels.size())
        throw std::invalid_argument("dataset: dimension mismatch between files");
    d.validate();
    return d;
}

inline ConceptDataset load_dataset_dir(const std::string& dir) {
    ConceptDataset d = load_dataset(dir + "/features.csv", dir + "/concepts.csv", dir + "/labels.csv");
    const std::string gpath = dir + "/groups.json";
    if (std::filesystem::exists(gpath)) {
        auto j = nlohmann::json::parse(read_text_file(gpath));
        std::vector<std::vector<int>> groups;
        for (const auto& g : j) groups.push_back(g.get<std::vector<int>>());
        d.groups = std::move(groups);
        d.validate();
    }
    return d;
}

// Profile distribution file: {"profiles": [{"pattern": [0,1,...], "prob": p}, ...]}
inline ProfileDistribution load_profiles(const std::string& path) {
    auto j = nlohmann::json::parse(read_text_file(path));
    ProfileDistribution p;
    for (const auto& e : j.at("profiles")) {
        ProfileDistribution::Profile pr;
        pr.pattern = e.at("pattern").get<std::vector<std::uint8_t>>();
        pr.prob = e.at("prob").get<double>();
        p.profiles.push_back(std::move(pr));
    }
    p.validate();
    return p;
}

inline void save_profiles(const ProfileDistribution& p, const std::string& path) {
    p.validate();
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& pr : p.profiles) arr.push_back({{"pattern", pr.pattern}, {"prob", pr.prob}});
    write_text_file(path, nlohmann::json{{"profiles", arr}}.dump(2) + "\n");
}

}  // namespace conceptkit
