#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "conceptkit/basis.hpp"
#include "conceptkit/text.hpp"

namespace conceptkit {

// Agglomerative Ward clustering of the concept vectors.
//
// Cluster ids: leaves 1..k, internal nodes k+1..2k-1 in merge order. The
// recorded height is the increase in total within-cluster sum of squares
// caused by the merge (so two singletons merge at squared-distance / 2);
// conventions differ across tools, hence the explicit statement.
struct Dendrogram {
    struct Merge {
        std::size_t left = 0;   // cluster id
        std::size_t right = 0;  // cluster id, left < right
        double height = 0.0;
        std::size_t size = 0;   // members of the new cluster
    };
    std::vector<std::string> leaves;  // concept names, leaf id j+1 <-> leaves[j]
    std::vector<Merge> merges;        // k-1 entries
};

inline Dendrogram ward_cluster(const ConceptBasis& b) {
    const std::size_t k = b.size();
    if (k < 2) throw std::invalid_argument("ward_cluster: k >= 2 required");
    for (const auto& v : b.vectors)
        for (double x : v)
            if (!std::isfinite(x)) throw std::invalid_argument("ward_cluster: non-finite vector entry");

    Dendrogram dg;
    dg.leaves = b.names;

    // Active clusters keyed by id; dist[a][b] holds the Ward merge cost
    // (SSQ increase) between active clusters, maintained with the
    // Lance-Williams update.
    struct Cluster {
        std::size_t id = 0;
        std::size_t size = 0;
    };
    std::vector<Cluster> active;
    for (std::size_t j = 0; j < k; ++j) active.push_back({j + 1, 1});

    std::vector<std::vector<double>> cost(k, std::vector<double>(k, 0.0));
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t c = a + 1; c < k; ++c) {
            double d2 = 0.0;
            for (std::size_t t = 0; t < b.dim(); ++t) {
                const double diff = b.vectors[a][t] - b.vectors[c][t];
                d2 += diff * diff;
            }
            cost[a][c] = cost[c][a] = 0.5 * d2;
        }

    std::size_t next_id = k + 1;
    while (active.size() > 1) {
        // pick the cheapest pair; ties resolve to the smaller (left,right) ids
        std::size_t bi = 0, bj = 1;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < active.size(); ++i)
            for (std::size_t j = i + 1; j < active.size(); ++j) {
                const double c = cost[i][j];
                const auto lo = std::min(active[i].id, active[j].id);
                const auto hi = std::max(active[i].id, active[j].id);
                const auto blo = std::min(active[bi].id, active[bj].id);
                const auto bhi = std::max(active[bi].id, active[bj].id);
                if (c < best || (c == best && (lo < blo || (lo == blo && hi < bhi)))) {
                    best = c;
                    bi = i;
                    bj = j;
                }
            }

        const std::size_t na = active[bi].size, nb = active[bj].size;
        Dendrogram::Merge m;
        m.left = std::min(active[bi].id, active[bj].id);
        m.right = std::max(active[bi].id, active[bj].id);
        m.height = best;
        m.size = na + nb;
        dg.merges.push_back(m);

        // Lance-Williams for Ward on the SSQ-increase values
        for (std::size_t o = 0; o < active.size(); ++o) {
            if (o == bi || o == bj) continue;
            const double no = static_cast<double>(active[o].size);
            const double updated =
                ((static_cast<double>(na) + no) * cost[bi][o] + (static_cast<double>(nb) + no) * cost[bj][o] -
                 no * best) /
                (static_cast<double>(na + nb) + no);
            cost[bi][o] = cost[o][bi] = updated;
        }
        active[bi] = {next_id++, na + nb};

        // drop slot bj by swapping in the last active slot
        const std::size_t last = active.size() - 1;
        if (bj != last) {
            active[bj] = active[last];
            for (std::size_t o = 0; o < active.size(); ++o) {
                cost[bj][o] = cost[last][o];
                cost[o][bj] = cost[o][last];
            }
            cost[bj][bj] = 0.0;
        }
        active.pop_back();
    }
    return dg;
}

// Dendrogram file: {"leaves": [...], "merges": [[left, right, height, size], ...]}
inline std::string dendrogram_to_json(const Dendrogram& dg) {
    nlohmann::json merges = nlohmann::json::array();
    for (const auto& m : dg.merges)
        merges.push_back(nlohmann::json::array({m.left, m.right, m.height, m.size}));
    return nlohmann::json{{"leaves", dg.leaves}, {"merges", merges}}.dump(2) + "\n";
}

inline void export_dendrogram(const Dendrogram& dg, const std::string& path) {
    write_text_file(path, dendrogram_to_json(dg));
}

inline Dendrogram parse_dendrogram(const std::string& json_text) {
    auto j = nlohmann::json::parse(json_text);
    Dendrogram dg;
    dg.leaves = j.at("leaves").get<std::vector<std::string>>();
    for (const auto& e : j.at("merges")) {
        Dendrogram::Merge m;
        m.left = e.at(0).get<std::size_t>();
        m.right = e.at(1).get<std::size_t>();
        m.height = e.at(2).get<double>();
        m.size = e.at(3).get<std::size_t>();
        dg.merges.push_back(m);
    }
    return dg;
}

inline Dendrogram load_dendrogram(const std::string& path) {
    return parse_dendrogram(read_text_file(path));
}

}  // namespace conceptkit
