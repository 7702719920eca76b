#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "conceptkit/basis.hpp"
#include "conceptkit/dataset.hpp"
#include "conceptkit/predictor.hpp"
#include "conceptkit/text.hpp"

namespace conceptkit {

enum class VectorMetric { euclidean, manhattan, cosine_distance };

inline const char* metric_name(VectorMetric m) {
    switch (m) {
        case VectorMetric::euclidean: return "euclidean";
        case VectorMetric::manhattan: return "manhattan";
        case VectorMetric::cosine_distance: return "cosine";
    }
    return "?";
}

inline VectorMetric metric_from_name(const std::string& s) {
    if (s == "euclidean") return VectorMetric::euclidean;
    if (s == "manhattan") return VectorMetric::manhattan;
    if (s == "cosine") return VectorMetric::cosine_distance;
    throw std::invalid_argument("unknown vector metric '" + s + "'");
}

inline double vector_distance(VectorMetric metric, const std::vector<double>& a,
                              const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector_distance: dimension mismatch");
    switch (metric) {
        case VectorMetric::euclidean: {
            double acc = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
            return std::sqrt(acc);
        }
        case VectorMetric::manhattan: {
            double acc = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
            return acc;
        }
        case VectorMetric::cosine_distance: {
            double dot = 0.0, na = 0.0, nb = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) {
                dot += a[i] * b[i];
                na += a[i] * a[i];
                nb += b[i] * b[i];
            }
            if (na == 0.0 || nb == 0.0)
                throw std::invalid_argument("vector_distance: cosine distance of zero vector");
            return 1.0 - dot / (std::sqrt(na) * std::sqrt(nb));
        }
    }
    throw std::logic_error("vector_distance: unreachable");
}

// Per concept j, the t nearest *other* concepts, nearest first. Ties break
// toward the lower concept index, which makes everything downstream
// deterministic (and basis_distance(B,B) exactly 0).
struct NeighborTable {
    std::vector<std::vector<std::size_t>> neighbors;  // 0-based concept indices
    std::size_t t = 0;
};

inline NeighborTable neighbor_table(const ConceptBasis& b, VectorMetric metric, std::size_t t) {
    const std::size_t k = b.size();
    if (t < 1) throw std::invalid_argument("neighbor_table: t must be >= 1");
    if (k < 2) throw std::invalid_argument("neighbor_table: basis needs k >= 2");
    const std::size_t eff = std::min(t, k - 1);

    NeighborTable table;
    table.t = t;
    table.neighbors.resize(k);
    std::vector<std::pair<double, std::size_t>> cand;
    for (std::size_t j = 0; j < k; ++j) {
        cand.clear();
        for (std::size_t o = 0; o < k; ++o) {
            if (o == j) continue;
            cand.emplace_back(vector_distance(metric, b.vectors[j], b.vectors[o]), o);
        }
        std::sort(cand.begin(), cand.end());  // pair ordering = (distance, index)
        table.neighbors[j].reserve(eff);
        for (std::size_t i = 0; i < eff; ++i) table.neighbors[j].push_back(cand[i].second);
    }
    return table;
}

// delta_b: one minus the mean overlap of t-nearest-neighbour sets, compared
// index-by-index. The divisor is the effective neighbour-set size
// min(t, k-1), so the identity distance is 0 even when t saturates.
inline double basis_distance(const ConceptBasis& b1, const ConceptBasis& b2, VectorMetric metric,
                             std::size_t t) {
    if (b1.size() != b2.size()) throw std::invalid_argument("basis_distance: basis size mismatch");
    const std::size_t k = b1.size();
    const auto n1 = neighbor_table(b1, metric, t);
    const auto n2 = neighbor_table(b2, metric, t);
    const double eff = static_cast<double>(std::min(t, k - 1));

    double overlap_sum = 0.0;
    std::vector<char> in_set(k, 0);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t idx : n1.neighbors[j]) in_set[idx] = 1;
        std::size_t inter = 0;
        for (std::size_t idx : n2.neighbors[j]) inter += in_set[idx];
        for (std::size_t idx : n1.neighbors[j]) in_set[idx] = 0;
        overlap_sum += static_cast<double>(inter) / eff;
    }
    return 1.0 - overlap_sum / static_cast<double>(k);
}

// A basis-construction procedure parameterised by a training seed.
using BasisBuilder = std::function<ConceptBasis(const ConceptDataset&, std::uint64_t)>;

// Stability: 1 - mean delta_b over all unordered pairs of seeds.
inline double stability(const BasisBuilder& builder, const ConceptDataset& d,
                        const std::vector<std::uint64_t>& seeds, VectorMetric metric, std::size_t t,
                        std::vector<double>* pair_distances = nullptr) {
    if (seeds.size() < 2) throw std::invalid_argument("stability: needs at least 2 seeds");
    std::vector<ConceptBasis> bases;
    bases.reserve(seeds.size());
    for (auto s : seeds) bases.push_back(builder(d, s));
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < bases.size(); ++i)
        for (std::size_t j = i + 1; j < bases.size(); ++j) {
            const double dist = basis_distance(bases[i], bases[j], metric, t);
            if (pair_distances) pair_distances->push_back(dist);
            sum += dist;
            ++count;
        }
    return 1.0 - sum / static_cast<double>(count);
}

// Robustness: 1 - delta_b between the basis from d and the basis from a
// slightly perturbed copy of d. The builder gets the same training seed both
// times; the perturbation noise uses an independent stream.
inline double robustness(const BasisBuilder& builder, const ConceptDataset& d, PerturbParams params,
                         VectorMetric metric, std::size_t t, std::uint64_t seed) {
    const ConceptBasis base = builder(d, seed);
    const ConceptDataset perturbed = perturb_robustness(d, params, derive_seed(seed, 0x70657274));
    const ConceptBasis other = builder(perturbed, seed);
    return 1.0 - basis_distance(base, other, metric, t);
}

// Responsiveness: delta_b itself against a fully corrupted dataset (higher
// means the representation reacts to drastic changes).
inline double responsiveness(const BasisBuilder& builder, const ConceptDataset& d,
                             VectorMetric metric, std::size_t t, std::uint64_t seed) {
    const ConceptBasis base = builder(d, seed);
    const ConceptDataset corrupted = corrupt_responsiveness(d, derive_seed(seed, 0x636f7272));
    const ConceptBasis other = builder(corrupted, seed);
    return basis_distance(base, other, metric, t);
}

// Task-importance vectors: s^(j)_l sums the predicted probability of label l
// over samples with concept j active, minus the sum over samples without it.
struct ImportanceBasis {
    std::vector<std::vector<double>> s;       // k vectors of length L
    std::vector<std::string> names;           // concept names
    std::vector<std::size_t> degenerate;      // concepts with empty A_j or empty complement
};

inline ImportanceBasis importance_vectors(const ConceptPredictor& g, const LabelPredictor& f,
                                          const ConceptDataset& d) {
    const std::size_t k = d.num_concepts();
    const std::size_t n = d.n();
    if (g.num_features() != d.num_features() || g.num_concepts() != k)
        throw std::invalid_argument("importance_vectors: concept predictor shape mismatch");
    if (f.num_concepts() != k) throw std::invalid_argument("importance_vectors: label predictor shape mismatch");
    const std::size_t L = f.num_labels();

    std::vector<std::vector<double>> outputs(n);
    for (std::size_t i = 0; i < n; ++i) outputs[i] = f.predict_distribution(g.predict_probs(d.features.row(i)));

    ImportanceBasis imp;
    imp.names = d.concept_names;
    imp.s.assign(k, std::vector<double>(L, 0.0));
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<double> with(L, 0.0), without(L, 0.0);
        std::size_t active = 0;
        for (std::size_t i = 0; i < n; ++i) {
            auto& acc = d.concepts(i, j) ? with : without;
            active += d.concepts(i, j);
            for (std::size_t l = 0; l < L; ++l) acc[l] += outputs[i][l];
        }
        if (active == 0 || active == n) imp.degenerate.push_back(j);
        for (std::size_t l = 0; l < L; ++l) imp.s[j][l] = with[l] - without[l];
    }
    return imp;
}

inline ConceptBasis importance_as_basis(const ImportanceBasis& imp) {
    ConceptBasis b;
    b.vectors = imp.s;
    b.names = imp.names;
    return b;
}

// Faithfulness: 1 - delta_b between the importance basis and the candidate.
inline double faithfulness(const ConceptBasis& b, const ImportanceBasis& imp, VectorMetric metric,
                           std::size_t t) {
    return 1.0 - basis_distance(importance_as_basis(imp), b, metric, t);
}

// Fraction of concepts whose single nearest neighbour is its designated
// partner. `pairing` must be a perfect matching given as 0-based index pairs.
inline double concept_agreement(const ConceptBasis& b, const std::vector<std::pair<std::size_t, std::size_t>>& pairing,
                                VectorMetric metric) {
    const std::size_t k = b.size();
    std::vector<std::size_t> partner(k, k);
    for (const auto& [a, bb] : pairing) {
        if (a >= k || bb >= k || a == bb)
            throw std::invalid_argument("concept_agreement: invalid pairing index");
        partner[a] = bb;
        partner[bb] = a;
    }
    for (std::size_t j = 0; j < k; ++j)
        if (partner[j] == k)
            throw std::invalid_argument("concept_agreement: pairing must cover every concept");

    const auto table = neighbor_table(b, metric, 1);
    std::size_t hits = 0;
    for (std::size_t j = 0; j < k; ++j) hits += table.neighbors[j][0] == partner[j];
    return static_cast<double>(hits) / static_cast<double>(k);
}

// One row of the metric report CSV:
// metric,basis_name,dataset,t,delta_v,value,stderr,seed_count
struct MetricReportRow {
    std::string metric;
    std::string basis_name;
    std::string dataset;
    std::size_t t = 0;
    VectorMetric delta_v = VectorMetric::euclidean;
    double value = 0.0;
    double stderr_ = 0.0;
    std::size_t seed_count = 0;
};

inline std::string metric_report_csv(const std::vector<MetricReportRow>& rows) {
    std::string out = "metric,basis_name,dataset,t,delta_v,value,stderr,seed_count\n";
    for (const auto& r : rows) {
        out += r.metric + "," + r.basis_name + "," + r.dataset + "," + std::to_string(r.t) + "," +
               metric_name(r.delta_v) + "," + format_double(r.value) + "," + format_double(r.stderr_) +
               "," + std::to_string(r.seed_count) + "\n";
    }
    return out;
}

}  // namespace conceptkit
