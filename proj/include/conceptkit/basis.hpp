#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "conceptkit/dataset.hpp"
#include "conceptkit/rng.hpp"

namespace conceptkit {

// An ordered set of k named concept vectors sharing one dimension d.
struct ConceptBasis {
    std::vector<std::vector<double>> vectors;
    std::vector<std::string> names;

    std::size_t size() const { return vectors.size(); }
    std::size_t dim() const { return vectors.empty() ? 0 : vectors[0].size(); }

    void validate() const {
        if (vectors.size() != names.size())
            throw std::invalid_argument("basis: name/vector count mismatch");
        if (vectors.size() < 2) throw std::invalid_argument("basis: needs at least 2 concepts");
        const std::size_t d = vectors[0].size();
        if (d < 1) throw std::invalid_argument("basis: vector dimension must be >= 1");
        for (const auto& v : vectors) {
            if (v.size() != d) throw std::invalid_argument("basis: ragged vector dimensions");
            for (double x : v)
                if (!std::isfinite(x)) throw std::invalid_argument("basis: non-finite entry");
        }
        std::set<std::string> uniq(names.begin(), names.end());
        if (uniq.size() != names.size()) throw std::invalid_argument("basis: duplicate concept name");
    }
};

// The ground-truth baseline: vector j is column j of the concept matrix, so
// two concepts that co-occur often end up close.
inline ConceptBasis label_basis(const ConceptDataset& d) {
    if (d.n() < 1) throw std::invalid_argument("label_basis: empty dataset");
    ConceptBasis b;
    b.names = d.concept_names;
    b.vectors.reserve(d.num_concepts());
    for (std::size_t j = 0; j < d.num_concepts(); ++j)
        b.vectors.push_back(d.concepts.col_as_doubles(j));
    return b;
}

struct SkipgramConfig {
    std::size_t embed_dim = 16;
    std::size_t epochs = 25;
    double learning_rate = 0.05;
    std::size_t negatives_per_positive = 1;
    std::uint64_t seed = 0;

    void validate() const {
        if (embed_dim < 1) throw std::invalid_argument("skipgram: embed_dim must be >= 1");
        if (epochs < 1) throw std::invalid_argument("skipgram: epochs must be >= 1");
        if (learning_rate < 0.0) throw std::invalid_argument("skipgram: learning_rate must be >= 0");
        if (negatives_per_positive < 1)
            throw std::invalid_argument("skipgram: negatives_per_positive must be >= 1");
    }
};

struct ConceptPair {
    std::size_t a = 0;
    std::size_t b = 0;
    double target = 1.0;  // 1 = same data point, 0 = different data points
};

// Deterministic initialization: uniform in [-0.5/d, 0.5/d] per coordinate.
inline std::vector<std::vector<double>> skipgram_init(std::size_t k, const SkipgramConfig& cfg) {
    auto eng = make_engine(derive_seed(cfg.seed, 0x696e6974));
    const double half = 0.5 / static_cast<double>(cfg.embed_dim);
    std::uniform_real_distribution<double> unif(-half, half);
    std::vector<std::vector<double>> table(k, std::vector<double>(cfg.embed_dim));
    for (auto& row : table)
        for (auto& v : row) v = unif(eng);
    return table;
}

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Mean logistic loss of a pair batch plus the analytic gradient w.r.t. every
// embedding coordinate; shared by training sanity checks and the
// finite-difference test.
inline double skipgram_batch_loss(const std::vector<std::vector<double>>& table,
                                  const std::vector<ConceptPair>& pairs,
                                  std::vector<std::vector<double>>* grad = nullptr) {
    if (grad) {
        grad->assign(table.size(), std::vector<double>(table.empty() ? 0 : table[0].size(), 0.0));
    }
    double loss = 0.0;
    for (const auto& pr : pairs) {
        const auto& va = table[pr.a];
        const auto& vb = table[pr.b];
        const double dot = std::inner_product(va.begin(), va.end(), vb.begin(), 0.0);
        const double p = sigmoid(dot);
        loss += pr.target > 0.5 ? -std::log(p) : -std::log(1.0 - p);
        if (grad) {
            const double coeff = (p - pr.target) / static_cast<double>(pairs.size());
            for (std::size_t t = 0; t < va.size(); ++t) {
                (*grad)[pr.a][t] += coeff * vb[t];
                (*grad)[pr.b][t] += coeff * va[t];
            }
        }
    }
    return loss / static_cast<double>(pairs.size());
}

// One pass over the dataset in a shuffled order. For every sample, each
// distinct co-active concept pair is a positive; negatives pair a concept
// active here with a concept active in a different (uniformly drawn) sample.
inline void skipgram_epoch(std::vector<std::vector<double>>& table, const ConceptDataset& d,
                           const std::vector<std::vector<std::size_t>>& active_sets,
                           const SkipgramConfig& cfg, std::mt19937_64& eng) {
    const std::size_t n = d.n();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), eng);
    std::uniform_int_distribution<std::size_t> pick_sample(0, n - 1);

    auto update_pair = [&](std::size_t a, std::size_t b, double target) {
        auto& va = table[a];
        auto& vb = table[b];
        const double dot = std::inner_product(va.begin(), va.end(), vb.begin(), 0.0);
        const double coeff = cfg.learning_rate * (sigmoid(dot) - target);
        for (std::size_t t = 0; t < va.size(); ++t) {
            const double ga = coeff * vb[t];
            const double gb = coeff * va[t];
            va[t] -= ga;
            vb[t] -= gb;
        }
    };

    std::bernoulli_distribution coin(0.5);
    for (std::size_t oi = 0; oi < n; ++oi) {
        const auto& active = active_sets[order[oi]];
        for (std::size_t ai = 0; ai < active.size(); ++ai) {
            for (std::size_t bi = ai + 1; bi < active.size(); ++bi) {
                update_pair(active[ai], active[bi], 1.0);
                for (std::size_t neg = 0; neg < cfg.negatives_per_positive; ++neg) {
                    std::size_t other = pick_sample(eng);
                    while (other == order[oi]) other = pick_sample(eng);
                    const auto& oa = active_sets[other];
                    if (oa.empty()) continue;
                    std::uniform_int_distribution<std::size_t> pick_concept(0, oa.size() - 1);
                    // anchor either end of the positive so both sides see negatives
                    const std::size_t anchor = coin(eng) ? active[ai] : active[bi];
                    update_pair(anchor, oa[pick_concept(eng)], 0.0);
                }
            }
        }
    }
}

struct SkipgramResult {
    ConceptBasis basis;
    std::vector<double> epoch_losses;  // loss on a frozen pair sample, one entry per epoch
};

// Concept2Vec: skipgram embeddings trained to tell same-point concept pairs
// from cross-point pairs. Deterministic given cfg.seed.
inline SkipgramResult concept2vec_with_history(const ConceptDataset& d, const SkipgramConfig& cfg) {
    cfg.validate();
    const std::size_t k = d.num_concepts();
    const std::size_t n = d.n();
    if (k < 2) throw std::invalid_argument("concept2vec: needs at least 2 concepts");

    std::vector<std::vector<std::size_t>> active_sets(n);
    std::vector<std::size_t> activation_count(k, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (d.concepts(i, j)) {
                active_sets[i].push_back(j);
                ++activation_count[j];
            }
    for (std::size_t j = 0; j < k; ++j)
        if (activation_count[j] == 0)
            throw std::invalid_argument("concept2vec: concept '" + d.concept_names[j] +
                                        "' is never active, no positive pairs possible");

    auto table = skipgram_init(k, cfg);

    // frozen evaluation pairs for the loss trace
    std::vector<ConceptPair> eval_pairs;
    {
        auto eval_eng = make_engine(derive_seed(cfg.seed, 0x6c6f7373));
        std::uniform_int_distribution<std::size_t> pick_sample(0, n - 1);
        const std::size_t want = std::min<std::size_t>(512, std::max<std::size_t>(32, n));
        std::size_t guard = 0;
        while (eval_pairs.size() < want && guard < want * 50) {
            ++guard;
            const auto& act = active_sets[pick_sample(eval_eng)];
            if (act.size() < 2) continue;
            std::uniform_int_distribution<std::size_t> pick(0, act.size() - 1);
            std::size_t a = act[pick(eval_eng)];
            std::size_t b = act[pick(eval_eng)];
            if (a == b) continue;
            eval_pairs.push_back({a, b, 1.0});
            std::size_t other = pick_sample(eval_eng);
            const auto& oact = active_sets[other];
            if (!oact.empty()) {
                std::uniform_int_distribution<std::size_t> pick_o(0, oact.size() - 1);
                eval_pairs.push_back({a, oact[pick_o(eval_eng)], 0.0});
            }
        }
    }

    SkipgramResult result;
    auto eng = make_engine(derive_seed(cfg.seed, 0x73676431));
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        skipgram_epoch(table, d, active_sets, cfg, eng);
        if (!eval_pairs.empty()) result.epoch_losses.push_back(skipgram_batch_loss(table, eval_pairs));
    }

    result.basis.vectors = std::move(table);
    result.basis.names = d.concept_names;
    return result;
}

inline ConceptBasis concept2vec(const ConceptDataset& d, const SkipgramConfig& cfg) {
    return concept2vec_with_history(d, cfg).basis;
}

}  // namespace conceptkit
