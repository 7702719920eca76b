#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "conceptkit/basis.hpp"
#include "conceptkit/dataset.hpp"
#include "conceptkit/metrics.hpp"
#include "conceptkit/predictor.hpp"
#include "conceptkit/rng.hpp"
#include "conceptkit/text.hpp"

namespace conceptkit {

enum class InterventionMode { predictor_only, basis_hard, basis_weighted };

inline const char* mode_name(InterventionMode m) {
    switch (m) {
        case InterventionMode::predictor_only: return "predictor_only";
        case InterventionMode::basis_hard: return "basis_hard";
        case InterventionMode::basis_weighted: return "basis_weighted";
    }
    return "?";
}

inline InterventionMode mode_from_name(const std::string& s) {
    if (s == "predictor_only") return InterventionMode::predictor_only;
    if (s == "basis_hard") return InterventionMode::basis_hard;
    if (s == "basis_weighted") return InterventionMode::basis_weighted;
    throw std::invalid_argument("unknown intervention policy '" + s + "'");
}

struct InterventionPolicy {
    InterventionMode mode = InterventionMode::basis_hard;
    std::size_t q = 10;  // how many intervened neighbours feed an imputation
    VectorMetric delta_v = VectorMetric::euclidean;

    void validate() const {
        if (q < 1) throw std::invalid_argument("intervention policy: q must be >= 1");
        if (mode == InterventionMode::basis_weighted && delta_v != VectorMetric::cosine_distance)
            throw std::invalid_argument("intervention policy: basis_weighted requires the cosine metric");
    }
};

struct InterventionResult {
    int predicted_label = 0;
    std::vector<double> imputed_concepts;
};

// Test-time intervention on one sample. Intervened concepts always take their
// ground-truth values. Under the basis modes every unintervened concept j is
// imputed from I(j), the q intervened concepts nearest to j in the basis
// (self excluded); basis_hard takes the mean ground truth over I(j),
// basis_weighted blends that mean with g's prediction using the average
// cosine similarity (clamped to [0,1]) as the weight. With no intervened
// concepts every mode falls back to the concept predictor.
inline InterventionResult intervene_sample(const LabelPredictor& f, const ConceptPredictor& g,
                                           const ConceptBasis& b, const std::vector<double>& x,
                                           const std::vector<std::uint8_t>& true_concepts,
                                           const std::set<std::size_t>& intervened,
                                           const InterventionPolicy& policy) {
    policy.validate();
    const std::size_t k = true_concepts.size();
    if (b.size() != k) throw std::invalid_argument("intervene_sample: basis/concepts size mismatch");
    for (std::size_t j : intervened)
        if (j >= k) throw std::invalid_argument("intervene_sample: intervened index out of range");

    InterventionResult res;
    res.imputed_concepts = g.predict_probs(x);

    for (std::size_t j : intervened) res.imputed_concepts[j] = static_cast<double>(true_concepts[j]);

    if (policy.mode != InterventionMode::predictor_only && !intervened.empty()) {
        std::vector<std::size_t> sources(intervened.begin(), intervened.end());
        std::vector<std::pair<double, std::size_t>> ranked;
        for (std::size_t j = 0; j < k; ++j) {
            if (intervened.count(j)) continue;
            ranked.clear();
            for (std::size_t s : sources)
                ranked.emplace_back(vector_distance(policy.delta_v, b.vectors[j], b.vectors[s]), s);
            std::sort(ranked.begin(), ranked.end());
            const std::size_t take = std::min(policy.q, ranked.size());

            double mean_truth = 0.0;
            for (std::size_t i = 0; i < take; ++i)
                mean_truth += static_cast<double>(true_concepts[ranked[i].second]);
            mean_truth /= static_cast<double>(take);

            if (policy.mode == InterventionMode::basis_hard) {
                res.imputed_concepts[j] = mean_truth;
            } else {
                double mean_sim = 0.0;  // cosine similarity = 1 - cosine distance
                for (std::size_t i = 0; i < take; ++i) mean_sim += 1.0 - ranked[i].first;
                mean_sim /= static_cast<double>(take);
                const double w = std::clamp(mean_sim, 0.0, 1.0);
                res.imputed_concepts[j] = w * mean_truth + (1.0 - w) * res.imputed_concepts[j];
            }
        }
    }

    res.predicted_label = f.predict_label(res.imputed_concepts);
    return res;
}

struct InterventionOutcome {
    struct Row {
        double fraction = 0.0;  // intervened fraction, or the correlation rate for rate sweeps
        std::string policy;
        std::string basis_name;
        std::uint64_t seed = 0;
        double task_accuracy = 0.0;
        double concept_accuracy = 0.0;
    };
    std::vector<Row> rows;
};

// Outcome CSV: fraction,policy,basis,seed,task_acc,concept_acc
inline std::string intervention_outcome_csv(const InterventionOutcome& out) {
    std::string s = "fraction,policy,basis,seed,task_acc,concept_acc\n";
    for (const auto& r : out.rows)
        s += format_double(r.fraction) + "," + r.policy + "," + r.basis_name + "," +
             std::to_string(r.seed) + "," + format_double(r.task_accuracy) + "," +
             format_double(r.concept_accuracy) + "\n";
    return s;
}

namespace detail {

// nearest-integer count of concepts (or groups) to intervene on
inline std::size_t fraction_to_count(double fraction, std::size_t total) {
    const auto c = static_cast<long long>(std::llround(fraction * static_cast<double>(total)));
    return static_cast<std::size_t>(std::clamp<long long>(c, 0, static_cast<long long>(total)));
}

inline std::set<std::size_t> pick_intervened(const ConceptDataset& d, double fraction,
                                             bool group_mode, std::mt19937_64& eng) {
    std::set<std::size_t> chosen;
    if (group_mode) {
        const auto& groups = *d.groups;
        std::vector<std::size_t> order(groups.size());
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), eng);
        const std::size_t count = fraction_to_count(fraction, groups.size());
        for (std::size_t gi = 0; gi < count; ++gi)
            for (int idx : groups[order[gi]]) chosen.insert(static_cast<std::size_t>(idx - 1));
    } else {
        std::vector<std::size_t> order(d.num_concepts());
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), eng);
        const std::size_t count = fraction_to_count(fraction, d.num_concepts());
        chosen.insert(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count));
    }
    return chosen;
}

}  // namespace detail

// Runs intervene_sample across the evaluation dataset for every
// (fraction, seed) pair. The intervened subset is drawn once per pair,
// uniformly without replacement over concepts (or whole concept groups).
inline InterventionOutcome intervention_sweep(const LabelPredictor& f, const ConceptPredictor& g,
                                              const ConceptBasis& b, const ConceptDataset& d,
                                              const std::vector<double>& fractions,
                                              const InterventionPolicy& policy, bool group_mode,
                                              const std::vector<std::uint64_t>& seeds,
                                              const std::string& basis_name = "basis") {
    policy.validate();
    if (fractions.empty()) throw std::invalid_argument("intervention_sweep: empty fractions list");
    for (double fr : fractions)
        if (fr < 0.0 || fr > 1.0)
            throw std::invalid_argument("intervention_sweep: fraction outside [0,1]");
    if (group_mode && !d.groups)
        throw std::invalid_argument("intervention_sweep: group mode requires dataset groups");

    InterventionOutcome out;
    const std::size_t n = d.n(), k = d.num_concepts();
    std::vector<std::uint8_t> truth(k);
    for (std::uint64_t seed : seeds) {
        for (std::size_t fi = 0; fi < fractions.size(); ++fi) {
            auto eng = make_engine(derive_seed(seed, 0x73775000 + fi));
            const auto intervened = detail::pick_intervened(d, fractions[fi], group_mode, eng);

            std::size_t label_hits = 0, concept_hits = 0;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < k; ++j) truth[j] = d.concepts(i, j);
                const auto res = intervene_sample(f, g, b, d.features.row(i), truth, intervened, policy);
                label_hits += res.predicted_label == d.labels[i];
                for (std::size_t j = 0; j < k; ++j)
                    concept_hits += (res.imputed_concepts[j] >= 0.5 ? 1 : 0) == truth[j];
            }

            InterventionOutcome::Row row;
            row.fraction = fractions[fi];
            row.policy = mode_name(policy.mode);
            row.basis_name = basis_name;
            row.seed = seed;
            row.task_accuracy = static_cast<double>(label_hits) / static_cast<double>(n);
            row.concept_accuracy =
                static_cast<double>(concept_hits) / static_cast<double>(n * k);
            out.rows.push_back(row);
        }
    }
    return out;
}

struct CorrelationSweepParams {
    std::size_t n_digits = 10;
    std::size_t n_samples = 2000;
    double feature_noise = 0.8;
    std::size_t concept_epochs = 60;
    double concept_lr = 2.0;
    std::size_t label_epochs = 150;
    double label_lr = 1.0;
    double intervened_fraction = 0.5;
};

// Trains a fresh pipeline per correlation rate and records, per (rate, seed),
// one row for the plain predictor pipeline and one for the basis-aided
// intervention at the configured fraction. The `fraction` column carries the
// correlation rate here.
inline InterventionOutcome correlation_sweep(const std::vector<double>& rates,
                                             const CorrelationSweepParams& params,
                                             const InterventionPolicy& policy,
                                             const std::vector<std::uint64_t>& seeds) {
    policy.validate();
    if (rates.empty()) throw std::invalid_argument("correlation_sweep: empty rates list");

    InterventionOutcome out;
    for (double rate : rates) {
        if (rate < 0.0 || rate > 1.0)
            throw std::invalid_argument("correlation_sweep: rate outside [0,1]");
        for (std::uint64_t seed : seeds) {
            const auto d = gen_correlated_pairs(params.n_digits, params.n_samples, rate,
                                                params.feature_noise, derive_seed(seed, 0x63737764));
            const auto g =
                train_concept_predictor(d, params.concept_epochs, params.concept_lr, seed).predictor;
            const auto f =
                train_label_predictor(d, params.label_epochs, params.label_lr, seed).predictor;
            const auto basis = label_basis(d);

            const std::size_t n = d.n(), k = d.num_concepts();
            std::size_t label_hits = 0, concept_hits = 0;
            for (std::size_t i = 0; i < n; ++i) {
                const auto probs = g.predict_probs(d.features.row(i));
                label_hits += f.predict_label(probs) == d.labels[i];
                for (std::size_t j = 0; j < k; ++j)
                    concept_hits += (probs[j] >= 0.5 ? 1 : 0) == d.concepts(i, j);
            }
            InterventionOutcome::Row base_row;
            base_row.fraction = rate;
            base_row.policy = "predictor_only";
            base_row.basis_name = "none";
            base_row.seed = seed;
            base_row.task_accuracy = static_cast<double>(label_hits) / static_cast<double>(n);
            base_row.concept_accuracy = static_cast<double>(concept_hits) / static_cast<double>(n * k);
            out.rows.push_back(base_row);

            auto sweep = intervention_sweep(f, g, basis, d, {params.intervened_fraction}, policy,
                                            false, {seed}, "label");
            sweep.rows[0].fraction = rate;
            out.rows.push_back(sweep.rows[0]);
        }
    }
    return out;
}

}  // namespace conceptkit
