#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "conceptkit/matrix.hpp"
#include "conceptkit/rng.hpp"

namespace conceptkit {

// A concept-annotated dataset: features X (n x m), binary concepts C (n x k),
// 1-based task labels y in {1..L}, one name per concept, and an optional
// partition of concepts into groups (1-based indices, as in the file format).
struct ConceptDataset {
    Matrix features;                                    // n x m
    BinaryMatrix concepts;                              // n x k
    std::vector<int> labels;                            // length n, values 1..L
    std::vector<std::string> concept_names;             // length k
    std::optional<std::vector<std::vector<int>>> groups;
    double feature_lo = 0.0;
    double feature_hi = 1.0;

    std::size_t n() const { return concepts.rows; }
    std::size_t num_features() const { return features.cols; }
    std::size_t num_concepts() const { return concepts.cols; }
    int num_labels() const {
        int mx = 0;
        for (int y : labels) mx = std::max(mx, y);
        return mx;
    }

    void validate() const {
        if (features.rows != concepts.rows || concepts.rows != labels.size())
            throw std::invalid_argument("dataset: row count mismatch between features/concepts/labels");
        if (concept_names.size() != concepts.cols)
            throw std::invalid_argument("dataset: concept name count does not match concept columns");
        if (!(feature_lo < feature_hi))
            throw std::invalid_argument("dataset: feature range must satisfy lo < hi");
        for (std::uint8_t v : concepts.data)
            if (v != 0 && v != 1) throw std::invalid_argument("dataset: non-binary concept entry");
        for (int y : labels)
            if (y < 1) throw std::invalid_argument("dataset: labels must be 1-based positive integers");
        std::set<std::string> names(concept_names.begin(), concept_names.end());
        if (names.size() != concept_names.size())
            throw std::invalid_argument("dataset: duplicate concept name");
        if (groups) {
            std::vector<int> seen(concepts.cols, 0);
            for (const auto& g : *groups)
                for (int idx : g) {
                    if (idx < 1 || static_cast<std::size_t>(idx) > concepts.cols)
                        throw std::invalid_argument("dataset: group index out of range");
                    ++seen[static_cast<std::size_t>(idx - 1)];
                }
            for (int c : seen)
                if (c != 1) throw std::invalid_argument("dataset: groups must partition the concepts exactly");
        }
    }
};

// Ground-truth generative model over binary concept patterns. Its exact
// co-occurrence matrix is computable in closed form, which is what the
// theorem verifiers test against.
struct ProfileDistribution {
    struct Profile {
        std::vector<std::uint8_t> pattern;
        double prob = 0.0;
    };
    std::vector<Profile> profiles;

    std::size_t num_concepts() const { return profiles.empty() ? 0 : profiles[0].pattern.size(); }

    void validate() const {
        if (profiles.empty()) throw std::invalid_argument("profile distribution: no profiles");
        const std::size_t k = profiles[0].pattern.size();
        double total = 0.0;
        for (const auto& p : profiles) {
            if (p.pattern.size() != k)
                throw std::invalid_argument("profile distribution: patterns must have uniform length");
            if (p.prob < 0.0) throw std::invalid_argument("profile distribution: negative probability");
            for (std::uint8_t v : p.pattern)
                if (v != 0 && v != 1)
                    throw std::invalid_argument("profile distribution: non-binary pattern entry");
            total += p.prob;
        }
        if (std::abs(total - 1.0) > 1e-12)
            throw std::invalid_argument("profile distribution: probabilities must sum to 1");
    }
};

// Draws n i.i.d. patterns from the profile distribution. Features mirror the
// concept bits (the verifiers only need the concept matrix); the label is the
// 1-based index of the drawn profile.
inline ConceptDataset sample_profiles(const ProfileDistribution& p, std::size_t n_samples,
                                      std::uint64_t seed) {
    p.validate();
    if (n_samples < 1) throw std::invalid_argument("sample_profiles: n_samples must be >= 1");
    const std::size_t k = p.num_concepts();
    ConceptDataset d;
    d.features = Matrix(n_samples, k);
    d.concepts = BinaryMatrix(n_samples, k);
    d.labels.resize(n_samples);
    for (std::size_t j = 0; j < k; ++j) d.concept_names.push_back("c" + std::to_string(j + 1));

    auto eng = make_engine(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (std::size_t i = 0; i < n_samples; ++i) {
        double u = unif(eng);
        std::size_t pick = p.profiles.size() - 1;
        for (std::size_t pi = 0; pi < p.profiles.size(); ++pi) {
            if (u < p.profiles[pi].prob) {
                pick = pi;
                break;
            }
            u -= p.profiles[pi].prob;
        }
        const auto& pat = p.profiles[pick].pattern;
        for (std::size_t j = 0; j < k; ++j) {
            d.concepts(i, j) = pat[j];
            d.features(i, j) = static_cast<double>(pat[j]);
        }
        d.labels[i] = static_cast<int>(pick) + 1;
    }
    return d;
}

// Coloured-MNIST analogue: one-hot digit block and one-hot colour block.
// With probability correlation_rate the colour index equals the digit index,
// otherwise the colour is uniform over all colours. Label = digit index + 1.
inline ConceptDataset gen_correlated_pairs(std::size_t n_digits, std::size_t n_samples,
                                           double correlation_rate, double feature_noise,
                                           std::uint64_t seed) {
    if (n_digits < 2) throw std::invalid_argument("gen_correlated_pairs: n_digits must be >= 2");
    if (n_samples < 1) throw std::invalid_argument("gen_correlated_pairs: n_samples must be >= 1");
    if (correlation_rate < 0.0 || correlation_rate > 1.0)
        throw std::invalid_argument("gen_correlated_pairs: correlation_rate outside [0,1]");
    if (feature_noise < 0.0)
        throw std::invalid_argument("gen_correlated_pairs: feature_noise must be nonnegative");

    const std::size_t k = 2 * n_digits;
    ConceptDataset d;
    d.features = Matrix(n_samples, k);
    d.concepts = BinaryMatrix(n_samples, k);
    d.labels.resize(n_samples);
    for (std::size_t j = 0; j < n_digits; ++j) d.concept_names.push_back("digit_" + std::to_string(j));
    for (std::size_t j = 0; j < n_digits; ++j) d.concept_names.push_back("colour_" + std::to_string(j));
    // digits are mutually exclusive, and so are colours
    std::vector<int> digit_group, colour_group;
    for (std::size_t j = 0; j < n_digits; ++j) digit_group.push_back(static_cast<int>(j) + 1);
    for (std::size_t j = 0; j < n_digits; ++j) colour_group.push_back(static_cast<int>(n_digits + j) + 1);
    d.groups = std::vector<std::vector<int>>{digit_group, colour_group};

    auto eng = make_engine(seed);
    std::uniform_int_distribution<std::size_t> pick_digit(0, n_digits - 1);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (std::size_t i = 0; i < n_samples; ++i) {
        const std::size_t digit = pick_digit(eng);
        std::size_t colour = digit;
        if (unif(eng) >= correlation_rate) colour = pick_digit(eng);
        d.concepts(i, digit) = 1;
        d.concepts(i, n_digits + colour) = 1;
        d.labels[i] = static_cast<int>(digit) + 1;
        for (std::size_t j = 0; j < k; ++j) {
            double v = static_cast<double>(d.concepts(i, j));
            if (feature_noise > 0.0) v += feature_noise * noise(eng);
            d.features(i, j) = v;
        }
    }
    return d;
}

struct PairCorrelation {
    int a = 0;  // 1-based concept indices
    int b = 0;
    double rho = 0.0;
};

// dSprites analogue: binary concepts with requested pairwise correlations via
// a Gaussian copula thresholded at the median. The latent Gaussian
// correlation sin(pi*rho/2) makes the *binary* correlation come out at rho.
// Label encodes the concept pattern in base 2 (1-based).
inline ConceptDataset gen_weak_correlation(std::size_t k, std::size_t n_samples,
                                           const std::vector<PairCorrelation>& pair_correlations,
                                           std::uint64_t seed) {
    if (k < 1 || k > 20) throw std::invalid_argument("gen_weak_correlation: k must be in [1,20]");
    if (n_samples < 1) throw std::invalid_argument("gen_weak_correlation: n_samples must be >= 1");

    Matrix cov(k, k);
    for (std::size_t j = 0; j < k; ++j) cov(j, j) = 1.0;
    for (const auto& pc : pair_correlations) {
        if (pc.a < 1 || pc.b < 1 || static_cast<std::size_t>(pc.a) > k ||
            static_cast<std::size_t>(pc.b) > k || pc.a == pc.b)
            throw std::invalid_argument("gen_weak_correlation: invalid pair index");
        if (pc.rho < -1.0 || pc.rho > 1.0)
            throw std::invalid_argument("gen_weak_correlation: correlation outside [-1,1]");
        const double latent = std::sin(1.57079632679489662 * pc.rho);
        cov(pc.a - 1, pc.b - 1) = latent;
        cov(pc.b - 1, pc.a - 1) = latent;
    }

    // Cholesky; failure means the requested structure is infeasible.
    Matrix chol(k, k);
    for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c <= r; ++c) {
            double sum = cov(r, c);
            for (std::size_t t = 0; t < c; ++t) sum -= chol(r, t) * chol(c, t);
            if (r == c) {
                if (sum <= 1e-12) {
                    std::string pairs;
                    for (const auto& pc : pair_correlations) {
                        if (!pairs.empty()) pairs += ", ";
                        pairs += "(" + std::to_string(pc.a) + "," + std::to_string(pc.b) + ")";
                    }
                    throw std::invalid_argument(
                        "gen_weak_correlation: correlation structure not positive semi-definite; "
                        "offending pairs: " + pairs);
                }
                chol(r, c) = std::sqrt(sum);
            } else {
                chol(r, c) = sum / chol(c, c);
            }
        }
    }

    ConceptDataset d;
    d.features = Matrix(n_samples, k);
    d.concepts = BinaryMatrix(n_samples, k);
    d.labels.resize(n_samples);
    for (std::size_t j = 0; j < k; ++j) d.concept_names.push_back("attr_" + std::to_string(j + 1));

    auto eng = make_engine(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double feature_noise = 0.1;
    std::vector<double> z(k), latent(k);
    for (std::size_t i = 0; i < n_samples; ++i) {
        for (std::size_t j = 0; j < k; ++j) z[j] = gauss(eng);
        for (std::size_t r = 0; r < k; ++r) {
            double acc = 0.0;
            for (std::size_t c = 0; c <= r; ++c) acc += chol(r, c) * z[c];
            latent[r] = acc;
        }
        long code = 0;
        for (std::size_t j = 0; j < k; ++j) {
            const std::uint8_t bit = latent[j] <= 0.0 ? 1 : 0;
            d.concepts(i, j) = bit;
            if (bit) code += 1L << j;
        }
        d.labels[i] = static_cast<int>(code) + 1;
        for (std::size_t j = 0; j < k; ++j)
            d.features(i, j) = static_cast<double>(d.concepts(i, j)) + feature_noise * gauss(eng);
    }
    return d;
}

// Synthetic 2-feature scenario: x in [0,1]^2 drawn from a three-case mixture
// (both coordinates low / both high / one of each, side uniform). Concepts are
// the four threshold indicators; tasks y1 = [min <= 1/4], y2 = [max >= 3/4]
// are stored as label = 1 + y1 + 2*y2.
inline ConceptDataset gen_threshold_mixture(std::size_t n_samples, std::uint64_t seed) {
    if (n_samples < 1) throw std::invalid_argument("gen_threshold_mixture: n_samples must be >= 1");
    ConceptDataset d;
    d.features = Matrix(n_samples, 2);
    d.concepts = BinaryMatrix(n_samples, 4);
    d.labels.resize(n_samples);
    d.concept_names = {"x1_low", "x1_high", "x2_low", "x2_high"};

    auto eng = make_engine(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double c = unif(eng);
        double x1, x2;
        if (c < 1.0 / 3.0) {
            x1 = 0.25 * unif(eng);
            x2 = 0.25 * unif(eng);
        } else if (c < 2.0 / 3.0) {
            x1 = 0.75 + 0.25 * unif(eng);
            x2 = 0.75 + 0.25 * unif(eng);
        } else {
            const bool first_low = unif(eng) < 0.5;
            const double lo = 0.25 * unif(eng);
            const double hi = 0.75 + 0.25 * unif(eng);
            x1 = first_low ? lo : hi;
            x2 = first_low ? hi : lo;
        }
        d.features(i, 0) = x1;
        d.features(i, 1) = x2;
        d.concepts(i, 0) = x1 <= 0.25 ? 1 : 0;
        d.concepts(i, 1) = x1 >= 0.75 ? 1 : 0;
        d.concepts(i, 2) = x2 <= 0.25 ? 1 : 0;
        d.concepts(i, 3) = x2 >= 0.75 ? 1 : 0;
        const int y1 = std::min(x1, x2) <= 0.25 ? 1 : 0;
        const int y2 = std::max(x1, x2) >= 0.75 ? 1 : 0;
        d.labels[i] = 1 + y1 + 2 * y2;
    }
    return d;
}

struct PerturbParams {
    double flip_prob = 0.01;
    // < 0 means "default": 50/255 of the dataset's declared feature range,
    // so a noise level tuned on 0..255 pixel data rescales proportionally.
    double noise_std = -1.0;
};

inline double default_noise_std(const ConceptDataset& d) {
    return 50.0 / 255.0 * (d.feature_hi - d.feature_lo);
}

// Robustness perturbation: independent concept flips plus Gaussian feature
// noise. Labels and metadata are untouched.
inline ConceptDataset perturb_robustness(const ConceptDataset& d, PerturbParams params,
                                         std::uint64_t seed) {
    if (params.flip_prob < 0.0 || params.flip_prob > 1.0)
        throw std::invalid_argument("perturb_robustness: flip_prob outside [0,1]");
    const double noise_std = params.noise_std < 0.0 ? default_noise_std(d) : params.noise_std;

    ConceptDataset out = d;
    auto eng = make_engine(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    if (params.flip_prob > 0.0)
        for (auto& bit : out.concepts.data)
            if (unif(eng) < params.flip_prob) bit ^= 1;
    if (noise_std > 0.0)
        for (auto& v : out.features.data) v += noise_std * gauss(eng);
    return out;
}

// Responsiveness corruption: concepts become fair coin flips and features
// become uniform draws over the declared range.
inline ConceptDataset corrupt_responsiveness(const ConceptDataset& d, std::uint64_t seed) {
    ConceptDataset out = d;
    auto eng = make_engine(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uniform_real_distribution<double> feat(d.feature_lo, d.feature_hi);
    for (auto& bit : out.concepts.data) bit = unif(eng) < 0.5 ? 1 : 0;
    for (auto& v : out.features.data) v = feat(eng);
    return out;
}

}  // namespace conceptkit
