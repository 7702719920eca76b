#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "conceptkit/basis.hpp"
#include "conceptkit/dataset.hpp"
#include "conceptkit/matrix.hpp"

namespace conceptkit {

// M[i][j] = P(c_j = 1 | c_i = 1). theta is the smallest entry.
struct CooccurrenceMatrix {
    Matrix m;

    std::size_t size() const { return m.rows; }
    double theta() const {
        double t = 1.0;
        for (double v : m.data) t = std::min(t, v);
        return t;
    }
};

// Closed-form co-occurrence of a profile distribution.
inline CooccurrenceMatrix exact_cooccurrence(const ProfileDistribution& p) {
    p.validate();
    const std::size_t k = p.num_concepts();
    std::vector<double> marginal(k, 0.0);
    Matrix joint(k, k);
    for (const auto& prof : p.profiles) {
        for (std::size_t i = 0; i < k; ++i) {
            if (!prof.pattern[i]) continue;
            marginal[i] += prof.prob;
            for (std::size_t j = 0; j < k; ++j)
                if (prof.pattern[j]) joint(i, j) += prof.prob;
        }
    }
    CooccurrenceMatrix out;
    out.m = Matrix(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        if (marginal[i] <= 0.0)
            throw std::invalid_argument("exact_cooccurrence: concept " + std::to_string(i + 1) +
                                        " has zero marginal probability");
        for (std::size_t j = 0; j < k; ++j) out.m(i, j) = joint(i, j) / marginal[i];
    }
    return out;
}

// Inner-product estimator from a binary label basis: dot(v_i, v_j) over the
// number of active entries of v_i. With binary vectors this is exactly the
// conditional frequency.
inline CooccurrenceMatrix estimate_cooccurrence(const ConceptBasis& b) {
    const std::size_t k = b.size();
    const std::size_t n = b.dim();
    std::vector<double> ones(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        for (double v : b.vectors[i]) {
            if (v != 0.0 && v != 1.0)
                throw std::invalid_argument("estimate_cooccurrence: basis is not binary-valued");
            ones[i] += v;
        }
        if (ones[i] == 0.0)
            throw std::invalid_argument("estimate_cooccurrence: concept '" + b.names[i] +
                                        "' has no active entries");
    }
    CooccurrenceMatrix out;
    out.m = Matrix(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            double dot = 0.0;
            for (std::size_t t = 0; t < n; ++t) dot += b.vectors[i][t] * b.vectors[j][t];
            out.m(i, j) = dot / ones[i];
        }
    return out;
}

}  // namespace conceptkit
