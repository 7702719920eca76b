#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "conceptkit/basis.hpp"
#include "conceptkit/dataset.hpp"
#include "conceptkit/matrix.hpp"

namespace testutil {

// independent quadrature oracle for the normal CDF (composite Simpson on the
// density over [0, x])
inline double normal_cdf_quadrature(double x) {
    const int steps = 4000;
    const double h = x / steps;
    double acc = 0.0;
    auto density = [](double t) { return std::exp(-0.5 * t * t) / std::sqrt(2.0 * M_PI); };
    for (int i = 0; i < steps; ++i) {
        const double a = i * h, b = a + h;
        acc += (density(a) + 4.0 * density(0.5 * (a + b)) + density(b)) * (b - a) / 6.0;
    }
    return 0.5 + acc;
}

// central finite differences of a scalar function of a flat parameter vector
inline std::vector<double> finite_difference_gradient(
    const std::function<double(const std::vector<double>&)>& f, std::vector<double> params,
    double h = 1e-6) {
    std::vector<double> grad(params.size());
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double orig = params[i];
        params[i] = orig + h;
        const double hi = f(params);
        params[i] = orig - h;
        const double lo = f(params);
        params[i] = orig;
        grad[i] = (hi - lo) / (2.0 * h);
    }
    return grad;
}

inline double relative_gradient_error(const std::vector<double>& analytic,
                                      const std::vector<double>& numeric) {
    double diff = 0.0, norm = 0.0;
    for (std::size_t i = 0; i < analytic.size(); ++i) {
        diff += (analytic[i] - numeric[i]) * (analytic[i] - numeric[i]);
        norm += numeric[i] * numeric[i];
    }
    return std::sqrt(diff) / std::max(std::sqrt(norm), 1e-12);
}

inline conceptkit::ConceptBasis random_basis(std::size_t k, std::size_t dim, std::uint64_t seed) {
    conceptkit::ConceptBasis b;
    std::mt19937_64 eng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<double> v(dim);
        for (auto& x : v) x = gauss(eng);
        b.vectors.push_back(std::move(v));
        b.names.push_back("c" + std::to_string(j + 1));
    }
    return b;
}

// random binary dataset where every concept is active at least once
inline conceptkit::ConceptDataset random_dataset(std::size_t n, std::size_t k, std::uint64_t seed) {
    conceptkit::ConceptDataset d;
    d.features = conceptkit::Matrix(n, 2);
    d.concepts = conceptkit::BinaryMatrix(n, k);
    d.labels.assign(n, 1);
    std::mt19937_64 eng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (std::size_t j = 0; j < k; ++j) d.concept_names.push_back("c" + std::to_string(j + 1));
    for (std::size_t i = 0; i < n; ++i) {
        d.features(i, 0) = unif(eng);
        d.features(i, 1) = unif(eng);
        for (std::size_t j = 0; j < k; ++j) d.concepts(i, j) = unif(eng) < 0.4 ? 1 : 0;
        d.labels[i] = unif(eng) < 0.5 ? 1 : 2;
    }
    for (std::size_t j = 0; j < k; ++j) {
        bool any = false;
        for (std::size_t i = 0; i < n; ++i) any |= d.concepts(i, j) != 0;
        if (!any) d.concepts(std::min<std::size_t>(j, n - 1), j) = 1;
    }
    return d;
}

// naive O(k^3) Ward oracle: recompute every merge cost from cluster members
// and centroids at every step
struct NaiveWardMerge {
    std::size_t left, right;
    double height;
    std::size_t size;
};

inline std::vector<NaiveWardMerge> naive_ward(const conceptkit::ConceptBasis& b) {
    struct Cluster {
        std::size_t id;
        std::vector<std::size_t> members;
    };
    const std::size_t k = b.size();
    std::vector<Cluster> clusters;
    for (std::size_t j = 0; j < k; ++j) clusters.push_back({j + 1, {j}});
    std::vector<NaiveWardMerge> merges;
    std::size_t next_id = k + 1;

    auto merge_cost = [&](const Cluster& a, const Cluster& c) {
        const std::size_t dim = b.dim();
        std::vector<double> ma(dim, 0.0), mc(dim, 0.0);
        for (std::size_t idx : a.members)
            for (std::size_t t = 0; t < dim; ++t) ma[t] += b.vectors[idx][t];
        for (std::size_t idx : c.members)
            for (std::size_t t = 0; t < dim; ++t) mc[t] += b.vectors[idx][t];
        double d2 = 0.0;
        for (std::size_t t = 0; t < dim; ++t) {
            const double diff = ma[t] / a.members.size() - mc[t] / c.members.size();
            d2 += diff * diff;
        }
        const double na = static_cast<double>(a.members.size());
        const double nc = static_cast<double>(c.members.size());
        return na * nc / (na + nc) * d2;
    };

    while (clusters.size() > 1) {
        std::size_t bi = 0, bj = 1;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < clusters.size(); ++i)
            for (std::size_t j = i + 1; j < clusters.size(); ++j) {
                const double c = merge_cost(clusters[i], clusters[j]);
                const auto lo = std::min(clusters[i].id, clusters[j].id);
                const auto hi = std::max(clusters[i].id, clusters[j].id);
                const auto blo = std::min(clusters[bi].id, clusters[bj].id);
                const auto bhi = std::max(clusters[bi].id, clusters[bj].id);
                if (c < best || (c == best && (lo < blo || (lo == blo && hi < bhi)))) {
                    best = c;
                    bi = i;
                    bj = j;
                }
            }
        Cluster merged;
        merged.id = next_id++;
        merged.members = clusters[bi].members;
        merged.members.insert(merged.members.end(), clusters[bj].members.begin(),
                              clusters[bj].members.end());
        merges.push_back({std::min(clusters[bi].id, clusters[bj].id),
                          std::max(clusters[bi].id, clusters[bj].id), best, merged.members.size()});
        clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
        clusters[bi] = std::move(merged);
    }
    return merges;
}

}  // namespace testutil
