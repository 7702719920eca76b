#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "conceptkit/basis.hpp"
#include "conceptkit/dataset.hpp"
#include "conceptkit/matrix.hpp"
#include "conceptkit/rng.hpp"

namespace conceptkit {

// Concept predictor g: per-concept logistic model, weights (m+1) x k with the
// bias in the last row.
struct ConceptPredictor {
    Matrix weights;  // (m+1) x k

    std::size_t num_features() const { return weights.rows == 0 ? 0 : weights.rows - 1; }
    std::size_t num_concepts() const { return weights.cols; }

    std::vector<double> predict_probs(const std::vector<double>& x) const {
        if (x.size() + 1 != weights.rows)
            throw std::invalid_argument("concept predictor: feature dimension mismatch");
        std::vector<double> out(weights.cols);
        for (std::size_t j = 0; j < weights.cols; ++j) {
            double z = weights(x.size(), j);
            for (std::size_t f = 0; f < x.size(); ++f) z += weights(f, j) * x[f];
            out[j] = 1.0 / (1.0 + std::exp(-z));
        }
        return out;
    }
};

// Label predictor f: softmax model over concept vectors, weights (k+1) x L.
struct LabelPredictor {
    Matrix weights;  // (k+1) x L

    std::size_t num_concepts() const { return weights.rows == 0 ? 0 : weights.rows - 1; }
    std::size_t num_labels() const { return weights.cols; }

    std::vector<double> predict_distribution(const std::vector<double>& c) const {
        if (c.size() + 1 != weights.rows)
            throw std::invalid_argument("label predictor: concept dimension mismatch");
        std::vector<double> z(weights.cols);
        double zmax = -1e300;
        for (std::size_t l = 0; l < weights.cols; ++l) {
            double acc = weights(c.size(), l);
            for (std::size_t j = 0; j < c.size(); ++j) acc += weights(j, l) * c[j];
            z[l] = acc;
            zmax = std::max(zmax, acc);
        }
        double total = 0.0;
        for (auto& v : z) {
            v = std::exp(v - zmax);
            total += v;
        }
        for (auto& v : z) v /= total;
        return z;
    }

    // argmax label (1-based); ties resolve to the lowest label
    int predict_label(const std::vector<double>& c) const {
        const auto dist = predict_distribution(c);
        std::size_t best = 0;
        for (std::size_t l = 1; l < dist.size(); ++l)
            if (dist[l] > dist[best]) best = l;
        return static_cast<int>(best) + 1;
    }
};

namespace detail {

inline Matrix init_weights(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    Matrix w(rows, cols);
    auto eng = make_engine(derive_seed(seed, 0x77696e69));
    std::uniform_real_distribution<double> unif(-0.1, 0.1);
    for (auto& v : w.data) v = unif(eng);
    return w;
}

}  // namespace detail

struct ConceptTrainResult {
    ConceptPredictor predictor;
    double final_loss = 0.0;
    std::vector<double> loss_history;
};

// Mean per-concept binary cross-entropy and its gradient for the logistic
// concept predictor; exposed so the finite-difference test can drive it.
inline double concept_loss_grad(const Matrix& weights, const ConceptDataset& d, Matrix* grad) {
    const std::size_t n = d.n(), m = d.num_features(), k = d.num_concepts();
    if (grad) *grad = Matrix(m + 1, k);
    double loss = 0.0;
    const double scale = 1.0 / static_cast<double>(n * k);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            double z = weights(m, j);
            for (std::size_t f = 0; f < m; ++f) z += weights(f, j) * d.features(i, f);
            const double p = 1.0 / (1.0 + std::exp(-z));
            const double c = static_cast<double>(d.concepts(i, j));
            loss += c > 0.5 ? -std::log(p) : -std::log(1.0 - p);
            if (grad) {
                const double coeff = (p - c) * scale;
                for (std::size_t f = 0; f < m; ++f) (*grad)(f, j) += coeff * d.features(i, f);
                (*grad)(m, j) += coeff;
            }
        }
    }
    return loss * scale;
}

// Full-batch gradient descent; deterministic given the seed. Aborts if the
// loss leaves the finite range (learning-rate divergence).
inline ConceptTrainResult train_concept_predictor(const ConceptDataset& d, std::size_t epochs,
                                                  double lr, std::uint64_t seed) {
    if (epochs < 1) throw std::invalid_argument("train_concept_predictor: epochs must be >= 1");
    if (lr < 0.0) throw std::invalid_argument("train_concept_predictor: learning rate must be >= 0");
    ConceptTrainResult res;
    Matrix w = detail::init_weights(d.num_features() + 1, d.num_concepts(), seed);
    Matrix grad;
    for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
        const double loss = concept_loss_grad(w, d, &grad);
        if (!std::isfinite(loss))
            throw std::runtime_error("train_concept_predictor: non-finite loss at epoch " +
                                     std::to_string(epoch));
        res.loss_history.push_back(loss);
        for (std::size_t idx = 0; idx < w.data.size(); ++idx) w.data[idx] -= lr * grad.data[idx];
    }
    res.final_loss = concept_loss_grad(w, d, nullptr);
    if (!std::isfinite(res.final_loss))
        throw std::runtime_error("train_concept_predictor: non-finite loss at epoch " +
                                 std::to_string(epochs));
    res.predictor.weights = std::move(w);
    return res;
}

struct LabelTrainResult {
    LabelPredictor predictor;
    double final_loss = 0.0;
    std::vector<double> loss_history;
};

// Softmax cross-entropy over (concept vector, 1-based label) rows.
inline double label_loss_grad(const Matrix& weights, const Matrix& concepts,
                              const std::vector<int>& labels, Matrix* grad) {
    const std::size_t n = concepts.rows, k = concepts.cols, L = weights.cols;
    if (grad) *grad = Matrix(k + 1, L);
    double loss = 0.0;
    const double scale = 1.0 / static_cast<double>(n);
    std::vector<double> z(L);
    for (std::size_t i = 0; i < n; ++i) {
        double zmax = -1e300;
        for (std::size_t l = 0; l < L; ++l) {
            double acc = weights(k, l);
            for (std::size_t j = 0; j < k; ++j) acc += weights(j, l) * concepts(i, j);
            z[l] = acc;
            zmax = std::max(zmax, acc);
        }
        double total = 0.0;
        for (auto& v : z) {
            v = std::exp(v - zmax);
            total += v;
        }
        const std::size_t y = static_cast<std::size_t>(labels[i] - 1);
        if (y >= L) throw std::invalid_argument("label_loss_grad: label out of range");
        loss += -std::log(z[y] / total);
        if (grad) {
            for (std::size_t l = 0; l < L; ++l) {
                const double p = z[l] / total;
                const double coeff = (p - (l == y ? 1.0 : 0.0)) * scale;
                for (std::size_t j = 0; j < k; ++j) (*grad)(j, l) += coeff * concepts(i, j);
                (*grad)(k, l) += coeff;
            }
        }
    }
    return loss * scale;
}

inline LabelTrainResult train_label_predictor(const Matrix& concepts, const std::vector<int>& labels,
                                              std::size_t num_labels, std::size_t epochs, double lr,
                                              std::uint64_t seed) {
    if (epochs < 1) throw std::invalid_argument("train_label_predictor: epochs must be >= 1");
    if (lr < 0.0) throw std::invalid_argument("train_label_predictor: learning rate must be >= 0");
    if (concepts.rows != labels.size())
        throw std::invalid_argument("train_label_predictor: row count mismatch");
    LabelTrainResult res;
    Matrix w = detail::init_weights(concepts.cols + 1, num_labels, seed);
    Matrix grad;
    for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
        const double loss = label_loss_grad(w, concepts, labels, &grad);
        if (!std::isfinite(loss))
            throw std::runtime_error("train_label_predictor: non-finite loss at epoch " +
                                     std::to_string(epoch));
        res.loss_history.push_back(loss);
        for (std::size_t idx = 0; idx < w.data.size(); ++idx) w.data[idx] -= lr * grad.data[idx];
    }
    res.final_loss = label_loss_grad(w, concepts, labels, nullptr);
    if (!std::isfinite(res.final_loss))
        throw std::runtime_error("train_label_predictor: non-finite loss at epoch " +
                                 std::to_string(epochs));
    res.predictor.weights = std::move(w);
    return res;
}

inline LabelTrainResult train_label_predictor(const ConceptDataset& d, std::size_t epochs, double lr,
                                              std::uint64_t seed) {
    Matrix c(d.n(), d.num_concepts());
    for (std::size_t i = 0; i < d.n(); ++i)
        for (std::size_t j = 0; j < d.num_concepts(); ++j)
            c(i, j) = static_cast<double>(d.concepts(i, j));
    return train_label_predictor(c, d.labels, static_cast<std::size_t>(d.num_labels()), epochs, lr, seed);
}

// The two linear reference models for the synthetic two-task scenario.
// "correct" regresses each task on the concepts (ordinary least squares);
// "random" uses frozen uniform concept weights and only fits the feature
// weights on the residual. Each concept's representation is its pair of
// per-task weights.
enum class BaselineKind { random, correct };

struct LinearBaselineModel {
    BaselineKind kind = BaselineKind::correct;
    Matrix concept_weights;  // k x 2 (one column per task)
    Matrix feature_weights;  // m x 2, random kind only

    ConceptBasis representation(const std::vector<std::string>& names) const {
        ConceptBasis b;
        b.names = names;
        for (std::size_t j = 0; j < concept_weights.rows; ++j)
            b.vectors.push_back({concept_weights(j, 0), concept_weights(j, 1)});
        return b;
    }
};

namespace detail {

// least squares without intercept: argmin ||A w - y||
inline std::vector<double> least_squares(const Matrix& a, const std::vector<double>& y) {
    const std::size_t n = a.rows, p = a.cols;
    Matrix ata(p, p);
    std::vector<double> aty(p, 0.0);
    for (std::size_t r = 0; r < p; ++r) {
        for (std::size_t c = 0; c < p; ++c) {
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) acc += a(i, r) * a(i, c);
            ata(r, c) = acc;
        }
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += a(i, r) * y[i];
        aty[r] = acc;
    }
    // tiny ridge keeps near-collinear concept columns solvable
    for (std::size_t r = 0; r < p; ++r) ata(r, r) += 1e-9;
    return solve_linear_system(ata, aty);
}

}  // namespace detail

inline LinearBaselineModel fit_linear_baseline(const ConceptDataset& d, BaselineKind kind,
                                               std::uint64_t seed) {
    const std::size_t n = d.n(), m = d.num_features(), k = d.num_concepts();
    // task bits recovered from the 2-bit label encoding 1 + y1 + 2*y2
    std::vector<std::vector<double>> tasks(2, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const int code = d.labels[i] - 1;
        tasks[0][i] = static_cast<double>(code & 1);
        tasks[1][i] = static_cast<double>((code >> 1) & 1);
    }

    LinearBaselineModel model;
    model.kind = kind;
    model.concept_weights = Matrix(k, 2);

    Matrix cmat(n, k);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j) cmat(i, j) = static_cast<double>(d.concepts(i, j));

    if (kind == BaselineKind::correct) {
        for (std::size_t task = 0; task < 2; ++task) {
            const auto w = detail::least_squares(cmat, tasks[task]);
            for (std::size_t j = 0; j < k; ++j) model.concept_weights(j, task) = w[j];
        }
        return model;
    }

    // random kind: concept weights drawn U(0,1), feature weights fit the rest
    auto eng = make_engine(derive_seed(seed, 0x72616e64));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    model.feature_weights = Matrix(m, 2);
    Matrix fmat = d.features;
    for (std::size_t task = 0; task < 2; ++task) {
        for (std::size_t j = 0; j < k; ++j) model.concept_weights(j, task) = unif(eng);
        std::vector<double> residual(n);
        for (std::size_t i = 0; i < n; ++i) {
            double contrib = 0.0;
            for (std::size_t j = 0; j < k; ++j) contrib += model.concept_weights(j, task) * cmat(i, j);
            residual[i] = tasks[task][i] - contrib;
        }
        const auto v = detail::least_squares(fmat, residual);
        for (std::size_t f = 0; f < m; ++f) model.feature_weights(f, task) = v[f];
    }
    return model;
}

}  // namespace conceptkit
