#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace conceptkit {

// Dense row-major matrix of doubles. Small toolkit sizes, no BLAS.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), data(r * c, fill) {}

    double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    std::vector<double> row(std::size_t r) const {
        return {data.begin() + static_cast<std::ptrdiff_t>(r * cols),
                data.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols)};
    }
    std::vector<double> col(std::size_t c) const {
        std::vector<double> out(rows);
        for (std::size_t r = 0; r < rows; ++r) out[r] = (*this)(r, c);
        return out;
    }

    bool same_shape(const Matrix& o) const { return rows == o.rows && cols == o.cols; }
};

// Row-major 0/1 matrix (concept annotations).
struct BinaryMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::uint8_t> data;

    BinaryMatrix() = default;
    BinaryMatrix(std::size_t r, std::size_t c, std::uint8_t fill = 0)
        : rows(r), cols(c), data(r * c, fill) {}

    std::uint8_t& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    std::uint8_t operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    std::vector<double> col_as_doubles(std::size_t c) const {
        std::vector<double> out(rows);
        for (std::size_t r = 0; r < rows; ++r) out[r] = static_cast<double>((*this)(r, c));
        return out;
    }

    bool operator==(const BinaryMatrix& o) const {
        return rows == o.rows && cols == o.cols && data == o.data;
    }
};

// Solves A x = b by Gaussian elimination with partial pivoting. A is n x n.
// Used for the small least-squares fits; throws on (numerically) singular systems.
inline std::vector<double> solve_linear_system(Matrix a, std::vector<double> b) {
    if (a.rows != a.cols || a.rows != b.size())
        throw std::invalid_argument("solve_linear_system: dimension mismatch");
    const std::size_t n = a.rows;
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(a(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double v = std::abs(a(r, col));
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (best < 1e-12) throw std::runtime_error("solve_linear_system: singular matrix");
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a(col, c), a(pivot, c));
            std::swap(b[col], b[pivot]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a(r, col) / a(col, col);
            if (factor == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a(r, c) -= factor * a(col, c);
            b[r] -= factor * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t ri = n; ri-- > 0;) {
        double acc = b[ri];
        for (std::size_t c = ri + 1; c < n; ++c) acc -= a(ri, c) * x[c];
        x[ri] = acc / a(ri, ri);
    }
    return x;
}

}  // namespace conceptkit
