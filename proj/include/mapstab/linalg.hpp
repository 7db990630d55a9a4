#pragma once

#include "mapstab/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace mapstab {

using Vector = std::vector<Rational>;

/// Dense row-major rational matrix. A map C^n -> C^{n+1} is stored with
/// rows indexed by the codomain basis and columns by the domain basis.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    /// Matrix whose columns are the given vectors (all of length `rows`).
    static Matrix from_columns(std::size_t rows, const std::vector<Vector>& columns);

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    Rational& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    [[nodiscard]] const Rational& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    [[nodiscard]] Vector apply(const Vector& v) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Integer row echelon form produced by Bareiss fraction-free elimination.
/// Rows are first cleared of denominators; no pivot-size heuristics.
struct Echelon {
    std::vector<std::vector<Integer>> rows;  // only the nonzero rows
    std::vector<std::size_t> pivot_columns;
    std::size_t cols = 0;
};

Echelon bareiss_echelon(const Matrix& m);

std::size_t rank(const Matrix& m);

/// Basis of {v : m v = 0}, one vector per free column.
std::vector<Vector> kernel_basis(const Matrix& m);

/// Inverse of a square matrix, or nullopt when singular.
std::optional<Matrix> inverse(const Matrix& m);

Matrix multiply(const Matrix& a, const Matrix& b);

/// Rank of the span of the given vectors of length `dim`.
std::size_t span_rank(std::size_t dim, const std::vector<Vector>& vectors);

}  // namespace mapstab
