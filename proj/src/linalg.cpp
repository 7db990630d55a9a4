#include "mapstab/linalg.hpp"

#include <utility>

namespace mapstab {

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vector>& columns)
{
    Matrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        for (std::size_t r = 0; r < rows; ++r) m.at(r, c) = columns[c].at(r);
    }
    return m;
}

Vector Matrix::apply(const Vector& v) const
{
    Vector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            if (sgn(at(r, c)) != 0 && sgn(v[c]) != 0) out[r] += at(r, c) * v[c];
        }
    }
    return out;
}

Echelon bareiss_echelon(const Matrix& m)
{
    const std::size_t n_rows = m.rows();
    const std::size_t n_cols = m.cols();
    std::vector<std::vector<Integer>> a(n_rows, std::vector<Integer>(n_cols));
    for (std::size_t r = 0; r < n_rows; ++r) {
        Integer scale = 1;
        for (std::size_t c = 0; c < n_cols; ++c) {
            const Integer& den = m.at(r, c).get_den();
            mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), den.get_mpz_t());
        }
        for (std::size_t c = 0; c < n_cols; ++c) {
            const Rational& q = m.at(r, c);
            a[r][c] = q.get_num() * (scale / q.get_den());
        }
    }

    Echelon out;
    out.cols = n_cols;
    Integer previous = 1;
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < n_cols && pivot_row < n_rows; ++col) {
        std::size_t found = pivot_row;
        while (found < n_rows && sgn(a[found][col]) == 0) ++found;
        if (found == n_rows) continue;
        std::swap(a[pivot_row], a[found]);
        const Integer pivot = a[pivot_row][col];
        for (std::size_t r = pivot_row + 1; r < n_rows; ++r) {
            const Integer factor = a[r][col];
            for (std::size_t c = col; c < n_cols; ++c) {
                Integer value = pivot * a[r][c] - factor * a[pivot_row][c];
                // Bareiss: the division by the previous pivot is exact.
                mpz_divexact(value.get_mpz_t(), value.get_mpz_t(), previous.get_mpz_t());
                a[r][c] = std::move(value);
            }
        }
        out.pivot_columns.push_back(col);
        previous = pivot;
        ++pivot_row;
    }
    a.resize(pivot_row);
    out.rows = std::move(a);
    return out;
}

std::size_t rank(const Matrix& m)
{
    return bareiss_echelon(m).pivot_columns.size();
}

std::vector<Vector> kernel_basis(const Matrix& m)
{
    const Echelon e = bareiss_echelon(m);
    std::vector<bool> is_pivot(e.cols, false);
    for (auto c : e.pivot_columns) is_pivot[c] = true;

    std::vector<Vector> basis;
    for (std::size_t free = 0; free < e.cols; ++free) {
        if (is_pivot[free]) continue;
        Vector v(e.cols);
        v[free] = 1;
        for (std::size_t i = e.pivot_columns.size(); i-- > 0;) {
            const auto pc = e.pivot_columns[i];
            Rational sum = 0;
            for (std::size_t c = pc + 1; c < e.cols; ++c) {
                if (sgn(e.rows[i][c]) != 0 && sgn(v[c]) != 0) sum += Rational(e.rows[i][c]) * v[c];
            }
            v[pc] = -sum / Rational(e.rows[i][pc]);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Matrix> inverse(const Matrix& m)
{
    const std::size_t n = m.rows();
    if (m.cols() != n) return std::nullopt;
    Matrix a = m;
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i) inv.at(i, i) = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && sgn(a.at(pivot, col)) == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(a.at(pivot, c), a.at(col, c));
                std::swap(inv.at(pivot, c), inv.at(col, c));
            }
        }
        const Rational p = a.at(col, col);
        for (std::size_t c = 0; c < n; ++c) {
            a.at(col, c) /= p;
            inv.at(col, c) /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || sgn(a.at(r, col)) == 0) continue;
            const Rational f = a.at(r, col);
            for (std::size_t c = 0; c < n; ++c) {
                a.at(r, c) -= f * a.at(col, c);
                inv.at(r, c) -= f * inv.at(col, c);
            }
        }
    }
    return inv;
}

Matrix multiply(const Matrix& a, const Matrix& b)
{
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (sgn(a.at(i, k)) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    }
    return out;
}

std::size_t span_rank(std::size_t dim, const std::vector<Vector>& vectors)
{
    if (vectors.empty() || dim == 0) return 0;
    return rank(Matrix::from_columns(dim, vectors));
}

}  // namespace mapstab
