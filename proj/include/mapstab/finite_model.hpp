#pragma once

// Finite-dimensional CDGA models (A, d_A) of the source space, given by a
// basis a_0 = 1, a_1, ..., structure constants and a differential matrix.

#include "mapstab/errors.hpp"
#include "mapstab/rational.hpp"
#include "mapstab/report.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace mapstab {

struct BasisElement {
    std::string name;
    int degree = 0;
};

/// Raw, unvalidated model description.
struct FiniteCdgaData {
    std::vector<BasisElement> basis;
    std::vector<Rational> structure;     // c[i][j][k], a_i a_j = sum_k c[i][j][k] a_k
    std::vector<Rational> differential;  // d[i][k], d_A a_i = sum_k d[i][k] a_k

    /// Zero structure constants except the unit products a_0 a_i = a_i a_0 = a_i.
    static FiniteCdgaData with_basis(std::vector<BasisElement> basis);

    [[nodiscard]] std::size_t dim() const { return basis.size(); }
    Rational& product(std::size_t i, std::size_t j, std::size_t k) { return structure[(i * dim() + j) * dim() + k]; }
    [[nodiscard]] const Rational& product(std::size_t i, std::size_t j, std::size_t k) const
    {
        return structure[(i * dim() + j) * dim() + k];
    }
    Rational& diff(std::size_t i, std::size_t k) { return differential[i * dim() + k]; }
    [[nodiscard]] const Rational& diff(std::size_t i, std::size_t k) const { return differential[i * dim() + k]; }
};

/// Checks grading, unit, graded commutativity, associativity, d_A^2 = 0 and
/// Leibniz on the full basis, in that order.
VerificationReport verify_finite_cdga(const FiniteCdgaData& data);

class FiniteCdga;
using FiniteCdgaPtr = std::shared_ptr<const FiniteCdga>;

class FiniteCdga {
public:
    /// Throws EngineError(InvalidFiniteModel) with the first violated identity.
    static FiniteCdgaPtr create(FiniteCdgaData data);

    [[nodiscard]] const FiniteCdgaData& data() const { return data_; }
    [[nodiscard]] std::size_t dim() const { return data_.dim(); }
    [[nodiscard]] int degree(std::size_t i) const { return data_.basis.at(i).degree; }
    [[nodiscard]] const std::string& name(std::size_t i) const { return data_.basis.at(i).name; }
    [[nodiscard]] const Rational& product(std::size_t i, std::size_t j, std::size_t k) const
    {
        return data_.product(i, j, k);
    }
    [[nodiscard]] const Rational& diff(std::size_t i, std::size_t k) const { return data_.diff(i, k); }
    [[nodiscard]] int top_degree() const;
    [[nodiscard]] bool connected() const;  // A^0 is spanned by the unit
    [[nodiscard]] bool differential_is_zero() const;

    /// Index of the only basis element of `degree`, if there is exactly one.
    [[nodiscard]] std::optional<std::size_t> unique_of_degree(int degree) const;

    /// Coordinates of the product of two elements given in coordinates.
    [[nodiscard]] std::vector<Rational> multiply(const std::vector<Rational>& a, const std::vector<Rational>& b) const;
    [[nodiscard]] std::vector<Rational> apply_differential(const std::vector<Rational>& a) const;

private:
    explicit FiniteCdga(FiniteCdgaData data) : data_(std::move(data)) {}
    FiniteCdgaData data_;
};

/// Cohomology model of S^2: basis {1, a}, |a| = 2, a^2 = 0, d_A = 0.
FiniteCdgaPtr sphere2_model();

/// True when `model` is the two-dimensional model {1, a} with |a| = 2.
bool is_sphere2_like(const FiniteCdga& model);

struct DualGenerator {
    std::size_t index = 0;
    int degree = 0;  // -degree(a_index)
};

std::vector<DualGenerator> dual_basis(const FiniteCdga& model);

/// <a_i^*, a_j>
Rational pairing(const DualGenerator& dual, std::size_t basis_index);

}  // namespace mapstab
