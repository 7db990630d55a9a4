#pragma once

// The algebra A (x) LV for a finite model A and a free algebra LV. An element
// is stored as sum_i a_i (x) p_i, i.e. one LV coefficient per basis vector of A.

#include "mapstab/cdga.hpp"
#include "mapstab/finite_model.hpp"
#include "mapstab/graded_algebra.hpp"

#include <vector>

namespace mapstab {

class TensorElement {
public:
    TensorElement(FiniteCdgaPtr model, AlgebraPtr algebra);

    /// 1 (x) p
    static TensorElement lift(FiniteCdgaPtr model, const Element& p);
    /// c a_i (x) 1
    static TensorElement basis(FiniteCdgaPtr model, AlgebraPtr algebra, std::size_t i, const Rational& c = 1);
    /// a_i (x) p
    static TensorElement pure(FiniteCdgaPtr model, std::size_t i, const Element& p);
    /// sum_i coords[i] a_i (x) 1
    static TensorElement from_coordinates(FiniteCdgaPtr model, AlgebraPtr algebra, const std::vector<Rational>& coords);

    [[nodiscard]] const FiniteCdgaPtr& model() const { return model_; }
    [[nodiscard]] const AlgebraPtr& algebra() const { return algebra_; }
    [[nodiscard]] const Element& part(std::size_t i) const { return parts_.at(i); }
    [[nodiscard]] const std::vector<Element>& parts() const { return parts_; }
    [[nodiscard]] bool is_zero() const;
    /// Total degree |a_i| + |p| of every nonzero term equals `degree`.
    [[nodiscard]] bool is_homogeneous_of(int degree) const;
    /// The A-coordinates of the terms with p a constant.
    [[nodiscard]] std::vector<Rational> constant_coordinates() const;

    TensorElement& operator+=(const TensorElement& other);
    TensorElement& operator-=(const TensorElement& other);
    TensorElement& operator*=(const Rational& s);

    friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
    friend TensorElement operator-(TensorElement a, const TensorElement& b) { return a -= b; }
    friend TensorElement operator*(TensorElement a, const Rational& s) { return a *= s; }
    /// (a_i (x) p)(a_j (x) q) = (-1)^(|p||a_j|) a_i a_j (x) pq
    friend TensorElement operator*(const TensorElement& a, const TensorElement& b);
    friend bool operator==(const TensorElement& a, const TensorElement& b);

private:
    void require_compatible(const TensorElement& other) const;

    FiniteCdgaPtr model_;
    AlgebraPtr algebra_;
    std::vector<Element> parts_;
};

std::string to_string(const TensorElement& t);

/// Algebra morphism A (x) LV -> A (x) LW that acts on A by a linear map and
/// sends each generator of LV to a given tensor.
struct TensorMorphism {
    FiniteCdgaPtr model;
    AlgebraPtr domain;
    AlgebraPtr codomain;
    std::vector<std::vector<Rational>> on_model;  // a_i -> sum_k on_model[i][k] a_k
    std::vector<TensorElement> images;            // indexed by generators of domain

    [[nodiscard]] TensorElement apply(const Element& p) const;
    [[nodiscard]] TensorElement apply(const TensorElement& t) const;
};

/// Identity matrix on the model's basis.
std::vector<std::vector<Rational>> identity_on_model(const FiniteCdga& model);

/// Derivation on A (x) LV: d_A on A, given tensors on the generators of LV.
struct TensorDerivation {
    FiniteCdgaPtr model;
    AlgebraPtr algebra;
    std::vector<TensorElement> images;

    /// d_A (x) d for a differential d on LV.
    static TensorDerivation product(FiniteCdgaPtr model, const Differential& d);

    [[nodiscard]] TensorElement apply(const Element& p) const;
    [[nodiscard]] TensorElement apply(const TensorElement& t) const;
};

}  // namespace mapstab
