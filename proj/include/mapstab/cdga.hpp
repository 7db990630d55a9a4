#pragma once

#include "mapstab/graded_algebra.hpp"
#include "mapstab/report.hpp"

#include <cstddef>
#include <vector>

namespace mapstab {

/// Degree +1 derivation of a free graded-commutative algebra, determined by
/// its values on generators.
class Differential {
public:
    [[nodiscard]] const AlgebraPtr& algebra() const { return algebra_; }
    [[nodiscard]] const std::vector<Element>& images() const { return images_; }
    [[nodiscard]] const Element& image(std::size_t generator) const { return images_.at(generator); }

    /// Leibniz extension: d(uv) = (du)v + (-1)^|u| u(dv).
    [[nodiscard]] Element apply(const Element& element) const;
    [[nodiscard]] Element apply(const Monomial& monomial) const;

    friend bool operator==(const Differential& a, const Differential& b)
    {
        return a.algebra_ == b.algebra_ && a.images_ == b.images_;
    }

private:
    Differential(AlgebraPtr algebra, std::vector<Element> images)
        : algebra_(std::move(algebra)), images_(std::move(images))
    {
    }

    AlgebraPtr algebra_;
    std::vector<Element> images_;

    friend Differential extend_derivation(AlgebraPtr, std::vector<Element>);
    friend Differential unchecked_derivation(AlgebraPtr, std::vector<Element>);
};

/// Builds the derivation with the given generator images. Throws
/// DegreeMismatch for an image not of degree |g|+1 and NotADifferential
/// when d(d g) != 0 for some generator.
Differential extend_derivation(AlgebraPtr algebra, std::vector<Element> images);

/// Same as extend_derivation without the d^2 check. Used to hold candidate
/// differentials whose square is inspected afterwards.
Differential unchecked_derivation(AlgebraPtr algebra, std::vector<Element> images);

Differential zero_differential(const AlgebraPtr& algebra);

/// Generators g with d(d g) != 0, as failures of check "d^2".
VerificationReport check_square_zero(const Differential& d);

struct Cdga {
    AlgebraPtr algebra;
    Differential differential;

    Cdga(AlgebraPtr a, Differential d);

    friend bool operator==(const Cdga& a, const Cdga& b) = default;
};

struct Cohomology {
    std::size_t dimension = 0;
    std::vector<Element> representatives;  // cocycles spanning a complement of the coboundaries
};

/// H^degree by exact elimination over the monomial bases of degree-1,
/// degree and degree+1. Requires degree + 1 <= max degree.
Cohomology cohomology(const Cdga& cdga, int degree);

/// dim pi_k (x) Q for 1 <= k <= window.
class HomotopyTable {
public:
    explicit HomotopyTable(int window) : window_(window), dims_(window > 0 ? window : 0, 0) {}

    [[nodiscard]] int window() const { return window_; }
    [[nodiscard]] std::size_t at(int k) const { return dims_.at(static_cast<std::size_t>(k - 1)); }
    void set(int k, std::size_t dim) { dims_.at(static_cast<std::size_t>(k - 1)) = dim; }

    friend bool operator==(const HomotopyTable& a, const HomotopyTable& b) = default;

private:
    int window_;
    std::vector<std::size_t> dims_;
};

/// Homology of the generator space under the linear part of the
/// differential. Requires generators of degree >= 1 and no constant terms.
HomotopyTable linearized_homotopy(const Cdga& cdga, int window);

/// Number of generators in each degree 1..window.
HomotopyTable generator_counts(const FreeGca& algebra, int window);

std::string to_string(const HomotopyTable& table);

struct CdgaMorphism {
    Cdga source;
    Cdga target;
    std::vector<Element> images;  // indexed by source generator, elements of target

    [[nodiscard]] Element apply(const Element& element) const;
    [[nodiscard]] Assignment assignment() const { return {target.algebra, images}; }
};

CdgaMorphism identity_morphism(const Cdga& cdga);

/// Chain condition phi(d g) = d(phi g) on every source generator.
VerificationReport verify_morphism(const CdgaMorphism& phi);

/// phi o psi. Throws MixedAlgebra when psi's target is not phi's source and
/// ConstructionFault when the composite fails the chain condition.
CdgaMorphism compose(const CdgaMorphism& phi, const CdgaMorphism& psi);

/// Compares images generator by generator with the identity.
bool is_identity(const CdgaMorphism& phi);

}  // namespace mapstab
