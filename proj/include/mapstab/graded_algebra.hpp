#pragma once

// Free graded-commutative algebras over Q.
//
// A FreeGca owns an ordered generator list. Generators are stored in the
// canonical order (degree, then insertion id), and every Monomial lists its
// factors in that order, so the sign of a product is the parity of the odd
// transpositions needed to sort the concatenated factors.

#include "mapstab/errors.hpp"
#include "mapstab/rational.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mapstab {

struct GeneratorSpec {
    std::string name;
    int degree = 0;
};

struct Generator {
    std::size_t id = 0;  // insertion position, the tie-break of the canonical order
    std::string name;
    int degree = 0;

    [[nodiscard]] bool odd() const { return (degree & 1) != 0; }
};

class FreeGca {
public:
    /// Sorts `specs` stably by degree. Names must be unique.
    FreeGca(const std::vector<GeneratorSpec>& specs, int max_degree);

    [[nodiscard]] std::size_t size() const { return generators_.size(); }
    [[nodiscard]] const Generator& generator(std::size_t index) const { return generators_.at(index); }
    [[nodiscard]] const std::vector<Generator>& generators() const { return generators_; }
    [[nodiscard]] int max_degree() const { return max_degree_; }

    [[nodiscard]] std::optional<std::size_t> find(std::string_view name) const;
    /// Throws EngineError(InvalidTarget) for unknown names.
    [[nodiscard]] std::size_t index_of(std::string_view name) const;

    [[nodiscard]] bool has_nonpositive_generator() const;

private:
    std::vector<Generator> generators_;
    int max_degree_;
};

using AlgebraPtr = std::shared_ptr<const FreeGca>;

AlgebraPtr make_algebra(const std::vector<GeneratorSpec>& specs, int max_degree);

struct Factor {
    std::uint32_t index = 0;     // canonical generator index
    std::uint32_t exponent = 0;  // always 1 for odd generators

    auto operator<=>(const Factor&) const = default;
};

struct SignedMonomial;

/// Product of generators in canonical order. Ordered by total degree first.
class Monomial {
public:
    Monomial() = default;

    [[nodiscard]] const std::vector<Factor>& factors() const { return factors_; }
    [[nodiscard]] int degree() const { return degree_; }
    [[nodiscard]] bool is_unit() const { return factors_.empty(); }
    [[nodiscard]] bool is_generator() const { return factors_.size() == 1 && factors_[0].exponent == 1; }
    [[nodiscard]] std::uint32_t exponent_of(std::size_t index) const;

    /// Builds a monomial from (index, exponent) pairs in any order; returns
    /// nullopt when an odd generator would appear twice.
    static std::optional<Monomial> from_factors(const FreeGca& algebra, std::vector<Factor> factors);

    friend bool operator==(const Monomial& a, const Monomial& b) = default;
    friend bool operator<(const Monomial& a, const Monomial& b)
    {
        if (a.degree_ != b.degree_) return a.degree_ < b.degree_;
        return a.factors_ < b.factors_;
    }

private:
    std::vector<Factor> factors_;
    int degree_ = 0;

    friend std::optional<SignedMonomial> multiply_monomials(const FreeGca&, const Monomial&, const Monomial&);
};

/// Signed product of two monomials: nullopt when the product vanishes.
struct SignedMonomial {
    Monomial monomial;
    bool negative = false;
};
std::optional<SignedMonomial> multiply_monomials(const FreeGca& algebra, const Monomial& lhs, const Monomial& rhs);

struct DegreeInfo {
    enum class Kind { Zero, Homogeneous, Mixed };
    Kind kind = Kind::Zero;
    int degree = 0;
};

/// Finite sum of monomials with nonzero rational coefficients.
class Element {
public:
    using Terms = std::map<Monomial, Rational>;

    explicit Element(AlgebraPtr algebra);
    Element(AlgebraPtr algebra, Terms terms);

    static Element constant(AlgebraPtr algebra, const Rational& value);
    static Element generator(AlgebraPtr algebra, std::size_t index);
    static Element generator(AlgebraPtr algebra, std::string_view name);
    static Element monomial(AlgebraPtr algebra, const Monomial& m, const Rational& coefficient = 1);

    [[nodiscard]] const AlgebraPtr& algebra() const { return algebra_; }
    [[nodiscard]] const Terms& terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] DegreeInfo degree_info() const;
    /// True for zero and for elements whose monomials all have `degree`.
    [[nodiscard]] bool is_homogeneous_of(int degree) const;
    [[nodiscard]] Rational coefficient(const Monomial& m) const;
    [[nodiscard]] Rational constant_term() const;
    /// Coefficient of each single-generator term, indexed by generator.
    [[nodiscard]] std::vector<Rational> linear_part() const;

    void add_term(const Monomial& m, const Rational& coefficient);

    Element& operator+=(const Element& other);
    Element& operator-=(const Element& other);
    Element& operator*=(const Rational& scalar);

    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator-(Element a) { return a *= Rational(-1); }
    friend Element operator*(Element a, const Rational& s) { return a *= s; }
    friend Element operator*(const Rational& s, Element a) { return a *= s; }
    friend Element operator*(const Element& a, const Element& b);

    friend bool operator==(const Element& a, const Element& b);

private:
    void require_same_algebra(const Element& other) const;

    AlgebraPtr algebra_;
    Terms terms_;
};

Element multiply(const Element& lhs, const Element& rhs);
Element power(const Element& base, unsigned exponent);

/// All monomials of total `degree`, canonically ordered. Requires every
/// generator degree >= 1 and degree <= max_degree.
std::vector<Monomial> monomial_basis(const FreeGca& algebra, int degree);

/// Number of monomials of `degree` from the generating function
/// prod_even 1/(1 - t^|g|) * prod_odd (1 + t^|g|).
std::size_t monomial_count(const FreeGca& algebra, int degree);

/// Images of every generator of a source algebra inside `target`.
struct Assignment {
    AlgebraPtr target;
    std::vector<Element> images;
};

/// Identity assignment on `algebra`, to be edited in place.
Assignment identity_assignment(const AlgebraPtr& algebra);

/// Applies the algebra morphism determined by `assignment`. Images must be
/// homogeneous of the degree of the generator they replace.
Element substitute(const Element& element, const Assignment& assignment);

/// Same algebra; generators absent from `partial` are fixed.
Element substitute(const Element& element, const std::map<std::size_t, Element>& partial);

std::string to_string(const FreeGca& algebra, const Monomial& m);
std::string to_string(const Element& element);

}  // namespace mapstab
