#include "mapstab/graded_algebra.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace mapstab {

std::string_view error_code_name(ErrorCode code)
{
    switch (code) {
    case ErrorCode::MixedAlgebra: return "E_MIXED_ALGEBRA";
    case ErrorCode::DegreeMismatch: return "E_DEGREE_MISMATCH";
    case ErrorCode::InfiniteBasis: return "E_INFINITE_BASIS";
    case ErrorCode::WindowExceeded: return "E_WINDOW_EXCEEDED";
    case ErrorCode::NotADifferential: return "E_NOT_A_DIFFERENTIAL";
    case ErrorCode::NotLocalized: return "E_NOT_LOCALIZED";
    case ErrorCode::InvalidFiniteModel: return "E_INVALID_FINITE_MODEL";
    case ErrorCode::InvalidTarget: return "E_INVALID_TARGET";
    case ErrorCode::InvalidSection: return "E_INVALID_SECTION";
    case ErrorCode::SignConventionFault: return "E_SIGN_CONVENTION_FAULT";
    case ErrorCode::ConstructionFault: return "E_CONSTRUCTION_FAULT";
    case ErrorCode::Parse: return "E_PARSE";
    case ErrorCode::Usage: return "E_USAGE";
    case ErrorCode::UnsupportedSource: return "E_UNSUPPORTED_SOURCE";
    }
    return "E_UNKNOWN";
}

std::string to_string(const Rational& q)
{
    return q.get_str();
}

Rational parse_rational(std::string_view text)
{
    auto fail = [&] { return EngineError(ErrorCode::Parse, "invalid rational literal '" + std::string(text) + "'"); };
    std::size_t pos = 0;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    const std::size_t num_begin = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == num_begin) throw fail();
    if (pos < text.size()) {
        if (text[pos] != '/') throw fail();
        const std::size_t den_begin = ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == den_begin || pos != text.size()) throw fail();
    }
    std::string s(text);
    if (!s.empty() && s[0] == '+') s.erase(0, 1);
    Rational q;
    if (q.set_str(s, 10) != 0) throw fail();
    if (sgn(q.get_den()) == 0) throw EngineError(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
    q.canonicalize();
    return q;
}

// ---------------------------------------------------------------- FreeGca

FreeGca::FreeGca(const std::vector<GeneratorSpec>& specs, int max_degree) : max_degree_(max_degree)
{
    std::unordered_set<std::string> names;
    generators_.reserve(specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) {
        if (!names.insert(specs[i].name).second) {
            throw EngineError(ErrorCode::InvalidTarget, "duplicate generator name '" + specs[i].name + "'");
        }
        generators_.push_back(Generator{i, specs[i].name, specs[i].degree});
    }
    std::stable_sort(generators_.begin(), generators_.end(),
                     [](const Generator& a, const Generator& b) { return a.degree < b.degree; });
}

std::optional<std::size_t> FreeGca::find(std::string_view name) const
{
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        if (generators_[i].name == name) return i;
    }
    return std::nullopt;
}

std::size_t FreeGca::index_of(std::string_view name) const
{
    if (auto i = find(name)) return *i;
    throw EngineError(ErrorCode::InvalidTarget, "unknown generator '" + std::string(name) + "'");
}

bool FreeGca::has_nonpositive_generator() const
{
    return std::any_of(generators_.begin(), generators_.end(), [](const Generator& g) { return g.degree <= 0; });
}

AlgebraPtr make_algebra(const std::vector<GeneratorSpec>& specs, int max_degree)
{
    return std::make_shared<const FreeGca>(specs, max_degree);
}

// ---------------------------------------------------------------- Monomial

std::uint32_t Monomial::exponent_of(std::size_t index) const
{
    for (const auto& f : factors_) {
        if (f.index == index) return f.exponent;
    }
    return 0;
}

std::optional<Monomial> Monomial::from_factors(const FreeGca& algebra, std::vector<Factor> factors)
{
    std::sort(factors.begin(), factors.end());
    Monomial m;
    for (const auto& f : factors) {
        if (f.exponent == 0) continue;
        if (f.index >= algebra.size()) throw EngineError(ErrorCode::MixedAlgebra, "generator index out of range");
        if (!m.factors_.empty() && m.factors_.back().index == f.index) {
            m.factors_.back().exponent += f.exponent;
        } else {
            m.factors_.push_back(f);
        }
    }
    for (const auto& f : m.factors_) {
        const auto& g = algebra.generator(f.index);
        if (g.odd() && f.exponent > 1) return std::nullopt;
        m.degree_ += g.degree * static_cast<int>(f.exponent);
    }
    return m;
}

std::optional<SignedMonomial> multiply_monomials(const FreeGca& algebra, const Monomial& lhs, const Monomial& rhs)
{
    SignedMonomial out;
    auto& result = out.monomial.factors_;
    result.reserve(lhs.factors_.size() + rhs.factors_.size());
    // Moving an odd rhs factor left past the odd lhs factors that follow it.
    std::size_t odd_lhs_remaining = 0;
    for (const auto& f : lhs.factors_) {
        if (algebra.generator(f.index).odd()) ++odd_lhs_remaining;
    }
    std::size_t swaps = 0;
    auto l = lhs.factors_.begin();
    auto r = rhs.factors_.begin();
    while (l != lhs.factors_.end() || r != rhs.factors_.end()) {
        if (r == rhs.factors_.end() || (l != lhs.factors_.end() && l->index < r->index)) {
            if (algebra.generator(l->index).odd()) --odd_lhs_remaining;
            result.push_back(*l++);
        } else if (l == lhs.factors_.end() || r->index < l->index) {
            if (algebra.generator(r->index).odd()) swaps += odd_lhs_remaining;
            result.push_back(*r++);
        } else {
            if (algebra.generator(l->index).odd()) return std::nullopt;
            result.push_back(Factor{l->index, l->exponent + r->exponent});
            ++l;
            ++r;
        }
    }
    out.monomial.degree_ = lhs.degree_ + rhs.degree_;
    out.negative = (swaps & 1U) != 0;
    return out;
}

// ---------------------------------------------------------------- Element

Element::Element(AlgebraPtr algebra) : algebra_(std::move(algebra)) {}

Element::Element(AlgebraPtr algebra, Terms terms) : algebra_(std::move(algebra))
{
    for (auto& [m, c] : terms) add_term(m, c);
}

Element Element::constant(AlgebraPtr algebra, const Rational& value)
{
    Element e(std::move(algebra));
    e.add_term(Monomial{}, value);
    return e;
}

Element Element::generator(AlgebraPtr algebra, std::size_t index)
{
    auto m = Monomial::from_factors(*algebra, {Factor{static_cast<std::uint32_t>(index), 1}});
    return monomial(std::move(algebra), *m, 1);
}

Element Element::generator(AlgebraPtr algebra, std::string_view name)
{
    const auto index = algebra->index_of(name);
    return generator(std::move(algebra), index);
}

Element Element::monomial(AlgebraPtr algebra, const Monomial& m, const Rational& coefficient)
{
    Element e(std::move(algebra));
    e.add_term(m, coefficient);
    return e;
}

DegreeInfo Element::degree_info() const
{
    if (terms_.empty()) return {};
    const int first = terms_.begin()->first.degree();
    // Terms are ordered by degree, so comparing the extremes suffices.
    if (terms_.rbegin()->first.degree() != first) return {DegreeInfo::Kind::Mixed, 0};
    return {DegreeInfo::Kind::Homogeneous, first};
}

bool Element::is_homogeneous_of(int degree) const
{
    const auto info = degree_info();
    return info.kind == DegreeInfo::Kind::Zero ||
           (info.kind == DegreeInfo::Kind::Homogeneous && info.degree == degree);
}

Rational Element::coefficient(const Monomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational Element::constant_term() const
{
    return coefficient(Monomial{});
}

std::vector<Rational> Element::linear_part() const
{
    std::vector<Rational> out(algebra_->size());
    for (const auto& [m, c] : terms_) {
        if (m.is_generator()) out[m.factors()[0].index] = c;
    }
    return out;
}

void Element::add_term(const Monomial& m, const Rational& coefficient)
{
    if (mapstab::is_zero(coefficient)) return;
    auto [it, inserted] = terms_.try_emplace(m, coefficient);
    if (!inserted) {
        it->second += coefficient;
        if (mapstab::is_zero(it->second)) terms_.erase(it);
    }
}

void Element::require_same_algebra(const Element& other) const
{
    if (algebra_ != other.algebra_) {
        throw EngineError(ErrorCode::MixedAlgebra, "operands belong to different algebras");
    }
}

Element& Element::operator+=(const Element& other)
{
    require_same_algebra(other);
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
}

Element& Element::operator-=(const Element& other)
{
    require_same_algebra(other);
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
}

Element& Element::operator*=(const Rational& scalar)
{
    if (mapstab::is_zero(scalar)) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_) c *= scalar;
    return *this;
}

Element operator*(const Element& a, const Element& b)
{
    a.require_same_algebra(b);
    Element out(a.algebra_);
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            auto prod = multiply_monomials(*a.algebra_, ma, mb);
            if (!prod) continue;
            Rational c = ca * cb;
            if (prod->negative) c = -c;
            out.add_term(prod->monomial, c);
        }
    }
    return out;
}

bool operator==(const Element& a, const Element& b)
{
    return a.algebra_ == b.algebra_ && a.terms_ == b.terms_;
}

Element multiply(const Element& lhs, const Element& rhs)
{
    return lhs * rhs;
}

Element power(const Element& base, unsigned exponent)
{
    Element result = Element::constant(base.algebra(), 1);
    Element acc = base;
    while (exponent > 0) {
        if (exponent & 1U) result = result * acc;
        exponent >>= 1U;
        if (exponent > 0) acc = acc * acc;
    }
    return result;
}

// ---------------------------------------------------------------- bases

namespace {

void require_finite_basis(const FreeGca& algebra, int degree)
{
    if (algebra.has_nonpositive_generator()) {
        throw EngineError(ErrorCode::InfiniteBasis,
                          "infinite basis: algebra has a generator of degree <= 0; localize the component first");
    }
    if (degree > algebra.max_degree()) {
        throw EngineError(ErrorCode::WindowExceeded, "degree " + std::to_string(degree) +
                                                         " exceeds the algebra's max degree " +
                                                         std::to_string(algebra.max_degree()));
    }
}

}  // namespace

std::vector<Monomial> monomial_basis(const FreeGca& algebra, int degree)
{
    require_finite_basis(algebra, degree);
    std::vector<Monomial> out;
    if (degree < 0) return out;
    std::vector<Factor> current;
    std::function<void(std::size_t, int)> walk = [&](std::size_t index, int remaining) {
        if (remaining == 0) {
            out.push_back(*Monomial::from_factors(algebra, current));
            return;
        }
        if (index == algebra.size()) return;
        const auto& g = algebra.generator(index);
        const int max_exp = g.odd() ? 1 : remaining / g.degree;
        for (int e = 0; e <= max_exp && e * g.degree <= remaining; ++e) {
            if (e > 0) current.push_back(Factor{static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(e)});
            walk(index + 1, remaining - e * g.degree);
            if (e > 0) current.pop_back();
        }
    };
    walk(0, degree);
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t monomial_count(const FreeGca& algebra, int degree)
{
    require_finite_basis(algebra, degree);
    if (degree < 0) return 0;
    std::vector<std::size_t> series(static_cast<std::size_t>(degree) + 1, 0);
    series[0] = 1;
    for (const auto& g : algebra.generators()) {
        const auto step = static_cast<std::size_t>(g.degree);
        if (g.odd()) {
            for (std::size_t n = series.size(); n-- > step;) series[n] += series[n - step];
        } else {
            for (std::size_t n = step; n < series.size(); ++n) series[n] += series[n - step];
        }
    }
    return series.back();
}

// ---------------------------------------------------------------- substitution

Assignment identity_assignment(const AlgebraPtr& algebra)
{
    Assignment a{algebra, {}};
    a.images.reserve(algebra->size());
    for (std::size_t i = 0; i < algebra->size(); ++i) a.images.push_back(Element::generator(algebra, i));
    return a;
}

Element substitute(const Element& element, const Assignment& assignment)
{
    const auto& source = *element.algebra();
    if (assignment.images.size() != source.size()) {
        throw EngineError(ErrorCode::MixedAlgebra, "assignment does not cover the source algebra");
    }
    for (std::size_t i = 0; i < source.size(); ++i) {
        const auto& image = assignment.images[i];
        if (image.algebra() != assignment.target) {
            throw EngineError(ErrorCode::MixedAlgebra, "assignment image outside the target algebra");
        }
        if (!image.is_homogeneous_of(source.generator(i).degree)) {
            throw EngineError(ErrorCode::DegreeMismatch, "image of '" + source.generator(i).name +
                                                             "' is not homogeneous of degree " +
                                                             std::to_string(source.generator(i).degree));
        }
    }
    Element out(assignment.target);
    for (const auto& [m, c] : element.terms()) {
        Element term = Element::constant(assignment.target, c);
        for (const auto& f : m.factors()) {
            term = term * power(assignment.images[f.index], f.exponent);
            if (term.is_zero()) break;
        }
        out += term;
    }
    return out;
}

Element substitute(const Element& element, const std::map<std::size_t, Element>& partial)
{
    auto assignment = identity_assignment(element.algebra());
    for (const auto& [index, image] : partial) assignment.images.at(index) = image;
    return substitute(element, assignment);
}

// ---------------------------------------------------------------- printing

std::string to_string(const FreeGca& algebra, const Monomial& m)
{
    if (m.is_unit()) return "1";
    std::string out;
    for (const auto& f : m.factors()) {
        if (!out.empty()) out += '*';
        out += algebra.generator(f.index).name;
        if (f.exponent > 1) out += "^" + std::to_string(f.exponent);
    }
    return out;
}

std::string to_string(const Element& element)
{
    if (element.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : element.terms()) {
        const bool negative = sgn(c) < 0;
        const Rational magnitude = abs(c);
        if (first) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        if (m.is_unit()) {
            out += to_string(magnitude);
        } else if (magnitude == 1) {
            out += to_string(*element.algebra(), m);
        } else {
            out += to_string(magnitude) + "*" + to_string(*element.algebra(), m);
        }
    }
    return out;
}

}  // namespace mapstab
