#include "mapstab/tensor.hpp"

#include "mapstab/errors.hpp"

namespace mapstab {

TensorElement::TensorElement(FiniteCdgaPtr model, AlgebraPtr algebra)
    : model_(std::move(model)), algebra_(std::move(algebra)), parts_(model_->dim(), Element(algebra_))
{
}

TensorElement TensorElement::lift(FiniteCdgaPtr model, const Element& p)
{
    TensorElement t(std::move(model), p.algebra());
    t.parts_[0] = p;
    return t;
}

TensorElement TensorElement::basis(FiniteCdgaPtr model, AlgebraPtr algebra, std::size_t i, const Rational& c)
{
    TensorElement t(std::move(model), algebra);
    t.parts_.at(i) = Element::constant(std::move(algebra), c);
    return t;
}

TensorElement TensorElement::pure(FiniteCdgaPtr model, std::size_t i, const Element& p)
{
    TensorElement t(std::move(model), p.algebra());
    t.parts_.at(i) = p;
    return t;
}

TensorElement TensorElement::from_coordinates(FiniteCdgaPtr model, AlgebraPtr algebra,
                                              const std::vector<Rational>& coords)
{
    TensorElement t(std::move(model), algebra);
    for (std::size_t i = 0; i < coords.size(); ++i) t.parts_.at(i) = Element::constant(algebra, coords[i]);
    return t;
}

bool TensorElement::is_zero() const
{
    for (const auto& p : parts_) {
        if (!p.is_zero()) return false;
    }
    return true;
}

bool TensorElement::is_homogeneous_of(int degree) const
{
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (!parts_[i].is_homogeneous_of(degree - model_->degree(i))) return false;
    }
    return true;
}

std::vector<Rational> TensorElement::constant_coordinates() const
{
    std::vector<Rational> out(parts_.size());
    for (std::size_t i = 0; i < parts_.size(); ++i) out[i] = parts_[i].constant_term();
    return out;
}

void TensorElement::require_compatible(const TensorElement& other) const
{
    if (model_ != other.model_ || algebra_ != other.algebra_) {
        throw EngineError(ErrorCode::MixedAlgebra, "tensor operands belong to different algebras");
    }
}

TensorElement& TensorElement::operator+=(const TensorElement& other)
{
    require_compatible(other);
    for (std::size_t i = 0; i < parts_.size(); ++i) parts_[i] += other.parts_[i];
    return *this;
}

TensorElement& TensorElement::operator-=(const TensorElement& other)
{
    require_compatible(other);
    for (std::size_t i = 0; i < parts_.size(); ++i) parts_[i] -= other.parts_[i];
    return *this;
}

TensorElement& TensorElement::operator*=(const Rational& s)
{
    for (auto& p : parts_) p *= s;
    return *this;
}

TensorElement operator*(const TensorElement& a, const TensorElement& b)
{
    a.require_compatible(b);
    const auto& model = *a.model_;
    const std::size_t n = model.dim();
    TensorElement out(a.model_, a.algebra_);
    for (std::size_t i = 0; i < n; ++i) {
        const Element& p = a.parts_[i];
        if (p.is_zero()) continue;
        // Split p by parity: moving p past a_j costs (-1)^(|p||a_j|).
        Element p_even(a.algebra_), p_odd(a.algebra_);
        for (const auto& [m, c] : p.terms()) {
            ((m.degree() & 1) != 0 ? p_odd : p_even).add_term(m, c);
        }
        for (std::size_t j = 0; j < n; ++j) {
            const Element& q = b.parts_[j];
            if (q.is_zero()) continue;
            Element moved = ((model.degree(j) & 1) != 0) ? p_even - p_odd : p;
            const Element pq = moved * q;
            if (pq.is_zero()) continue;
            for (std::size_t k = 0; k < n; ++k) {
                const Rational& c = model.product(i, j, k);
                if (sgn(c) != 0) out.parts_[k] += pq * c;
            }
        }
    }
    return out;
}

bool operator==(const TensorElement& a, const TensorElement& b)
{
    return a.model_ == b.model_ && a.algebra_ == b.algebra_ && a.parts_ == b.parts_;
}

std::string to_string(const TensorElement& t)
{
    std::string out;
    for (std::size_t i = 0; i < t.parts().size(); ++i) {
        if (t.part(i).is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += t.model()->name(i) + "(x)(" + to_string(t.part(i)) + ")";
    }
    return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------- morphisms

std::vector<std::vector<Rational>> identity_on_model(const FiniteCdga& model)
{
    std::vector<std::vector<Rational>> m(model.dim(), std::vector<Rational>(model.dim()));
    for (std::size_t i = 0; i < model.dim(); ++i) m[i][i] = 1;
    return m;
}

TensorElement TensorMorphism::apply(const Element& p) const
{
    if (p.algebra() != domain) throw EngineError(ErrorCode::MixedAlgebra, "tensor morphism applied outside its domain");
    TensorElement out(model, codomain);
    for (const auto& [m, c] : p.terms()) {
        TensorElement term = TensorElement::basis(model, codomain, 0, c);
        for (const auto& f : m.factors()) {
            for (std::uint32_t e = 0; e < f.exponent; ++e) term = term * images.at(f.index);
            if (term.is_zero()) break;
        }
        out += term;
    }
    return out;
}

TensorElement TensorMorphism::apply(const TensorElement& t) const
{
    TensorElement out(model, codomain);
    for (std::size_t i = 0; i < model->dim(); ++i) {
        if (t.part(i).is_zero()) continue;
        const TensorElement a = TensorElement::from_coordinates(model, codomain, on_model.at(i));
        out += a * apply(t.part(i));
    }
    return out;
}

// ---------------------------------------------------------------- derivations

TensorDerivation TensorDerivation::product(FiniteCdgaPtr model, const Differential& d)
{
    TensorDerivation out{model, d.algebra(), {}};
    for (const auto& image : d.images()) out.images.push_back(TensorElement::lift(model, image));
    return out;
}

TensorElement TensorDerivation::apply(const Element& p) const
{
    if (p.algebra() != algebra) throw EngineError(ErrorCode::MixedAlgebra, "derivation applied outside its algebra");
    TensorElement out(model, algebra);
    for (const auto& [m, c] : p.terms()) {
        const auto& factors = m.factors();
        for (std::size_t j = 0; j < factors.size(); ++j) {
            const auto& f = factors[j];
            const auto& image = images.at(f.index);
            if (image.is_zero()) continue;
            std::vector<Factor> prefix(factors.begin(), factors.begin() + static_cast<std::ptrdiff_t>(j));
            std::vector<Factor> rest(factors.begin() + static_cast<std::ptrdiff_t>(j) + 1, factors.end());
            if (f.exponent > 1) rest.push_back(Factor{f.index, f.exponent - 1});
            const auto prefix_m = *Monomial::from_factors(*algebra, prefix);
            const auto rest_m = *Monomial::from_factors(*algebra, rest);
            Rational coeff = c * Rational(f.exponent);
            if ((prefix_m.degree() & 1) != 0) coeff = -coeff;
            // g^(e-1) is even, so it can be moved past d(g) to the right freely.
            out += TensorElement::lift(model, Element::monomial(algebra, prefix_m, coeff)) * image *
                   TensorElement::lift(model, Element::monomial(algebra, rest_m));
        }
    }
    return out;
}

TensorElement TensorDerivation::apply(const TensorElement& t) const
{
    TensorElement out(model, algebra);
    const std::size_t n = model->dim();
    for (std::size_t i = 0; i < n; ++i) {
        const Element& p = t.part(i);
        if (p.is_zero()) continue;
        std::vector<Rational> da(n);
        for (std::size_t k = 0; k < n; ++k) da[k] = model->diff(i, k);
        out += TensorElement::from_coordinates(model, algebra, da) * TensorElement::lift(model, p);
        TensorElement rest = TensorElement::basis(model, algebra, i) * apply(p);
        if ((model->degree(i) & 1) != 0) rest *= Rational(-1);
        out += rest;
    }
    return out;
}

}  // namespace mapstab
