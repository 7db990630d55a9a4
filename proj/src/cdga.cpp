#include "mapstab/cdga.hpp"

#include "mapstab/linalg.hpp"

#include <map>
#include <sstream>

namespace mapstab {

namespace {

void check_images(const AlgebraPtr& algebra, const std::vector<Element>& images)
{
    if (images.size() != algebra->size()) {
        throw EngineError(ErrorCode::MixedAlgebra, "differential must give one image per generator");
    }
    for (std::size_t i = 0; i < images.size(); ++i) {
        const auto& g = algebra->generator(i);
        if (images[i].algebra() != algebra) {
            throw EngineError(ErrorCode::MixedAlgebra, "image of '" + g.name + "' lies in another algebra");
        }
        if (!images[i].is_homogeneous_of(g.degree + 1)) {
            throw EngineError(ErrorCode::DegreeMismatch, "d(" + g.name + ") = " + to_string(images[i]) +
                                                             " is not of degree " + std::to_string(g.degree + 1));
        }
    }
}

/// Coordinates of `e` in the basis `basis` (every monomial of e must occur).
Vector coordinates(const Element& e, const std::map<Monomial, std::size_t>& index, std::size_t dim)
{
    Vector v(dim);
    for (const auto& [m, c] : e.terms()) v.at(index.at(m)) = c;
    return v;
}

std::map<Monomial, std::size_t> index_basis(const std::vector<Monomial>& basis)
{
    std::map<Monomial, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);
    return index;
}

/// Matrix of d restricted to degree `degree`, rows in the degree+1 basis.
Matrix differential_matrix(const Cdga& cdga, const std::vector<Monomial>& domain,
                           const std::vector<Monomial>& codomain)
{
    const auto index = index_basis(codomain);
    std::vector<Vector> columns;
    columns.reserve(domain.size());
    for (const auto& m : domain) {
        columns.push_back(coordinates(cdga.differential.apply(m), index, codomain.size()));
    }
    return Matrix::from_columns(codomain.size(), columns);
}

}  // namespace

// ---------------------------------------------------------------- Differential

Element Differential::apply(const Monomial& monomial) const
{
    Element out(algebra_);
    const auto& factors = monomial.factors();
    for (std::size_t j = 0; j < factors.size(); ++j) {
        const auto& f = factors[j];
        const auto& image = images_[f.index];
        if (image.is_zero()) continue;
        std::vector<Factor> prefix(factors.begin(), factors.begin() + static_cast<std::ptrdiff_t>(j));
        std::vector<Factor> suffix(factors.begin() + static_cast<std::ptrdiff_t>(j) + 1, factors.end());
        auto prefix_m = *Monomial::from_factors(*algebra_, prefix);
        auto suffix_m = *Monomial::from_factors(*algebra_, suffix);
        // d(g^e) = e g^(e-1) dg for even g; odd generators have e = 1.
        Rational coeff = f.exponent;
        if ((prefix_m.degree() & 1) != 0) coeff = -coeff;
        Element middle = Element::constant(algebra_, coeff);
        if (f.exponent > 1) {
            middle = middle * Element::monomial(
                                  algebra_, *Monomial::from_factors(*algebra_, {Factor{f.index, f.exponent - 1}}));
        }
        middle = middle * image;
        out += Element::monomial(algebra_, prefix_m) * middle * Element::monomial(algebra_, suffix_m);
    }
    return out;
}

Element Differential::apply(const Element& element) const
{
    if (element.algebra() != algebra_) {
        throw EngineError(ErrorCode::MixedAlgebra, "differential applied to an element of another algebra");
    }
    Element out(algebra_);
    for (const auto& [m, c] : element.terms()) out += apply(m) * c;
    return out;
}

Differential unchecked_derivation(AlgebraPtr algebra, std::vector<Element> images)
{
    check_images(algebra, images);
    return Differential(std::move(algebra), std::move(images));
}

VerificationReport check_square_zero(const Differential& d)
{
    VerificationReport report;
    for (std::size_t i = 0; i < d.algebra()->size(); ++i) {
        const Element dd = d.apply(d.image(i));
        if (!dd.is_zero()) {
            report.fail("d^2", d.algebra()->generator(i).name, "d(d " + d.algebra()->generator(i).name + ") = " + to_string(dd));
        }
    }
    return report;
}

Differential extend_derivation(AlgebraPtr algebra, std::vector<Element> images)
{
    Differential d = unchecked_derivation(std::move(algebra), std::move(images));
    const auto report = check_square_zero(d);
    if (!report.passed()) {
        throw EngineError(ErrorCode::NotADifferential, "not a differential: " + report.first()->detail);
    }
    return d;
}

Differential zero_differential(const AlgebraPtr& algebra)
{
    std::vector<Element> images(algebra->size(), Element(algebra));
    return unchecked_derivation(algebra, std::move(images));
}

Cdga::Cdga(AlgebraPtr a, Differential d) : algebra(std::move(a)), differential(std::move(d))
{
    if (differential.algebra() != algebra) {
        throw EngineError(ErrorCode::MixedAlgebra, "differential belongs to another algebra");
    }
}

// ---------------------------------------------------------------- cohomology

Cohomology cohomology(const Cdga& cdga, int degree)
{
    const auto& algebra = *cdga.algebra;
    if (degree + 1 > algebra.max_degree()) {
        throw EngineError(ErrorCode::WindowExceeded, "cohomology in degree " + std::to_string(degree) +
                                                         " needs max degree >= " + std::to_string(degree + 1));
    }
    const auto below = monomial_basis(algebra, degree - 1);
    const auto here = monomial_basis(algebra, degree);
    const auto above = monomial_basis(algebra, degree + 1);

    Cohomology out;
    if (here.empty()) return out;

    const auto cocycles = kernel_basis(differential_matrix(cdga, here, above));
    const Matrix incoming = differential_matrix(cdga, below, here);
    const std::size_t boundary_rank = rank(incoming);

    std::vector<Vector> span;
    for (std::size_t c = 0; c < incoming.cols(); ++c) {
        Vector column(here.size());
        for (std::size_t r = 0; r < here.size(); ++r) column[r] = incoming.at(r, c);
        span.push_back(std::move(column));
    }
    std::size_t current = boundary_rank;
    for (const auto& z : cocycles) {
        span.push_back(z);
        const std::size_t next = span_rank(here.size(), span);
        if (next == current) {
            span.pop_back();
            continue;
        }
        current = next;
        Element rep(cdga.algebra);
        for (std::size_t i = 0; i < here.size(); ++i) rep.add_term(here[i], z[i]);
        out.representatives.push_back(std::move(rep));
    }
    out.dimension = cocycles.size() - boundary_rank;
    return out;
}

// ---------------------------------------------------------------- homotopy

HomotopyTable generator_counts(const FreeGca& algebra, int window)
{
    HomotopyTable table(window);
    for (const auto& g : algebra.generators()) {
        if (g.degree >= 1 && g.degree <= window) table.set(g.degree, table.at(g.degree) + 1);
    }
    return table;
}

HomotopyTable linearized_homotopy(const Cdga& cdga, int window)
{
    const auto& algebra = *cdga.algebra;
    for (std::size_t i = 0; i < algebra.size(); ++i) {
        if (!is_zero(cdga.differential.image(i).constant_term())) {
            throw EngineError(ErrorCode::NotLocalized,
                              "d(" + algebra.generator(i).name + ") has a constant term; the model is not localized");
        }
    }
    if (algebra.has_nonpositive_generator()) {
        throw EngineError(ErrorCode::InfiniteBasis, "linearized homotopy needs generators of degree >= 1; localize first");
    }

    // Generators grouped by degree, with their position inside the group.
    std::map<int, std::vector<std::size_t>> by_degree;
    for (std::size_t i = 0; i < algebra.size(); ++i) by_degree[algebra.generator(i).degree].push_back(i);
    auto group = [&](int k) -> const std::vector<std::size_t>& {
        static const std::vector<std::size_t> empty;
        auto it = by_degree.find(k);
        return it == by_degree.end() ? empty : it->second;
    };
    // rank of the linear part V^k -> V^{k+1}
    auto linear_rank = [&](int k) -> std::size_t {
        const auto& from = group(k);
        const auto& to = group(k + 1);
        if (from.empty() || to.empty()) return 0;
        Matrix m(to.size(), from.size());
        for (std::size_t c = 0; c < from.size(); ++c) {
            const auto linear = cdga.differential.image(from[c]).linear_part();
            for (std::size_t r = 0; r < to.size(); ++r) m.at(r, c) = linear[to[r]];
        }
        return rank(m);
    };

    HomotopyTable table(window);
    for (int k = 1; k <= window; ++k) {
        const std::size_t dim = group(k).size();
        table.set(k, dim - linear_rank(k) - linear_rank(k - 1));
    }
    return table;
}

std::string to_string(const HomotopyTable& table)
{
    std::ostringstream os;
    os << '{';
    for (int k = 1; k <= table.window(); ++k) {
        if (k > 1) os << ", ";
        os << k << ':' << table.at(k);
    }
    os << '}';
    return os.str();
}

// ---------------------------------------------------------------- morphisms

Element CdgaMorphism::apply(const Element& element) const
{
    return substitute(element, assignment());
}

CdgaMorphism identity_morphism(const Cdga& cdga)
{
    return CdgaMorphism{cdga, cdga, identity_assignment(cdga.algebra).images};
}

VerificationReport verify_morphism(const CdgaMorphism& phi)
{
    VerificationReport report;
    const auto& source = *phi.source.algebra;
    if (phi.images.size() != source.size()) {
        report.fail("shape", "", "morphism does not give one image per source generator");
        return report;
    }
    for (std::size_t i = 0; i < source.size(); ++i) {
        const auto& g = source.generator(i);
        if (phi.images[i].algebra() != phi.target.algebra || !phi.images[i].is_homogeneous_of(g.degree)) {
            report.fail("degree", g.name, "image " + to_string(phi.images[i]) + " is not of degree " + std::to_string(g.degree));
            return report;
        }
    }
    for (std::size_t i = 0; i < source.size(); ++i) {
        const Element lhs = phi.apply(phi.source.differential.image(i));
        const Element rhs = phi.target.differential.apply(phi.images[i]);
        if (!(lhs == rhs)) {
            report.fail("chain", source.generator(i).name,
                        "phi(d g) = " + to_string(lhs) + " but d(phi g) = " + to_string(rhs));
        }
    }
    return report;
}

CdgaMorphism compose(const CdgaMorphism& phi, const CdgaMorphism& psi)
{
    if (!(psi.target == phi.source)) {
        throw EngineError(ErrorCode::MixedAlgebra, "compose: target of the inner map is not the source of the outer map");
    }
    CdgaMorphism out{psi.source, phi.target, {}};
    out.images.reserve(psi.images.size());
    for (const auto& image : psi.images) out.images.push_back(phi.apply(image));
    const auto report = verify_morphism(out);
    if (!report.passed()) {
        throw EngineError(ErrorCode::ConstructionFault, "composite is not a chain map at " + report.first()->where +
                                                            ": " + report.first()->detail);
    }
    return out;
}

bool is_identity(const CdgaMorphism& phi)
{
    if (phi.source.algebra != phi.target.algebra) return false;
    for (std::size_t i = 0; i < phi.images.size(); ++i) {
        if (!(phi.images[i] == Element::generator(phi.target.algebra, i))) return false;
    }
    return true;
}

}  // namespace mapstab
