#include "mapstab/stability.hpp"

#include "mapstab/errors.hpp"
#include "mapstab/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace mapstab {

namespace {

using RationalMatrix = std::vector<std::vector<Rational>>;

std::string coords_string(const std::vector<Rational>& coords)
{
    std::string out = "(";
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (i != 0) out += ", ";
        out += to_string(coords[i]);
    }
    return out + ")";
}

Matrix to_matrix(const RationalMatrix& rows)
{
    const std::size_t n = rows.size();
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) m.at(i, k) = rows[i].at(k);
    }
    return m;
}

RationalMatrix from_matrix(const Matrix& m)
{
    RationalMatrix rows(m.rows(), std::vector<Rational>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t k = 0; k < m.cols(); ++k) rows[i][k] = m.at(i, k);
    }
    return rows;
}

std::vector<Rational> unit_vector(std::size_t n, std::size_t i)
{
    std::vector<Rational> v(n);
    v.at(i) = 1;
    return v;
}

TensorMorphism lift_morphism(const FiniteCdgaPtr& source, const AlgebraPtr& v_algebra, RationalMatrix on_model)
{
    TensorMorphism out{source, v_algebra, v_algebra, std::move(on_model), {}};
    for (std::size_t v = 0; v < v_algebra->size(); ++v) {
        out.images.push_back(TensorElement::lift(source, Element::generator(v_algebra, v)));
    }
    return out;
}

bool is_zero_component(const Component& n)
{
    return std::all_of(n.begin(), n.end(), [](long ni) { return ni == 0; });
}

}  // namespace

// ---------------------------------------------------------------- cover action

std::vector<Rational> CoverAction::apply(const std::vector<Rational>& coords) const
{
    std::vector<Rational> out(matrix.size());
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (sgn(coords[i]) == 0) continue;
        for (std::size_t k = 0; k < out.size(); ++k) out[k] += coords[i] * matrix[i][k];
    }
    return out;
}

CoverAction cover_action(const FiniteCdgaPtr& source, long d)
{
    if (d == 0) throw EngineError(ErrorCode::Usage, "cover factor d = 0 does not define an automorphism");
    if (!source || !is_sphere2_like(*source)) {
        throw EngineError(ErrorCode::UnsupportedSource,
                          "the degree-d action is built in only for the model {1, a} with |a| = 2; "
                          "supply an explicit action");
    }
    CoverAction action;
    action.factor = d;
    action.source = source;
    action.matrix = {{1, 0}, {0, Rational(d)}};
    action.inverse = {{1, 0}, {0, Rational(1, d)}};
    action.inverse[1][1].canonicalize();
    return action;
}

CoverAction explicit_cover_action(const FiniteCdgaPtr& source, RationalMatrix matrix, long factor)
{
    const std::size_t n = source->dim();
    bool square = matrix.size() == n;
    for (const auto& row : matrix) square = square && row.size() == n;
    if (!square) throw EngineError(ErrorCode::UnsupportedSource, "action matrix does not match the model dimension");
    const auto inv = inverse(to_matrix(matrix));
    if (!inv) throw EngineError(ErrorCode::UnsupportedSource, "action matrix is singular");
    CoverAction action{factor, source, std::move(matrix), from_matrix(*inv)};
    const auto report = verify_cover_action(action);
    if (!report.passed()) {
        const auto* f = report.first();
        throw EngineError(ErrorCode::UnsupportedSource,
                          "action is not a CDGA automorphism: " + f->check + " at " + f->where + ": " + f->detail);
    }
    return action;
}

VerificationReport verify_cover_action(const CoverAction& action)
{
    VerificationReport report;
    const auto& a = *action.source;
    const std::size_t n = a.dim();
    auto shaped = [n](const RationalMatrix& m) {
        if (m.size() != n) return false;
        return std::all_of(m.begin(), m.end(), [n](const auto& row) { return row.size() == n; });
    };
    if (!shaped(action.matrix) || !shaped(action.inverse)) {
        report.fail("shape", "matrix", "expected " + std::to_string(n) + "x" + std::to_string(n));
        return report;
    }
    if (action.apply(unit_vector(n, 0)) != unit_vector(n, 0)) {
        report.fail("unit", a.name(0), "image " + coords_string(action.apply(unit_vector(n, 0))));
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            if (sgn(action.matrix[i][k]) != 0 && a.degree(i) != a.degree(k)) {
                report.fail("grading", a.name(i) + " -> " + a.name(k), "coefficient " + to_string(action.matrix[i][k]));
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto ei = unit_vector(n, i);
        for (std::size_t j = 0; j < n; ++j) {
            const auto ej = unit_vector(n, j);
            const auto lhs = action.apply(a.multiply(ei, ej));
            const auto rhs = a.multiply(action.apply(ei), action.apply(ej));
            if (lhs != rhs) {
                report.fail("multiplicative", a.name(i) + "*" + a.name(j), coords_string(lhs) + " vs " + coords_string(rhs));
            }
        }
        const auto lhs = action.apply(a.apply_differential(ei));
        const auto rhs = a.apply_differential(action.apply(ei));
        if (lhs != rhs) report.fail("chain", a.name(i), coords_string(lhs) + " vs " + coords_string(rhs));
    }
    const auto product = multiply(to_matrix(action.matrix), to_matrix(action.inverse));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            if (product.at(i, k) != Rational(i == k ? 1 : 0)) {
                report.fail("inverse", std::to_string(i) + "," + std::to_string(k), to_string(product.at(i, k)));
            }
        }
    }
    return report;
}

CoverAction compose(const CoverAction& first, const CoverAction& second)
{
    if (first.source != second.source) throw EngineError(ErrorCode::MixedAlgebra, "cover actions on different models");
    CoverAction out;
    out.factor = first.factor * second.factor;
    out.source = first.source;
    out.matrix = from_matrix(multiply(to_matrix(second.matrix), to_matrix(first.matrix)));
    out.inverse = from_matrix(multiply(to_matrix(first.inverse), to_matrix(second.inverse)));
    return out;
}

VerificationReport check_sigma_compatibility(const SectionData& section_n, const SectionData& section_dn,
                                             const CoverAction& action, const TargetModel& target)
{
    VerificationReport report;
    const auto& v_algebra = *target.algebra();
    if (section_n.images.size() != v_algebra.size() || section_dn.images.size() != v_algebra.size()) {
        report.fail("sigma", "sections", "section length does not match the target generators");
        return report;
    }
    for (std::size_t v = 0; v < v_algebra.size(); ++v) {
        const auto lhs = action.apply(section_n.images[v]);
        if (lhs != section_dn.images[v]) {
            report.fail("sigma", v_algebra.generator(v).name,
                        coords_string(lhs) + " vs " + coords_string(section_dn.images[v]));
        }
    }
    return report;
}

VerificationReport verify_intertwiner(const HaefligerModel& model_n, const HaefligerModel& model_dn,
                                      const CoverAction& action)
{
    VerificationReport report;
    const auto& v_algebra = model_n.target->algebra();
    const auto h = lift_morphism(action.source, v_algebra, action.matrix);
    for (std::size_t v = 0; v < v_algebra->size(); ++v) {
        const auto lhs = h.apply(model_n.twisted.images[v]);
        const auto rhs = model_dn.twisted.apply(h.images[v]);
        if (!(lhs == rhs)) {
            report.fail("intertwiner", v_algebra->generator(v).name, to_string(lhs) + " vs " + to_string(rhs));
        }
    }
    return report;
}

// ---------------------------------------------------------------- model maps

CdgaMorphism induced_model_map(const HaefligerModel& domain, const HaefligerModel& codomain,
                               const RationalMatrix& outer, const TensorMorphism& inner)
{
    const auto& source = codomain.source;
    const auto& v_algebra = codomain.target->algebra();
    const auto eps = codomain.epsilon();
    const auto& w_domain = *domain.algebra();

    std::vector<Element> images(w_domain.size(), Element(codomain.algebra()));
    for (std::size_t v = 0; v < v_algebra->size(); ++v) {
        const auto expanded = eps.apply(inner.images.at(v));
        for (std::size_t k = 0; k < source->dim(); ++k) {
            const auto w = domain.generator_for(k, v);
            if (!w) continue;
            Element collected(codomain.algebra());
            for (std::size_t i = 0; i < source->dim(); ++i) {
                if (sgn(outer[i][k]) != 0) collected += expanded.part(i) * outer[i][k];
            }
            images[*w] = std::move(collected);
        }
    }
    CdgaMorphism phi{domain.cdga, codomain.cdga, std::move(images)};
    const auto report = verify_morphism(phi);
    if (!report.passed()) {
        const auto* f = report.first();
        throw EngineError(ErrorCode::ConstructionFault,
                          "induced model map fails " + f->check + " at " + f->where + ": " + f->detail);
    }
    return phi;
}

ModelIsoPair induced_model_maps(const HaefligerModel& model_n, const HaefligerModel& model_dn,
                                const CoverAction& action)
{
    const auto& v_algebra = model_n.target->algebra();
    const auto h = lift_morphism(action.source, v_algebra, action.matrix);
    const auto h_inverse = lift_morphism(action.source, v_algebra, action.inverse);
    auto backward = induced_model_map(model_dn, model_n, action.matrix, h_inverse);
    auto forward = induced_model_map(model_n, model_dn, action.inverse, h);
    return {std::move(forward), std::move(backward)};
}

VerificationReport verify_iso_pair(const CdgaMorphism& forward, const CdgaMorphism& backward)
{
    VerificationReport report;
    report.merge(verify_morphism(forward));
    report.merge(verify_morphism(backward));
    if (forward.target.algebra != backward.source.algebra || backward.target.algebra != forward.source.algebra) {
        report.fail("composable", "pair", "source and target algebras do not match");
        return report;
    }
    auto round_trip = [&report](const CdgaMorphism& first, const CdgaMorphism& second, const char* label) {
        const auto& algebra = first.source.algebra;
        for (std::size_t g = 0; g < algebra->size(); ++g) {
            const auto image = second.apply(first.images[g]);
            const auto expected = Element::generator(algebra, g);
            if (!(image == expected)) {
                report.fail("identity", std::string(label) + " at " + algebra->generator(g).name,
                            to_string(image) + " vs " + to_string(expected));
            }
        }
    };
    round_trip(forward, backward, "backward o forward");
    round_trip(backward, forward, "forward o backward");
    return report;
}

CdgaMorphism restrict_to_based(const CdgaMorphism& phi, const HaefligerModel& based_source,
                               const HaefligerModel& based_target)
{
    const auto& old_target = phi.target.algebra;
    const auto& new_target = based_target.algebra();
    Assignment q{new_target, {}};
    for (std::size_t w = 0; w < old_target->size(); ++w) {
        const auto kept = new_target->find(old_target->generator(w).name);
        q.images.push_back(kept ? Element::generator(new_target, *kept) : Element(new_target));
    }
    const auto& new_source = *based_source.algebra();
    std::vector<Element> images;
    for (std::size_t w = 0; w < new_source.size(); ++w) {
        const auto old = phi.source.algebra->index_of(new_source.generator(w).name);
        images.push_back(substitute(phi.images[old], q));
    }
    return {based_source.cdga, based_target.cdga, std::move(images)};
}

// ---------------------------------------------------------------- exact sequence

namespace {

// Generator space of a free CDGA under the linear part of its differential.
class LinearComplex {
public:
    explicit LinearComplex(const Cdga& cdga) : algebra_(cdga.algebra)
    {
        for (std::size_t g = 0; g < algebra_->size(); ++g) linear_.push_back(cdga.differential.image(g).linear_part());
    }

    [[nodiscard]] std::vector<std::size_t> in_degree(int k) const
    {
        std::vector<std::size_t> out;
        for (std::size_t g = 0; g < algebra_->size(); ++g) {
            if (algebra_->generator(g).degree == k) out.push_back(g);
        }
        return out;
    }

    [[nodiscard]] std::size_t local_index(int k, std::size_t g) const
    {
        const auto gens = in_degree(k);
        return static_cast<std::size_t>(std::find(gens.begin(), gens.end(), g) - gens.begin());
    }

    // Cocycles in degree k, in local coordinates.
    [[nodiscard]] std::vector<Vector> cocycles(int k) const
    {
        const auto here = in_degree(k);
        const auto next = in_degree(k + 1);
        if (here.empty()) return {};
        Matrix d(next.size(), here.size());
        for (std::size_t c = 0; c < here.size(); ++c) {
            for (std::size_t r = 0; r < next.size(); ++r) d.at(r, c) = linear_[here[c]][next[r]];
        }
        if (next.empty()) {
            std::vector<Vector> all;
            for (std::size_t c = 0; c < here.size(); ++c) all.push_back(unit_vector(here.size(), c));
            return all;
        }
        return kernel_basis(d);
    }

    // Coboundaries in degree k, in local coordinates.
    [[nodiscard]] std::vector<Vector> coboundaries(int k) const
    {
        const auto prev = in_degree(k - 1);
        const auto here = in_degree(k);
        std::vector<Vector> out;
        for (auto g : prev) {
            Vector v(here.size());
            for (std::size_t r = 0; r < here.size(); ++r) v[r] = linear_[g][here[r]];
            out.push_back(std::move(v));
        }
        return out;
    }

    [[nodiscard]] std::size_t cohomology(int k) const
    {
        return cocycles(k).size() - span_rank(in_degree(k).size(), coboundaries(k));
    }

    [[nodiscard]] const AlgebraPtr& algebra() const { return algebra_; }

private:
    AlgebraPtr algebra_;
    std::vector<Vector> linear_;
};

// Rank in degree k of the map on cohomology induced by a generator-to-generator
// chain map (`image[g]` empty = sent to zero).
std::size_t induced_rank(const LinearComplex& from, const LinearComplex& to,
                         const std::vector<std::optional<std::size_t>>& image, int k)
{
    const auto from_gens = from.in_degree(k);
    const std::size_t dim = to.in_degree(k).size();
    if (dim == 0) return 0;
    const auto boundaries = to.coboundaries(k);
    std::vector<Vector> spanned = boundaries;
    for (const auto& z : from.cocycles(k)) {
        Vector mapped(dim);
        for (std::size_t c = 0; c < from_gens.size(); ++c) {
            if (sgn(z[c]) == 0 || !image[from_gens[c]]) continue;
            mapped[to.local_index(k, *image[from_gens[c]])] += z[c];
        }
        spanned.push_back(std::move(mapped));
    }
    return span_rank(dim, spanned) - span_rank(dim, boundaries);
}

}  // namespace

LesReport les_report(const TargetPtr& target, const Component& n, const FiniteCdgaPtr& source, int window)
{
    if (window < 2) throw EngineError(ErrorCode::Usage, "exact-sequence window must be at least 2");
    const auto free = component_model(target, source, n);
    const auto based = based_model(free);

    LesReport report;
    report.component = n;
    report.window = window;
    report.free = linearized_homotopy(free.cdga, window);
    report.based = linearized_homotopy(based.cdga, window);
    report.target = linearized_homotopy(target->cdga, window);

    const LinearComplex v_complex(target->cdga);
    const LinearComplex w_complex(free.cdga);
    const LinearComplex b_complex(based.cdga);

    const auto unit = source->unique_of_degree(0);
    std::vector<std::optional<std::size_t>> evaluation(target->algebra()->size());
    for (std::size_t v = 0; v < evaluation.size(); ++v) {
        if (unit) evaluation[v] = free.generator_for(*unit, v);
    }
    std::vector<std::optional<std::size_t>> restriction(free.algebra()->size());
    for (std::size_t w = 0; w < restriction.size(); ++w) {
        restriction[w] = based.algebra()->find(free.algebra()->generator(w).name);
    }

    report.exact = true;
    std::size_t previous_based = 0;
    std::size_t previous_restriction = 0;
    for (int k = 1; k <= window; ++k) {
        LesDegree row;
        row.degree = k;
        row.target = v_complex.cohomology(k);
        row.free = w_complex.cohomology(k);
        row.based = b_complex.cohomology(k);
        row.rank_evaluation = induced_rank(v_complex, w_complex, evaluation, k);
        row.rank_restriction = induced_rank(w_complex, b_complex, restriction, k);

        bool composite_zero = true;
        for (std::size_t v = 0; v < evaluation.size(); ++v) {
            if (evaluation[v] && restriction[*evaluation[v]]) composite_zero = false;
        }
        row.middle_exact = composite_zero && row.rank_evaluation + row.rank_restriction == row.free;
        row.connecting_consistent = previous_based >= previous_restriction && row.target >= row.rank_evaluation &&
                                    previous_based - previous_restriction == row.target - row.rank_evaluation;
        report.exact = report.exact && row.middle_exact && row.connecting_consistent;
        previous_based = row.based;
        previous_restriction = row.rank_restriction;
        report.degrees.push_back(row);
    }
    return report;
}

// ---------------------------------------------------------------- certificates

bool StabilityCertificate::valid() const
{
    return sigma.passed() && intertwiner.passed() && forward_chain.passed() && backward_chain.passed() &&
           iso.passed() && based_iso.passed() && free_n == free_dn && based_tables_agree && les_n.exact &&
           les_dn.exact;
}

StabilityCertificate stability_certificate(const TargetPtr& target, const FiniteCdgaPtr& source, const Component& n,
                                           long d, int window, std::optional<long> kn, std::optional<long> kdn)
{
    const auto action = cover_action(source, d);
    Component scaled;
    for (long ni : n) scaled.push_back(ni * d);
    const auto model_n = component_model(target, source, n);
    const auto model_dn = component_model(target, source, scaled);

    StabilityCertificate cert{.free_iso = induced_model_maps(model_n, model_dn, action)};
    cert.component = n;
    cert.scaled = std::move(scaled);
    cert.factor = d;
    cert.window = window;
    cert.degenerate = is_zero_component(n);

    const auto section_n = SectionData::from_component(*target, *source, n);
    const auto section_dn = SectionData::from_component(*target, *source, cert.scaled);
    cert.sigma = check_sigma_compatibility(section_n, section_dn, action, *target);
    cert.intertwiner = verify_intertwiner(model_n, model_dn, action);
    cert.forward_chain = verify_morphism(cert.free_iso.forward);
    cert.backward_chain = verify_morphism(cert.free_iso.backward);
    cert.iso = verify_iso_pair(cert.free_iso.forward, cert.free_iso.backward);

    const auto based_n = based_model(model_n);
    const auto based_dn = based_model(model_dn);
    cert.based_iso = verify_iso_pair(restrict_to_based(cert.free_iso.forward, based_n, based_dn),
                                     restrict_to_based(cert.free_iso.backward, based_dn, based_n));

    cert.free_n = linearized_homotopy(model_n.cdga, window);
    cert.free_dn = linearized_homotopy(model_dn.cdga, window);
    cert.based_n = linearized_homotopy(based_n.cdga, window);
    cert.based_dn = linearized_homotopy(based_dn.cdga, window);
    cert.target = linearized_homotopy(target->cdga, window);
    cert.les_n = les_report(target, n, source, window);
    cert.les_dn = les_report(target, cert.scaled, source, window);
    cert.based_tables_agree = cert.based_n == cert.based_dn;

    if (kn && kdn) cert.conditional = ConditionalBound{*kn, *kdn, std::min(*kn, *kdn)};
    return cert;
}

// ---------------------------------------------------------------- classification

namespace {

long gcd_of(const Component& n)
{
    long g = 0;
    for (long ni : n) g = std::gcd(g, ni);
    return g;
}

// Primitive direction with its first nonzero entry positive.
Component primitive(const Component& n)
{
    const long g = gcd_of(n);
    Component p = n;
    for (auto& pi : p) pi /= g;
    const auto first = std::find_if(p.begin(), p.end(), [](long pi) { return pi != 0; });
    if (first != p.end() && *first < 0) {
        for (auto& pi : p) pi = -pi;
    }
    return p;
}

long scale_along(const Component& n, const Component& p)
{
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (p[i] != 0) return n[i] / p[i];
    }
    return 0;
}

// Isomorphism W_a -> W_b through the common divisor of two components on one ray.
bool bridged(const TargetPtr& target, const FiniteCdgaPtr& source, const Component& a, const Component& b)
{
    const auto p = primitive(a);
    if (primitive(b) != p) return false;
    const long s = scale_along(a, p);
    const long t = scale_along(b, p);
    const long q = std::gcd(s, t);
    Component common = p;
    for (auto& c : common) c *= q;

    const auto model_c = component_model(target, source, common);
    const auto model_a = component_model(target, source, a);
    const auto model_b = component_model(target, source, b);
    const auto to_a = induced_model_maps(model_c, model_a, cover_action(source, s / q));
    const auto to_b = induced_model_maps(model_c, model_b, cover_action(source, t / q));
    const auto forward = compose(to_b.forward, to_a.backward);
    const auto backward = compose(to_a.forward, to_b.backward);
    return verify_iso_pair(forward, backward).passed();
}

struct DisjointSets {
    std::vector<std::size_t> parent;
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
    std::size_t find(std::size_t i)
    {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    }
    void join(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

Classification classify_components(const TargetPtr& target, const FiniteCdgaPtr& source,
                                   const std::vector<Component>& components, int window)
{
    std::vector<HomotopyTable> tables;
    std::vector<std::vector<std::size_t>> cohomologies;
    for (const auto& n : components) {
        const auto model = component_model(target, source, n);
        tables.push_back(linearized_homotopy(model.cdga, window));
        std::vector<std::size_t> dims;
        for (int k = 1; k <= window; ++k) dims.push_back(cohomology(model.cdga, k).dimension);
        cohomologies.push_back(std::move(dims));
    }

    DisjointSets sets(components.size());
    for (std::size_t i = 0; i < components.size(); ++i) {
        for (std::size_t j = i + 1; j < components.size(); ++j) {
            if (sets.find(i) == sets.find(j) || !(tables[i] == tables[j]) || cohomologies[i] != cohomologies[j]) {
                continue;
            }
            if (components[i] == components[j] || bridged(target, source, components[i], components[j])) {
                sets.join(i, j);
            }
        }
    }

    Classification out;
    std::vector<std::optional<std::size_t>> cell_of(components.size());
    for (std::size_t i = 0; i < components.size(); ++i) {
        const auto root = sets.find(i);
        if (!cell_of[root]) {
            cell_of[root] = out.cells.size();
            out.cells.push_back({{}, tables[i], cohomologies[i]});
        }
        out.cells[*cell_of[root]].members.push_back(components[i]);
    }
    out.distinguished = true;
    for (std::size_t a = 0; a < out.cells.size(); ++a) {
        for (std::size_t b = a + 1; b < out.cells.size(); ++b) {
            if (out.cells[a].table == out.cells[b].table && out.cells[a].cohomology == out.cells[b].cohomology) {
                out.distinguished = false;
            }
        }
    }
    if (target->rank() == 1) out.two_type_bound = out.cells.size() <= 2;
    return out;
}

}  // namespace mapstab
