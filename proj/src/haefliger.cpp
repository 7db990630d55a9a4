#include "mapstab/haefliger.hpp"

#include "mapstab/errors.hpp"

#include <algorithm>
#include <sstream>

namespace mapstab {

// ---------------------------------------------------------------- target

TargetPtr make_target(Cdga cdga, std::vector<std::size_t> degree2_basis)
{
    const auto& algebra = *cdga.algebra;
    for (const auto& g : algebra.generators()) {
        if (g.degree < 2) {
            throw EngineError(ErrorCode::InvalidTarget, "target generator '" + g.name + "' has degree " +
                                                            std::to_string(g.degree) +
                                                            "; a simply connected target needs degree >= 2");
        }
    }
    for (std::size_t i = 0; i < algebra.size(); ++i) {
        const auto linear = cdga.differential.image(i).linear_part();
        for (std::size_t j = 0; j < linear.size(); ++j) {
            if (sgn(linear[j]) != 0) {
                throw EngineError(ErrorCode::InvalidTarget, "d(" + algebra.generator(i).name + ") has linear term " +
                                                                algebra.generator(j).name +
                                                                "; the target model must be minimal");
            }
        }
    }
    std::vector<std::size_t> expected;
    for (std::size_t i = 0; i < algebra.size(); ++i) {
        if (algebra.generator(i).degree == 2) expected.push_back(i);
    }
    auto sorted = degree2_basis;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != expected || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw EngineError(ErrorCode::InvalidTarget, "degree2Basis must list every degree-2 generator exactly once");
    }
    return std::make_shared<const TargetModel>(TargetModel{std::move(cdga), std::move(degree2_basis)});
}

TargetPtr projective_space_target(int m, int max_degree)
{
    auto algebra = make_algebra({{"x", 2}, {"y", 2 * m + 1}}, max_degree);
    std::vector<Element> images{Element(algebra), power(Element::generator(algebra, "x"), static_cast<unsigned>(m + 1))};
    auto d = extend_derivation(algebra, std::move(images));
    return make_target(Cdga(algebra, std::move(d)), {algebra->index_of("x")});
}

std::string to_string(const Component& n)
{
    std::string out;
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(n[i]);
    }
    return out;
}

// ---------------------------------------------------------------- sections

SectionData SectionData::from_component(const TargetModel& target, const FiniteCdga& source, const Component& n)
{
    if (n.size() != target.rank()) {
        throw EngineError(ErrorCode::InvalidSection, "component has " + std::to_string(n.size()) +
                                                         " entries but the target has " +
                                                         std::to_string(target.rank()) + " degree-2 generators");
    }
    const auto a = source.unique_of_degree(2);
    if (!a) {
        throw EngineError(ErrorCode::UnsupportedSource,
                          "sections from a multi-degree need a source model with one-dimensional A^2");
    }
    SectionData section;
    section.component = n;
    section.images.assign(target.algebra()->size(), std::vector<Rational>(source.dim()));
    for (std::size_t r = 0; r < n.size(); ++r) section.images[target.degree2_basis[r]][*a] = Rational(n[r]);
    return section;
}

namespace {

AlgebraPtr empty_algebra()
{
    static const AlgebraPtr algebra = make_algebra({}, 0);
    return algebra;
}

TensorMorphism section_morphism(const SectionData& section, const TargetModel& target, const FiniteCdgaPtr& source)
{
    TensorMorphism sigma{source, target.algebra(), empty_algebra(), identity_on_model(*source), {}};
    for (const auto& coords : section.images) {
        sigma.images.push_back(TensorElement::from_coordinates(source, empty_algebra(), coords));
    }
    return sigma;
}

std::string show_coords(const FiniteCdga& source, const std::vector<Rational>& v)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (sgn(v[i]) == 0) continue;
        if (!out.empty()) out += " + ";
        out += to_string(v[i]) + "*" + source.name(i);
    }
    return out.empty() ? "0" : out;
}

}  // namespace

std::vector<Rational> evaluate_section(const SectionData& section, const TargetModel& target,
                                       const FiniteCdgaPtr& source, const Element& p)
{
    return section_morphism(section, target, source).apply(p).constant_coordinates();
}

VerificationReport check_section(const SectionData& section, const TargetModel& target, const FiniteCdgaPtr& model)
{
    const FiniteCdga& source = *model;
    VerificationReport report;
    const auto& algebra = *target.algebra();
    if (section.images.size() != algebra.size()) {
        report.fail("shape", "", "section must give one image per target generator");
        return report;
    }
    for (std::size_t v = 0; v < algebra.size(); ++v) {
        if (section.images[v].size() != source.dim()) {
            report.fail("shape", algebra.generator(v).name, "image has the wrong number of coordinates");
            return report;
        }
        for (std::size_t i = 0; i < source.dim(); ++i) {
            if (sgn(section.images[v][i]) != 0 && source.degree(i) != algebra.generator(v).degree) {
                report.fail("degree", algebra.generator(v).name,
                            "image has a component on " + source.name(i) + " of degree " +
                                std::to_string(source.degree(i)));
            }
        }
    }
    if (!report.passed()) return report;

    for (std::size_t v = 0; v < algebra.size(); ++v) {
        const auto lhs = evaluate_section(section, target, model, target.cdga.differential.image(v));
        const auto rhs = source.apply_differential(section.images[v]);
        if (lhs != rhs) {
            report.fail("chain", algebra.generator(v).name,
                        "sigma(d v) = " + show_coords(source, lhs) + " but d_A sigma(v) = " + show_coords(source, rhs));
        }
    }
    return report;
}

// ---------------------------------------------------------------- twist

TensorDerivation twist(const TargetModel& target, const SectionData& section, const FiniteCdgaPtr& source)
{
    const auto report = check_section(section, target, source);
    if (!report.passed()) {
        throw EngineError(ErrorCode::InvalidSection, "section rejected (" + report.first()->check + " at " +
                                                         report.first()->where + "): " + report.first()->detail);
    }
    const auto& algebra = target.algebra();
    TensorMorphism psi{source, algebra, algebra, identity_on_model(*source), {}};
    TensorMorphism psi_inverse = psi;
    for (std::size_t v = 0; v < algebra->size(); ++v) {
        const auto lifted = TensorElement::lift(source, Element::generator(algebra, v));
        const auto shift = TensorElement::from_coordinates(source, algebra, section.images[v]);
        psi.images.push_back(lifted - shift);
        psi_inverse.images.push_back(lifted + shift);
    }
    const auto untwisted = TensorDerivation::product(source, target.cdga.differential);
    TensorDerivation twisted{source, algebra, {}};
    for (std::size_t v = 0; v < algebra->size(); ++v) {
        twisted.images.push_back(psi_inverse.apply(untwisted.apply(psi.apply(Element::generator(algebra, v)))));
    }
    for (std::size_t v = 0; v < algebra->size(); ++v) {
        const auto dd = twisted.apply(twisted.images[v]);
        if (!dd.is_zero()) {
            throw EngineError(ErrorCode::SignConventionFault, "twisted differential squares to " + to_string(dd) +
                                                                  " on " + algebra->generator(v).name);
        }
    }
    return twisted;
}

// ---------------------------------------------------------------- model

std::optional<std::size_t> HaefligerModel::generator_for(std::size_t basis_index, std::size_t target_generator) const
{
    for (std::size_t w = 0; w < labels.size(); ++w) {
        if (labels[w].basis_index == basis_index && labels[w].target_generator == target_generator) return w;
    }
    return std::nullopt;
}

TensorMorphism HaefligerModel::epsilon() const
{
    const auto& v_algebra = target->algebra();
    TensorMorphism eps{source, v_algebra, algebra(), identity_on_model(*source), {}};
    for (std::size_t v = 0; v < v_algebra->size(); ++v) {
        TensorElement image(source, algebra());
        for (std::size_t i = 0; i < source->dim(); ++i) {
            if (auto w = generator_for(i, v)) image += TensorElement::pure(source, i, Element::generator(algebra(), *w));
        }
        eps.images.push_back(std::move(image));
    }
    return eps;
}

VerificationReport verify_epsilon_chain_map(const HaefligerModel& model)
{
    VerificationReport report;
    const auto eps = model.epsilon();
    TensorDerivation delta{model.source, model.algebra(), {}};
    for (const auto& image : model.cdga.differential.images()) {
        delta.images.push_back(TensorElement::lift(model.source, image));
    }
    const auto& v_algebra = model.target->algebra();
    for (std::size_t v = 0; v < v_algebra->size(); ++v) {
        const auto lhs = delta.apply(eps.images[v]);
        const auto rhs = eps.apply(model.twisted.images[v]);
        const auto residual = lhs - rhs;
        if (!residual.is_zero()) {
            report.fail("epsilon", v_algebra->generator(v).name, "residual " + to_string(residual));
        }
    }
    return report;
}

HaefligerModel solve_delta(const TensorDerivation& twisted, const FiniteCdgaPtr& source, const TargetPtr& target,
                           const SectionData& section)
{
    const auto& v_algebra = *target->algebra();
    std::vector<GeneratorSpec> specs;
    std::vector<DualLabel> insertion;
    for (std::size_t v = 0; v < v_algebra.size(); ++v) {
        for (std::size_t i = 0; i < source->dim(); ++i) {
            const auto& g = v_algebra.generator(v);
            specs.push_back({g.name + "[" + source->name(i) + "]", g.degree - source->degree(i)});
            insertion.push_back({i, v});
        }
    }
    auto w_algebra = make_algebra(specs, v_algebra.max_degree());
    std::vector<DualLabel> labels(w_algebra->size());
    for (std::size_t w = 0; w < w_algebra->size(); ++w) labels[w] = insertion[w_algebra->generator(w).id];

    HaefligerModel model{Cdga(w_algebra, zero_differential(w_algebra)), labels, source, target, section, twisted,
                         HaefligerModel::Stage::Full};
    const auto eps = model.epsilon();

    std::vector<Element> delta(w_algebra->size(), Element(w_algebra));
    for (std::size_t v = 0; v < v_algebra.size(); ++v) {
        // Coefficient of a_k in epsilon(d'v), minus the d_A(a_i) (x) w_{i,v} terms.
        const TensorElement rhs = eps.apply(twisted.images[v]);
        for (std::size_t k = 0; k < source->dim(); ++k) {
            Element value = rhs.part(k);
            for (std::size_t i = 0; i < source->dim(); ++i) {
                const auto& c = source->diff(i, k);
                if (sgn(c) != 0) value -= Element::generator(w_algebra, *model.generator_for(i, v)) * c;
            }
            if ((source->degree(k) & 1) != 0) value *= Rational(-1);
            delta[*model.generator_for(k, v)] = std::move(value);
        }
    }
    model.cdga = Cdga(w_algebra, unchecked_derivation(w_algebra, std::move(delta)));

    auto report = check_square_zero(model.cdga.differential);
    report.merge(verify_epsilon_chain_map(model));
    if (!report.passed()) {
        throw EngineError(ErrorCode::SignConventionFault, "solved Haefliger differential failed " +
                                                              report.first()->check + " at " + report.first()->where +
                                                              ": " + report.first()->detail);
    }
    return model;
}

// ---------------------------------------------------------------- quotients

namespace {

struct Quotient {
    HaefligerModel model;
    std::vector<std::pair<std::size_t, Element>> dropped;  // old generator, q(delta w)
};

Quotient quotient(const HaefligerModel& model, const std::vector<bool>& keep, HaefligerModel::Stage stage)
{
    const auto& old_algebra = model.algebra();
    std::vector<GeneratorSpec> specs;
    std::vector<DualLabel> labels;
    std::vector<std::size_t> new_index(old_algebra->size(), 0);
    for (std::size_t w = 0; w < old_algebra->size(); ++w) {
        if (!keep[w]) continue;
        new_index[w] = specs.size();
        specs.push_back({old_algebra->generator(w).name, old_algebra->generator(w).degree});
        labels.push_back(model.labels[w]);
    }
    auto algebra = make_algebra(specs, old_algebra->max_degree());
    Assignment q{algebra, {}};
    for (std::size_t w = 0; w < old_algebra->size(); ++w) {
        q.images.push_back(keep[w] ? Element::generator(algebra, new_index[w]) : Element(algebra));
    }
    Quotient out{model, {}};
    std::vector<Element> delta(algebra->size(), Element(algebra));
    for (std::size_t w = 0; w < old_algebra->size(); ++w) {
        Element image = substitute(model.cdga.differential.image(w), q);
        if (keep[w]) {
            delta[new_index[w]] = std::move(image);
        } else {
            out.dropped.emplace_back(w, std::move(image));
        }
    }
    out.model.cdga = Cdga(algebra, unchecked_derivation(algebra, std::move(delta)));
    out.model.labels = std::move(labels);
    out.model.stage = stage;
    return out;
}

}  // namespace

HaefligerModel localize_component(const HaefligerModel& model)
{
    if (model.stage != HaefligerModel::Stage::Full) return model;
    const auto& algebra = *model.algebra();
    std::vector<bool> keep(algebra.size());
    for (std::size_t w = 0; w < algebra.size(); ++w) keep[w] = algebra.generator(w).degree >= 1;
    auto q = quotient(model, keep, HaefligerModel::Stage::Localized);

    for (const auto& [w, image] : q.dropped) {
        if (!is_zero(image.constant_term())) {
            throw EngineError(ErrorCode::NotLocalized, "component not localizable at origin: delta(" +
                                                           algebra.generator(w).name + ") becomes the constant " +
                                                           to_string(image));
        }
        if (!image.is_zero()) {
            throw EngineError(ErrorCode::NotLocalized,
                              "degree-0 generator " + algebra.generator(w).name +
                                  " has a nontrivial delta-relation " + to_string(image) +
                                  "; cocycle quotients are not supported");
        }
    }
    const auto& local = *q.model.algebra();
    for (std::size_t w = 0; w < local.size(); ++w) {
        if (!is_zero(q.model.cdga.differential.image(w).constant_term())) {
            throw EngineError(ErrorCode::NotLocalized, "component not localizable at origin: delta(" +
                                                           local.generator(w).name + ") has a constant term");
        }
    }
    const auto report = check_square_zero(q.model.cdga.differential);
    if (!report.passed()) {
        throw EngineError(ErrorCode::NotLocalized, "localized delta is not a differential: " + report.first()->detail);
    }
    return std::move(q.model);
}

HaefligerModel based_model(const HaefligerModel& model)
{
    if (model.stage == HaefligerModel::Stage::Based) return model;
    if (model.stage != HaefligerModel::Stage::Localized) {
        throw EngineError(ErrorCode::NotLocalized, "based_model needs a localized component model");
    }
    if (!model.source->connected()) {
        throw EngineError(ErrorCode::UnsupportedSource, "based_model needs a source with one-dimensional degree 0");
    }
    const auto& algebra = *model.algebra();
    std::vector<bool> keep(algebra.size());
    for (std::size_t w = 0; w < algebra.size(); ++w) keep[w] = model.source->degree(model.labels[w].basis_index) > 0;
    auto q = quotient(model, keep, HaefligerModel::Stage::Based);
    for (const auto& [w, image] : q.dropped) {
        if (!image.is_zero()) {
            throw EngineError(ErrorCode::ConstructionFault, "unit-dual generator " + algebra.generator(w).name +
                                                                " does not span a differential ideal");
        }
    }
    const auto report = check_square_zero(q.model.cdga.differential);
    if (!report.passed()) {
        throw EngineError(ErrorCode::ConstructionFault, "based delta is not a differential: " + report.first()->detail);
    }
    return std::move(q.model);
}

HaefligerModel component_model(const TargetPtr& target, const FiniteCdgaPtr& source, const Component& n, bool based)
{
    const auto section = SectionData::from_component(*target, *source, n);
    const auto twisted = twist(*target, section, source);
    auto model = localize_component(solve_delta(twisted, source, target, section));
    return based ? based_model(model) : model;
}

}  // namespace mapstab
