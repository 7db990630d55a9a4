#include "mapstab/haefliger.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace mapstab;

namespace {

HaefligerModel full_model(int m, long n)
{
    const auto target = projective_space_target(m, 4 * m + 6);
    const auto source = sphere2_model();
    const auto section = SectionData::from_component(*target, *source, {n});
    return solve_delta(twist(*target, section, source), source, target, section);
}

/// sum c X^p xbar^q over an oracle expansion, in the given model algebra.
Element from_expansion(const AlgebraPtr& alg, const std::map<std::pair<int, int>, long>& terms)
{
    const auto X = Element::generator(alg, "x[1]");
    const auto xbar = Element::generator(alg, "x[a]");
    Element out(alg);
    for (const auto& [e, c] : terms) {
        out += power(X, static_cast<unsigned>(e.first)) * power(xbar, static_cast<unsigned>(e.second)) * Rational(c);
    }
    return out;
}

HomotopyTable table(int window, std::initializer_list<std::pair<int, std::size_t>> entries)
{
    HomotopyTable t(window);
    for (const auto& [k, v] : entries) t.set(k, v);
    return t;
}

}  // namespace

TEST_CASE("twisted differential on the S^2 target")
{
    const auto target = projective_space_target(1, 10);
    const auto source = sphere2_model();
    for (long k : {-2L, 0L, 1L, 3L}) {
        const auto section = SectionData::from_component(*target, *source, {k});
        CHECK(check_section(section, *target, source).passed());
        const auto d = twist(*target, section, source);
        const auto& alg = target->algebra();
        const auto x = Element::generator(alg, "x");
        // d'y = x^2 + 2k a x
        const auto expected = TensorElement::pure(source, 0, x * x) + TensorElement::pure(source, 1, x * Rational(2 * k));
        CHECK(d.images[alg->index_of("y")] == expected);
        CHECK(d.images[alg->index_of("x")].is_zero());
    }
}

TEST_CASE("full delta matches the hand expansion of (X + a xbar + k a)^(m+1)")
{
    for (int m = 1; m <= 3; ++m) {
        for (long n = -2; n <= 3; ++n) {
            CAPTURE(m);
            CAPTURE(n);
            const auto model = full_model(m, n);
            const auto& alg = model.algebra();
            const auto expansion = oracle::expand_power(m, n);
            const auto& delta = model.cdga.differential;
            CHECK(delta.image(alg->index_of("y[1]")) == from_expansion(alg, expansion.unit_part));
            CHECK(delta.image(alg->index_of("y[a]")) == from_expansion(alg, expansion.a_part));
            CHECK(delta.image(alg->index_of("x[1]")).is_zero());
            CHECK(delta.image(alg->index_of("x[a]")).is_zero());
            CHECK(check_square_zero(delta).passed());
            CHECK(verify_epsilon_chain_map(model).passed());
        }
    }
}

TEST_CASE("generator degrees of the full model")
{
    const auto model = full_model(1, 1);
    const auto& alg = *model.algebra();
    CHECK(alg.generator(alg.index_of("x[1]")).degree == 2);
    CHECK(alg.generator(alg.index_of("x[a]")).degree == 0);
    CHECK(alg.generator(alg.index_of("y[1]")).degree == 3);
    CHECK(alg.generator(alg.index_of("y[a]")).degree == 1);
    CHECK(model.generator_for(1, 0).has_value());
}

TEST_CASE("localization of the S^2 components")
{
    const auto target = projective_space_target(1, 10);
    const auto source = sphere2_model();
    for (long k = -2; k <= 3; ++k) {
        CAPTURE(k);
        const auto model = component_model(target, source, {k});
        const auto& alg = model.algebra();
        REQUIRE(alg->size() == 3);
        const auto X = Element::generator(alg, "x[1]");
        CHECK(model.cdga.differential.image(alg->index_of("y[1]")) == X * X);
        CHECK(model.cdga.differential.image(alg->index_of("y[a]")) == X * Rational(2 * k));
        CHECK(verify_epsilon_chain_map(model).passed());
        const auto expected = k == 0 ? table(3, {{1, 1}, {2, 1}, {3, 1}}) : table(3, {{3, 1}});
        CHECK(linearized_homotopy(model.cdga, 3) == expected);

        const auto based = component_model(target, source, {k}, true);
        CHECK(based.algebra()->size() == 1);
        CHECK(linearized_homotopy(based.cdga, 3) == table(3, {{1, 1}}));
        CHECK(verify_epsilon_chain_map(based).passed());
    }
}

TEST_CASE("component 0 of maps into CP^2")
{
    const auto target = projective_space_target(2, 14);
    const auto model = component_model(target, sphere2_model(), {0});
    CHECK(linearized_homotopy(model.cdga, 6) == table(6, {{2, 1}, {3, 1}, {5, 1}}));
}

TEST_CASE("property: localized tables agree with contractible-pair minimalization")
{
    for (int m = 1; m <= 3; ++m) {
        const int window = 2 * m + 2;
        const auto target = projective_space_target(m, 4 * m + 6);
        for (long n = -2; n <= 3; ++n) {
            for (bool based : {false, true}) {
                const auto model = component_model(target, sphere2_model(), {n}, based);
                const auto table = linearized_homotopy(model.cdga, window);
                const auto counts = oracle::minimal_generator_counts(model.cdga, window);
                for (int k = 1; k <= window; ++k) CHECK(table.at(k) == counts[static_cast<std::size_t>(k - 1)]);
            }
        }
    }
}

TEST_CASE("based tables do not depend on the component")
{
    for (int m = 1; m <= 3; ++m) {
        const int window = 2 * m + 2;
        const auto target = projective_space_target(m, 4 * m + 6);
        const auto reference = linearized_homotopy(component_model(target, sphere2_model(), {0}, true).cdga, window);
        for (long n : {-2L, 1L, 3L}) {
            CHECK(linearized_homotopy(component_model(target, sphere2_model(), {n}, true).cdga, window) == reference);
        }
    }
}

TEST_CASE("a corrupted delta fails the epsilon check")
{
    const long k = 2;
    auto model = component_model(projective_space_target(1, 10), sphere2_model(), {k});
    const auto& alg = model.algebra();
    auto images = model.cdga.differential.images();
    images[alg->index_of("y[a]")] = Element::generator(alg, "x[1]") * Rational(3 * k);
    model.cdga = Cdga(alg, unchecked_derivation(alg, images));
    const auto report = verify_epsilon_chain_map(model);
    REQUIRE_FALSE(report.passed());
    CHECK(report.first()->check == "epsilon");
    CHECK(report.first()->where == "y");
}

TEST_CASE("sections are checked")
{
    const auto target = projective_space_target(1, 10);
    const auto source = sphere2_model();
    try {
        (void)SectionData::from_component(*target, *source, {1, 2});
        FAIL("expected a refusal");
    } catch (const EngineError& e) {
        CHECK(e.code() == ErrorCode::InvalidSection);
    }

    auto section = SectionData::from_component(*target, *source, {1});
    section.images[target->algebra()->index_of("y")] = {0, 1};
    const auto report = check_section(section, *target, source);
    REQUIRE_FALSE(report.passed());
    CHECK(report.first()->check == "degree");
    try {
        (void)twist(*target, section, source);
        FAIL("expected a refusal");
    } catch (const EngineError& e) {
        CHECK(e.code() == ErrorCode::InvalidSection);
    }
}

TEST_CASE("based model needs a localized model")
{
    try {
        (void)based_model(full_model(1, 1));
        FAIL("expected a refusal");
    } catch (const EngineError& e) {
        CHECK(e.code() == ErrorCode::NotLocalized);
    }
}

TEST_CASE("target validation")
{
    auto alg = make_algebra({{"x", 3}, {"y", 2}}, 10);
    const auto x = Element::generator(alg, "x");
    std::vector<Element> images(alg->size(), Element(alg));
    images[alg->index_of("y")] = x;
    try {
        (void)make_target(Cdga(alg, extend_derivation(alg, images)), {alg->index_of("y")});
        FAIL("expected a refusal");
    } catch (const EngineError& e) {
        CHECK(e.code() == ErrorCode::InvalidTarget);
    }
    auto low = make_algebra({{"u", 1}}, 6);
    CHECK_THROWS_AS(make_target(Cdga(low, zero_differential(low)), {}), EngineError);
}
