#include "mapstab/stability.hpp"

#include <doctest.h>

using namespace mapstab;

namespace {

TargetPtr sphere_target()
{
    return projective_space_target(1, 10);
}

HomotopyTable table(int window, std::initializer_list<std::pair<int, std::size_t>> entries)
{
    HomotopyTable t(window);
    for (const auto& [k, v] : entries) t.set(k, v);
    return t;
}

Element gen(const HaefligerModel& model, const char* name)
{
    return Element::generator(model.algebra(), name);
}

std::vector<std::vector<Component>> partition(const Classification& c)
{
    std::vector<std::vector<Component>> out;
    for (const auto& cell : c.cells) out.push_back(cell.members);
    return out;
}

}  // namespace

TEST_CASE("cover action on the S^2 model")
{
    const auto source = sphere2_model();
    const auto g = cover_action(source, 3);
    CHECK(g.apply({1, 0}) == std::vector<Rational>{1, 0});
    CHECK(g.apply({0, 2}) == std::vector<Rational>{0, 6});
    CHECK(verify_cover_action(g).passed());
    CHECK(verify_cover_action(cover_action(source, -2)).passed());
    try {
        (void)cover_action(source, 0);
        FAIL("expected a refusal");
    } catch (const EngineError& e) {
        CHECK(e.code() == ErrorCode::Usage);
    }
    const auto product = compose(cover_action(source, 2), cover_action(source, 5));
    CHECK(product.matrix == cover_action(source, 10).matrix);
    CHECK(product.inverse == cover_action(source, 10).inverse);
}

TEST_CASE("explicit cover actions are checked")
{
    const auto source = sphere2_model();
    CHECK_THROWS_AS(explicit_cover_action(source, {{1, 0}, {0, 0}}, 0), EngineError);
    CHECK_THROWS_AS(explicit_cover_action(source, {{2, 0}, {0, 1}}, 1), EngineError);
    const auto g = explicit_cover_action(source, {{1, 0}, {0, 4}}, 4);
    CHECK(verify_cover_action(g).passed());
}

TEST_CASE("sigma compatibility")
{
    const auto target = sphere_target();
    const auto source = sphere2_model();
    const auto s1 = SectionData::from_component(*target, *source, {1});
    const auto s2 = SectionData::from_component(*target, *source, {2});
    const auto s3 = SectionData::from_component(*target, *source, {3});
    CHECK(check_sigma_compatibility(s1, s2, cover_action(source, 2), *target).passed());
    const auto bad = check_sigma_compatibility(s1, s3, cover_action(source, 2), *target);
    REQUIRE_FALSE(bad.passed());
    CHECK(bad.first()->check == "sigma");
}

TEST_CASE("induced maps on the S^2 component models")
{
    const auto target = sphere_target();
    const auto source = sphere2_model();
    const auto m1 = component_model(target, source, {1});
    const auto m2 = component_model(target, source, {2});
    const auto action = cover_action(source, 2);
    CHECK(verify_intertwiner(m1, m2, action).passed());
    const auto pair = induced_model_maps(m1, m2, action);

    const auto& fa = *pair.forward.source.algebra;
    CHECK(pair.forward.images[fa.index_of("x[1]")] == gen(m2, "x[1]"));
    CHECK(pair.forward.images[fa.index_of("y[1]")] == gen(m2, "y[1]"));
    CHECK(pair.forward.images[fa.index_of("y[a]")] == gen(m2, "y[a]") * Rational(1, 2));
    const auto& ba = *pair.backward.source.algebra;
    CHECK(pair.backward.images[ba.index_of("y[a]")] == gen(m1, "y[a]") * Rational(2));

    CHECK(verify_morphism(pair.forward).passed());
    CHECK(verify_morphism(pair.backward).passed());
    CHECK(verify_iso_pair(pair.forward, pair.backward).passed());

    // the same map twice is not an inverse pair
    const auto twice = verify_iso_pair(pair.forward, pair.forward);
    CHECK_FALSE(twice.passed());
    // identities on one model are
    CHECK(verify_iso_pair(identity_morphism(m1.cdga), identity_morphism(m1.cdga)).passed());
}

TEST_CASE("the hand map X -> dX, Y -> d^2 Y, ybar -> ybar is a chain map")
{
    const long k = 2;
    const long d = 3;
    const auto target = sphere_target();
    const auto mk = component_model(target, sphere2_model(), {k});
    const auto mdk = component_model(target, sphere2_model(), {d * k});
    const auto& alg = *mk.algebra();
    std::vector<Element> images(alg.size(), Element(mdk.algebra()));
    images[alg.index_of("x[1]")] = gen(mdk, "x[1]") * Rational(d);
    images[alg.index_of("y[1]")] = gen(mdk, "y[1]") * Rational(d * d);
    images[alg.index_of("y[a]")] = gen(mdk, "y[a]");
    CHECK(verify_morphism({mk.cdga, mdk.cdga, images}).passed());
}

TEST_CASE("factor 1 gives identity maps")
{
    for (int m = 1; m <= 3; ++m) {
        const auto target = projective_space_target(m, 4 * m + 6);
        for (long k : {0L, 1L, -2L}) {
            const auto model = component_model(target, sphere2_model(), {k});
            const auto pair = induced_model_maps(model, model, cover_action(sphere2_model(), 1));
            CHECK(is_identity(pair.forward));
            CHECK(is_identity(pair.backward));
        }
    }
}

TEST_CASE("induced maps are functorial in the factor")
{
    const auto target = projective_space_target(2, 14);
    const auto source = sphere2_model();
    const auto m1 = component_model(target, source, {1});
    const auto m2 = component_model(target, source, {2});
    const auto m6 = component_model(target, source, {6});
    const auto p2 = induced_model_maps(m1, m2, cover_action(source, 2));
    const auto p3 = induced_model_maps(m2, m6, cover_action(source, 3));
    const auto p6 = induced_model_maps(m1, m6, cover_action(source, 6));
    CHECK(compose(p3.forward, p2.forward).images == p6.forward.images);
    CHECK(compose(p2.backward, p3.backward).images == p6.backward.images);
}

TEST_CASE("restriction to based models")
{
    const auto target = sphere_target();
    const auto source = sphere2_model();
    const auto m1 = component_model(target, source, {1});
    const auto m3 = component_model(target, source, {3});
    const auto pair = induced_model_maps(m1, m3, cover_action(source, 3));
    const auto b1 = based_model(m1);
    const auto b3 = based_model(m3);
    const auto forward = restrict_to_based(pair.forward, b1, b3);
    const auto backward = restrict_to_based(pair.backward, b3, b1);
    CHECK(verify_iso_pair(forward, backward).passed());
}

TEST_CASE("evaluation fibration bookkeeping")
{
    const auto source = sphere2_model();
    const auto s = les_report(sphere_target(), {2}, source, 3);
    CHECK(s.exact);
    CHECK(s.free == table(3, {{3, 1}}));
    CHECK(s.based == table(3, {{1, 1}}));
    CHECK(s.target == table(3, {{2, 1}, {3, 1}}));
    REQUIRE(s.degrees.size() == 3);
    CHECK(s.degrees[1].rank_evaluation == 0);
    CHECK(s.degrees[2].rank_evaluation == 1);

    const auto zero = les_report(sphere_target(), {0}, source, 3);
    CHECK(zero.exact);
    CHECK(zero.free == table(3, {{1, 1}, {2, 1}, {3, 1}}));

    const auto cp2 = les_report(projective_space_target(2, 14), {1}, source, 6);
    CHECK(cp2.exact);
    const auto cp2_scaled = les_report(projective_space_target(2, 14), {3}, source, 6);
    CHECK(cp2.based == cp2_scaled.based);

    try {
        (void)les_report(sphere_target(), {1}, source, 1);
        FAIL("expected a refusal");
    } catch (const EngineError& e) {
        CHECK(e.code() == ErrorCode::Usage);
    }
}

TEST_CASE("stability certificates")
{
    const auto source = sphere2_model();
    const auto cert = stability_certificate(sphere_target(), source, {1}, 2, 3);
    CHECK(cert.valid());
    CHECK(cert.scaled == Component{2});
    CHECK(cert.free_n == cert.free_dn);
    CHECK_FALSE(cert.degenerate);
    CHECK_FALSE(cert.conditional);

    const auto zero = stability_certificate(sphere_target(), source, {0}, 5, 3);
    CHECK(zero.valid());
    CHECK(zero.degenerate);

    const auto cond = stability_certificate(sphere_target(), source, {1}, 2, 3, 4L, 7L);
    REQUIRE(cond.conditional);
    CHECK(cond.conditional->min_dim == 4);
}

TEST_CASE("classification of components")
{
    const auto source = sphere2_model();
    std::vector<Component> range;
    for (long n = -2; n <= 3; ++n) range.push_back({n});

    const auto s = classify_components(sphere_target(), source, range, 4);
    REQUIRE(s.cells.size() == 2);
    CHECK(partition(s) == std::vector<std::vector<Component>>{{{-2}, {-1}, {1}, {2}, {3}}, {{0}}});
    CHECK(s.two_type_bound == std::optional<bool>(true));

    const auto cp3 = classify_components(projective_space_target(3, 18), source, {{0}, {1}, {2}, {4}}, 8);
    CHECK(partition(cp3) == std::vector<std::vector<Component>>{{{0}}, {{1}, {2}, {4}}});
    // equal homotopy tables; X^3 survives only in component 0
    CHECK(cp3.cells[0].table == cp3.cells[1].table);
    CHECK(cp3.cells[0].cohomology[5] == 1);
    CHECK(cp3.cells[1].cohomology[5] == 0);
    CHECK(cp3.distinguished);
    CHECK(s.distinguished);

    const auto cp2 = classify_components(projective_space_target(2, 14), source, {{1}, {2}, {3}}, 6);
    CHECK(cp2.cells.size() == 1);

    const auto single = classify_components(sphere_target(), source, {{5}}, 4);
    REQUIRE(single.cells.size() == 1);
    CHECK(single.cells[0].table == table(4, {{3, 1}}));
}
