#include "mapstab/graded_algebra.hpp"
#include "mapstab/model_spec.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace mapstab;

namespace {

AlgebraPtr xy_algebra()
{
    return make_algebra({{"x", 2}, {"y", 3}}, 12);
}

}  // namespace

TEST_CASE("odd generator squares to zero")
{
    auto alg = xy_algebra();
    const auto y = Element::generator(alg, "y");
    CHECK((y * y).is_zero());
}

TEST_CASE("even generator commutes with odd")
{
    auto alg = xy_algebra();
    const auto x = Element::generator(alg, "x");
    const auto y = Element::generator(alg, "y");
    CHECK(x * y == y * x);
    CHECK(to_string(x * y) == "x*y");
}

TEST_CASE("two odd generators anticommute")
{
    auto alg = make_algebra({{"y1", 3}, {"y2", 3}}, 12);
    const auto y1 = Element::generator(alg, "y1");
    const auto y2 = Element::generator(alg, "y2");
    CHECK(y1 * y2 == -(y2 * y1));
    CHECK_FALSE((y1 * y2).is_zero());
}

TEST_CASE("canonical order sorts by degree then insertion")
{
    auto alg = make_algebra({{"b", 5}, {"a", 2}, {"c", 2}}, 10);
    CHECK(alg->generator(0).name == "a");
    CHECK(alg->generator(1).name == "c");
    CHECK(alg->generator(2).name == "b");
    CHECK_THROWS_AS(make_algebra({{"a", 2}, {"a", 3}}, 5), EngineError);
}

TEST_CASE("monomial bases of small degrees")
{
    auto alg = xy_algebra();
    const auto b4 = monomial_basis(*alg, 4);
    REQUIRE(b4.size() == 1);
    CHECK(to_string(*alg, b4[0]) == "x^2");
    const auto b5 = monomial_basis(*alg, 5);
    REQUIRE(b5.size() == 1);
    CHECK(to_string(*alg, b5[0]) == "x*y");
    const auto b0 = monomial_basis(*alg, 0);
    REQUIRE(b0.size() == 1);
    CHECK(b0[0].is_unit());
    CHECK(monomial_basis(*alg, 1).empty());
}

TEST_CASE("monomial basis refuses degree-0 generators and degrees past the bound")
{
    auto alg = make_algebra({{"u", 0}, {"x", 2}}, 6);
    try {
        (void)monomial_basis(*alg, 2);
        FAIL("expected a refusal");
    } catch (const EngineError& e) {
        CHECK(e.code() == ErrorCode::InfiniteBasis);
    }
    try {
        (void)monomial_basis(*xy_algebra(), 13);
        FAIL("expected a refusal");
    } catch (const EngineError& e) {
        CHECK(e.code() == ErrorCode::WindowExceeded);
    }
}

TEST_CASE("substitution")
{
    auto alg = make_algebra({{"k", 0}, {"a", 2}, {"x", 2}, {"y", 3}}, 10);
    const auto k = Element::generator(alg, "k");
    const auto a = Element::generator(alg, "a");
    const auto x = Element::generator(alg, "x");
    const auto y = Element::generator(alg, "y");

    SUBCASE("binomial expansion")
    {
        auto shift = identity_assignment(alg);
        shift.images[alg->index_of("x")] = x - k * a;
        const auto expected = x * x - Rational(2) * k * a * x + k * k * a * a;
        CHECK(substitute(x * x, shift) == expected);
    }
    SUBCASE("identity")
    {
        CHECK(substitute(y, identity_assignment(alg)) == y);
    }
    SUBCASE("zero image annihilates")
    {
        std::map<std::size_t, Element> kill{{alg->index_of("x"), Element(alg)}};
        CHECK(substitute(x * y, kill).is_zero());
    }
    SUBCASE("degree-mismatched image is rejected")
    {
        auto bad = identity_assignment(alg);
        bad.images[alg->index_of("x")] = y;
        try {
            (void)substitute(x, bad);
            FAIL("expected a refusal");
        } catch (const EngineError& e) {
            CHECK(e.code() == ErrorCode::DegreeMismatch);
        }
    }
}

TEST_CASE("mixed-algebra operands are rejected")
{
    auto a1 = xy_algebra();
    auto a2 = xy_algebra();
    try {
        (void)(Element::generator(a1, "x") * Element::generator(a2, "x"));
        FAIL("expected a refusal");
    } catch (const EngineError& e) {
        CHECK(e.code() == ErrorCode::MixedAlgebra);
    }
}

TEST_CASE("canonical form drops zero coefficients and reports degrees")
{
    auto alg = xy_algebra();
    const auto x = Element::generator(alg, "x");
    const auto y = Element::generator(alg, "y");
    CHECK((x - x).is_zero());
    CHECK((x - x) == Element(alg));
    CHECK(x.degree_info().kind == DegreeInfo::Kind::Homogeneous);
    CHECK((x + y).degree_info().kind == DegreeInfo::Kind::Mixed);
    CHECK(Element(alg).degree_info().kind == DegreeInfo::Kind::Zero);
    CHECK(to_string(x * Rational(-3, 4)) == "-3/4*x");
}

TEST_CASE("property: Koszul commutativity on random homogeneous elements")
{
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> deg(0, 7);
    for (int trial = 0; trial < 400; ++trial) {
        auto alg = oracle::random_algebra(rng, 1, 5, 16);
        const int du = deg(rng);
        const int dv = deg(rng);
        const auto u = oracle::random_element(rng, alg, du);
        const auto v = oracle::random_element(rng, alg, dv);
        const Rational sign = ((du * dv) & 1) != 0 ? -1 : 1;
        REQUIRE(u * v == sign * (v * u));
    }
}

TEST_CASE("property: associativity on random monomial triples")
{
    std::mt19937 rng(12);
    std::uniform_int_distribution<int> deg(0, 5);
    for (int trial = 0; trial < 400; ++trial) {
        auto alg = oracle::random_algebra(rng, 1, 4, 16);
        const auto a = oracle::random_element(rng, alg, deg(rng), 1);
        const auto b = oracle::random_element(rng, alg, deg(rng), 1);
        const auto c = oracle::random_element(rng, alg, deg(rng), 1);
        REQUIRE((a * b) * c == a * (b * c));
    }
}

TEST_CASE("property: basis sizes match the generating function")
{
    std::mt19937 rng(13);
    for (int trial = 0; trial < 60; ++trial) {
        auto alg = oracle::random_algebra(rng, 1, 5, 14);
        for (int n = 0; n <= 14; ++n) {
            const auto basis = monomial_basis(*alg, n);
            REQUIRE(basis.size() == monomial_count(*alg, n));
            for (std::size_t i = 1; i < basis.size(); ++i) REQUIRE(basis[i - 1] < basis[i]);
        }
    }
}

TEST_CASE("property: printed form is a fixed point of print-parse")
{
    std::mt19937 rng(14);
    std::uniform_int_distribution<int> deg(0, 8);
    for (int trial = 0; trial < 300; ++trial) {
        auto alg = oracle::random_algebra(rng, 1, 5, 16);
        const auto u = oracle::random_element(rng, alg, deg(rng), 4);
        const auto printed = to_string(u);
        const auto reparsed = parse_expression(alg, printed);
        REQUIRE(reparsed == u);
        REQUIRE(to_string(reparsed) == printed);
    }
}
