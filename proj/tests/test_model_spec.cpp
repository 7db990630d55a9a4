#include "mapstab/model_spec.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace mapstab;

namespace {

std::string read_data(const std::string& name)
{
    std::ifstream in(std::string(MAPSTAB_TEST_DATA) + "/" + name);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

ErrorCode code_of(const std::string& text)
{
    try {
        (void)parse_model_spec(text);
    } catch (const EngineError& e) {
        return e.code();
    }
    FAIL("expected a refusal");
    return ErrorCode::Usage;
}

std::string message_of(const std::string& text)
{
    try {
        (void)parse_model_spec(text);
    } catch (const EngineError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("the projective-space spec files parse")
{
    const char* files[] = {"sphere.json", "cp2.json", "cp3.json"};
    for (int m = 1; m <= 3; ++m) {
        const auto spec = parse_model_spec(read_data(files[m - 1]));
        REQUIRE(spec.generators.size() == 2);
        CHECK(spec.degree2_basis == std::vector<std::string>{"x"});
        CHECK(max_generator_degree(spec) == 2 * m + 1);
        CHECK(default_window(spec) == 4 * m + 4);
        const auto compiled = compile(spec);
        CHECK(compiled.target->rank() == 1);
        CHECK(compiled.source->dim() == 2);
        const auto& alg = compiled.target->algebra();
        CHECK(compiled.target->cdga.differential.image(alg->index_of("y")) ==
              power(Element::generator(alg, "x"), static_cast<unsigned>(m + 1)));
    }
}

TEST_CASE("echo is a fixed point")
{
    for (const char* file : {"sphere.json", "cp2.json", "cp3.json"}) {
        const auto spec = parse_model_spec(read_data(file));
        const auto echo = serialize_model_spec(spec);
        const auto again = parse_model_spec(echo);
        CHECK(again == spec);
        CHECK(serialize_model_spec(again) == echo);
    }
}

TEST_CASE("an empty differential is the zero differential")
{
    const auto spec = parse_model_spec(R"({"name": "K", "generators": [{"name": "x", "degree": 2}]})");
    CHECK(spec.differential.empty());
    const auto compiled = compile(spec);
    CHECK(compiled.target->cdga.differential.image(0).is_zero());
    CHECK(spec.degree2_basis == std::vector<std::string>{"x"});
}

TEST_CASE("invalid targets are refused")
{
    // degree-consistent linear term
    CHECK(code_of(R"({"name": "L", "generators": [{"name": "x", "degree": 3}, {"name": "y", "degree": 2}],
                      "differential": {"y": "x"}})") == ErrorCode::InvalidTarget);
    CHECK(code_of(R"({"name": "D", "generators": [{"name": "x", "degree": 2}, {"name": "y", "degree": 3}],
                      "differential": {"y": "x^3"}})") == ErrorCode::DegreeMismatch);
    CHECK(code_of(R"({"name": "N", "generators": [{"name": "x", "degree": 2}, {"name": "y", "degree": 3},
                      {"name": "z", "degree": 4}], "differential": {"y": "x^2", "z": "x*y"}})") ==
          ErrorCode::NotADifferential);
    CHECK(code_of(R"({"name": "E", "generators": [{"name": "u", "degree": 1}]})") == ErrorCode::Parse);
}

TEST_CASE("parse errors carry a line and column")
{
    const std::string text = "{\n  \"name\": \"S2\",\n  \"generators\": [{\"name\": \"x\", \"degree\": 2}],\n"
                             "  \"differential\": {\"x\": \"x**2\"}\n}\n";
    CHECK(code_of(text) == ErrorCode::Parse);
    CHECK(message_of(text).find("line 4, column") != std::string::npos);

    CHECK(code_of("{\"name\": \"S2\", \"bogus\": 1, \"generators\": []}") == ErrorCode::Parse);
    CHECK(code_of("{ not json") == ErrorCode::Parse);
}

TEST_CASE("expression parsing")
{
    auto alg = make_algebra({{"x", 2}, {"y", 3}}, 12);
    const auto x = Element::generator(alg, "x");
    const auto y = Element::generator(alg, "y");
    CHECK(parse_expression(alg, "x^{3}") == x * x * x);
    CHECK(parse_expression(alg, "(x + 1/2)^2") == x * x + x + Element::constant(alg, Rational(1, 4)));
    CHECK(parse_expression(alg, "-2*x*y") == x * y * Rational(-2));
    CHECK(parse_expression(alg, "y*y").is_zero());
    for (const char* bad : {"x y", "x^", "z", "x^999", "(x", "3/0"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_expression(alg, bad), EngineError);
    }
}

TEST_CASE("window checks")
{
    const auto spec = parse_model_spec(R"({"name": "S2", "generators": [{"name": "x", "degree": 2},
        {"name": "y", "degree": 3}], "differential": {"y": "x^2"}, "completeThrough": 3})");
    const auto compiled = compile(spec);
    CHECK_THROWS_AS(check_window(spec, compiled, 0), EngineError);
    try {
        check_window(spec, compiled, 4);
        FAIL("expected a refusal");
    } catch (const EngineError& e) {
        CHECK(e.code() == ErrorCode::WindowExceeded);
    }
    const auto open = parse_model_spec(read_data("sphere.json"));
    CHECK_NOTHROW(check_window(open, compile(open), 20));
}

TEST_CASE("an explicit source model")
{
    const auto spec = parse_model_spec(R"({"name": "S2", "generators": [{"name": "x", "degree": 2},
        {"name": "y", "degree": 3}], "differential": {"y": "x^2"},
        "sourceModel": {"basis": [{"name": "a", "degree": 2}]}})");
    REQUIRE(spec.source);
    const auto compiled = compile(spec);
    CHECK(is_sphere2_like(*compiled.source));
    CHECK(parse_model_spec(serialize_model_spec(spec)) == spec);
}
