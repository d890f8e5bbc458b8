#include "scarr/spec_file.hpp"

#include "scarr/expr_parser.hpp"

#include <doctest.h>

using namespace scarr;

namespace {

const char* kMinimal = R"(# minimal 1|1 manifold
MANIFOLD minimal
EVEN t
ODD tau
METRIC {
  (t,t) = 1
  (t,tau) = -tau
}
)";

} // namespace

TEST_CASE("parse_spec: minimal 1|1 with default structure fields") {
    ManifoldSpec spec = parse_spec(kMinimal);
    CHECK(spec.name == "minimal");
    CHECK(spec.chart.even_count() == 1);
    CHECK(spec.chart.odd_count() == 1);
    REQUIRE(spec.metric.has_value());
    REQUIRE(spec.Q.has_value());
    REQUIRE(spec.P.has_value());
    CHECK(*spec.Q == shander_Q(spec.chart));
    CHECK(*spec.P == shander_P(spec.chart));
    // Mirror entry filled by graded symmetry.
    CHECK(spec.metric->entry(1, 0) == spec.metric->entry(0, 1));
}

TEST_CASE("parse_spec: symmetry conflict is a parse error") {
    const char* text = R"(MANIFOLD bad
EVEN t
ODD tau
METRIC {
  (t,tau) = tau
  (tau,t) = -tau
}
)";
    CHECK_THROWS_AS(parse_spec(text), SymmetryConflict);

    const char* dup = R"(MANIFOLD bad
EVEN t
ODD tau
METRIC {
  (t,t) = 1
  (t,t) = 2
}
)";
    CHECK_THROWS_AS(parse_spec(dup), SymmetryConflict);
}

TEST_CASE("parse_spec: malformed metric reports position") {
    const char* text = R"(MANIFOLD bad
EVEN t
ODD tau
METRIC { (t = 1 }
)";
    try {
        parse_spec(text);
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.line() == 4);
        CHECK(e.column() >= 13);
    }
}

TEST_CASE("parse_spec: parity violations rejected") {
    const char* text = R"(MANIFOLD bad
EVEN t
ODD tau
METRIC {
  (t,t) = tau
}
)";
    CHECK_THROWS_AS(parse_spec(text), ParityViolation);
}

TEST_CASE("parse_spec: unknown identifiers rejected") {
    const char* text = R"(MANIFOLD bad
EVEN t
ODD tau
METRIC {
  (t,t) = q
}
)";
    CHECK_THROWS_AS(parse_spec(text), UnknownSymbol);
}

TEST_CASE("parse_spec: round trip is a fixed point") {
    const char* text = R"(MANIFOLD roundtrip
EVEN x t
ODD tau
FUNC f(x) NONVANISHING
METRIC {
  (x,x) = 1
  (t,t) = f^2
  (t,tau) = -tau*f^2
}
VF W = x*d(t) + d(x)
STRUCTURE {
  Q = d(tau) + tau*d(t);
  P = d(t);
}
CONNECTION {
  Gamma(t; tau, tau) = -1;
}
CONTRACTION {
  weights: x => s^-2;
  generators: W => s^1;
}
)";
    ManifoldSpec spec = parse_spec(text);
    std::string printed = spec.print();
    ManifoldSpec reparsed = parse_spec(printed);
    CHECK(spec.same_content(reparsed));
    CHECK(reparsed.print() == printed);
}

TEST_CASE("parse_spec: structure block overrides defaults") {
    const char* text = R"(MANIFOLD s
EVEN t
ODD tau
METRIC { (t,t) = 1 (t,tau) = -tau }
STRUCTURE {
  Q = d(tau) + tau*d(t);
  P = d(t);
}
)";
    ManifoldSpec spec = parse_spec(text);
    CHECK(spec.structure_given);
    CHECK(*spec.Q == shander_Q(spec.chart));
}

TEST_CASE("parse_spec: every shipped fixture round-trips") {
    const char* files[] = {"r4_1_flat.scw",        "n1.scw",
                           "n1_nonstatic.scw",     "dim2_nondegenerate.scw",
                           "dim2_degenerate.scw",  "warped_product.scw",
                           "superspace_4_4.scw"};
    for (const char* file : files) {
        CAPTURE(file);
        ManifoldSpec spec = parse_spec_file(std::string(SCARR_SPECS_DIR) + "/" + file);
        std::string printed = spec.print();
        ManifoldSpec reparsed = parse_spec(printed);
        CHECK(spec.same_content(reparsed));
        CHECK(reparsed.print() == printed);
    }
}

TEST_CASE("expression parser: reserved names and D() derivative") {
    Chart chart = Chart({{"x", Parity::Even}, {"t", Parity::Even}}, {},
                        {{"f", {"x"}, true}});
    CHECK(parse_scalar_text("D(f, x)", chart) ==
          diff(chart.scope(), ScalarExpr::from_symbol("f"), "x"));
    CHECK(parse_scalar_text("D(x^2*t, x)", chart) == parse_scalar_text("2*x*t", chart));
    CHECK_THROWS_AS(parse_scalar_text("d + 1", chart), SyntaxError);
    CHECK_THROWS_AS(parse_spec("MANIFOLD m\nEVEN d\n"), SyntaxError);
}

TEST_CASE("vector field syntax edge cases") {
    Chart chart = Chart({{"x", Parity::Even}, {"t", Parity::Even}}, {{"tau", Parity::Odd}});
    VectorField a = parse_vector_field_text("d(tau) + tau*d(t)", chart);
    CHECK(a == shander_Q(chart));
    VectorField b = parse_vector_field_text("-d(x) + (x^2 + 1)*d(t)", chart);
    CHECK(b.component(0) == -SuperFunction::constant(chart, 1));
    CHECK(b.component(1) == parse_expression_text("x^2 + 1", chart));
    CHECK_THROWS_AS(parse_vector_field_text("d(nope)", chart), UnknownSymbol);
    CHECK_THROWS_AS(parse_vector_field_text("tau*", chart), SyntaxError);
}
