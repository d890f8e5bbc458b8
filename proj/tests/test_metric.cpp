#include "scarr/metric.hpp"

#include "scarr/expr_parser.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <array>
#include <thread>

using namespace scarr;
using namespace scarr::test;

namespace {

SuperFunction F(const Chart& chart, const std::string& text) {
    return parse_expression_text(text, chart);
}

VectorField VF(const Chart& chart, const std::string& text) {
    return parse_vector_field_text(text, chart);
}

} // namespace

TEST_CASE("inner_product: coordinate pairings on R^{4|1}") {
    Chart chart = chart_r41();
    SuperMetric g = metric_r41(chart);
    VectorField Q = shander_Q(chart);
    VectorField P = shander_P(chart);

    for (std::size_t a = 0; a < 5; ++a)
        for (std::size_t b = 0; b < 5; ++b)
            CHECK(inner_product(g, VectorField::coordinate_basis(chart, a),
                                VectorField::coordinate_basis(chart, b)) == g.entry(a, b));

    CHECK(inner_product(g, P, P) == -F(chart, "1"));
    for (std::size_t b = 0; b < 5; ++b)
        CHECK(inner_product(g, Q, VectorField::coordinate_basis(chart, b)).is_zero());
}

TEST_CASE("inner_product: graded symmetry and left linearity") {
    Chart chart = chart_r41();
    SuperMetric g = metric_r41(chart);
    Rng rng(301);
    for (int i = 0; i < 120; ++i) {
        Parity px = i % 2 == 0 ? Parity::Even : Parity::Odd;
        Parity py = (i / 2) % 2 == 0 ? Parity::Even : Parity::Odd;
        VectorField X = rng.homogeneous_field(chart, px);
        VectorField Y = rng.homogeneous_field(chart, py);
        SuperFunction rhs = inner_product(g, Y, X);
        if (px == Parity::Odd && py == Parity::Odd) rhs = -rhs;
        CHECK(inner_product(g, X, Y) == rhs);

        SuperFunction f = rng.super_function(chart);
        VectorField Z = rng.field(chart);
        CHECK(inner_product(g, f * X + Y, Z) ==
              f * inner_product(g, X, Z) + inner_product(g, Y, Z));
    }
}

TEST_CASE("kernel_basis: R^{4|1} kernel is span{Q}") {
    Chart chart = chart_r41();
    SuperMetric g = metric_r41(chart);
    KernelReport kr = kernel_basis(g);
    CHECK(kr.dimension == 2);
    CHECK(kr.span_of_Q);
    REQUIRE(kr.module_generators.size() == 2);
    Rng rng(701);
    for (const auto& gen : kr.module_generators)
        for (int i = 0; i < 10; ++i)
            CHECK(inner_product(g, gen, rng.field(chart)).is_zero());
}

TEST_CASE("kernel_basis: nondegenerate 2|1 example") {
    Chart chart = chart_r21();
    SuperMetric g = metric_r21_nondegenerate(chart);
    KernelReport kr = kernel_basis(g);
    CHECK(kr.dimension == 2);
    CHECK(kr.span_of_Q);
}

TEST_CASE("kernel_basis: degenerate 2|1 example has extra kernel directions") {
    // The reduced metric [[1,1],[1,1]] is singular, and its kernel vector
    // d(x) - d(t) lifts into ker(g); the kernel is strictly larger than
    // span{Q}, so this candidate fails the super-Carrollian axiom.
    Chart chart = chart_r21();
    SuperMetric g = metric_r21_degenerate(chart);
    KernelReport kr = kernel_basis(g);
    CHECK(kr.dimension == 4);
    CHECK_FALSE(kr.span_of_Q);
    VectorField lifted = VF(chart, "d(x) - d(t)");
    for (std::size_t b = 0; b < 3; ++b)
        CHECK(inner_product(g, lifted, VectorField::coordinate_basis(chart, b)).is_zero());
}

TEST_CASE("kernel_basis: purely even degenerate direction is caught") {
    Chart chart = chart_r21();
    Tensor2 t(chart);
    t.set_entry(0, 0, SuperFunction::constant(chart, 1));
    // g = dx dx only: kernel contains d(t) and d(tau) directions.
    SuperMetric g{std::move(t)};
    KernelReport kr = kernel_basis(g);
    CHECK(kr.dimension == 4);
    CHECK_FALSE(kr.span_of_Q);
}

TEST_CASE("kernel_basis: nondegenerate metric on a purely even chart is empty") {
    Chart chart = Chart({{"x", Parity::Even}, {"y", Parity::Even}}, {});
    Tensor2 t(chart);
    t.set_entry(0, 0, SuperFunction::constant(chart, 1));
    t.set_entry(1, 1, SuperFunction::constant(chart, 1));
    SuperMetric g{std::move(t)};
    KernelReport kr = kernel_basis(g);
    CHECK(kr.dimension == 0);
    CHECK_FALSE(kr.span_of_Q);
}

TEST_CASE("kernel_basis: more than one odd coordinate is unsupported") {
    Chart chart = Chart({{"t", Parity::Even}},
                        {{"th1", Parity::Odd}, {"th2", Parity::Odd}});
    Tensor2 t(chart);
    t.set_entry(0, 0, SuperFunction::constant(chart, 1));
    SuperMetric g{std::move(t)};
    CHECK_THROWS_AS(kernel_basis(g), UnsupportedOddDimension);
}

TEST_CASE("lie_derivative_metric: Killing verdicts on R^{4|1}") {
    Chart chart = chart_r41();
    SuperMetric g = metric_r41(chart);
    VectorField Q = shander_Q(chart);
    VectorField P = shander_P(chart);

    CHECK(is_killing(g, P));
    CHECK_FALSE(is_killing(g, Q));
    CHECK(is_killing(g, VF(chart, "d(x1)")));
    CHECK(is_killing(g, VF(chart, "x1*d(x2) - x2*d(x1)")));
    CHECK_FALSE(is_killing(g, VF(chart, "t*d(x1) + x1*d(t)"))); // boost

    // (L_Q g)(Q, d_t) = -2 <P|d_t> = 2.
    VectorField dt = VectorField::coordinate_basis(chart, 3);
    CHECK(lie_derivative_metric_at(g, Q, Q, dt) == F(chart, "2"));
}

TEST_CASE("lie_derivative_metric: rotation on the Euclidean plane") {
    Chart chart = Chart({{"x", Parity::Even}, {"y", Parity::Even}}, {});
    Tensor2 t(chart);
    t.set_entry(0, 0, SuperFunction::constant(chart, 1));
    t.set_entry(1, 1, SuperFunction::constant(chart, 1));
    SuperMetric g{std::move(t)};
    CHECK(is_killing(g, VF(chart, "x*d(y) - y*d(x)")));
    CHECK_FALSE(is_killing(g, VF(chart, "x*d(x)")));
}

TEST_CASE("killing bracket closure on the computed R^{4|1} basis") {
    Chart chart = chart_r41();
    SuperMetric g = metric_r41(chart);
    std::vector<VectorField> killing = {
        VF(chart, "d(x1)"),
        VF(chart, "d(x2)"),
        VF(chart, "d(x3)"),
        VF(chart, "d(t)"),
        VF(chart, "x1*d(x2) - x2*d(x1)"),
        VF(chart, "x2*d(x3) - x3*d(x2)"),
        VF(chart, "x1*d(x3) - x3*d(x1)"),
        VF(chart, "t*d(x1) + x1*d(t)"),
    };
    for (const auto& X : killing) {
        if (!is_killing(g, X)) continue;
        for (const auto& Y : killing) {
            if (!is_killing(g, Y)) continue;
            CHECK(is_killing(g, lie_bracket(X, Y)));
        }
    }
}

TEST_CASE("reduced_metric and schur_analysis on the shipped examples") {
    {
        Chart chart = chart_r41();
        ReducedMetric gr = reduced_metric(metric_r41(chart));
        SchurReport sr = schur_analysis(gr);
        CHECK(sr.det_spatial == ScalarExpr::one());
        REQUIRE(sr.schur_scalar.has_value());
        CHECK(*sr.schur_scalar == ScalarExpr::from_rational(-1));
        CHECK(sr.det_total == ScalarExpr::from_rational(-1));
        CHECK_FALSE(sr.degenerate);
        CHECK(sr.factorization_consistent);
    }
    {
        Chart chart = chart_r21();
        SchurReport sr = schur_analysis(reduced_metric(metric_r21_nondegenerate(chart)));
        CHECK(sr.det_total == ScalarExpr::one());
        CHECK_FALSE(sr.degenerate);
    }
    {
        Chart chart = chart_r21();
        SchurReport sr = schur_analysis(reduced_metric(metric_r21_degenerate(chart)));
        CHECK(sr.det_total.is_zero());
        CHECK(sr.degenerate);
        REQUIRE(sr.schur_scalar.has_value());
        CHECK(sr.schur_scalar->is_zero());
    }
    {
        // n = 1: reduced metric is the single entry g_tt(t).
        Chart chart = Chart({{"t", Parity::Even}}, {{"tau", Parity::Odd}},
                            {{"gtt", {"t"}, true}});
        Tensor2 t(chart);
        SuperFunction gtt(chart, ScalarExpr::from_symbol("gtt"));
        SuperFunction tau = SuperFunction::coordinate(chart, 1);
        t.set_entry(0, 0, gtt);
        t.set_entry(0, 1, -(tau * gtt));
        t.set_entry(1, 0, -(tau * gtt));
        SuperMetric g{std::move(t)};
        ReducedMetric gr = reduced_metric(g);
        REQUIRE(gr.entries.size() == 1);
        CHECK(gr.entries[0][0] == ScalarExpr::from_symbol("gtt"));
    }
}

TEST_CASE("validate_local_form") {
    {
        Chart chart = chart_r41();
        CHECK(validate_local_form(metric_r41(chart)).pass);
    }
    {
        Chart chart = chart_r21();
        CHECK(validate_local_form(metric_r21_nondegenerate(chart)).pass);
        CHECK(validate_local_form(metric_r21_degenerate(chart)).pass);
    }
    {
        // dx dx + 2 dx dtau tau + dt dt with g_tx = 0 violates the local
        // form condition on the (tau, x) entry.
        Chart chart = chart_r21();
        Tensor2 t(chart);
        SuperFunction one = SuperFunction::constant(chart, 1);
        SuperFunction tau = SuperFunction::coordinate(chart, 2);
        t.set_entry(0, 0, one);
        t.set_entry(1, 1, one);
        t.set_entry(0, 2, tau);
        t.set_entry(2, 0, tau);
        SuperMetric g{std::move(t)};
        LocalFormReport report = validate_local_form(g);
        CHECK_FALSE(report.pass);
        CHECK(report.first_violation == "g(tau,x) != -tau*g(t,x)");
    }
}

TEST_CASE("concurrent reads of shared immutable values") {
    Chart chart = chart_r41();
    SuperMetric g = metric_r41(chart);
    std::vector<std::thread> workers;
    std::array<KernelReport, 4> reports;
    for (std::size_t i = 0; i < reports.size(); ++i)
        workers.emplace_back([&, i] { reports[i] = kernel_basis(g); });
    for (auto& w : workers) w.join();
    for (const auto& r : reports) {
        CHECK(r.dimension == 2);
        CHECK(r.span_of_Q);
        CHECK(r.module_generators[0] == reports[0].module_generators[0]);
    }
}

TEST_CASE("SuperMetric validation rejects bad tensors") {
    Chart chart = chart_r21();
    {
        Tensor2 t(chart);
        t.set_entry(0, 1, SuperFunction::constant(chart, 1)); // no mirror
        CHECK_THROWS_AS(SuperMetric{std::move(t)}, Error);
    }
    {
        Tensor2 t(chart);
        // Odd value in an even slot.
        t.set_entry(0, 0, SuperFunction::coordinate(chart, 2));
        CHECK_THROWS_AS(SuperMetric{std::move(t)}, ParityViolation);
    }
}
