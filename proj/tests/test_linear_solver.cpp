#include "scarr/linear_solver.hpp"

#include "scarr/expr_parser.hpp"
#include "test_util.hpp"

#include <doctest.h>
#include <sstream>

using namespace scarr;

namespace {

Chart solver_chart() {
    return Chart({{"x", Parity::Even, true}, {"t", Parity::Even}}, {});
}

ScalarExpr S(const Chart& chart, const std::string& text) {
    return parse_scalar_text(text, chart);
}

ScalarExpr Q(int num, int den = 1) { return ScalarExpr::from_rational(Rational(num, den)); }

} // namespace

TEST_CASE("solve: identity system") {
    Chart chart = solver_chart();
    ExprMatrix A = {{Q(1), Q(0)}, {Q(0), Q(1)}};
    ExprVector b = {S(chart, "x"), S(chart, "t")};
    auto r = solve_linear_system(A, b);
    REQUIRE(r.consistent);
    CHECK(r.particular[0] == S(chart, "x"));
    CHECK(r.particular[1] == S(chart, "t"));
    CHECK(r.nullspace.empty());
}

TEST_CASE("solve: free variable convention") {
    ExprMatrix A = {{Q(1), Q(1)}};
    ExprVector b = {Q(1)};
    auto r = solve_linear_system(A, b);
    REQUIRE(r.consistent);
    CHECK(r.particular[0] == Q(1));
    CHECK(r.particular[1] == Q(0));
    REQUIRE(r.nullspace.size() == 1);
    CHECK(r.nullspace[0][0] == Q(-1));
    CHECK(r.nullspace[0][1] == Q(1));
}

TEST_CASE("solve: symbolic pivot over the fraction field") {
    // A = [[x, 1], [x, 1]], b = (t, t), x nonvanishing: hand elimination
    // gives particular (t/x, 0) and nullspace {(-1/x, 1)}.
    Chart chart = solver_chart();
    ExprMatrix A = {{S(chart, "x"), Q(1)}, {S(chart, "x"), Q(1)}};
    ExprVector b = {S(chart, "t"), S(chart, "t")};
    auto r = solve_linear_system(A, b);
    REQUIRE(r.consistent);
    CHECK(r.particular[0] == S(chart, "t/x"));
    CHECK(r.particular[1] == Q(0));
    REQUIRE(r.nullspace.size() == 1);
    CHECK(r.nullspace[0][0] == -S(chart, "1/x"));
    CHECK(r.nullspace[0][1] == Q(1));
}

TEST_CASE("solve: inconsistency is a value") {
    ExprMatrix A = {{Q(1), Q(1)}, {Q(1), Q(1)}};
    ExprVector b = {Q(1), Q(2)};
    auto r = solve_linear_system(A, b);
    CHECK_FALSE(r.consistent);
}

TEST_CASE("solve: re-substitution on random systems") {
    Chart chart = solver_chart();
    test::Rng rng(99);
    int checked = 0;
    for (int round = 0; round < 120; ++round) {
        const std::size_t rows = static_cast<std::size_t>(rng.uniform(1, 4));
        const std::size_t cols = static_cast<std::size_t>(rng.uniform(1, 4));
        ExprMatrix A(rows, ExprVector(cols, ScalarExpr::zero()));
        for (auto& row : A)
            for (auto& e : row)
                if (rng.uniform(0, 2) != 0) e = rng.scalar(chart, 2, 1);
        // Build a consistent right-hand side from a known solution.
        ExprVector x(cols, ScalarExpr::zero());
        for (auto& e : x)
            if (rng.uniform(0, 1) == 0) e = rng.scalar(chart, 2, 1);
        ExprVector b = matrix_apply(A, x);
        auto r = solve_linear_system(A, b);
        REQUIRE(r.consistent);
        ExprVector check = matrix_apply(A, r.particular);
        for (std::size_t i = 0; i < rows; ++i) CHECK(check[i] == b[i]);
        for (const auto& v : r.nullspace) {
            ExprVector zero = matrix_apply(A, v);
            for (const auto& e : zero) CHECK(e.is_zero());
        }
        ++checked;
    }
    CHECK(checked == 120);
}

TEST_CASE("solve: deterministic output across runs") {
    Chart chart = solver_chart();
    ExprMatrix A = {{S(chart, "x"), Q(1), S(chart, "t")}, {S(chart, "x"), Q(2), Q(0)}};
    ExprVector b = {S(chart, "t"), Q(1)};
    auto r1 = solve_linear_system(A, b);
    auto r2 = solve_linear_system(A, b);
    REQUIRE(r1.consistent);
    REQUIRE(r2.consistent);
    std::ostringstream s1, s2;
    for (const auto& e : r1.particular) s1 << e.str() << ";";
    for (const auto& e : r2.particular) s2 << e.str() << ";";
    for (const auto& v : r1.nullspace)
        for (const auto& e : v) s1 << e.str() << ";";
    for (const auto& v : r2.nullspace)
        for (const auto& e : v) s2 << e.str() << ";";
    CHECK(s1.str() == s2.str());
}

TEST_CASE("determinant: cofactor cross-check on small random matrices") {
    Chart chart = solver_chart();
    test::Rng rng(1234);
    auto cofactor_det = [](const ExprMatrix& M, auto&& self) -> ScalarExpr {
        const std::size_t n = M.size();
        if (n == 1) return M[0][0];
        ScalarExpr acc = ScalarExpr::zero();
        for (std::size_t j = 0; j < n; ++j) {
            if (M[0][j].is_zero()) continue;
            ExprMatrix minor;
            for (std::size_t r = 1; r < n; ++r) {
                ExprVector row;
                for (std::size_t c = 0; c < n; ++c)
                    if (c != j) row.push_back(M[r][c]);
                minor.push_back(std::move(row));
            }
            ScalarExpr term = M[0][j] * self(minor, self);
            acc = j % 2 == 0 ? acc + term : acc - term;
        }
        return acc;
    };
    for (int round = 0; round < 60; ++round) {
        const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 3));
        ExprMatrix M(n, ExprVector(n, ScalarExpr::zero()));
        for (auto& row : M)
            for (auto& e : row) e = rng.scalar(chart, 2, 1);
        CHECK(determinant(M) == cofactor_det(M, cofactor_det));
    }
}
