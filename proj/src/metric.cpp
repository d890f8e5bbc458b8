#include "scarr/metric.hpp"

#include "scarr/errors.hpp"
#include "scarr/linear_extract.hpp"

#include <cassert>

namespace scarr {

SuperMetric::SuperMetric(Tensor2 components) : components_(std::move(components)) {
    if (!components_.has_even_tensor_parity())
        throw ParityViolation("metric entries must form an even tensor");
    if (!components_.is_graded_symmetric())
        throw Error("metric is not graded symmetric");
}

namespace {

SuperFunction inner_product_homogeneous(const SuperMetric& g, const VectorField& X,
                                        const VectorField& Y, Parity py) {
    const Chart& chart = g.chart();
    SuperFunction out = SuperFunction::zero(chart);
    for (std::size_t a = 0; a < chart.coordinate_count(); ++a) {
        if (X.component(a).is_zero()) continue;
        bool flip = py == Parity::Odd && chart.coordinate_parity(a) == Parity::Odd;
        for (std::size_t b = 0; b < chart.coordinate_count(); ++b) {
            if (Y.component(b).is_zero() || g.entry(b, a).is_zero()) continue;
            SuperFunction term = X.component(a) * Y.component(b) * g.entry(b, a);
            out += flip ? -term : term;
        }
    }
    return out;
}

} // namespace

SuperFunction inner_product(const SuperMetric& g, const VectorField& X, const VectorField& Y) {
    if (!X.chart().same_coordinates(g.chart()) || !Y.chart().same_coordinates(g.chart()))
        throw ChartMismatch();
    SuperFunction out = SuperFunction::zero(g.chart());
    for (Parity py : {Parity::Even, Parity::Odd}) {
        VectorField Yp = Y.parity_part(py);
        if (Yp.is_zero()) continue;
        out += inner_product_homogeneous(g, X, Yp, py);
    }
    return out;
}

SuperFunction lie_derivative_metric_at(const SuperMetric& g, const VectorField& X,
                                       const VectorField& Y, const VectorField& Z) {
    SuperFunction out = SuperFunction::zero(g.chart());
    for (Parity px : {Parity::Even, Parity::Odd}) {
        VectorField Xp = X.parity_part(px);
        if (Xp.is_zero()) continue;
        for (Parity py : {Parity::Even, Parity::Odd}) {
            VectorField Yp = Y.parity_part(py);
            if (Yp.is_zero()) continue;
            SuperFunction term = apply(Xp, inner_product(g, Yp, Z)) -
                                 inner_product(g, lie_bracket(Xp, Yp), Z);
            SuperFunction third = inner_product(g, Yp, lie_bracket(Xp, Z));
            bool flip = px == Parity::Odd && py == Parity::Odd;
            out += flip ? term + third : term - third;
        }
    }
    return out;
}

Tensor2 lie_derivative_metric(const SuperMetric& g, const VectorField& X) {
    const Chart& chart = g.chart();
    Tensor2 out(chart);
    for (std::size_t a = 0; a < chart.coordinate_count(); ++a)
        for (std::size_t b = 0; b < chart.coordinate_count(); ++b)
            out.set_entry(a, b,
                          lie_derivative_metric_at(g, X,
                                                   VectorField::coordinate_basis(chart, a),
                                                   VectorField::coordinate_basis(chart, b)));
    return out;
}

bool is_killing(const SuperMetric& g, const VectorField& X) {
    return lie_derivative_metric(g, X).is_zero();
}

KernelReport kernel_basis(const SuperMetric& g) {
    const Chart& chart = g.chart();
    if (chart.odd_count() > 1) throw UnsupportedOddDimension(chart.odd_count());
    const bool has_odd = chart.odd_count() == 1;
    const std::size_t n = chart.coordinate_count();

    // Unknown X^i = u_i + tau v_i with placeholder symbols for the scalars;
    // on a purely even chart only the u block exists.
    std::vector<std::string> names;
    std::vector<FunctionSymbol> placeholders;
    for (std::size_t i = 0; i < n; ++i) names.push_back("_u" + std::to_string(i));
    if (has_odd)
        for (std::size_t i = 0; i < n; ++i) names.push_back("_v" + std::to_string(i));
    for (const auto& nm : names) placeholders.push_back(FunctionSymbol{nm, {}, false});
    Chart extended = chart.with_extra_functions(placeholders);
    PlaceholderSet unknowns(names);

    VectorField X(extended);
    for (std::size_t i = 0; i < n; ++i) {
        SuperFunction comp(extended, ScalarExpr::from_symbol(names[i]));
        if (has_odd) {
            SuperFunction tau = SuperFunction::coordinate(extended, chart.even_count());
            comp += tau * SuperFunction(extended, ScalarExpr::from_symbol(names[n + i]));
        }
        X.set_component(i, comp);
    }

    ExprMatrix A;
    for (std::size_t b = 0; b < n; ++b) {
        SuperFunction eq =
            inner_product(g, X, VectorField::coordinate_basis(extended, b));
        for (OddMask mask = 0; mask <= (has_odd ? OddMask{1} : OddMask{0}); ++mask) {
            LinearForm form = unknowns.extract(eq.coefficient(mask));
            if (!form.constant.is_zero())
                throw Error("kernel system is not homogeneous");
            A.push_back(std::move(form.coefficients));
        }
    }

    LinearSolveResult solved = solve_linear_system(
        std::move(A), ExprVector(unknowns.size(), ScalarExpr::zero()));
    assert(solved.consistent);

    KernelReport report;
    report.scalar_solution_space = solved.nullspace;
    report.dimension = solved.nullspace.size();
    for (const auto& vec : solved.nullspace) {
        VectorField gen(chart);
        for (std::size_t i = 0; i < n; ++i) {
            SuperFunction f(chart, vec[i]);
            if (has_odd) {
                SuperFunction tau_orig =
                    SuperFunction::coordinate(chart, chart.even_count());
                f += tau_orig * SuperFunction(chart, vec[n + i]);
            }
            gen.set_component(i, f);
        }
        report.module_generators.push_back(std::move(gen));
    }

    // Verdict: solution space = span of the scalar vectors of Q and tau Q.
    if (has_odd && report.dimension == 2) {
        const std::size_t t_index = chart.even_count() - 1;
        const std::size_t tau_index = chart.even_count();
        ExprVector q_vec(2 * n, ScalarExpr::zero());
        q_vec[tau_index] = ScalarExpr::one();     // Q^tau = 1
        q_vec[n + t_index] = ScalarExpr::one();   // Q^t = tau
        ExprVector tau_q_vec(2 * n, ScalarExpr::zero());
        tau_q_vec[n + tau_index] = ScalarExpr::one(); // (tau Q)^tau = tau

        ExprMatrix base = report.scalar_solution_space;
        std::size_t base_rank = matrix_rank(base);
        ExprMatrix with_q = base;
        with_q.push_back(q_vec);
        ExprMatrix with_tau_q = base;
        with_tau_q.push_back(tau_q_vec);
        report.span_of_Q = base_rank == 2 && matrix_rank(with_q) == 2 &&
                           matrix_rank(with_tau_q) == 2;
    }
    return report;
}

Chart even_subchart(const Chart& chart) {
    std::vector<CoordinateSymbol> even;
    for (std::size_t i = 0; i < chart.even_count(); ++i) even.push_back(chart.coordinate(i));
    return Chart(std::move(even), {}, chart.scope().functions());
}

ReducedMetric reduced_metric(const SuperMetric& g) {
    const Chart& chart = g.chart();
    if (chart.odd_count() != 1) throw UnsupportedOddDimension(chart.odd_count());
    ReducedMetric out{even_subchart(chart), {}};
    const std::size_t n = chart.even_count();
    out.entries.assign(n, ExprVector(n, ScalarExpr::zero()));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) out.entries[a][b] = reduce_eps(g.entry(a, b));
    return out;
}

SchurReport schur_analysis(const ReducedMetric& gr) {
    const std::size_t n = gr.entries.size();
    if (n == 0) throw Error("empty reduced metric");
    SchurReport report{ScalarExpr::one(), std::nullopt, ScalarExpr::zero(), false, true};

    report.det_total = determinant(gr.entries);
    report.degenerate = report.det_total.is_zero();

    const std::size_t m = n - 1; // spatial block size
    ExprMatrix spatial(m, ExprVector(m, ScalarExpr::zero()));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) spatial[a][b] = gr.entries[a][b];
    report.det_spatial = determinant(spatial);

    if (!report.det_spatial.is_zero()) {
        // S = g_tt - g_{ta} (g_{ab})^{-1} g_{bt} via a linear solve.
        ExprVector g_bt(m, ScalarExpr::zero());
        for (std::size_t b = 0; b < m; ++b) g_bt[b] = gr.entries[b][n - 1];
        LinearSolveResult inv = solve_linear_system(spatial, g_bt);
        assert(inv.consistent);
        ScalarExpr s = gr.entries[n - 1][n - 1];
        for (std::size_t a = 0; a < m; ++a)
            s = s - gr.entries[n - 1][a] * inv.particular[a];
        report.schur_scalar = s;
        report.factorization_consistent =
            (report.det_spatial * s == report.det_total);
    }
    return report;
}

LocalFormReport validate_local_form(const SuperMetric& g) {
    const Chart& chart = g.chart();
    if (chart.odd_count() != 1) throw UnsupportedOddDimension(chart.odd_count());
    const std::size_t tau = chart.even_count();
    const std::size_t t = chart.even_count() - 1;
    SuperFunction tau_fn = SuperFunction::coordinate(chart, tau);

    LocalFormReport report;
    if (!g.entry(tau, tau).is_zero()) {
        report.first_violation =
            "g(" + chart.coordinate(tau).name + "," + chart.coordinate(tau).name + ") != 0";
        return report;
    }
    for (std::size_t a = 0; a < chart.even_count(); ++a) {
        SuperFunction expected = -(tau_fn * g.entry(t, a));
        if (!(g.entry(tau, a) == expected)) {
            report.first_violation = "g(" + chart.coordinate(tau).name + "," +
                                     chart.coordinate(a).name + ") != -" +
                                     chart.coordinate(tau).name + "*g(" +
                                     chart.coordinate(t).name + "," +
                                     chart.coordinate(a).name + ")";
            return report;
        }
    }
    report.pass = true;
    return report;
}

VectorField shander_Q(const Chart& chart) {
    if (chart.odd_count() != 1) throw UnsupportedOddDimension(chart.odd_count());
    const std::size_t t = chart.even_count() - 1;
    const std::size_t tau = chart.even_count();
    VectorField Q(chart);
    Q.set_component(tau, SuperFunction::constant(chart, 1));
    Q.set_component(t, SuperFunction::coordinate(chart, tau));
    return Q;
}

VectorField shander_P(const Chart& chart) {
    if (chart.odd_count() != 1) throw UnsupportedOddDimension(chart.odd_count());
    return VectorField::coordinate_basis(chart, chart.even_count() - 1);
}

VectorField shander_D(const Chart& chart) {
    if (chart.odd_count() != 1) throw UnsupportedOddDimension(chart.odd_count());
    const std::size_t t = chart.even_count() - 1;
    const std::size_t tau = chart.even_count();
    VectorField D(chart);
    D.set_component(tau, SuperFunction::constant(chart, 1));
    D.set_component(t, -SuperFunction::coordinate(chart, tau));
    return D;
}

} // namespace scarr
