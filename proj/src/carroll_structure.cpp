#include "scarr/carroll_structure.hpp"

#include "scarr/errors.hpp"

#include <algorithm>
#include <cassert>

namespace scarr {

namespace {

bool is_shander_Q(const Chart& chart, const VectorField& Q) {
    if (chart.odd_count() != 1) return false;
    return Q == shander_Q(chart);
}

} // namespace

VerifyResult verify_structure(const Chart& chart, const SuperMetric& g,
                              const VectorField& Q, const VectorField& P) {
    VerifyResult result{std::nullopt, StructureDiagnostics(chart)};
    StructureDiagnostics& diag = result.diagnostics;

    if (chart.odd_count() != 1) {
        diag.failures.push_back("chart: expected exactly one odd coordinate");
        return result;
    }

    if (!is_shander_Q(chart, Q))
        diag.failures.push_back("Q: components are not in Shander normal form "
                                "(expected Q = d(tau) + tau*d(t))");

    VectorField qq = lie_bracket(Q, Q);
    VectorField two_p = P + P;
    if (!(qq == two_p))
        diag.failures.push_back("algebra: [Q,Q] != 2P (got " + qq.str() + ")");
    if (P.is_zero())
        diag.failures.push_back("algebra: P vanishes, Q is homological");
    if (!lie_bracket(P, Q).is_zero())
        diag.failures.push_back("algebra: [P,Q] != 0");

    diag.local_form = validate_local_form(g);
    if (!diag.local_form.pass)
        diag.failures.push_back("local form: " + diag.local_form.first_violation);

    diag.kernel = kernel_basis(g);
    if (!diag.kernel.span_of_Q) {
        std::string msg = "kernel: ker(g) != span{Q}, scalar solution dimension " +
                          std::to_string(diag.kernel.dimension);
        for (const auto& gen : diag.kernel.module_generators) {
            msg += "; generator " + gen.str();
        }
        diag.failures.push_back(msg);
    }

    // Q-not-Killing certificate: some coordinate b has
    // (L_Q g)(Q, d_b) = -2 <P|d_b> != 0.
    for (std::size_t b = 0; b < chart.coordinate_count(); ++b) {
        VectorField db = VectorField::coordinate_basis(chart, b);
        SuperFunction lhs = lie_derivative_metric_at(g, Q, Q, db);
        if (lhs.is_zero()) continue;
        SuperFunction expected =
            -(SuperFunction::constant(chart, 2) * inner_product(g, P, db));
        if (!(lhs == expected)) {
            diag.failures.push_back("certificate: (L_Q g)(Q,d_" + chart.coordinate(b).name +
                                    ") != -2<P|d_" + chart.coordinate(b).name + ">");
            return result;
        }
        diag.witness_coordinate = b;
        diag.witness_value = lhs;
        break;
    }
    if (!diag.witness_coordinate && diag.failures.empty())
        diag.failures.push_back("certificate: L_Q g vanishes against Q in every "
                                "coordinate direction");

    if (diag.failures.empty()) {
        diag.verified = true;
        result.structure = SuperCarrollStructure{chart, g, Q, P};
    }
    return result;
}

bool is_static(const SuperCarrollStructure& s) {
    return is_killing(s.g, s.P);
}

namespace {

// All exponent vectors over `vars` coordinates with total degree <= degree,
// deterministic order.
void enumerate_monomials(std::size_t var, std::vector<int>& current, int remaining,
                         const Chart& chart, std::vector<Monomial>& out) {
    if (var == chart.even_count()) {
        Monomial m;
        for (std::size_t i = 0; i < chart.even_count(); ++i)
            if (current[i] > 0)
                m = m * Monomial(Generator{chart.coordinate(i).name, {}}, current[i]);
        out.push_back(m);
        return;
    }
    for (int e = 0; e <= remaining; ++e) {
        current[var] = e;
        enumerate_monomials(var + 1, current, remaining - e, chart, out);
    }
    current[var] = 0;
}

} // namespace

std::vector<VectorField> killing_solver_poly(const ReducedMetric& gr, int degree,
                                             const std::optional<VectorField>& commute_with) {
    if (degree < 0) throw Error("ansatz degree must be nonnegative");
    const Chart& chart = gr.reduced_chart;
    const std::size_t n = chart.even_count();

    for (const auto& row : gr.entries)
        for (const auto& e : row)
            if (!e.den().is_constant())
                throw UnsupportedCoefficients("reduced metric entry " + e.str() +
                                              " has a nontrivial denominator");

    Tensor2 tensor(chart);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            tensor.set_entry(a, b, SuperFunction(chart, gr.entries[a][b]));
    SuperMetric metric(std::move(tensor));

    std::vector<Monomial> monomials;
    std::vector<int> current(n, 0);
    enumerate_monomials(0, current, degree, chart, monomials);
    const std::size_t per_component = monomials.size();

    std::vector<std::string> names;
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t j = 0; j < per_component; ++j)
            names.push_back("_k" + std::to_string(c) + "_" + std::to_string(j));
    std::vector<FunctionSymbol> placeholders;
    for (const auto& nm : names) placeholders.push_back(FunctionSymbol{nm, {}, false});
    Chart extended = chart.with_extra_functions(placeholders);
    PlaceholderSet unknowns(names);

    VectorField X(extended);
    for (std::size_t c = 0; c < n; ++c) {
        Polynomial comp;
        for (std::size_t j = 0; j < per_component; ++j) {
            Polynomial term;
            term.add_term(monomials[j] * Monomial(Generator{names[c * per_component + j], {}}),
                          Rational(1));
            comp = comp + term;
        }
        X.set_component(c, SuperFunction(extended, ScalarExpr::fraction(
                                                       std::move(comp), Polynomial::constant(1))));
    }

    // Identity-in-the-coordinates equations become one rational row per
    // coordinate monomial.
    ExprMatrix A;
    auto push_identity = [&](const ScalarExpr& eq) {
        LinearForm form = unknowns.extract(eq);
        if (!form.constant.is_zero())
            throw Error("Killing system is not homogeneous");
        std::vector<Monomial> seen;
        for (const auto& coeff : form.coefficients)
            for (const auto& [m, c] : coeff.num().terms())
                if (std::find(seen.begin(), seen.end(), m) == seen.end()) seen.push_back(m);
        std::sort(seen.begin(), seen.end(), monomial_less);
        for (const auto& m : seen) {
            ExprVector row;
            row.reserve(unknowns.size());
            for (const auto& coeff : form.coefficients) {
                if (!coeff.den().is_constant() || !(coeff.den().constant_value() == 1))
                    throw UnsupportedCoefficients("fractional Killing coefficient");
                auto it = coeff.num().terms().find(m);
                row.push_back(it == coeff.num().terms().end()
                                  ? ScalarExpr::zero()
                                  : ScalarExpr::from_rational(it->second));
            }
            A.push_back(std::move(row));
        }
    };

    Tensor2 lie = lie_derivative_metric(metric, X);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b)
            push_identity(reduce_eps(lie.entry(a, b)));

    if (commute_with) {
        VectorField bracket = lie_bracket(*commute_with, X);
        for (std::size_t c = 0; c < n; ++c) push_identity(reduce_eps(bracket.component(c)));
    }

    LinearSolveResult solved =
        solve_linear_system(std::move(A), ExprVector(A.size(), ScalarExpr::zero()));
    assert(solved.consistent);

    std::vector<VectorField> basis;
    for (const auto& vec : solved.nullspace) {
        VectorField field(chart);
        for (std::size_t c = 0; c < n; ++c) {
            Polynomial comp;
            for (std::size_t j = 0; j < per_component; ++j) {
                auto q = vec[c * per_component + j].as_rational();
                if (!q) throw UnsupportedCoefficients("non-rational Killing coefficient");
                if (*q != 0) comp.add_term(monomials[j], *q);
            }
            field.set_component(c, SuperFunction(chart, ScalarExpr::fraction(
                                                            std::move(comp),
                                                            Polynomial::constant(1))));
        }
        basis.push_back(std::move(field));
    }
    return basis;
}

ScarrAlgebra scarr_algebra(const SuperCarrollStructure& s, int degree) {
    ScarrAlgebra out;
    out.is_static = is_static(s);

    ReducedMetric gr = reduced_metric(s.g);
    VectorField p_red =
        VectorField::coordinate_basis(gr.reduced_chart, gr.reduced_chart.even_count() - 1);
    std::vector<VectorField> reduced_basis = killing_solver_poly(gr, degree, p_red);

    // Lift: same components, tau-independent, zero odd component.
    std::vector<VectorField> lifts;
    for (const auto& red : reduced_basis) {
        VectorField lift(s.chart);
        for (std::size_t c = 0; c < gr.reduced_chart.even_count(); ++c) {
            ScalarExpr coeff = reduce_eps(red.component(c));
            lift.set_component(c, SuperFunction(s.chart, coeff));
        }
        if (!is_killing(s.g, lift))
            throw LiftVerificationFailure("L_X g != 0 for lift of " + red.str());
        if (!lie_bracket(lift, s.Q).is_zero())
            throw LiftVerificationFailure("L_X Q != 0 for lift of " + red.str());
        lifts.push_back(std::move(lift));
    }

    std::vector<VectorField> odd_basis;
    std::vector<std::string> odd_names;
    if (out.is_static) {
        VectorField D = shander_D(s.chart);
        if (!is_killing(s.g, D))
            throw LiftVerificationFailure("static structure but L_D g != 0");
        if (!lie_bracket(D, s.Q).is_zero())
            throw LiftVerificationFailure("[D,Q] != 0");
        odd_basis.push_back(std::move(D));
        odd_names.push_back("D");
    }

    std::vector<std::string> even_names;
    for (std::size_t i = 0; i < lifts.size(); ++i)
        even_names.push_back("K" + std::to_string(i + 1));

    out.presentation = present_lie_superalgebra(std::move(lifts), std::move(odd_basis),
                                                std::move(even_names), std::move(odd_names));

    bool constant_entries = true;
    for (const auto& row : gr.entries)
        for (const auto& e : row)
            if (!e.as_rational()) constant_entries = false;
    out.completeness = constant_entries && degree >= 1
                           ? "complete (flat reduced metric, degree >= 1)"
                           : "ansatz-bounded at degree " + std::to_string(degree);
    return out;
}

SupertranslationReport supertranslation_check(const SuperCarrollStructure& s) {
    SupertranslationReport report;
    report.precondition_static = is_static(s);
    if (!report.precondition_static) return report;

    VectorField D = shander_D(s.chart);
    VectorField dd = lie_bracket(D, D);
    VectorField minus_2p = -(s.P + s.P);
    report.holds = dd == minus_2p && lie_bracket(s.P, D).is_zero() &&
                   is_killing(s.g, D) && lie_bracket(D, s.Q).is_zero();
    return report;
}

} // namespace scarr
