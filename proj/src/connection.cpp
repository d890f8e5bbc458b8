#include "scarr/connection.hpp"

#include "scarr/errors.hpp"
#include "scarr/linear_extract.hpp"

#include <array>
#include <cassert>

namespace scarr {

VectorField covariant_derivative(const AffineConnection& conn, const VectorField& X,
                                 const VectorField& Y) {
    if (!X.chart().same_coordinates(conn.chart()) || !Y.chart().same_coordinates(conn.chart()))
        throw ChartMismatch();
    VectorField derivative(X.chart());
    for (std::size_t c = 0; c < Y.size(); ++c)
        derivative.set_component(c, apply(X, Y.component(c)));
    return derivative + conn.christoffel().evaluate(X, Y);
}

namespace {

template <typename F>
void for_parity_parts(const VectorField& X, F&& fn) {
    for (Parity p : {Parity::Even, Parity::Odd}) {
        VectorField part = X.parity_part(p);
        if (!part.is_zero()) fn(part, p);
    }
}

} // namespace

VectorField torsion(const AffineConnection& conn, const VectorField& X, const VectorField& Y) {
    VectorField out(conn.chart());
    for_parity_parts(X, [&](const VectorField& Xp, Parity px) {
        for_parity_parts(Y, [&](const VectorField& Yp, Parity py) {
            VectorField term = covariant_derivative(conn, Xp, Yp) - lie_bracket(Xp, Yp);
            VectorField flip = covariant_derivative(conn, Yp, Xp);
            bool both_odd = px == Parity::Odd && py == Parity::Odd;
            out += both_odd ? term + flip : term - flip;
        });
    });
    return out;
}

Tensor12 torsion_tensor(const AffineConnection& conn) {
    const Chart& chart = conn.chart();
    const std::size_t n = chart.coordinate_count();
    Tensor12 out(chart);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            VectorField t = torsion(conn, VectorField::coordinate_basis(chart, a),
                                    VectorField::coordinate_basis(chart, b));
            for (std::size_t c = 0; c < n; ++c) out.set_component(c, b, a, t.component(c));
        }
    return out;
}

VectorField curvature(const AffineConnection& conn, const VectorField& X,
                      const VectorField& Y, const VectorField& Z) {
    VectorField out(conn.chart());
    for_parity_parts(X, [&](const VectorField& Xp, Parity px) {
        for_parity_parts(Y, [&](const VectorField& Yp, Parity py) {
            VectorField term = covariant_derivative(conn, Xp, covariant_derivative(conn, Yp, Z)) -
                               covariant_derivative(conn, lie_bracket(Xp, Yp), Z);
            VectorField flip = covariant_derivative(conn, Yp, covariant_derivative(conn, Xp, Z));
            bool both_odd = px == Parity::Odd && py == Parity::Odd;
            out += both_odd ? term + flip : term - flip;
        });
    });
    return out;
}

CurvatureTensor::CurvatureTensor(Chart chart)
    : chart_(std::move(chart)),
      components_(chart_.coordinate_count() * chart_.coordinate_count() *
                      chart_.coordinate_count() * chart_.coordinate_count(),
                  SuperFunction::zero(chart_)) {}

const SuperFunction& CurvatureTensor::component(std::size_t d, std::size_t c, std::size_t b,
                                                std::size_t a) const {
    const std::size_t n = chart_.coordinate_count();
    return components_[((d * n + c) * n + b) * n + a];
}

void CurvatureTensor::set_component(std::size_t d, std::size_t c, std::size_t b,
                                    std::size_t a, SuperFunction f) {
    const std::size_t n = chart_.coordinate_count();
    components_[((d * n + c) * n + b) * n + a] = std::move(f);
}

bool CurvatureTensor::is_zero() const {
    for (const auto& e : components_)
        if (!e.is_zero()) return false;
    return true;
}

CurvatureTensor curvature_tensor(const AffineConnection& conn) {
    const Chart& chart = conn.chart();
    const std::size_t n = chart.coordinate_count();
    CurvatureTensor out(chart);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                VectorField r = curvature(conn, VectorField::coordinate_basis(chart, a),
                                          VectorField::coordinate_basis(chart, b),
                                          VectorField::coordinate_basis(chart, c));
                for (std::size_t d = 0; d < n; ++d)
                    out.set_component(d, c, b, a, r.component(d));
            }
    return out;
}

SuperFunction non_metricity(const AffineConnection& conn, const SuperMetric& g,
                            const VectorField& X, const VectorField& Y, const VectorField& Z) {
    SuperFunction out = SuperFunction::zero(g.chart());
    for_parity_parts(X, [&](const VectorField& Xp, Parity px) {
        for_parity_parts(Y, [&](const VectorField& Yp, Parity py) {
            SuperFunction term = apply(Xp, inner_product(g, Yp, Z)) -
                                 inner_product(g, covariant_derivative(conn, Xp, Yp), Z);
            SuperFunction third = inner_product(g, Yp, covariant_derivative(conn, Xp, Z));
            bool both_odd = px == Parity::Odd && py == Parity::Odd;
            out += both_odd ? term + third : term - third;
        });
    });
    return out;
}

bool check_susy_compatible(const AffineConnection& conn, const VectorField& Q) {
    const Chart& chart = conn.chart();
    for (std::size_t a = 0; a < chart.coordinate_count(); ++a) {
        VectorField d = covariant_derivative(conn, VectorField::coordinate_basis(chart, a), Q);
        if (!d.is_zero()) return false;
    }
    return true;
}

CompatibilityReport check_metric_compatible(const AffineConnection& conn, const SuperMetric& g,
                                            const VectorField& Q) {
    const Chart& chart = conn.chart();
    const std::size_t n = chart.coordinate_count();
    CompatibilityReport report;
    report.metric_compatible = true;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                SuperFunction nm = non_metricity(conn, g,
                                                 VectorField::coordinate_basis(chart, a),
                                                 VectorField::coordinate_basis(chart, b),
                                                 VectorField::coordinate_basis(chart, c));
                if (!nm.is_zero()) {
                    report.metric_compatible = false;
                    report.failing_triples.push_back({a, b, c});
                }
            }

    report.susy_compatible = check_susy_compatible(conn, Q);

    // Extract f_{d_a} from nabla_{d_a} Q = f Q using the unit component of
    // Q (tau in Shander form).
    std::optional<std::size_t> unit_comp;
    for (std::size_t c = 0; c < n; ++c) {
        ScalarExpr even = reduce_eps(Q.component(c));
        if (Q.component(c).terms().size() == 1 && even.is_one()) {
            unit_comp = c;
            break;
        }
    }
    for (std::size_t a = 0; a < n; ++a) {
        VectorField d = covariant_derivative(conn, VectorField::coordinate_basis(chart, a), Q);
        SuperFunction f = unit_comp ? d.component(*unit_comp) : SuperFunction::zero(chart);
        if (report.metric_compatible) {
            if (!unit_comp)
                throw EigenExtractionFailure("no unit component in Q");
            if (!(d == f * Q))
                throw EigenExtractionFailure("direction " + chart.coordinate(a).name);
        }
        report.eigenfunctions.push_back(std::move(f));
    }
    return report;
}

AffineConnection make_susy_compatible(const AffineConnection& conn0, const VectorField& Q,
                                      const OneForm& omega) {
    const Chart& chart = conn0.chart();
    SuperFunction pairing = pair(omega, Q);
    if (!(pairing == SuperFunction::constant(chart, 1))) throw DualFormInvalid();

    const std::size_t n = chart.coordinate_count();
    Tensor12 correction(chart);
    for (std::size_t a = 0; a < n; ++a) {
        VectorField dQ = covariant_derivative(conn0, VectorField::coordinate_basis(chart, a), Q);
        if (dQ.is_zero()) continue;
        Parity pa = chart.coordinate_parity(a);
        for (std::size_t b = 0; b < n; ++b) {
            if (omega.component(b).is_zero()) continue;
            // -(-1)^{a(b+1)} w_b (nabla^0_{d_a} Q)^c
            Parity pb = chart.coordinate_parity(b);
            bool flip = pa == Parity::Odd && pb == Parity::Even;
            for (std::size_t c = 0; c < n; ++c) {
                if (dQ.component(c).is_zero()) continue;
                SuperFunction term = omega.component(b) * dQ.component(c);
                correction.set_component(c, b, a,
                                         correction.component(c, b, a) -
                                             (flip ? -term : term));
            }
        }
    }
    AffineConnection result = conn0.with_correction(correction);
    assert(check_susy_compatible(result, Q));
    return result;
}

std::optional<AffineConnection> make_metric_compatible(const AffineConnection& seed,
                                                       const SuperMetric& g,
                                                       const VectorField& Q,
                                                       bool constrain_gamma_q) {
    const Chart& chart = seed.chart();
    const std::size_t n = chart.coordinate_count();
    const bool has_odd = chart.odd_count() == 1;

    // One scalar unknown per component, parity pinned by the even-tensor
    // condition: even components are plain scalars, odd ones tau-multiples.
    std::vector<std::string> names;
    names.reserve(n * n * n);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t a = 0; a < n; ++a)
                names.push_back("_G" + std::to_string(c) + "_" + std::to_string(b) + "_" +
                                std::to_string(a));
    std::vector<FunctionSymbol> placeholders;
    for (const auto& nm : names) placeholders.push_back(FunctionSymbol{nm, {}, false});
    Chart extended = chart.with_extra_functions(placeholders);
    PlaceholderSet unknowns(names);

    SuperFunction tau = has_odd ? SuperFunction::coordinate(extended, chart.even_count())
                                : SuperFunction::zero(extended);
    Tensor12 gamma(extended);
    auto name_index = [&](std::size_t c, std::size_t b, std::size_t a) {
        return (c * n + b) * n + a;
    };
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t a = 0; a < n; ++a) {
                Parity p = chart.coordinate_parity(a) + chart.coordinate_parity(b) +
                           chart.coordinate_parity(c);
                SuperFunction u(extended,
                                ScalarExpr::from_symbol(names[name_index(c, b, a)]));
                if (p == Parity::Even) {
                    gamma.set_component(c, b, a, u);
                } else if (has_odd) {
                    gamma.set_component(c, b, a, tau * u);
                }
                // Odd component without an odd coordinate stays zero.
            }

    ExprMatrix A;
    ExprVector rhs;
    auto push_equation = [&](const SuperFunction& lhs, const SuperFunction& target) {
        SuperFunction residual = lhs - target;
        for (const auto& [mask, coeff] : residual.terms()) {
            LinearForm form = unknowns.extract(coeff);
            A.push_back(std::move(form.coefficients));
            rhs.push_back(-form.constant);
        }
    };

    for (std::size_t a = 0; a < n; ++a) {
        VectorField da = VectorField::coordinate_basis(extended, a);
        Parity pa = chart.coordinate_parity(a);
        for (std::size_t b = 0; b < n; ++b) {
            VectorField db = VectorField::coordinate_basis(extended, b);
            Parity pb = chart.coordinate_parity(b);
            for (std::size_t c = 0; c < n; ++c) {
                VectorField dc = VectorField::coordinate_basis(extended, c);
                SuperFunction target = non_metricity(seed, g, da, db, dc);
                SuperFunction lhs = inner_product(g, gamma.evaluate(da, db), dc);
                SuperFunction second = inner_product(g, db, gamma.evaluate(da, dc));
                bool flip = pa == Parity::Odd && pb == Parity::Odd;
                lhs = flip ? lhs - second : lhs + second;
                push_equation(lhs, target);
            }
        }
    }

    if (constrain_gamma_q) {
        for (std::size_t a = 0; a < n; ++a) {
            VectorField constraint =
                gamma.evaluate(VectorField::coordinate_basis(extended, a), Q);
            for (std::size_t c = 0; c < n; ++c)
                push_equation(constraint.component(c), SuperFunction::zero(extended));
        }
    }

    LinearSolveResult solved = solve_linear_system(std::move(A), std::move(rhs));
    if (!solved.consistent) return std::nullopt;

    Tensor12 correction(chart);
    SuperFunction tau_orig = has_odd
                                 ? SuperFunction::coordinate(chart, chart.even_count())
                                 : SuperFunction::zero(chart);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t a = 0; a < n; ++a) {
                const ScalarExpr& value = solved.particular[name_index(c, b, a)];
                if (value.is_zero()) continue;
                Parity p = chart.coordinate_parity(a) + chart.coordinate_parity(b) +
                           chart.coordinate_parity(c);
                SuperFunction f(chart, value);
                correction.set_component(c, b, a,
                                         p == Parity::Even ? f : tau_orig * f);
            }
    return seed.with_correction(correction);
}

AffineConnection make_compatible(const AffineConnection& conn0, const SuperMetric& g,
                                 const VectorField& Q, const OneForm& omega) {
    AffineConnection susy = make_susy_compatible(conn0, Q, omega);
    std::optional<AffineConnection> result = make_metric_compatible(susy, g, Q, true);
    if (!result)
        throw Error("compatible connection system inconsistent; "
                    "input is not a verified super-Carrollian structure");
    if (!check_susy_compatible(*result, Q))
        throw Error("synthesized connection lost supersymmetry compatibility");
    CompatibilityReport rep = check_metric_compatible(*result, g, Q);
    if (!rep.metric_compatible)
        throw Error("synthesized connection failed the metric compatibility oracle");
    return *result;
}

SuperFunction koszul_rhs(const AffineConnection& conn, const SuperMetric& g,
                         const VectorField& X, const VectorField& Y, const VectorField& Z) {
    SuperFunction out = SuperFunction::zero(g.chart());
    for_parity_parts(X, [&](const VectorField& Xp, Parity px) {
        for_parity_parts(Y, [&](const VectorField& Yp, Parity py) {
            for_parity_parts(Z, [&](const VectorField& Zp, Parity pz) {
                auto lead = [&](const VectorField& A, const VectorField& B,
                                const VectorField& C) {
                    return apply(A, inner_product(g, B, C)) +
                           inner_product(g, lie_bracket(A, B), C) +
                           inner_product(g, torsion(conn, A, B), C);
                };
                auto tail = [&](const VectorField& A, const VectorField& B,
                                const VectorField& C) {
                    return apply(A, inner_product(g, B, C)) -
                           inner_product(g, lie_bracket(A, B), C) -
                           inner_product(g, torsion(conn, A, B), C);
                };
                SuperFunction first = lead(Xp, Yp, Zp);
                SuperFunction second = tail(Yp, Zp, Xp);
                SuperFunction third = tail(Zp, Xp, Yp);
                unsigned sx = static_cast<unsigned>(px), sy = static_cast<unsigned>(py),
                         sz = static_cast<unsigned>(pz);
                bool flip_second = ((sx * (sy + sz)) & 1u) != 0;
                bool flip_third = ((sz * (sx + sy)) & 1u) != 0;
                out += first;
                out += flip_second ? -second : second;
                out -= flip_third ? -third : third;
            });
        });
    });
    return out;
}

OneForm shander_omega(const Chart& chart) {
    if (chart.odd_count() != 1) throw UnsupportedOddDimension(chart.odd_count());
    return OneForm::coordinate_dual(chart, chart.even_count());
}

} // namespace scarr
