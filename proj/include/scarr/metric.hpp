#ifndef SCARR_METRIC_HPP
#define SCARR_METRIC_HPP

#include "scarr/fields.hpp"
#include "scarr/linear_solver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace scarr {

// Even graded-symmetric rank-2 tensor, possibly degenerate. Validated on
// construction.
class SuperMetric {
public:
    explicit SuperMetric(Tensor2 components);

    const Chart& chart() const { return components_.chart(); }
    const Tensor2& tensor() const { return components_; }
    const SuperFunction& entry(std::size_t a, std::size_t b) const {
        return components_.entry(a, b);
    }

private:
    Tensor2 components_;
};

// <X|Y> = (-1)^{parity(Y) parity(a)} X^a Y^b g_{ba}, extended bilinearly to
// inhomogeneous arguments.
SuperFunction inner_product(const SuperMetric& g, const VectorField& X, const VectorField& Y);

// (L_X g)(Y, Z) = X<Y|Z> - <[X,Y]|Z> - (-1)^{parity(X) parity(Y)} <Y|[X,Z]>.
SuperFunction lie_derivative_metric_at(const SuperMetric& g, const VectorField& X,
                                       const VectorField& Y, const VectorField& Z);

// Component tensor of the Lie derivative: entry(a, b) = (L_X g)(d_a, d_b).
Tensor2 lie_derivative_metric(const SuperMetric& g, const VectorField& X);

bool is_killing(const SuperMetric& g, const VectorField& X);

struct KernelReport {
    // Scalar coordinates are ordered (u_0..u_{N-1}, v_0..v_{N-1}) for the
    // expansion X^i = u_i + tau v_i over the N chart coordinates.
    std::vector<ExprVector> scalar_solution_space;
    std::vector<VectorField> module_generators;
    std::size_t dimension = 0;
    bool span_of_Q = false;
};

// Generic-rank kernel of the metric over the fraction field; requires a
// single odd coordinate.
KernelReport kernel_basis(const SuperMetric& g);

// Purely even chart carrying the reduced metric entries.
struct ReducedMetric {
    Chart reduced_chart;
    ExprMatrix entries; // symmetric, entries free of odd coordinates
};

Chart even_subchart(const Chart& chart);

ReducedMetric reduced_metric(const SuperMetric& g);

struct SchurReport {
    ScalarExpr det_spatial;
    std::optional<ScalarExpr> schur_scalar; // absent when the spatial block is singular
    ScalarExpr det_total;
    bool degenerate = false;
    bool factorization_consistent = true; // det_total == det_spatial * S when S exists
};

// Splits off the last even coordinate as the t row/column.
SchurReport schur_analysis(const ReducedMetric& gr);

struct LocalFormReport {
    bool pass = false;
    std::string first_violation; // empty on pass
};

// Shander-chart shape of a degenerate metric: g_{tau,tau} = 0 and
// g_{tau,a} = -tau g_{t,a} for every even a.
LocalFormReport validate_local_form(const SuperMetric& g);

// The canonical Shander-form fields on a chart (x^1..x^{n-1}, t; tau).
VectorField shander_Q(const Chart& chart);
VectorField shander_P(const Chart& chart);
VectorField shander_D(const Chart& chart);

} // namespace scarr

#endif
