#ifndef SCARR_CONNECTION_HPP
#define SCARR_CONNECTION_HPP

#include "scarr/metric.hpp"

#include <optional>
#include <vector>

namespace scarr {

// Affine connection by Christoffel data, convention
//   nabla_{d_a} d_b = Gamma^c_{ba} d_c
// stored as christoffel(c, b, a), components multiplied on the left.
class AffineConnection {
public:
    explicit AffineConnection(Chart chart)
        : chart_(std::move(chart)), christoffel_(chart_) {}
    AffineConnection(Chart chart, Tensor12 christoffel)
        : chart_(std::move(chart)), christoffel_(std::move(christoffel)) {}

    static AffineConnection trivial(const Chart& chart) { return AffineConnection(chart); }

    const Chart& chart() const { return chart_; }
    const Tensor12& christoffel() const { return christoffel_; }
    const SuperFunction& gamma(std::size_t c, std::size_t b, std::size_t a) const {
        return christoffel_.component(c, b, a);
    }
    void set_gamma(std::size_t c, std::size_t b, std::size_t a, SuperFunction f) {
        christoffel_.set_component(c, b, a, std::move(f));
    }

    AffineConnection with_correction(const Tensor12& gamma) const {
        return AffineConnection(chart_, christoffel_ + gamma);
    }

private:
    Chart chart_;
    Tensor12 christoffel_;
};

// nabla_X Y = X^a d_a(Y^c) d_c + Gamma-term with Koszul signs.
VectorField covariant_derivative(const AffineConnection& conn, const VectorField& X,
                                 const VectorField& Y);

// T(X,Y) = nabla_X Y - (-1)^{|X||Y|} nabla_Y X - [X,Y].
VectorField torsion(const AffineConnection& conn, const VectorField& X, const VectorField& Y);
Tensor12 torsion_tensor(const AffineConnection& conn);

// R(X,Y)Z = nabla_X nabla_Y Z - (-1)^{|X||Y|} nabla_Y nabla_X Z - nabla_{[X,Y]} Z.
VectorField curvature(const AffineConnection& conn, const VectorField& X,
                      const VectorField& Y, const VectorField& Z);

// Full component tensor R^d_{cba} with R(d_a, d_b) d_c = R^d_{cba} d_d.
class CurvatureTensor {
public:
    explicit CurvatureTensor(Chart chart);

    const Chart& chart() const { return chart_; }
    const SuperFunction& component(std::size_t d, std::size_t c, std::size_t b,
                                   std::size_t a) const;
    void set_component(std::size_t d, std::size_t c, std::size_t b, std::size_t a,
                       SuperFunction f);
    bool is_zero() const;

private:
    Chart chart_;
    std::vector<SuperFunction> components_;
};

CurvatureTensor curvature_tensor(const AffineConnection& conn);

// (nabla_X g)(Y,Z) = X<Y|Z> - <nabla_X Y|Z> - (-1)^{|X||Y|}<Y|nabla_X Z>.
SuperFunction non_metricity(const AffineConnection& conn, const SuperMetric& g,
                            const VectorField& X, const VectorField& Y, const VectorField& Z);

bool check_susy_compatible(const AffineConnection& conn, const VectorField& Q);

struct CompatibilityReport {
    bool susy_compatible = false;
    bool metric_compatible = false;
    // f_{d_a} with nabla_{d_a} Q = f_{d_a} Q, one per coordinate direction.
    std::vector<SuperFunction> eigenfunctions;
    std::vector<std::array<std::size_t, 3>> failing_triples; // (a, b, c) with nonzero non-metricity
};

// Exhaustive over coordinate directions and triples. Q is needed for the
// eigenfunction extraction; throws EigenExtractionFailure when metric
// compatibility holds yet nabla_{d_a} Q fails to be a multiple of Q.
CompatibilityReport check_metric_compatible(const AffineConnection& conn, const SuperMetric& g,
                                            const VectorField& Q);

// nabla^1_X Y = nabla^0_X Y - (nabla^0_X Q) w(Y); requires w(Q) = 1.
AffineConnection make_susy_compatible(const AffineConnection& conn0, const VectorField& Q,
                                      const OneForm& omega);

// Solves the compatibility equations for an even correction tensor with
// free variables pinned to zero; nullopt when the system is inconsistent.
// With constrain_gamma_q set, the rows Gamma(d_a, Q) = 0 are appended.
std::optional<AffineConnection> make_metric_compatible(const AffineConnection& seed,
                                                       const SuperMetric& g,
                                                       const VectorField& Q,
                                                       bool constrain_gamma_q);

// Susy step followed by the constrained metric step; verified against both
// checkers before returning.
AffineConnection make_compatible(const AffineConnection& conn0, const SuperMetric& g,
                                 const VectorField& Q, const OneForm& omega);

// Right-hand side of the graded Koszul identity with torsion terms;
// 2<nabla_X Y|Z> equals this for every metric compatible connection.
SuperFunction koszul_rhs(const AffineConnection& conn, const SuperMetric& g,
                         const VectorField& X, const VectorField& Y, const VectorField& Z);

// Default dual form on a Shander chart: w = d tau.
OneForm shander_omega(const Chart& chart);

} // namespace scarr

#endif
