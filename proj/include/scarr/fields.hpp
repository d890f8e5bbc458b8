#ifndef SCARR_FIELDS_HPP
#define SCARR_FIELDS_HPP

#include "scarr/super_function.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace scarr {

// (-1)^{p * parity(h)} h, extended to inhomogeneous h termwise.
SuperFunction koszul_sign_apply(Parity p, const SuperFunction& h);

// Graded vector field X = X^a d_a, components written to the left of the
// coordinate derivations.
class VectorField {
public:
    explicit VectorField(Chart chart);

    static VectorField zero(const Chart& chart) { return VectorField(chart); }
    static VectorField coordinate_basis(const Chart& chart, std::size_t index);

    const Chart& chart() const { return chart_; }
    std::size_t size() const { return components_.size(); }
    const SuperFunction& component(std::size_t i) const { return components_[i]; }
    void set_component(std::size_t i, SuperFunction f);

    bool is_zero() const;

    // Parity of the field: component for a coordinate of parity q has
    // function parity p + q. nullopt when inhomogeneous.
    std::optional<Parity> parity() const;
    VectorField parity_part(Parity p) const;

    VectorField operator-() const;
    VectorField operator+(const VectorField& other) const;
    VectorField operator-(const VectorField& other) const;
    VectorField& operator+=(const VectorField& o) { return *this = *this + o; }

    bool operator==(const VectorField& other) const {
        return components_ == other.components_;
    }

    std::string str() const;

private:
    Chart chart_;
    std::vector<SuperFunction> components_;
};

// Left module action f X.
VectorField operator*(const SuperFunction& f, const VectorField& X);
// Right scalar multiple X f = (-1)^{|X||f|} f X.
VectorField right_multiply(const VectorField& X, const SuperFunction& f);

// Derivation action X(f) = X^a d_a(f).
SuperFunction apply(const VectorField& X, const SuperFunction& f);

// Graded commutator via [X,Y]^c = X(Y^c) - (-1)^{|X||Y|} Y(X^c); bilinear
// in parity parts for inhomogeneous input.
VectorField lie_bracket(const VectorField& X, const VectorField& Y);

// One-form with the fixed left pairing w(Y) = Y^a w_a.
class OneForm {
public:
    explicit OneForm(Chart chart);
    static OneForm coordinate_dual(const Chart& chart, std::size_t index);

    const Chart& chart() const { return chart_; }
    const SuperFunction& component(std::size_t i) const { return components_[i]; }
    void set_component(std::size_t i, SuperFunction f);

private:
    Chart chart_;
    std::vector<SuperFunction> components_;
};

SuperFunction pair(const OneForm& omega, const VectorField& Y);

// Rank-2 covariant tensor stored as entry(a, b) = value on (d_a, d_b).
class Tensor2 {
public:
    explicit Tensor2(Chart chart);

    const Chart& chart() const { return chart_; }
    const SuperFunction& entry(std::size_t a, std::size_t b) const {
        return entries_[a * chart_.coordinate_count() + b];
    }
    void set_entry(std::size_t a, std::size_t b, SuperFunction f);

    bool is_zero() const;
    // g_ab = (-1)^{parity(a) parity(b)} g_ba.
    bool is_graded_symmetric() const;
    // Entries homogeneous of parity parity(a) + parity(b) (even tensor).
    bool has_even_tensor_parity() const;

    std::string str() const;

private:
    Chart chart_;
    std::vector<SuperFunction> entries_;
};

// Even (1,2)-tensor with components gamma(c, b, a); the associated
// connection-style evaluation is
//   T(X, Y)^c = sum (-1)^{parity(a) * parity(Y^b)} X^a Y^b gamma(c, b, a).
class Tensor12 {
public:
    explicit Tensor12(Chart chart);

    const Chart& chart() const { return chart_; }
    const SuperFunction& component(std::size_t c, std::size_t b, std::size_t a) const;
    void set_component(std::size_t c, std::size_t b, std::size_t a, SuperFunction f);
    bool is_zero() const;

    VectorField evaluate(const VectorField& X, const VectorField& Y) const;

    Tensor12 operator+(const Tensor12& other) const;

    std::string str() const;

private:
    Chart chart_;
    std::vector<SuperFunction> components_;
};

// Invertible chart-to-chart change: even targets are functions of the even
// source coordinates, the single odd coordinate rescales by a nonvanishing
// even factor. Both directions are supplied and verified to compose to the
// identity; the Jacobian determinant must be a unit of the fraction field.
struct CoordinateMap {
    CoordinateMap(Chart src, Chart tgt) : source(std::move(src)), target(std::move(tgt)) {}

    Chart source;
    Chart target;
    std::vector<ScalarExpr> forward_even;  // target even coords in source symbols
    std::vector<ScalarExpr> inverse_even;  // source even coords in target symbols
    ScalarExpr forward_odd_scale = ScalarExpr::one(); // tau' = alpha tau
    ScalarExpr inverse_odd_scale = ScalarExpr::one(); // tau = beta tau'
};

// Throws NonInvertibleJacobian / SubstitutionUnsupported.
void validate(const CoordinateMap& map);

// Pull a function on the source chart back along the inverse map, i.e.
// rewrite it in target coordinates.
SuperFunction rewrite_in_target(const SuperFunction& f, const CoordinateMap& map);

// Component transformation law for rank-2 covariant tensors.
Tensor2 transform_tensor2(const Tensor2& g, const CoordinateMap& map);

} // namespace scarr

#endif
