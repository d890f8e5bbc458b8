#ifndef SCARR_SUPER_FUNCTION_HPP
#define SCARR_SUPER_FUNCTION_HPP

#include "scarr/chart.hpp"
#include "scarr/scalar_expr.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace scarr {

// Grassmann monomial over the odd coordinates of a chart: bit i set means
// the i-th odd coordinate occurs, factors ordered by ascending index.
using OddMask = std::uint32_t;

// Sign of reordering the concatenation of two disjoint masks into ascending
// order; 0 is never returned (caller checks disjointness).
int grassmann_sign(OddMask left, OddMask right);

// Local model of a function on the supermanifold: finite sum of Grassmann
// monomials with ScalarExpr coefficients. Immutable value semantics.
class SuperFunction {
public:
    explicit SuperFunction(Chart chart) : chart_(std::move(chart)) {}
    SuperFunction(Chart chart, ScalarExpr scalar);

    static SuperFunction zero(const Chart& chart) { return SuperFunction(chart); }
    static SuperFunction constant(const Chart& chart, Rational q) {
        return SuperFunction(chart, ScalarExpr::from_rational(std::move(q)));
    }
    // The coordinate as a superfunction (even: polynomial generator; odd:
    // the corresponding Grassmann monomial).
    static SuperFunction coordinate(const Chart& chart, std::size_t index);

    const Chart& chart() const { return chart_; }
    const std::map<OddMask, ScalarExpr>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    ScalarExpr coefficient(OddMask mask) const;
    void set_coefficient(OddMask mask, ScalarExpr value);

    // Parity of a homogeneous value; nullopt when inhomogeneous. Zero
    // counts as homogeneous of either parity (reported Even).
    std::optional<Parity> parity() const;
    bool is_homogeneous(Parity p) const;
    SuperFunction parity_part(Parity p) const;

    SuperFunction operator-() const;
    SuperFunction operator+(const SuperFunction& other) const;
    SuperFunction operator-(const SuperFunction& other) const;
    SuperFunction operator*(const SuperFunction& other) const; // Grassmann product
    SuperFunction operator*(const ScalarExpr& s) const;
    SuperFunction& operator+=(const SuperFunction& o) { return *this = *this + o; }
    SuperFunction& operator-=(const SuperFunction& o) { return *this = *this - o; }

    bool operator==(const SuperFunction& other) const {
        return chart_.same_coordinates(other.chart_) && terms_ == other.terms_;
    }

    std::string str() const;

private:
    void check_chart(const SuperFunction& other) const;

    Chart chart_;
    std::map<OddMask, ScalarExpr> terms_;
};

// Formal partial derivative by an even coordinate, applied coefficientwise.
SuperFunction diff_even(const SuperFunction& f, const std::string& coord);

// Left derivative by an odd coordinate. Throws EvenCoordinate.
SuperFunction odd_partial(const SuperFunction& f, const std::string& coord);

// Coefficient of the empty Grassmann monomial (the sheaf morphism onto the
// underlying manifold).
ScalarExpr reduce_eps(const SuperFunction& f);

} // namespace scarr

#endif
