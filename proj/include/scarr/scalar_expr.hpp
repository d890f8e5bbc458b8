#ifndef SCARR_SCALAR_EXPR_HPP
#define SCARR_SCALAR_EXPR_HPP

#include "scarr/polynomial.hpp"

#include <optional>
#include <string>

namespace scarr {

// Canonical fraction of the differential polynomial ring: numerator and
// denominator are gcd-reduced and the denominator is monic under graded-lex.
// Equality to zero is decided by the numerator being zero. The arithmetic
// here is total field arithmetic (any nonzero denominator); the guarded
// division demanded of user-facing expressions lives in checked_div.
class ScalarExpr {
public:
    ScalarExpr() : num_(), den_(Polynomial::constant(1)) {}

    static ScalarExpr zero() { return ScalarExpr(); }
    static ScalarExpr one() { return from_rational(1); }
    static ScalarExpr from_rational(Rational q);
    static ScalarExpr from_generator(Generator g);
    static ScalarExpr from_symbol(const std::string& name) {
        return from_generator(Generator{name, {}});
    }
    // Takes ownership and canonicalizes.
    static ScalarExpr fraction(Polynomial num, Polynomial den);

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;
    std::optional<Rational> as_rational() const;

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    ScalarExpr operator-() const;
    ScalarExpr operator+(const ScalarExpr& other) const;
    ScalarExpr operator-(const ScalarExpr& other) const;
    ScalarExpr operator*(const ScalarExpr& other) const;
    // Field division; throws Error on a zero divisor.
    ScalarExpr operator/(const ScalarExpr& other) const;

    ScalarExpr& operator+=(const ScalarExpr& o) { return *this = *this + o; }
    ScalarExpr& operator-=(const ScalarExpr& o) { return *this = *this - o; }
    ScalarExpr& operator*=(const ScalarExpr& o) { return *this = *this * o; }

    ScalarExpr pow(int exponent) const;

    friend bool operator==(const ScalarExpr&, const ScalarExpr&) = default;

    std::string str() const;

private:
    Polynomial num_;
    Polynomial den_; // monic, shares no factor with num_
};

// Formal partial derivative by an even coordinate (quotient rule).
// Throws OddCoordinate / UnknownSymbol.
ScalarExpr diff(const SymbolScope& scope, const ScalarExpr& e, const std::string& coord);

// True when `e` is a nonzero rational multiple of a product of powers of
// nonvanishing-declared symbols (underived), over a like denominator.
bool provably_nonvanishing(const SymbolScope& scope, const ScalarExpr& e);

// Division as exposed to expression trees: the divisor must be provably
// nonvanishing. Throws DivisionByNonDeclared.
ScalarExpr checked_div(const SymbolScope& scope, const ScalarExpr& a, const ScalarExpr& b);

} // namespace scarr

#endif
