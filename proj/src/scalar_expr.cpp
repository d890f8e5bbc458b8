#include "scarr/scalar_expr.hpp"

#include "scarr/errors.hpp"

#include <cassert>

namespace scarr {

ScalarExpr ScalarExpr::from_rational(Rational q) {
    ScalarExpr e;
    e.num_ = Polynomial::constant(std::move(q));
    return e;
}

ScalarExpr ScalarExpr::from_generator(Generator g) {
    ScalarExpr e;
    e.num_ = Polynomial::generator(std::move(g));
    return e;
}

ScalarExpr ScalarExpr::fraction(Polynomial num, Polynomial den) {
    if (den.is_zero()) throw Error("zero denominator");
    ScalarExpr e;
    if (num.is_zero()) return e;
    Polynomial g = gcd(num, den);
    if (!g.is_constant()) {
        num = *divide_exact(num, g);
        den = *divide_exact(den, g);
    }
    // Make the denominator monic under graded-lex.
    Rational lc = den.leading_coefficient();
    if (lc != 1) {
        Rational inv = Rational(1) / lc;
        num = num * inv;
        den = den * inv;
    }
    e.num_ = std::move(num);
    e.den_ = std::move(den);
    return e;
}

bool ScalarExpr::is_one() const {
    auto q = as_rational();
    return q.has_value() && *q == 1;
}

std::optional<Rational> ScalarExpr::as_rational() const {
    if (!den_.is_constant()) return std::nullopt;
    auto n = num_.as_rational();
    if (!n) return std::nullopt;
    return *n / den_.constant_value();
}

ScalarExpr ScalarExpr::operator-() const {
    ScalarExpr out = *this;
    out.num_ = -out.num_;
    return out;
}

ScalarExpr ScalarExpr::operator+(const ScalarExpr& other) const {
    if (is_zero()) return other;
    if (other.is_zero()) return *this;
    if (den_ == other.den_)
        return fraction(num_ + other.num_, den_);
    return fraction(num_ * other.den_ + other.num_ * den_, den_ * other.den_);
}

ScalarExpr ScalarExpr::operator-(const ScalarExpr& other) const {
    return *this + (-other);
}

ScalarExpr ScalarExpr::operator*(const ScalarExpr& other) const {
    if (is_zero() || other.is_zero()) return zero();
    return fraction(num_ * other.num_, den_ * other.den_);
}

ScalarExpr ScalarExpr::operator/(const ScalarExpr& other) const {
    if (other.is_zero()) throw Error("division by zero expression");
    if (is_zero()) return zero();
    return fraction(num_ * other.den_, den_ * other.num_);
}

ScalarExpr ScalarExpr::pow(int exponent) const {
    if (exponent == 0) return one();
    ScalarExpr base = exponent > 0 ? *this : one() / *this;
    int n = exponent > 0 ? exponent : -exponent;
    ScalarExpr out = one();
    for (int i = 0; i < n; ++i) out = out * base;
    return out;
}

std::string ScalarExpr::str() const {
    if (den_.is_constant()) {
        assert(den_.constant_value() == 1);
        return num_.str();
    }
    std::string n = num_.is_single_term() && !(num_.leading_coefficient() < 0)
                        ? num_.str()
                        : "(" + num_.str() + ")";
    std::string d =
        den_.is_single_term() ? den_.str() : "(" + den_.str() + ")";
    if (den_.is_single_term() && den_.leading_monomial().factors().size() > 1)
        d = "(" + d + ")";
    return n + "/" + d;
}

ScalarExpr diff(const SymbolScope& scope, const ScalarExpr& e, const std::string& coord) {
    Polynomial dn = e.num().diff(scope, coord);
    if (e.den().is_constant()) return ScalarExpr::fraction(dn, e.den());
    Polynomial dd = e.den().diff(scope, coord);
    return ScalarExpr::fraction(dn * e.den() - e.num() * dd, e.den() * e.den());
}

namespace {

bool monomial_nonvanishing(const SymbolScope& scope, const Polynomial& p) {
    if (!p.is_single_term()) return false;
    for (const auto& [g, e] : p.leading_monomial().factors()) {
        // A derivative of a nonvanishing symbol carries no such guarantee.
        if (!g.partials.empty()) return false;
        if (!scope.is_nonvanishing_symbol(g.base)) return false;
    }
    return true;
}

} // namespace

bool provably_nonvanishing(const SymbolScope& scope, const ScalarExpr& e) {
    if (e.is_zero()) return false;
    return monomial_nonvanishing(scope, e.num()) && monomial_nonvanishing(scope, e.den());
}

ScalarExpr checked_div(const SymbolScope& scope, const ScalarExpr& a, const ScalarExpr& b) {
    if (!provably_nonvanishing(scope, b)) throw DivisionByNonDeclared(b.str());
    return a / b;
}

ScalarExpr substitute(const Polynomial& p,
                      const std::function<std::optional<ScalarExpr>(const Generator&)>& map) {
    ScalarExpr out = ScalarExpr::zero();
    for (const auto& [m, c] : p.terms()) {
        ScalarExpr term = ScalarExpr::from_rational(c);
        for (const auto& [g, e] : m.factors()) {
            std::optional<ScalarExpr> repl = map(g);
            ScalarExpr base = repl ? *repl : ScalarExpr::from_generator(g);
            term = term * base.pow(e);
        }
        out = out + term;
    }
    return out;
}

} // namespace scarr
