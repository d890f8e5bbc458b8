#ifndef SCARR_POLYNOMIAL_HPP
#define SCARR_POLYNOMIAL_HPP

#include "scarr/rational.hpp"
#include "scarr/symbols.hpp"

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace scarr {

// One multiplicative generator of the free differential ring: a coordinate,
// a function symbol, or a formal partial derivative of a function symbol.
// Partials commute, so they are kept as a sorted multiset of coordinate
// names.
struct Generator {
    std::string base;
    std::vector<std::string> partials;

    friend auto operator<=>(const Generator&, const Generator&) = default;
};

std::string to_string(const Generator& g);

// Sorted sparse exponent vector. Comparison is graded lexicographic, which
// is a genuine monomial order: total degree first, then the first generator
// (in Generator order) with differing exponent decides, higher exponent
// being larger.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(Generator g, int exp = 1);

    bool empty() const { return factors_.empty(); }
    int total_degree() const;
    int degree_of(const Generator& g) const;
    const std::vector<std::pair<Generator, int>>& factors() const { return factors_; }

    Monomial operator*(const Monomial& other) const;
    bool divides(const Monomial& other) const;
    // Requires divides(other) == false direction: *this / other.
    Monomial divide_by(const Monomial& other) const;

    friend bool operator==(const Monomial&, const Monomial&) = default;

private:
    std::vector<std::pair<Generator, int>> factors_;
};

// Graded-lex order; strict weak ordering usable as a map comparator.
bool monomial_less(const Monomial& a, const Monomial& b);

struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return monomial_less(a, b);
    }
};

// Multivariate polynomial with rational coefficients over the free
// differential ring generators. Zero coefficients are never stored.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational, MonomialLess>;

    Polynomial() = default;
    static Polynomial constant(Rational q);
    static Polynomial generator(Generator g);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Defined for constants only.
    Rational constant_value() const;
    std::optional<Rational> as_rational() const;
    bool is_single_term() const { return terms_.size() == 1; }

    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    // Leading term under graded-lex.
    const Monomial& leading_monomial() const;
    const Rational& leading_coefficient() const;

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& other) const;
    Polynomial operator-(const Polynomial& other) const;
    Polynomial operator*(const Polynomial& other) const;
    Polynomial operator*(const Rational& q) const;

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

    void add_term(const Monomial& m, const Rational& coeff);

    // Formal partial derivative by an even coordinate; scope supplies the
    // dependency information for function symbols.
    Polynomial diff(const SymbolScope& scope, const std::string& coord) const;

    // Highest power of `g` dividing every term; 0 for the zero polynomial.
    int min_degree_of(const Generator& g) const;
    int max_degree_of(const Generator& g) const;

    std::vector<Generator> generators() const;
    bool contains_generator_base(const std::string& base) const;

    std::string str() const;

private:
    TermMap terms_;
};

inline Polynomial operator*(const Rational& q, const Polynomial& p) { return p * q; }

// Exact multivariate division; nullopt when b does not divide a.
std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b);

// Primitive multivariate gcd over the rationals. The result is normalized
// to integer-primitive form with positive leading coefficient; constants
// collapse to 1. gcd(0, b) = normalized b.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

// Substitute generators by fractions; identity for generators the callback
// declines. Used by coordinate transformations. Declared here, defined
// with ScalarExpr.
class ScalarExpr;
ScalarExpr substitute(const Polynomial& p,
                      const std::function<std::optional<ScalarExpr>(const Generator&)>& map);

} // namespace scarr

#endif
