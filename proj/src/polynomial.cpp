#include "scarr/polynomial.hpp"

#include "scarr/errors.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace scarr {

std::string to_string(const Generator& g) {
    if (g.partials.empty()) return g.base;
    std::string out = g.base;
    for (const auto& c : g.partials) out = "D(" + out + "," + c + ")";
    return out;
}

Monomial::Monomial(Generator g, int exp) {
    if (exp != 0) factors_.emplace_back(std::move(g), exp);
}

int Monomial::total_degree() const {
    int d = 0;
    for (const auto& [g, e] : factors_) d += e;
    return d;
}

int Monomial::degree_of(const Generator& g) const {
    for (const auto& [gen, e] : factors_)
        if (gen == g) return e;
    return 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
    Monomial out;
    auto a = factors_.begin();
    auto b = other.factors_.begin();
    while (a != factors_.end() || b != other.factors_.end()) {
        if (b == other.factors_.end() || (a != factors_.end() && a->first < b->first)) {
            out.factors_.push_back(*a++);
        } else if (a == factors_.end() || b->first < a->first) {
            out.factors_.push_back(*b++);
        } else {
            int e = a->second + b->second;
            if (e != 0) out.factors_.emplace_back(a->first, e);
            ++a;
            ++b;
        }
    }
    return out;
}

bool Monomial::divides(const Monomial& other) const {
    auto b = other.factors_.begin();
    for (const auto& [g, e] : factors_) {
        while (b != other.factors_.end() && b->first < g) ++b;
        if (b == other.factors_.end() || !(b->first == g) || b->second < e) return false;
    }
    return true;
}

Monomial Monomial::divide_by(const Monomial& other) const {
    Monomial out;
    auto b = other.factors_.begin();
    for (const auto& [g, e] : factors_) {
        int sub = 0;
        while (b != other.factors_.end() && b->first < g) ++b;
        if (b != other.factors_.end() && b->first == g) sub = b->second;
        int rem = e - sub;
        assert(rem >= 0);
        if (rem != 0) out.factors_.emplace_back(g, rem);
    }
    return out;
}

bool monomial_less(const Monomial& a, const Monomial& b) {
    int da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db;
    // Lexicographic: first generator (ascending Generator order) with a
    // differing exponent decides; larger exponent means larger monomial.
    auto ia = a.factors().begin();
    auto ib = b.factors().begin();
    while (ia != a.factors().end() && ib != b.factors().end()) {
        if (ia->first < ib->first) {
            // a has a positive power of a generator b lacks.
            return false;
        }
        if (ib->first < ia->first) return true;
        if (ia->second != ib->second) return ia->second < ib->second;
        ++ia;
        ++ib;
    }
    if (ia != a.factors().end()) return false;
    if (ib != b.factors().end()) return true;
    return false;
}

Polynomial Polynomial::constant(Rational q) {
    Polynomial p;
    if (q != 0) p.terms_.emplace(Monomial{}, std::move(q));
    return p;
}

Polynomial Polynomial::generator(Generator g) {
    Polynomial p;
    p.terms_.emplace(Monomial(std::move(g)), Rational(1));
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational Polynomial::constant_value() const {
    if (terms_.empty()) return Rational(0);
    assert(is_constant());
    return terms_.begin()->second;
}

std::optional<Rational> Polynomial::as_rational() const {
    if (!is_constant()) return std::nullopt;
    return constant_value();
}

const Monomial& Polynomial::leading_monomial() const {
    assert(!terms_.empty());
    return terms_.rbegin()->first;
}

const Rational& Polynomial::leading_coefficient() const {
    assert(!terms_.empty());
    return terms_.rbegin()->second;
}

void Polynomial::add_term(const Monomial& m, const Rational& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms_.emplace(m, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial Polynomial::operator-() const {
    Polynomial out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
    Polynomial out = *this;
    for (const auto& [m, c] : other.terms_) out.add_term(m, c);
    return out;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
    Polynomial out = *this;
    for (const auto& [m, c] : other.terms_) out.add_term(m, -c);
    return out;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
    Polynomial out;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : other.terms_) out.add_term(ma * mb, ca * cb);
    return out;
}

Polynomial Polynomial::operator*(const Rational& q) const {
    if (q == 0) return Polynomial{};
    Polynomial out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, c * q);
    return out;
}

Polynomial Polynomial::diff(const SymbolScope& scope, const std::string& coord) const {
    if (const auto* c = scope.find_coordinate(coord)) {
        if (c->parity != Parity::Even) throw OddCoordinate(coord);
    } else {
        throw UnknownSymbol(coord);
    }
    Polynomial out;
    for (const auto& [m, c] : terms_) {
        for (std::size_t i = 0; i < m.factors().size(); ++i) {
            const auto& [g, e] = m.factors()[i];
            if (scope.partial_vanishes(g.base, coord)) continue;
            // d(g^e)/dc = e * g^(e-1) * dg/dc, with dg/dc either 1 (the
            // coordinate itself) or a fresh derivative generator.
            Monomial rest;
            for (std::size_t j = 0; j < m.factors().size(); ++j) {
                if (j == i) {
                    if (e > 1) rest = rest * Monomial(g, e - 1);
                } else {
                    rest = rest * Monomial(m.factors()[j].first, m.factors()[j].second);
                }
            }
            if (scope.find_coordinate(g.base) != nullptr) {
                out.add_term(rest, c * e);
            } else {
                Generator dg = g;
                dg.partials.push_back(coord);
                std::sort(dg.partials.begin(), dg.partials.end());
                out.add_term(rest * Monomial(std::move(dg)), c * e);
            }
        }
    }
    return out;
}

int Polynomial::min_degree_of(const Generator& g) const {
    if (terms_.empty()) return 0;
    int md = -1;
    for (const auto& [m, c] : terms_) {
        int d = m.degree_of(g);
        if (md < 0 || d < md) md = d;
        if (md == 0) break;
    }
    return md;
}

int Polynomial::max_degree_of(const Generator& g) const {
    int md = 0;
    for (const auto& [m, c] : terms_) md = std::max(md, m.degree_of(g));
    return md;
}

std::vector<Generator> Polynomial::generators() const {
    std::vector<Generator> out;
    for (const auto& [m, c] : terms_)
        for (const auto& [g, e] : m.factors())
            if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
    std::sort(out.begin(), out.end());
    return out;
}

bool Polynomial::contains_generator_base(const std::string& base) const {
    for (const auto& [m, c] : terms_)
        for (const auto& [g, e] : m.factors())
            if (g.base == base) return true;
    return false;
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Print leading term first (descending graded-lex).
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        Rational abs_c = c < 0 ? Rational(-c) : c;
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        bool coeff_printed = false;
        if (m.empty() || abs_c != 1) {
            os << to_string(abs_c);
            coeff_printed = true;
        }
        for (const auto& [g, e] : m.factors()) {
            if (coeff_printed) os << "*";
            os << to_string(g);
            if (e != 1) os << "^" << e;
            coeff_printed = true;
        }
    }
    return os.str();
}

std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b) {
    assert(!b.is_zero());
    Polynomial rem = a;
    Polynomial quot;
    while (!rem.is_zero()) {
        const Monomial& lm = rem.leading_monomial();
        if (!b.leading_monomial().divides(lm)) return std::nullopt;
        Monomial q = lm.divide_by(b.leading_monomial());
        Rational qc = rem.leading_coefficient() / b.leading_coefficient();
        Polynomial t;
        t.add_term(q, qc);
        quot = quot + t;
        rem = rem - t * b;
    }
    return quot;
}

namespace {

// Integer content normalization: scale so coefficients are coprime
// integers and the leading one is positive.
Polynomial primitive_part(const Polynomial& p) {
    if (p.is_zero()) return p;
    BigInt num_gcd = 0;
    BigInt den_lcm = 1;
    for (const auto& [m, c] : p.terms()) {
        num_gcd = boost::multiprecision::gcd(num_gcd, rational_num(c));
        den_lcm = boost::multiprecision::lcm(den_lcm, rational_den(c));
    }
    Rational scale(den_lcm, num_gcd);
    if (p.leading_coefficient() < 0) scale = -scale;
    return p * scale;
}

struct UnivariateView {
    // Coefficients by degree in the selected generator.
    std::map<int, Polynomial> coeffs;
    int degree = 0;
};

UnivariateView split_by(const Polynomial& p, const Generator& x) {
    UnivariateView v;
    for (const auto& [m, c] : p.terms()) {
        int d = m.degree_of(x);
        Monomial rest;
        for (const auto& [g, e] : m.factors())
            if (!(g == x)) rest = rest * Monomial(g, e);
        v.coeffs[d].add_term(rest, c);
        v.degree = std::max(v.degree, d);
    }
    for (auto it = v.coeffs.begin(); it != v.coeffs.end();) {
        if (it->second.is_zero())
            it = v.coeffs.erase(it);
        else
            ++it;
    }
    return v;
}

Polynomial content_in(const Polynomial& p, const Generator& x) {
    UnivariateView v = split_by(p, x);
    Polynomial g;
    for (const auto& [d, coeff] : v.coeffs) g = gcd(g, coeff);
    return g;
}

// Pseudo-remainder of a by b in the generator x (cross-multiplication
// variant; fine at the scale of this ring).
Polynomial pseudo_rem(Polynomial a, const Polynomial& b, const Generator& x) {
    int db = b.max_degree_of(x);
    UnivariateView bv = split_by(b, x);
    const Polynomial& lcb = bv.coeffs.rbegin()->second;
    while (!a.is_zero()) {
        int da = a.max_degree_of(x);
        if (da < db) break;
        UnivariateView av = split_by(a, x);
        const Polynomial& lca = av.coeffs.rbegin()->second;
        Polynomial xshift = Polynomial::constant(1);
        for (int i = 0; i < da - db; ++i) xshift = xshift * Polynomial::generator(x);
        a = a * lcb - b * (lca * xshift);
    }
    return a;
}

} // namespace

namespace {

// gcd(single term, p) = the common monomial factor; the dominant case for
// fraction reduction, where denominators are usually monomials.
Polynomial monomial_gcd(const Monomial& m, const Polynomial& p) {
    Monomial out = m;
    for (const auto& [g, e] : m.factors()) {
        int d = p.min_degree_of(g);
        if (d < e) {
            out = out.divide_by(Monomial(g, e - d));
        }
    }
    Polynomial result;
    result.add_term(out, Rational(1));
    return result;
}

} // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() && b.is_zero()) return Polynomial{};
    if (a.is_zero()) return primitive_part(b);
    if (b.is_zero()) return primitive_part(a);
    if (a.is_constant() || b.is_constant()) return Polynomial::constant(1);
    if (a.is_single_term()) return monomial_gcd(a.leading_monomial(), b);
    if (b.is_single_term()) return monomial_gcd(b.leading_monomial(), a);

    // Shared monomial content comes off first; it keeps the remainder
    // sequence small and covers most cancellations that arise in practice.
    Monomial common;
    {
        Polynomial ga = monomial_gcd(a.leading_monomial(), a);
        Polynomial gb = monomial_gcd(b.leading_monomial(), b);
        Polynomial gm = monomial_gcd(ga.leading_monomial(), gb);
        common = gm.leading_monomial();
    }
    if (!common.empty()) {
        Polynomial shift;
        shift.add_term(common, Rational(1));
        Polynomial inner = gcd(*divide_exact(a, shift), *divide_exact(b, shift));
        return primitive_part(inner * shift);
    }

    // Main variable: the smallest generator occurring in either operand.
    std::vector<Generator> gens_a = a.generators();
    std::vector<Generator> gens_b = b.generators();
    Generator x = gens_a.empty() ? gens_b.front()
                                 : (gens_b.empty() || gens_a.front() < gens_b.front())
                                       ? gens_a.front()
                                       : gens_b.front();

    Polynomial ca = content_in(a, x);
    Polynomial cb = content_in(b, x);
    Polynomial cont = gcd(ca, cb);

    Polynomial pa = *divide_exact(a, ca);
    Polynomial pb = *divide_exact(b, cb);

    // Primitive Euclidean remainder sequence in x.
    while (true) {
        int da = pa.max_degree_of(x);
        int db = pb.max_degree_of(x);
        if (da < db) std::swap(pa, pb);
        if (pb.is_zero()) break;
        if (pb.max_degree_of(x) == 0) {
            // Coprime in x; gcd is carried entirely by the contents.
            pa = Polynomial::constant(1);
            pb = Polynomial{};
            break;
        }
        Polynomial r = pseudo_rem(pa, pb, x);
        pa = pb;
        if (r.is_zero()) {
            pb = Polynomial{};
        } else {
            pb = *divide_exact(r, content_in(r, x));
        }
    }
    return primitive_part(cont * pa);
}

} // namespace scarr
