#include "scarr/super_function.hpp"

#include "scarr/errors.hpp"

#include <bit>
#include <sstream>

namespace scarr {

int grassmann_sign(OddMask left, OddMask right) {
    // Count inversions: pairs (i in left, j in right) with i > j.
    int inversions = 0;
    for (OddMask r = right; r != 0; r &= r - 1) {
        OddMask j = static_cast<OddMask>(std::countr_zero(r));
        OddMask above = left >> (j + 1);
        inversions += std::popcount(above);
    }
    return inversions % 2 == 0 ? 1 : -1;
}

SuperFunction::SuperFunction(Chart chart, ScalarExpr scalar) : chart_(std::move(chart)) {
    if (!scalar.is_zero()) terms_.emplace(OddMask{0}, std::move(scalar));
}

SuperFunction SuperFunction::coordinate(const Chart& chart, std::size_t index) {
    SuperFunction f(chart);
    const auto& c = chart.coordinate(index);
    if (c.parity == Parity::Even) {
        f.terms_.emplace(OddMask{0}, ScalarExpr::from_symbol(c.name));
    } else {
        f.terms_.emplace(OddMask{1u} << chart.odd_position(index), ScalarExpr::one());
    }
    return f;
}

ScalarExpr SuperFunction::coefficient(OddMask mask) const {
    auto it = terms_.find(mask);
    return it == terms_.end() ? ScalarExpr::zero() : it->second;
}

void SuperFunction::set_coefficient(OddMask mask, ScalarExpr value) {
    if (value.is_zero())
        terms_.erase(mask);
    else
        terms_[mask] = std::move(value);
}

std::optional<Parity> SuperFunction::parity() const {
    if (terms_.empty()) return Parity::Even;
    std::optional<Parity> p;
    for (const auto& [mask, coeff] : terms_) {
        Parity q = std::popcount(mask) % 2 == 0 ? Parity::Even : Parity::Odd;
        if (!p)
            p = q;
        else if (*p != q)
            return std::nullopt;
    }
    return p;
}

bool SuperFunction::is_homogeneous(Parity p) const {
    if (terms_.empty()) return true;
    auto q = parity();
    return q.has_value() && *q == p;
}

SuperFunction SuperFunction::parity_part(Parity p) const {
    SuperFunction out(chart_);
    for (const auto& [mask, coeff] : terms_) {
        Parity q = std::popcount(mask) % 2 == 0 ? Parity::Even : Parity::Odd;
        if (q == p) out.terms_.emplace(mask, coeff);
    }
    return out;
}

void SuperFunction::check_chart(const SuperFunction& other) const {
    if (!chart_.same_coordinates(other.chart_)) throw ChartMismatch();
}

SuperFunction SuperFunction::operator-() const {
    SuperFunction out(chart_);
    for (const auto& [mask, coeff] : terms_) out.terms_.emplace(mask, -coeff);
    return out;
}

SuperFunction SuperFunction::operator+(const SuperFunction& other) const {
    check_chart(other);
    SuperFunction out = *this;
    for (const auto& [mask, coeff] : other.terms_)
        out.set_coefficient(mask, out.coefficient(mask) + coeff);
    return out;
}

SuperFunction SuperFunction::operator-(const SuperFunction& other) const {
    check_chart(other);
    SuperFunction out = *this;
    for (const auto& [mask, coeff] : other.terms_)
        out.set_coefficient(mask, out.coefficient(mask) - coeff);
    return out;
}

SuperFunction SuperFunction::operator*(const SuperFunction& other) const {
    check_chart(other);
    SuperFunction out(chart_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : other.terms_) {
            if ((ma & mb) != 0) continue; // repeated odd generator
            int sign = grassmann_sign(ma, mb);
            ScalarExpr c = ca * cb;
            if (sign < 0) c = -c;
            OddMask m = ma | mb;
            out.set_coefficient(m, out.coefficient(m) + c);
        }
    }
    return out;
}

SuperFunction SuperFunction::operator*(const ScalarExpr& s) const {
    SuperFunction out(chart_);
    if (s.is_zero()) return out;
    for (const auto& [mask, coeff] : terms_) out.set_coefficient(mask, coeff * s);
    return out;
}

std::string SuperFunction::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [mask, coeff] : terms_) {
        if (!first) os << " + ";
        first = false;
        if (mask == 0) {
            os << coeff.str();
            continue;
        }
        bool unit = coeff.is_one();
        bool minus_unit = (-coeff).is_one();
        bool printed = false;
        if (minus_unit) {
            os << "-";
        } else if (!unit) {
            bool need_parens = coeff.num().term_count() > 1;
            if (need_parens)
                os << "(" << coeff.str() << ")";
            else
                os << coeff.str();
            printed = true;
        }
        for (OddMask m = mask; m != 0; m &= m - 1) {
            std::size_t pos = static_cast<std::size_t>(std::countr_zero(m));
            if (printed) os << "*";
            os << chart_.coordinate(chart_.even_count() + pos).name;
            printed = true;
        }
    }
    return os.str();
}

SuperFunction diff_even(const SuperFunction& f, const std::string& coord) {
    SuperFunction out(f.chart());
    for (const auto& [mask, coeff] : f.terms())
        out.set_coefficient(mask, diff(f.chart().scope(), coeff, coord));
    return out;
}

SuperFunction odd_partial(const SuperFunction& f, const std::string& coord) {
    auto idx = f.chart().coordinate_index(coord);
    if (!idx) throw UnknownSymbol(coord);
    if (f.chart().coordinate_parity(*idx) != Parity::Odd) throw EvenCoordinate(coord);
    OddMask bit = OddMask{1u} << f.chart().odd_position(*idx);

    SuperFunction out(f.chart());
    for (const auto& [mask, coeff] : f.terms()) {
        if ((mask & bit) == 0) continue;
        // Left derivative: anticommute the factor to the front, then drop it.
        int below = std::popcount(mask & (bit - 1));
        ScalarExpr c = below % 2 == 0 ? coeff : -coeff;
        out.set_coefficient(mask & ~bit, out.coefficient(mask & ~bit) + c);
    }
    return out;
}

ScalarExpr reduce_eps(const SuperFunction& f) {
    return f.coefficient(0);
}

} // namespace scarr
