#include "scarr/lie_superalgebra.hpp"

#include "scarr/errors.hpp"

#include <sstream>

namespace scarr {

PlaceholderSet::PlaceholderSet(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i) index_.emplace(names_[i], i);
}

LinearForm PlaceholderSet::extract(const ScalarExpr& e) const {
    LinearForm form;
    form.coefficients.assign(names_.size(), ScalarExpr::zero());
    form.constant = ScalarExpr::zero();

    for (const auto& [m, c] : e.den().terms())
        for (const auto& [g, exp] : m.factors())
            if (contains(g.base))
                throw Error("placeholder " + g.base + " appears in a denominator");

    for (const auto& [m, c] : e.num().terms()) {
        int placeholder_count = 0;
        std::size_t which = 0;
        Monomial rest;
        for (const auto& [g, exp] : m.factors()) {
            if (contains(g.base)) {
                if (!g.partials.empty())
                    throw Error("placeholder " + g.base + " appears differentiated");
                placeholder_count += exp;
                which = index_of(g.base);
            } else {
                rest = rest * Monomial(g, exp);
            }
        }
        if (placeholder_count > 1)
            throw Error("equation is not linear in the placeholders");
        Polynomial part;
        part.add_term(rest, c);
        ScalarExpr value = ScalarExpr::fraction(std::move(part), e.den());
        if (placeholder_count == 0)
            form.constant += value;
        else
            form.coefficients[which] += value;
    }
    return form;
}

namespace {

std::string basis_name(const std::string& prefix, std::size_t i) {
    return prefix + std::to_string(i + 1);
}

} // namespace

LieSuperAlgebraPresentation present_lie_superalgebra(std::vector<VectorField> even_basis,
                                                     std::vector<VectorField> odd_basis,
                                                     std::vector<std::string> even_names,
                                                     std::vector<std::string> odd_names) {
    LieSuperAlgebraPresentation p;
    p.even_basis = std::move(even_basis);
    p.odd_basis = std::move(odd_basis);
    if (even_names.empty())
        for (std::size_t i = 0; i < p.even_basis.size(); ++i)
            even_names.push_back(basis_name("E", i));
    if (odd_names.empty())
        for (std::size_t i = 0; i < p.odd_basis.size(); ++i)
            odd_names.push_back(basis_name("O", i));
    p.even_names = std::move(even_names);
    p.odd_names = std::move(odd_names);

    const std::size_t total = p.dimension();
    p.structure_constants.assign(total, std::vector<std::vector<Rational>>(
                                            total, std::vector<Rational>(total, Rational(0))));

    for (std::size_t i = 0; i < total; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            VectorField bracket = lie_bracket(p.element(i), p.element(j));
            auto coeffs = express_in_span(bracket, p.all_elements());
            if (!coeffs)
                throw ClosureFailure("[" + p.name(i) + "," + p.name(j) +
                                     "] = " + bracket.str() + " leaves the span");
            for (std::size_t k = 0; k < total; ++k) p.structure_constants[i][j][k] = (*coeffs)[k];
            // Graded antisymmetry fills the mirror entry.
            bool both_odd = p.parity_of(i) == Parity::Odd && p.parity_of(j) == Parity::Odd;
            for (std::size_t k = 0; k < total; ++k)
                p.structure_constants[j][i][k] =
                    both_odd ? (*coeffs)[k] : -(*coeffs)[k];
        }
    }
    return p;
}

std::size_t LieSuperAlgebraPresentation::dimension() const {
    return even_basis.size() + odd_basis.size();
}

const VectorField& LieSuperAlgebraPresentation::element(std::size_t i) const {
    return i < even_basis.size() ? even_basis[i] : odd_basis[i - even_basis.size()];
}

Parity LieSuperAlgebraPresentation::parity_of(std::size_t i) const {
    return i < even_basis.size() ? Parity::Even : Parity::Odd;
}

const std::string& LieSuperAlgebraPresentation::name(std::size_t i) const {
    return i < even_basis.size() ? even_names[i] : odd_names[i - even_basis.size()];
}

std::vector<VectorField> LieSuperAlgebraPresentation::all_elements() const {
    std::vector<VectorField> out = even_basis;
    out.insert(out.end(), odd_basis.begin(), odd_basis.end());
    return out;
}

bool LieSuperAlgebraPresentation::brackets_close() const {
    const std::size_t total = dimension();
    for (std::size_t i = 0; i < total; ++i) {
        for (std::size_t j = 0; j < total; ++j) {
            VectorField expected = lie_bracket(element(i), element(j));
            for (std::size_t k = 0; k < total; ++k) {
                Rational c = structure_constants[i][j][k];
                if (c == 0) continue;
                SuperFunction coeff =
                    SuperFunction::constant(element(k).chart(), c);
                expected = expected - coeff * element(k);
            }
            if (!expected.is_zero()) return false;
        }
    }
    return true;
}

std::string LieSuperAlgebraPresentation::bracket_table() const {
    std::ostringstream os;
    const std::size_t total = dimension();
    bool any = false;
    for (std::size_t i = 0; i < total; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            std::ostringstream rhs;
            bool nonzero = false;
            for (std::size_t k = 0; k < total; ++k) {
                const Rational& c = structure_constants[i][j][k];
                if (c == 0) continue;
                if (nonzero) rhs << " + ";
                if (c == 1)
                    rhs << name(k);
                else if (c == -1)
                    rhs << "-" << name(k);
                else
                    rhs << to_string(c) << "*" << name(k);
                nonzero = true;
            }
            if (!nonzero) continue;
            if (any) os << "; ";
            os << "[" << name(i) << "," << name(j) << "] = " << rhs.str();
            any = true;
        }
    }
    if (!any) return "abelian";
    return os.str();
}

std::optional<std::vector<Rational>> express_in_span(const VectorField& target,
                                                     const std::vector<VectorField>& basis) {
    if (basis.empty()) {
        if (target.is_zero()) return std::vector<Rational>{};
        return std::nullopt;
    }
    const Chart& chart = basis.front().chart();

    // Unknown rational coefficients c_k with sum c_k basis_k = target,
    // matched coefficientwise over every (component, odd mask, monomial).
    struct Key {
        std::size_t component;
        OddMask mask;
        Monomial monomial;
        bool operator<(const Key& o) const {
            if (component != o.component) return component < o.component;
            if (mask != o.mask) return mask < o.mask;
            return monomial_less(monomial, o.monomial);
        }
    };
    std::map<Key, std::pair<std::vector<Rational>, Rational>> rows;
    auto add_entry = [&](const VectorField& f, std::size_t basis_index, bool is_target) {
        for (std::size_t comp = 0; comp < f.size(); ++comp) {
            for (const auto& [mask, coeff] : f.component(comp).terms()) {
                if (!coeff.den().is_constant())
                    throw UnsupportedCoefficients("fractional entry in span membership: " +
                                                  coeff.str());
                for (const auto& [mono, c] : coeff.num().terms()) {
                    auto& row = rows[Key{comp, mask, mono}];
                    row.first.resize(basis.size(), Rational(0));
                    if (is_target)
                        row.second = c;
                    else
                        row.first[basis_index] = c;
                }
            }
        }
    };
    for (std::size_t k = 0; k < basis.size(); ++k) {
        if (!basis[k].chart().same_coordinates(chart)) throw ChartMismatch();
        add_entry(basis[k], k, false);
    }
    add_entry(target, 0, true);

    ExprMatrix A;
    ExprVector b;
    for (auto& [key, row] : rows) {
        row.first.resize(basis.size(), Rational(0));
        ExprVector r;
        r.reserve(basis.size());
        for (const auto& c : row.first) r.push_back(ScalarExpr::from_rational(c));
        A.push_back(std::move(r));
        b.push_back(ScalarExpr::from_rational(row.second));
    }
    LinearSolveResult res = solve_linear_system(std::move(A), std::move(b));
    if (!res.consistent) return std::nullopt;
    std::vector<Rational> out;
    out.reserve(basis.size());
    for (const auto& e : res.particular) {
        auto q = e.as_rational();
        if (!q) throw UnsupportedCoefficients("non-rational span coefficient");
        out.push_back(*q);
    }
    return out;
}

} // namespace scarr
