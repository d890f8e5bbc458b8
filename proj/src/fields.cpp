#include "scarr/fields.hpp"

#include "scarr/errors.hpp"
#include "scarr/linear_solver.hpp"

#include <cassert>
#include <sstream>

namespace scarr {

SuperFunction koszul_sign_apply(Parity p, const SuperFunction& h) {
    if (p == Parity::Even) return h;
    return h.parity_part(Parity::Even) - h.parity_part(Parity::Odd);
}

VectorField::VectorField(Chart chart)
    : chart_(std::move(chart)),
      components_(chart_.coordinate_count(), SuperFunction::zero(chart_)) {}

VectorField VectorField::coordinate_basis(const Chart& chart, std::size_t index) {
    VectorField X(chart);
    X.components_[index] = SuperFunction::constant(chart, 1);
    return X;
}

void VectorField::set_component(std::size_t i, SuperFunction f) {
    if (!f.chart().same_coordinates(chart_)) throw ChartMismatch();
    components_[i] = std::move(f);
}

bool VectorField::is_zero() const {
    for (const auto& c : components_)
        if (!c.is_zero()) return false;
    return true;
}

std::optional<Parity> VectorField::parity() const {
    std::optional<Parity> p;
    for (std::size_t i = 0; i < components_.size(); ++i) {
        if (components_[i].is_zero()) continue;
        auto cp = components_[i].parity();
        if (!cp) return std::nullopt;
        Parity field_parity = *cp + chart_.coordinate_parity(i);
        if (!p)
            p = field_parity;
        else if (*p != field_parity)
            return std::nullopt;
    }
    return p ? p : std::optional<Parity>(Parity::Even);
}

VectorField VectorField::parity_part(Parity p) const {
    VectorField out(chart_);
    for (std::size_t i = 0; i < components_.size(); ++i)
        out.components_[i] = components_[i].parity_part(p + chart_.coordinate_parity(i));
    return out;
}

VectorField VectorField::operator-() const {
    VectorField out(chart_);
    for (std::size_t i = 0; i < components_.size(); ++i) out.components_[i] = -components_[i];
    return out;
}

VectorField VectorField::operator+(const VectorField& other) const {
    if (!chart_.same_coordinates(other.chart_)) throw ChartMismatch();
    VectorField out(chart_);
    for (std::size_t i = 0; i < components_.size(); ++i)
        out.components_[i] = components_[i] + other.components_[i];
    return out;
}

VectorField VectorField::operator-(const VectorField& other) const {
    return *this + (-other);
}

std::string VectorField::str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < components_.size(); ++i) {
        if (components_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        std::string c = components_[i].str();
        if (c == "1") {
            os << "d(" << chart_.coordinate(i).name << ")";
        } else {
            bool parens = components_[i].terms().size() > 1 ||
                          components_[i].terms().begin()->second.num().term_count() > 1;
            os << (parens ? "(" + c + ")" : c) << "*d(" << chart_.coordinate(i).name << ")";
        }
    }
    if (first) return "0";
    return os.str();
}

VectorField operator*(const SuperFunction& f, const VectorField& X) {
    VectorField out(X.chart());
    for (std::size_t i = 0; i < X.size(); ++i) out.set_component(i, f * X.component(i));
    return out;
}

VectorField right_multiply(const VectorField& X, const SuperFunction& f) {
    VectorField out(X.chart());
    for (Parity p : {Parity::Even, Parity::Odd}) {
        VectorField Xp = X.parity_part(p);
        if (Xp.is_zero()) continue;
        out += koszul_sign_apply(p, f) * Xp;
    }
    return out;
}

SuperFunction apply(const VectorField& X, const SuperFunction& f) {
    if (!X.chart().same_coordinates(f.chart())) throw ChartMismatch();
    const Chart& chart = X.chart();
    SuperFunction out = SuperFunction::zero(f.chart());
    for (std::size_t a = 0; a < chart.coordinate_count(); ++a) {
        if (X.component(a).is_zero()) continue;
        const auto& coord = chart.coordinate(a);
        SuperFunction da_f = coord.parity == Parity::Even ? diff_even(f, coord.name)
                                                          : odd_partial(f, coord.name);
        out += X.component(a) * da_f;
    }
    return out;
}

namespace {

VectorField bracket_homogeneous(const VectorField& X, Parity px,
                                const VectorField& Y, Parity py) {
    VectorField out(X.chart());
    int sign = (px == Parity::Odd && py == Parity::Odd) ? -1 : 1;
    for (std::size_t c = 0; c < X.size(); ++c) {
        SuperFunction term = apply(X, Y.component(c));
        SuperFunction flip = apply(Y, X.component(c));
        out.set_component(c, sign < 0 ? term + flip : term - flip);
    }
    return out;
}

} // namespace

VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
    if (!X.chart().same_coordinates(Y.chart())) throw ChartMismatch();
    VectorField out(X.chart());
    for (Parity px : {Parity::Even, Parity::Odd}) {
        VectorField Xp = X.parity_part(px);
        if (Xp.is_zero()) continue;
        for (Parity py : {Parity::Even, Parity::Odd}) {
            VectorField Yp = Y.parity_part(py);
            if (Yp.is_zero()) continue;
            out += bracket_homogeneous(Xp, px, Yp, py);
        }
    }
    return out;
}

OneForm::OneForm(Chart chart)
    : chart_(std::move(chart)),
      components_(chart_.coordinate_count(), SuperFunction::zero(chart_)) {}

OneForm OneForm::coordinate_dual(const Chart& chart, std::size_t index) {
    OneForm w(chart);
    w.components_[index] = SuperFunction::constant(chart, 1);
    return w;
}

void OneForm::set_component(std::size_t i, SuperFunction f) {
    if (!f.chart().same_coordinates(chart_)) throw ChartMismatch();
    components_[i] = std::move(f);
}

SuperFunction pair(const OneForm& omega, const VectorField& Y) {
    if (!omega.chart().same_coordinates(Y.chart())) throw ChartMismatch();
    SuperFunction out = SuperFunction::zero(Y.chart());
    for (std::size_t a = 0; a < Y.size(); ++a)
        out += Y.component(a) * omega.component(a);
    return out;
}

Tensor2::Tensor2(Chart chart)
    : chart_(std::move(chart)),
      entries_(chart_.coordinate_count() * chart_.coordinate_count(),
               SuperFunction::zero(chart_)) {}

void Tensor2::set_entry(std::size_t a, std::size_t b, SuperFunction f) {
    if (!f.chart().same_coordinates(chart_)) throw ChartMismatch();
    entries_[a * chart_.coordinate_count() + b] = std::move(f);
}

bool Tensor2::is_zero() const {
    for (const auto& e : entries_)
        if (!e.is_zero()) return false;
    return true;
}

bool Tensor2::is_graded_symmetric() const {
    const std::size_t n = chart_.coordinate_count();
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            Parity pa = chart_.coordinate_parity(a);
            Parity pb = chart_.coordinate_parity(b);
            SuperFunction mirror = entry(b, a);
            if (pa == Parity::Odd && pb == Parity::Odd) mirror = -mirror;
            if (!(entry(a, b) == mirror)) return false;
        }
    }
    return true;
}

bool Tensor2::has_even_tensor_parity() const {
    const std::size_t n = chart_.coordinate_count();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            Parity expected = chart_.coordinate_parity(a) + chart_.coordinate_parity(b);
            if (!entry(a, b).is_homogeneous(expected)) return false;
        }
    return true;
}

std::string Tensor2::str() const {
    std::ostringstream os;
    const std::size_t n = chart_.coordinate_count();
    bool first = true;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (entry(a, b).is_zero()) continue;
            if (!first) os << "; ";
            first = false;
            os << "(" << chart_.coordinate(a).name << "," << chart_.coordinate(b).name
               << ") = " << entry(a, b).str();
        }
    if (first) return "0";
    return os.str();
}

Tensor12::Tensor12(Chart chart)
    : chart_(std::move(chart)),
      components_(chart_.coordinate_count() * chart_.coordinate_count() *
                      chart_.coordinate_count(),
                  SuperFunction::zero(chart_)) {}

const SuperFunction& Tensor12::component(std::size_t c, std::size_t b, std::size_t a) const {
    const std::size_t n = chart_.coordinate_count();
    return components_[(c * n + b) * n + a];
}

void Tensor12::set_component(std::size_t c, std::size_t b, std::size_t a, SuperFunction f) {
    if (!f.chart().same_coordinates(chart_)) throw ChartMismatch();
    const std::size_t n = chart_.coordinate_count();
    components_[(c * n + b) * n + a] = std::move(f);
}

bool Tensor12::is_zero() const {
    for (const auto& e : components_)
        if (!e.is_zero()) return false;
    return true;
}

VectorField Tensor12::evaluate(const VectorField& X, const VectorField& Y) const {
    if (!X.chart().same_coordinates(chart_) || !Y.chart().same_coordinates(chart_))
        throw ChartMismatch();
    const std::size_t n = chart_.coordinate_count();
    VectorField out(chart_);
    for (std::size_t c = 0; c < n; ++c) {
        SuperFunction acc = SuperFunction::zero(chart_);
        for (std::size_t a = 0; a < n; ++a) {
            if (X.component(a).is_zero()) continue;
            Parity pa = chart_.coordinate_parity(a);
            for (std::size_t b = 0; b < n; ++b) {
                if (Y.component(b).is_zero() || component(c, b, a).is_zero()) continue;
                acc += X.component(a) * koszul_sign_apply(pa, Y.component(b)) *
                       component(c, b, a);
            }
        }
        out.set_component(c, acc);
    }
    return out;
}

Tensor12 Tensor12::operator+(const Tensor12& other) const {
    if (!chart_.same_coordinates(other.chart_)) throw ChartMismatch();
    Tensor12 out(chart_);
    for (std::size_t i = 0; i < components_.size(); ++i)
        out.components_[i] = components_[i] + other.components_[i];
    return out;
}

std::string Tensor12::str() const {
    std::ostringstream os;
    const std::size_t n = chart_.coordinate_count();
    bool first = true;
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t a = 0; a < n; ++a) {
                if (component(c, b, a).is_zero()) continue;
                if (!first) os << "; ";
                first = false;
                os << "Gamma(" << chart_.coordinate(c).name << "; "
                   << chart_.coordinate(b).name << ", " << chart_.coordinate(a).name
                   << ") = " << component(c, b, a).str();
            }
    if (first) return "0";
    return os.str();
}

namespace {

// Substitute source symbols by target expressions inside a ScalarExpr.
// Function symbols survive only when none of their dependencies moved.
ScalarExpr rewrite_scalar(const ScalarExpr& e, const CoordinateMap& map) {
    auto rewrite_poly = [&](const Polynomial& p) -> ScalarExpr {
        return substitute(p, [&](const Generator& g) -> std::optional<ScalarExpr> {
            if (auto idx = map.source.coordinate_index(g.base)) {
                if (!g.partials.empty())
                    throw SubstitutionUnsupported("derivative generator " + to_string(g));
                if (map.source.coordinate_parity(*idx) == Parity::Odd)
                    throw SubstitutionUnsupported("odd coordinate inside a scalar");
                return map.inverse_even[*idx];
            }
            if (const auto* f = map.source.scope().find_function(g.base)) {
                for (const auto& dep : f->depends_on) {
                    auto didx = map.source.coordinate_index(dep);
                    ScalarExpr identity = ScalarExpr::from_symbol(dep);
                    if (didx && !(map.inverse_even[*didx] == identity))
                        throw SubstitutionUnsupported("function symbol " + g.base +
                                                      " depends on a transformed coordinate");
                }
                return std::nullopt; // keep verbatim
            }
            return std::nullopt;
        });
    };
    ScalarExpr num = rewrite_poly(e.num());
    ScalarExpr den = rewrite_poly(e.den());
    return num / den;
}

} // namespace

SuperFunction rewrite_in_target(const SuperFunction& f, const CoordinateMap& map) {
    SuperFunction out = SuperFunction::zero(map.target);
    const bool has_odd = map.source.odd_count() == 1;
    SuperFunction odd_factor = SuperFunction::zero(map.target);
    if (has_odd) {
        // tau_source = beta tau_target
        odd_factor = SuperFunction::coordinate(map.target, map.target.even_count()) *
                     map.inverse_odd_scale;
    }
    for (const auto& [mask, coeff] : f.terms()) {
        SuperFunction term(map.target, rewrite_scalar(coeff, map));
        if (mask != 0) {
            assert(has_odd && mask == 1);
            term = term * odd_factor;
        }
        out += term;
    }
    return out;
}

void validate(const CoordinateMap& map) {
    if (map.source.even_count() != map.target.even_count() ||
        map.source.odd_count() != map.target.odd_count())
        throw NonInvertibleJacobian("dimension mismatch");
    if (map.source.odd_count() > 1)
        throw UnsupportedOddDimension(map.source.odd_count());
    if (map.forward_even.size() != map.target.even_count() ||
        map.inverse_even.size() != map.source.even_count())
        throw NonInvertibleJacobian("wrong number of component expressions");

    // forward o inverse = identity on the target chart.
    for (std::size_t i = 0; i < map.target.even_count(); ++i) {
        ScalarExpr composed =
            substitute(map.forward_even[i].num(),
                       [&](const Generator& g) -> std::optional<ScalarExpr> {
                           if (auto idx = map.source.coordinate_index(g.base)) {
                               if (!g.partials.empty())
                                   throw SubstitutionUnsupported("derivative generator");
                               return map.inverse_even[*idx];
                           }
                           return std::nullopt;
                       }) /
            substitute(map.forward_even[i].den(),
                       [&](const Generator& g) -> std::optional<ScalarExpr> {
                           if (auto idx = map.source.coordinate_index(g.base))
                               return map.inverse_even[*idx];
                           return std::nullopt;
                       });
        ScalarExpr expected = ScalarExpr::from_symbol(map.target.coordinate(i).name);
        if (!(composed == expected))
            throw NonInvertibleJacobian("forward and inverse do not compose to the identity at " +
                                        map.target.coordinate(i).name);
    }

    // Jacobian of the inverse must have unit determinant in the fraction field.
    const std::size_t n = map.source.even_count();
    ExprMatrix J(n, ExprVector(n, ScalarExpr::zero()));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t ap = 0; ap < n; ++ap)
            J[a][ap] = diff(map.target.scope(), map.inverse_even[a],
                            map.target.coordinate(ap).name);
    if (determinant(J).is_zero())
        throw NonInvertibleJacobian("inverse Jacobian determinant vanishes");

    if (map.source.odd_count() == 1) {
        if (map.forward_odd_scale.is_zero() || map.inverse_odd_scale.is_zero())
            throw NonInvertibleJacobian("odd scale vanishes");
        ScalarExpr alpha_in_target =
            substitute(map.forward_odd_scale.num(),
                       [&](const Generator& g) -> std::optional<ScalarExpr> {
                           if (auto idx = map.source.coordinate_index(g.base))
                               return map.inverse_even[*idx];
                           return std::nullopt;
                       }) /
            substitute(map.forward_odd_scale.den(),
                       [&](const Generator& g) -> std::optional<ScalarExpr> {
                           if (auto idx = map.source.coordinate_index(g.base))
                               return map.inverse_even[*idx];
                           return std::nullopt;
                       });
        if (!(alpha_in_target * map.inverse_odd_scale == ScalarExpr::one()))
            throw NonInvertibleJacobian("odd scales are not mutually inverse");
    }
}

Tensor2 transform_tensor2(const Tensor2& g, const CoordinateMap& map) {
    if (!g.chart().same_coordinates(map.source)) throw ChartMismatch();
    validate(map);
    const std::size_t n = map.source.coordinate_count();

    // Jacobian d(old_a)/d(new_a') as superfunctions on the target chart.
    std::vector<std::vector<SuperFunction>> J(
        n, std::vector<SuperFunction>(n, SuperFunction::zero(map.target)));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t ap = 0; ap < n; ++ap) {
            bool a_odd = map.source.is_odd_index(a);
            bool ap_odd = map.target.is_odd_index(ap);
            if (!a_odd && !ap_odd) {
                J[a][ap] = SuperFunction(
                    map.target, diff(map.target.scope(), map.inverse_even[a],
                                     map.target.coordinate(ap).name));
            } else if (a_odd && !ap_odd) {
                // d(beta tau')/d(x'^ap) = (d beta) tau'
                ScalarExpr dbeta = diff(map.target.scope(), map.inverse_odd_scale,
                                        map.target.coordinate(ap).name);
                J[a][ap] = SuperFunction::coordinate(map.target, map.target.even_count()) *
                           dbeta;
            } else if (a_odd && ap_odd) {
                J[a][ap] = SuperFunction(map.target, map.inverse_odd_scale);
            } // even source along odd target stays zero
        }
    }

    // Old components rewritten in the new coordinates.
    std::vector<SuperFunction> pulled(n * n, SuperFunction::zero(map.target));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            pulled[a * n + b] = rewrite_in_target(g.entry(a, b), map);

    Tensor2 out(map.target);
    for (std::size_t bp = 0; bp < n; ++bp) {
        for (std::size_t ap = 0; ap < n; ++ap) {
            Parity pap = map.target.coordinate_parity(ap);
            SuperFunction acc = SuperFunction::zero(map.target);
            for (std::size_t a = 0; a < n; ++a) {
                for (std::size_t b = 0; b < n; ++b) {
                    if (J[b][bp].is_zero() || J[a][ap].is_zero()) continue;
                    const SuperFunction& gab = pulled[a * n + b];
                    if (gab.is_zero()) continue;
                    SuperFunction term = J[b][bp] * J[a][ap] * gab;
                    if (pap == Parity::Odd && map.source.coordinate_parity(b) == Parity::Odd)
                        term = -term;
                    acc += term;
                }
            }
            out.set_entry(bp, ap, acc);
        }
    }
    return out;
}

} // namespace scarr
