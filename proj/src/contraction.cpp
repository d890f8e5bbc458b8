#include "scarr/contraction.hpp"

#include "scarr/errors.hpp"

#include <bit>
#include <cassert>

namespace scarr {

bool LaurentFamily::is_zero() const {
    for (const auto& [p, f] : terms)
        if (!f.is_zero()) return false;
    return true;
}

int LaurentFamily::min_power() const {
    for (const auto& [p, f] : terms)
        if (!f.is_zero()) return p;
    return 0;
}

namespace {

int coordinate_weight(const RescaleWeights& w, const std::string& name) {
    auto it = w.coordinate_weights.find(name);
    return it == w.coordinate_weights.end() ? 0 : it->second;
}

void add_term(std::map<int, VectorField>& terms, const Chart& chart, int power,
              std::size_t component, const SuperFunction& value) {
    auto it = terms.find(power);
    if (it == terms.end()) it = terms.emplace(power, VectorField::zero(chart)).first;
    VectorField& f = it->second;
    f.set_component(component, f.component(component) + value);
}

// Splits one superfunction into s-homogeneous pieces: substituting
// old = s^{-k} new turns each monomial into an s-power times itself.
std::map<int, SuperFunction> split_by_weight(const SuperFunction& f,
                                             const RescaleWeights& w) {
    const Chart& chart = f.chart();
    std::map<int, SuperFunction> out;
    for (const auto& [mask, coeff] : f.terms()) {
        int mask_weight = 0;
        for (OddMask m = mask; m != 0; m &= m - 1) {
            std::size_t pos = static_cast<std::size_t>(std::countr_zero(m));
            mask_weight -=
                coordinate_weight(w, chart.coordinate(chart.even_count() + pos).name);
        }
        if (!coeff.den().is_constant())
            throw UnsupportedCoefficients("fractional contraction component " + coeff.str());
        for (const auto& [mono, c] : coeff.num().terms()) {
            int weight = mask_weight;
            for (const auto& [gen, exp] : mono.factors()) {
                if (chart.coordinate_index(gen.base)) {
                    weight -= coordinate_weight(w, gen.base) * exp;
                } else if (const auto* fs = chart.scope().find_function(gen.base)) {
                    for (const auto& dep : fs->depends_on)
                        if (coordinate_weight(w, dep) != 0)
                            throw SubstitutionUnsupported(
                                "function symbol " + gen.base +
                                " depends on a rescaled coordinate");
                }
            }
            Polynomial term;
            term.add_term(mono, c / coeff.den().constant_value());
            SuperFunction piece(chart);
            piece.set_coefficient(mask, ScalarExpr::fraction(std::move(term),
                                                             Polynomial::constant(1)));
            auto it = out.find(weight);
            if (it == out.end())
                out.emplace(weight, piece);
            else
                it->second += piece;
        }
    }
    return out;
}

} // namespace

LaurentFamily rescale_field(const std::string& name, const VectorField& field,
                            const RescaleWeights& weights) {
    const Chart& chart = field.chart();
    auto git = weights.generator_weights.find(name);
    int generator_weight = git == weights.generator_weights.end() ? 0 : git->second;

    LaurentFamily family;
    family.name = name;
    for (std::size_t c = 0; c < field.size(); ++c) {
        if (field.component(c).is_zero()) continue;
        int basis_weight = coordinate_weight(weights, chart.coordinate(c).name);
        for (auto& [w, piece] : split_by_weight(field.component(c), weights))
            add_term(family.terms, chart, generator_weight + basis_weight + w, c, piece);
    }
    for (auto it = family.terms.begin(); it != family.terms.end();)
        it = it->second.is_zero() ? family.terms.erase(it) : std::next(it);
    return family;
}

std::vector<LaurentFamily> rescale(const std::vector<std::pair<std::string, VectorField>>& fields,
                                   const RescaleWeights& weights) {
    std::vector<LaurentFamily> out;
    out.reserve(fields.size());
    for (const auto& [name, field] : fields) out.push_back(rescale_field(name, field, weights));
    return out;
}

LaurentFamily rescale_family(const LaurentFamily& family, const RescaleWeights& weights) {
    LaurentFamily out;
    out.name = family.name;
    for (const auto& [power, field] : family.terms) {
        LaurentFamily slice = rescale_field(family.name, field, weights);
        for (const auto& [p, f] : slice.terms) {
            for (std::size_t c = 0; c < f.size(); ++c)
                if (!f.component(c).is_zero())
                    add_term(out.terms, f.chart(), power + p, c, f.component(c));
        }
    }
    for (auto it = out.terms.begin(); it != out.terms.end();)
        it = it->second.is_zero() ? out.terms.erase(it) : std::next(it);
    return out;
}

LimitResult limit_c_to_zero(const LaurentFamily& family) {
    if (family.is_zero()) {
        throw Error("cannot take the limit of an empty family without a chart; "
                    "rescale first");
    }
    int mp = family.min_power();
    if (mp < 0) return Diverges{mp};
    auto it = family.terms.find(0);
    const Chart& chart = family.terms.begin()->second.chart();
    if (it == family.terms.end()) return VectorField::zero(chart);
    return it->second;
}

namespace {

LaurentFamily bracket_families(const LaurentFamily& F, const LaurentFamily& G) {
    LaurentFamily out;
    out.name = "[" + F.name + "," + G.name + "]";
    for (const auto& [p, X] : F.terms) {
        for (const auto& [q, Y] : G.terms) {
            VectorField b = lie_bracket(X, Y);
            if (b.is_zero()) continue;
            for (std::size_t c = 0; c < b.size(); ++c)
                if (!b.component(c).is_zero())
                    add_term(out.terms, b.chart(), p + q, c, b.component(c));
        }
    }
    for (auto it = out.terms.begin(); it != out.terms.end();)
        it = it->second.is_zero() ? out.terms.erase(it) : std::next(it);
    return out;
}

// Restriction to the submanifold where the scaled-away odd coordinates
// vanish: drop terms containing them; the field must not point along them.
std::pair<VectorField, bool> project_field(const VectorField& f, const Chart& target,
                                           const std::vector<std::size_t>& keep,
                                           OddMask dropped_mask) {
    VectorField out(target);
    bool tangent = true;
    const Chart& chart = f.chart();
    for (std::size_t c = 0; c < f.size(); ++c) {
        SuperFunction restricted(target);
        for (const auto& [mask, coeff] : f.component(c).terms()) {
            if ((mask & dropped_mask) != 0) continue; // vanishes at theta = 0
            OddMask new_mask = 0;
            OddMask remaining = mask;
            // Re-index the kept odd coordinates.
            for (std::size_t new_pos = 0; new_pos < target.odd_count(); ++new_pos) {
                std::size_t old_index = keep[target.even_count() + new_pos];
                OddMask old_bit = OddMask{1}
                                  << (old_index - chart.even_count());
                if (remaining & old_bit) new_mask |= OddMask{1} << new_pos;
            }
            restricted.set_coefficient(new_mask, coeff);
        }
        bool kept = false;
        for (std::size_t j = 0; j < keep.size(); ++j) {
            if (keep[j] == c) {
                out.set_component(j, restricted);
                kept = true;
                break;
            }
        }
        if (!kept && !restricted.is_zero()) tangent = false;
    }
    return {out, tangent};
}

} // namespace

ContractionReport contract(const std::vector<std::pair<std::string, VectorField>>& fields,
                           const RescaleWeights& weights) {
    ContractionReport report;
    if (fields.empty()) return report;
    const Chart& chart = fields.front().second.chart();

    std::vector<LaurentFamily> families = rescale(fields, weights);

    std::vector<VectorField> limits;
    for (const auto& family : families) {
        GeneratorFate fate;
        fate.name = family.name;
        if (family.is_zero()) {
            fate.kind = GeneratorFateKind::Vanishes;
            fate.limit = VectorField::zero(chart);
            report.fates.push_back(std::move(fate));
            limits.push_back(VectorField::zero(chart));
            continue;
        }
        LimitResult lim = limit_c_to_zero(family);
        if (std::holds_alternative<Diverges>(lim)) {
            fate.kind = GeneratorFateKind::Diverges;
            fate.divergent_power = std::get<Diverges>(lim).power;
            report.all_limits_exist = false;
            report.fates.push_back(std::move(fate));
            limits.push_back(VectorField::zero(chart));
            continue;
        }
        VectorField v = std::get<VectorField>(lim);
        fate.kind = v.is_zero() ? GeneratorFateKind::Vanishes : GeneratorFateKind::Survives;
        fate.limit = v;
        report.fates.push_back(std::move(fate));
        limits.push_back(std::move(v));
    }
    if (!report.all_limits_exist) return report;

    // Bracket/limit compatibility on every pair without negative powers.
    for (std::size_t i = 0; i < families.size(); ++i) {
        for (std::size_t j = i; j < families.size(); ++j) {
            LaurentFamily fb = bracket_families(families[i], families[j]);
            if (!fb.is_zero() && fb.min_power() < 0) continue; // precondition excludes
            VectorField expected = lie_bracket(limits[i], limits[j]);
            VectorField actual = fb.is_zero()
                                     ? VectorField::zero(chart)
                                     : std::get<VectorField>(limit_c_to_zero(fb));
            if (!(actual == expected)) report.bracket_limit_consistent = false;
        }
    }

    // Survivor table.
    std::vector<VectorField> even_basis, odd_basis;
    std::vector<std::string> even_names, odd_names;
    for (std::size_t i = 0; i < limits.size(); ++i) {
        if (limits[i].is_zero()) continue;
        auto parity = limits[i].parity();
        if (!parity)
            throw UnsupportedCoefficients("inhomogeneous contracted generator " +
                                          report.fates[i].name);
        if (*parity == Parity::Even) {
            even_basis.push_back(limits[i]);
            even_names.push_back(report.fates[i].name);
        } else {
            odd_basis.push_back(limits[i]);
            odd_names.push_back(report.fates[i].name);
        }
    }
    report.table =
        present_lie_superalgebra(even_basis, odd_basis, even_names, odd_names);

    // Chart projection: drop odd coordinates carrying a nonzero weight.
    std::vector<std::size_t> keep;
    std::vector<CoordinateSymbol> even_coords, odd_coords;
    OddMask dropped_mask = 0;
    for (std::size_t i = 0; i < chart.coordinate_count(); ++i) {
        const auto& c = chart.coordinate(i);
        bool dropped = c.parity == Parity::Odd &&
                       coordinate_weight(weights, c.name) != 0;
        if (dropped) {
            dropped_mask |= OddMask{1} << chart.odd_position(i);
            continue;
        }
        keep.push_back(i);
        (c.parity == Parity::Even ? even_coords : odd_coords).push_back(c);
    }
    Chart projected(even_coords, odd_coords, chart.scope().functions());
    report.projected_chart = projected;

    std::vector<VectorField> p_even, p_odd;
    std::vector<std::string> p_even_names, p_odd_names;
    for (std::size_t i = 0; i < limits.size(); ++i) {
        if (limits[i].is_zero()) continue;
        auto [proj, tangent] = project_field(limits[i], projected, keep, dropped_mask);
        report.fates[i].tangent_after_projection = tangent;
        report.fates[i].projected_limit = proj;
        if (!tangent || proj.is_zero()) continue;
        auto parity = proj.parity();
        if (!parity) throw UnsupportedCoefficients("inhomogeneous projected generator");
        if (*parity == Parity::Even) {
            p_even.push_back(proj);
            p_even_names.push_back(report.fates[i].name);
        } else {
            p_odd.push_back(proj);
            p_odd_names.push_back(report.fates[i].name);
        }
    }
    report.projected_table =
        present_lie_superalgebra(p_even, p_odd, p_even_names, p_odd_names);
    return report;
}

} // namespace scarr
