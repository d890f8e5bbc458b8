// Acceptance suite: runs every shipped criterion end to end against the
// fixture corpus and prints one PASS/FAIL line per criterion. All
// comparisons are exact symbolic identities; there are no tolerances.

#include "scarr/carroll_structure.hpp"
#include "scarr/contraction.hpp"
#include "scarr/expr_parser.hpp"
#include "scarr/spec_file.hpp"
#include "scarr/workbench.hpp"

#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace scarr;

namespace {

int failures = 0;
std::string specs_dir;

void criterion(int number, const std::string& name, const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << number << ": " << name;
    if (!detail.empty()) std::cout << " -- " << detail;
    std::cout << "\n";
    if (!ok) ++failures;
}

ManifoldSpec load(const std::string& file) {
    return parse_spec_file(specs_dir + "/" + file);
}

struct Structure {
    Chart chart;
    SuperMetric g;
    VectorField Q;
    VectorField P;
};

Structure verified_structure(const ManifoldSpec& spec) {
    VerifyResult vr = verify_structure(spec.chart, *spec.metric, *spec.Q, *spec.P);
    if (!vr.structure) throw Error("fixture failed verification: " + spec.name);
    return Structure{spec.chart, *spec.metric, *spec.Q, *spec.P};
}

// Deterministic random data for the property suites.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    int uniform(int lo, int hi) {
        std::uniform_int_distribution<int> dist(lo, hi);
        return dist(engine_);
    }
    Rational rational() { return Rational(uniform(-3, 3), uniform(1, 2)); }
    ScalarExpr scalar(const Chart& chart) {
        Polynomial p;
        int terms = uniform(0, 2);
        for (int i = 0; i < terms; ++i) {
            Monomial m;
            int deg = uniform(0, 2);
            for (int j = 0; j < deg; ++j) {
                std::size_t pick = static_cast<std::size_t>(
                    uniform(0, static_cast<int>(chart.even_count()) - 1));
                m = m * Monomial(Generator{chart.coordinate(pick).name, {}}, 1);
            }
            p.add_term(m, rational());
        }
        return ScalarExpr::fraction(std::move(p), Polynomial::constant(1));
    }
    SuperFunction super_function(const Chart& chart) {
        SuperFunction f(chart, scalar(chart));
        for (std::size_t i = 0; i < chart.odd_count(); ++i)
            f += SuperFunction::coordinate(chart, chart.even_count() + i) * scalar(chart);
        return f;
    }
    SuperFunction homogeneous(const Chart& chart, Parity p) {
        return super_function(chart).parity_part(p);
    }
    VectorField field(const Chart& chart, Parity p) {
        VectorField X(chart);
        for (std::size_t i = 0; i < chart.coordinate_count(); ++i)
            X.set_component(i, homogeneous(chart, p + chart.coordinate_parity(i)));
        return X;
    }
    AffineConnection connection(const Chart& chart) {
        AffineConnection conn(chart);
        const std::size_t n = chart.coordinate_count();
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t a = 0; a < n; ++a) {
                    Parity p = chart.coordinate_parity(a) + chart.coordinate_parity(b) +
                               chart.coordinate_parity(c);
                    conn.set_gamma(c, b, a, homogeneous(chart, p));
                }
        return conn;
    }

private:
    std::mt19937_64 engine_;
};

Tensor12 kernel_valued_tensor(Rng& rng, const Chart& chart, const VectorField& Q) {
    Tensor12 K(chart);
    const std::size_t n = chart.coordinate_count();
    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t a = 0; a < n; ++a) {
            Parity pf =
                chart.coordinate_parity(a) + chart.coordinate_parity(b) + Parity::Odd;
            SuperFunction f = rng.homogeneous(chart, pf);
            if (f.is_zero()) continue;
            VectorField value = f * Q;
            for (std::size_t c = 0; c < n; ++c)
                if (!value.component(c).is_zero())
                    K.set_component(c, b, a, value.component(c));
        }
    return K;
}

SuperMetric unit_r11_metric(const Chart& chart) {
    Tensor2 t(chart);
    SuperFunction tau = SuperFunction::coordinate(chart, 1);
    t.set_entry(0, 0, SuperFunction::constant(chart, 1));
    t.set_entry(0, 1, -tau);
    t.set_entry(1, 0, -tau);
    return SuperMetric(std::move(t));
}

bool criterion_kernel(std::string& detail) {
    ManifoldSpec spec = load("r4_1_flat.scw");
    KernelReport kr = kernel_basis(*spec.metric);
    if (kr.dimension != 2) {
        detail = "scalar solution dimension " + std::to_string(kr.dimension);
        return false;
    }
    if (!kr.span_of_Q) {
        detail = "verdict is not span{Q}";
        return false;
    }
    for (std::size_t b = 0; b < spec.chart.coordinate_count(); ++b) {
        SuperFunction ip = inner_product(*spec.metric, *spec.Q,
                                         VectorField::coordinate_basis(spec.chart, b));
        if (!ip.is_zero()) {
            detail = "<Q|d_" + spec.chart.coordinate(b).name + "> != 0";
            return false;
        }
    }
    detail = "dimension 2, verdict span{Q}, all <Q|d_b> = 0";
    return true;
}

bool criterion_degeneracy(std::string& detail) {
    SchurReport degenerate =
        schur_analysis(reduced_metric(*load("dim2_degenerate.scw").metric));
    SchurReport nondegenerate =
        schur_analysis(reduced_metric(*load("dim2_nondegenerate.scw").metric));
    SchurReport flat = schur_analysis(reduced_metric(*load("r4_1_flat.scw").metric));

    if (!degenerate.det_total.is_zero() || !degenerate.degenerate) {
        detail = "degenerate example: det != 0";
        return false;
    }
    if (!(nondegenerate.det_total == ScalarExpr::one())) {
        detail = "nondegenerate example: det != 1";
        return false;
    }
    if (!(flat.det_total == ScalarExpr::from_rational(-1)) || !flat.schur_scalar ||
        !(*flat.schur_scalar == ScalarExpr::from_rational(-1)) ||
        !(flat.det_spatial == ScalarExpr::one()) || !flat.factorization_consistent) {
        detail = "flat example: Schur data mismatch";
        return false;
    }
    detail = "det = 0 / 1 / -1 with S = -1 cross-checked";
    return true;
}

bool criterion_scarr_dimensions(std::string& detail) {
    Structure s = verified_structure(load("r4_1_flat.scw"));
    ScarrAlgebra alg = scarr_algebra(SuperCarrollStructure{s.chart, s.g, s.Q, s.P}, 1);
    const auto& pres = alg.presentation;
    if (pres.even_basis.size() != 7 || pres.odd_basis.size() != 1) {
        detail = "dimensions " + std::to_string(pres.even_basis.size()) + "|" +
                 std::to_string(pres.odd_basis.size());
        return false;
    }
    if (!pres.brackets_close()) {
        detail = "structure constants do not close";
        return false;
    }
    // [D,D] = -2P, realized in the structure constants.
    const VectorField& D = pres.odd_basis.front();
    if (!(lie_bracket(D, D) == -(s.P + s.P))) {
        detail = "[D,D] != -2P";
        return false;
    }
    auto dd = express_in_span(lie_bracket(D, D), pres.all_elements());
    if (!dd) {
        detail = "[D,D] outside the basis span";
        return false;
    }

    // Even block is e(3) + u(1): P central; the zero-time-component
    // complement W closes with a 3-dimensional abelian translation ideal
    // and a nonabelian 3-dimensional quotient.
    std::vector<VectorField> W;
    for (const auto& X : pres.even_basis) {
        if (!lie_bracket(s.P, X).is_zero()) {
            detail = "P is not central in the even part";
            return false;
        }
        if (X.component(3).is_zero())
            W.push_back(X);
    }
    if (W.size() != 6) {
        detail = "complement of the time translation has dimension " +
                 std::to_string(W.size());
        return false;
    }
    std::vector<VectorField> translations;
    for (const auto& X : W) {
        bool constant = true;
        for (std::size_t i = 0; i < X.size(); ++i) {
            const SuperFunction& comp = X.component(i);
            if (comp.is_zero()) continue;
            ScalarExpr body = reduce_eps(comp);
            if (!body.as_rational() || comp.terms().size() != 1) constant = false;
        }
        if (constant) translations.push_back(X);
    }
    if (translations.size() != 3) {
        detail = "translation ideal has dimension " + std::to_string(translations.size());
        return false;
    }
    for (const auto& A : translations)
        for (const auto& B : translations)
            if (!lie_bracket(A, B).is_zero()) {
                detail = "translations do not commute";
                return false;
            }
    bool rotation_block_nonabelian = false;
    for (const auto& A : W)
        for (const auto& B : W) {
            VectorField bracket = lie_bracket(A, B);
            if (bracket.is_zero()) continue;
            auto inW = express_in_span(bracket, W);
            if (!inW) {
                detail = "even brackets leave e(3)";
                return false;
            }
            bool in_translations = express_in_span(bracket, translations).has_value();
            if (!in_translations) rotation_block_nonabelian = true;
        }
    if (!rotation_block_nonabelian) {
        detail = "rotation block is abelian";
        return false;
    }
    detail = "even 7, odd 1, [D,D] = -2P, e(3)+u(1) closure";
    return true;
}

bool criterion_nonstatic(std::string& detail) {
    Structure s = verified_structure(load("n1_nonstatic.scw"));
    SuperCarrollStructure structure{s.chart, s.g, s.Q, s.P};
    if (is_static(structure)) {
        detail = "structure reported static";
        return false;
    }
    ScarrAlgebra alg = scarr_algebra(structure, 1);
    if (!alg.presentation.odd_basis.empty()) {
        detail = "odd part nonempty";
        return false;
    }
    detail = "is_static = false, odd part empty";
    return true;
}

bool criterion_witness(std::string& detail) {
    const std::vector<std::string> fixtures = {"r4_1_flat.scw", "n1.scw", "n1_nonstatic.scw",
                                               "dim2_nondegenerate.scw", "warped_product.scw"};
    std::size_t verified = 0;
    for (const auto& file : fixtures) {
        ManifoldSpec spec = load(file);
        VerifyResult vr = verify_structure(spec.chart, *spec.metric, *spec.Q, *spec.P);
        if (!vr.structure) {
            detail = file + " failed verification";
            return false;
        }
        ++verified;
        if (!vr.diagnostics.witness_coordinate) {
            detail = file + ": no witness coordinate";
            return false;
        }
        std::size_t b = *vr.diagnostics.witness_coordinate;
        VectorField db = VectorField::coordinate_basis(spec.chart, b);
        SuperFunction expected = -(SuperFunction::constant(spec.chart, 2) *
                                   inner_product(*spec.metric, *spec.P, db));
        if (vr.diagnostics.witness_value.is_zero() ||
            !(vr.diagnostics.witness_value == expected)) {
            detail = file + ": witness mismatch";
            return false;
        }
    }
    // The degenerate 2|1 candidate is shipped as a counterexample: its
    // kernel is strictly larger than span{Q}, so it must not verify.
    ManifoldSpec degenerate = load("dim2_degenerate.scw");
    VerifyResult vr = verify_structure(degenerate.chart, *degenerate.metric, *degenerate.Q,
                                       *degenerate.P);
    if (vr.structure) {
        detail = "dim2_degenerate unexpectedly verified";
        return false;
    }
    detail = std::to_string(verified) + " verified structures with nonzero witnesses";
    return true;
}

bool criterion_connection_synthesis(std::string& detail) {
    std::vector<std::pair<std::string, Structure>> cases;
    {
        Chart chart({{"t", Parity::Even}}, {{"tau", Parity::Odd}});
        cases.emplace_back("R^{1|1}",
                           Structure{chart, unit_r11_metric(chart), shander_Q(chart),
                                     shander_P(chart)});
    }
    {
        ManifoldSpec spec = load("dim2_nondegenerate.scw");
        cases.emplace_back(spec.name, verified_structure(spec));
    }
    {
        ManifoldSpec spec = load("r4_1_flat.scw");
        cases.emplace_back(spec.name, verified_structure(spec));
    }
    for (const auto& [name, s] : cases) {
        AffineConnection conn = make_compatible(AffineConnection::trivial(s.chart), s.g, s.Q,
                                                shander_omega(s.chart));
        if (!check_susy_compatible(conn, s.Q)) {
            detail = name + ": susy check failed";
            return false;
        }
        CompatibilityReport rep = check_metric_compatible(conn, s.g, s.Q);
        if (!rep.metric_compatible) {
            detail = name + ": metric check failed";
            return false;
        }
        for (const auto& f : rep.eigenfunctions)
            if (!f.is_zero()) {
                detail = name + ": f_X != 0";
                return false;
            }
        if (!(torsion(conn, s.Q, s.Q) == -(s.P + s.P))) {
            detail = name + ": T(Q,Q) != -2P";
            return false;
        }
        for (std::size_t a = 0; a < s.chart.coordinate_count(); ++a)
            for (std::size_t b = 0; b < s.chart.coordinate_count(); ++b)
                if (!curvature(conn, VectorField::coordinate_basis(s.chart, a),
                               VectorField::coordinate_basis(s.chart, b), s.Q)
                         .is_zero()) {
                    detail = name + ": R(d_a,d_b)Q != 0";
                    return false;
                }
    }
    detail = "R^{1|1}, dim2_nondegenerate, r4_1_flat all certified";
    return true;
}

bool criterion_torsion_obstruction(std::string& detail) {
    Structure s = verified_structure(load("r4_1_flat.scw"));
    AffineConnection base = make_compatible(AffineConnection::trivial(s.chart), s.g, s.Q,
                                            shander_omega(s.chart));
    Rng rng(20240817);
    for (int i = 0; i < 20; ++i) {
        Tensor12 K = kernel_valued_tensor(rng, s.chart, s.Q);
        AffineConnection modified = base.with_correction(K);
        CompatibilityReport rep = check_metric_compatible(modified, s.g, s.Q);
        if (!rep.metric_compatible) {
            detail = "K-modification broke metric compatibility at round " +
                     std::to_string(i);
            return false;
        }
        VectorField tqq = torsion(modified, s.Q, s.Q);
        if (tqq.is_zero()) {
            detail = "T(Q,Q) normalized to zero at round " + std::to_string(i);
            return false;
        }
        SuperFunction f_q = covariant_derivative(modified, s.Q, s.Q).component(4);
        VectorField expected =
            (SuperFunction::constant(s.chart, 2) * f_q) * s.Q - (s.P + s.P);
        if (!(tqq == expected)) {
            detail = "T(Q,Q) != 2 f_Q Q - 2P at round " + std::to_string(i);
            return false;
        }
    }
    detail = "20 randomized metric-compatible connections, torsion never vanishes";
    return true;
}

bool criterion_contraction(std::string& detail) {
    ManifoldSpec spec = load("superspace_4_4.scw");
    std::vector<std::pair<std::string, VectorField>> fields;
    for (const auto& [name, f] : spec.vector_fields)
        if (spec.contraction->generator_weights.count(name)) fields.emplace_back(name, f);
    ContractionReport report = contract(fields, *spec.contraction);
    if (!report.all_limits_exist) {
        detail = "a rescaled generator diverges";
        return false;
    }
    if (!report.bracket_limit_consistent) {
        detail = "bracket/limit compatibility failed";
        return false;
    }
    if (!report.projected_table) {
        detail = "no projected table";
        return false;
    }
    const LieSuperAlgebraPresentation& table = *report.projected_table;

    // Exactly [Qt,Qt] = 2 Pt; everything else vanishing or decoupled.
    std::size_t qt_index = table.even_basis.size();
    if (table.odd_names.size() != 1 || table.odd_names[0] != "Qt") {
        detail = "projected odd block is not {Qt}";
        return false;
    }
    std::size_t pt_index = table.dimension();
    for (std::size_t i = 0; i < table.even_names.size(); ++i)
        if (table.even_names[i] == "Pt") pt_index = i;
    if (pt_index == table.dimension()) {
        detail = "Pt missing from the projected table";
        return false;
    }
    for (std::size_t i = 0; i < table.dimension(); ++i)
        for (std::size_t j = 0; j < table.dimension(); ++j)
            for (std::size_t k = 0; k < table.dimension(); ++k) {
                Rational expected = (i == qt_index && j == qt_index && k == pt_index)
                                        ? Rational(2)
                                        : Rational(0);
                if (table.structure_constants[i][j][k] != expected) {
                    detail = "unexpected structure constant at [" + table.name(i) + "," +
                             table.name(j) + "]";
                    return false;
                }
            }
    for (const auto& fate : report.fates) {
        if (fate.kind == GeneratorFateKind::Diverges) {
            detail = fate.name + " diverges";
            return false;
        }
        if (!fate.tangent_after_projection) {
            detail = fate.name + " is not tangent after projection";
            return false;
        }
    }
    detail = "projected table is exactly [Q,Q] = 2P; spatial generators decoupled";
    return true;
}

bool criterion_property_suites(std::string& detail) {
    std::ostringstream counts;

    // Inner product graded symmetry and left linearity.
    {
        ManifoldSpec spec = load("r4_1_flat.scw");
        const SuperMetric& g = *spec.metric;
        Rng rng(11);
        for (int i = 0; i < 120; ++i) {
            Parity px = i % 2 == 0 ? Parity::Even : Parity::Odd;
            Parity py = (i / 2) % 2 == 0 ? Parity::Even : Parity::Odd;
            VectorField X = rng.field(spec.chart, px);
            VectorField Y = rng.field(spec.chart, py);
            SuperFunction rhs = inner_product(g, Y, X);
            if (px == Parity::Odd && py == Parity::Odd) rhs = -rhs;
            if (!(inner_product(g, X, Y) == rhs)) {
                detail = "graded symmetry failed";
                return false;
            }
            SuperFunction f = rng.super_function(spec.chart);
            VectorField Z = rng.field(spec.chart, Parity::Even);
            if (!(inner_product(g, f * X + Y, Z) ==
                  f * inner_product(g, X, Z) + inner_product(g, Y, Z))) {
                detail = "left linearity failed";
                return false;
            }
        }
        counts << "symmetry/linearity 120";
    }

    // Graded Jacobi identity.
    {
        Chart chart({{"x", Parity::Even}, {"t", Parity::Even}}, {{"tau", Parity::Odd}});
        Rng rng(13);
        for (int i = 0; i < 120; ++i) {
            Parity px = i % 2 == 0 ? Parity::Even : Parity::Odd;
            Parity py = (i / 2) % 2 == 0 ? Parity::Even : Parity::Odd;
            Parity pz = (i / 4) % 2 == 0 ? Parity::Even : Parity::Odd;
            VectorField X = rng.field(chart, px);
            VectorField Y = rng.field(chart, py);
            VectorField Z = rng.field(chart, pz);
            auto flip = [](Parity a, Parity b) {
                return a == Parity::Odd && b == Parity::Odd;
            };
            VectorField j1 = lie_bracket(X, lie_bracket(Y, Z));
            VectorField j2 = lie_bracket(Y, lie_bracket(Z, X));
            VectorField j3 = lie_bracket(Z, lie_bracket(X, Y));
            if (flip(px, pz)) j1 = -j1;
            if (flip(py, px)) j2 = -j2;
            if (flip(pz, py)) j3 = -j3;
            if (!(j1 + j2 + j3).is_zero()) {
                detail = "graded Jacobi failed";
                return false;
            }
        }
        counts << ", jacobi 120";
    }

    // Tensoriality of torsion and curvature.
    {
        Chart chart({{"x", Parity::Even}, {"t", Parity::Even}}, {{"tau", Parity::Odd}});
        Rng rng(17);
        for (int i = 0; i < 120; ++i) {
            AffineConnection conn = rng.connection(chart);
            Parity px = i % 2 == 0 ? Parity::Even : Parity::Odd;
            Parity pf = (i / 2) % 2 == 0 ? Parity::Even : Parity::Odd;
            VectorField X = rng.field(chart, px);
            VectorField Y = rng.field(chart, Parity::Even);
            VectorField Z = rng.field(chart, Parity::Even);
            SuperFunction f = rng.homogeneous(chart, pf);
            if (!(torsion(conn, f * X, Y) == f * torsion(conn, X, Y))) {
                detail = "torsion not tensorial in the first slot";
                return false;
            }
            VectorField rhs = f * torsion(conn, X, Y);
            if (px == Parity::Odd && pf == Parity::Odd) rhs = -rhs;
            if (!(torsion(conn, X, f * Y) == rhs)) {
                detail = "torsion not tensorial in the second slot";
                return false;
            }
            VectorField in_dir = f * curvature(conn, X, Y, Z);
            if (px == Parity::Odd && pf == Parity::Odd) in_dir = -in_dir;
            if (!(curvature(conn, X, f * Y, Z) == in_dir)) {
                detail = "curvature not tensorial in the direction slot";
                return false;
            }
            // R(X,Y)(fZ) = (-1)^{(|X|+|Y|)|f|} f R(X,Y)Z with Y even here.
            VectorField in_arg = f * curvature(conn, X, Y, Z);
            if (px == Parity::Odd && pf == Parity::Odd) in_arg = -in_arg;
            if (!(curvature(conn, X, Y, f * Z) == in_arg)) {
                detail = "curvature not tensorial in the argument slot";
                return false;
            }
        }
        counts << ", tensoriality 120";
    }

    // Killing bracket closure over random rational combinations.
    {
        Structure s = verified_structure(load("r4_1_flat.scw"));
        ScarrAlgebra alg = scarr_algebra(SuperCarrollStructure{s.chart, s.g, s.Q, s.P}, 1);
        const auto& evens = alg.presentation.even_basis;
        Rng rng(19);
        for (int i = 0; i < 100; ++i) {
            VectorField A = VectorField::zero(s.chart);
            VectorField B = VectorField::zero(s.chart);
            for (const auto& X : evens) {
                A += SuperFunction::constant(s.chart, rng.rational()) * X;
                B += SuperFunction::constant(s.chart, rng.rational()) * X;
            }
            if (!is_killing(s.g, A) || !is_killing(s.g, B)) {
                detail = "random combination not Killing";
                return false;
            }
            if (!is_killing(s.g, lie_bracket(A, B))) {
                detail = "bracket of Killing fields not Killing";
                return false;
            }
        }
        counts << ", killing-closure 100";
    }

    // Koszul identity for metric compatible connections.
    {
        Structure s = verified_structure(load("r4_1_flat.scw"));
        AffineConnection base = make_compatible(AffineConnection::trivial(s.chart), s.g, s.Q,
                                                shander_omega(s.chart));
        Rng rng(23);
        int instances = 0;
        for (int round = 0; round < 5; ++round) {
            AffineConnection conn =
                round == 0 ? base
                           : base.with_correction(kernel_valued_tensor(rng, s.chart, s.Q));
            for (int i = 0; i < 21; ++i) {
                std::size_t a = static_cast<std::size_t>(rng.uniform(0, 4));
                std::size_t b = static_cast<std::size_t>(rng.uniform(0, 4));
                std::size_t c = static_cast<std::size_t>(rng.uniform(0, 4));
                VectorField X = VectorField::coordinate_basis(s.chart, a);
                VectorField Y = VectorField::coordinate_basis(s.chart, b);
                VectorField Z = VectorField::coordinate_basis(s.chart, c);
                SuperFunction lhs =
                    SuperFunction::constant(s.chart, 2) *
                    inner_product(s.g, covariant_derivative(conn, X, Y), Z);
                if (!(lhs == koszul_rhs(conn, s.g, X, Y, Z))) {
                    detail = "Koszul identity failed";
                    return false;
                }
                ++instances;
            }
        }
        counts << ", koszul " << instances;
    }

    // Linear solver re-substitution.
    {
        Chart chart({{"x", Parity::Even, true}, {"t", Parity::Even}}, {});
        Rng rng(29);
        for (int round = 0; round < 100; ++round) {
            const std::size_t rows = static_cast<std::size_t>(rng.uniform(1, 4));
            const std::size_t cols = static_cast<std::size_t>(rng.uniform(1, 4));
            ExprMatrix A(rows, ExprVector(cols, ScalarExpr::zero()));
            for (auto& row : A)
                for (auto& e : row)
                    if (rng.uniform(0, 2) != 0) e = rng.scalar(chart);
            ExprVector x(cols, ScalarExpr::zero());
            for (auto& e : x)
                if (rng.uniform(0, 1) == 0) e = rng.scalar(chart);
            ExprVector b = matrix_apply(A, x);
            LinearSolveResult r = solve_linear_system(A, b);
            if (!r.consistent) {
                detail = "constructed system reported inconsistent";
                return false;
            }
            ExprVector check = matrix_apply(A, r.particular);
            for (std::size_t i = 0; i < rows; ++i)
                if (!(check[i] == b[i])) {
                    detail = "particular solution fails re-substitution";
                    return false;
                }
            for (const auto& v : r.nullspace)
                for (const auto& e : matrix_apply(A, v))
                    if (!e.is_zero()) {
                        detail = "nullspace vector fails re-substitution";
                        return false;
                    }
        }
        counts << ", resubstitution 100";
    }

    detail = counts.str();
    return true;
}

bool criterion_discrepancy_audit(std::string& detail) {
    Structure s = verified_structure(load("r4_1_flat.scw"));
    AffineConnection susy = make_susy_compatible(AffineConnection::trivial(s.chart), s.Q,
                                                 shander_omega(s.chart));
    AffineConnection solver = make_compatible(AffineConnection::trivial(s.chart), s.g, s.Q,
                                              shander_omega(s.chart));
    const std::size_t t = 3, tau = 4;
    SuperFunction solver_correction = solver.gamma(t, tau, tau) - susy.gamma(t, tau, tau);

    bool solver_certified = check_susy_compatible(solver, s.Q) &&
                            check_metric_compatible(solver, s.g, s.Q).metric_compatible;

    // Reference value from the worked example: correction Gamma(t;tau,tau) = 2.
    AffineConnection reference = susy;
    reference.set_gamma(t, tau, tau,
                        reference.gamma(t, tau, tau) + SuperFunction::constant(s.chart, 2));
    bool reference_certified =
        check_metric_compatible(reference, s.g, s.Q).metric_compatible;

    std::ostringstream log;
    log << "solver correction Gamma(t;tau,tau) = " << solver_correction.str()
        << " (certified: " << (solver_certified ? "yes" : "no")
        << "); reference correction 2*d(t) certified: "
        << (reference_certified ? "yes" : "no");
    detail = log.str();

    // Pass = the solver's connection is oracle-certified; the comparison
    // itself is the logged audit.
    return solver_certified;
}

} // namespace

int main(int argc, char** argv) {
    specs_dir = argc > 1 ? argv[1] : "specs";
    std::cout << "acceptance suite (fixtures: " << specs_dir << ")\n";

    criterion(1, "kernel reproduction on R^{4|1}", criterion_kernel);
    criterion(2, "degeneracy dichotomy via Schur analysis", criterion_degeneracy);
    criterion(3, "scarr dimensions and bracket table on R^{4|1}", criterion_scarr_dimensions);
    criterion(4, "non-static collapse of the odd part", criterion_nonstatic);
    criterion(5, "Q-not-Killing certificate on every verified fixture", criterion_witness);
    criterion(6, "compatible connection synthesis", criterion_connection_synthesis);
    criterion(7, "torsion obstruction under kernel-valued modifications",
              criterion_torsion_obstruction);
    criterion(8, "superspace contraction to the supertranslation algebra",
              criterion_contraction);
    criterion(9, "randomized property suites", criterion_property_suites);
    criterion(10, "worked-example Gamma audit", criterion_discrepancy_audit);

    if (failures == 0) {
        std::cout << "all criteria passed\n";
        return 0;
    }
    std::cout << failures << " criteria failed\n";
    return 1;
}
