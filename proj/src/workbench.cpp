#include "scarr/workbench.hpp"

#include "scarr/carroll_structure.hpp"
#include "scarr/errors.hpp"

#include <sstream>

namespace scarr {

using nlohmann::json;

namespace {

void render(std::ostringstream& os, const json& value, int indent) {
    std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    if (value.is_object()) {
        for (const auto& [key, item] : value.items()) {
            if (item.is_object() || item.is_array()) {
                os << pad << key << ":\n";
                render(os, item, indent + 1);
            } else {
                os << pad << key << ": " << (item.is_string() ? item.get<std::string>()
                                                              : item.dump())
                   << "\n";
            }
        }
    } else if (value.is_array()) {
        for (const auto& item : value) {
            if (item.is_object() || item.is_array()) {
                os << pad << "-\n";
                render(os, item, indent + 1);
            } else {
                os << pad << "- "
                   << (item.is_string() ? item.get<std::string>() : item.dump()) << "\n";
            }
        }
    } else {
        os << pad << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    }
}

const SuperMetric& require_metric(const ManifoldSpec& spec) {
    if (!spec.metric) throw Error("spec has no METRIC block");
    return *spec.metric;
}

struct StructureInputs {
    const SuperMetric& g;
    const VectorField& Q;
    const VectorField& P;
};

StructureInputs require_structure_inputs(const ManifoldSpec& spec) {
    if (!spec.metric) throw Error("spec has no METRIC block");
    if (!spec.Q || !spec.P)
        throw Error("spec has no structure fields (chart must have one odd coordinate)");
    return StructureInputs{*spec.metric, *spec.Q, *spec.P};
}

json kernel_to_json(const KernelReport& kr) {
    json out;
    out["dimension"] = kr.dimension;
    out["span_of_Q"] = kr.span_of_Q;
    json gens = json::array();
    for (const auto& g : kr.module_generators) gens.push_back(g.str());
    out["module_generators"] = gens;
    return out;
}

json verify_to_json(const VerifyResult& vr, const Chart& chart) {
    json out;
    out["verified"] = vr.diagnostics.verified;
    out["failures"] = vr.diagnostics.failures;
    out["kernel"] = kernel_to_json(vr.diagnostics.kernel);
    out["local_form"] = vr.diagnostics.local_form.pass;
    if (vr.diagnostics.witness_coordinate) {
        json w;
        w["coordinate"] = chart.coordinate(*vr.diagnostics.witness_coordinate).name;
        w["lie_derivative_value"] = vr.diagnostics.witness_value.str();
        out["q_not_killing_witness"] = w;
    }
    return out;
}

json presentation_to_json(const LieSuperAlgebraPresentation& p) {
    json out;
    out["even_dimension"] = p.even_basis.size();
    out["odd_dimension"] = p.odd_basis.size();
    json basis = json::object();
    for (std::size_t i = 0; i < p.dimension(); ++i) basis[p.name(i)] = p.element(i).str();
    out["basis"] = basis;
    out["bracket_table"] = p.bracket_table();
    out["closes"] = p.brackets_close();
    return out;
}

Report cmd_check(const ManifoldSpec& spec, const RunFlags&) {
    Report report{"check", json::object(), 0};
    auto inputs = require_structure_inputs(spec);
    VerifyResult vr = verify_structure(spec.chart, inputs.g, inputs.Q, inputs.P);
    report.machine["verdicts"] = verify_to_json(vr, spec.chart);
    if (vr.structure) {
        bool stat = is_static(*vr.structure);
        report.machine["verdicts"]["static"] = stat;
        if (stat) {
            SupertranslationReport st = supertranslation_check(*vr.structure);
            report.machine["verdicts"]["supertranslation_subalgebra"] = st.holds;
        }
    }
    report.exit_code = vr.diagnostics.verified ? 0 : 1;
    return report;
}

Report cmd_kernel(const ManifoldSpec& spec, const RunFlags&) {
    Report report{"kernel", json::object(), 0};
    const SuperMetric& g = require_metric(spec);
    KernelReport kr = kernel_basis(g);
    report.machine["kernel"] = kernel_to_json(kr);
    if (spec.Q) {
        json inner = json::object();
        for (std::size_t b = 0; b < spec.chart.coordinate_count(); ++b) {
            SuperFunction ip = inner_product(
                g, *spec.Q, VectorField::coordinate_basis(spec.chart, b));
            inner["<Q|d(" + spec.chart.coordinate(b).name + ")>"] = ip.str();
        }
        report.machine["inner_products"] = inner;
    }
    // On a chart without odd coordinates the verdict is nondegeneracy.
    bool pass = spec.chart.odd_count() == 0 ? kr.dimension == 0 : kr.span_of_Q;
    report.exit_code = pass ? 0 : 1;
    return report;
}

Report cmd_reduce(const ManifoldSpec& spec, const RunFlags&) {
    Report report{"reduce", json::object(), 0};
    const SuperMetric& g = require_metric(spec);
    ReducedMetric gr = reduced_metric(g);
    SchurReport sr = schur_analysis(gr);
    json entries = json::array();
    for (const auto& row : gr.entries) {
        json jrow = json::array();
        for (const auto& e : row) jrow.push_back(e.str());
        entries.push_back(jrow);
    }
    report.machine["reduced_metric"] = entries;
    report.machine["det_spatial"] = sr.det_spatial.str();
    report.machine["schur_scalar"] = sr.schur_scalar ? json(sr.schur_scalar->str()) : json();
    report.machine["det_total"] = sr.det_total.str();
    report.machine["degenerate"] = sr.degenerate;
    report.machine["factorization_consistent"] = sr.factorization_consistent;
    report.exit_code = sr.factorization_consistent ? 0 : 1;
    return report;
}

std::optional<VectorField> resolve_reduced_field(const ManifoldSpec& spec, const Chart& reduced,
                                                 const std::string& name) {
    const VectorField* full = nullptr;
    VectorField storage = VectorField::zero(spec.chart);
    if (name == "P" && spec.P) {
        storage = *spec.P;
        full = &storage;
    } else if (const VectorField* f = spec.find_vector_field(name)) {
        full = f;
    } else {
        throw Error("unknown vector field for --commute-with: " + name);
    }
    VectorField out(reduced);
    for (std::size_t i = 0; i < reduced.even_count(); ++i)
        out.set_component(i, SuperFunction(reduced, reduce_eps(full->component(i))));
    for (std::size_t i = reduced.even_count(); i < full->size(); ++i)
        if (!full->component(i).is_zero())
            throw Error("--commute-with field must be even and projectable");
    return out;
}

Report cmd_killing(const ManifoldSpec& spec, const RunFlags& flags) {
    Report report{"killing", json::object(), 0};
    const SuperMetric& g = require_metric(spec);
    ReducedMetric gr =
        spec.chart.odd_count() == 0
            ? ReducedMetric{even_subchart(spec.chart), {}}
            : reduced_metric(g);
    if (spec.chart.odd_count() == 0) {
        const std::size_t n = spec.chart.even_count();
        gr.entries.assign(n, ExprVector(n, ScalarExpr::zero()));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                gr.entries[a][b] = reduce_eps(g.entry(a, b));
    }
    std::optional<VectorField> commute;
    if (!flags.commute_with.empty())
        commute = resolve_reduced_field(spec, gr.reduced_chart, flags.commute_with);
    std::vector<VectorField> basis = killing_solver_poly(gr, flags.degree, commute);
    report.machine["degree"] = flags.degree;
    report.machine["dimension"] = basis.size();
    json fields = json::array();
    for (const auto& f : basis) fields.push_back(f.str());
    report.machine["basis"] = fields;
    if (!flags.commute_with.empty()) report.machine["commute_with"] = flags.commute_with;
    return report;
}

Report cmd_scarr(const ManifoldSpec& spec, const RunFlags& flags) {
    Report report{"scarr", json::object(), 0};
    auto inputs = require_structure_inputs(spec);
    VerifyResult vr = verify_structure(spec.chart, inputs.g, inputs.Q, inputs.P);
    report.machine["verified"] = vr.diagnostics.verified;
    if (!vr.structure) {
        report.machine["failures"] = vr.diagnostics.failures;
        report.exit_code = 1;
        return report;
    }
    ScarrAlgebra alg = scarr_algebra(*vr.structure, flags.degree);
    report.machine["static"] = alg.is_static;
    report.machine["degree"] = flags.degree;
    report.machine["completeness"] = alg.completeness;
    report.machine["algebra"] = presentation_to_json(alg.presentation);
    report.exit_code = alg.presentation.brackets_close() ? 0 : 1;
    return report;
}

AffineConnection resolve_seed(const ManifoldSpec& spec, const RunFlags& flags) {
    if (flags.seed == "trivial") return AffineConnection::trivial(spec.chart);
    ManifoldSpec other = parse_spec_file(flags.seed);
    if (!other.connection) throw Error("seed file has no CONNECTION block: " + flags.seed);
    if (!other.chart.same_coordinates(spec.chart))
        throw Error("seed connection lives on a different chart");
    return *other.connection;
}

json compatibility_to_json(const CompatibilityReport& rep, const Chart& chart) {
    json out;
    out["susy_compatible"] = rep.susy_compatible;
    out["metric_compatible"] = rep.metric_compatible;
    json f = json::object();
    for (std::size_t a = 0; a < rep.eigenfunctions.size(); ++a)
        f["f_d(" + chart.coordinate(a).name + ")"] = rep.eigenfunctions[a].str();
    out["eigenfunctions"] = f;
    json triples = json::array();
    for (const auto& t : rep.failing_triples)
        triples.push_back("(" + chart.coordinate(t[0]).name + "," +
                          chart.coordinate(t[1]).name + "," + chart.coordinate(t[2]).name +
                          ")");
    out["failing_triples"] = triples;
    return out;
}

Report cmd_connect(const ManifoldSpec& spec, const RunFlags& flags) {
    Report report{"connect", json::object(), 0};
    auto inputs = require_structure_inputs(spec);
    AffineConnection seed = resolve_seed(spec, flags);
    report.machine["mode"] = flags.mode;
    report.machine["seed"] = flags.seed;
    const Chart& chart = spec.chart;

    if (flags.mode == "susy") {
        AffineConnection conn = make_susy_compatible(seed, inputs.Q, shander_omega(chart));
        report.machine["connection"] = conn.christoffel().str();
        bool ok = check_susy_compatible(conn, inputs.Q);
        report.machine["susy_compatible"] = ok;
        report.exit_code = ok ? 0 : 1;
        return report;
    }
    if (flags.mode == "metric") {
        auto conn = make_metric_compatible(seed, inputs.g, inputs.Q, false);
        if (!conn) {
            report.machine["result"] = "NoSolution";
            report.exit_code = 1;
            return report;
        }
        report.machine["connection"] = conn->christoffel().str();
        CompatibilityReport rep = check_metric_compatible(*conn, inputs.g, inputs.Q);
        report.machine["checks"] = compatibility_to_json(rep, chart);
        report.exit_code = rep.metric_compatible ? 0 : 1;
        return report;
    }
    if (flags.mode != "compatible") throw Error("unknown --mode: " + flags.mode);

    VerifyResult vr = verify_structure(chart, inputs.g, inputs.Q, inputs.P);
    if (!vr.structure) {
        report.machine["verified"] = false;
        report.machine["failures"] = vr.diagnostics.failures;
        report.exit_code = 1;
        return report;
    }
    AffineConnection susy = make_susy_compatible(seed, inputs.Q, shander_omega(chart));
    AffineConnection conn = make_compatible(seed, inputs.g, inputs.Q, shander_omega(chart));
    report.machine["connection"] = conn.christoffel().str();
    CompatibilityReport rep = check_metric_compatible(conn, inputs.g, inputs.Q);
    report.machine["checks"] = compatibility_to_json(rep, chart);

    VectorField tqq = torsion(conn, inputs.Q, inputs.Q);
    report.machine["torsion_QQ"] = tqq.str();
    VectorField minus_2p = -(inputs.P + inputs.P);
    report.machine["torsion_QQ_equals_minus_2P"] = tqq == minus_2p;

    bool curvature_kills_q = true;
    for (std::size_t a = 0; a < chart.coordinate_count() && curvature_kills_q; ++a)
        for (std::size_t b = 0; b < chart.coordinate_count(); ++b) {
            VectorField r = curvature(conn, VectorField::coordinate_basis(chart, a),
                                      VectorField::coordinate_basis(chart, b), inputs.Q);
            if (!r.is_zero()) {
                curvature_kills_q = false;
                break;
            }
        }
    report.machine["curvature_annihilates_Q"] = curvature_kills_q;

    // Documented comparison of the correction at (tau,tau) with the
    // reference value 2 d(t) from the worked example.
    if (chart.odd_count() == 1) {
        const std::size_t tau = chart.even_count();
        const std::size_t t = chart.even_count() - 1;
        json audit;
        SuperFunction solver_corr =
            conn.gamma(t, tau, tau) - susy.gamma(t, tau, tau);
        audit["solver_correction_gamma(t;tau,tau)"] = solver_corr.str();
        audit["reference_correction_gamma(t;tau,tau)"] = "2";
        AffineConnection reference = susy;
        reference.set_gamma(t, tau, tau, reference.gamma(t, tau, tau) +
                                             SuperFunction::constant(chart, 2));
        bool ref_metric = true;
        for (std::size_t a = 0; a < chart.coordinate_count() && ref_metric; ++a)
            for (std::size_t b = 0; b < chart.coordinate_count() && ref_metric; ++b)
                for (std::size_t c = 0; c < chart.coordinate_count(); ++c) {
                    SuperFunction nm = non_metricity(
                        reference, inputs.g, VectorField::coordinate_basis(chart, a),
                        VectorField::coordinate_basis(chart, b),
                        VectorField::coordinate_basis(chart, c));
                    if (!nm.is_zero()) {
                        ref_metric = false;
                        break;
                    }
                }
        audit["reference_choice_certified"] = ref_metric;
        audit["solver_choice_certified"] = rep.metric_compatible && rep.susy_compatible;
        report.machine["gamma_audit"] = audit;
    }

    bool all_f_zero = true;
    for (const auto& f : rep.eigenfunctions)
        if (!f.is_zero()) all_f_zero = false;
    report.machine["all_f_X_zero"] = all_f_zero;

    bool pass = rep.susy_compatible && rep.metric_compatible && all_f_zero &&
                report.machine["torsion_QQ_equals_minus_2P"].get<bool>() &&
                curvature_kills_q;
    report.exit_code = pass ? 0 : 1;
    return report;
}

Report cmd_verify_connection(const ManifoldSpec& spec, const RunFlags&) {
    Report report{"verify-connection", json::object(), 0};
    auto inputs = require_structure_inputs(spec);
    if (!spec.connection) throw Error("spec has no CONNECTION block");
    bool susy = check_susy_compatible(*spec.connection, inputs.Q);
    CompatibilityReport rep = check_metric_compatible(*spec.connection, inputs.g, inputs.Q);
    report.machine["checks"] = compatibility_to_json(rep, spec.chart);
    report.machine["checks"]["susy_compatible"] = susy;
    report.exit_code = susy && rep.metric_compatible ? 0 : 1;
    return report;
}

Report cmd_contract(const ManifoldSpec& spec, const RunFlags&) {
    Report report{"contract", json::object(), 0};
    if (!spec.contraction) throw Error("spec has no CONTRACTION block");
    std::vector<std::pair<std::string, VectorField>> fields;
    for (const auto& [name, f] : spec.vector_fields)
        if (spec.contraction->generator_weights.count(name)) fields.emplace_back(name, f);
    for (const auto& [name, k] : spec.contraction->generator_weights)
        if (!spec.find_vector_field(name))
            throw Error("generator weight for undeclared vector field: " + name);
    if (fields.empty()) throw Error("CONTRACTION block lists no declared generators");

    // Input algebra must close before contraction.
    {
        std::vector<VectorField> even, odd;
        std::vector<std::string> even_names, odd_names;
        for (const auto& [name, f] : fields) {
            auto p = f.parity();
            if (!p) throw Error("inhomogeneous generator " + name);
            (*p == Parity::Even ? even : odd).push_back(f);
            (*p == Parity::Even ? even_names : odd_names).push_back(name);
        }
        LieSuperAlgebraPresentation input =
            present_lie_superalgebra(even, odd, even_names, odd_names);
        report.machine["input_table"] = input.bracket_table();
    }

    ContractionReport cr;
    try {
        cr = contract(fields, *spec.contraction);
    } catch (const ClosureFailure& e) {
        report.machine["closure_failure"] = e.what();
        report.exit_code = 1;
        return report;
    }
    json fates = json::object();
    for (const auto& fate : cr.fates) {
        json f;
        switch (fate.kind) {
            case GeneratorFateKind::Survives: f["status"] = "survives"; break;
            case GeneratorFateKind::Vanishes: f["status"] = "vanishes"; break;
            case GeneratorFateKind::Diverges:
                f["status"] = "diverges";
                f["power"] = fate.divergent_power;
                break;
        }
        if (fate.limit) f["limit"] = fate.limit->str();
        if (fate.projected_limit) f["projected"] = fate.projected_limit->str();
        if (!fate.tangent_after_projection) f["tangent_after_projection"] = false;
        fates[fate.name] = f;
    }
    report.machine["generators"] = fates;
    report.machine["all_limits_exist"] = cr.all_limits_exist;
    report.machine["bracket_limit_consistent"] = cr.bracket_limit_consistent;
    if (cr.table) report.machine["contracted_table"] = presentation_to_json(*cr.table);
    if (cr.projected_table)
        report.machine["projected_table"] = presentation_to_json(*cr.projected_table);
    report.exit_code = cr.all_limits_exist && cr.bracket_limit_consistent ? 0 : 1;
    return report;
}

} // namespace

std::string Report::human() const {
    std::ostringstream os;
    os << "== " << command << " ==\n";
    render(os, machine, 0);
    os << "exit: " << exit_code << "\n";
    return os.str();
}

Report run(const std::string& command, const ManifoldSpec& spec, const RunFlags& flags) {
    Report report{command, json::object(), 0};
    try {
        if (command == "check")
            report = cmd_check(spec, flags);
        else if (command == "kernel")
            report = cmd_kernel(spec, flags);
        else if (command == "reduce")
            report = cmd_reduce(spec, flags);
        else if (command == "killing")
            report = cmd_killing(spec, flags);
        else if (command == "scarr")
            report = cmd_scarr(spec, flags);
        else if (command == "connect")
            report = cmd_connect(spec, flags);
        else if (command == "verify-connection")
            report = cmd_verify_connection(spec, flags);
        else if (command == "contract")
            report = cmd_contract(spec, flags);
        else {
            report.machine["error"] = "unknown command: " + command;
            report.exit_code = 2;
        }
    } catch (const Error& e) {
        report.machine["error"] = e.what();
        report.exit_code = 2;
    }
    report.machine["manifold"] = spec.name;
    return report;
}

} // namespace scarr
