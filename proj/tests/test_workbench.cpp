#include "scarr/workbench.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>

using namespace scarr;

namespace {

const char* kFlat41 = R"(MANIFOLD r4_1_flat
EVEN x1 x2 x3 t
ODD tau
METRIC {
  (x1,x1) = 1
  (x2,x2) = 1
  (x3,x3) = 1
  (t,t) = -1
  (t,tau) = tau
}
)";

const char* kDegenerate21 = R"(MANIFOLD dim2_degenerate
EVEN x t
ODD tau
METRIC {
  (x,x) = 1
  (x,t) = 1
  (t,t) = 1
  (x,tau) = -tau
  (t,tau) = -tau
}
)";

RunFlags flags_with(int degree) {
    RunFlags f;
    f.degree = degree;
    return f;
}

} // namespace

TEST_CASE("check: flat R^{4|1} verifies and is static") {
    ManifoldSpec spec = parse_spec(kFlat41);
    Report report = run("check", spec, RunFlags{});
    CHECK(report.exit_code == 0);
    CHECK(report.machine["verdicts"]["verified"] == true);
    CHECK(report.machine["verdicts"]["static"] == true);
    CHECK(report.machine["verdicts"]["supertranslation_subalgebra"] == true);
}

TEST_CASE("check: degenerate 2|1 candidate fails with a named axiom") {
    ManifoldSpec spec = parse_spec(kDegenerate21);
    Report report = run("check", spec, RunFlags{});
    CHECK(report.exit_code == 1);
    CHECK(report.machine["verdicts"]["verified"] == false);
    bool kernel_named = false;
    for (const auto& f : report.machine["verdicts"]["failures"])
        if (f.get<std::string>().find("kernel") != std::string::npos) kernel_named = true;
    CHECK(kernel_named);
}

TEST_CASE("reduce: degeneracy dichotomy over the machine block") {
    ManifoldSpec spec = parse_spec(kDegenerate21);
    Report report = run("reduce", spec, RunFlags{});
    CHECK(report.exit_code == 0);
    CHECK(report.machine["degenerate"] == true);
    CHECK(report.machine["det_total"] == "0");
}

TEST_CASE("kernel: machine block carries the inner products") {
    ManifoldSpec spec = parse_spec(kFlat41);
    Report report = run("kernel", spec, RunFlags{});
    CHECK(report.exit_code == 0);
    CHECK(report.machine["kernel"]["dimension"] == 2);
    CHECK(report.machine["kernel"]["span_of_Q"] == true);
    CHECK(report.machine["inner_products"]["<Q|d(x1)>"] == "0");
    CHECK(report.machine["inner_products"]["<Q|d(t)>"] == "0");
    CHECK(report.machine["inner_products"]["<Q|d(tau)>"] == "0");
}

TEST_CASE("scarr: dimensions on the flat example") {
    ManifoldSpec spec = parse_spec(kFlat41);
    Report report = run("scarr", spec, flags_with(1));
    CHECK(report.exit_code == 0);
    CHECK(report.machine["algebra"]["even_dimension"] == 7);
    CHECK(report.machine["algebra"]["odd_dimension"] == 1);
    CHECK(report.machine["algebra"]["closes"] == true);
}

TEST_CASE("connect: compatible mode emits the audit block") {
    ManifoldSpec spec = parse_spec(kFlat41);
    RunFlags flags;
    flags.mode = "compatible";
    Report report = run("connect", spec, flags);
    CHECK(report.exit_code == 0);
    CHECK(report.machine["checks"]["susy_compatible"] == true);
    CHECK(report.machine["checks"]["metric_compatible"] == true);
    CHECK(report.machine["all_f_X_zero"] == true);
    CHECK(report.machine["torsion_QQ_equals_minus_2P"] == true);
    CHECK(report.machine["curvature_annihilates_Q"] == true);
    CHECK(report.machine["gamma_audit"]["solver_choice_certified"] == true);
}

TEST_CASE("connect: susy mode and a file-based seed") {
    const char* seed_text = R"(MANIFOLD seed
EVEN t
ODD tau
CONNECTION {
  Gamma(t; t, t) = t;
}
)";
    const std::string seed_path = "test_seed_connection.scw";
    {
        std::ofstream out(seed_path);
        out << seed_text;
    }
    const char* text = R"(MANIFOLD base
EVEN t
ODD tau
METRIC {
  (t,t) = 1
  (t,tau) = -tau
}
)";
    ManifoldSpec spec = parse_spec(text);
    RunFlags flags;
    flags.mode = "susy";
    flags.seed = seed_path;
    Report report = run("connect", spec, flags);
    CHECK(report.exit_code == 0);
    CHECK(report.machine["susy_compatible"] == true);
    // The seed's symbol survives alongside the susy correction.
    std::string conn = report.machine["connection"].get<std::string>();
    CHECK(conn.find("Gamma(t; t, t) = t") != std::string::npos);
    CHECK(conn.find("Gamma(t; tau, tau) = -1") != std::string::npos);
    std::remove(seed_path.c_str());
}

TEST_CASE("verify-connection: rejecting an incompatible connection with exit 1") {
    const char* text = R"(MANIFOLD bad_connection
EVEN t
ODD tau
METRIC {
  (t,t) = 1
  (t,tau) = -tau
}
CONNECTION {
  Gamma(t; t, t) = 1;
}
)";
    ManifoldSpec spec = parse_spec(text);
    Report report = run("verify-connection", spec, RunFlags{});
    CHECK(report.exit_code == 1);
    CHECK(report.machine["checks"]["susy_compatible"] == false);
}

TEST_CASE("verify-connection: spec-supplied connection checked against the structure") {
    const char* text = R"(MANIFOLD with_connection
EVEN t
ODD tau
METRIC {
  (t,t) = 1
  (t,tau) = -tau
}
CONNECTION {
  Gamma(t; tau, tau) = -1;
}
)";
    ManifoldSpec spec = parse_spec(text);
    Report report = run("verify-connection", spec, RunFlags{});
    CHECK(report.machine["checks"]["susy_compatible"] == true);
}

TEST_CASE("run: byte-identical machine block across invocations") {
    ManifoldSpec spec = parse_spec(kFlat41);
    for (const char* command : {"check", "kernel", "reduce", "scarr"}) {
        Report a = run(command, spec, flags_with(1));
        Report b = run(command, spec, flags_with(1));
        CHECK(a.machine_text() == b.machine_text());
    }
}

TEST_CASE("check: warped product with a symbolic warp factor is static") {
    const char* text = R"(MANIFOLD warped
EVEN x1 x2 t
ODD tau
FUNC f(x1,x2) NONVANISHING
METRIC {
  (x1,x1) = 1
  (x2,x2) = 1
  (t,t) = f^2
  (t,tau) = -tau*f^2
}
)";
    ManifoldSpec spec = parse_spec(text);
    Report report = run("check", spec, RunFlags{});
    CHECK(report.exit_code == 0);
    CHECK(report.machine["verdicts"]["verified"] == true);
    CHECK(report.machine["verdicts"]["static"] == true);
}

TEST_CASE("check: opaque time-dependent coefficient is generically non-static") {
    const char* text = R"(MANIFOLD n1
EVEN t
ODD tau
FUNC gtt(t) NONVANISHING
METRIC {
  (t,t) = gtt
  (t,tau) = -tau*gtt
}
)";
    ManifoldSpec spec = parse_spec(text);
    Report report = run("check", spec, RunFlags{});
    CHECK(report.exit_code == 0);
    CHECK(report.machine["verdicts"]["verified"] == true);
    CHECK(report.machine["verdicts"]["static"] == false);
}

TEST_CASE("run: input errors exit 2") {
    ManifoldSpec spec = parse_spec("MANIFOLD empty\nEVEN t\nODD tau\n");
    Report report = run("kernel", spec, RunFlags{});
    CHECK(report.exit_code == 2);
    CHECK(report.machine.contains("error"));

    Report unknown = run("bogus", spec, RunFlags{});
    CHECK(unknown.exit_code == 2);
}
