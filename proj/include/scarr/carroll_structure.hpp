#ifndef SCARR_CARROLL_STRUCTURE_HPP
#define SCARR_CARROLL_STRUCTURE_HPP

#include "scarr/connection.hpp"
#include "scarr/lie_superalgebra.hpp"
#include "scarr/metric.hpp"

#include <optional>
#include <string>
#include <vector>

namespace scarr {

// Verified bundle: Shander chart, degenerate metric, odd generator Q and
// its square P. Construct through verify_structure.
struct SuperCarrollStructure {
    Chart chart;
    SuperMetric g;
    VectorField Q;
    VectorField P;
};

struct StructureDiagnostics {
    bool verified = false;
    std::vector<std::string> failures; // named axioms with witnesses
    KernelReport kernel;
    LocalFormReport local_form;
    // Q-not-Killing certificate: coordinate index b and the nonzero value
    // (L_Q g)(Q, d_b) = -2 <P|d_b>.
    std::optional<std::size_t> witness_coordinate;
    SuperFunction witness_value;

    explicit StructureDiagnostics(const Chart& c)
        : witness_value(SuperFunction::zero(c)) {}
};

struct VerifyResult {
    std::optional<SuperCarrollStructure> structure;
    StructureDiagnostics diagnostics;
};

// Checks every axiom: Shander form of Q, P = d_t nowhere vanishing,
// [Q,Q] = 2P, [P,Q] = 0, metric local form, kernel = span{Q}, and the
// Q-not-Killing certificate.
VerifyResult verify_structure(const Chart& chart, const SuperMetric& g,
                              const VectorField& Q, const VectorField& P);

// P Killing, equivalently all metric components independent of t.
bool is_static(const SuperCarrollStructure& s);

// Killing fields of a reduced metric with polynomial entries, components a
// polynomial ansatz of total degree <= degree; optionally constrained to
// commute with a given field. Deterministic basis order.
std::vector<VectorField> killing_solver_poly(const ReducedMetric& gr, int degree,
                                             const std::optional<VectorField>& commute_with);

struct ScarrAlgebra {
    LieSuperAlgebraPresentation presentation;
    bool is_static = false;
    // Ansatz completeness note for the report.
    std::string completeness;
};

// Even part: lifts of reduced Killing fields commuting with P_red; odd
// part: D when static. Every element re-verified on the supermanifold.
ScarrAlgebra scarr_algebra(const SuperCarrollStructure& s, int degree);

struct SupertranslationReport {
    bool precondition_static = false;
    bool holds = false; // [D,D] = -2P, [P,D] = 0, D preserves g and Q
};

SupertranslationReport supertranslation_check(const SuperCarrollStructure& s);

} // namespace scarr

#endif
