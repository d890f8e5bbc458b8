#ifndef SCARR_CONTRACTION_HPP
#define SCARR_CONTRACTION_HPP

#include "scarr/lie_superalgebra.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace scarr {

// Finitely many s-powers with vector field coefficients; c = s^2, so
// half-integer powers of the contraction parameter c are integer powers
// of s.
struct LaurentFamily {
    std::string name;
    std::map<int, VectorField> terms; // s-power -> coefficient field

    bool is_zero() const;
    int min_power() const; // 0 for the zero family
};

struct RescaleWeights {
    // new coordinate = s^k old coordinate
    std::map<std::string, int> coordinate_weights;
    // rescaled generator = s^k original generator
    std::map<std::string, int> generator_weights;
};

// Substitutes the coordinate rescaling into the components, transforms the
// coordinate basis, multiplies by the generator weight, and expands in s.
LaurentFamily rescale_field(const std::string& name, const VectorField& field,
                            const RescaleWeights& weights);

std::vector<LaurentFamily> rescale(const std::vector<std::pair<std::string, VectorField>>& fields,
                                   const RescaleWeights& weights);

// Applies a further rescaling to an existing family (weights compose
// additively on each slice).
LaurentFamily rescale_family(const LaurentFamily& family, const RescaleWeights& weights);

struct Diverges {
    int power = 0;
};

using LimitResult = std::variant<VectorField, Diverges>;

// s^0 coefficient when no negative powers are present; positive powers
// vanish in the limit.
LimitResult limit_c_to_zero(const LaurentFamily& family);

enum class GeneratorFateKind { Survives, Vanishes, Diverges };

struct GeneratorFate {
    std::string name;
    GeneratorFateKind kind = GeneratorFateKind::Vanishes;
    int divergent_power = 0;
    std::optional<VectorField> limit;           // present unless divergent
    std::optional<VectorField> projected_limit; // after dropping scaled-away odds
    bool tangent_after_projection = true;
};

struct ContractionReport {
    std::vector<GeneratorFate> fates;
    bool all_limits_exist = true;
    bool bracket_limit_consistent = true;
    // Structure constants over the surviving limits (pre-projection), then
    // over the projected survivors.
    std::optional<LieSuperAlgebraPresentation> table;
    std::optional<LieSuperAlgebraPresentation> projected_table;
    std::optional<Chart> projected_chart;
};

// Full pipeline: rescale, take limits, verify bracket/limit compatibility,
// assemble both bracket tables. Throws ClosureFailure when a bracket
// leaves the span of the survivors.
ContractionReport contract(const std::vector<std::pair<std::string, VectorField>>& fields,
                           const RescaleWeights& weights);

} // namespace scarr

#endif
