#ifndef SCARR_SPEC_FILE_HPP
#define SCARR_SPEC_FILE_HPP

#include "scarr/connection.hpp"
#include "scarr/contraction.hpp"
#include "scarr/metric.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace scarr {

// Parsed problem instance. Structure fields default to the Shander pair
// when the chart has a single odd coordinate and no STRUCTURE block.
struct ManifoldSpec {
    std::string name;
    Chart chart;
    std::optional<SuperMetric> metric;
    std::vector<std::pair<std::string, VectorField>> vector_fields;
    std::optional<VectorField> Q;
    std::optional<VectorField> P;
    bool structure_given = false;
    std::optional<AffineConnection> connection;
    std::optional<RescaleWeights> contraction;

    const VectorField* find_vector_field(const std::string& vf_name) const;

    // Canonical form; parse(print()) reproduces the spec exactly.
    std::string print() const;

    bool same_content(const ManifoldSpec& other) const;
};

ManifoldSpec parse_spec(const std::string& text);
ManifoldSpec parse_spec_file(const std::string& path);

} // namespace scarr

#endif
