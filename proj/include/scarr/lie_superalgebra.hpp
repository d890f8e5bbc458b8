#ifndef SCARR_LIE_SUPERALGEBRA_HPP
#define SCARR_LIE_SUPERALGEBRA_HPP

#include "scarr/fields.hpp"
#include "scarr/linear_extract.hpp"

#include <optional>
#include <string>
#include <vector>

namespace scarr {

class ClosureFailure : public Error {
public:
    explicit ClosureFailure(const std::string& why)
        : Error("bracket leaves the span: " + why) {}
};

// Graded basis of vector fields with rational structure constants:
// [e_i, e_j] = sum_k c_{ij}^k e_k, indices running over the concatenation
// even_basis ++ odd_basis.
struct LieSuperAlgebraPresentation {
    std::vector<VectorField> even_basis;
    std::vector<VectorField> odd_basis;
    std::vector<std::string> even_names;
    std::vector<std::string> odd_names;
    std::vector<std::vector<std::vector<Rational>>> structure_constants;

    std::size_t dimension() const;
    const VectorField& element(std::size_t i) const;
    Parity parity_of(std::size_t i) const;
    const std::string& name(std::size_t i) const;
    std::vector<VectorField> all_elements() const;

    // Re-verifies every bracket against the stored constants.
    bool brackets_close() const;

    std::string bracket_table() const;
};

// Computes structure constants by bracketing; throws ClosureFailure when a
// bracket leaves the rational span of the basis.
LieSuperAlgebraPresentation present_lie_superalgebra(std::vector<VectorField> even_basis,
                                                     std::vector<VectorField> odd_basis,
                                                     std::vector<std::string> even_names = {},
                                                     std::vector<std::string> odd_names = {});

// Rational coordinates of `target` in the span of `basis`, matched
// coefficientwise; nullopt when outside the span. Entries must be
// polynomial (no denominators).
std::optional<std::vector<Rational>> express_in_span(const VectorField& target,
                                                     const std::vector<VectorField>& basis);

} // namespace scarr

#endif
