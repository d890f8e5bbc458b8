#ifndef SCARR_LINEAR_EXTRACT_HPP
#define SCARR_LINEAR_EXTRACT_HPP

#include "scarr/linear_solver.hpp"

#include <map>
#include <string>
#include <vector>

namespace scarr {

// Solvers phrase their unknowns as placeholder function symbols (empty
// dependency set, so formally constant) and assemble equations with the
// ordinary ring machinery. This splits such an equation, linear in the
// placeholders, into coefficient row and constant part.
struct LinearForm {
    ExprVector coefficients;
    ScalarExpr constant;
};

class PlaceholderSet {
public:
    explicit PlaceholderSet(std::vector<std::string> names);

    const std::vector<std::string>& names() const { return names_; }
    std::size_t size() const { return names_.size(); }
    bool contains(const std::string& name) const { return index_.count(name) != 0; }
    std::size_t index_of(const std::string& name) const { return index_.at(name); }

    // Throws Error when the expression is not affine-linear in the
    // placeholders or hides one in a denominator or derivative.
    LinearForm extract(const ScalarExpr& e) const;

private:
    std::vector<std::string> names_;
    std::map<std::string, std::size_t> index_;
};

} // namespace scarr

#endif
