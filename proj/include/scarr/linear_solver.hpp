#ifndef SCARR_LINEAR_SOLVER_HPP
#define SCARR_LINEAR_SOLVER_HPP

#include "scarr/scalar_expr.hpp"

#include <vector>

namespace scarr {

using ExprVector = std::vector<ScalarExpr>;
using ExprMatrix = std::vector<ExprVector>;

// Outcome of solving A x = b over the fraction field. Inconsistency is a
// value, not an error.
struct LinearSolveResult {
    bool consistent = false;
    ExprVector particular;              // free variables pinned to zero
    std::vector<ExprVector> nullspace;  // standard free-variable unit completions
    std::vector<std::size_t> pivot_columns;
};

// Deterministic reduced row echelon elimination. Pivot choice: leftmost
// column, then lowest row index with a nonzero entry.
LinearSolveResult solve_linear_system(ExprMatrix A, ExprVector b);

// Least machinery on top of the solver that other modules keep reusing.
ScalarExpr determinant(const ExprMatrix& A);
ExprVector matrix_apply(const ExprMatrix& A, const ExprVector& x);

// Rank of the row span; used for span-equality verdicts.
std::size_t matrix_rank(ExprMatrix A);

} // namespace scarr

#endif
