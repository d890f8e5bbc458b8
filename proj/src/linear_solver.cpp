#include "scarr/linear_solver.hpp"

#include "scarr/errors.hpp"

#include <cassert>

namespace scarr {

LinearSolveResult solve_linear_system(ExprMatrix A, ExprVector b) {
    const std::size_t rows = A.size();
    const std::size_t cols = rows == 0 ? 0 : A.front().size();
    for (const auto& row : A)
        if (row.size() != cols) throw Error("ragged linear system");
    if (b.size() != rows) throw Error("right-hand side length mismatch");

    LinearSolveResult result;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && A[pivot][col].is_zero()) ++pivot;
        if (pivot == rows) continue;
        std::swap(A[pivot], A[rank]);
        std::swap(b[pivot], b[rank]);

        ScalarExpr inv = ScalarExpr::one() / A[rank][col];
        for (std::size_t j = col; j < cols; ++j) A[rank][j] = A[rank][j] * inv;
        b[rank] = b[rank] * inv;

        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || A[r][col].is_zero()) continue;
            ScalarExpr factor = A[r][col];
            for (std::size_t j = col; j < cols; ++j)
                A[r][j] = A[r][j] - factor * A[rank][j];
            b[r] = b[r] - factor * b[rank];
        }
        result.pivot_columns.push_back(col);
        ++rank;
    }

    for (std::size_t r = rank; r < rows; ++r)
        if (!b[r].is_zero()) return result; // inconsistent

    result.consistent = true;
    result.particular.assign(cols, ScalarExpr::zero());
    for (std::size_t i = 0; i < rank; ++i)
        result.particular[result.pivot_columns[i]] = b[i];

    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : result.pivot_columns) is_pivot[c] = true;
    for (std::size_t free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        ExprVector v(cols, ScalarExpr::zero());
        v[free_col] = ScalarExpr::one();
        for (std::size_t i = 0; i < rank; ++i)
            v[result.pivot_columns[i]] = -A[i][free_col];
        result.nullspace.push_back(std::move(v));
    }
    return result;
}

ScalarExpr determinant(const ExprMatrix& A) {
    const std::size_t n = A.size();
    for (const auto& row : A)
        if (row.size() != n) throw Error("determinant of non-square matrix");
    if (n == 0) return ScalarExpr::one();

    // Fraction-field Gaussian elimination tracking the product of pivots.
    ExprMatrix M = A;
    ScalarExpr det = ScalarExpr::one();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && M[pivot][col].is_zero()) ++pivot;
        if (pivot == n) return ScalarExpr::zero();
        if (pivot != col) {
            std::swap(M[pivot], M[col]);
            det = -det;
        }
        det = det * M[col][col];
        ScalarExpr inv = ScalarExpr::one() / M[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (M[r][col].is_zero()) continue;
            ScalarExpr factor = M[r][col] * inv;
            for (std::size_t j = col; j < n; ++j)
                M[r][j] = M[r][j] - factor * M[col][j];
        }
    }
    return det;
}

ExprVector matrix_apply(const ExprMatrix& A, const ExprVector& x) {
    ExprVector out;
    out.reserve(A.size());
    for (const auto& row : A) {
        assert(row.size() == x.size());
        ScalarExpr acc = ScalarExpr::zero();
        for (std::size_t j = 0; j < row.size(); ++j) acc += row[j] * x[j];
        out.push_back(std::move(acc));
    }
    return out;
}

std::size_t matrix_rank(ExprMatrix A) {
    if (A.empty()) return 0;
    ExprVector zero_rhs(A.size(), ScalarExpr::zero());
    LinearSolveResult r = solve_linear_system(std::move(A), std::move(zero_rhs));
    return r.pivot_columns.size();
}

} // namespace scarr
