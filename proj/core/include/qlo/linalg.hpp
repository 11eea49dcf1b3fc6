#pragma once

#include "qlo/matrix.hpp"

#include <optional>
#include <vector>

namespace qlo {

struct RankKernel {
    Index rank = 0;
    /// Basis of {x : M x = 0}; each vector has M.cols() entries.
    std::vector<RatVector> kernel;
    /// Pivot columns of the echelon form, ascending.
    IndexSet pivots;
};

/// Exact rank and right-kernel basis over Q.
///
/// Rows are cleared of denominators and reduced with fraction-free (Bareiss)
/// elimination, so intermediate entries stay integral; the kernel basis is
/// read off the echelon form with one free variable set to 1 per vector.
RankKernel rank_and_kernel(const RatMatrix& m);

Index rank(const RatMatrix& m);

/// Kernel basis stacked as columns (cols() x nullity); a cols() x 0 matrix when trivial.
RatMatrix kernel_matrix(const RatMatrix& m);

/// Inverse of a square nonsingular matrix; nullopt when singular.
std::optional<RatMatrix> inverse(const RatMatrix& m);

/// Rank of the columns listed in `cols` (the submatrix M[all x cols]).
Index column_rank(const RatMatrix& m, std::span<const Index> cols);

}  // namespace qlo
