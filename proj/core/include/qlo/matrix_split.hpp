#pragma once

#include "qlo/matrix.hpp"
#include "qlo/perturbation.hpp"

#include <vector>

namespace qlo {

struct SplitResult {
    /// [n] = i_part + j_part, both ascending.
    IndexSet i_part;
    IndexSet j_part;
    /// Number of pairs built, floor(s / (4k + 8)).
    Index s_prime = 0;
    /// The pairs in original column indices of M.
    std::vector<IndexSet> i_sets;
    std::vector<IndexSet> j_sets;
    /// Certificate for (M[:, I], M[:, J], A[J x I]) with r = 2; its index
    /// sets are positions within i_part and j_part.
    MCert cert;
};

/// Greedy splitting for a k x n matrix M that keeps rank k after deleting any
/// s columns and a symmetric n x n matrix A whose (M, M)-perturbations keep
/// off-diagonal rank at least 2 on large principal submatrices. Each pair is
/// built by:
///   1. picking disjoint column sets I', J' with M[:, I'] and M[:, J'] nonsingular;
///   2. perturbing A so that columns I' and rows J' vanish, locating the first
///      nonzero off-diagonal entry (j, i) among the unused indices, making every
///      2x2 block on {j, h} x {i, h} singular through the diagonal, then taking
///      the first j' whose row is independent of row j and the first i' giving
///      a nonsingular {j, j'} x {i, i'} block;
///   3. checking that the (2k+2) x (2k+2) bordered block has full rank.
///
/// The hypothesis on A is not checked up front. If step 2 finds no usable
/// entry, HypothesisViolation names the index set where the search failed.
/// Throws DomainError when s < 4k + 8 or A is not a symmetric n x n matrix.
SplitResult matrix_split(const RatMatrix& m, const RatMatrix& a, const Rational& s);

}  // namespace qlo
