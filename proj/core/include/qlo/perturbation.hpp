#pragma once

#include "qlo/matrix.hpp"

#include <cstdint>
#include <vector>

namespace qlo {

/// Minimum of rank(A + L T + U^T R) over all L, R, where A is n x m, T is
/// k x m and U is k x n. Equals the rank of the bilinear form x^T A y on
/// ker(U) x ker(T), computed as rank(B_U^T A B_T) for kernel bases B_U, B_T.
Index min_perturbed_rank(const RatMatrix& a, const RatMatrix& t, const RatMatrix& u);

/// rank [[A, U^T], [T, 0]] - rank T - rank U. Agrees with min_perturbed_rank
/// when T and U have full row rank.
Index block_identity_rank(const RatMatrix& a, const RatMatrix& t, const RatMatrix& u);

/// Disjoint index families certifying (T, U, A) in the robust-rank class:
/// I_t subsets of [m] (columns of T and A), J_t subsets of [n] (columns of U,
/// rows of A), each of size k + r, with rank T[:, I_t] = k, rank U[:, J_t] = k
/// and every (T[:, I_t], U[:, J_t])-perturbation of A[J_t x I_t] of rank >= r.
struct MCert {
    bool found = false;
    Index k = 0;
    Index r = 0;
    std::vector<IndexSet> i_sets;
    std::vector<IndexSet> j_sets;
};

struct MSearchOptions {
    /// Candidate (I, J) pairs examined per greedy step before giving up.
    std::uint64_t budget = 1'000'000;
};

/// Greedy search for s disjoint pairs; each step takes the lexicographically
/// first valid (I, J) among unused indices. A failure means the greedy
/// frontier was exhausted (or the budget ran out), not that no certificate
/// exists. Requires k <= m <= n and m >= k + r.
MCert m_membership(const RatMatrix& t, const RatMatrix& u, const RatMatrix& a, Index r, Index s,
                   const MSearchOptions& opts = {});

/// Checks disjointness, sizes and conditions (a)-(c) for s pairs.
bool verify_mcert(const RatMatrix& t, const RatMatrix& u, const RatMatrix& a, Index r, Index s, const MCert& cert);

}  // namespace qlo
