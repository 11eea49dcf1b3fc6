#pragma once

#include "qlo/matrix.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace qlo {

enum class Verdict { member, non_member, inconclusive };

const char* to_string(Verdict v);

/// Evidence for membership of a k x n matrix in the class of matrices that
/// keep rank k after deleting any s columns.
struct HalaszCert {
    Verdict verdict = Verdict::inconclusive;
    Index s = 0;
    /// Exact minimum Hamming weight of a nonzero row-space vector, when computed.
    std::optional<Index> min_weight;
    /// Member via packing: more than s pairwise disjoint column sets, each a nonsingular k x k submatrix.
    std::vector<IndexSet> bases;
    /// Non-member: at most s columns whose deletion drops the rank below k.
    IndexSet deletion;
};

/// Packs disjoint nonsingular k x k column sets: repeatedly scans the unused
/// columns in increasing order, keeping each column independent of those
/// already kept, until no further basis completes. Empty when k = 0 or k > n.
std::vector<IndexSet> greedy_disjoint_bases(const RatMatrix& m);

struct HalaszOptions {
    /// Largest number of (k-1)-column subsets examined by the exact search.
    std::uint64_t budget = 2'000'000;
};

/// Exact minimum weight of a nonzero vector y^T M, for M of full row rank k >= 1.
/// Every such vector vanishes on a rank-(k-1) flat of columns; the flats are
/// spanned by independent (k-1)-subsets, so the search is over those.
/// Returns nullopt when C(n, k-1) exceeds the budget.
struct MinWeight {
    Index weight = 0;
    /// Support of a minimizing vector.
    IndexSet support;
};
std::optional<MinWeight> min_row_space_weight(const RatMatrix& m, const HalaszOptions& opts = {});

/// Decision with a fast sufficient test (greedy packing with more than s bases),
/// then the exact minimum-weight search, then an explicit inconclusive verdict.
HalaszCert halasz_membership(const RatMatrix& m, Index s, const HalaszOptions& opts = {});

/// Re-checks a certificate using only rank computations. A member verdict
/// backed solely by min_weight is re-derived by testing every deletion of up
/// to s columns, so that path is exponential in s.
bool verify_halasz(const RatMatrix& m, Index s, const HalaszCert& cert);

}  // namespace qlo
