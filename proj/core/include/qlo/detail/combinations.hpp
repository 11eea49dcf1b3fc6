#pragma once

#include "qlo/matrix.hpp"

#include <numeric>

namespace qlo::detail {

/// First k-subset {0, ..., k-1} of [n] in lexicographic order.
inline IndexSet first_combination(Index k) {
    IndexSet c(k);
    std::iota(c.begin(), c.end(), Index{0});
    return c;
}

/// Advances c to the next k-subset of [n] in lexicographic order; false after the last.
inline bool next_combination(IndexSet& c, Index n) {
    const Index k = c.size();
    Index i = k;
    while (i > 0) {
        --i;
        if (c[i] < n - k + i) {
            ++c[i];
            for (Index j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

/// Maps positions within `pool` back to the pool's own entries.
inline IndexSet pick(const IndexSet& pool, const IndexSet& positions) {
    IndexSet out;
    out.reserve(positions.size());
    for (Index p : positions) out.push_back(pool[p]);
    return out;
}

}  // namespace qlo::detail
