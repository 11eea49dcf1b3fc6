#include "qlo/certificates.hpp"

#include "qlo/detail/combinations.hpp"
#include "qlo/error.hpp"
#include "qlo/linalg.hpp"

#include <algorithm>

namespace qlo {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::member:
            return "member";
        case Verdict::non_member:
            return "non-member";
        case Verdict::inconclusive:
            return "inconclusive";
    }
    return "inconclusive";
}

std::vector<IndexSet> greedy_disjoint_bases(const RatMatrix& m) {
    const Index k = m.rows();
    const Index n = m.cols();
    std::vector<IndexSet> out;
    if (k == 0 || k > n) return out;

    std::vector<bool> used(n, false);
    for (;;) {
        IndexSet basis;
        for (Index c = 0; c < n && basis.size() < k; ++c) {
            if (used[c]) continue;
            basis.push_back(c);
            if (column_rank(m, basis) < basis.size()) basis.pop_back();
        }
        if (basis.size() < k) break;
        for (Index c : basis) used[c] = true;
        out.push_back(std::move(basis));
    }
    return out;
}

std::optional<MinWeight> min_row_space_weight(const RatMatrix& m, const HalaszOptions& opts) {
    const Index k = m.rows();
    const Index n = m.cols();
    if (k == 0) throw DomainError("min_row_space_weight needs at least one row");
    if (rank(m) < k) throw DomainError("min_row_space_weight needs full row rank");
    if (binomial(static_cast<unsigned>(n), static_cast<unsigned>(k - 1)) > from_u64(opts.budget))
        return std::nullopt;

    const RatMatrix mt = m.transpose();
    std::optional<MinWeight> best;
    IndexSet cols = detail::first_combination(k - 1);
    do {
        // y spans the left kernel of M[:, cols] when those columns are independent.
        const RatMatrix sub = mt.rows_of(cols);  // (k-1) x k
        RankKernel rk = rank_and_kernel(sub);
        if (rk.rank != k - 1) continue;
        const RatVector& y = rk.kernel.front();
        IndexSet support;
        for (Index c = 0; c < n; ++c) {
            Rational acc = 0;
            for (Index r = 0; r < k; ++r) acc += y[r] * m(r, c);
            if (sgn(acc) != 0) support.push_back(c);
        }
        if (!best || support.size() < best->weight) best = MinWeight{support.size(), std::move(support)};
    } while (detail::next_combination(cols, n));
    return best;
}

HalaszCert halasz_membership(const RatMatrix& m, Index s, const HalaszOptions& opts) {
    HalaszCert cert;
    cert.s = s;
    const Index k = m.rows();
    if (k == 0) {
        cert.verdict = Verdict::member;
        return cert;
    }
    if (rank(m) < k) {
        cert.verdict = Verdict::non_member;
        return cert;
    }
    auto bases = greedy_disjoint_bases(m);
    if (bases.size() > s) {
        cert.verdict = Verdict::member;
        cert.bases = std::move(bases);
        return cert;
    }
    auto mw = min_row_space_weight(m, opts);
    if (!mw) return cert;
    cert.min_weight = mw->weight;
    if (mw->weight > s) {
        cert.verdict = Verdict::member;
    } else {
        cert.verdict = Verdict::non_member;
        cert.deletion = std::move(mw->support);
    }
    return cert;
}

namespace {

bool rank_survives_all_deletions(const RatMatrix& m, Index s) {
    const Index n = m.cols();
    const Index k = m.rows();
    for (Index size = 0; size <= std::min(s, n); ++size) {
        IndexSet del = detail::first_combination(size);
        do {
            const IndexSet keep = complement(del, n);
            if (column_rank(m, keep) < k) return false;
        } while (detail::next_combination(del, n));
    }
    return true;
}

}  // namespace

bool verify_halasz(const RatMatrix& m, Index s, const HalaszCert& cert) {
    const Index k = m.rows();
    const Index n = m.cols();
    switch (cert.verdict) {
        case Verdict::inconclusive:
            return false;
        case Verdict::non_member: {
            if (cert.deletion.size() > s) return false;
            for (Index c : cert.deletion)
                if (c >= n) return false;
            if (k == 0) return false;
            return column_rank(m, complement(cert.deletion, n)) < k;
        }
        case Verdict::member: {
            if (k == 0) return true;
            if (!cert.bases.empty()) {
                if (cert.bases.size() <= s) return false;
                std::vector<bool> seen(n, false);
                for (const auto& b : cert.bases) {
                    if (b.size() != k) return false;
                    for (Index c : b) {
                        if (c >= n || seen[c]) return false;
                        seen[c] = true;
                    }
                    if (column_rank(m, b) != k) return false;
                }
                return true;
            }
            if (!cert.min_weight || *cert.min_weight <= s) return false;
            return rank_survives_all_deletions(m, s);
        }
    }
    return false;
}

}  // namespace qlo
