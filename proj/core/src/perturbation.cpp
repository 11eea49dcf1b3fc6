#include "qlo/perturbation.hpp"

#include "qlo/detail/combinations.hpp"
#include "qlo/error.hpp"
#include "qlo/linalg.hpp"

namespace qlo {

namespace {

void check_shapes(const RatMatrix& a, const RatMatrix& t, const RatMatrix& u) {
    if (t.rows() != u.rows()) throw DimensionError("T and U must have the same number of rows");
    if (t.cols() != a.cols()) throw DimensionError("T must have one column per column of A");
    if (u.cols() != a.rows()) throw DimensionError("U must have one column per row of A");
}

bool pair_ok(const RatMatrix& t, const RatMatrix& u, const RatMatrix& a, Index r, const IndexSet& i_set,
             const IndexSet& j_set) {
    const Index k = t.rows();
    const RatMatrix ti = t.columns(i_set);
    const RatMatrix uj = u.columns(j_set);
    if (rank(ti) != k || rank(uj) != k) return false;
    return min_perturbed_rank(a.submatrix(j_set, i_set), ti, uj) >= r;
}

}  // namespace

Index min_perturbed_rank(const RatMatrix& a, const RatMatrix& t, const RatMatrix& u) {
    check_shapes(a, t, u);
    const RatMatrix bt = kernel_matrix(t);  // m x q
    const RatMatrix bu = kernel_matrix(u);  // n x p
    if (bt.cols() == 0 || bu.cols() == 0) return 0;
    return rank(bu.transpose() * a * bt);
}

Index block_identity_rank(const RatMatrix& a, const RatMatrix& t, const RatMatrix& u) {
    check_shapes(a, t, u);
    const Index k = t.rows();
    const RatMatrix top = hstack(a, u.transpose());
    const RatMatrix bottom = hstack(t, RatMatrix(k, k));
    const Index full = rank(vstack(top, bottom));
    return full - rank(t) - rank(u);
}

MCert m_membership(const RatMatrix& t, const RatMatrix& u, const RatMatrix& a, Index r, Index s,
                   const MSearchOptions& opts) {
    check_shapes(a, t, u);
    const Index k = t.rows();
    const Index m = t.cols();
    const Index n = u.cols();
    if (k > m || m > n) throw DomainError("robust-rank class needs k <= m <= n");
    if (m < k + r) throw DomainError("robust-rank class is undefined when m < k + r");

    MCert cert;
    cert.k = k;
    cert.r = r;
    std::vector<bool> used_i(m, false);
    std::vector<bool> used_j(n, false);
    const Index size = k + r;

    for (Index step = 0; step < s; ++step) {
        IndexSet pool_i;
        IndexSet pool_j;
        for (Index c = 0; c < m; ++c)
            if (!used_i[c]) pool_i.push_back(c);
        for (Index c = 0; c < n; ++c)
            if (!used_j[c]) pool_j.push_back(c);
        if (pool_i.size() < size || pool_j.size() < size) return cert;

        bool placed = false;
        std::uint64_t examined = 0;
        IndexSet pi = detail::first_combination(size);
        do {
            const IndexSet i_set = detail::pick(pool_i, pi);
            if (rank(t.columns(i_set)) != k) continue;
            IndexSet pj = detail::first_combination(size);
            do {
                if (++examined > opts.budget) return cert;
                const IndexSet j_set = detail::pick(pool_j, pj);
                if (pair_ok(t, u, a, r, i_set, j_set)) {
                    for (Index c : i_set) used_i[c] = true;
                    for (Index c : j_set) used_j[c] = true;
                    cert.i_sets.push_back(i_set);
                    cert.j_sets.push_back(j_set);
                    placed = true;
                }
            } while (!placed && detail::next_combination(pj, pool_j.size()));
        } while (!placed && detail::next_combination(pi, pool_i.size()));
        if (!placed) return cert;
    }
    cert.found = true;
    return cert;
}

bool verify_mcert(const RatMatrix& t, const RatMatrix& u, const RatMatrix& a, Index r, Index s, const MCert& cert) {
    check_shapes(a, t, u);
    const Index k = t.rows();
    if (!cert.found || cert.k != k || cert.r != r) return false;
    if (cert.i_sets.size() < s || cert.j_sets.size() != cert.i_sets.size()) return false;
    std::vector<bool> seen_i(t.cols(), false);
    std::vector<bool> seen_j(u.cols(), false);
    for (Index p = 0; p < cert.i_sets.size(); ++p) {
        const IndexSet& is = cert.i_sets[p];
        const IndexSet& js = cert.j_sets[p];
        if (is.size() != k + r || js.size() != k + r) return false;
        for (Index c : is) {
            if (c >= t.cols() || seen_i[c]) return false;
            seen_i[c] = true;
        }
        for (Index c : js) {
            if (c >= u.cols() || seen_j[c]) return false;
            seen_j[c] = true;
        }
        if (!pair_ok(t, u, a, r, is, js)) return false;
    }
    return true;
}

}  // namespace qlo
