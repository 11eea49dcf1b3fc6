#include "qlo/matrix_split.hpp"

#include "qlo/certificates.hpp"
#include "qlo/error.hpp"
#include "qlo/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace qlo {

namespace {

std::string describe(const IndexSet& s) {
    std::ostringstream out;
    out << '{';
    for (Index p = 0; p < s.size(); ++p) out << (p ? "," : "") << s[p];
    out << '}';
    return out.str();
}

struct Pair {
    IndexSet i_set;
    IndexSet j_set;
};

Pair find_pair(const RatMatrix& m, const RatMatrix& a, const IndexSet& pool) {
    const Index k = m.rows();
    const Index n = m.cols();

    // Step 1: two disjoint bases inside the pool.
    IndexSet i0;
    IndexSet j0;
    if (k > 0) {
        const auto bases = greedy_disjoint_bases(m.columns(pool));
        if (bases.size() < 2)
            throw HypothesisViolation("M lost rank on the remaining columns " + describe(pool));
        for (Index p : bases[0]) i0.push_back(pool[p]);
        for (Index p : bases[1]) j0.push_back(pool[p]);
    }

    // Step 2: A1 = A + L M zeroes columns I'; A' = A1 + M^T R zeroes rows J'.
    RatMatrix ap = a;
    if (k > 0) {
        const auto mi_inv = inverse(m.columns(i0));
        const auto mj_inv = inverse(m.columns(j0).transpose());
        const RatMatrix l = (a.columns(i0) * (*mi_inv)) * Rational(-1);
        ap = ap + l * m;
        const RatMatrix r = ((*mj_inv) * ap.rows_of(j0)) * Rational(-1);
        ap = ap + m.transpose() * r;
    }

    IndexSet rest;
    for (Index c : pool)
        if (std::find(i0.begin(), i0.end(), c) == i0.end() && std::find(j0.begin(), j0.end(), c) == j0.end())
            rest.push_back(c);

    Index ej = n;
    Index ei = n;
    for (Index j : rest) {
        for (Index i : rest) {
            if (i != j && sgn(ap(j, i)) != 0) {
                ej = j;
                ei = i;
                break;
            }
        }
        if (ej != n) break;
    }
    if (ej == n) throw HypothesisViolation("no nonzero off-diagonal entry on S = " + describe(rest));

    // Diagonal adjustment: det [[a'_ji, a'_jh], [a'_hi, d_h]] = 0. The pivot
    // a'_ji is nonzero, so every h gets a well-defined d_h.
    RatMatrix as = ap;
    for (Index h : rest) {
        if (h == ei || h == ej) continue;
        as(h, h) = ap(ej, h) * ap(h, ei) / ap(ej, ei);
    }

    IndexSet cols_no_j;
    for (Index c : rest)
        if (c != ej) cols_no_j.push_back(c);
    Index jp = n;
    for (Index h : rest) {
        if (h == ei || h == ej) continue;
        const IndexSet rows{ej, h};
        if (rank(as.submatrix(rows, cols_no_j)) == 2) {
            jp = h;
            break;
        }
    }
    IndexSet s_rest;
    for (Index c : rest)
        if (c != ei && c != ej) s_rest.push_back(c);
    if (jp == n) throw HypothesisViolation("off-diagonal rank below 2 on S = " + describe(s_rest));

    Index ip = n;
    for (Index h : rest) {
        if (h == ei || h == ej) continue;
        const IndexSet rows{ej, jp};
        const IndexSet cols{ei, h};
        if (rank(as.submatrix(rows, cols)) == 2) {
            ip = h;
            break;
        }
    }
    if (ip == n || ip == jp) throw HypothesisViolation("off-diagonal rank below 2 on S = " + describe(s_rest));

    Pair out;
    out.i_set = i0;
    out.i_set.push_back(ei);
    out.i_set.push_back(ip);
    out.j_set = j0;
    out.j_set.push_back(ej);
    out.j_set.push_back(jp);
    std::sort(out.i_set.begin(), out.i_set.end());
    std::sort(out.j_set.begin(), out.j_set.end());

    // Step 3: bordered block [[A[J x I], M[:, J]^T], [M[:, I], 0]] of full rank.
    const RatMatrix top = hstack(a.submatrix(out.j_set, out.i_set), m.columns(out.j_set).transpose());
    const RatMatrix bottom = hstack(m.columns(out.i_set), RatMatrix(k, k));
    if (rank(vstack(top, bottom)) != 2 * k + 2)
        throw HypothesisViolation("bordered block is singular for I = " + describe(out.i_set) +
                                  ", J = " + describe(out.j_set));
    return out;
}

}  // namespace

SplitResult matrix_split(const RatMatrix& m, const RatMatrix& a, const Rational& s) {
    const Index k = m.rows();
    const Index n = m.cols();
    if (a.rows() != n || a.cols() != n) throw DimensionError("A must be n x n");
    if (!a.is_symmetric()) throw DomainError("A must be symmetric");
    const Rational denom(static_cast<unsigned long>(4 * k + 8));
    if (s < denom) throw DomainError("matrix_split needs s >= 4k + 8");
    if (k > 0) {
        Integer s_floor;
        mpz_fdiv_q(s_floor.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
        // An inconclusive verdict leaves the hypothesis on trust.
        if (s_floor > static_cast<unsigned long>(n) ||
            halasz_membership(m, s_floor.get_ui()).verdict == Verdict::non_member)
            throw DomainError("M is not in H(s)");
    }

    Integer ell_z;
    const Rational ratio = s / denom;
    mpz_fdiv_q(ell_z.get_mpz_t(), ratio.get_num_mpz_t(), ratio.get_den_mpz_t());
    const Index ell = ell_z.get_ui();

    SplitResult out;
    out.s_prime = ell;
    std::vector<bool> used(n, false);
    for (Index t = 0; t < ell; ++t) {
        IndexSet pool;
        for (Index c = 0; c < n; ++c)
            if (!used[c]) pool.push_back(c);
        Pair p = find_pair(m, a, pool);
        for (Index c : p.i_set) used[c] = true;
        for (Index c : p.j_set) used[c] = true;
        out.i_part.insert(out.i_part.end(), p.i_set.begin(), p.i_set.end());
        out.i_sets.push_back(std::move(p.i_set));
        out.j_sets.push_back(std::move(p.j_set));
    }
    std::sort(out.i_part.begin(), out.i_part.end());
    out.j_part = complement(out.i_part, n);

    auto position = [](const IndexSet& part, Index c) {
        return static_cast<Index>(std::lower_bound(part.begin(), part.end(), c) - part.begin());
    };
    out.cert.found = true;
    out.cert.k = k;
    out.cert.r = 2;
    for (Index t = 0; t < ell; ++t) {
        IndexSet ip;
        IndexSet jp;
        for (Index c : out.i_sets[t]) ip.push_back(position(out.i_part, c));
        for (Index c : out.j_sets[t]) jp.push_back(position(out.j_part, c));
        out.cert.i_sets.push_back(std::move(ip));
        out.cert.j_sets.push_back(std::move(jp));
    }
    return out;
}

}  // namespace qlo
