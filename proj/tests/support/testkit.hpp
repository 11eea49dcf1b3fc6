#pragma once

// Seeded generators and slow reference implementations shared by the tests.
// The oracles deliberately avoid the library's fast paths: they evaluate
// every point from scratch and test every column subset directly.

#include "qlo/detail/combinations.hpp"
#include "qlo/engine.hpp"
#include "qlo/linalg.hpp"
#include "qlo/matrix.hpp"
#include "qlo/quad_poly.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <vector>

namespace qlo::testkit {

using Rng = std::mt19937_64;

inline long uniform_int(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

/// p/q with |p| <= num_range and 1 <= q <= den_range.
inline Rational small_rational(Rng& rng, long num_range = 3, long den_range = 3) {
    Rational v(uniform_int(rng, -num_range, num_range), uniform_int(rng, 1, den_range));
    v.canonicalize();
    return v;
}

inline Rational nonzero_rational(Rng& rng, long num_range = 3, long den_range = 3) {
    for (;;) {
        Rational v = small_rational(rng, num_range, den_range);
        if (sgn(v) != 0) return v;
    }
}

/// Random polynomial; each monomial present with probability `density`.
inline QuadPoly random_quad(Rng& rng, Index n, double density = 0.6, long num_range = 3, long den_range = 2) {
    std::bernoulli_distribution keep(density);
    std::vector<Monomial> quad;
    for (Index i = 0; i < n; ++i)
        for (Index j = i; j < n; ++j)
            if (keep(rng)) quad.push_back({i, j, small_rational(rng, num_range, den_range)});
    RatVector lin(n);
    for (auto& b : lin) b = keep(rng) ? small_rational(rng, num_range, den_range) : Rational(0);
    return QuadPoly::from_monomials(n, quad, std::move(lin), small_rational(rng, num_range, den_range));
}

/// Random polynomial with coefficients in {-1, 0, 1}, shifted so that Q(x0) = 0
/// at a random sign vector x0, which keeps the zero event nonempty.
inline QuadPoly random_pm1_quad(Rng& rng, Index n) {
    std::vector<Monomial> quad;
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j) quad.push_back({i, j, Rational(uniform_int(rng, -1, 1))});
    RatVector lin(n);
    for (auto& b : lin) b = uniform_int(rng, -1, 1);
    QuadPoly q = QuadPoly::from_monomials(n, quad, std::move(lin), 0);
    const SignVector x0(n, rng());
    q.add_constant(-eval_quad(q, x0));
    return q;
}

inline RatMatrix random_matrix(Rng& rng, Index rows, Index cols, long num_range = 2, long den_range = 1,
                               double density = 1.0) {
    std::bernoulli_distribution keep(density);
    RatMatrix m(rows, cols);
    for (Index r = 0; r < rows; ++r)
        for (Index c = 0; c < cols; ++c) m(r, c) = keep(rng) ? small_rational(rng, num_range, den_range) : Rational(0);
    return m;
}

inline RatMatrix random_symmetric(Rng& rng, Index n, long num_range = 3, long den_range = 1) {
    RatMatrix m(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = i; j < n; ++j) m(i, j) = m(j, i) = small_rational(rng, num_range, den_range);
    return m;
}

/// Per-point re-evaluation of Q over the cube, counting only points with M x = w.
inline AtomHistogram naive_histogram(const QuadPoly& q, const LinearConstraint& c) {
    const Index n = q.dim();
    AtomHistogram h;
    h.total = pow2(static_cast<unsigned>(n));
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        const SignVector x(n, bits);
        if (c.rows() > 0 && !c.satisfied_by(x.as_rationals())) continue;
        h.counts[eval_quad(q, x)] += 1;
    }
    return h;
}

inline AtomHistogram naive_histogram(const QuadPoly& q) { return naive_histogram(q, LinearConstraint::none(q.dim())); }

/// Membership by testing the rank after every deletion of at most s columns.
inline bool brute_halasz(const RatMatrix& m, Index s) {
    const Index k = m.rows();
    const Index n = m.cols();
    if (k == 0) return true;
    if (rank(m) < k) return false;
    for (Index size = 1; size <= s && size <= n; ++size) {
        IndexSet del = detail::first_combination(size);
        do {
            if (column_rank(m, complement(del, n)) < k) return false;
        } while (detail::next_combination(del, n));
    }
    return true;
}

}  // namespace qlo::testkit
