#include "qlo/algebra.hpp"

#include "qlo/error.hpp"
#include "qlo/linalg.hpp"

namespace qlo {

QuadPoly perturb_equivalent(const QuadPoly& q, const RatMatrix& m, const RatVector& w, const RatMatrix& l,
                            const RatMatrix& r, const RatVector& d) {
    const Index n = q.dim();
    const Index k = m.rows();
    if (m.cols() != n) throw DimensionError("M must have n columns");
    if (w.size() != k) throw DimensionError("w must have one entry per row of M");
    if (l.rows() != n || l.cols() != k) throw DimensionError("L must be n x k");
    if (r.rows() != k || r.cols() != n) throw DimensionError("R must be k x n");
    if (d.size() != n) throw DimensionError("D must have n entries");

    RatMatrix a_star = q.quad() + l * m + m.transpose() * r + RatMatrix::diagonal(d);
    RatMatrix sym = (a_star + a_star.transpose()) * Rational(1, 2);

    // w^T (L^T + R) as a row vector of length n.
    const RatMatrix shift = l.transpose() + r;
    RatVector lin = q.lin();
    for (Index j = 0; j < n; ++j) {
        Rational acc = 0;
        for (Index i = 0; i < k; ++i) acc += w[i] * shift(i, j);
        lin[j] -= acc;
    }
    Rational constant = q.constant();
    for (const auto& di : d) constant -= di;
    return QuadPoly(std::move(sym), std::move(lin), std::move(constant));
}

std::vector<SquareTerm> square_decompose(const RatMatrix& a_in) {
    if (!a_in.is_symmetric()) throw DomainError("square_decompose needs a symmetric matrix");
    const Index n = a_in.rows();
    RatMatrix a = a_in;
    std::vector<SquareTerm> terms;

    for (;;) {
        // Find u with u^T A u != 0: a unit vector on a nonzero diagonal entry,
        // else e_i + e_j on a nonzero off-diagonal entry.
        RatVector u(n);
        bool found = false;
        for (Index i = 0; i < n && !found; ++i) {
            if (sgn(a(i, i)) != 0) {
                u[i] = 1;
                found = true;
            }
        }
        for (Index i = 0; i < n && !found; ++i) {
            for (Index j = i + 1; j < n && !found; ++j) {
                if (sgn(a(i, j)) != 0) {
                    u[i] = 1;
                    u[j] = 1;
                    found = true;
                }
            }
        }
        if (!found) break;

        const RatVector h = a * std::span<const Rational>(u);
        const Rational quad_value = dot(u, h);
        // x^T A x = (h^T x)^2 / quad_value + x^T (A - h h^T / quad_value) x
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j) a(i, j) -= h[i] * h[j] / quad_value;

        Index lead = 0;
        while (sgn(h[lead]) == 0) ++lead;
        const Rational scale = h[lead];
        SquareTerm term;
        term.g.resize(n);
        for (Index i = 0; i < n; ++i) term.g[i] = h[i] / scale;
        term.lambda = scale * scale / quad_value;
        terms.push_back(std::move(term));
    }
    return terms;
}

std::vector<RatVector> translation_directions(const QuadPoly& q) {
    RatMatrix stacked = vstack(q.quad(), RatMatrix(1, q.dim(), q.lin()));
    return rank_and_kernel(stacked).kernel;
}

bool le_sum_sqrt(const Rational& a, const Rational& b, const Rational& c) {
    if (sgn(a) < 0 || sgn(b) < 0 || sgn(c) < 0) throw DomainError("le_sum_sqrt expects nonnegative inputs");
    if (a <= b) return true;
    const Rational gap = a - b;
    return gap * gap <= c;
}

}  // namespace qlo
