#include "qlo/linalg.hpp"

#include "qlo/error.hpp"

#include <utility>

namespace qlo {

namespace {

using IntMatrix = std::vector<std::vector<Integer>>;

IntMatrix integerize_rows(const RatMatrix& m) {
    IntMatrix out(m.rows(), std::vector<Integer>(m.cols()));
    for (Index r = 0; r < m.rows(); ++r) {
        const Integer scale = lcm_of_denominators(m.row(r));
        for (Index c = 0; c < m.cols(); ++c) {
            const Rational& q = m(r, c);
            out[r][c] = q.get_num() * (scale / q.get_den());
        }
    }
    return out;
}

// Bareiss elimination in place; returns pivot columns. After the call the
// first pivots.size() rows form an echelon form with the listed pivots.
IndexSet bareiss_echelon(IntMatrix& a, Index cols) {
    const Index rows = a.size();
    IndexSet pivots;
    Integer prev = 1;
    Index r = 0;
    for (Index c = 0; c < cols && r < rows; ++c) {
        Index p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        for (Index i = r + 1; i < rows; ++i) {
            for (Index j = c + 1; j < cols; ++j) {
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]);
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

RankKernel rank_and_kernel(const RatMatrix& m) {
    RankKernel out;
    IntMatrix a = integerize_rows(m);
    out.pivots = bareiss_echelon(a, m.cols());
    out.rank = out.pivots.size();

    std::vector<char> is_pivot(m.cols(), 0);
    for (Index c : out.pivots) is_pivot[c] = 1;

    for (Index free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        RatVector x(m.cols());
        x[free] = 1;
        for (Index pi = out.rank; pi-- > 0;) {
            const Index pc = out.pivots[pi];
            Rational acc = 0;
            for (Index c = pc + 1; c < m.cols(); ++c) {
                if (a[pi][c] != 0 && sgn(x[c]) != 0) acc += Rational(a[pi][c]) * x[c];
            }
            x[pc] = -acc / Rational(a[pi][pc]);
        }
        out.kernel.push_back(std::move(x));
    }
    return out;
}

Index rank(const RatMatrix& m) {
    IntMatrix a = integerize_rows(m);
    return bareiss_echelon(a, m.cols()).size();
}

RatMatrix kernel_matrix(const RatMatrix& m) {
    const auto rk = rank_and_kernel(m);
    RatMatrix out(m.cols(), rk.kernel.size());
    for (Index j = 0; j < rk.kernel.size(); ++j)
        for (Index i = 0; i < m.cols(); ++i) out(i, j) = rk.kernel[j][i];
    return out;
}

std::optional<RatMatrix> inverse(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("inverse of a non-square matrix");
    const Index n = m.rows();
    RatMatrix a = m;
    RatMatrix inv = RatMatrix::identity(n);
    for (Index c = 0; c < n; ++c) {
        Index p = c;
        while (p < n && sgn(a(p, c)) == 0) ++p;
        if (p == n) return std::nullopt;
        if (p != c) {
            for (Index j = 0; j < n; ++j) {
                std::swap(a(p, j), a(c, j));
                std::swap(inv(p, j), inv(c, j));
            }
        }
        const Rational pivot = a(c, c);
        for (Index j = 0; j < n; ++j) {
            a(c, j) /= pivot;
            inv(c, j) /= pivot;
        }
        for (Index i = 0; i < n; ++i) {
            if (i == c || sgn(a(i, c)) == 0) continue;
            const Rational f = a(i, c);
            for (Index j = 0; j < n; ++j) {
                a(i, j) -= f * a(c, j);
                inv(i, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

Index column_rank(const RatMatrix& m, std::span<const Index> cols) { return rank(m.columns(cols)); }

}  // namespace qlo
