#include "qlo/detail/enumeration.hpp"

#include "qlo/error.hpp"

namespace qlo::detail {

IntegerQuad IntegerQuad::from(const QuadPoly& q) {
    IntegerQuad out;
    const Index n = q.dim();
    out.n = n;

    RatVector all;
    all.reserve(n * n + n + 1);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) all.push_back(q.quad()(i, j));
    for (const auto& b : q.lin()) all.push_back(b);
    all.push_back(q.constant());
    out.scale = lcm_of_denominators(all);

    out.pair.assign(n * n, 0);
    out.lin.assign(n, 0);
    Rational constant = q.constant();
    for (Index i = 0; i < n; ++i) constant += q.quad()(i, i);
    out.constant = Rational(constant * out.scale).get_num();

    Integer mag = abs(out.constant);
    for (Index i = 0; i < n; ++i) {
        out.lin[i] = Rational(q.lin()[i] * out.scale).get_num();
        mag += abs(out.lin[i]);
        for (Index j = i + 1; j < n; ++j) {
            const Integer p = Rational(2 * q.quad()(i, j) * out.scale).get_num();
            out.pair[i * n + j] = p;
            out.pair[j * n + i] = p;
            mag += abs(p);
        }
    }
    // Fields reach sum_i |pair[j][i]| + |lin[j]| <= mag; a flip adds 2 |field|.
    out.magnitude = 3 * mag;
    return out;
}

IntegerSystem IntegerSystem::from(const RatMatrix& m, const RatVector& w) {
    if (w.size() != m.rows()) throw DimensionError("constraint needs one target per row");
    IntegerSystem out;
    out.rows = m.rows();
    out.n = m.cols();
    out.coeff.assign(out.rows * out.n, 0);
    out.target.assign(out.rows, 0);
    for (Index r = 0; r < out.rows; ++r) {
        RatVector row(m.row(r).begin(), m.row(r).end());
        row.push_back(w[r]);
        const Integer scale = lcm_of_denominators(row);
        Integer mag = 0;
        for (Index j = 0; j < out.n; ++j) {
            out.coeff[r * out.n + j] = Rational(m(r, j) * scale).get_num();
            mag += abs(out.coeff[r * out.n + j]);
        }
        out.target[r] = Rational(w[r] * scale).get_num();
        mag = 3 * mag + abs(out.target[r]);
        if (mag > out.magnitude) out.magnitude = mag;
    }
    return out;
}

}  // namespace qlo::detail
