#include "qlo/quad_poly.hpp"

#include "qlo/error.hpp"

#include <string>

namespace qlo {

SignVector::SignVector(Index n) : n_(n), words_((n + 63) / 64, 0) {}

SignVector::SignVector(Index n, std::uint64_t bits) : SignVector(n) {
    if (n > 64) throw DimensionError("SignVector(n, bits) supports n <= 64");
    if (n > 0) words_[0] = n == 64 ? bits : (bits & ((std::uint64_t{1} << n) - 1));
}

SignVector SignVector::from_signs(std::span<const int> signs) {
    SignVector out(signs.size());
    for (Index j = 0; j < signs.size(); ++j) out.set(j, signs[j]);
    return out;
}

void SignVector::set(Index j, int sign) {
    if (sign != 1 && sign != -1) throw DomainError("sign must be +1 or -1");
    const std::uint64_t mask = std::uint64_t{1} << (j % 64);
    if (sign == 1) {
        words_[j / 64] |= mask;
    } else {
        words_[j / 64] &= ~mask;
    }
}

RatVector SignVector::as_rationals() const {
    RatVector out(n_);
    for (Index j = 0; j < n_; ++j) out[j] = sign(j);
    return out;
}

QuadPoly::QuadPoly(Index n) : n_(n), a_(n, n), b_(n), c_(0) {}

QuadPoly::QuadPoly(RatMatrix quad, RatVector lin, Rational constant)
    : n_(quad.rows()), a_(std::move(quad)), b_(std::move(lin)), c_(std::move(constant)) {
    if (a_.rows() != a_.cols()) throw DimensionError("quadratic part must be square");
    if (b_.size() != n_) throw DimensionError("linear part length must equal dimension");
    if (!a_.is_symmetric()) throw DomainError("quadratic part must be symmetric");
}

QuadPoly QuadPoly::from_monomials(Index n, std::span<const Monomial> quad, RatVector lin, Rational constant) {
    if (lin.empty()) lin.assign(n, Rational(0));
    if (lin.size() != n) throw DimensionError("linear part length must equal dimension");
    RatMatrix a(n, n);
    for (const auto& mono : quad) {
        if (mono.i >= n || mono.j >= n) throw DimensionError("monomial index out of range");
        if (mono.i == mono.j) {
            a(mono.i, mono.i) += mono.coeff;
        } else {
            const Rational half = mono.coeff / 2;
            a(mono.i, mono.j) += half;
            a(mono.j, mono.i) += half;
        }
    }
    return QuadPoly(std::move(a), std::move(lin), std::move(constant));
}

QuadPoly QuadPoly::constant_poly(Index n, Rational value) {
    QuadPoly q(n);
    q.c_ = std::move(value);
    return q;
}

QuadPoly QuadPoly::product_of_affine(std::span<const Rational> v, const Rational& v0, std::span<const Rational> u,
                                     const Rational& u0) {
    if (v.size() != u.size()) throw DimensionError("affine factors must share a dimension");
    const Index n = v.size();
    // (v.x + v0)(u.x + u0) = x^T (v u^T + u v^T)/2 x + (u0 v + v0 u).x + v0 u0
    RatMatrix a(n, n);
    RatVector b(n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) a(i, j) = (v[i] * u[j] + u[i] * v[j]) / 2;
        b[i] = u0 * v[i] + v0 * u[i];
    }
    return QuadPoly(std::move(a), std::move(b), v0 * u0);
}

QuadPoly QuadPoly::square_of_affine(std::span<const Rational> v, const Rational& v0) {
    return product_of_affine(v, v0, v, v0);
}

std::vector<Monomial> QuadPoly::monomials() const {
    std::vector<Monomial> out;
    for (Index i = 0; i < n_; ++i) {
        if (sgn(a_(i, i)) != 0) out.push_back({i, i, a_(i, i)});
        for (Index j = i + 1; j < n_; ++j) {
            if (sgn(a_(i, j)) != 0) out.push_back({i, j, 2 * a_(i, j)});
        }
    }
    return out;
}

bool QuadPoly::is_constant_polynomial() const {
    if (!a_.is_zero()) return false;
    for (const auto& bi : b_)
        if (sgn(bi) != 0) return false;
    return true;
}

QuadPoly& QuadPoly::operator+=(const QuadPoly& other) {
    if (n_ != other.n_) throw DimensionError("polynomial sum dimension mismatch");
    a_ += other.a_;
    for (Index i = 0; i < n_; ++i) b_[i] += other.b_[i];
    c_ += other.c_;
    return *this;
}

QuadPoly& QuadPoly::operator*=(const Rational& scalar) {
    a_ *= scalar;
    for (auto& bi : b_) bi *= scalar;
    c_ *= scalar;
    return *this;
}

QuadPoly& QuadPoly::add_constant(const Rational& delta) {
    c_ += delta;
    return *this;
}

void LinearConstraint::check(Index n) const {
    if (m.cols() != n) {
        throw DimensionError("constraint matrix has " + std::to_string(m.cols()) + " columns, expected " +
                             std::to_string(n));
    }
    if (w.size() != m.rows()) throw DimensionError("constraint right-hand side length must equal row count");
}

bool LinearConstraint::satisfied_by(std::span<const Rational> x) const {
    const RatVector mx = m * x;
    for (Index r = 0; r < mx.size(); ++r)
        if (mx[r] != w[r]) return false;
    return true;
}

Rational eval_at(const QuadPoly& q, std::span<const Rational> x) {
    if (x.size() != q.dim()) throw DimensionError("point dimension does not match polynomial");
    const auto& a = q.quad();
    Rational acc = q.constant();
    for (Index i = 0; i < q.dim(); ++i) {
        if (sgn(x[i]) == 0) continue;
        Rational row = 0;
        for (Index j = 0; j < q.dim(); ++j) {
            if (sgn(a(i, j)) != 0) row += a(i, j) * x[j];
        }
        acc += x[i] * (row + q.lin()[i]);
    }
    return acc;
}

Rational eval_quad(const QuadPoly& q, const SignVector& x) {
    if (x.size() != q.dim()) throw DimensionError("sign vector dimension does not match polynomial");
    const auto& a = q.quad();
    Rational acc = q.constant();
    for (Index i = 0; i < q.dim(); ++i) {
        Rational row = q.lin()[i];
        for (Index j = 0; j < q.dim(); ++j) {
            if (sgn(a(i, j)) == 0) continue;
            if (x.is_plus(j)) {
                row += a(i, j);
            } else {
                row -= a(i, j);
            }
        }
        if (x.is_plus(i)) {
            acc += row;
        } else {
            acc -= row;
        }
    }
    return acc;
}

Rational flip_delta(const QuadPoly& q, const SignVector& x, Index j) {
    if (j >= q.dim()) throw DimensionError("flip index out of range");
    if (x.size() != q.dim()) throw DimensionError("sign vector dimension does not match polynomial");
    const auto& a = q.quad();
    Rational field = 0;
    for (Index i = 0; i < q.dim(); ++i) {
        if (i == j || sgn(a(j, i)) == 0) continue;
        field += x.is_plus(i) ? a(j, i) : Rational(-a(j, i));
    }
    Rational delta = 2 * field + q.lin()[j];
    delta *= x.is_plus(j) ? -2 : 2;
    return delta;
}

}  // namespace qlo
