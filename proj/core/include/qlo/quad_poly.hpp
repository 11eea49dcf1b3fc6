#pragma once

#include "qlo/matrix.hpp"
#include "qlo/rational.hpp"

#include <cstdint>
#include <span>
#include <tuple>
#include <vector>

namespace qlo {

/// A point of {-1, +1}^n; bit j set means coordinate j is +1.
class SignVector {
public:
    SignVector() = default;
    /// All coordinates -1.
    explicit SignVector(Index n);
    /// Low n bits of `bits` (n <= 64).
    SignVector(Index n, std::uint64_t bits);
    static SignVector from_signs(std::span<const int> signs);

    Index size() const { return n_; }
    bool is_plus(Index j) const { return (words_[j / 64] >> (j % 64)) & 1U; }
    int sign(Index j) const { return is_plus(j) ? 1 : -1; }
    void set(Index j, int sign);
    void flip(Index j) { words_[j / 64] ^= std::uint64_t{1} << (j % 64); }
    SignVector flipped(Index j) const {
        SignVector out = *this;
        out.flip(j);
        return out;
    }
    /// Low 64 coordinates packed as bits.
    std::uint64_t low_bits() const { return words_.empty() ? 0 : words_[0]; }
    RatVector as_rationals() const;

    friend bool operator==(const SignVector&, const SignVector&) = default;

private:
    Index n_ = 0;
    std::vector<std::uint64_t> words_;
};

/// One monomial coefficient as it appears in input files: coefficient of
/// x_i * x_j for i <= j (x_i^2 when i == j).
struct Monomial {
    Index i;
    Index j;
    Rational coeff;
};

/// Q(x) = x^T A x + b^T x + c with A symmetric.
///
/// Convention: the coefficient of the monomial x_i x_j (i != j) is 2 A[i,j];
/// the coefficient of x_i^2 is A[i,i]. Monomial-list input is converted on
/// ingest, so `from_monomials({{0, 1, 1}})` is the polynomial x_0 x_1 with
/// A[0,1] = A[1,0] = 1/2.
class QuadPoly {
public:
    QuadPoly() = default;
    explicit QuadPoly(Index n);
    /// Throws DimensionError on shape mismatch and DomainError if A is not symmetric.
    QuadPoly(RatMatrix quad, RatVector lin, Rational constant);

    static QuadPoly from_monomials(Index n, std::span<const Monomial> quad, RatVector lin, Rational constant);
    static QuadPoly constant_poly(Index n, Rational value);
    /// (v^T x + shift) * (u^T x + shift2), expanded.
    static QuadPoly product_of_affine(std::span<const Rational> v, const Rational& v0, std::span<const Rational> u,
                                      const Rational& u0);
    /// (v^T x + shift)^2.
    static QuadPoly square_of_affine(std::span<const Rational> v, const Rational& v0);

    Index dim() const { return n_; }
    const RatMatrix& quad() const { return a_; }
    const RatVector& lin() const { return b_; }
    const Rational& constant() const { return c_; }

    /// Monomial form (i <= j), nonzero entries only, in row-major order.
    std::vector<Monomial> monomials() const;

    /// True when the quadratic and linear parts are identically zero.
    bool is_constant_polynomial() const;

    QuadPoly& operator+=(const QuadPoly& other);
    QuadPoly& operator*=(const Rational& scalar);
    QuadPoly& add_constant(const Rational& delta);

    friend bool operator==(const QuadPoly&, const QuadPoly&) = default;

private:
    Index n_ = 0;
    RatMatrix a_;
    RatVector b_;
    Rational c_;
};

/// k x n system M x = w; k = 0 is the vacuous constraint.
struct LinearConstraint {
    RatMatrix m;
    RatVector w;

    static LinearConstraint none(Index n) { return {RatMatrix(0, n), {}}; }
    Index rows() const { return m.rows(); }
    Index dim() const { return m.cols(); }
    /// Throws DimensionError unless w.size() == m.rows() and m.cols() == n.
    void check(Index n) const;
    bool satisfied_by(std::span<const Rational> x) const;
};

/// x^T A x + b^T x + c at a sign vector. Throws DimensionError when x.size() != q.dim().
Rational eval_quad(const QuadPoly& q, const SignVector& x);

/// Same polynomial at an arbitrary rational point.
Rational eval_at(const QuadPoly& q, std::span<const Rational> x);

/// Q(x with coordinate j flipped) - Q(x) = -2 x_j (2 sum_{i != j} A[j,i] x_i + b[j]).
/// Throws DimensionError when j is out of range.
Rational flip_delta(const QuadPoly& q, const SignVector& x, Index j);

}  // namespace qlo
