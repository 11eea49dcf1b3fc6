#pragma once

#include "qlo/matrix.hpp"
#include "qlo/quad_poly.hpp"

#include <vector>

namespace qlo {

/// Builds Q* whose quadratic part is A* = A + L M + M^T R + diag(D) and which
/// agrees with Q on every sign vector satisfying M x = w:
///
///   Q*(x) = Q(x) + x^T A* x - x^T A x - w^T (L^T + R) x - sum_i D_i.
///
/// A* is generally not symmetric; the returned polynomial stores its
/// symmetrization, which defines the same quadratic form.
///
/// Shapes: M is k x n, w has k entries, L is n x k, R is k x n, D has n entries.
QuadPoly perturb_equivalent(const QuadPoly& q, const RatMatrix& m, const RatVector& w, const RatMatrix& l,
                            const RatMatrix& r, const RatVector& d);

struct SquareTerm {
    Rational lambda;
    /// Coefficient vector of the linear form; first nonzero entry is 1.
    RatVector g;
};

/// x^T A x = sum_i lambda_i (g_i^T x)^2 with exactly rank(A) terms and
/// linearly independent g_i (symmetric elimination over Q).
std::vector<SquareTerm> square_decompose(const RatMatrix& a);

/// Basis of {v : A v = 0 and b^T v = 0}, the directions along which Q is
/// translation invariant.
std::vector<RatVector> translation_directions(const QuadPoly& q);

/// Exact test of a <= b + sqrt(c) for nonnegative rationals.
bool le_sum_sqrt(const Rational& a, const Rational& b, const Rational& c);

}  // namespace qlo
