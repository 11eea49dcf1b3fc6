#pragma once

#include "qlo/distribution.hpp"
#include "qlo/rational.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <optional>

namespace qlo {

/// About 166 bits of mantissa.
using BigFloat = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<50>,
                                               boost::multiprecision::et_off>;

BigFloat log2_of(const Integer& v);
BigFloat log2_of(const Rational& v);

/// Positive real parameter (s or t) known through its base-2 logarithm, and
/// exactly when it is rational.
struct PosReal {
    BigFloat log2;
    std::optional<Rational> exact;

    static PosReal of(const Rational& v);
    static PosReal of(long v) { return of(Rational(v)); }
    /// 2^e for an arbitrary real exponent; exact when e is a small nonnegative integer.
    static PosReal pow2(const BigFloat& e);
};

/// min(raw, 1) for a nonnegative bound, held as log2(raw) plus a flag telling
/// whether the raw value exceeded 1. When raw is a rational of moderate size
/// it is also kept exactly so that comparisons need no rounding.
class LogBound {
public:
    static LogBound from_log2(const BigFloat& raw);
    static LogBound from_rational(const Rational& raw);
    static LogBound zero();

    const BigFloat& log2_raw() const { return raw_; }
    /// log2 of the clamped value (at most 0); -inf for the zero bound.
    BigFloat log2() const;
    bool clamped() const { return raw_ > 0; }
    bool is_zero() const;
    const std::optional<Rational>& exact() const { return exact_; }
    double log2_double() const { return static_cast<double>(log2()); }

private:
    BigFloat raw_;
    std::optional<Rational> exact_;
};

/// p <= min(raw, 1). Exact when the bound is; otherwise log2(p) is rounded
/// toward +inf and must sit below the bound by a 2^-100 relative margin, so a
/// true answer is never produced by rounding.
bool dominated_by(const Rational& p, const LogBound& b);
bool dominated_by(const DyadicProb& p, const LogBound& b);

/// C(n, floor(n/2)) 2^-n.
LogBound erdos_lo(unsigned n);
/// 2^-k.
LogBound odlyzko(unsigned k);
/// t^(-k/2) for t >= 1 disjoint nonsingular k x k submatrices.
LogBound halasz_fjz(unsigned k, const Integer& t);
/// t^(-(k-d)/2) for a d-dimensional affine target, 0 <= d <= k.
LogBound halasz_affine(unsigned k, unsigned d, const Integer& t);
/// (s/k)^(-k/2), k >= 1, s > 0.
LogBound halasz_sub(unsigned k, const PosReal& s);
/// 2^(dr+1) / t^((r-d)/2); requires 0 <= d < r, t >= 1 and 2^d | t.
LogBound geometric(unsigned d, unsigned r, const Integer& t);
/// (s / (2^(3r^2) (k+r)^2))^(-(k+1)/2), r >= 1.
LogBound low_rank(unsigned k, const PosReal& s, unsigned r);
/// (s / (10^60 (k+r)^20))^(-(k+r)/2), r >= 1.
LogBound key_lemma(unsigned k, unsigned r, const PosReal& s);
/// (s / (10^61 (k+2)^20))^(-(k+2)/2).
LogBound key_corollary(unsigned k, const PosReal& s);
/// (10r)^(30r) t^(-r/2), r >= 1, t >= 1.
LogBound hamming(unsigned r, const Integer& t);
/// Coordinate fraction 1/(6r) paired with hamming(r, t).
Rational hamming_fraction(unsigned r);

/// sum_{j=k}^{i-1} j / 2^(j-k+2), summed directly; throws std::logic_error if
/// it ever disagrees with (k+1)/2 - (i+1)/2^(i-k+1).
Rational sum_identity(unsigned k, unsigned i);

/// max{ s*^(-(k+1)/2), s*^(-(k+2)/2) + s*^(-k/4) f^(1/2) } with s* = s / (k+2)^500,
/// where f is f_next after clamping at 1.
LogBound recursion_step(unsigned k, const PosReal& s, const LogBound& f_next);

/// Applies recursion_step for levels ell-1 down to k, starting from
/// f(ell, s_ell) <= (s_ell / (ell+2)^500)^(-ell/2), where s_{j+1} = s_j / (j+2)^500.
LogBound unrolled_bound(unsigned k, unsigned ell, const PosReal& s);

/// (s_{k,l})^(-l/2^(l-k+1)) prod_{j=k}^{l-1} (s_{k,j})^(-j/2^(j-k+2))
///   + sum_{i=k}^{l-1} (s_{k,i})^(-(i+2)/2^(i-k+1)) prod_{j=k}^{i-1} (s_{k,j})^(-j/2^(j-k+2)),
/// with s_{k,i} = s / (i+2)^(500(i-k+1)).
LogBound closed_form(unsigned k, unsigned ell, const PosReal& s);

struct MainBoundDetail {
    unsigned ell = 0;
    /// log2 C1 with C1 = exp(500 sum_{i>=0} (i+2)^2 ln(i+2) / 2^(i+1)).
    BigFloat log2_c1;
    /// log2 of s^(1/2^(ell+1)).
    BigFloat log2_first;
    /// log2 of s^(1/2^(ell+1)) + sum_{i<ell} s^(-2^(ell-i)/2^(ell+1)).
    BigFloat log2_bracket;
    LogBound bound = LogBound::zero();
};

/// log2 C1, the series summed until the remaining tail is below 2^-80 of the total.
const BigFloat& log2_c1();

/// C1 s^(-1/2) (bracket) with ell = floor(log2 log2 s) - 1; requires s >= 4.
MainBoundDetail main_bound_detail(const PosReal& s);
LogBound main_bound(const PosReal& s);

}  // namespace qlo
