#include "qlo/bounds.hpp"

#include "qlo/error.hpp"

#include <mpfr.h>

#include <limits>
#include <stdexcept>
#include <string>

namespace qlo {

namespace {

// Exact powers are kept only while they stay this small (bits of numerator
// plus denominator); beyond that the log-space value is the whole story.
constexpr long kExactBitLimit = 1L << 16;

BigFloat neg_inf() { return -std::numeric_limits<BigFloat>::infinity(); }

bool is_neg_inf(const BigFloat& x) { return boost::multiprecision::isinf(x) && x < 0; }

BigFloat log_add(const BigFloat& a, const BigFloat& b) {
    if (is_neg_inf(a)) return b;
    if (is_neg_inf(b)) return a;
    const BigFloat hi = a > b ? a : b;
    const BigFloat lo = a > b ? b : a;
    return hi + boost::multiprecision::log2(1 + boost::multiprecision::pow(BigFloat(2), lo - hi));
}

BigFloat pow2f(long e) { return boost::multiprecision::ldexp(BigFloat(1), static_cast<int>(e)); }

long bit_size(const Rational& v) {
    return static_cast<long>(mpz_sizeinbase(v.get_num_mpz_t(), 2) + mpz_sizeinbase(v.get_den_mpz_t(), 2));
}

/// base^(halves/2) when it is rational and not too large.
std::optional<Rational> exact_half_power(const Rational& base, long halves) {
    if (sgn(base) <= 0) return std::nullopt;
    Rational root = base;
    long power = halves;
    if (halves % 2 != 0) {
        if (mpz_perfect_square_p(base.get_num_mpz_t()) == 0 || mpz_perfect_square_p(base.get_den_mpz_t()) == 0)
            return std::nullopt;
        Integer num;
        Integer den;
        mpz_sqrt(num.get_mpz_t(), base.get_num_mpz_t());
        mpz_sqrt(den.get_mpz_t(), base.get_den_mpz_t());
        root = ratio(num, den);
    } else {
        power = halves / 2;
    }
    const long mag = power < 0 ? -power : power;
    if (bit_size(root) * mag > kExactBitLimit) return std::nullopt;
    Integer num;
    Integer den;
    mpz_pow_ui(num.get_mpz_t(), root.get_num_mpz_t(), static_cast<unsigned long>(mag));
    mpz_pow_ui(den.get_mpz_t(), root.get_den_mpz_t(), static_cast<unsigned long>(mag));
    Rational out(num, den);
    out.canonicalize();
    if (power < 0) out = 1 / out;
    return out;
}

/// prefactor * base^(halves/2), exact when possible.
LogBound half_power_bound(const PosReal& base, long halves, const Rational& prefactor) {
    if (base.exact) {
        if (auto e = exact_half_power(*base.exact, halves)) return LogBound::from_rational(prefactor * *e);
    }
    return LogBound::from_log2(log2_of(prefactor) + BigFloat(halves) / 2 * base.log2);
}

PosReal divide(const PosReal& s, const Rational& c) {
    PosReal out;
    out.log2 = s.log2 - log2_of(c);
    if (s.exact) out.exact = *s.exact / c;
    return out;
}

Integer ipow(unsigned long base, unsigned long e) {
    Integer out;
    mpz_ui_pow_ui(out.get_mpz_t(), base, e);
    return out;
}

void require(bool ok, const char* what) {
    if (!ok) throw DomainError(what);
}

}  // namespace

BigFloat log2_of(const Integer& v) {
    if (v <= 0) throw DomainError("log2 of a nonpositive integer");
    BigFloat out;
    mpfr_set_z(out.backend().data(), v.get_mpz_t(), MPFR_RNDN);
    return boost::multiprecision::log2(out);
}

BigFloat log2_of(const Rational& v) {
    if (sgn(v) <= 0) throw DomainError("log2 of a nonpositive rational");
    return log2_of(Integer(v.get_num())) - log2_of(Integer(v.get_den()));
}

PosReal PosReal::of(const Rational& v) {
    if (sgn(v) <= 0) throw DomainError("parameter must be positive");
    return {log2_of(v), v};
}

PosReal PosReal::pow2(const BigFloat& e) {
    PosReal out{e, std::nullopt};
    if (e >= 0 && e <= 4096 && boost::multiprecision::floor(e) == e)
        out.exact = Rational(qlo::pow2(static_cast<unsigned>(e)));
    return out;
}

LogBound LogBound::from_log2(const BigFloat& raw) {
    LogBound b;
    b.raw_ = raw;
    return b;
}

LogBound LogBound::from_rational(const Rational& raw) {
    if (sgn(raw) < 0) throw DomainError("bounds are nonnegative");
    if (sgn(raw) == 0) return zero();
    LogBound b;
    b.raw_ = log2_of(raw);
    b.exact_ = raw;
    return b;
}

LogBound LogBound::zero() {
    LogBound b;
    b.raw_ = neg_inf();
    b.exact_ = Rational(0);
    return b;
}

BigFloat LogBound::log2() const { return raw_ > 0 ? BigFloat(0) : raw_; }

bool LogBound::is_zero() const { return is_neg_inf(raw_); }

bool dominated_by(const Rational& p, const LogBound& b) {
    if (sgn(p) < 0 || p > 1) throw DomainError("probability outside [0, 1]");
    if (b.exact()) return p <= (*b.exact() > 1 ? Rational(1) : *b.exact());
    if (sgn(p) == 0) return true;
    if (b.is_zero()) return false;

    constexpr mpfr_prec_t prec = 256;
    mpfr_t num, den, up, bound, margin;
    mpfr_inits2(prec, num, den, up, bound, margin, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_z(num, p.get_num_mpz_t(), MPFR_RNDU);
    mpfr_set_z(den, p.get_den_mpz_t(), MPFR_RNDD);
    mpfr_log2(num, num, MPFR_RNDU);
    mpfr_log2(den, den, MPFR_RNDD);
    mpfr_sub(up, num, den, MPFR_RNDU);

    const BigFloat bl = b.log2();
    mpfr_set(bound, bl.backend().data(), MPFR_RNDD);
    mpfr_abs(margin, bound, MPFR_RNDU);
    if (mpfr_cmp_ui(margin, 1) < 0) mpfr_set_ui(margin, 1, MPFR_RNDU);
    mpfr_mul_2si(margin, margin, -100, MPFR_RNDU);
    mpfr_sub(bound, bound, margin, MPFR_RNDD);
    const bool ok = mpfr_lessequal_p(up, bound) != 0;
    mpfr_clears(num, den, up, bound, margin, static_cast<mpfr_ptr>(nullptr));
    return ok;
}

bool dominated_by(const DyadicProb& p, const LogBound& b) { return dominated_by(p.value(), b); }

LogBound erdos_lo(unsigned n) { return LogBound::from_rational(ratio(binomial(n, n / 2), pow2(n))); }

LogBound odlyzko(unsigned k) { return LogBound::from_rational(ratio(Integer(1), pow2(k))); }

LogBound halasz_fjz(unsigned k, const Integer& t) {
    require(t >= 1, "halasz_fjz needs t >= 1");
    return half_power_bound(PosReal::of(Rational(t)), -static_cast<long>(k), 1);
}

LogBound halasz_affine(unsigned k, unsigned d, const Integer& t) {
    require(d <= k, "halasz_affine needs d <= k");
    require(t >= 1, "halasz_affine needs t >= 1");
    return half_power_bound(PosReal::of(Rational(t)), -static_cast<long>(k - d), 1);
}

LogBound halasz_sub(unsigned k, const PosReal& s) {
    require(k >= 1, "halasz_sub needs k >= 1");
    return half_power_bound(divide(s, Rational(k)), -static_cast<long>(k), 1);
}

LogBound geometric(unsigned d, unsigned r, const Integer& t) {
    require(d < r, "geometric needs 0 <= d < r");
    require(t >= 1, "geometric needs t >= 1");
    require(mpz_divisible_2exp_p(t.get_mpz_t(), d) != 0, "geometric needs 2^d to divide t");
    return half_power_bound(PosReal::of(Rational(t)), -static_cast<long>(r - d), Rational(pow2(d * r + 1)));
}

LogBound low_rank(unsigned k, const PosReal& s, unsigned r) {
    require(r >= 1, "low_rank needs r >= 1");
    const Integer kr = k + r;
    const Rational c(pow2(3 * r * r) * kr * kr);
    return half_power_bound(divide(s, c), -static_cast<long>(k + 1), 1);
}

LogBound key_lemma(unsigned k, unsigned r, const PosReal& s) {
    require(r >= 1, "key_lemma needs r >= 1");
    const Rational c(ipow(10, 60) * ipow(k + r, 20));
    return half_power_bound(divide(s, c), -static_cast<long>(k + r), 1);
}

LogBound key_corollary(unsigned k, const PosReal& s) {
    const Rational c(ipow(10, 61) * ipow(k + 2, 20));
    return half_power_bound(divide(s, c), -static_cast<long>(k + 2), 1);
}

LogBound hamming(unsigned r, const Integer& t) {
    require(r >= 1, "hamming needs r >= 1");
    require(t >= 1, "hamming needs t >= 1");
    return half_power_bound(PosReal::of(Rational(t)), -static_cast<long>(r), Rational(ipow(10UL * r, 30UL * r)));
}

Rational hamming_fraction(unsigned r) {
    require(r >= 1, "hamming_fraction needs r >= 1");
    return ratio(Integer(1), Integer(6 * r));
}

Rational sum_identity(unsigned k, unsigned i) {
    if (k > i) throw DomainError("sum_identity needs k <= i");
    Rational direct = 0;
    for (unsigned j = k; j < i; ++j) direct += ratio(Integer(j), pow2(j - k + 2));
    const Rational closed = ratio(Integer(k + 1), Integer(2)) - ratio(Integer(i + 1), pow2(i - k + 1));
    if (direct != closed)
        throw std::logic_error("sum_identity mismatch at k = " + std::to_string(k) + ", i = " + std::to_string(i));
    return direct;
}

LogBound recursion_step(unsigned k, const PosReal& s, const LogBound& f_next) {
    const BigFloat ls = s.log2 - 500 * log2_of(Integer(k + 2));
    const BigFloat t1 = -BigFloat(k + 1) / 2 * ls;
    const BigFloat t2 = -BigFloat(k + 2) / 2 * ls;
    const BigFloat t3 = f_next.is_zero() ? neg_inf() : -BigFloat(k) / 4 * ls + f_next.log2() / 2;
    const BigFloat second = log_add(t2, t3);
    return LogBound::from_log2(t1 > second ? t1 : second);
}

LogBound unrolled_bound(unsigned k, unsigned ell, const PosReal& s) {
    if (k > ell) throw DomainError("unrolled_bound needs k <= ell");
    std::vector<BigFloat> level(ell + 1);
    level[k] = s.log2;
    for (unsigned j = k; j < ell; ++j) level[j + 1] = level[j] - 500 * log2_of(Integer(j + 2));
    LogBound f = LogBound::from_log2(-BigFloat(ell) / 2 * (level[ell] - 500 * log2_of(Integer(ell + 2))));
    if (ell == 0) f = LogBound::from_rational(1);
    for (unsigned j = ell; j-- > k;) f = recursion_step(j, PosReal{level[j], std::nullopt}, f);
    return f;
}

LogBound closed_form(unsigned k, unsigned ell, const PosReal& s) {
    if (k > ell) throw DomainError("closed_form needs k <= ell");
    auto ls = [&](unsigned i) { return s.log2 - 500 * BigFloat(i - k + 1) * log2_of(Integer(i + 2)); };
    // prefix[i] = log2 of prod_{j=k}^{i-1} (s_{k,j})^(-j/2^(j-k+2)).
    std::vector<BigFloat> prefix(ell + 1);
    prefix[k] = 0;
    for (unsigned j = k; j < ell; ++j) prefix[j + 1] = prefix[j] - BigFloat(j) / pow2f(j - k + 2) * ls(j);
    BigFloat total = -BigFloat(ell) / pow2f(ell - k + 1) * ls(ell) + prefix[ell];
    for (unsigned i = k; i < ell; ++i)
        total = log_add(total, -BigFloat(i + 2) / pow2f(i - k + 1) * ls(i) + prefix[i]);
    if (ell == 0) return LogBound::from_rational(1);
    return LogBound::from_log2(total);
}

const BigFloat& log2_c1() {
    static const BigFloat value = [] {
        BigFloat sum = 0;
        for (unsigned i = 0;; ++i) {
            const BigFloat base(i + 2);
            const BigFloat term = base * base * boost::multiprecision::log(base) / pow2f(i + 1);
            sum += term;
            // Past i = 8 consecutive terms shrink by a factor below 3/4, so
            // the tail is under 3 * term.
            if (i > 8 && term * 3 < sum * pow2f(-80)) break;
        }
        return 500 * sum / boost::multiprecision::log(BigFloat(2));
    }();
    return value;
}

MainBoundDetail main_bound_detail(const PosReal& s) {
    if (s.log2 < 2) throw DomainError("main_bound needs s >= 4");
    MainBoundDetail out;
    const BigFloat lls = boost::multiprecision::log2(s.log2);
    out.ell = static_cast<unsigned>(boost::multiprecision::floor(lls)) - 1;
    out.log2_c1 = log2_c1();
    out.log2_first = s.log2 / pow2f(out.ell + 1);
    BigFloat bracket = out.log2_first;
    for (unsigned i = 0; i < out.ell; ++i) bracket = log_add(bracket, -s.log2 / pow2f(i + 1));
    out.log2_bracket = bracket;
    out.bound = LogBound::from_log2(out.log2_c1 - s.log2 / 2 + bracket);
    return out;
}

LogBound main_bound(const PosReal& s) { return main_bound_detail(s).bound; }

}  // namespace qlo
