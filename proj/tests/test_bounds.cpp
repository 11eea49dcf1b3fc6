#include "qlo/bounds.hpp"
#include "qlo/certificates.hpp"
#include "qlo/engine.hpp"
#include "qlo/error.hpp"
#include "qlo/linalg.hpp"
#include "support/testkit.hpp"

#include <gtest/gtest.h>

using namespace qlo;
using testkit::Rng;

namespace {

BigFloat bf(double v) { return BigFloat(v); }

bool close(const BigFloat& a, const BigFloat& b, double tol = 1e-30) {
    return boost::multiprecision::abs(a - b) <= tol * (1 + boost::multiprecision::abs(b));
}

}  // namespace

TEST(Bounds, SpecExamples) {
    const LogBound e = erdos_lo(4);
    ASSERT_TRUE(e.exact());
    EXPECT_EQ(*e.exact(), Rational(3, 8));
    EXPECT_TRUE(close(e.log2(), log2_of(Integer(6)) - 4));

    EXPECT_EQ(*halasz_fjz(2, 4).exact(), Rational(1, 4));
    EXPECT_EQ(*geometric(0, 2, 16).exact(), Rational(1, 8));
    EXPECT_EQ(*odlyzko(5).exact(), Rational(1, 32));
    EXPECT_FALSE(halasz_fjz(1, 2).exact());
    EXPECT_TRUE(close(halasz_fjz(1, 2).log2(), bf(-0.5)));
}

TEST(Bounds, ParameterErrors) {
    EXPECT_THROW(geometric(2, 2, 16), DomainError);
    EXPECT_THROW(geometric(1, 2, 3), DomainError);
    EXPECT_THROW(halasz_fjz(2, 0), DomainError);
    EXPECT_THROW(halasz_sub(0, PosReal::of(5)), DomainError);
    EXPECT_THROW(low_rank(1, PosReal::of(5), 0), DomainError);
    EXPECT_THROW(hamming(0, 4), DomainError);
    EXPECT_THROW(main_bound(PosReal::of(3)), DomainError);
    EXPECT_THROW(sum_identity(3, 2), DomainError);
}

TEST(Bounds, ClampingIsFlagged) {
    const LogBound b = key_lemma(1, 1, PosReal::of(1000));
    EXPECT_TRUE(b.clamped());
    EXPECT_EQ(b.log2(), 0);
    EXPECT_GT(b.log2_raw(), 0);
    EXPECT_TRUE(dominated_by(Rational(1), b));
    const LogBound k = key_corollary(0, PosReal::pow2(2000));
    EXPECT_FALSE(k.clamped());
    // (2^2000 / (10^61 * 2^20))^-1 in log2.
    EXPECT_TRUE(close(k.log2(), -(BigFloat(2000) - 61 * log2_of(Integer(10)) - 20), 1e-40));
}

TEST(Bounds, FormulasInLogSpace) {
    const PosReal s = PosReal::pow2(bf(300));
    EXPECT_TRUE(close(halasz_sub(3, s).log2(), -BigFloat(3) / 2 * (300 - log2_of(Integer(3)))));
    EXPECT_TRUE(close(low_rank(2, s, 1).log2(), -BigFloat(3) / 2 * (300 - 3 - 2 * log2_of(Integer(3)))));
    EXPECT_TRUE(close(hamming(1, Integer(1) << 400).log2(), 30 * log2_of(Integer(10)) - 200));
    EXPECT_TRUE(close(halasz_affine(3, 1, 16).log2(), bf(-4)));
    EXPECT_EQ(hamming_fraction(2), Rational(1, 12));
}

TEST(Bounds, MonotoneInS) {
    for (unsigned k = 0; k <= 3; ++k) {
        BigFloat prev = 1;
        for (double e : {100.0, 1000.0, 5000.0, 20000.0}) {
            const BigFloat cur = key_corollary(k, PosReal::pow2(bf(e))).log2();
            EXPECT_LE(cur, prev);
            prev = cur;
            EXPECT_GE(closed_form(k, k + 2, PosReal::pow2(bf(e))).log2(),
                      closed_form(k, k + 2, PosReal::pow2(bf(e * 2))).log2());
        }
    }
}

TEST(DominatedBy, ExactAndDirected) {
    EXPECT_TRUE(dominated_by(Rational(1, 4), halasz_fjz(2, 4)));
    EXPECT_FALSE(dominated_by(Rational(1, 4) + Rational(1, 1000000), halasz_fjz(2, 4)));
    // t = 2, k = 1: bound 2^-1/2 is irrational; 7/10 < 0.7071 < 71/100.
    EXPECT_TRUE(dominated_by(Rational(7, 10), halasz_fjz(1, 2)));
    EXPECT_FALSE(dominated_by(Rational(71, 100), halasz_fjz(1, 2)));
    EXPECT_TRUE(dominated_by(Rational(0), LogBound::zero()));
    EXPECT_FALSE(dominated_by(Rational(1, 2), LogBound::zero()));
    EXPECT_THROW(dominated_by(Rational(3, 2), halasz_fjz(1, 2)), DomainError);
}

TEST(SumIdentity, SpecExamples) {
    EXPECT_EQ(sum_identity(0, 3), Rational(1, 4));
    for (unsigned k = 0; k < 10; ++k) EXPECT_EQ(sum_identity(k, k), 0);
    EXPECT_EQ(sum_identity(2, 5), Rational(3, 2) - Rational(3, 8));
}

TEST(SumIdentity, AllSmallPairs) {
    for (unsigned i = 0; i <= 30; ++i)
        for (unsigned k = 0; k <= i; ++k) {
            Rational direct = 0;
            for (unsigned j = k; j < i; ++j) direct += Rational(j) / Rational(pow2(j - k + 2));
            EXPECT_EQ(sum_identity(k, i), direct);
        }
}

TEST(Recursion, SpecExamples) {
    const PosReal s = PosReal::pow2(bf(10000));
    for (unsigned k = 0; k <= 3; ++k) {
        const BigFloat ls = BigFloat(10000) - 500 * log2_of(Integer(k + 2));
        const BigFloat expect = -BigFloat(k + 1) / 2 * ls;
        EXPECT_TRUE(close(recursion_step(k, s, LogBound::zero()).log2(), expect));
        EXPECT_TRUE(recursion_step(k, PosReal::of(Rational(Integer(k + 2)) * 1000), LogBound::zero()).clamped());
    }
}

TEST(Recursion, UnrolledNeverExceedsClosedForm) {
    for (unsigned k = 0; k <= 3; ++k)
        for (unsigned ell = k; ell <= 6; ++ell)
            for (double e : {10.0, 100.0, 1000.0, 10000.0}) {
                const PosReal s = PosReal::pow2(bf(e));
                const LogBound u = unrolled_bound(k, ell, s);
                const LogBound c = closed_form(k, ell, s);
                EXPECT_LE(u.log2(), c.log2() + BigFloat(1e-40) * (1 + boost::multiprecision::abs(c.log2())))
                    << "k=" << k << " ell=" << ell << " log2 s=" << e;
            }
}

TEST(ClosedForm, BaseCases) {
    EXPECT_EQ(closed_form(0, 0, PosReal::of(17)).log2(), 0);
    for (unsigned k = 1; k <= 4; ++k) {
        const PosReal s = PosReal::pow2(bf(50000));
        const BigFloat ls = BigFloat(50000) - 500 * log2_of(Integer(k + 2));
        EXPECT_TRUE(close(closed_form(k, k, s).log2(), -BigFloat(k) / 2 * ls));
    }
}

TEST(MainBound, Assembly) {
    const BigFloat log2_5c1 = log2_of(Integer(5)) + log2_c1();
    BigFloat prev = 1e9;
    for (unsigned e = 4; e <= 20; ++e) {
        const BigFloat l2s = BigFloat(1) * boost::multiprecision::ldexp(BigFloat(1), static_cast<int>(e));
        const MainBoundDetail d = main_bound_detail(PosReal::pow2(l2s));
        EXPECT_EQ(d.ell, e - 1);
        EXPECT_GE(d.log2_first, 1);
        EXPECT_LE(d.log2_first, 2);
        EXPECT_LE(d.bound.log2_raw() + l2s / 2, log2_5c1);
        EXPECT_LE(d.bound.log2_raw(), prev);
        prev = d.bound.log2_raw();
    }
}

TEST(MainBound, SeriesConstant) {
    // Independent double-precision evaluation of the series agrees to ~1e-12.
    double sum = 0;
    for (int i = 0; i < 200; ++i) sum += (i + 2.0) * (i + 2.0) * std::log(i + 2.0) / std::ldexp(1.0, i + 1);
    EXPECT_NEAR(log2_c1().convert_to<double>(), 500 * sum / std::log(2.0), 1e-8);
}

TEST(BoundsVsEngine, OdlyzkoAndHalaszOnRandomSystems) {
    Rng rng(51);
    for (int trial = 0; trial < 60; ++trial) {
        const Index k = static_cast<Index>(testkit::uniform_int(rng, 1, 3));
        const Index n = static_cast<Index>(testkit::uniform_int(rng, static_cast<long>(k), 12));
        const RatMatrix m = testkit::random_matrix(rng, k, n, 1);
        const RatVector w = m * SignVector(n, rng()).as_rationals();
        const DyadicProb p = linear_system_prob({m, w});
        EXPECT_TRUE(dominated_by(p, odlyzko(static_cast<unsigned>(rank(m)))));
        const auto bases = greedy_disjoint_bases(m);
        if (!bases.empty()) EXPECT_TRUE(dominated_by(p, halasz_fjz(static_cast<unsigned>(k), Integer(static_cast<long>(bases.size())))));
    }
}
