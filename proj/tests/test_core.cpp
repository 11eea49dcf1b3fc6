#include "qlo/algebra.hpp"
#include "qlo/error.hpp"
#include "qlo/linalg.hpp"
#include "qlo/quad_poly.hpp"
#include "qlo/rational.hpp"
#include "support/testkit.hpp"

#include <gtest/gtest.h>

using namespace qlo;
using testkit::Rng;

namespace {

SignVector signs(std::initializer_list<int> s) { return SignVector::from_signs(std::vector<int>(s)); }

QuadPoly remark_poly() {
    // (1 + x1)(x1 + x2 + x3 + x4)
    const RatVector v{1, 0, 0, 0};
    const RatVector u{1, 1, 1, 1};
    return QuadPoly::product_of_affine(v, 1, u, 0);
}

Rational eval_sum_of_squares(const std::vector<SquareTerm>& terms, const RatVector& x) {
    Rational total = 0;
    for (const auto& t : terms) {
        const Rational g = dot(t.g, x);
        total += t.lambda * g * g;
    }
    return total;
}

}  // namespace

TEST(Rational, ParseAndPrint) {
    EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
    EXPECT_EQ(to_string(parse_rational("-6/4")), "-3/2");
    EXPECT_EQ(to_string(parse_rational("5")), "5");
    EXPECT_THROW(parse_rational("1/0"), ParseError);
    EXPECT_THROW(parse_rational("1/2x"), ParseError);
    EXPECT_THROW(parse_rational(""), ParseError);
}

TEST(Rational, RatioIsCanonical) {
    const Rational r = ratio(Integer(6), Integer(-4));
    EXPECT_EQ(r.get_num(), -3);
    EXPECT_EQ(r.get_den(), 2);
    EXPECT_EQ(r, Rational(-3, 2));
    EXPECT_THROW(ratio(Integer(1), Integer(0)), DomainError);
    EXPECT_EQ(from_u64(~std::uint64_t{0}), Integer("18446744073709551615"));
}

TEST(Rational, Binomial) {
    EXPECT_EQ(binomial(4, 2), 6);
    EXPECT_EQ(binomial(20, 10), 184756);
    EXPECT_EQ(binomial(3, 5), 0);
}

TEST(EvalQuad, SpecExamples) {
    const QuadPoly x1x2 = QuadPoly::from_monomials(2, std::vector<Monomial>{{0, 1, 1}}, {0, 0}, 0);
    EXPECT_EQ(eval_quad(x1x2, signs({1, 1})), 1);
    const QuadPoly sq = QuadPoly::square_of_affine(RatVector{1, 1}, 0);
    EXPECT_EQ(eval_quad(sq, signs({1, -1})), 0);
    const QuadPoly rp = remark_poly();
    for (std::uint64_t bits = 0; bits < 16; bits += 2)  // bit 0 clear: x1 = -1
        EXPECT_EQ(eval_quad(rp, SignVector(4, bits)), 0);
    EXPECT_THROW(eval_quad(rp, SignVector(3)), DimensionError);
}

TEST(EvalQuad, MonomialConvention) {
    // The coefficient of x0 x1 is 2 A[0,1].
    const QuadPoly q = QuadPoly::from_monomials(2, std::vector<Monomial>{{0, 1, 1}}, {0, 0}, 0);
    EXPECT_EQ(q.quad()(0, 1), Rational(1, 2));
    EXPECT_EQ(q.monomials().size(), 1U);
    EXPECT_EQ(q.monomials()[0].coeff, 1);
}

TEST(FlipDelta, SpecExamples) {
    const QuadPoly x1x2 = QuadPoly::from_monomials(2, std::vector<Monomial>{{0, 1, 1}}, {0, 0}, 0);
    EXPECT_EQ(flip_delta(x1x2, signs({1, 1}), 0), -2);
    const QuadPoly c = QuadPoly::constant_poly(3, 7);
    EXPECT_EQ(flip_delta(c, signs({1, -1, 1}), 2), 0);
    const QuadPoly lin(RatMatrix(4, 4), RatVector{1, 1, 1, 1}, 0);
    EXPECT_EQ(flip_delta(lin, signs({1, 1, 1, 1}), 3), -2);
    EXPECT_THROW(flip_delta(lin, signs({1, 1, 1, 1}), 4), DimensionError);
}

TEST(FlipDelta, MatchesReevaluation) {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const Index n = static_cast<Index>(testkit::uniform_int(rng, 1, 16));
        const QuadPoly q = testkit::random_quad(rng, n);
        const SignVector x(n, rng());
        const Index j = static_cast<Index>(testkit::uniform_int(rng, 0, static_cast<long>(n) - 1));
        EXPECT_EQ(eval_quad(q, x.flipped(j)) - eval_quad(q, x), flip_delta(q, x, j));
    }
}

TEST(PerturbEquivalent, DiagonalShiftOnly) {
    Rng rng(3);
    const QuadPoly q = testkit::random_quad(rng, 5);
    const RatMatrix m(0, 5);
    const QuadPoly star = perturb_equivalent(q, m, {}, RatMatrix(5, 0), RatMatrix(0, 5), RatVector(5, Rational(2, 3)));
    for (std::uint64_t bits = 0; bits < 32; ++bits) EXPECT_EQ(eval_quad(star, SignVector(5, bits)), eval_quad(q, SignVector(5, bits)));
    EXPECT_NE(star.quad(), q.quad());
}

TEST(PerturbEquivalent, EmptyConstraintZeroDiagonal) {
    Rng rng(4);
    const QuadPoly q = testkit::random_quad(rng, 4);
    EXPECT_EQ(perturb_equivalent(q, RatMatrix(0, 4), {}, RatMatrix(4, 0), RatMatrix(0, 4), RatVector(4, 0)), q);
}

TEST(PerturbEquivalent, BilinearBecomesZeroQuadratic) {
    // Q = (x1+x2)(x3+x4); A = (1/2)(e12 (x) e34 + e34 (x) e12) = L M + M^T R with M = (1,1,0,0).
    const QuadPoly q = QuadPoly::product_of_affine(RatVector{1, 1, 0, 0}, 0, RatVector{0, 0, 1, 1}, 0);
    const RatMatrix m = RatMatrix::from_rows({{1, 1, 0, 0}});
    const RatMatrix l = RatMatrix::from_rows({{0}, {0}, {Rational(-1, 2)}, {Rational(-1, 2)}});
    const RatMatrix r = RatMatrix::from_rows({{0, 0, Rational(-1, 2), Rational(-1, 2)}});
    const QuadPoly star = perturb_equivalent(q, m, {0}, l, r, RatVector(4, 0));
    EXPECT_TRUE(star.quad().is_zero());
    const LinearConstraint c{m, {0}};
    for (std::uint64_t bits = 0; bits < 16; ++bits) {
        const SignVector x(4, bits);
        if (c.satisfied_by(x.as_rationals())) EXPECT_EQ(eval_quad(star, x), eval_quad(q, x));
    }
}

TEST(PerturbEquivalent, AgreesOnFiberRandom) {
    Rng rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const Index n = static_cast<Index>(testkit::uniform_int(rng, 2, 10));
        const Index k = static_cast<Index>(testkit::uniform_int(rng, 0, 3));
        const QuadPoly q = testkit::random_quad(rng, n);
        const RatMatrix m = testkit::random_matrix(rng, k, n, 1);
        // w = M x0 keeps the fiber nonempty.
        const SignVector x0(n, rng());
        const RatVector w = m * x0.as_rationals();
        const RatMatrix l = testkit::random_matrix(rng, n, k, 2, 2);
        const RatMatrix r = testkit::random_matrix(rng, k, n, 2, 2);
        RatVector d(n);
        for (auto& v : d) v = testkit::small_rational(rng);
        const QuadPoly star = perturb_equivalent(q, m, w, l, r, d);
        const LinearConstraint c{m, w};
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
            const SignVector x(n, bits);
            if (c.satisfied_by(x.as_rationals())) ASSERT_EQ(eval_quad(star, x), eval_quad(q, x));
        }
    }
}

TEST(PerturbEquivalent, ShapeErrors) {
    const QuadPoly q(3);
    EXPECT_THROW(perturb_equivalent(q, RatMatrix(1, 3), {0}, RatMatrix(2, 1), RatMatrix(1, 3), RatVector(3)), DimensionError);
}

TEST(SquareDecompose, SpecExamples) {
    const auto id = square_decompose(RatMatrix::identity(2));
    ASSERT_EQ(id.size(), 2U);
    EXPECT_EQ(id[0].lambda, 1);
    EXPECT_EQ(id[0].g, (RatVector{1, 0}));
    EXPECT_EQ(id[1].g, (RatVector{0, 1}));

    const RatMatrix xy = RatMatrix::from_rows({{0, Rational(1, 2)}, {Rational(1, 2), 0}});
    const auto terms = square_decompose(xy);
    ASSERT_EQ(terms.size(), 2U);
    EXPECT_EQ(terms[0].lambda, Rational(1, 4));
    EXPECT_EQ(terms[0].g, (RatVector{1, 1}));
    EXPECT_EQ(terms[1].lambda, Rational(-1, 4));
    EXPECT_EQ(terms[1].g, (RatVector{1, -1}));

    EXPECT_TRUE(square_decompose(RatMatrix(3, 3)).empty());
}

TEST(SquareDecompose, IdentityAndRankRandom) {
    Rng rng(6);
    for (int trial = 0; trial < 100; ++trial) {
        const Index n = static_cast<Index>(testkit::uniform_int(rng, 1, 7));
        RatMatrix a = testkit::random_symmetric(rng, n, 2, 2);
        if (trial % 3 == 0) {
            // Force rank deficiency by zeroing a row and column.
            for (Index i = 0; i < n; ++i) a(0, i) = a(i, 0) = 0;
        }
        const auto terms = square_decompose(a);
        EXPECT_EQ(terms.size(), rank(a));
        // Coefficient-wise: sum lambda g g^T == A.
        RatMatrix rebuilt(n, n);
        RatMatrix gs(terms.size(), n);
        for (Index t = 0; t < terms.size(); ++t)
            for (Index i = 0; i < n; ++i) {
                gs(t, i) = terms[t].g[i];
                for (Index j = 0; j < n; ++j) rebuilt(i, j) += terms[t].lambda * terms[t].g[i] * terms[t].g[j];
            }
        EXPECT_EQ(rebuilt, a);
        EXPECT_EQ(rank(gs), terms.size());
        RatVector x(n);
        for (auto& v : x) v = testkit::small_rational(rng);
        const QuadPoly q(a, RatVector(n), 0);
        EXPECT_EQ(eval_sum_of_squares(terms, x), eval_at(q, x));
    }
}

TEST(TranslationDirections, SpecExamples) {
    const QuadPoly x1sq = QuadPoly::from_monomials(3, std::vector<Monomial>{{0, 0, 1}}, RatVector(3), 0);
    const auto dirs = translation_directions(x1sq);
    ASSERT_EQ(dirs.size(), 2U);
    RatMatrix span = RatMatrix::from_rows({dirs[0], dirs[1]}, 3);
    EXPECT_EQ(rank(span), 2U);
    for (const auto& v : dirs) EXPECT_EQ(v[0], 0);

    const QuadPoly x1x2 = QuadPoly::from_monomials(2, std::vector<Monomial>{{0, 1, 1}}, RatVector(2), 0);
    EXPECT_TRUE(translation_directions(x1x2).empty());

    const QuadPoly mixed = QuadPoly::from_monomials(2, std::vector<Monomial>{{0, 0, 1}}, RatVector{0, 1}, 0);
    EXPECT_TRUE(translation_directions(mixed).empty());
}

TEST(TranslationDirections, InvarianceRandom) {
    Rng rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const Index n = static_cast<Index>(testkit::uniform_int(rng, 2, 6));
        // Low-rank quadratic part plus a linear part orthogonal to part of its kernel.
        const Index r = static_cast<Index>(testkit::uniform_int(rng, 0, static_cast<long>(n) - 1));
        RatMatrix a(n, n);
        for (Index t = 0; t < r; ++t) {
            RatVector g(n);
            for (auto& v : g) v = testkit::small_rational(rng, 2, 1);
            const Rational lam = testkit::nonzero_rational(rng);
            for (Index i = 0; i < n; ++i)
                for (Index j = 0; j < n; ++j) a(i, j) += lam * g[i] * g[j];
        }
        RatVector b(n);
        if (trial % 2 == 0)
            for (auto& v : b) v = testkit::small_rational(rng);
        const QuadPoly q(a, b, testkit::small_rational(rng));
        for (const auto& v : translation_directions(q)) {
            for (int s = 0; s < 20; ++s) {
                RatVector w(n);
                for (auto& x : w) x = testkit::small_rational(rng, 5, 4);
                const Rational lam = testkit::small_rational(rng, 5, 4);
                RatVector moved = w;
                for (Index i = 0; i < n; ++i) moved[i] += lam * v[i];
                ASSERT_EQ(eval_at(q, moved), eval_at(q, w));
            }
        }
    }
}

TEST(NumericInequality, ExactSqrtComparison) {
    Rng rng(8);
    int checked = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        const Rational a = abs(testkit::small_rational(rng, 9, 4));
        const Rational b = abs(testkit::small_rational(rng, 9, 4));
        const Rational c = abs(testkit::small_rational(rng, 30, 4));
        if (a * a > a * b + c) continue;
        ++checked;
        EXPECT_TRUE(le_sum_sqrt(a, b, c)) << a << ' ' << b << ' ' << c;
        // Independent route: a <= b, or (a - b)^2 <= c.
        EXPECT_TRUE(a <= b || (a - b) * (a - b) <= c);
    }
    EXPECT_GT(checked, 200);
    EXPECT_FALSE(le_sum_sqrt(3, 1, 3));
    EXPECT_TRUE(le_sum_sqrt(3, 1, 4));
}

TEST(Linalg, SpecExamples) {
    const auto id = rank_and_kernel(RatMatrix::identity(3));
    EXPECT_EQ(id.rank, 3U);
    EXPECT_TRUE(id.kernel.empty());

    const auto zero = rank_and_kernel(RatMatrix(2, 3));
    EXPECT_EQ(zero.rank, 0U);
    EXPECT_EQ(zero.kernel.size(), 3U);

    const RatMatrix m = RatMatrix::from_rows({{1, 1, 1, 1}, {1, 1, 0, 0}});
    const auto rk = rank_and_kernel(m);
    EXPECT_EQ(rk.rank, 2U);
    ASSERT_EQ(rk.kernel.size(), 2U);
    for (const auto& v : rk.kernel) {
        const RatVector mv = m * v;
        EXPECT_EQ(mv, (RatVector{0, 0}));
    }
}

TEST(Linalg, RankNullityAndInverseRandom) {
    Rng rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        const Index rows = static_cast<Index>(testkit::uniform_int(rng, 0, 6));
        const Index cols = static_cast<Index>(testkit::uniform_int(rng, 0, 6));
        const RatMatrix m = testkit::random_matrix(rng, rows, cols, 2, 3, 0.6);
        const auto rk = rank_and_kernel(m);
        EXPECT_EQ(rk.rank + rk.kernel.size(), cols);
        for (const auto& v : rk.kernel) EXPECT_EQ(m * v, RatVector(rows, 0));
        EXPECT_EQ(rank(m.transpose()), rk.rank);
        if (rows == cols) {
            const auto inv = inverse(m);
            EXPECT_EQ(inv.has_value(), rk.rank == rows);
            if (inv) EXPECT_EQ(m * *inv, RatMatrix::identity(rows));
        }
    }
}
