#include "qlo/error.hpp"
#include "qlo/experiments.hpp"
#include "qlo/io.hpp"
#include "qlo/sweep.hpp"
#include "support/testkit.hpp"

#include <gtest/gtest.h>

#include <bit>
#include <sstream>

using namespace qlo;
using testkit::Rng;

namespace {

/// Counts by scanning every bitmask with popcount k and counting edges with
/// adjacency bitmasks; independent of the combination walk.
std::map<Index, Integer> bitset_edge_counts(const Graph& g, Index k) {
    const Index n = g.size();
    std::vector<std::uint32_t> nbr(n, 0);
    for (auto [u, v] : g.edges()) {
        nbr[u] |= 1U << v;
        nbr[v] |= 1U << u;
    }
    std::map<Index, Integer> out;
    for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
        if (static_cast<Index>(std::popcount(mask)) != k) continue;
        Index twice = 0;
        for (Index v = 0; v < n; ++v)
            if (mask >> v & 1U) twice += static_cast<Index>(std::popcount(nbr[v] & mask));
        out[twice / 2] += 1;
    }
    return out;
}

/// Both sides over the extended space {-1,1}^I x {-1,1}^I x {-1,1}^J by triple enumeration.
std::pair<Rational, Rational> triple_decoupling(const QuadPoly& q, const IndexSet& i_set) {
    const Index n = q.dim();
    std::vector<bool> in_i(n, false);
    for (Index i : i_set) in_i[i] = true;
    IndexSet j_set = complement(i_set, n);
    const Index ni = i_set.size();
    const Index nj = j_set.size();
    auto build = [&](std::uint64_t xb, std::uint64_t yb) {
        SignVector x(n);
        for (Index p = 0; p < ni; ++p) x.set(i_set[p], xb >> p & 1U ? 1 : -1);
        for (Index p = 0; p < nj; ++p) x.set(j_set[p], yb >> p & 1U ? 1 : -1);
        return x;
    };
    Integer single = 0;
    Integer both = 0;
    for (std::uint64_t y = 0; y < (std::uint64_t{1} << nj); ++y)
        for (std::uint64_t x1 = 0; x1 < (std::uint64_t{1} << ni); ++x1) {
            const bool e1 = sgn(eval_quad(q, build(x1, y))) == 0;
            if (e1) ++single;
            for (std::uint64_t x2 = 0; x2 < (std::uint64_t{1} << ni); ++x2)
                if (e1 && sgn(eval_quad(q, build(x2, y))) == 0) ++both;
        }
    const Rational p = ratio(single, pow2(static_cast<unsigned>(n)));
    return {p * p, ratio(both, pow2(static_cast<unsigned>(2 * ni + nj)))};
}

}  // namespace

TEST(Graph, Validation) {
    EXPECT_THROW(Graph(3, {{0, 0}}), DomainError);
    EXPECT_THROW(Graph(3, {{0, 1}, {1, 0}}), DomainError);
    EXPECT_THROW(Graph(3, {{0, 3}}), DomainError);
    std::istringstream text("# five-cycle\n0 1\n1 2\n2 3\n3 4\n4 0\n\n");
    const Graph g = Graph::parse_edge_list(text);
    EXPECT_EQ(g.size(), 5U);
    EXPECT_EQ(g.edges().size(), 5U);
    std::istringstream bad("0 1 2\n");
    EXPECT_THROW(Graph::parse_edge_list(bad), ParseError);
}

TEST(EdgeStats, SpecExamples) {
    for (Index n = 1; n <= 12; ++n)
        for (Index k = 1; k <= std::min<Index>(n, 5); ++k) {
            const Index pairs = k * (k - 1) / 2;
            const EdgeStats full = edge_stats(Graph::complete(n), k);
            EXPECT_EQ(full.counts.at(pairs), binomial(static_cast<unsigned>(n), static_cast<unsigned>(k)));
            EXPECT_EQ(full.ratio(pairs), 1);
            const EdgeStats none = edge_stats(Graph::empty(n), k);
            EXPECT_EQ(none.counts.at(0), none.total);
            EXPECT_EQ(none.ratio(0), 1);
        }
    const EdgeStats c5 = edge_stats(Graph::cycle(5), 3);
    EXPECT_EQ(c5.counts, (std::map<Index, Integer>{{1, 5}, {2, 5}}));
    EXPECT_EQ(c5.ratio(1), Rational(1, 2));
    EXPECT_FALSE(c5.shape(0));
    EXPECT_NEAR(*c5.shape(1), std::sqrt(3.0), 1e-12);
}

TEST(EdgeStats, CapAndRange) {
    EXPECT_THROW(edge_stats(Graph::empty(40), 20), CapExceeded);
    EXPECT_THROW(edge_stats(Graph::empty(4), 5), DomainError);
}

TEST(EdgeStats, MatchesBitsetOracle) {
    Rng rng(61);
    for (int trial = 0; trial < 100; ++trial) {
        const Index n = static_cast<Index>(testkit::uniform_int(rng, 1, 12));
        std::bernoulli_distribution keep(testkit::uniform_int(rng, 1, 9) / 10.0);
        std::vector<std::pair<Index, Index>> edges;
        for (Index u = 0; u < n; ++u)
            for (Index v = u + 1; v < n; ++v)
                if (keep(rng)) edges.emplace_back(u, v);
        const Graph g(n, edges);
        const Index k = static_cast<Index>(testkit::uniform_int(rng, 0, static_cast<long>(n)));
        const EdgeStats st = edge_stats(g, k);
        EXPECT_EQ(st.counts, bitset_edge_counts(g, k));
        Integer sum = 0;
        for (const auto& [l, c] : st.counts) sum += c;
        EXPECT_EQ(sum, st.total);
    }
}

TEST(Decoupling, SpecExamples) {
    const DecouplingReport zero = verify_decoupling(QuadPoly::constant_poly(3, 0), {0});
    EXPECT_EQ(zero.lhs, 1);
    EXPECT_EQ(zero.rhs, 1);
    EXPECT_TRUE(zero.pass);

    const QuadPoly x1x2 = QuadPoly::from_monomials(2, std::vector<Monomial>{{0, 1, 1}}, RatVector(2), 0);
    const DecouplingReport r = verify_decoupling(x1x2, {0});
    EXPECT_EQ(r.lhs, 0);
    EXPECT_EQ(r.rhs, 0);
    EXPECT_TRUE(r.pass);
}

TEST(Decoupling, MatchesTripleEnumeration) {
    Rng rng(62);
    for (int trial = 0; trial < 60; ++trial) {
        const Index n = static_cast<Index>(testkit::uniform_int(rng, 1, 8));
        const QuadPoly q = testkit::random_pm1_quad(rng, n);
        IndexSet i_set;
        for (Index i = 0; i < n; ++i)
            if (rng() & 1U) i_set.push_back(i);
        const DecouplingReport r = verify_decoupling(q, i_set);
        const auto [lhs, rhs] = triple_decoupling(q, i_set);
        EXPECT_EQ(r.lhs, lhs);
        EXPECT_EQ(r.rhs, rhs);
        EXPECT_TRUE(r.pass);
        EXPECT_GT(r.prob, 0);
    }
}

TEST(Decoupling, RandomN10HalfSplit) {
    Rng rng(63);
    for (int trial = 0; trial < 200; ++trial) {
        const QuadPoly q = testkit::random_pm1_quad(rng, 10);
        EXPECT_TRUE(verify_decoupling(q, {0, 2, 4, 6, 8}).pass);
    }
}

TEST(Decoupling, ErrorsAndSampling) {
    EXPECT_THROW(verify_decoupling(QuadPoly(20), IndexSet{0, 1, 2, 3, 4, 5, 6, 7}, 26), CapExceeded);
    EXPECT_THROW(verify_decoupling(QuadPoly(3), {0, 0}), DomainError);
    EXPECT_THROW(verify_decoupling(QuadPoly(3), {3}), DimensionError);
    Rng rng(64);
    const QuadPoly q = testkit::random_pm1_quad(rng, 8);
    const DecouplingReport a = verify_decoupling_sampled(q, {0, 1, 2}, 20000, 5);
    const DecouplingReport b = verify_decoupling_sampled(q, {0, 1, 2}, 20000, 5);
    EXPECT_EQ(a.lhs, b.lhs);
    EXPECT_EQ(a.rhs, b.rhs);
    EXPECT_FALSE(a.exact);
    const DecouplingReport exact = verify_decoupling(q, {0, 1, 2});
    EXPECT_NEAR(a.prob.get_d(), exact.prob.get_d(), 0.03);
    EXPECT_NEAR(a.rhs.get_d(), exact.rhs.get_d(), 0.03);
}

TEST(Sweep, SquaredSumMatchesBinomialLaw) {
    ExperimentSpec spec;
    spec.family = SweepFamily::squared_sum;
    spec.n_min = 2;
    spec.n_max = 12;
    const std::string csv = run_sweep(spec);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line.rfind("# qlo-sweep v1", 0), 0U);
    std::getline(in, line);
    Index n = 2;
    while (std::getline(in, line)) {
        std::vector<std::string> cols;
        std::stringstream ls(line);
        for (std::string c; std::getline(ls, c, ',');) cols.push_back(c);
        ASSERT_EQ(cols.size(), 15U);
        EXPECT_EQ(cols[2], std::to_string(n));
        // Law of (x1+...+xn)^2 from the binomial law of the sum; ties go to the smaller value.
        Rational best = -1;
        Index best_v = 0;
        for (Index v = n % 2; v <= n; v += 2) {
            const Integer ways = binomial(static_cast<unsigned>(n), static_cast<unsigned>((n + v) / 2));
            const Rational p = ratio(v == 0 ? ways : 2 * ways, pow2(static_cast<unsigned>(n)));
            if (p > best) {
                best = p;
                best_v = v;
            }
        }
        EXPECT_EQ(cols[3], std::to_string(best_v * best_v));
        EXPECT_EQ(parse_rational(cols[6]), best);
        ++n;
    }
    EXPECT_EQ(n, 13U);
}

TEST(Sweep, DeterministicAndWorkerIndependent) {
    ExperimentSpec spec;
    spec.family = SweepFamily::random_dense;
    spec.n_min = 3;
    spec.n_max = 9;
    spec.count = 3;
    spec.seed = 1234;
    const std::string a = run_sweep(spec);
    EXPECT_EQ(a, run_sweep(spec));
    spec.engine.workers = 5;
    EXPECT_EQ(a, run_sweep(spec));
    spec.seed = 1235;
    EXPECT_NE(a, run_sweep(spec));
}

TEST(Sweep, DiagonalFamilyHasNoMainBound) {
    ExperimentSpec spec;
    spec.family = SweepFamily::diagonal;
    spec.n_min = 4;
    spec.n_max = 6;
    spec.count = 2;
    const std::string csv = run_sweep(spec);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    int rows = 0;
    while (std::getline(in, line)) {
        EXPECT_NE(line.find(",-1,0,n/a,n/a,"), std::string::npos) << line;
        ++rows;
    }
    EXPECT_EQ(rows, 6);
}

TEST(Sweep, Errors) {
    ExperimentSpec spec;
    spec.n_min = 5;
    spec.n_max = 4;
    EXPECT_THROW(run_sweep(spec), DomainError);
    spec.n_max = 40;
    EXPECT_THROW(run_sweep(spec), CapExceeded);
    EXPECT_THROW(parse_family("nope"), DomainError);
}

TEST(Io, RoundTrips) {
    Rng rng(65);
    for (int trial = 0; trial < 30; ++trial) {
        const QuadPoly q = testkit::random_quad(rng, static_cast<Index>(testkit::uniform_int(rng, 0, 6)));
        EXPECT_EQ(quad_from_json(json::parse(to_json(q).dump())), q);
        const RatMatrix m = testkit::random_matrix(rng, 2, 3, 4, 3);
        EXPECT_EQ(matrix_from_json(json::parse(to_json(m).dump())), m);
    }
    const DiscreteDist d = DiscreteDist::uniform({-1, 0, Rational(5, 2)});
    const DiscreteDist back = dist_from_json(json::parse(to_json(d).dump()));
    ASSERT_EQ(back.support_size(), 3U);
    EXPECT_EQ(back.atoms()[2].value, Rational(5, 2));
}

TEST(Io, MonomialInputConvention) {
    const QuadPoly q = quad_from_json(json::parse(R"({"n": 2, "quad": [[1, 0, "3"]], "const": 1})"));
    EXPECT_EQ(q.quad()(0, 1), Rational(3, 2));
    EXPECT_EQ(q.constant(), 1);
    EXPECT_EQ(q.lin(), RatVector(2, 0));
}

TEST(Io, MalformedInput) {
    EXPECT_THROW(quad_from_json(json::parse(R"({"quad": []})")), ParseError);
    EXPECT_THROW(quad_from_json(json::parse(R"({"n": 2, "quad": [[0, 5, "1"]]})")), ParseError);
    EXPECT_THROW(quad_from_json(json::parse(R"({"n": 2, "lin": ["1"]})")), ParseError);
    EXPECT_THROW(rational_from_json(json(0.5)), ParseError);
    EXPECT_THROW(matrix_from_json(json::parse(R"({"rows": 2, "cols": 1, "entries": [["1"]]})")), ParseError);
    EXPECT_THROW(dist_from_json(json::parse(R"({"atoms": [["0", "1/2"]]})")), ParseError);
    EXPECT_THROW(read_json_file("/nonexistent/file.json"), ParseError);
}

TEST(Io, EventAndHistogramShapes) {
    const json p = to_json(DyadicProb(Integer(6), Integer(16)));
    EXPECT_EQ(p["count"], "6");
    EXPECT_EQ(p["total"], "16");
    EXPECT_EQ(p["prob"], "3/8");
    const json b = bound_to_json("odlyzko", odlyzko(3));
    EXPECT_EQ(b["name"], "odlyzko");
    EXPECT_EQ(b["clamped"], false);
    EXPECT_EQ(b["exact"], "1/8");
}
