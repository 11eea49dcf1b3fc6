#pragma once

#include "qlo/distribution.hpp"
#include "qlo/matrix.hpp"
#include "qlo/quad_poly.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace qlo {

struct EngineOptions {
    /// Largest n walked exhaustively over {-1,1}^n.
    unsigned cap = 26;
    /// Largest support product for general_point_prob.
    std::uint64_t general_cap = 20'000'000;
    /// Threads for partitioned enumeration and sampling; results never depend on it.
    unsigned workers = 1;
};

/// Exact law of Q(xi) on the (possibly constrained) cube. Counts of points
/// violating the constraint are simply absent, so the counts sum to
/// total * Pr[M xi = w].
struct AtomHistogram {
    std::map<Rational, Integer> counts;
    Integer total = 1;

    DyadicProb point_prob(const Rational& z) const;
    Integer count_sum() const;
};

struct PointMass {
    Rational z;
    DyadicProb prob;
};

AtomHistogram histogram(const QuadPoly& q, const LinearConstraint& constraint, const EngineOptions& opts = {});
AtomHistogram histogram(const QuadPoly& q, const EngineOptions& opts = {});

/// Most likely value of Q(xi); ties go to the smallest value.
PointMass sup_point_prob(const QuadPoly& q, const EngineOptions& opts = {});
PointMass sup_point_prob(const AtomHistogram& h);

DyadicProb linear_system_prob(const LinearConstraint& c, const EngineOptions& opts = {});

/// Z = {y in Q^r : P(y) = 0 and M y = w}.
struct QuadricSpec {
    QuadPoly p;
    LinearConstraint affine;

    Index dim() const { return p.dim(); }
};

/// Pr[xi_1 a_1 + ... + xi_n a_n in Z]; every a_i has z.dim() entries.
DyadicProb vector_event_prob(const std::vector<RatVector>& a, const QuadricSpec& z, const EngineOptions& opts = {});

/// Pr[A xi differs from v in fewer than `threshold` coordinates].
DyadicProb hamming_event_prob(const RatMatrix& a, const RatVector& v, Index threshold,
                              const EngineOptions& opts = {});

/// Exact Pr[Q(zeta) = z] for independent zeta_i ~ d[i].
Rational general_point_prob(const QuadPoly& q, const ProductDist& d, const Rational& z,
                            const EngineOptions& opts = {});

struct MonteCarloEstimate {
    std::uint64_t hits = 0;
    std::uint64_t samples = 0;
    /// hits / samples.
    Rational estimate;
    /// Smallest h with the Wilson 95% score interval inside [estimate - h, estimate + h].
    Rational halfwidth;
};

/// Sampled Pr[Q = z]. Rademacher inputs when `d` is empty. Sample i uses
/// stream i of the counter generator, so output depends only on the seed.
MonteCarloEstimate monte_carlo(const QuadPoly& q, const std::optional<ProductDist>& d, const Rational& z,
                               std::uint64_t samples, std::uint64_t seed, unsigned workers = 1);

/// Wilson score interval at 95% as above; samples must be positive.
Rational wilson_halfwidth(std::uint64_t hits, std::uint64_t samples);

}  // namespace qlo
