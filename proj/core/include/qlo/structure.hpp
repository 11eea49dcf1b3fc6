#pragma once

#include "qlo/distribution.hpp"
#include "qlo/matrix.hpp"
#include "qlo/quad_poly.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace qlo {

/// Fixing x_i = values[p] for i = indices[p] makes Q constant (equal to
/// pinned_value) on the remaining cube.
struct FixingWitness {
    IndexSet indices;
    std::vector<int> values;
    Rational pinned_value;
};

struct FixingResult {
    /// False when n exceeded the cap; then m is unknown and only lower_bound holds.
    bool exact = true;
    /// Smallest number of variables whose fixing pins Q; 0 when Q is already constant.
    Index m = 0;
    FixingWitness witness;
    /// Always a valid lower bound on m: the size of a greedy matching in the
    /// off-diagonal support graph (any fixing set is a vertex cover of it).
    Index lower_bound = 0;
};

/// Fixing a set F with values a leaves Q constant exactly when the free
/// variables form an independent set of the off-diagonal support graph and
/// b_i + 2 sum_{f in F} A[i,f] a_f = 0 for every free i. Subsets are tried in
/// increasing size, lexicographically, with assignments in binary order.
FixingResult min_fixing_number(const QuadPoly& q, Index cap = 14);

/// Q evaluated on the cube with the given variables fixed is constant.
bool fixing_pins(const QuadPoly& q, const IndexSet& indices, const std::vector<int>& values);

struct FixingBoxResult {
    bool exact = true;
    /// Minimum over fixing boxes of #{i : Pr[zeta_i in R_i] <= 1 - delta}.
    Index m = 0;
    /// A minimizing box; each entry is a sorted subset of the support of zeta_i.
    std::vector<std::vector<Rational>> box;
};

/// Exact search over fixing boxes. Only singletons and inclusion-minimal
/// subsets of mass > 1 - delta need to be tried, since shrinking a fixing box
/// keeps it fixing. The returned box is re-checked by enumerating all of its
/// points. Inconclusive (exact = false) when the support product exceeds cap.
FixingBoxResult fixing_box_robustness(const QuadPoly& q, const ProductDist& d, const Rational& delta,
                                      std::uint64_t cap = 1'000'000);

/// Q takes a single value on the product of the given sets (full enumeration).
bool constant_on_box(const QuadPoly& q, const std::vector<std::vector<Rational>>& box);

/// Minimum vertex cover size of the off-diagonal support graph minus 1;
/// -1 when A has no nonzero off-diagonal entry.
long offdiag_robustness(const RatMatrix& a);

/// Minimum vertex cover of a simple graph by branch and bound.
Index min_vertex_cover(Index n, const std::vector<std::pair<Index, Index>>& edges);

/// Edges {i, j}, i < j, with A[i,j] != 0, in lexicographic order.
std::vector<std::pair<Index, Index>> offdiag_support(const RatMatrix& a);

/// Greedy maximal matching in the off-diagonal support graph, scanning pairs
/// (i, j) lexicographically.
std::vector<std::pair<Index, Index>> matching_lower_bound(const RatMatrix& a);

struct ReprAtom {
    Rational alpha;
    Rational beta;
    Rational prob;
};

/// Joint law of (alpha, beta), with zeta = alpha + xi * beta for an
/// independent fair sign xi. Atoms are sorted by (alpha, beta) and distinct.
struct ReprOutput {
    std::vector<ReprAtom> atoms;
};

/// Majority case (some value z of mass >= 1/2, the largest such z): (z, 0)
/// with mass 1 - 2 rho and ((z+y)/2, (z-y)/2) with mass 2 Pr[zeta = y].
/// Otherwise, with median x the largest atom v with Pr[zeta >= v] >= 1/2 and
/// rho1 = Pr[zeta < x] >= rho2 = Pr[zeta > x]: (x, 0) with mass 1 - 2 rho1,
/// ((x+Y1)/2, (x-Y1)/2) with mass 2 rho1 - 2 rho2, ((Y2+Y1)/2, (Y2-Y1)/2)
/// with mass 2 rho2, where Y1, Y2 are independent copies of zeta conditioned
/// below and above x. When rho2 > rho1 the roles of the two sides swap.
ReprOutput represent_discrete(const DiscreteDist& d);

/// Law of alpha + xi * beta.
DiscreteDist induced_law(const ReprOutput& r);

}  // namespace qlo
