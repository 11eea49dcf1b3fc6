#pragma once

#include "qlo/matrix.hpp"
#include "qlo/quad_poly.hpp"

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace qlo {

/// Simple undirected graph on vertices 0..n-1.
class Graph {
public:
    Graph() = default;
    /// Throws DomainError on loops, repeated edges or out-of-range endpoints.
    Graph(Index n, std::vector<std::pair<Index, Index>> edges);

    static Graph complete(Index n);
    static Graph empty(Index n);
    static Graph cycle(Index n);
    /// Edge list, one "u v" per line (0-indexed); '#' starts a comment. The
    /// vertex count is one more than the largest endpoint unless `n` is given.
    static Graph parse_edge_list(std::istream& in, std::optional<Index> n = std::nullopt);

    Index size() const { return n_; }
    const std::vector<std::pair<Index, Index>>& edges() const { return edges_; }
    bool adjacent(Index u, Index v) const { return adj_[u * n_ + v]; }

private:
    Index n_ = 0;
    std::vector<std::pair<Index, Index>> edges_;
    std::vector<bool> adj_;
};

struct EdgeStats {
    Index n = 0;
    Index k = 0;
    /// l -> number of k-subsets inducing exactly l edges (only nonzero counts).
    std::map<Index, Integer> counts;
    /// C(n, k).
    Integer total = 0;

    Rational ratio(Index l) const;
    /// 1 / sqrt(min(l, C(k,2) - l) / k) with unit constant; nullopt when the
    /// minimum is 0. Shape only: the true constant is not known.
    std::optional<double> shape(Index l) const;
};

/// Counts over all k-subsets, walked in lexicographic order with induced edge
/// counts updated incrementally. Throws CapExceeded when C(n, k) > cap.
EdgeStats edge_stats(const Graph& g, Index k, std::uint64_t cap = 100'000'000);

struct DecouplingReport {
    bool exact = true;
    /// Pr[E] for E = {Q = 0}.
    Rational prob;
    /// Pr[E]^2.
    Rational lhs;
    /// Pr[E(X, Y) and E(X', Y)] with X' an independent copy of the I-part.
    Rational rhs;
    bool pass = false;
    std::uint64_t samples = 0;
};

/// Exact check of Pr[E]^2 <= Pr[E and E'] over {-1,1}^I x {-1,1}^I x {-1,1}^J.
/// With c_Y the number of X giving Q(X, Y) = 0, the two sides are
/// (sum_Y c_Y / 2^n)^2 and sum_Y c_Y^2 / 2^(2|I| + |J|). Requires
/// 2|I| + |J| <= cap.
DecouplingReport verify_decoupling(const QuadPoly& q, const IndexSet& i_set, unsigned cap = 26);

/// Sampled version: `trials` draws of (X, X', Y) from the counter generator.
DecouplingReport verify_decoupling_sampled(const QuadPoly& q, const IndexSet& i_set, std::uint64_t trials,
                                           std::uint64_t seed);

}  // namespace qlo
