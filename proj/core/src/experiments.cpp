#include "qlo/experiments.hpp"

#include "qlo/detail/enumeration.hpp"
#include "qlo/error.hpp"
#include "qlo/rng.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace qlo {

Graph::Graph(Index n, std::vector<std::pair<Index, Index>> edges) : n_(n), adj_(n * n, false) {
    for (auto [u, v] : edges) {
        if (u >= n || v >= n) throw DomainError("edge endpoint out of range");
        if (u == v) throw DomainError("graph must not have loops");
        if (adj_[u * n + v]) throw DomainError("repeated edge");
        adj_[u * n + v] = adj_[v * n + u] = true;
        edges_.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(edges_.begin(), edges_.end());
}

Graph Graph::complete(Index n) {
    std::vector<std::pair<Index, Index>> e;
    for (Index u = 0; u < n; ++u)
        for (Index v = u + 1; v < n; ++v) e.emplace_back(u, v);
    return Graph(n, std::move(e));
}

Graph Graph::empty(Index n) { return Graph(n, {}); }

Graph Graph::cycle(Index n) {
    std::vector<std::pair<Index, Index>> e;
    if (n >= 3)
        for (Index u = 0; u < n; ++u) e.emplace_back(u, (u + 1) % n);
    return Graph(n, std::move(e));
}

Graph Graph::parse_edge_list(std::istream& in, std::optional<Index> n) {
    std::vector<std::pair<Index, Index>> e;
    Index top = 0;
    std::string line;
    Index lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        long long u = 0;
        long long v = 0;
        if (!(ls >> u)) continue;
        std::string rest;
        if (!(ls >> v) || (ls >> rest) || u < 0 || v < 0)
            throw ParseError("edge list line " + std::to_string(lineno) + ": expected \"u v\"");
        e.emplace_back(static_cast<Index>(u), static_cast<Index>(v));
        top = std::max<Index>(top, static_cast<Index>(std::max(u, v)) + 1);
    }
    return Graph(n.value_or(top), std::move(e));
}

Rational EdgeStats::ratio(Index l) const {
    auto it = counts.find(l);
    if (it == counts.end()) return 0;
    return qlo::ratio(it->second, total);
}

std::optional<double> EdgeStats::shape(Index l) const {
    const Index pairs = k * (k - 1) / 2;
    if (l > pairs || k == 0) return std::nullopt;
    const Index m = std::min(l, pairs - l);
    if (m == 0) return std::nullopt;
    return 1.0 / std::sqrt(static_cast<double>(m) / static_cast<double>(k));
}

EdgeStats edge_stats(const Graph& g, Index k, std::uint64_t cap) {
    const Index n = g.size();
    if (k > n) throw DomainError("k exceeds the number of vertices");
    EdgeStats out;
    out.n = n;
    out.k = k;
    out.total = binomial(static_cast<unsigned>(n), static_cast<unsigned>(k));
    if (out.total > from_u64(cap))
        throw CapExceeded("C(n, k) = " + to_string(out.total) + " exceeds the cap of " + std::to_string(cap));

    std::vector<std::uint64_t> tally(k * (k - 1) / 2 + 1, 0);
    std::vector<Index> chosen;
    chosen.reserve(k);
    auto walk = [&](auto&& self, Index next, Index edges) -> void {
        if (chosen.size() == k) {
            ++tally[edges];
            return;
        }
        const Index need = k - chosen.size();
        for (Index v = next; v + need <= n; ++v) {
            Index added = 0;
            for (Index u : chosen)
                if (g.adjacent(u, v)) ++added;
            chosen.push_back(v);
            self(self, v + 1, edges + added);
            chosen.pop_back();
        }
    };
    walk(walk, 0, 0);
    for (Index l = 0; l < tally.size(); ++l)
        if (tally[l] != 0) out.counts[l] = from_u64(tally[l]);
    return out;
}

namespace {

void check_partition(const QuadPoly& q, const IndexSet& i_set) {
    std::vector<bool> seen(q.dim(), false);
    for (Index i : i_set) {
        if (i >= q.dim()) throw DimensionError("I contains an index out of range");
        if (seen[i]) throw DomainError("I contains a repeated index");
        seen[i] = true;
    }
}

template <class Int>
struct DecouplingVisitor {
    detail::QuadState<Int> q;
    std::vector<Index> y_pos;  // position of each variable among J, or npos for I
    Int target{};
    std::uint64_t y = 0;
    std::vector<std::uint64_t> per_y;

    void reset(std::uint64_t bits) {
        q.reset(bits);
        y = 0;
        for (Index j = 0; j < y_pos.size(); ++j)
            if (y_pos[j] != kNone && ((bits >> j) & 1U)) y |= std::uint64_t{1} << y_pos[j];
    }
    void flip(Index j) {
        q.flip(j);
        if (y_pos[j] != kNone) y ^= std::uint64_t{1} << y_pos[j];
    }
    void visit() {
        if (q.value() == target) ++per_y[y];
    }
    void merge(DecouplingVisitor&& other) {
        for (Index p = 0; p < per_y.size(); ++p) per_y[p] += other.per_y[p];
    }
    static constexpr Index kNone = static_cast<Index>(-1);
};

}  // namespace

DecouplingReport verify_decoupling(const QuadPoly& q, const IndexSet& i_set, unsigned cap) {
    check_partition(q, i_set);
    const Index n = q.dim();
    const Index ni = i_set.size();
    const Index nj = n - ni;
    if (2 * ni + nj > cap || n > detail::kMaxWalkDim)
        throw CapExceeded("2|I| + |J| = " + std::to_string(2 * ni + nj) + " exceeds the cap of " + std::to_string(cap));

    std::vector<Index> y_pos(n, static_cast<Index>(-1));
    {
        std::vector<bool> in_i(n, false);
        for (Index i : i_set) in_i[i] = true;
        Index p = 0;
        for (Index j = 0; j < n; ++j)
            if (!in_i[j]) y_pos[j] = p++;
    }

    const detail::IntegerQuad iq = detail::IntegerQuad::from(q);
    std::vector<std::uint64_t> per_y = detail::dispatch_int({&iq.magnitude}, [&](auto tag) {
        using Int = decltype(tag);
        DecouplingVisitor<Int> proto{detail::QuadState<Int>(iq), y_pos, Int{}, 0,
                                     std::vector<std::uint64_t>(std::size_t{1} << nj, 0)};
        return detail::walk_hypercube(static_cast<unsigned>(n), 1, proto).per_y;
    });

    Integer sum = 0;
    Integer sum_sq = 0;
    for (auto c : per_y) {
        const Integer ci = from_u64(c);
        sum += ci;
        sum_sq += ci * ci;
    }
    DecouplingReport out;
    out.prob = ratio(sum, pow2(n));
    out.lhs = out.prob * out.prob;
    out.rhs = ratio(sum_sq, pow2(2 * ni + nj));
    out.pass = out.lhs <= out.rhs;
    return out;
}

DecouplingReport verify_decoupling_sampled(const QuadPoly& q, const IndexSet& i_set, std::uint64_t trials,
                                           std::uint64_t seed) {
    check_partition(q, i_set);
    if (trials == 0) throw DomainError("need at least one trial");
    const Index n = q.dim();
    std::vector<bool> in_i(n, false);
    for (Index i : i_set) in_i[i] = true;

    std::uint64_t single = 0;
    std::uint64_t both = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        CounterStream rng(seed, t);
        SignVector x(n);
        SignVector x2(n);
        for (Index j = 0; j < n; ++j) {
            const int s1 = (rng.next() & 1U) ? 1 : -1;
            x.set(j, s1);
            x2.set(j, in_i[j] ? ((rng.next() & 1U) ? 1 : -1) : s1);
        }
        const bool e1 = sgn(eval_quad(q, x)) == 0;
        const bool e2 = sgn(eval_quad(q, x2)) == 0;
        if (e1) ++single;
        if (e1 && e2) ++both;
    }
    DecouplingReport out;
    out.exact = false;
    out.samples = trials;
    const Integer tt = from_u64(trials);
    out.prob = ratio(from_u64(single), tt);
    out.lhs = out.prob * out.prob;
    out.rhs = ratio(from_u64(both), tt);
    out.pass = out.lhs <= out.rhs;
    return out;
}

}  // namespace qlo
