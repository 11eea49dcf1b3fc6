#include "qlo/structure.hpp"

#include "qlo/detail/combinations.hpp"
#include "qlo/error.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace qlo {

std::vector<std::pair<Index, Index>> offdiag_support(const RatMatrix& a) {
    if (a.rows() != a.cols()) throw DimensionError("A must be square");
    std::vector<std::pair<Index, Index>> edges;
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = i + 1; j < a.cols(); ++j)
            if (sgn(a(i, j)) != 0 || sgn(a(j, i)) != 0) edges.emplace_back(i, j);
    return edges;
}

std::vector<std::pair<Index, Index>> matching_lower_bound(const RatMatrix& a) {
    std::vector<bool> used(a.rows(), false);
    std::vector<std::pair<Index, Index>> out;
    for (const auto& [i, j] : offdiag_support(a)) {
        if (used[i] || used[j]) continue;
        used[i] = used[j] = true;
        out.emplace_back(i, j);
    }
    return out;
}

namespace {

struct CoverSearch {
    Index n;
    std::vector<std::vector<Index>> adj;
    std::vector<bool> removed;
    Index best;

    Index greedy_matching() const {
        std::vector<bool> used(n, false);
        Index size = 0;
        for (Index v = 0; v < n; ++v) {
            if (removed[v] || used[v]) continue;
            for (Index w : adj[v]) {
                if (!removed[w] && !used[w]) {
                    used[v] = used[w] = true;
                    ++size;
                    break;
                }
            }
        }
        return size;
    }

    void run(Index taken) {
        if (taken + greedy_matching() >= best) return;
        Index pivot = n;
        Index degree = 0;
        for (Index v = 0; v < n; ++v) {
            if (removed[v]) continue;
            Index d = 0;
            for (Index w : adj[v])
                if (!removed[w]) ++d;
            if (d > degree) {
                degree = d;
                pivot = v;
            }
        }
        if (pivot == n) {
            best = taken;
            return;
        }
        // Either the pivot is in the cover, or all of its neighbours are.
        removed[pivot] = true;
        run(taken + 1);
        std::vector<Index> nbrs;
        for (Index w : adj[pivot])
            if (!removed[w]) nbrs.push_back(w);
        for (Index w : nbrs) removed[w] = true;
        run(taken + nbrs.size());
        for (Index w : nbrs) removed[w] = false;
        removed[pivot] = false;
    }
};

}  // namespace

Index min_vertex_cover(Index n, const std::vector<std::pair<Index, Index>>& edges) {
    CoverSearch search{n, std::vector<std::vector<Index>>(n), std::vector<bool>(n, false), n};
    for (const auto& [u, v] : edges) {
        if (u >= n || v >= n || u == v) throw DomainError("edges must join distinct vertices below n");
        search.adj[u].push_back(v);
        search.adj[v].push_back(u);
    }
    search.run(0);
    return search.best;
}

long offdiag_robustness(const RatMatrix& a) {
    const auto edges = offdiag_support(a);
    if (edges.empty()) return -1;
    return static_cast<long>(min_vertex_cover(a.rows(), edges)) - 1;
}

bool fixing_pins(const QuadPoly& q, const IndexSet& indices, const std::vector<int>& values) {
    const Index n = q.dim();
    if (indices.size() != values.size()) throw DimensionError("one value per fixed index");
    std::vector<int> fixed(n, 0);
    for (Index p = 0; p < indices.size(); ++p) {
        if (indices[p] >= n) throw DimensionError("fixed index out of range");
        fixed[indices[p]] = values[p];
    }
    const RatMatrix& a = q.quad();
    for (Index i = 0; i < n; ++i) {
        if (fixed[i] != 0) continue;
        Rational lin = q.lin()[i];
        for (Index j = 0; j < n; ++j) {
            if (j == i || sgn(a(i, j)) == 0) continue;
            if (fixed[j] == 0) return false;
            lin += 2 * a(i, j) * fixed[j];
        }
        if (sgn(lin) != 0) return false;
    }
    return true;
}

FixingResult min_fixing_number(const QuadPoly& q, Index cap) {
    const Index n = q.dim();
    FixingResult out;
    out.lower_bound = matching_lower_bound(q.quad()).size();

    auto pinned_value = [&](const IndexSet& idx, const std::vector<int>& vals) {
        SignVector x(n);
        for (Index p = 0; p < idx.size(); ++p) x.set(idx[p], vals[p]);
        return eval_quad(q, x);
    };

    if (fixing_pins(q, {}, {})) {
        out.m = 0;
        out.lower_bound = 0;
        out.witness.pinned_value = pinned_value({}, {});
        return out;
    }
    if (n > cap) {
        out.exact = false;
        out.lower_bound = std::max<Index>(out.lower_bound, 1);
        return out;
    }

    const auto edges = offdiag_support(q.quad());
    for (Index size = 1; size <= n; ++size) {
        IndexSet f = detail::first_combination(size);
        do {
            // The free variables must be independent in the support graph.
            std::vector<bool> in_f(n, false);
            for (Index i : f) in_f[i] = true;
            bool independent = true;
            for (const auto& [u, v] : edges) {
                if (!in_f[u] && !in_f[v]) {
                    independent = false;
                    break;
                }
            }
            if (!independent) continue;
            std::vector<int> vals(size);
            for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << size); ++bits) {
                for (Index p = 0; p < size; ++p) vals[p] = ((bits >> p) & 1U) ? 1 : -1;
                if (fixing_pins(q, f, vals)) {
                    out.m = size;
                    out.witness = {f, vals, pinned_value(f, vals)};
                    out.lower_bound = std::min(out.lower_bound, size);
                    return out;
                }
            }
        } while (detail::next_combination(f, n));
    }
    // Fixing every variable always pins Q, so the loop returns before here.
    throw std::logic_error("min_fixing_number: no fixing set found");
}

bool constant_on_box(const QuadPoly& q, const std::vector<std::vector<Rational>>& box) {
    const Index n = q.dim();
    if (box.size() != n) throw DimensionError("box needs one set per variable");
    for (const auto& r : box)
        if (r.empty()) throw DomainError("box sets must be nonempty");
    std::vector<Index> digit(n, 0);
    RatVector x(n);
    for (Index i = 0; i < n; ++i) x[i] = box[i][0];
    const Rational first = eval_at(q, x);
    for (;;) {
        Index i = 0;
        while (i < n && digit[i] + 1 == box[i].size()) {
            digit[i] = 0;
            x[i] = box[i][0];
            ++i;
        }
        if (i == n) return true;
        ++digit[i];
        x[i] = box[i][digit[i]];
        if (eval_at(q, x) != first) return false;
    }
}

namespace {

struct Candidate {
    std::vector<Rational> set;
    Index cost;  // 1 when the mass is at most 1 - delta
};

struct BoxSearch {
    const QuadPoly& q;
    std::vector<std::vector<Candidate>> cands;
    std::vector<std::vector<Index>> nbrs;
    std::vector<const Candidate*> chosen;
    std::vector<const Candidate*> full;  // full-support candidate per variable
    Index best;
    std::vector<const Candidate*> best_box;

    // Free variable i is consistent once every neighbour is decided: all
    // neighbours fixed, and A_ii (u + v) + 2 sum_j A_ij x_j + b_i = 0 for every pair u != v in R_i.
    bool free_ok(Index i, const std::vector<const Candidate*>& box, Index decided) const {
        const auto& ri = box[i]->set;
        if (ri.size() < 2) return true;
        Rational field = q.lin()[i];
        for (Index j : nbrs[i]) {
            if (j >= decided) return true;
            if (box[j]->set.size() >= 2) return false;
            field += 2 * q.quad()(i, j) * box[j]->set[0];
        }
        const Rational& aii = q.quad()(i, i);
        for (Index u = 0; u < ri.size(); ++u)
            for (Index v = u + 1; v < ri.size(); ++v)
                if (sgn(aii * (ri[u] + ri[v]) + field) != 0) return false;
        return true;
    }

    bool box_ok(const std::vector<const Candidate*>& box, Index decided) const {
        for (Index i = 0; i < decided; ++i)
            if (!free_ok(i, box, decided)) return false;
        return true;
    }

    void run(Index i, Index cost) {
        if (cost >= best) return;
        if (!box_ok(chosen, i)) return;
        // Completing with full supports costs nothing; if that box fixes Q no
        // other completion of this prefix can do better.
        std::vector<const Candidate*> completed = chosen;
        for (Index j = i; j < completed.size(); ++j) completed[j] = full[j];
        if (box_ok(completed, completed.size())) {
            best = cost;
            best_box = completed;
            return;
        }
        if (i == chosen.size()) return;
        for (const auto& c : cands[i]) {
            chosen[i] = &c;
            run(i + 1, cost + c.cost);
        }
        chosen[i] = full[i];
    }
};

}  // namespace

FixingBoxResult fixing_box_robustness(const QuadPoly& q, const ProductDist& d, const Rational& delta,
                                      std::uint64_t cap) {
    const Index n = q.dim();
    if (d.size() != n) throw DimensionError("need one distribution per variable");
    if (sgn(delta) <= 0 || delta > 1) throw DomainError("delta must lie in (0, 1]");
    FixingBoxResult out;
    Integer product = 1;
    for (const auto& di : d) product *= static_cast<unsigned long>(di.support_size());
    if (product > from_u64(cap)) {
        out.exact = false;
        return out;
    }
    const Rational limit = 1 - delta;

    BoxSearch search{q, {}, std::vector<std::vector<Index>>(n), std::vector<const Candidate*>(n),
                     std::vector<const Candidate*>(n), n + 1, {}};
    for (const auto& [u, v] : offdiag_support(q.quad())) {
        search.nbrs[u].push_back(v);
        search.nbrs[v].push_back(u);
    }
    for (auto& nb : search.nbrs) std::sort(nb.begin(), nb.end());

    search.cands.resize(n);
    for (Index i = 0; i < n; ++i) {
        const auto& atoms = d[i].atoms();
        const Index sz = atoms.size();
        auto& c = search.cands[i];
        for (const auto& atom : atoms) c.push_back({{atom.value}, atom.prob > limit ? Index{0} : Index{1}});
        // Inclusion-minimal subsets of mass > limit with at least two atoms.
        std::vector<std::uint32_t> large;
        for (std::uint32_t mask = 1; mask < (1U << sz); ++mask) {
            Rational mass = 0;
            for (Index a = 0; a < sz; ++a)
                if ((mask >> a) & 1U) mass += atoms[a].prob;
            if (mass > limit) large.push_back(mask);
        }
        for (std::uint32_t mask : large) {
            if (std::popcount(mask) < 2) continue;
            bool minimal = true;
            for (std::uint32_t other : large)
                if (other != mask && (other & mask) == other) minimal = false;
            if (!minimal) continue;
            std::vector<Rational> set;
            for (Index a = 0; a < sz; ++a)
                if ((mask >> a) & 1U) set.push_back(atoms[a].value);
            c.push_back({std::move(set), 0});
        }
    }
    std::vector<Candidate> fulls(n);
    for (Index i = 0; i < n; ++i) {
        for (const auto& atom : d[i].atoms()) fulls[i].set.push_back(atom.value);
        fulls[i].cost = 0;
        search.full[i] = &fulls[i];
        search.chosen[i] = &fulls[i];
    }

    search.run(0, 0);
    out.m = search.best;
    for (const Candidate* c : search.best_box) out.box.push_back(c->set);
    if (!constant_on_box(q, out.box)) throw std::logic_error("fixing_box_robustness: box failed re-check");
    return out;
}

ReprOutput represent_discrete(const DiscreteDist& d) {
    const auto& atoms = d.atoms();
    std::map<std::pair<Rational, Rational>, Rational> joint;
    auto add = [&](const Rational& a, const Rational& b, const Rational& p) {
        if (sgn(p) != 0) joint[{a, b}] += p;
    };

    const Atom* major = nullptr;
    for (const auto& a : atoms)
        if (a.prob * 2 >= 1) major = &a;  // atoms ascend, so the last hit is the largest z

    if (major != nullptr) {
        const Rational& z = major->value;
        const Rational rho = 1 - major->prob;
        add(z, 0, 1 - 2 * rho);
        for (const auto& a : atoms) {
            if (a.value == z) continue;
            add((z + a.value) / 2, (z - a.value) / 2, 2 * a.prob);
        }
    } else {
        Rational tail = 0;
        Index median = 0;
        for (Index p = atoms.size(); p-- > 0;) {
            tail += atoms[p].prob;
            if (tail * 2 >= 1) {
                median = p;
                break;
            }
        }
        const Rational& x = atoms[median].value;
        Rational rho1 = 0;
        Rational rho2 = 0;
        for (Index p = 0; p < atoms.size(); ++p) {
            if (p < median) rho1 += atoms[p].prob;
            if (p > median) rho2 += atoms[p].prob;
        }
        const bool lower_heavy = rho1 >= rho2;
        // "near" is the heavier side, used alone in the middle group.
        const Rational& rho_near = lower_heavy ? rho1 : rho2;
        const Rational& rho_far = lower_heavy ? rho2 : rho1;
        add(x, 0, 1 - 2 * rho_near);
        for (Index p = 0; p < atoms.size(); ++p) {
            const bool near = lower_heavy ? p < median : p > median;
            if (!near) continue;
            const Rational cond = atoms[p].prob / rho_near;
            add((x + atoms[p].value) / 2, (x - atoms[p].value) / 2, (2 * rho_near - 2 * rho_far) * cond);
        }
        if (sgn(rho2) != 0 && sgn(rho1) != 0) {
            for (Index lo = 0; lo < median; ++lo) {
                for (Index hi = median + 1; hi < atoms.size(); ++hi) {
                    const Rational& y1 = atoms[lo].value;
                    const Rational& y2 = atoms[hi].value;
                    const Rational p = 2 * rho_far * (atoms[lo].prob / rho1) * (atoms[hi].prob / rho2);
                    add((y2 + y1) / 2, (y2 - y1) / 2, p);
                }
            }
        }
    }

    ReprOutput out;
    for (auto& [ab, p] : joint) out.atoms.push_back({ab.first, ab.second, p});
    return out;
}

DiscreteDist induced_law(const ReprOutput& r) {
    std::map<Rational, Rational> law;
    for (const auto& atom : r.atoms) {
        if (sgn(atom.beta) == 0) {
            law[atom.alpha] += atom.prob;
        } else {
            law[atom.alpha + atom.beta] += atom.prob / 2;
            law[atom.alpha - atom.beta] += atom.prob / 2;
        }
    }
    std::vector<Atom> atoms;
    for (auto& [v, p] : law)
        if (sgn(p) != 0) atoms.push_back({v, p});
    return DiscreteDist(std::move(atoms));
}

}  // namespace qlo
