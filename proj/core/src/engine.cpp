#include "qlo/engine.hpp"

#include "qlo/detail/enumeration.hpp"
#include "qlo/error.hpp"
#include "qlo/rng.hpp"

#include <cmath>
#include <string>
#include <thread>
#include <unordered_map>

namespace qlo {

using detail::IntegerQuad;
using detail::IntegerSystem;
using detail::QuadState;
using detail::SystemState;

namespace {

void check_cap(Index n, const EngineOptions& opts) {
    if (n > opts.cap || n > detail::kMaxWalkDim) {
        throw CapExceeded("n = " + std::to_string(n) + " exceeds the enumeration cap of " +
                          std::to_string(std::min<unsigned>(opts.cap, detail::kMaxWalkDim)) +
                          "; use monte_carlo instead");
    }
}

template <class Int>
struct CountMap {
    using type = std::map<Int, std::uint64_t>;
};
template <>
struct CountMap<std::int64_t> {
    using type = std::unordered_map<std::int64_t, std::uint64_t>;
};

template <class Int>
struct HistogramVisitor {
    QuadState<Int> q;
    std::optional<SystemState<Int>> sys;
    typename CountMap<Int>::type counts;

    void reset(std::uint64_t bits) {
        q.reset(bits);
        if (sys) sys->reset(bits);
    }
    void flip(Index j) {
        if (sys) sys->flip(j, q.plus(j));
        q.flip(j);
    }
    void visit() {
        if (!sys || sys->satisfied()) ++counts[q.value()];
    }
    void merge(HistogramVisitor&& other) {
        for (auto& [v, c] : other.counts) counts[v] += c;
    }
};

template <class Int>
struct SystemVisitor {
    SystemState<Int> sys;
    Index threshold = 0;  // 0 means "all rows satisfied"
    std::uint64_t bits = 0;
    std::uint64_t count = 0;

    void reset(std::uint64_t b) {
        bits = b;
        sys.reset(b);
    }
    void flip(Index j) {
        sys.flip(j, (bits >> j) & 1U);
        bits ^= std::uint64_t{1} << j;
    }
    void visit() {
        if (threshold == 0 ? sys.satisfied() : sys.mismatches() < threshold) ++count;
    }
    void merge(SystemVisitor&& other) { count += other.count; }
};

/// Integer form of the quadric event on the scaled sum Y = D * y.
struct IntegerQuadric {
    Index r = 0;
    std::vector<Integer> quad;  // r*r
    std::vector<Integer> lin;
    Integer constant = 0;
    std::vector<Integer> aff;  // rows*r
    std::vector<Integer> aff_target;
    Index aff_rows = 0;
};

template <class Int>
struct VectorVisitor {
    SystemState<Int> sum;  // Y, with all-zero targets
    Index r = 0;
    std::vector<Int> quad;
    std::vector<Int> lin;
    Int constant{};
    std::vector<Int> aff;
    std::vector<Int> aff_target;
    Index aff_rows = 0;
    std::uint64_t bits = 0;
    std::uint64_t count = 0;

    void reset(std::uint64_t b) {
        bits = b;
        sum.reset(b);
    }
    void flip(Index j) {
        sum.flip(j, (bits >> j) & 1U);
        bits ^= std::uint64_t{1} << j;
    }
    void visit() {
        const auto& y = sum.values();
        for (Index row = 0; row < aff_rows; ++row) {
            Int acc{};
            for (Index c = 0; c < r; ++c) acc += aff[row * r + c] * y[c];
            if (acc != aff_target[row]) return;
        }
        Int acc = constant;
        for (Index i = 0; i < r; ++i) {
            Int inner = lin[i];
            for (Index c = 0; c < r; ++c) inner += quad[i * r + c] * y[c];
            acc += inner * y[i];
        }
        if (acc == 0) ++count;
    }
    void merge(VectorVisitor&& other) { count += other.count; }
};

template <class Int>
std::vector<Int> convert(const std::vector<Integer>& v) {
    std::vector<Int> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(detail::to_int<Int>(x));
    return out;
}

DyadicProb cube_prob(std::uint64_t count, Index n) { return DyadicProb(from_u64(count), pow2(n)); }

}  // namespace

DyadicProb AtomHistogram::point_prob(const Rational& z) const {
    auto it = counts.find(z);
    return DyadicProb(it == counts.end() ? Integer(0) : it->second, total);
}

Integer AtomHistogram::count_sum() const {
    Integer s = 0;
    for (const auto& [v, c] : counts) s += c;
    return s;
}

AtomHistogram histogram(const QuadPoly& q, const LinearConstraint& constraint, const EngineOptions& opts) {
    const Index n = q.dim();
    constraint.check(n);
    check_cap(n, opts);

    const IntegerQuad iq = IntegerQuad::from(q);
    const bool constrained = constraint.rows() > 0;
    const IntegerSystem is = IntegerSystem::from(constraint.m, constraint.w);

    AtomHistogram out;
    out.total = pow2(n);
    detail::dispatch_int({&iq.magnitude, &is.magnitude}, [&](auto tag) {
        using Int = decltype(tag);
        HistogramVisitor<Int> proto{QuadState<Int>(iq), std::nullopt, {}};
        if (constrained) proto.sys.emplace(is);
        auto done = detail::walk_hypercube(static_cast<unsigned>(n), opts.workers, proto);
        for (const auto& [v, c] : done.counts)
            out.counts[iq.unscale(detail::to_integer<Int>(v))] += from_u64(c);
        return 0;
    });
    return out;
}

AtomHistogram histogram(const QuadPoly& q, const EngineOptions& opts) {
    return histogram(q, LinearConstraint::none(q.dim()), opts);
}

PointMass sup_point_prob(const AtomHistogram& h) {
    PointMass best{0, DyadicProb(0, h.total)};
    bool first = true;
    // Map order is ascending, so strict > keeps the smallest value among ties.
    for (const auto& [v, c] : h.counts) {
        if (first || c > best.prob.count) {
            best = {v, DyadicProb(c, h.total)};
            first = false;
        }
    }
    return best;
}

PointMass sup_point_prob(const QuadPoly& q, const EngineOptions& opts) { return sup_point_prob(histogram(q, opts)); }

DyadicProb linear_system_prob(const LinearConstraint& c, const EngineOptions& opts) {
    const Index n = c.dim();
    c.check(n);
    check_cap(n, opts);
    if (c.rows() == 0) return DyadicProb(pow2(n), pow2(n));
    const IntegerSystem is = IntegerSystem::from(c.m, c.w);
    const std::uint64_t count = detail::dispatch_int({&is.magnitude}, [&](auto tag) {
        using Int = decltype(tag);
        SystemVisitor<Int> proto{SystemState<Int>(is)};
        return detail::walk_hypercube(static_cast<unsigned>(n), opts.workers, proto).count;
    });
    return cube_prob(count, n);
}

DyadicProb hamming_event_prob(const RatMatrix& a, const RatVector& v, Index threshold, const EngineOptions& opts) {
    if (v.size() != a.rows()) throw DimensionError("v must have one entry per row of A");
    const Index n = a.cols();
    check_cap(n, opts);
    if (threshold == 0) return DyadicProb(0, pow2(n));
    const IntegerSystem is = IntegerSystem::from(a, v);
    const std::uint64_t count = detail::dispatch_int({&is.magnitude}, [&](auto tag) {
        using Int = decltype(tag);
        SystemVisitor<Int> proto{SystemState<Int>(is), threshold};
        return detail::walk_hypercube(static_cast<unsigned>(n), opts.workers, proto).count;
    });
    return cube_prob(count, n);
}

DyadicProb vector_event_prob(const std::vector<RatVector>& a, const QuadricSpec& z, const EngineOptions& opts) {
    const Index r = z.dim();
    const Index n = a.size();
    z.affine.check(r);
    for (const auto& ai : a)
        if (ai.size() != r) throw DimensionError("every a_i must have r entries");
    check_cap(n, opts);

    // Y = D y with D clearing every denominator of the a_i.
    RatVector flat;
    for (const auto& ai : a) flat.insert(flat.end(), ai.begin(), ai.end());
    const Rational d = Rational(lcm_of_denominators(flat));
    RatMatrix cols(r, n);
    for (Index i = 0; i < n; ++i)
        for (Index c = 0; c < r; ++c) cols(c, i) = a[i][c] * d;
    const IntegerSystem sum = IntegerSystem::from(cols, RatVector(r));
    Integer ymax = 0;
    for (Index c = 0; c < r; ++c) {
        Integer row = 0;
        for (Index i = 0; i < n; ++i) row += abs(sum.coeff[c * n + i]);
        if (row > ymax) ymax = row;
    }

    // D_P * (Y^T A Y + D b^T Y + D^2 c) vanishes exactly when P(y) does.
    IntegerQuadric iqd;
    iqd.r = r;
    {
        RatVector all;
        for (Index i = 0; i < r; ++i)
            for (Index c = 0; c < r; ++c) all.push_back(z.p.quad()(i, c));
        for (Index i = 0; i < r; ++i) all.push_back(z.p.lin()[i] * d);
        all.push_back(z.p.constant() * d * d);
        const Rational dp = Rational(lcm_of_denominators(all));
        for (Index i = 0; i < r * r; ++i) iqd.quad.push_back(Rational(all[i] * dp).get_num());
        for (Index i = 0; i < r; ++i) iqd.lin.push_back(Rational(all[r * r + i] * dp).get_num());
        iqd.constant = Rational(all.back() * dp).get_num();
    }
    {
        RatVector w = z.affine.w;
        for (auto& x : w) x *= d;
        const IntegerSystem aff = IntegerSystem::from(z.affine.m, w);
        iqd.aff = aff.coeff;
        iqd.aff_target = aff.target;
        iqd.aff_rows = aff.rows;
    }

    Integer bound = 0;
    {
        Integer qs = 0, ls = 0, as = 0;
        for (const auto& x : iqd.quad) qs += abs(x);
        for (const auto& x : iqd.lin) ls += abs(x);
        for (const auto& x : iqd.aff) as += abs(x);
        bound = qs * ymax * ymax + ls * ymax + abs(iqd.constant) + as * ymax;
        for (const auto& t : iqd.aff_target) bound += abs(t);
    }

    const std::uint64_t count = detail::dispatch_int({&sum.magnitude, &bound}, [&](auto tag) {
        using Int = decltype(tag);
        VectorVisitor<Int> proto{SystemState<Int>(sum), r, convert<Int>(iqd.quad), convert<Int>(iqd.lin),
                                 detail::to_int<Int>(iqd.constant), convert<Int>(iqd.aff),
                                 convert<Int>(iqd.aff_target), iqd.aff_rows};
        return detail::walk_hypercube(static_cast<unsigned>(n), opts.workers, proto).count;
    });
    return cube_prob(count, n);
}

Rational general_point_prob(const QuadPoly& q, const ProductDist& d, const Rational& z, const EngineOptions& opts) {
    const Index n = q.dim();
    if (d.size() != n) throw DimensionError("need one distribution per variable");
    Integer outcomes = 1;
    for (const auto& di : d) outcomes *= static_cast<unsigned long>(di.support_size());
    if (outcomes > from_u64(opts.general_cap)) {
        throw CapExceeded("support product " + to_string(outcomes) + " exceeds the cap of " +
                          std::to_string(opts.general_cap) + "; use monte_carlo instead");
    }

    // Depth-first over coordinates; partial[j] is the part of Q involving
    // only x_0..x_{j-1}, so each node costs O(j).
    const RatMatrix& a = q.quad();
    RatVector x(n);
    Rational total = 0;
    auto dfs = [&](auto&& self, Index j, const Rational& partial, const Rational& weight) -> void {
        if (j == n) {
            if (partial == z) total += weight;
            return;
        }
        for (const auto& atom : d[j].atoms()) {
            const Rational& v = atom.value;
            Rational cross = 0;
            for (Index i = 0; i < j; ++i) cross += a(i, j) * x[i];
            x[j] = v;
            const Rational next = partial + v * (a(j, j) * v + q.lin()[j] + 2 * cross);
            self(self, j + 1, next, weight * atom.prob);
        }
    };
    dfs(dfs, 0, q.constant(), Rational(1));
    return total;
}

Rational wilson_halfwidth(std::uint64_t hits, std::uint64_t samples) {
    if (samples == 0) throw DomainError("wilson_halfwidth needs at least one sample");
    constexpr double z = 1.959963984540054;
    const double nn = static_cast<double>(samples);
    const double p = static_cast<double>(hits) / nn;
    const double denom = 1 + z * z / nn;
    const double center = (p + z * z / (2 * nn)) / denom;
    const double spread = z * std::sqrt(p * (1 - p) / nn + z * z / (4 * nn * nn)) / denom;
    const double h = std::max(std::abs(center + spread - p), std::abs(p - (center - spread)));
    return rational_from_double(h);
}

MonteCarloEstimate monte_carlo(const QuadPoly& q, const std::optional<ProductDist>& d, const Rational& z,
                               std::uint64_t samples, std::uint64_t seed, unsigned workers) {
    if (samples == 0) throw DomainError("monte_carlo needs at least one sample");
    const Index n = q.dim();
    if (d && d->size() != n) throw DimensionError("need one distribution per variable");

    // Cumulative masses scaled to 2^64 for exact inverse-CDF sampling.
    std::vector<std::vector<Integer>> cdf;
    if (d) {
        const Integer two64 = pow2(64);
        for (const auto& di : *d) {
            std::vector<Integer> c;
            Rational acc = 0;
            for (const auto& atom : di.atoms()) {
                acc += atom.prob;
                Integer cut;
                mpz_cdiv_q(cut.get_mpz_t(), Rational(acc * two64).get_num_mpz_t(),
                           Rational(acc * two64).get_den_mpz_t());
                c.push_back(cut);
            }
            cdf.push_back(std::move(c));
        }
    }

    const IntegerQuad iq = IntegerQuad::from(q);
    const Rational target_scaled = z * iq.scale;
    const bool target_integral = target_scaled.get_den() == 1;
    const Integer target = target_scaled.get_num();

    auto one_sample = [&](std::uint64_t i) -> bool {
        if (!d) {
            if (!target_integral) return false;
            SignVector x(n);
            for (Index j = 0; j < n; ++j) {
                const std::uint64_t word = counter_random(seed, i, j / 64);
                if ((word >> (j % 64)) & 1U) x.set(j, 1);
            }
            return eval_quad(q, x) == z;
        }
        RatVector x(n);
        for (Index j = 0; j < n; ++j) {
            const Integer u = from_u64(counter_random(seed, i, j));
            const auto& c = cdf[j];
            Index k = 0;
            while (k + 1 < c.size() && u >= c[k]) ++k;
            x[j] = (*d)[j].atoms()[k].value;
        }
        return eval_at(q, x) == z;
    };

    // Fast path for Rademacher inputs within a machine word: integer evaluation.
    auto run_range = [&](std::uint64_t first, std::uint64_t last) -> std::uint64_t {
        std::uint64_t hits = 0;
        if (!d && n <= detail::kMaxWalkDim && target_integral) {
            detail::dispatch_int({&iq.magnitude, &target}, [&](auto tag) {
                using Int = decltype(tag);
                QuadState<Int> state(iq);
                const Int t = detail::to_int<Int>(target);
                for (std::uint64_t i = first; i < last; ++i) {
                    std::uint64_t bits = counter_random(seed, i, 0);
                    if (n < 64) bits &= (std::uint64_t{1} << n) - 1;
                    state.reset(bits);
                    if (state.value() == t) ++hits;
                }
                return 0;
            });
            return hits;
        }
        for (std::uint64_t i = first; i < last; ++i)
            if (one_sample(i)) ++hits;
        return hits;
    };

    std::uint64_t hits = 0;
    const unsigned threads = std::max(1U, static_cast<unsigned>(std::min<std::uint64_t>(workers, samples)));
    if (threads == 1) {
        hits = run_range(0, samples);
    } else {
        std::vector<std::uint64_t> part(threads);
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] { part[w] = run_range(samples * w / threads, samples * (w + 1) / threads); });
        }
        for (auto& t : pool) t.join();
        for (auto h : part) hits += h;
    }

    MonteCarloEstimate out;
    out.hits = hits;
    out.samples = samples;
    out.estimate = ratio(from_u64(hits), from_u64(samples));
    out.halfwidth = wilson_halfwidth(hits, samples);
    return out;
}

}  // namespace qlo
