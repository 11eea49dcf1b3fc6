#include "qlo/sweep.hpp"

#include "qlo/bounds.hpp"
#include "qlo/error.hpp"
#include "qlo/rng.hpp"
#include "qlo/structure.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>
#include <thread>
#include <vector>

namespace qlo {

namespace {

constexpr std::array<std::pair<SweepFamily, const char*>, 5> kFamilies{{
    {SweepFamily::squared_sum, "squared_sum"},
    {SweepFamily::bilinear_split, "bilinear_split"},
    {SweepFamily::random_dense, "random_dense"},
    {SweepFamily::random_matching, "random_matching"},
    {SweepFamily::diagonal, "diagonal"},
}};

bool deterministic(SweepFamily f) { return f == SweepFamily::squared_sum; }

Rational signed_in(CounterStream& rng, long lo, long hi) {
    return Rational(lo + static_cast<long>(rng.below(static_cast<std::uint64_t>(hi - lo + 1))));
}

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

struct Row {
    std::uint64_t id = 0;
    std::string text;
};

std::string sweep_row(const ExperimentSpec& spec, Index n, std::uint64_t id) {
    const QuadPoly q = generate_instance(spec.family, n, spec.seed, id);
    EngineOptions opts = spec.engine;
    opts.workers = 1;
    const PointMass sup = sup_point_prob(q, opts);
    const Rational sup_p = sup.prob.value();
    const LogBound erdos = erdos_lo(static_cast<unsigned>(n));
    const Rational erdos_p = *erdos.exact();

    const long s = offdiag_robustness(q.quad());
    const Index matching = matching_lower_bound(q.quad()).size();

    std::ostringstream out;
    out << id << ',' << to_string(spec.family) << ',' << n << ',' << to_string(sup.z) << ',' << sup.prob.count << ','
        << sup.prob.total << ',' << to_string(sup_p) << ',' << fixed6(log2_of(sup_p).convert_to<double>()) << ','
        << to_string(erdos_p) << ',';
    if (n <= spec.fixing_cap) {
        out << min_fixing_number(q, spec.fixing_cap).m;
    } else {
        out << "n/a";
    }
    out << ',' << s << ',' << matching << ',';
    // The main bound needs off-diagonal robustness at least 4.
    if (s >= 4) {
        const LogBound mb = main_bound(PosReal::of(s));
        out << fixed6(mb.log2_double()) << ',' << (dominated_by(sup.prob, mb) ? "yes" : "no");
    } else {
        out << "n/a,n/a";
    }
    out << ',' << fixed6(Rational(sup_p / erdos_p).get_d());
    return out.str();
}

}  // namespace

const char* to_string(SweepFamily f) {
    for (const auto& [fam, name] : kFamilies)
        if (fam == f) return name;
    return "?";
}

SweepFamily parse_family(std::string_view name) {
    for (const auto& [fam, n] : kFamilies)
        if (name == n) return fam;
    throw DomainError("unknown sweep family: " + std::string(name));
}

const char* to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::sweep: return "sweep";
        case ExperimentKind::decoupling: return "decoupling";
        case ExperimentKind::edgestats: return "edgestats";
        case ExperimentKind::certify: return "certify";
        case ExperimentKind::split: return "split";
        case ExperimentKind::bound: return "bound";
        case ExperimentKind::prob: return "prob";
    }
    return "?";
}

QuadPoly generate_instance(SweepFamily family, Index n, std::uint64_t seed, std::uint64_t id) {
    CounterStream rng(seed, id);
    std::vector<Monomial> quad;
    RatVector lin(n, 0);
    switch (family) {
        case SweepFamily::squared_sum:
            return QuadPoly::square_of_affine(RatVector(n, 1), 0);
        case SweepFamily::bilinear_split: {
            const Index h = n / 2;
            RatVector u(n, 0);
            RatVector v(n, 0);
            for (Index i = 0; i < n; ++i) (i < h ? u : v)[i] = signed_in(rng, 1, 2);
            return QuadPoly::product_of_affine(u, 0, v, 0);
        }
        case SweepFamily::random_dense:
            for (Index i = 0; i < n; ++i)
                for (Index j = i + 1; j < n; ++j) {
                    Rational c = signed_in(rng, -2, 2);
                    if (sgn(c) != 0) quad.push_back({i, j, c});
                }
            for (Index i = 0; i < n; ++i) lin[i] = signed_in(rng, -2, 2);
            break;
        case SweepFamily::random_matching:
            for (Index i = 0; i + 1 < n; i += 2) {
                Rational c = signed_in(rng, 1, 3);
                if (rng.next() & 1U) c = -c;
                quad.push_back({i, i + 1, c});
            }
            for (Index i = 0; i < n; ++i) lin[i] = signed_in(rng, -1, 1);
            break;
        case SweepFamily::diagonal:
            for (Index i = 0; i < n; ++i) {
                quad.push_back({i, i, signed_in(rng, 1, 3)});
                lin[i] = signed_in(rng, -2, 2);
            }
            break;
    }
    return QuadPoly::from_monomials(n, quad, std::move(lin), 0);
}

std::string run_sweep(const ExperimentSpec& spec) {
    if (spec.kind != ExperimentKind::sweep) throw DomainError("run_sweep needs a sweep spec");
    if (spec.n_min < 1 || spec.n_min > spec.n_max) throw DomainError("need 1 <= n_min <= n_max");
    if (spec.n_max > spec.engine.cap) throw CapExceeded("n_max exceeds the enumeration cap");

    struct Job {
        std::uint64_t id;
        Index n;
    };
    std::vector<Job> jobs;
    const Index per_n = deterministic(spec.family) ? 1 : spec.count;
    for (Index n = spec.n_min; n <= spec.n_max; ++n)
        for (Index c = 0; c < per_n; ++c) jobs.push_back({jobs.size(), n});

    std::vector<Row> rows(jobs.size());
    const unsigned workers = std::max(1U, std::min<unsigned>(spec.engine.workers, static_cast<unsigned>(jobs.size())));
    auto work = [&](unsigned w) {
        for (std::size_t p = w; p < jobs.size(); p += workers) rows[p] = {jobs[p].id, sweep_row(spec, jobs[p].n, jobs[p].id)};
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.id < b.id; });

    std::ostringstream out;
    out << "# qlo-sweep v1 family=" << to_string(spec.family) << " seed=" << spec.seed << '\n';
    out << "id,family,n,sup_z,sup_count,total,sup_prob,log2_sup_prob,erdos_lo,fixing_m,offdiag_s,matching_l,"
           "log2_main_bound,main_bound_holds,sup_over_erdos\n";
    for (const auto& r : rows) out << r.text << '\n';
    return out.str();
}

}  // namespace qlo
