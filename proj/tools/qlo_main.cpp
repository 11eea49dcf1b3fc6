// qlo: command-line front end. Every output is a function of the input files,
// the flags and the seed. Exit codes: 0 ok, 2 inconclusive verdict, 1 error.

#include "qlo/bounds.hpp"
#include "qlo/certificates.hpp"
#include "qlo/engine.hpp"
#include "qlo/error.hpp"
#include "qlo/experiments.hpp"
#include "qlo/io.hpp"
#include "qlo/matrix_split.hpp"
#include "qlo/perturbation.hpp"
#include "qlo/structure.hpp"
#include "qlo/sweep.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <sstream>
#include <string>

using namespace qlo;

namespace {

constexpr int kInconclusive = 2;

struct Common {
    std::string input;
    std::string output;
    std::uint64_t seed = 0;
    unsigned cap = 26;
    unsigned workers = 1;
    std::string format = "json";
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--input", c.input, "Input file");
    app->add_option("--output", c.output, "Output file (default stdout)");
    app->add_option("--seed", c.seed, "Random seed");
    app->add_option("--cap", c.cap, "Largest cube dimension enumerated exactly");
    app->add_option("--workers", c.workers, "Worker threads (never changes the output)");
    app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
}

void emit(const Common& c, const std::string& text) {
    if (c.output.empty()) {
        std::cout << text;
    } else {
        write_text_file(c.output, text);
    }
}

void emit(const Common& c, const json& j) { emit(c, j.dump(2) + "\n"); }

json require_input(const Common& c) {
    if (c.input.empty()) throw ParseError("--input is required");
    return read_json_file(c.input);
}

EngineOptions engine_opts(const Common& c) {
    EngineOptions o;
    o.cap = c.cap;
    o.workers = c.workers;
    return o;
}

std::map<std::string, std::string> parse_params(const std::string& text) {
    std::map<std::string, std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ParseError("parameter \"" + item + "\" is not key=value");
        out[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return out;
}

class Params {
public:
    explicit Params(std::map<std::string, std::string> p) : p_(std::move(p)) {}

    const std::string& raw(const std::string& key) const {
        auto it = p_.find(key);
        if (it == p_.end()) throw ParseError("missing parameter " + key);
        return it->second;
    }
    unsigned u(const std::string& key) const {
        const Rational v = parse_rational(raw(key));
        if (v.get_den() != 1 || sgn(v) < 0 || v > 1'000'000) throw DomainError(key + " must be a small nonnegative integer");
        return static_cast<unsigned>(v.get_num().get_ui());
    }
    Integer integer(const std::string& key) const {
        const Rational v = parse_rational(raw(key));
        if (v.get_den() != 1) throw DomainError(key + " must be an integer");
        return v.get_num();
    }
    /// Positive real; "2^E" gives an exact power of two for any real E.
    PosReal real(const std::string& key) const {
        const std::string& t = raw(key);
        if (t.rfind("2^", 0) == 0) return PosReal::pow2(BigFloat(t.substr(2)));
        return PosReal::of(parse_rational(t));
    }

private:
    std::map<std::string, std::string> p_;
};

LogBound evaluate_bound(const std::string& name, const Params& p) {
    if (name == "erdos_lo") return erdos_lo(p.u("n"));
    if (name == "odlyzko") return odlyzko(p.u("k"));
    if (name == "halasz_fjz") return halasz_fjz(p.u("k"), p.integer("t"));
    if (name == "halasz_affine") return halasz_affine(p.u("k"), p.u("d"), p.integer("t"));
    if (name == "halasz_sub") return halasz_sub(p.u("k"), p.real("s"));
    if (name == "geometric") return geometric(p.u("d"), p.u("r"), p.integer("t"));
    if (name == "low_rank") return low_rank(p.u("k"), p.real("s"), p.u("r"));
    if (name == "key_lemma") return key_lemma(p.u("k"), p.u("r"), p.real("s"));
    if (name == "key_corollary") return key_corollary(p.u("k"), p.real("s"));
    if (name == "hamming") return hamming(p.u("r"), p.integer("t"));
    if (name == "unrolled") return unrolled_bound(p.u("k"), p.u("l"), p.real("s"));
    if (name == "closed_form") return closed_form(p.u("k"), p.u("l"), p.real("s"));
    if (name == "main") return main_bound(p.real("s"));
    throw DomainError("unknown bound " + name);
}

std::string histogram_csv(const AtomHistogram& h) {
    std::ostringstream out;
    out << "value,count,prob\n";
    for (const auto& [z, c] : h.counts) out << to_string(z) << ',' << c << ',' << to_string(ratio(c, h.total)) << '\n';
    return out.str();
}

// prob: input is a QuadPoly, or {"poly", "constraint": {"m", "w"}, "dists", "z"}.
int run_prob(const Common& c, const std::string& z_text, std::uint64_t samples) {
    const json in = require_input(c);
    const bool wrapped = in.contains("poly");
    const QuadPoly q = quad_from_json(wrapped ? in.at("poly") : in);
    const EngineOptions opts = engine_opts(c);
    std::optional<Rational> z;
    if (!z_text.empty()) z = parse_rational(z_text);
    if (wrapped && in.contains("z")) z = rational_from_json(in.at("z"));

    if (wrapped && in.contains("dists")) {
        ProductDist d;
        for (const auto& e : in.at("dists")) d.push_back(dist_from_json(e));
        if (!z) throw ParseError("general distributions need a target z");
        if (samples > 0) {
            const auto mc = monte_carlo(q, d, *z, samples, c.seed, c.workers);
            emit(c, json{{"event", "Q = " + to_string(*z)}, {"hits", mc.hits}, {"samples", mc.samples},
                         {"estimate", to_string(mc.estimate)}, {"halfwidth", to_string(mc.halfwidth)}});
            return 0;
        }
        emit(c, json{{"event", "Q = " + to_string(*z)}, {"prob", to_string(general_point_prob(q, d, *z, opts))}});
        return 0;
    }
    if (samples > 0) {
        const Rational target = z.value_or(Rational(0));
        const auto mc = monte_carlo(q, std::nullopt, target, samples, c.seed, c.workers);
        emit(c, json{{"event", "Q = " + to_string(target)}, {"hits", mc.hits}, {"samples", mc.samples},
                     {"estimate", to_string(mc.estimate)}, {"halfwidth", to_string(mc.halfwidth)}});
        return 0;
    }

    LinearConstraint lc = LinearConstraint::none(q.dim());
    if (wrapped && in.contains("constraint")) {
        lc.m = matrix_from_json(in.at("constraint").at("m"));
        lc.w = vector_from_json(in.at("constraint").at("w"));
    }
    const AtomHistogram h = histogram(q, lc, opts);
    if (c.format == "csv") {
        emit(c, histogram_csv(h));
        return 0;
    }
    json out;
    if (z) {
        out = to_json(h.point_prob(*z));
        out["event"] = "Q = " + to_string(*z);
    } else {
        const PointMass sup = sup_point_prob(h);
        out = to_json(sup.prob);
        out["event"] = "sup_z Q = z";
        out["z"] = to_string(sup.z);
    }
    out["histogram"] = to_json(h);
    emit(c, out);
    return 0;
}

int run_certify(const Common& c, const std::string& what, long s_flag, long r_flag) {
    const json in = require_input(c);
    auto s_of = [&]() -> Index {
        if (s_flag >= 0) return static_cast<Index>(s_flag);
        if (in.contains("s")) return in.at("s").get<Index>();
        throw ParseError("s is required (--s or \"s\" in the input)");
    };
    if (what == "halasz") {
        const RatMatrix m = matrix_from_json(in.contains("matrix") ? in.at("matrix") : in);
        const Index s = s_of();
        const HalaszCert cert = halasz_membership(m, s);
        json out = to_json(cert);
        out["verified"] = cert.verdict == Verdict::inconclusive ? false : verify_halasz(m, s, cert);
        emit(c, out);
        return cert.verdict == Verdict::inconclusive ? kInconclusive : 0;
    }
    if (what == "mclass") {
        const RatMatrix t = matrix_from_json(in.at("t"));
        const RatMatrix u = matrix_from_json(in.at("u"));
        const RatMatrix a = matrix_from_json(in.at("a"));
        const Index r = r_flag >= 0 ? static_cast<Index>(r_flag) : in.at("r").get<Index>();
        const Index s = s_of();
        const MCert cert = m_membership(t, u, a, r, s);
        json out = to_json(cert);
        out["verified"] = cert.found && verify_mcert(t, u, a, r, s, cert);
        emit(c, out);
        return cert.found ? 0 : kInconclusive;
    }
    if (what == "perturbed-rank") {
        const RatMatrix t = matrix_from_json(in.at("t"));
        const RatMatrix u = matrix_from_json(in.at("u"));
        const RatMatrix a = matrix_from_json(in.at("a"));
        emit(c, json{{"min_perturbed_rank", min_perturbed_rank(a, t, u)},
                     {"block_identity_rank", block_identity_rank(a, t, u)}});
        return 0;
    }
    if (what == "fixing") {
        const QuadPoly q = quad_from_json(in.contains("poly") ? in.at("poly") : in);
        const FixingResult f = min_fixing_number(q, c.cap);
        json out = to_json(f);
        out["offdiag_robustness"] = offdiag_robustness(q.quad());
        out["matching_lower_bound"] = matching_lower_bound(q.quad()).size();
        emit(c, out);
        return f.exact ? 0 : kInconclusive;
    }
    if (what == "represent") {
        const ReprOutput r = represent_discrete(dist_from_json(in));
        emit(c, to_json(r));
        return 0;
    }
    throw DomainError("unknown certificate kind " + what);
}

int run_split(const Common& c) {
    const json in = require_input(c);
    const RatMatrix m = matrix_from_json(in.at("m"));
    const RatMatrix a = matrix_from_json(in.at("a"));
    const Rational s = rational_from_json(in.at("s"));
    const SplitResult r = matrix_split(m, a, s);
    json out = to_json(r);
    const RatMatrix t = m.columns(r.i_part);
    const RatMatrix u = m.columns(r.j_part);
    const RatMatrix block = a.submatrix(r.j_part, r.i_part);
    out["verified"] = verify_mcert(t, u, block, 2, r.s_prime, r.cert);
    emit(c, out);
    return 0;
}

IndexSet parse_index_list(const std::string& text) {
    IndexSet out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(static_cast<Index>(std::stoul(item)));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qlo: exact anticoncentration for quadratic polynomials of random signs"};
    app.require_subcommand(1);

    Common common;

    auto* prob = app.add_subcommand("prob", "Exact (or sampled) point probabilities of Q(xi)");
    add_common(prob, common);
    std::string z_text;
    std::uint64_t samples = 0;
    prob->add_option("--z", z_text, "Target value (default: the most likely value)");
    prob->add_option("--samples", samples, "Monte Carlo samples instead of exact enumeration");

    auto* bound = app.add_subcommand("bound", "Evaluate a closed-form bound in log space");
    add_common(bound, common);
    std::string bound_name;
    std::string params;
    bound->add_option("name", bound_name, "erdos_lo, odlyzko, halasz_fjz, halasz_affine, halasz_sub, geometric, "
                                          "low_rank, key_lemma, key_corollary, hamming, unrolled, closed_form, main")
        ->required();
    bound->add_option("--params", params, "k=..,s=..; s may be written 2^E");

    auto* certify = app.add_subcommand("certify", "Rank and structure certificates");
    add_common(certify, common);
    std::string what;
    long s_flag = -1;
    long r_flag = -1;
    certify->add_option("kind", what, "halasz, mclass, perturbed-rank, fixing, represent")->required();
    certify->add_option("--s", s_flag, "Deletion budget s");
    certify->add_option("--r", r_flag, "Rank r for the robust-rank class");

    auto* split = app.add_subcommand("split", "Greedy matrix splitting");
    add_common(split, common);

    auto* experiment = app.add_subcommand("experiment", "Sweeps and the decoupling check");
    add_common(experiment, common);
    std::string exp_kind;
    std::string family = "random_dense";
    Index n_min = 2;
    Index n_max = 8;
    Index count = 1;
    std::string i_list;
    std::uint64_t trials = 0;
    experiment->add_option("kind", exp_kind, "sweep or decoupling")->required()->check(CLI::IsMember({"sweep", "decoupling"}));
    experiment->add_option("--family", family, "squared_sum, bilinear_split, random_dense, random_matching, diagonal");
    experiment->add_option("--n-min", n_min);
    experiment->add_option("--n-max", n_max);
    experiment->add_option("--count", count, "Instances per dimension");
    experiment->add_option("--I", i_list, "Comma-separated indices of the decoupled block");
    experiment->add_option("--trials", trials, "Sample instead of exact enumeration");

    auto* edges = app.add_subcommand("edgestats", "Count k-subsets by induced edges");
    add_common(edges, common);
    Index k = 0;
    std::optional<Index> n_vertices;
    edges->add_option("--k", k)->required();
    edges->add_option("--n", n_vertices, "Vertex count (default: largest endpoint + 1)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*prob) return run_prob(common, z_text, samples);
        if (*bound) {
            const LogBound b = evaluate_bound(bound_name, Params(parse_params(params)));
            emit(common, bound_to_json(bound_name, b));
            return 0;
        }
        if (*certify) return run_certify(common, what, s_flag, r_flag);
        if (*split) return run_split(common);
        if (*experiment) {
            if (exp_kind == "sweep") {
                ExperimentSpec spec;
                spec.family = parse_family(family);
                spec.n_min = n_min;
                spec.n_max = n_max;
                spec.count = count;
                spec.seed = common.seed;
                spec.engine = engine_opts(common);
                emit(common, run_sweep(spec));
                return 0;
            }
            const json in = require_input(common);
            const QuadPoly q = quad_from_json(in.contains("poly") ? in.at("poly") : in);
            const IndexSet i_set = parse_index_list(i_list);
            const DecouplingReport r =
                trials > 0 ? verify_decoupling_sampled(q, i_set, trials, common.seed) : verify_decoupling(q, i_set, common.cap);
            emit(common, to_json(r));
            return 0;
        }
        if (*edges) {
            if (common.input.empty()) throw ParseError("--input is required");
            std::istringstream text(read_text_file(common.input));
            const EdgeStats st = edge_stats(Graph::parse_edge_list(text, n_vertices), k);
            if (common.format == "csv") {
                std::ostringstream out;
                out << "l,count,ratio,shape_unit_constant\n";
                for (const auto& [l, c] : st.counts) {
                    out << l << ',' << c << ',' << to_string(st.ratio(l)) << ',';
                    if (auto sh = st.shape(l)) out << *sh;
                    out << '\n';
                }
                emit(common, out.str());
            } else {
                emit(common, to_json(st));
            }
            return 0;
        }
    } catch (const json::exception& e) {
        std::cerr << "qlo: malformed input: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "qlo: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
