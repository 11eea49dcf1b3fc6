#include "qlo/io.hpp"

#include "qlo/error.hpp"

#include <fstream>
#include <sstream>

namespace qlo {

namespace {

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

Index index_from_json(const json& j) {
    if (!j.is_number_integer() || j.get<long long>() < 0) throw ParseError("expected a nonnegative integer index");
    return j.get<Index>();
}

json index_set_json(const IndexSet& s) { return json(s); }

json sets_json(const std::vector<IndexSet>& sets) {
    json out = json::array();
    for (const auto& s : sets) out.push_back(index_set_json(s));
    return out;
}

}  // namespace

Rational rational_from_json(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return parse_rational(j.dump());
    throw ParseError("expected a rational as a string or an integer, got " + j.dump());
}

RatVector vector_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("expected an array of rationals");
    RatVector out;
    for (const auto& e : j) out.push_back(rational_from_json(e));
    return out;
}

IndexSet index_set_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("expected an array of indices");
    IndexSet out;
    for (const auto& e : j) out.push_back(index_from_json(e));
    return out;
}

QuadPoly quad_from_json(const json& j) {
    const Index n = index_from_json(field(j, "n"));
    std::vector<Monomial> quad;
    if (j.contains("quad")) {
        for (const auto& e : j.at("quad")) {
            if (!e.is_array() || e.size() != 3) throw ParseError("quad entries are [i, j, coeff]");
            Index a = index_from_json(e[0]);
            Index b = index_from_json(e[1]);
            if (a >= n || b >= n) throw ParseError("quad index out of range");
            if (a > b) std::swap(a, b);
            quad.push_back({a, b, rational_from_json(e[2])});
        }
    }
    RatVector lin = j.contains("lin") ? vector_from_json(j.at("lin")) : RatVector(n, 0);
    if (lin.size() != n) throw ParseError("\"lin\" must have n entries");
    const Rational c = j.contains("const") ? rational_from_json(j.at("const")) : Rational(0);
    return QuadPoly::from_monomials(n, quad, std::move(lin), c);
}

RatMatrix matrix_from_json(const json& j) {
    const Index rows = index_from_json(field(j, "rows"));
    const Index cols = index_from_json(field(j, "cols"));
    const json& e = field(j, "entries");
    if (!e.is_array() || e.size() != rows) throw ParseError("\"entries\" must have one array per row");
    RatMatrix m(rows, cols);
    for (Index r = 0; r < rows; ++r) {
        const RatVector row = vector_from_json(e[r]);
        if (row.size() != cols) throw ParseError("matrix row has the wrong length");
        for (Index c = 0; c < cols; ++c) m(r, c) = row[c];
    }
    return m;
}

DiscreteDist dist_from_json(const json& j) {
    std::vector<Atom> atoms;
    for (const auto& a : field(j, "atoms")) {
        if (!a.is_array() || a.size() != 2) throw ParseError("atoms are [value, prob]");
        atoms.push_back({rational_from_json(a[0]), rational_from_json(a[1])});
    }
    try {
        return DiscreteDist(std::move(atoms));
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }
}

json to_json(const Rational& v) { return to_string(v); }

json to_json(const RatVector& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(to_string(x));
    return out;
}

json to_json(const QuadPoly& q) {
    json quad = json::array();
    for (const auto& m : q.monomials()) quad.push_back({m.i, m.j, to_string(m.coeff)});
    return {{"n", q.dim()}, {"quad", quad}, {"lin", to_json(q.lin())}, {"const", to_string(q.constant())}};
}

json to_json(const RatMatrix& m) {
    json rows = json::array();
    for (Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (const auto& x : m.row(r)) row.push_back(to_string(x));
        rows.push_back(row);
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

json to_json(const DiscreteDist& d) {
    json atoms = json::array();
    for (const auto& a : d.atoms()) atoms.push_back({to_string(a.value), to_string(a.prob)});
    return {{"atoms", atoms}};
}

json to_json(const DyadicProb& p) {
    return {{"count", to_string(p.count)}, {"total", to_string(p.total)}, {"prob", to_string(p.value())}};
}

json to_json(const AtomHistogram& h) {
    json atoms = json::array();
    for (const auto& [z, c] : h.counts) atoms.push_back({to_string(z), to_string(c)});
    return {{"total", to_string(h.total)}, {"atoms", atoms}};
}

json to_json(const HalaszCert& c) {
    json out = {{"verdict", to_string(c.verdict)}, {"s", c.s}};
    if (c.min_weight) out["min_weight"] = *c.min_weight;
    if (!c.bases.empty()) out["bases"] = sets_json(c.bases);
    if (!c.deletion.empty()) out["deletion"] = index_set_json(c.deletion);
    return out;
}

json to_json(const MCert& c) {
    return {{"found", c.found}, {"k", c.k}, {"r", c.r}, {"i_sets", sets_json(c.i_sets)}, {"j_sets", sets_json(c.j_sets)}};
}

json to_json(const SplitResult& r) {
    return {{"i_part", index_set_json(r.i_part)},
            {"j_part", index_set_json(r.j_part)},
            {"s_prime", r.s_prime},
            {"i_sets", sets_json(r.i_sets)},
            {"j_sets", sets_json(r.j_sets)},
            {"cert", to_json(r.cert)}};
}

json to_json(const FixingResult& r) {
    json out = {{"exact", r.exact}, {"lower_bound", r.lower_bound}};
    if (r.exact) {
        out["m"] = r.m;
        out["witness"] = {{"indices", index_set_json(r.witness.indices)},
                          {"values", r.witness.values},
                          {"pinned_value", to_string(r.witness.pinned_value)}};
    }
    return out;
}

json to_json(const EdgeStats& s) {
    json rows = json::array();
    for (const auto& [l, c] : s.counts) {
        json row = {{"l", l}, {"count", to_string(c)}, {"ratio", to_string(s.ratio(l))}};
        if (auto shape = s.shape(l)) row["shape_unit_constant"] = *shape;
        rows.push_back(row);
    }
    return {{"n", s.n}, {"k", s.k}, {"total", to_string(s.total)}, {"counts", rows}};
}

json to_json(const DecouplingReport& r) {
    json out = {{"exact", r.exact},
                {"prob", to_string(r.prob)},
                {"lhs", to_string(r.lhs)},
                {"rhs", to_string(r.rhs)},
                {"pass", r.pass}};
    if (!r.exact) out["samples"] = r.samples;
    return out;
}

json to_json(const ReprOutput& r) {
    json atoms = json::array();
    for (const auto& a : r.atoms) atoms.push_back({to_string(a.alpha), to_string(a.beta), to_string(a.prob)});
    return {{"atoms", atoms}};
}

json bound_to_json(const std::string& name, const LogBound& b) {
    json out = {{"name", name},
                {"log2", b.is_zero() ? std::string("-inf") : b.log2().str(30)},
                {"log2_raw", b.is_zero() ? std::string("-inf") : b.log2_raw().str(30)},
                {"clamped", b.clamped()}};
    if (b.exact()) out["exact"] = to_string(*b.exact());
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json read_json_file(const std::string& path) {
    try {
        return json::parse(read_text_file(path));
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace qlo
