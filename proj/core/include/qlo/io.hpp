#pragma once

// JSON formats used by the command-line tool. Rationals are written as
// strings ("p/q" or "p"); on input integers are accepted as JSON numbers too.
//
//   QuadPoly     {"n": 3, "quad": [[i, j, "c"], ...], "lin": ["b0", ...], "const": "c"}
//                quad entries are monomial coefficients of x_i x_j (i <= j);
//                "lin" and "const" may be omitted.
//   RatMatrix    {"rows": k, "cols": n, "entries": [["a00", ...], ...]}
//   DiscreteDist {"atoms": [["value", "prob"], ...]}

#include "qlo/bounds.hpp"
#include "qlo/certificates.hpp"
#include "qlo/distribution.hpp"
#include "qlo/engine.hpp"
#include "qlo/experiments.hpp"
#include "qlo/matrix_split.hpp"
#include "qlo/perturbation.hpp"
#include "qlo/quad_poly.hpp"
#include "qlo/structure.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace qlo {

using json = nlohmann::json;

/// All readers throw ParseError on malformed input.
Rational rational_from_json(const json& j);
RatVector vector_from_json(const json& j);
QuadPoly quad_from_json(const json& j);
RatMatrix matrix_from_json(const json& j);
DiscreteDist dist_from_json(const json& j);
IndexSet index_set_from_json(const json& j);

json to_json(const Rational& v);
json to_json(const RatVector& v);
json to_json(const QuadPoly& q);
json to_json(const RatMatrix& m);
json to_json(const DiscreteDist& d);
json to_json(const DyadicProb& p);
/// [["value", "count"], ...] in increasing value order, plus the total.
json to_json(const AtomHistogram& h);
json to_json(const HalaszCert& c);
json to_json(const MCert& c);
json to_json(const SplitResult& r);
json to_json(const FixingResult& r);
json to_json(const EdgeStats& s);
json to_json(const DecouplingReport& r);
json to_json(const ReprOutput& r);
/// {"name", "log2", "clamped", "exact"?}; log2 is a decimal string of the clamped value.
json bound_to_json(const std::string& name, const LogBound& b);

/// Whole file parsed as JSON; ParseError names the path on failure.
json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace qlo
