#pragma once

#include "qlo/engine.hpp"
#include "qlo/quad_poly.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace qlo {

/// Instance families for sweeps:
///   squared_sum      (x_1 + ... + x_n)^2
///   bilinear_split   (sum_{i<h} u_i x_i)(sum_{i>=h} v_i x_i), h = n/2, weights in {1, 2}
///   random_dense     every pair and linear coefficient uniform in {-2, ..., 2}
///   random_matching  pairs (2i, 2i+1) with coefficients in {1, 2, 3}, signed, plus a linear part
///   diagonal         x^T D x + b^T x, no off-diagonal entries
enum class SweepFamily { squared_sum, bilinear_split, random_dense, random_matching, diagonal };

const char* to_string(SweepFamily f);
/// Throws DomainError on an unknown name.
SweepFamily parse_family(std::string_view name);

enum class ExperimentKind { sweep, decoupling, edgestats, certify, split, bound, prob };

const char* to_string(ExperimentKind k);

/// Everything a run depends on. The instance comes either from `input` or from
/// `family` together with `seed`.
struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::sweep;
    std::optional<std::string> input;
    SweepFamily family = SweepFamily::random_dense;
    Index n_min = 2;
    Index n_max = 8;
    /// Instances per dimension (deterministic families produce one).
    Index count = 1;
    std::uint64_t seed = 0;
    std::optional<std::string> output;
    EngineOptions engine;
    /// Largest n for the exact minimum fixing number.
    Index fixing_cap = 14;
};

/// Instance `id` of a family in dimension n; a pure function of its arguments.
QuadPoly generate_instance(SweepFamily family, Index n, std::uint64_t seed, std::uint64_t id);

/// CSV with one row per instance, sorted by instance id; the first line is a
/// "# qlo-sweep v1" comment. Rows are computed on engine.workers threads and
/// the bytes never depend on that number.
std::string run_sweep(const ExperimentSpec& spec);

}  // namespace qlo
