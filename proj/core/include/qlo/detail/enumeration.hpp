#pragma once

// Gray-code machinery shared by the exhaustive engines. Everything here works
// on integerized coefficients: each polynomial or row of a linear system is
// multiplied by the lcm of its denominators so a walk step is a handful of
// integer additions. Int is std::int64_t when a magnitude bound proves the
// walk cannot overflow, mpz_class otherwise.

#include "qlo/matrix.hpp"
#include "qlo/quad_poly.hpp"
#include "qlo/rational.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <thread>
#include <type_traits>
#include <vector>

namespace qlo::detail {

inline constexpr unsigned kMaxWalkDim = 62;

/// Magnitude below which int64 arithmetic in a walk is safe (headroom for one
/// doubling and one addition).
inline const Integer& int64_safe_limit() {
    static const Integer limit = Integer(1) << 60;
    return limit;
}

template <class Int>
Int to_int(const Integer& v) {
    if constexpr (std::is_same_v<Int, std::int64_t>) {
        return static_cast<std::int64_t>(v.get_si());
    } else {
        return v;
    }
}

template <class Int>
Integer to_integer(const Int& v) {
    if constexpr (std::is_same_v<Int, std::int64_t>) {
        return Integer(static_cast<long>(v));
    } else {
        return v;
    }
}

/// Q scaled to integer coefficients:
///   scale * Q(x) = sum_{i<j} pair[i][j] x_i x_j + sum_i lin[i] x_i + constant
/// on the hypercube (x_i^2 = 1 folds the diagonal into the constant).
struct IntegerQuad {
    Index n = 0;
    Integer scale = 1;
    std::vector<Integer> pair;  // n*n, symmetric, zero diagonal
    std::vector<Integer> lin;
    Integer constant = 0;
    Integer magnitude = 0;  // sum of absolute coefficients

    static IntegerQuad from(const QuadPoly& q);
    Rational unscale(const Integer& v) const { return ratio(v, scale); }
};

/// Rows of M x = w, each scaled by its own denominator lcm.
struct IntegerSystem {
    Index rows = 0;
    Index n = 0;
    std::vector<Integer> coeff;  // rows*n
    std::vector<Integer> target;
    Integer magnitude = 0;  // max over rows of (sum |coeff| + |target|)

    static IntegerSystem from(const RatMatrix& m, const RatVector& w);
};

/// Incremental value of an IntegerQuad along a walk.
template <class Int>
class QuadState {
public:
    explicit QuadState(const IntegerQuad& q) : n_(q.n), pair_(q.n * q.n), lin_(q.n), field_(q.n) {
        for (Index i = 0; i < pair_.size(); ++i) pair_[i] = to_int<Int>(q.pair[i]);
        for (Index i = 0; i < n_; ++i) lin_[i] = to_int<Int>(q.lin[i]);
        constant_ = to_int<Int>(q.constant);
    }

    void reset(std::uint64_t bits) {
        bits_ = bits;
        value_ = constant_;
        for (Index j = 0; j < n_; ++j) {
            Int h = lin_[j];
            for (Index i = 0; i < n_; ++i) {
                if (i == j) continue;
                if (plus(i)) {
                    h += pair_[j * n_ + i];
                } else {
                    h -= pair_[j * n_ + i];
                }
            }
            field_[j] = h;
        }
        // value = const + sum_j x_j (lin_j + field_j) / 2, written without division.
        for (Index j = 0; j < n_; ++j) {
            if (plus(j)) {
                value_ += lin_[j];
            } else {
                value_ -= lin_[j];
            }
            for (Index i = j + 1; i < n_; ++i) {
                if (plus(i) == plus(j)) {
                    value_ += pair_[j * n_ + i];
                } else {
                    value_ -= pair_[j * n_ + i];
                }
            }
        }
    }

    void flip(Index j) {
        // delta = -2 x_j field_j; then every other field sees x_j change sign.
        const bool was_plus = plus(j);
        if (was_plus) {
            value_ -= field_[j];
            value_ -= field_[j];
        } else {
            value_ += field_[j];
            value_ += field_[j];
        }
        const Int* row = pair_.data() + j * n_;
        for (Index i = 0; i < n_; ++i) {
            if (i == j) continue;
            if (was_plus) {
                field_[i] -= row[i];
                field_[i] -= row[i];
            } else {
                field_[i] += row[i];
                field_[i] += row[i];
            }
        }
        bits_ ^= std::uint64_t{1} << j;
    }

    const Int& value() const { return value_; }
    bool plus(Index j) const { return (bits_ >> j) & 1U; }

private:
    Index n_;
    std::vector<Int> pair_;
    std::vector<Int> lin_;
    Int constant_{};
    std::vector<Int> field_;
    Int value_{};
    std::uint64_t bits_ = 0;
};

/// Incremental M x for an IntegerSystem.
template <class Int>
class SystemState {
public:
    explicit SystemState(const IntegerSystem& s)
        : rows_(s.rows), n_(s.n), coeff_(s.coeff.size()), target_(s.rows), value_(s.rows) {
        for (Index i = 0; i < coeff_.size(); ++i) coeff_[i] = to_int<Int>(s.coeff[i]);
        for (Index r = 0; r < rows_; ++r) target_[r] = to_int<Int>(s.target[r]);
    }

    void reset(std::uint64_t bits) {
        for (Index r = 0; r < rows_; ++r) {
            Int acc{};
            for (Index j = 0; j < n_; ++j) {
                if ((bits >> j) & 1U) {
                    acc += coeff_[r * n_ + j];
                } else {
                    acc -= coeff_[r * n_ + j];
                }
            }
            value_[r] = acc;
        }
    }

    void flip(Index j, bool was_plus) {
        for (Index r = 0; r < rows_; ++r) {
            const Int& c = coeff_[r * n_ + j];
            if (was_plus) {
                value_[r] -= c;
                value_[r] -= c;
            } else {
                value_[r] += c;
                value_[r] += c;
            }
        }
    }

    bool satisfied() const {
        for (Index r = 0; r < rows_; ++r)
            if (value_[r] != target_[r]) return false;
        return true;
    }

    Index mismatches() const {
        Index miss = 0;
        for (Index r = 0; r < rows_; ++r)
            if (value_[r] != target_[r]) ++miss;
        return miss;
    }

    const std::vector<Int>& values() const { return value_; }

private:
    Index rows_;
    Index n_;
    std::vector<Int> coeff_;
    std::vector<Int> target_;
    std::vector<Int> value_;
};

/// Number of high-order bits fixed per work item when `workers` threads walk
/// an n-dimensional cube.
inline unsigned prefix_bits(unsigned n, unsigned workers) {
    if (workers <= 1) return 0;
    unsigned b = 0;
    while ((1U << b) < 4 * workers && b < n && b < 16) ++b;
    return b;
}

/// Walks {-1,1}^n in reflected Gray-code order. The top `prefix_bits` bits are
/// fixed per work item and items are split into contiguous blocks, one per
/// worker. Visitor must provide reset(bits), flip(j), visit() and
/// merge(Visitor&&); merging happens in worker order, so any reduction that is
/// associative and commutative gives results independent of `workers`.
template <class Visitor>
Visitor walk_hypercube(unsigned n, unsigned workers, const Visitor& prototype) {
    const unsigned pb = prefix_bits(n, workers);
    const unsigned low = n - pb;
    const std::uint64_t items = std::uint64_t{1} << pb;
    const std::uint64_t steps = std::uint64_t{1} << low;
    const unsigned threads = workers <= 1 ? 1U : static_cast<unsigned>(std::min<std::uint64_t>(workers, items));

    auto run = [&](Visitor& v, std::uint64_t first, std::uint64_t last) {
        for (std::uint64_t item = first; item < last; ++item) {
            v.reset(item << low);
            v.visit();
            for (std::uint64_t t = 1; t < steps; ++t) {
                v.flip(static_cast<Index>(std::countr_zero(t)));
                v.visit();
            }
        }
    };

    std::vector<Visitor> parts(threads, prototype);
    if (threads == 1) {
        run(parts[0], 0, items);
        return std::move(parts[0]);
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
        const std::uint64_t first = items * w / threads;
        const std::uint64_t last = items * (w + 1) / threads;
        pool.emplace_back([&, w, first, last] { run(parts[w], first, last); });
    }
    for (auto& t : pool) t.join();
    Visitor out = std::move(parts[0]);
    for (unsigned w = 1; w < threads; ++w) out.merge(std::move(parts[w]));
    return out;
}

/// Chooses int64 when every bound is below the safe limit.
template <class F>
auto dispatch_int(std::initializer_list<const Integer*> bounds, F&& body) {
    for (const Integer* b : bounds) {
        if (abs(*b) >= int64_safe_limit()) return body(mpz_class{});
    }
    return body(std::int64_t{});
}

}  // namespace qlo::detail
