#pragma once

#include "qlo/rational.hpp"

#include <utility>
#include <vector>

namespace qlo {

/// Exact probability count / total. For Rademacher inputs total is 2^n; for
/// product distributions it is the product of the per-variable denominators.
struct DyadicProb {
    Integer count = 0;
    Integer total = 1;

    DyadicProb() = default;
    DyadicProb(Integer c, Integer t);

    Rational value() const { return ratio(count, total); }
    double to_double() const { return value().get_d(); }

    friend bool operator==(const DyadicProb& a, const DyadicProb& b) {
        return a.count == b.count && a.total == b.total;
    }
};

struct Atom {
    Rational value;
    Rational prob;
};

/// Finite-support distribution with exact atom probabilities. Atoms are kept
/// sorted by value; construction rejects duplicates, nonpositive masses and
/// masses that do not sum to 1.
class DiscreteDist {
public:
    DiscreteDist() = default;
    explicit DiscreteDist(std::vector<Atom> atoms);

    static DiscreteDist rademacher();
    static DiscreteDist uniform(std::vector<Rational> values);
    static DiscreteDist point(Rational value);

    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t support_size() const { return atoms_.size(); }
    /// Largest atom mass.
    Rational max_mass() const;

private:
    std::vector<Atom> atoms_;
};

/// Independent coordinates zeta_1, ..., zeta_n.
using ProductDist = std::vector<DiscreteDist>;

}  // namespace qlo
