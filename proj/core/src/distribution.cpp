#include "qlo/distribution.hpp"

#include "qlo/error.hpp"

#include <algorithm>

namespace qlo {

DyadicProb::DyadicProb(Integer c, Integer t) : count(std::move(c)), total(std::move(t)) {
    if (total <= 0) throw DomainError("probability total must be positive");
    if (count < 0 || count > total) throw DomainError("probability count must lie in [0, total]");
}

DiscreteDist::DiscreteDist(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw DomainError("distribution needs at least one atom");
    std::sort(atoms_.begin(), atoms_.end(), [](const Atom& a, const Atom& b) { return a.value < b.value; });
    Rational total = 0;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        if (sgn(atoms_[i].prob) <= 0) throw DomainError("atom probabilities must be positive");
        if (i > 0 && atoms_[i].value == atoms_[i - 1].value) throw DomainError("duplicate atom value");
        total += atoms_[i].prob;
    }
    if (total != 1) throw DomainError("atom probabilities must sum to 1, got " + to_string(total));
}

DiscreteDist DiscreteDist::rademacher() { return DiscreteDist({{-1, Rational(1, 2)}, {1, Rational(1, 2)}}); }

DiscreteDist DiscreteDist::uniform(std::vector<Rational> values) {
    std::vector<Atom> atoms;
    const Rational p(1, static_cast<unsigned long>(values.size()));
    for (auto& v : values) atoms.push_back({std::move(v), p});
    return DiscreteDist(std::move(atoms));
}

DiscreteDist DiscreteDist::point(Rational value) { return DiscreteDist({{std::move(value), 1}}); }

Rational DiscreteDist::max_mass() const {
    Rational best = 0;
    for (const auto& a : atoms_) best = std::max(best, a.prob);
    return best;
}

}  // namespace qlo
