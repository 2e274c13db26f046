#include "loco/monomial_ideal.hpp"

#include <algorithm>
#include <stdexcept>

#include "loco/errors.hpp"

namespace loco {

MonomialIdeal::MonomialIdeal(std::size_t n, const std::vector<Monomial>& gens) : n_(n) {
    for (const auto& g : gens) {
        if (g.size() != n)
            throw std::invalid_argument("generator " + g.to_string() + " has " + std::to_string(g.size()) +
                                        " exponents, ring has " + std::to_string(n) + " variables");
        if (!g.is_nonnegative()) throw NegativeExponent("generator " + g.to_string());
    }
    std::vector<Monomial> sorted(gens);
    // Sorting by total degree first means a divisor always precedes its
    // multiples, so one forward pass suffices.
    std::sort(sorted.begin(), sorted.end(), [](const Monomial& a, const Monomial& b) {
        int da = a.total_degree(), db = b.total_degree();
        return da != db ? da < db : a < b;
    });
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (const auto& g : sorted) {
        bool redundant = std::any_of(gens_.begin(), gens_.end(), [&](const Monomial& h) { return h.divides(g); });
        if (!redundant) gens_.push_back(g);
    }
    std::sort(gens_.begin(), gens_.end());
}

bool MonomialIdeal::is_unit() const {
    return gens_.size() == 1 && gens_.front().is_one();
}

bool MonomialIdeal::contains(const Monomial& m) const {
    if (m.size() != n_) throw std::invalid_argument("membership test with wrong variable count");
    for (const auto& g : gens_)
        if (g.divides(m)) return true;
    return false;
}

bool MonomialIdeal::contains(const MonomialIdeal& other) const {
    for (const auto& g : other.gens_)
        if (!contains(g)) return false;
    return true;
}

int MonomialIdeal::max_exponent() const {
    int m = 0;
    for (const auto& g : gens_) m = std::max(m, g.max_exponent());
    return m;
}

std::string MonomialIdeal::to_string() const {
    if (gens_.empty()) return "(0)";
    std::string out = "(";
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        if (i) out += ", ";
        out += gens_[i].to_string();
    }
    return out + ")";
}

MonomialIdeal minimal_generators(std::size_t n, const std::vector<Monomial>& gens) {
    return MonomialIdeal(n, gens);
}

bool membership(const Monomial& m, const MonomialIdeal& ideal) {
    return ideal.contains(m);
}

MonomialIdeal ideal_product(const MonomialIdeal& a, const MonomialIdeal& b) {
    std::vector<Monomial> prods;
    for (const auto& g : a.generators())
        for (const auto& h : b.generators()) prods.push_back(g * h);
    return MonomialIdeal(a.variable_count(), prods);
}

MonomialIdeal ideal_power(const MonomialIdeal& ideal, int k) {
    if (k < 1) throw std::invalid_argument("ideal_power needs k >= 1");
    MonomialIdeal result = ideal;
    for (int i = 1; i < k; ++i) result = ideal_product(result, ideal);
    return result;
}

MonomialIdeal generator_power(const MonomialIdeal& ideal, int r) {
    if (r < 1) throw std::invalid_argument("generator_power needs r >= 1");
    std::vector<Monomial> gens;
    for (const auto& g : ideal.generators()) gens.push_back(g.pow(r));
    return MonomialIdeal(ideal.variable_count(), gens);
}

MonomialIdeal radical(const MonomialIdeal& ideal) {
    std::vector<Monomial> gens;
    for (const auto& g : ideal.generators()) gens.push_back(g.support_monomial());
    return MonomialIdeal(ideal.variable_count(), gens);
}

MonomialIdeal ideal_sum(const MonomialIdeal& a, const MonomialIdeal& b) {
    std::vector<Monomial> gens = a.generators();
    gens.insert(gens.end(), b.generators().begin(), b.generators().end());
    return MonomialIdeal(a.variable_count(), gens);
}

RingSpec::RingSpec(FieldSpec f, std::size_t n) : RingSpec(f, n, MonomialIdeal(n)) {}

RingSpec::RingSpec(FieldSpec f, std::size_t n, MonomialIdeal quotient)
    : field(f), variable_count(n), relations(std::move(quotient)) {
    if (n < 1) throw std::invalid_argument("a ring needs at least one variable");
    if (relations.variable_count() != n)
        throw std::invalid_argument("quotient relations live in a different variable count");
    for (std::size_t i = 0; i < n; ++i) {
        Multidegree d(n, 0);
        d[i] = 1;
        variable_degrees.push_back(std::move(d));
    }
}

std::string RingSpec::to_string() const {
    std::string out = field.name() + "[";
    for (std::size_t i = 0; i < variable_count; ++i) {
        if (i) out += ',';
        out += variable_name(variable_count, i);
    }
    out += "]";
    if (!relations.is_zero()) out += "/" + relations.to_string();
    return out;
}

int krull_dim(const RingSpec& ring) {
    const std::size_t n = ring.variable_count;
    if (n > 20) throw std::invalid_argument("krull_dim enumerates variable subsets; n <= 20");
    const auto& gens = ring.relations.generators();
    std::vector<unsigned> supports;
    for (const auto& g : gens) {
        unsigned mask = 0;
        for (auto i : g.support()) mask |= 1u << i;
        supports.push_back(mask);
    }
    int best = -1;
    for (unsigned s = 0; s < (1u << n); ++s) {
        bool independent = std::none_of(supports.begin(), supports.end(),
                                         [s](unsigned g) { return (g & ~s) == 0; });
        if (independent) best = std::max(best, __builtin_popcount(s));
    }
    return best;
}

}  // namespace loco
