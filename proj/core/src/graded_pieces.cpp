#include "loco/graded_pieces.hpp"

#include <algorithm>
#include <stdexcept>

#include "loco/errors.hpp"

namespace loco {

ModuleDescriptor::ModuleDescriptor(RingSpec ring, std::vector<Summand> summands)
    : ring_(std::move(ring)), summands_(std::move(summands)) {
    const std::size_t n = ring_.variable_count;
    for (const auto& s : summands_) {
        if (s.inverted.size() != n || s.shift.size() != n)
            throw std::invalid_argument("summand does not match the ring's variable count");
        if (!s.inverted.is_nonnegative()) throw NegativeExponent("inverted monomial " + s.inverted.to_string());
    }
}

ModuleDescriptor ModuleDescriptor::free(const RingSpec& ring, const std::vector<Multidegree>& shifts) {
    std::vector<Summand> s;
    for (const auto& sh : shifts) s.push_back({Monomial::one(ring.variable_count), sh});
    return ModuleDescriptor(ring, std::move(s));
}

ModuleDescriptor ModuleDescriptor::localized(const RingSpec& ring, const Monomial& inverted) {
    return ModuleDescriptor(ring, {{inverted, Multidegree(ring.variable_count, 0)}});
}

DegreeBox::DegreeBox(Multidegree lo, Multidegree hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_.size() != hi_.size()) throw std::invalid_argument("box corners differ in length");
    for (std::size_t i = 0; i < lo_.size(); ++i)
        if (lo_[i] > hi_[i]) throw std::invalid_argument("box has lo > hi in coordinate " + std::to_string(i));
}

DegreeBox DegreeBox::cube(std::size_t n, int lo, int hi) {
    return DegreeBox(Multidegree(n, lo), Multidegree(n, hi));
}

bool DegreeBox::contains(const Multidegree& a) const {
    if (a.size() != lo_.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] < lo_[i] || a[i] > hi_[i]) return false;
    return true;
}

std::size_t DegreeBox::size() const {
    std::size_t s = 1;
    for (std::size_t i = 0; i < lo_.size(); ++i) s *= static_cast<std::size_t>(hi_[i] - lo_[i] + 1);
    return s;
}

std::vector<Multidegree> DegreeBox::points() const {
    std::vector<Multidegree> out;
    out.reserve(size());
    Multidegree a = lo_;
    while (true) {
        out.push_back(a);
        std::size_t i = a.size();
        while (i > 0) {
            --i;
            if (a[i] < hi_[i]) {
                ++a[i];
                break;
            }
            a[i] = lo_[i];
            if (i == 0) return out;
        }
        if (a.empty()) return out;
    }
}

bool localized_class_survives(const MonomialIdeal& relations, const Monomial& inverted, const Monomial& b,
                              int extra_steps) {
    const std::size_t n = b.size();
    for (std::size_t i = 0; i < n; ++i)
        if (inverted[i] == 0 && b[i] < 0) return false;
    if (relations.is_zero()) return true;
    // First t at which every coordinate in supp(u) exceeds every exponent of J.
    const int ceiling = relations.max_exponent() + 1;
    int t0 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (inverted[i] == 0) continue;
        int need = ceiling - b[i];
        if (need > 0) t0 = std::max(t0, (need + inverted[i] - 1) / inverted[i]);
    }
    int t = t0 + extra_steps;
    std::vector<int> e(n);
    for (std::size_t i = 0; i < n; ++i) e[i] = b[i] + t * inverted[i];
    return !relations.contains(Monomial(std::move(e)));
}

std::vector<BasisLabel> basis_of_degree(const ModuleDescriptor& m, const Multidegree& a) {
    const auto& relations = m.ring().relations;
    if (a.size() != m.ring().variable_count) throw std::invalid_argument("degree has wrong length");
    std::vector<BasisLabel> out;
    for (std::size_t j = 0; j < m.summands().size(); ++j) {
        const auto& s = m.summands()[j];
        std::vector<int> e(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) e[i] = a[i] - s.shift[i];
        Monomial b(std::move(e));
        if (localized_class_survives(relations, s.inverted, b)) out.push_back({j, std::move(b)});
    }
    return out;
}

std::size_t piece_dimension(const ModuleDescriptor& m, const Multidegree& a) {
    return basis_of_degree(m, a).size();
}

namespace {

// Number of exponent vectors b >= 0 supported on `vars` whose class avoids J
// once the other coordinates are sent to infinity (so every generator is
// projected onto `vars`). With total >= 0 only sum(b) == total is counted;
// with total < 0 all degrees are, and InfinitePiece is raised if unbounded.
std::size_t count_standard(const MonomialIdeal& relations, const std::vector<std::size_t>& vars, int total) {
    const std::size_t n = relations.variable_count();
    std::vector<Monomial> restricted;
    for (const auto& g : relations.generators()) {
        std::vector<int> e(n, 0);
        for (auto v : vars) e[v] = g[v];
        restricted.emplace_back(std::move(e));
    }
    if (vars.empty()) {
        bool killed = std::any_of(restricted.begin(), restricted.end(), [](const Monomial& g) { return g.is_one(); });
        return (total <= 0 && !killed) ? 1 : 0;
    }
    int bound = total;
    if (total < 0) {
        // Any degree: finite only if every variable has a pure power in J.
        int cap = 0;
        for (auto v : vars) {
            int pure = -1;
            for (const auto& g : restricted) {
                auto sup = g.support();
                if (sup.size() == 1 && sup[0] == v) pure = pure < 0 ? g[v] : std::min(pure, g[v]);
            }
            if (pure < 0) throw InfinitePiece("quotient is not Artinian in the localized fiber");
            cap += pure;
        }
        bound = cap;
    }
    std::size_t count = 0;
    std::vector<int> b(n, 0);
    // Enumerate compositions of every size up to `bound` over vars.
    auto rec = [&](auto&& self, std::size_t k, int remaining) -> void {
        if (k + 1 == vars.size()) {
            for (int last = (total >= 0 ? remaining : 0); last <= remaining; ++last) {
                b[vars[k]] = last;
                Monomial mono(b);
                bool dead = std::any_of(restricted.begin(), restricted.end(),
                                        [&](const Monomial& g) { return g.divides(mono); });
                if (!dead) ++count;
                if (total >= 0) break;
            }
            b[vars[k]] = 0;
            return;
        }
        for (int e = 0; e <= remaining; ++e) {
            b[vars[k]] = e;
            self(self, k + 1, remaining - e);
        }
        b[vars[k]] = 0;
    };
    rec(rec, 0, bound);
    return count;
}

}  // namespace

std::size_t coarse_piece_dimension(const ModuleDescriptor& m, int total_degree) {
    const auto& relations = m.ring().relations;
    const std::size_t n = m.ring().variable_count;
    std::size_t total = 0;
    for (const auto& s : m.summands()) {
        int shift = 0;
        for (int x : s.shift) shift += x;
        std::vector<std::size_t> free_vars, fixed_vars;
        for (std::size_t i = 0; i < n; ++i) (s.inverted[i] ? free_vars : fixed_vars).push_back(i);
        int d = total_degree - shift;
        if (free_vars.empty()) {
            if (d >= 0) total += count_standard(relations, fixed_vars, d);
            continue;
        }
        // Classes are determined by the coordinates outside supp(u); the
        // supp(u) coordinates are unconstrained integers.
        if (free_vars.size() >= 2) {
            std::size_t any = count_standard(relations, fixed_vars, fixed_vars.empty() ? 0 : -1);
            if (any > 0) throw InfinitePiece("localized summand has an infinite total-degree fiber");
            continue;
        }
        total += count_standard(relations, fixed_vars, fixed_vars.empty() ? 0 : -1);
    }
    return total;
}

ExactMatrix map_matrix(const ModuleDescriptor& source, const ModuleDescriptor& target, const PolyMatrix& map,
                       const Multidegree& a) {
    if (map.cols != source.summand_count() || map.rows != target.summand_count())
        throw DimensionMismatch("polynomial matrix shape does not match the modules");
    const auto src = basis_of_degree(source, a);
    const auto tgt = basis_of_degree(target, a);
    std::vector<long> src_pos(source.summand_count(), -1), tgt_pos(target.summand_count(), -1);
    for (std::size_t k = 0; k < src.size(); ++k) src_pos[src[k].summand] = static_cast<long>(k);
    for (std::size_t k = 0; k < tgt.size(); ++k) tgt_pos[tgt[k].summand] = static_cast<long>(k);

    std::vector<Triplet> entries;
    for (const auto& e : map.entries) {
        const auto& ss = source.summands()[e.col].shift;
        const auto& ts = target.summands()[e.row].shift;
        for (std::size_t i = 0; i < ss.size(); ++i)
            if (e.multiplier[i] != ss[i] - ts[i])
                throw InhomogeneousEntry("entry (" + std::to_string(e.row) + "," + std::to_string(e.col) +
                                         ") multiplier " + e.multiplier.to_string() + " does not match shifts " +
                                         degree_string(ss) + " -> " + degree_string(ts));
        if (src_pos[e.col] < 0 || tgt_pos[e.row] < 0) continue;
        entries.push_back({static_cast<std::size_t>(tgt_pos[e.row]), static_cast<std::size_t>(src_pos[e.col]),
                           e.coefficient});
    }
    return ExactMatrix(source.ring().field, tgt.size(), src.size(), std::move(entries));
}

long euler_characteristic(const std::vector<std::optional<std::size_t>>& dims, int lowest_index) {
    long chi = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (!dims[k]) throw InfinitePiece("summand at index " + std::to_string(lowest_index + static_cast<int>(k)));
        int index = lowest_index + static_cast<int>(k);
        long d = static_cast<long>(*dims[k]);
        chi += (index % 2 == 0) ? d : -d;
    }
    return chi;
}

}  // namespace loco
