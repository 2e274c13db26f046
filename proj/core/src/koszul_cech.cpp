#include "loco/koszul_cech.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

#include "loco/errors.hpp"

namespace loco {

namespace {

using Mask = unsigned;

constexpr std::size_t kMaxGenerators = 16;

void require_generators(const RingSpec& ring, const std::vector<Monomial>& gens) {
    if (gens.size() > kMaxGenerators)
        throw TooManyGenerators(std::to_string(gens.size()) + " generators; subset complexes allow at most " +
                                std::to_string(kMaxGenerators));
    for (const auto& g : gens) {
        if (g.size() != ring.variable_count) throw std::invalid_argument("generator has the wrong variable count");
        if (!g.is_nonnegative()) throw NegativeExponent("ideal generator " + g.to_string());
    }
}

// Subsets of {0..m-1} grouped by size, each group in increasing mask order.
std::vector<std::vector<Mask>> subsets_by_size(std::size_t m) {
    std::vector<std::vector<Mask>> out(m + 1);
    for (Mask s = 0; s < (Mask{1} << m); ++s) out[static_cast<std::size_t>(std::popcount(s))].push_back(s);
    return out;
}

Monomial product_over(const std::vector<Monomial>& gens, Mask s, std::size_t n, int power = 1) {
    Monomial p = Monomial::one(n);
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (s & (Mask{1} << i)) p = p * gens[i].pow(power);
    return p;
}

int koszul_sign(Mask s, std::size_t j) {
    int below = std::popcount(s & ((Mask{1} << j) - 1));
    return below % 2 == 0 ? 1 : -1;
}

Multidegree negate(const Monomial& m) {
    Multidegree d(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) d[i] = -m[i];
    return d;
}

// Subset complex: groups[k] lists the masks of the module at position k, and
// adding generator j to a mask is the only kind of differential component.
// `summand_of` makes the summand, `multiplier_of(s, j)` the entry monomial.
template <class SummandOf, class MultiplierOf>
GradedComplex subset_complex(const RingSpec& coefficients, int lowest_index,
                             const std::vector<std::vector<Mask>>& groups, std::size_t m, SummandOf summand_of,
                             MultiplierOf multiplier_of) {
    std::vector<ModuleDescriptor> modules;
    std::vector<std::map<Mask, std::size_t>> position(groups.size());
    for (std::size_t k = 0; k < groups.size(); ++k) {
        std::vector<Summand> summands;
        for (std::size_t p = 0; p < groups[k].size(); ++p) {
            summands.push_back(summand_of(groups[k][p]));
            position[k][groups[k][p]] = p;
        }
        modules.emplace_back(coefficients, std::move(summands));
    }
    std::vector<PolyMatrix> diffs;
    for (std::size_t k = 0; k + 1 < groups.size(); ++k) {
        PolyMatrix d{groups[k + 1].size(), groups[k].size(), {}};
        for (std::size_t c = 0; c < groups[k].size(); ++c) {
            Mask s = groups[k][c];
            for (std::size_t j = 0; j < m; ++j) {
                if (s & (Mask{1} << j)) continue;
                Mask t = s | (Mask{1} << j);
                auto it = position[k + 1].find(t);
                if (it == position[k + 1].end()) continue;
                d.entries.push_back({it->second, c, mpq_class(koszul_sign(s, j)), multiplier_of(s, j)});
            }
        }
        diffs.push_back(std::move(d));
    }
    return GradedComplex(lowest_index, std::move(modules), std::move(diffs));
}

DegreeTable fill_table(const GradedComplex& complex, const DegreeBox& box, unsigned threads) {
    DegreeTable table(box, complex.lowest_index(), complex.highest_index());
    auto points = box.points();
    std::vector<std::vector<std::size_t>> results(points.size());
    parallel_for(points.size(), threads, [&](std::size_t k) { results[k] = complex.cohomology_dimensions(points[k]); });
    for (std::size_t k = 0; k < points.size(); ++k)
        for (std::size_t i = 0; i < results[k].size(); ++i)
            table.set(complex.lowest_index() + static_cast<int>(i), points[k], results[k][i]);
    return table;
}

}  // namespace

RingSpec coefficient_ring(const RingSpec& ring, const MonomialIdeal& module_relations) {
    if (module_relations.variable_count() != ring.variable_count)
        throw std::invalid_argument("module relations live in a different variable count");
    return RingSpec(ring.field, ring.variable_count, ideal_sum(ring.relations, module_relations));
}

GradedComplex build_unstable_koszul(const RingSpec& coefficients, const std::vector<Monomial>& gens, int s) {
    require_generators(coefficients, gens);
    if (gens.empty()) throw EmptyIdeal("Koszul complex on no generators");
    if (s < 1) throw std::invalid_argument("Koszul exponent s must be >= 1");
    const std::size_t n = coefficients.variable_count, m = gens.size();
    return subset_complex(
        coefficients, 0, subsets_by_size(m), m,
        [&](Mask S) { return Summand{Monomial::one(n), negate(product_over(gens, S, n, s))}; },
        [&](Mask, std::size_t j) { return gens[j].pow(s); });
}

GradedComplex build_stable_koszul(const RingSpec& coefficients, const std::vector<Monomial>& gens) {
    require_generators(coefficients, gens);
    if (gens.empty()) throw EmptyIdeal("stable Koszul complex on no generators");
    const std::size_t n = coefficients.variable_count, m = gens.size();
    return subset_complex(
        coefficients, 0, subsets_by_size(m), m,
        [&](Mask S) { return Summand{product_over(gens, S, n), Multidegree(n, 0)}; },
        [&](Mask, std::size_t) { return Monomial::one(n); });
}

GradedComplex build_cech(const RingSpec& coefficients, const std::vector<Monomial>& gens) {
    require_generators(coefficients, gens);
    if (gens.empty()) throw EmptyIdeal("Cech complex on no generators");
    const std::size_t n = coefficients.variable_count, m = gens.size();
    auto groups = subsets_by_size(m);
    groups.erase(groups.begin());
    return subset_complex(
        coefficients, 0, groups, m, [&](Mask S) { return Summand{product_over(gens, S, n), Multidegree(n, 0)}; },
        [&](Mask, std::size_t) { return Monomial::one(n); });
}

ChainMap koszul_transition(const RingSpec& coefficients, const std::vector<Monomial>& gens, int s) {
    return koszul_transition(coefficients, gens, s, s + 1);
}

int schedule_exponent(ExponentSchedule schedule, int stage) {
    if (stage < 1) throw std::invalid_argument("stages start at 1");
    if (schedule == ExponentSchedule::Linear) return stage;
    if (stage > 24) throw std::invalid_argument("doubling schedule limited to 24 stages");
    return 1 << (stage - 1);
}

ChainMap koszul_transition(const RingSpec& coefficients, const std::vector<Monomial>& gens, int s, int t) {
    if (s < 1 || t < s) throw std::invalid_argument("Koszul transition needs 1 <= s <= t");
    const std::size_t n = coefficients.variable_count, m = gens.size();
    ChainMap f;
    for (const auto& group : subsets_by_size(m)) {
        PolyMatrix c{group.size(), group.size(), {}};
        for (std::size_t p = 0; p < group.size(); ++p) c.entries.push_back({p, p, 1, product_over(gens, group[p], n, t - s)});
        f.components.push_back(std::move(c));
    }
    return f;
}

DegreeTable local_cohomology(const RingSpec& ring, const std::vector<Monomial>& gens,
                             const MonomialIdeal& module_relations, const DegreeBox& box,
                             const TableOptions& options) {
    if (gens.empty())
        throw EmptyIdeal("local cohomology needs a nonzero ideal (use zero_ideal_cohomology for the I = 0 convention)");
    RingSpec coeffs = coefficient_ring(ring, module_relations);
    return fill_table(build_stable_koszul(coeffs, gens), box, options.threads);
}

DegreeTable local_cohomology(const RingSpec& ring, const MonomialIdeal& ideal, const MonomialIdeal& module_relations,
                             const DegreeBox& box, const TableOptions& options) {
    return local_cohomology(ring, ideal.generators(), module_relations, box, options);
}

DegreeTable zero_ideal_cohomology(const RingSpec& ring, const MonomialIdeal& module_relations, const DegreeBox& box) {
    RingSpec coeffs = coefficient_ring(ring, module_relations);
    ModuleDescriptor m = ModuleDescriptor::free(coeffs, {Multidegree(ring.variable_count, 0)});
    DegreeTable table(box, 0, 0);
    for (const auto& a : box.points()) table.set(0, a, piece_dimension(m, a));
    return table;
}

DegreeTable cech_cohomology(const RingSpec& ring, const std::vector<Monomial>& gens,
                            const MonomialIdeal& module_relations, const DegreeBox& box,
                            const TableOptions& options) {
    if (gens.empty()) throw EmptyIdeal("Cech cohomology needs a nonzero ideal");
    RingSpec coeffs = coefficient_ring(ring, module_relations);
    return fill_table(build_cech(coeffs, gens), box, options.threads);
}

KoszulColimitResult koszul_colimit_cohomology(const RingSpec& ring, const std::vector<Monomial>& gens,
                                              const MonomialIdeal& module_relations, const DegreeBox& box,
                                              const KoszulColimitOptions& options) {
    if (options.s_max < 2) throw std::invalid_argument("s_max must be >= 2");
    if (gens.empty()) throw EmptyIdeal("Koszul colimit on no generators");
    RingSpec coeffs = coefficient_ring(ring, module_relations);
    std::vector<int> exps;
    for (int s = 1; s <= options.s_max; ++s) exps.push_back(schedule_exponent(options.schedule, s));
    std::vector<GradedComplex> complexes;
    for (int e : exps) complexes.push_back(build_unstable_koszul(coeffs, gens, e));
    std::vector<ChainMap> ladders;
    for (std::size_t k = 0; k + 1 < exps.size(); ++k)
        ladders.push_back(koszul_transition(coeffs, gens, exps[k], exps[k + 1]));

    const int lo = 0, hi = static_cast<int>(gens.size());
    auto points = box.points();
    const auto S = static_cast<std::size_t>(options.s_max);
    // dims[k][s-1][i], iso[k][s-1][i] for the transition s -> s+1.
    std::vector<std::vector<std::vector<std::size_t>>> dims(points.size());
    std::vector<std::vector<std::vector<bool>>> iso(points.size());
    parallel_for(points.size(), options.threads, [&](std::size_t k) {
        const auto& a = points[k];
        dims[k].resize(S);
        for (std::size_t s = 0; s < S; ++s) dims[k][s] = complexes[s].cohomology_dimensions(a);
        // Only the last two transitions decide stability.
        iso[k].assign(S - 1, std::vector<bool>(static_cast<std::size_t>(hi - lo + 1), false));
        for (std::size_t s = (S >= 3 ? S - 3 : 0); s + 1 < S; ++s)
            for (int i = lo; i <= hi; ++i) {
                auto ii = static_cast<std::size_t>(i - lo);
                std::size_t d0 = dims[k][s][ii], d1 = dims[k][s + 1][ii];
                iso[k][s][ii] = d0 == d1 &&
                                (d0 == 0 || induced_cohomology_rank(complexes[s], complexes[s + 1], ladders[s], i, a) == d0);
            }
    });

    KoszulColimitResult result{DegreeTable(box, lo, hi), {}, exps, {}};
    for (std::size_t s = 0; s < S; ++s) result.history.emplace_back(box, lo, hi);
    for (std::size_t k = 0; k < points.size(); ++k)
        for (int i = lo; i <= hi; ++i) {
            auto ii = static_cast<std::size_t>(i - lo);
            for (std::size_t s = 0; s < S; ++s) result.history[s].set(i, points[k], dims[k][s][ii]);
            result.table.set(i, points[k], dims[k][S - 1][ii]);
            bool stable = iso[k][S - 2][ii] && (S < 3 || iso[k][S - 3][ii]);
            if (!stable) result.unstable.push_back({i, points[k]});
        }
    if (!result.unstable.empty() && !options.allow_unstable)
        throw NotStabilized(std::to_string(result.unstable.size()) + " Koszul cells not stable by exponent " +
                                std::to_string(exps.back()) + " (first: H^" +
                                std::to_string(result.unstable.front().index) + " at " +
                                degree_string(result.unstable.front().degree) + ")",
                            result.unstable);
    return result;
}

CheckReport les_check(const RingSpec& ring, const std::vector<Monomial>& gens, const MonomialIdeal& module_relations,
                      const DegreeBox& box, const TableOptions& options) {
    CheckReport report;
    DegreeTable h = local_cohomology(ring, gens, module_relations, box, options);
    DegreeTable c = cech_cohomology(ring, gens, module_relations, box, options);
    RingSpec coeffs = coefficient_ring(ring, module_relations);
    ModuleDescriptor m = ModuleDescriptor::free(coeffs, {Multidegree(ring.variable_count, 0)});
    const int top = static_cast<int>(gens.size());
    for (const auto& a : box.points()) {
        long h0 = static_cast<long>(h.at(0, a)), h1 = static_cast<long>(h.at(1, a));
        long mm = static_cast<long>(piece_dimension(m, a)), c0 = static_cast<long>(c.at(0, a));
        if (h0 - mm + c0 - h1 != 0 || h0 > mm || h1 > c0) {
            report.passed = false;
            report.witness = "four-term sequence fails at " + degree_string(a) + ": H0=" + std::to_string(h0) +
                             " M=" + std::to_string(mm) + " CH0=" + std::to_string(c0) + " H1=" + std::to_string(h1);
            return report;
        }
        for (int i = 2; i <= top; ++i)
            if (h.at(i, a) != c.at(i - 1, a)) {
                report.passed = false;
                report.witness = "H^" + std::to_string(i) + " != CH^" + std::to_string(i - 1) + " at " +
                                 degree_string(a);
                return report;
            }
    }
    report.notes.push_back("checked " + std::to_string(box.size()) + " degrees");
    return report;
}

CheckReport euler_check(const GradedComplex& complex, const DegreeBox& box) {
    CheckReport report;
    for (const auto& a : box.points()) {
        std::vector<std::optional<std::size_t>> mods, coh;
        for (auto d : complex.dimensions(a)) mods.emplace_back(d);
        for (auto d : complex.cohomology_dimensions(a)) coh.emplace_back(d);
        long x = euler_characteristic(mods, complex.lowest_index());
        long y = euler_characteristic(coh, complex.lowest_index());
        if (x != y) {
            report.passed = false;
            report.witness = "chi(modules)=" + std::to_string(x) + " but chi(cohomology)=" + std::to_string(y) +
                             " at " + degree_string(a);
            return report;
        }
    }
    return report;
}

CheckReport radical_invariance_check(const RingSpec& ring, const std::vector<Monomial>& gens1,
                                     const std::vector<Monomial>& gens2, const MonomialIdeal& module_relations,
                                     const DegreeBox& box, const TableOptions& options) {
    const std::size_t n = ring.variable_count;
    MonomialIdeal r1 = radical(MonomialIdeal(n, gens1)), r2 = radical(MonomialIdeal(n, gens2));
    if (!(r1 == r2)) throw RadicalsDiffer(r1.to_string() + " vs " + r2.to_string());
    CheckReport report;
    DegreeTable t1 = local_cohomology(ring, gens1, module_relations, box, options);
    DegreeTable t2 = local_cohomology(ring, gens2, module_relations, box, options);
    if (auto diff = t1.first_difference(t2)) {
        report.passed = false;
        report.witness = "H^" + std::to_string(diff->index) + " at " + degree_string(diff->degree) + ": " +
                         std::to_string(t1.at(diff->index, diff->degree)) + " vs " +
                         std::to_string(t2.at(diff->index, diff->degree));
    }
    return report;
}

VanishingReport vanishing_report(const DegreeTable& table, const RingSpec& ring, const std::vector<Monomial>& gens,
                                 const MonomialIdeal& module_relations) {
    VanishingReport r;
    RingSpec coeffs = coefficient_ring(ring, module_relations);
    r.krull_dim = krull_dim(coeffs);
    r.im_equals_m = ideal_sum(MonomialIdeal(ring.variable_count, gens), coeffs.relations).is_unit();
    r.computed_depth = table.first_nonzero_index();
    if (auto top = table.last_nonzero_index(); top && *top > r.krull_dim) {
        r.passed = false;
        for (const auto& c : table.nonzero_cells())
            if (c.index == *top) {
                r.witness = "H^" + std::to_string(*top) + " != 0 at " + degree_string(c.degree) + " but dim M = " +
                            std::to_string(r.krull_dim);
                break;
            }
        return r;
    }
    if (!r.im_equals_m) {
        if (!r.computed_depth) {
            r.passed = false;
            r.witness = "IM != M but every H^i vanishes in the box";
        } else if (*r.computed_depth > r.krull_dim) {
            r.passed = false;
            r.witness = "depth " + std::to_string(*r.computed_depth) + " exceeds dim " + std::to_string(r.krull_dim);
        }
    } else if (r.computed_depth) {
        r.passed = false;
        r.witness = "IM = M yet H^" + std::to_string(*r.computed_depth) + " is nonzero";
    }
    return r;
}

VanishingReport vanishing_report(const RingSpec& ring, const std::vector<Monomial>& gens,
                                 const MonomialIdeal& module_relations, const DegreeBox& box,
                                 const TableOptions& options) {
    return vanishing_report(local_cohomology(ring, gens, module_relations, box, options), ring, gens,
                            module_relations);
}

}  // namespace loco
