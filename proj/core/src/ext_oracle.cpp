#include "loco/ext_oracle.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace loco {

namespace {

int removal_sign(unsigned s, std::size_t k) {
    return std::popcount(s & ((1u << k) - 1)) % 2 == 0 ? 1 : -1;
}

Multidegree as_degree(const Monomial& m) { return m.exponents(); }

Multidegree negated(const Monomial& m) {
    Multidegree d = m.exponents();
    for (auto& x : d) x = -x;
    return d;
}

std::size_t position_of(const std::vector<unsigned>& sorted, unsigned s) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), s);
    return static_cast<std::size_t>(it - sorted.begin());
}

GradedComplex build_resolution(const RingSpec& ring, const std::vector<std::vector<unsigned>>& subsets,
                               const std::vector<std::vector<Monomial>>& lcms) {
    const std::size_t m = subsets.size() - 1;
    std::vector<ModuleDescriptor> modules;
    for (std::size_t j = m + 1; j-- > 0;) {
        std::vector<Multidegree> shifts;
        for (const auto& l : lcms[j]) shifts.push_back(as_degree(l));
        modules.push_back(ModuleDescriptor::free(ring, shifts));
    }
    std::vector<PolyMatrix> diffs;
    for (std::size_t j = m; j >= 1; --j) {
        PolyMatrix d{subsets[j - 1].size(), subsets[j].size(), {}};
        for (std::size_t c = 0; c < subsets[j].size(); ++c) {
            unsigned s = subsets[j][c];
            for (std::size_t k = 0; k < m; ++k) {
                if (!(s & (1u << k))) continue;
                unsigned t = s & ~(1u << k);
                std::size_t row = position_of(subsets[j - 1], t);
                d.entries.push_back({row, c, mpq_class(removal_sign(s, k)), lcms[j][c] / lcms[j - 1][row]});
            }
        }
        diffs.push_back(std::move(d));
    }
    return GradedComplex(-static_cast<int>(m), std::move(modules), std::move(diffs));
}

struct Layout {
    std::vector<std::vector<unsigned>> subsets;
    std::vector<std::vector<Monomial>> lcms;
};

Layout make_layout(const MonomialIdeal& ideal) {
    const std::size_t m = ideal.size(), n = ideal.variable_count();
    Layout out;
    out.subsets.resize(m + 1);
    out.lcms.resize(m + 1);
    for (unsigned s = 0; s < (1u << m); ++s) out.subsets[static_cast<std::size_t>(std::popcount(s))].push_back(s);
    for (std::size_t j = 0; j <= m; ++j)
        for (unsigned s : out.subsets[j]) {
            Monomial l = Monomial::one(n);
            for (std::size_t k = 0; k < m; ++k)
                if (s & (1u << k)) l = lcm(l, ideal.generators()[k]);
            out.lcms[j].push_back(l);
        }
    return out;
}

const MonomialIdeal& checked_ideal(const MonomialIdeal& ideal) {
    if (ideal.is_zero()) throw EmptyIdeal("Taylor resolution of the zero ideal");
    if (ideal.size() > TaylorResolution::max_generators)
        throw TooManyGenerators(std::to_string(ideal.size()) + " minimal generators (limit " +
                                std::to_string(TaylorResolution::max_generators) + ")");
    return ideal;
}

}  // namespace

TaylorResolution::TaylorResolution(const RingSpec& ring, const MonomialIdeal& ideal)
    : ring_(ring.polynomial_ring()),
      ideal_(checked_ideal(ideal)),
      subsets_(make_layout(ideal_).subsets),
      lcms_(make_layout(ideal_).lcms),
      complex_(build_resolution(ring_, subsets_, lcms_)) {
    if (ideal.variable_count() != ring.variable_count)
        throw std::invalid_argument("ideal and ring have different variable counts");
}

GradedComplex TaylorResolution::augmented() const {
    std::vector<ModuleDescriptor> modules = complex_.modules();
    modules.emplace_back(RingSpec(ring_.field, ring_.variable_count, ideal_),
                         std::vector<Summand>{{Monomial::one(ring_.variable_count),
                                               Multidegree(ring_.variable_count, 0)}});
    std::vector<PolyMatrix> diffs;
    for (int i = complex_.lowest_index(); i < 0; ++i) diffs.push_back(complex_.differential(i));
    diffs.push_back(PolyMatrix{1, 1, {{0, 0, 1, Monomial::one(ring_.variable_count)}}});
    return GradedComplex(complex_.lowest_index(), std::move(modules), std::move(diffs));
}

GradedComplex TaylorResolution::hom_into(const RingSpec& coefficients) const {
    const std::size_t m = length(), n = ring_.variable_count;
    std::vector<ModuleDescriptor> modules;
    for (std::size_t j = 0; j <= m; ++j) {
        std::vector<Summand> summands;
        for (const auto& l : lcms_[j]) summands.push_back({Monomial::one(n), negated(l)});
        modules.emplace_back(coefficients, std::move(summands));
    }
    std::vector<PolyMatrix> diffs;
    for (std::size_t j = 0; j < m; ++j) {
        // Transpose of T_(j+1) -> T_j.
        PolyMatrix d{subsets_[j + 1].size(), subsets_[j].size(), {}};
        for (std::size_t r = 0; r < subsets_[j + 1].size(); ++r) {
            unsigned s = subsets_[j + 1][r];
            for (std::size_t k = 0; k < m; ++k) {
                if (!(s & (1u << k))) continue;
                std::size_t c = position_of(subsets_[j], s & ~(1u << k));
                d.entries.push_back({r, c, mpq_class(removal_sign(s, k)), lcms_[j + 1][r] / lcms_[j][c]});
            }
        }
        diffs.push_back(std::move(d));
    }
    return GradedComplex(0, std::move(modules), std::move(diffs));
}

ChainMap lift_quotient_map(const TaylorResolution& from, const TaylorResolution& to) {
    if (!to.ideal().contains(from.ideal()))
        throw LiftFailed("source ideal " + from.ideal().to_string() + " is not inside " + to.ideal().to_string());
    const GradedComplex& src = from.complex();
    const GradedComplex& tgt = to.complex();
    const std::size_t m_from = from.length(), n = from.ring().variable_count;
    ChainMap phi;
    phi.components.resize(m_from + 1);
    auto component = [&](std::size_t j) -> PolyMatrix& { return phi.components[m_from - j]; };

    std::size_t to_rows0 = to.subsets(0).size();
    component(0) = PolyMatrix{to_rows0, 1, {{0, 0, 1, Monomial::one(n)}}};
    for (std::size_t j = 1; j <= m_from; ++j) {
        const int index = -static_cast<int>(j);
        const bool target_has = j <= to.length();
        PolyMatrix c{target_has ? to.subsets(j).size() : 0, from.subsets(j).size(), {}};
        for (std::size_t p = 0; p < from.subsets(j).size(); ++p) {
            const Multidegree a = as_degree(from.lcm(j, p));
            const auto src_basis = basis_of_degree(src.module(index), a);
            std::size_t col = src_basis.size();
            for (std::size_t k = 0; k < src_basis.size(); ++k)
                if (src_basis[k].summand == p) col = k;
            if (col == src_basis.size()) throw LiftFailed("generator missing from its own degree");

            ExactMatrix composite =
                chain_map_matrix(src, tgt, phi, index + 1, a) * src.differential_matrix(index, a);
            Vector rhs(composite.rows(), 0);
            for (const auto& t : composite.entries())
                if (t.col == col) rhs[t.row] = t.value;

            if (!target_has) {
                if (std::any_of(rhs.begin(), rhs.end(), [](const mpq_class& v) { return v != 0; }))
                    throw LiftFailed("nonzero obstruction past the end of the target resolution");
                continue;
            }
            auto x = solve(tgt.differential_matrix(index, a), rhs);
            if (!x) throw LiftFailed("no lift for generator " + std::to_string(p) + " in homological degree " +
                                     std::to_string(j) + " at " + degree_string(a));
            const auto tgt_basis = basis_of_degree(tgt.module(index), a);
            for (std::size_t k = 0; k < tgt_basis.size(); ++k)
                if ((*x)[k] != 0) c.entries.push_back({tgt_basis[k].summand, p, (*x)[k], tgt_basis[k].exponent});
        }
        component(j) = std::move(c);
    }
    return phi;
}

ChainMap dualize(const ChainMap& lift, const TaylorResolution& from, const TaylorResolution& to) {
    // Source is Hom(to, M), indices 0..to.length().
    const std::size_t m_from = from.length();
    ChainMap out;
    for (std::size_t j = 0; j <= to.length(); ++j) {
        std::size_t rows = j <= m_from ? from.subsets(j).size() : 0;
        PolyMatrix d{rows, to.subsets(j).size(), {}};
        if (j <= m_from)
            for (const auto& e : lift.components[m_from - j].entries)
                d.entries.push_back({e.col, e.row, e.coefficient, e.multiplier});
        out.components.push_back(std::move(d));
    }
    return out;
}

MonomialIdeal power_ideal(const MonomialIdeal& ideal, int r, PowerSystem system) {
    if (r < 1) throw std::invalid_argument("power must be >= 1");
    return system == PowerSystem::GeneratorPowers ? generator_power(ideal, r) : ideal_power(ideal, r);
}

DegreeTable ext_dims(const RingSpec& ring, const MonomialIdeal& ideal, int r, const MonomialIdeal& module_relations,
                     const DegreeBox& box, PowerSystem system, unsigned threads) {
    TaylorResolution t(ring, power_ideal(ideal, r, system));
    GradedComplex hom = t.hom_into(coefficient_ring(ring, module_relations));
    DegreeTable table(box, 0, static_cast<int>(t.length()));
    auto points = box.points();
    std::vector<std::vector<std::size_t>> dims(points.size());
    parallel_for(points.size(), threads, [&](std::size_t k) { dims[k] = hom.cohomology_dimensions(points[k]); });
    for (std::size_t k = 0; k < points.size(); ++k)
        for (std::size_t i = 0; i < dims[k].size(); ++i) table.set(static_cast<int>(i), points[k], dims[k][i]);
    return table;
}

std::vector<ColimitMapCell> colimit_maps(const RingSpec& ring, const MonomialIdeal& ideal, int r, int i,
                                         const MonomialIdeal& module_relations, const DegreeBox& box,
                                         PowerSystem system) {
    TaylorResolution lower(ring, power_ideal(ideal, r, system));
    TaylorResolution upper(ring, power_ideal(ideal, r + 1, system));
    RingSpec coeffs = coefficient_ring(ring, module_relations);
    GradedComplex src = lower.hom_into(coeffs), tgt = upper.hom_into(coeffs);
    ChainMap f = dualize(lift_quotient_map(upper, lower), upper, lower);
    std::vector<ColimitMapCell> out;
    for (const auto& a : box.points())
        out.push_back({a, chain_map_matrix(src, tgt, f, i, a), src.cohomology_dimension(i, a),
                       tgt.cohomology_dimension(i, a), induced_cohomology_rank(src, tgt, f, i, a)});
    return out;
}

StableExtResult stable_ext(const RingSpec& ring, const MonomialIdeal& ideal, const MonomialIdeal& module_relations,
                           const DegreeBox& box, const StableExtOptions& options) {
    if (options.r_max < 3) throw std::invalid_argument("r_max must be >= 3");
    const auto R = static_cast<std::size_t>(options.r_max);
    RingSpec coeffs = coefficient_ring(ring, module_relations);
    std::vector<TaylorResolution> res;
    std::vector<int> exps;
    for (int r = 1; r <= options.r_max; ++r) exps.push_back(schedule_exponent(options.schedule, r));
    for (int e : exps) res.emplace_back(ring, power_ideal(ideal, e, options.system));
    std::vector<GradedComplex> homs;
    for (const auto& t : res) homs.push_back(t.hom_into(coeffs));
    std::vector<ChainMap> maps;
    for (std::size_t r = 0; r + 1 < R; ++r) maps.push_back(dualize(lift_quotient_map(res[r + 1], res[r]), res[r + 1], res[r]));

    int top = 0;
    for (const auto& h : homs) top = std::max(top, h.highest_index());
    const auto width = static_cast<std::size_t>(top + 1);
    auto points = box.points();
    // dims[k][r][i]; iso[k][r][i] for the transition r -> r+1.
    std::vector<std::vector<std::vector<std::size_t>>> dims(points.size());
    std::vector<std::vector<std::vector<bool>>> iso(points.size());
    parallel_for(points.size(), options.threads, [&](std::size_t k) {
        const auto& a = points[k];
        dims[k].assign(R, std::vector<std::size_t>(width, 0));
        for (std::size_t r = 0; r < R; ++r) {
            auto d = homs[r].cohomology_dimensions(a);
            std::copy(d.begin(), d.end(), dims[k][r].begin());
        }
        iso[k].assign(R - 1, std::vector<bool>(width, false));
        for (std::size_t r = 0; r + 1 < R; ++r)
            for (int i = 0; i <= top; ++i) {
                auto ii = static_cast<std::size_t>(i);
                std::size_t d0 = dims[k][r][ii], d1 = dims[k][r + 1][ii];
                iso[k][r][ii] = d0 == d1 && (d0 == 0 || induced_cohomology_rank(homs[r], homs[r + 1], maps[r], i, a) == d0);
            }
    });

    StableExtResult result{DegreeTable(box, 0, top), {}, exps, {}, {}};
    for (std::size_t r = 0; r < R; ++r) result.history.emplace_back(box, 0, top);
    for (std::size_t k = 0; k < points.size(); ++k)
        for (int i = 0; i <= top; ++i) {
            auto ii = static_cast<std::size_t>(i);
            for (std::size_t r = 0; r < R; ++r) result.history[r].set(i, points[k], dims[k][r][ii]);
            result.table.set(i, points[k], dims[k][R - 1][ii]);
            if (!(iso[k][R - 2][ii] && iso[k][R - 3][ii])) result.unstable.push_back({i, points[k]});
            for (std::size_t r = 0; r + 2 < R - 1; ++r)
                if (iso[k][r][ii] && iso[k][r + 1][ii] && dims[k][r][ii] > 0 && !iso[k][r + 2][ii]) {
                    result.monotonicity_violations.push_back({i, points[k]});
                    break;
                }
        }
    if (!result.unstable.empty() && !options.allow_unstable)
        throw NotStabilized(std::to_string(result.unstable.size()) + " Ext cells not stable by power " +
                                std::to_string(exps.back()) + " (first: Ext^" +
                                std::to_string(result.unstable.front().index) + " at " +
                                degree_string(result.unstable.front().degree) + ")",
                            result.unstable);
    return result;
}

bool taylor_is_exact(const TaylorResolution& resolution, const DegreeBox& box) {
    GradedComplex aug = resolution.augmented();
    for (const auto& a : box.points())
        for (auto d : aug.cohomology_dimensions(a))
            if (d != 0) return false;
    return true;
}

}  // namespace loco
