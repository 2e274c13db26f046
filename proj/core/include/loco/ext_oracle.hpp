#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "loco/degree_table.hpp"
#include "loco/errors.hpp"
#include "loco/graded_complex.hpp"
#include "loco/koszul_cech.hpp"
#include "loco/monomial_ideal.hpp"

namespace loco {

/// Taylor resolution of k[x]/I over the polynomial ring k[x]: T_j is free on
/// the j-element subsets S of the generators, e_S in degree lcm(S), and
/// d e_S = sum over k in S of (-1)^#{i in S : i < k} lcm(S)/lcm(S-k) e_(S-k).
class TaylorResolution {
public:
    static constexpr std::size_t max_generators = 12;

    /// Throws EmptyIdeal for I = 0 and TooManyGenerators past 12 generators.
    TaylorResolution(const RingSpec& ring, const MonomialIdeal& ideal);

    const RingSpec& ring() const { return ring_; }  // the polynomial ring
    const MonomialIdeal& ideal() const { return ideal_; }
    const std::vector<Monomial>& generators() const { return ideal_.generators(); }
    std::size_t length() const { return ideal_.size(); }

    /// Subsets of size j (bitmasks over generator positions), increasing.
    const std::vector<unsigned>& subsets(std::size_t j) const { return subsets_[j]; }
    /// lcm of the generators in subsets(j)[p].
    const Monomial& lcm(std::size_t j, std::size_t p) const { return lcms_[j][p]; }

    /// T_j placed at cohomological index -j (indices -m..0).
    const GradedComplex& complex() const { return complex_; }
    /// The complex followed by the augmentation T_0 -> R/I at index 1.
    GradedComplex augmented() const;
    /// Hom(T, M) with M = k[x]/coefficient relations: index j holds
    /// sum over |S| = j of M(lcm S), i.e. summand shift -lcm(S).
    GradedComplex hom_into(const RingSpec& coefficients) const;

private:
    RingSpec ring_;
    MonomialIdeal ideal_;
    std::vector<std::vector<unsigned>> subsets_;
    std::vector<std::vector<Monomial>> lcms_;
    GradedComplex complex_;
};

/// Lift of the quotient map R/I' -> R/I (requires I' inside I) to a chain
/// map from.complex() -> to.complex(), solved generator by generator with
/// degreewise linear solves. Throws LiftFailed if some solve is infeasible.
ChainMap lift_quotient_map(const TaylorResolution& from, const TaylorResolution& to);

/// Hom(-, M) applied to a chain map from -> to: a map
/// to.hom_into(M) -> from.hom_into(M).
ChainMap dualize(const ChainMap& lift, const TaylorResolution& from, const TaylorResolution& to);

/// Which cofinal family of ideals the colimit runs over.
enum class PowerSystem {
    GeneratorPowers,  // (g_1^r, ..., g_m^r)
    OrdinaryPowers,   // I^r
};

/// The r-th member of the family: (g_i^r) or I^r.
MonomialIdeal power_ideal(const MonomialIdeal& ideal, int r, PowerSystem system);

/// dim Ext^i_R(R/I_r, M)_a for i = 0..#generators of I_r, a in box.
/// M = R/J where R = ring (relations J0); computed over k[x] with M = k[x]/(J0 + J).
DegreeTable ext_dims(const RingSpec& ring, const MonomialIdeal& ideal, int r, const MonomialIdeal& module_relations,
                     const DegreeBox& box, PowerSystem system = PowerSystem::GeneratorPowers,
                     unsigned threads = 0);

/// Ext^i(R/I_r, M) -> Ext^i(R/I_(r+1), M) in one degree: the cochain-level
/// matrix plus what it induces on cohomology.
struct ColimitMapCell {
    Multidegree degree;
    ExactMatrix cochain_matrix;
    std::size_t source_dim;
    std::size_t target_dim;
    std::size_t induced_rank;
    bool is_iso() const { return source_dim == target_dim && induced_rank == source_dim; }
};

std::vector<ColimitMapCell> colimit_maps(const RingSpec& ring, const MonomialIdeal& ideal, int r, int i,
                                         const MonomialIdeal& module_relations, const DegreeBox& box,
                                         PowerSystem system = PowerSystem::GeneratorPowers);

struct StableExtOptions {
    int r_max = 6;  // number of stages
    PowerSystem system = PowerSystem::GeneratorPowers;
    /// Stage k uses power schedule_exponent(schedule, k).
    ExponentSchedule schedule = ExponentSchedule::Doubling;
    bool allow_unstable = false;
    unsigned threads = 0;
};

struct StableExtResult {
    DegreeTable table;                // value at r_max, indices 0..#generators
    std::vector<DegreeTable> history;  // history[k] = Ext table for I_(exponents[k])
    std::vector<int> exponents;
    std::vector<NotStabilized::Cell> unstable;
    /// Cells where two consecutive isomorphisms between nonzero spaces were
    /// followed by a non-isomorphism.
    std::vector<NotStabilized::Cell> monotonicity_violations;
};

/// colim_r Ext^i(R/I_r, M) per degree over stages 1..r_max. A cell is stable
/// when the last two stage transitions are both isomorphisms. Throws NotStabilized
/// (listing cells) unless allow_unstable.
StableExtResult stable_ext(const RingSpec& ring, const MonomialIdeal& ideal, const MonomialIdeal& module_relations,
                           const DegreeBox& box, const StableExtOptions& options = {});

/// H_j(T) = 0 for j >= 1 and H_0(T) = R/I in every degree of the box,
/// checked on the augmented complex.
bool taylor_is_exact(const TaylorResolution& resolution, const DegreeBox& box);

}  // namespace loco
