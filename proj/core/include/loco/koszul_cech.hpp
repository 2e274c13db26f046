#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "loco/degree_table.hpp"
#include "loco/errors.hpp"
#include "loco/graded_complex.hpp"
#include "loco/monomial_ideal.hpp"

namespace loco {

/// Coefficient module M = R/J for R = ring (itself k[x]/J0): the effective
/// quotient of the polynomial ring is J0 + J.
RingSpec coefficient_ring(const RingSpec& ring, const MonomialIdeal& module_relations);

/// Tensor product over i of (M --alpha_i^s--> M(s deg alpha_i)), in
/// cohomological degrees 0..m. The summand for a subset S sits in degree |S|
/// with shift -s * sum(alpha_i, i in S); the component S -> S+{j} is
/// (-1)^#{i in S : i < j} alpha_j^s.
GradedComplex build_unstable_koszul(const RingSpec& coefficients, const std::vector<Monomial>& gens, int s);

/// Stable Koszul complex K(I) tensor M: M[1/alpha_S] in degree |S|, S ranging
/// over all subsets (S empty gives M itself), with the same signs.
GradedComplex build_stable_koszul(const RingSpec& coefficients, const std::vector<Monomial>& gens);

/// Cech complex: M[1/alpha_S] over nonempty S, in degree |S| - 1.
GradedComplex build_cech(const RingSpec& coefficients, const std::vector<Monomial>& gens);

/// Ladder K_s -> K_t (s <= t): identity on S empty, multiplication by
/// alpha_S^(t-s) on the summand for S.
ChainMap koszul_transition(const RingSpec& coefficients, const std::vector<Monomial>& gens, int s, int t);
ChainMap koszul_transition(const RingSpec& coefficients, const std::vector<Monomial>& gens, int s);

/// Exponents used at the stages 1, 2, 3, ... of a colimit. Doubling gives
/// 1, 2, 4, 8, ...: a cofinal subsequence of the linear system, so it has the
/// same colimit but reaches the stable range of a box in fewer stages.
enum class ExponentSchedule { Linear, Doubling };
int schedule_exponent(ExponentSchedule schedule, int stage);

struct TableOptions {
    unsigned threads = 0;  // 0 = process default
};

/// dim H^i_I(M)_a for a in box, i = 0..#gens, from the stable Koszul
/// (augmented Cech) complex. Throws EmptyIdeal when gens is empty.
DegreeTable local_cohomology(const RingSpec& ring, const std::vector<Monomial>& gens,
                             const MonomialIdeal& module_relations, const DegreeBox& box,
                             const TableOptions& options = {});
DegreeTable local_cohomology(const RingSpec& ring, const MonomialIdeal& ideal,
                             const MonomialIdeal& module_relations, const DegreeBox& box,
                             const TableOptions& options = {});

/// Convention for I = 0: H^0 = M, everything else zero.
DegreeTable zero_ideal_cohomology(const RingSpec& ring, const MonomialIdeal& module_relations, const DegreeBox& box);

/// dim CH^i_I(M)_a, i = 0..#gens-1.
DegreeTable cech_cohomology(const RingSpec& ring, const std::vector<Monomial>& gens,
                            const MonomialIdeal& module_relations, const DegreeBox& box,
                            const TableOptions& options = {});

struct KoszulColimitOptions {
    int s_max = 6;  // number of stages
    ExponentSchedule schedule = ExponentSchedule::Doubling;
    bool allow_unstable = false;
    unsigned threads = 0;
};

struct KoszulColimitResult {
    DegreeTable table;  // H^i(K_(s_max) tensor M)
    /// history[k] = table of H^i(K_e tensor M), e = exponents[k]
    std::vector<DegreeTable> history;
    std::vector<int> exponents;
    std::vector<NotStabilized::Cell> unstable;
};

/// H^i(K_e tensor M) for the exponents e of stages 1..s_max with the
/// transition maps. A cell is stable when the last two transitions are
/// isomorphisms there. Throws NotStabilized listing unstable cells unless
/// allow_unstable is set.
KoszulColimitResult koszul_colimit_cohomology(const RingSpec& ring, const std::vector<Monomial>& gens,
                                              const MonomialIdeal& module_relations, const DegreeBox& box,
                                              const KoszulColimitOptions& options = {});

/// Outcome of a certificate-style check. `witness` names the first failing
/// degree (or other offending datum) when passed is false.
struct CheckReport {
    bool passed = true;
    std::string witness;
    std::vector<std::string> notes;
};

/// In every degree of the box: the four-term sequence
/// 0 -> H^0 -> M -> CH^0 -> H^1 -> 0 has zero alternating sum, H^0 <= dim M,
/// and H^i = CH^(i-1) for i >= 2.
CheckReport les_check(const RingSpec& ring, const std::vector<Monomial>& gens, const MonomialIdeal& module_relations,
                      const DegreeBox& box, const TableOptions& options = {});

/// Euler characteristic of the complex equals that of its cohomology in
/// every degree of the box.
CheckReport euler_check(const GradedComplex& complex, const DegreeBox& box);

/// Equal local cohomology tables for two generating sets with the same
/// radical. Throws RadicalsDiffer otherwise.
CheckReport radical_invariance_check(const RingSpec& ring, const std::vector<Monomial>& gens1,
                                     const std::vector<Monomial>& gens2, const MonomialIdeal& module_relations,
                                     const DegreeBox& box, const TableOptions& options = {});

struct VanishingReport {
    std::optional<int> computed_depth;  // least i with H^i != 0 in the box
    int krull_dim = 0;                  // of M = R/J
    bool im_equals_m = false;           // I + J is the unit ideal
    bool passed = true;
    std::string witness;
};

/// Checks that no H^i with i > dim M is nonzero in the box and, when
/// IM != M, that some H^i is nonzero with first such index <= dim M.
VanishingReport vanishing_report(const RingSpec& ring, const std::vector<Monomial>& gens,
                                 const MonomialIdeal& module_relations, const DegreeBox& box,
                                 const TableOptions& options = {});
VanishingReport vanishing_report(const DegreeTable& local_cohomology_table, const RingSpec& ring,
                                 const std::vector<Monomial>& gens, const MonomialIdeal& module_relations);

}  // namespace loco
