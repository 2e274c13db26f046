#include <gtest/gtest.h>

#include "loco/errors.hpp"
#include "loco/koszul_cech.hpp"
#include "oracles.hpp"

using namespace loco;

namespace {

const FieldSpec QQ = FieldSpec::rationals();
const FieldSpec F2 = FieldSpec::prime(2);

// Table from the brute-force Koszul oracle, in the same shape as a DegreeTable.
void expect_matches_oracle(const DegreeTable& t, const std::vector<Monomial>& gens, const MonomialIdeal& module_rel,
                           const MonomialIdeal& ring_rel, unsigned p) {
    auto rel = oracle::exps(module_rel.generators());
    for (const auto& g : ring_rel.generators()) rel.push_back(g.exponents());
    auto o = oracle::local_cohomology(oracle::exps(gens), rel, t.box().lo(), t.box().hi(), p);
    ASSERT_TRUE(o.has_value()) << "oracle not stable";
    for (int i = t.lowest_index(); i <= t.highest_index(); ++i)
        for (const auto& a : t.box().points()) {
            std::size_t want = 0;
            if (o->count(i) && o->at(i).count(a)) want = o->at(i).at(a);
            ASSERT_EQ(t.at(i, a), want) << "H^" << i << " at " << degree_string(a);
        }
}

}  // namespace

TEST(KoszulCech, PrincipalIdealOneVariable) {
    RingSpec r(QQ, 1);
    auto t = local_cohomology(r, {Monomial{1}}, MonomialIdeal(1), DegreeBox::cube(1, -4, 4));
    for (int a = -4; a <= 4; ++a) {
        EXPECT_EQ(t.at(0, {a}), 0u);
        EXPECT_EQ(t.at(1, {a}), a <= -1 ? 1u : 0u);
    }
    auto c = cech_cohomology(r, {Monomial{1}}, MonomialIdeal(1), DegreeBox::cube(1, -4, 4));
    for (int a = -4; a <= 4; ++a) EXPECT_EQ(c.at(0, {a}), 1u);
}

TEST(KoszulCech, UnitIdealKillsEverything) {
    RingSpec r(QQ, 2);
    auto t = local_cohomology(r, {Monomial{0, 0}}, MonomialIdeal(2), DegreeBox::cube(2, -2, 2));
    EXPECT_TRUE(t.nonzero_cells().empty());
    auto c = cech_cohomology(r, {Monomial{0, 0}}, MonomialIdeal(2), DegreeBox::cube(2, -2, 2));
    for (const auto& a : c.box().points()) EXPECT_EQ(c.at(0, a), (a[0] >= 0 && a[1] >= 0) ? 1u : 0u);
    EXPECT_TRUE(les_check(r, {Monomial{0, 0}}, MonomialIdeal(2), DegreeBox::cube(2, -2, 2)).passed);
}

TEST(KoszulCech, MaximalIdealTwoVariables) {
    RingSpec r(QQ, 2);
    DegreeBox box = DegreeBox::cube(2, -4, 4);
    auto t = local_cohomology(r, {Monomial{1, 0}, Monomial{0, 1}}, MonomialIdeal(2), box);
    for (const auto& a : box.points()) {
        EXPECT_EQ(t.at(0, a), 0u);
        EXPECT_EQ(t.at(1, a), 0u);
        EXPECT_EQ(t.at(2, a), (a[0] <= -1 && a[1] <= -1) ? 1u : 0u);
    }
    auto c = cech_cohomology(r, {Monomial{1, 0}, Monomial{0, 1}}, MonomialIdeal(2), box);
    for (const auto& a : box.points()) EXPECT_EQ(c.at(1, a), t.at(2, a));
}

TEST(KoszulCech, ComplexShapes) {
    RingSpec r(QQ, 3);
    auto cech = build_cech(r, {Monomial{1, 0, 0}, Monomial{0, 1, 0}, Monomial{0, 0, 1}});
    EXPECT_EQ(cech.module(0).summand_count(), 3u);
    EXPECT_EQ(cech.module(1).summand_count(), 3u);
    EXPECT_EQ(cech.module(2).summand_count(), 1u);
    RingSpec r2(QQ, 2);
    auto k = build_unstable_koszul(r2, {Monomial{1, 0}, Monomial{0, 1}}, 1);
    EXPECT_EQ(k.module(0).summand_count(), 1u);
    EXPECT_EQ(k.module(1).summand_count(), 2u);
    EXPECT_EQ(k.module(2).summand_count(), 1u);
    for (const auto& a : DegreeBox::cube(2, -2, 2).points()) EXPECT_TRUE(k.is_complex_at(a));
    RingSpec r1(QQ, 1);
    auto k1 = build_unstable_koszul(r1, {Monomial{1}}, 1);
    EXPECT_EQ(k1.cohomology_dimension(0, {0}), 0u);
    EXPECT_EQ(k1.cohomology_dimension(1, {-1}), 1u);  // (k[x]/x)(1) in degree -1
    EXPECT_EQ(k1.cohomology_dimension(1, {0}), 0u);
}

TEST(KoszulCech, RepeatedGenerator) {
    RingSpec r(QQ, 1);
    DegreeBox box = DegreeBox::cube(1, -3, 3);
    auto single = build_unstable_koszul(r, {Monomial{1}}, 1);
    auto doubled = build_unstable_koszul(r, {Monomial{1}, Monomial{1}}, 1);
    // K(x, x) = K(x) tensor K(x): H^1 and H^2 both equal H^1(K(x)) shifted.
    for (int a = -3; a <= 3; ++a) {
        EXPECT_EQ(doubled.cohomology_dimension(1, {a}), single.cohomology_dimension(1, {a}));
        EXPECT_EQ(doubled.cohomology_dimension(2, {a}), single.cohomology_dimension(1, {a + 1}));
    }
}

TEST(KoszulCech, ColimitPrincipal) {
    RingSpec r(QQ, 1);
    KoszulColimitOptions o;
    o.schedule = ExponentSchedule::Linear;
    auto res = koszul_colimit_cohomology(r, {Monomial{1}}, MonomialIdeal(1), DegreeBox::cube(1, -1, 0), o);
    for (const auto& h : res.history) {
        EXPECT_EQ(h.at(1, {-1}), 1u);
        EXPECT_EQ(h.at(0, {0}), 0u);
    }
    EXPECT_EQ(res.table.at(1, {-1}), 1u);
}

TEST(KoszulCech, TransitionsAreChainMaps) {
    RingSpec r(QQ, 2);
    std::vector<Monomial> gens{Monomial{1, 1}, Monomial{2, 0}};
    auto k1 = build_unstable_koszul(r, gens, 1), k3 = build_unstable_koszul(r, gens, 3);
    auto f = koszul_transition(r, gens, 1, 3);
    for (const auto& a : DegreeBox::cube(2, -4, 3).points()) EXPECT_TRUE(commutes_at(k1, k3, f, a));
}

TEST(KoszulCech, LesExamples) {
    RingSpec r(QQ, 1);
    auto rep = les_check(r, {Monomial{1}}, MonomialIdeal(1), DegreeBox::cube(1, -3, 3));
    EXPECT_TRUE(rep.passed) << rep.witness;
}

TEST(KoszulCech, RadicalInvariance) {
    RingSpec r(QQ, 2);
    DegreeBox box = DegreeBox::cube(2, -4, 4);
    EXPECT_TRUE(radical_invariance_check(r, {Monomial{1, 0}, Monomial{0, 1}},
                                         {Monomial{2, 0}, Monomial{0, 3}, Monomial{1, 1}}, MonomialIdeal(2), box)
                    .passed);
    EXPECT_TRUE(radical_invariance_check(r, {Monomial{1, 0}}, {Monomial{5, 0}}, MonomialIdeal(2), box).passed);
    EXPECT_THROW(radical_invariance_check(r, {Monomial{1, 0}}, {Monomial{0, 1}}, MonomialIdeal(2), box), RadicalsDiffer);
}

TEST(KoszulCech, VanishingExamples) {
    RingSpec r(QQ, 2);
    DegreeBox box = DegreeBox::cube(2, -4, 4);
    std::vector<Monomial> m{Monomial{1, 0}, Monomial{0, 1}};
    auto v = vanishing_report(r, m, MonomialIdeal(2), box);
    EXPECT_TRUE(v.passed);
    EXPECT_EQ(v.computed_depth, 2);
    EXPECT_EQ(v.krull_dim, 2);
    auto v1 = vanishing_report(r, m, MonomialIdeal(2, {{1, 1}}), box);
    EXPECT_EQ(v1.computed_depth, 1);
    EXPECT_EQ(v1.krull_dim, 1);
    auto v0 = vanishing_report(r, m, MonomialIdeal(2, {{2, 0}, {1, 1}}), box);
    EXPECT_EQ(v0.computed_depth, 0);
    EXPECT_TRUE(v0.passed);
    auto unit = vanishing_report(r, {Monomial{0, 0}}, MonomialIdeal(2), box);
    EXPECT_TRUE(unit.im_equals_m);
    EXPECT_TRUE(unit.passed);
    EXPECT_FALSE(unit.computed_depth.has_value());
}

TEST(KoszulCech, Errors) {
    RingSpec r(QQ, 2);
    EXPECT_THROW(local_cohomology(r, std::vector<Monomial>{}, MonomialIdeal(2), DegreeBox::cube(2, 0, 0)), EmptyIdeal);
    auto z = zero_ideal_cohomology(r, MonomialIdeal(2), DegreeBox::cube(2, -1, 1));
    EXPECT_EQ(z.at(0, {0, 0}), 1u);
    EXPECT_EQ(z.at(0, {-1, 0}), 0u);
}

// Local cohomology equals the brute-force large-exponent Koszul oracle, and
// the colimit and Cech views agree with it, on random monomial data.
TEST(KoszulCechProperty, AgreesWithOracle) {
    oracle::Gen g(41);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = static_cast<std::size_t>(g.uniform(1, 3));
        FieldSpec f = trial % 2 ? QQ : F2;
        auto gens = g.monomials(n, g.uniform(1, 3), 2);
        MonomialIdeal ring_rel = g.coin() ? MonomialIdeal(n) : MonomialIdeal(n, g.monomials(n, 1, 3));
        MonomialIdeal mod_rel = g.coin() ? MonomialIdeal(n) : MonomialIdeal(n, g.monomials(n, g.uniform(1, 2), 3));
        if (ideal_sum(ring_rel, mod_rel).is_unit()) continue;
        RingSpec r(f, n, ring_rel);
        DegreeBox box = DegreeBox::cube(n, n == 3 ? -3 : -4, 3);
        auto t = local_cohomology(r, gens, mod_rel, box);
        expect_matches_oracle(t, gens, mod_rel, ring_rel, oracle::characteristic(f));
        auto rep = les_check(r, gens, mod_rel, box);
        ASSERT_TRUE(rep.passed) << rep.witness;
        auto euler = euler_check(build_stable_koszul(coefficient_ring(r, mod_rel), gens), box);
        ASSERT_TRUE(euler.passed) << euler.witness;
        ASSERT_TRUE(vanishing_report(t, r, gens, mod_rel).passed);
    }
}

TEST(KoszulCechProperty, DeterministicUnderThreads) {
    RingSpec r(F2, 3);
    std::vector<Monomial> gens{Monomial{1, 1, 0}, Monomial{0, 1, 1}, Monomial{1, 0, 1}};
    DegreeBox box = DegreeBox::cube(3, -3, 3);
    auto one = local_cohomology(r, gens, MonomialIdeal(3), box, TableOptions{1});
    auto four = local_cohomology(r, gens, MonomialIdeal(3), box, TableOptions{4});
    EXPECT_EQ(one, four);
    EXPECT_EQ(one.to_json(), four.to_json());
}
