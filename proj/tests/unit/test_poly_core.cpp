#include <gtest/gtest.h>

#include "loco/errors.hpp"
#include "loco/monomial_ideal.hpp"
#include "oracles.hpp"

using namespace loco;

namespace {
MonomialIdeal ideal(std::size_t n, std::vector<Monomial> g) { return MonomialIdeal(n, g); }
}  // namespace

TEST(PolyCore, MinimalGenerators) {
    EXPECT_EQ(minimal_generators(2, {{2, 0}, {3, 0}, {0, 1}}), ideal(2, {{2, 0}, {0, 1}}));
    EXPECT_EQ(minimal_generators(2, {{1, 1}, {2, 0}, {0, 2}}).size(), 3u);
    EXPECT_TRUE(minimal_generators(2, {}).is_zero());
    EXPECT_THROW(MonomialIdeal(2, {Monomial{-1, 0}}), NegativeExponent);
}

TEST(PolyCore, Powers) {
    EXPECT_EQ(ideal_power(ideal(2, {{1, 0}, {0, 1}}), 2), ideal(2, {{2, 0}, {1, 1}, {0, 2}}));
    EXPECT_EQ(ideal_power(ideal(1, {{1}}), 3), ideal(1, {{3}}));
    EXPECT_EQ(ideal_power(ideal(2, {{2, 0}, {0, 1}}), 2), ideal(2, {{4, 0}, {2, 1}, {0, 2}}));
    EXPECT_EQ(generator_power(ideal(2, {{1, 1}, {2, 0}}), 3), ideal(2, {{3, 3}, {6, 0}}));
}

TEST(PolyCore, Radical) {
    EXPECT_EQ(radical(ideal(2, {{2, 0}, {0, 3}})), ideal(2, {{1, 0}, {0, 1}}));
    EXPECT_EQ(radical(ideal(2, {{2, 1}})), ideal(2, {{1, 1}}));
    EXPECT_EQ(radical(ideal(2, {{1, 0}})), ideal(2, {{1, 0}}));
}

TEST(PolyCore, Membership) {
    auto i = ideal(2, {{2, 0}, {0, 2}});
    EXPECT_TRUE(membership({2, 1}, i));
    EXPECT_FALSE(membership({1, 1}, i));
    EXPECT_FALSE(membership({5, 5}, MonomialIdeal(2)));
    EXPECT_TRUE(ideal(2, {{0, 0}}).is_unit());
}

TEST(PolyCore, KrullDim) {
    FieldSpec q = FieldSpec::rationals();
    EXPECT_EQ(krull_dim(RingSpec(q, 2)), 2);
    EXPECT_EQ(krull_dim(RingSpec(q, 2, ideal(2, {{1, 1}}))), 1);
    EXPECT_EQ(krull_dim(RingSpec(q, 2, ideal(2, {{2, 0}, {1, 1}, {0, 2}}))), 0);
    EXPECT_EQ(krull_dim(RingSpec(q, 3, ideal(3, {{1, 1, 0}, {0, 1, 1}}))), 2);
}

// Brute force over a small exponent cube: membership is divisibility by some
// generator, radicals contain exactly the monomials with a power inside.
TEST(PolyCoreProperty, IdealOperationsAgainstEnumeration) {
    oracle::Gen g(21);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = static_cast<std::size_t>(g.uniform(1, 3));
        auto gens = g.monomials(n, g.uniform(1, 4), 3);
        auto a = MonomialIdeal(n, gens), b = MonomialIdeal(n, g.monomials(n, g.uniform(1, 3), 3));
        auto rad = radical(a);
        ASSERT_EQ(radical(rad), rad);
        ASSERT_TRUE(rad.contains(a));
        ASSERT_EQ(radical(generator_power(a, 3)), rad);
        ASSERT_EQ(radical(ideal_power(a, 2)), rad);
        auto sum = ideal_sum(a, b), prod = ideal_product(a, b);
        ASSERT_TRUE(sum.contains(a) && sum.contains(b));
        ASSERT_TRUE(a.contains(prod) && b.contains(prod));
        for (int k = 0; k < 30; ++k) {
            Monomial m = g.monomial(n, 5, false);
            bool divisible = false;
            for (const auto& x : gens) divisible = divisible || x.divides(m);
            ASSERT_EQ(membership(m, a), divisible);
            ASSERT_EQ(sum.contains(m), a.contains(m) || b.contains(m));
            ASSERT_EQ(rad.contains(m), a.contains(m.pow(4)) || a.contains(m.pow(8)));
        }
    }
}
