#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "splitter/errors.hpp"
#include "splitter/num_core.hpp"

using namespace splitter;

TEST(Arithmetic, MulPowInv) {
  const u64 big = (u64{1} << 61) - 1;
  EXPECT_EQ(mul_mod(big - 1, big - 1, big), 1u);
  EXPECT_EQ(pow_mod(2, 61, big), 1u);
  EXPECT_EQ(pow_mod(7, 0, 13), 1u);
  EXPECT_EQ(inv_mod(3, 7), 5u);
  EXPECT_THROW(inv_mod(4, 8), InvalidInput);
  EXPECT_EQ(reduce_signed(-4, 97), 93u);
  EXPECT_EQ(reduce_signed(-194, 97), 0u);
}

TEST(Primality, AgreesWithTrialDivision) {
  for (u64 n = 0; n < 20000; ++n) ASSERT_EQ(is_prime(n), oracle::is_prime(n)) << n;
}

TEST(Primality, LargeKnownValues) {
  EXPECT_TRUE(is_prime(2693329));
  EXPECT_TRUE(is_prime((u64{1} << 61) - 1));
  EXPECT_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2,3,5,7
  EXPECT_FALSE(is_prime(u64{4294967291} * 4294967279ULL));
}

TEST(Factorize, Reconstructs) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const u64 n = (rng() >> 4) | 1;
    const FactoredInteger f = factorize(n);
    u64 prod = 1;
    for (const auto& pp : f.factors()) {
      EXPECT_TRUE(is_prime(pp.prime));
      for (unsigned e = 0; e < pp.exponent; ++e) prod *= pp.prime;
    }
    EXPECT_EQ(prod, n);
  }
  EXPECT_EQ(factorize(12720).to_string(), "2^4 * 3 * 5 * 53");
  EXPECT_EQ(factorize(1).factors().size(), 0u);
}

TEST(Valuation, Capped) {
  EXPECT_EQ(valuation(96, 2), 5u);
  EXPECT_EQ(valuation(7, 2), 0u);
  EXPECT_EQ(capped_valuation(0, 2, 48), 4u);
  EXPECT_EQ(capped_valuation(960, 2, 1488), 4u);
  EXPECT_EQ(capped_valuation(1222, 2, 1488), 1u);
}

TEST(PrimitiveRoot, SmallestMatchesOracle) {
  for (u64 q = 3; q < 400; q += 2) {
    if (!oracle::is_prime(q)) continue;
    const auto roots = oracle::primitive_roots(q);
    EXPECT_EQ(find_primitive_root(q), roots.front()) << q;
    EXPECT_EQ(all_primitive_roots(q), roots) << q;
  }
}

TEST(PrimitiveRoot, WorkedPrimes) {
  const std::pair<u64, u64> known[] = {{103, 5},     {421, 2},     {463, 3},     {1171, 2},    {1489, 14},
                                       {12721, 13},  {307009, 7},  {475729, 13}, {2693329, 13}, {861361, 11}};
  for (auto [q, g] : known) EXPECT_EQ(find_primitive_root(q), g) << q;
}

TEST(GroupCtx, RejectsBadInput) {
  EXPECT_THROW(GroupCtx(9), InvalidInput);
  EXPECT_THROW(GroupCtx(2), InvalidInput);
  EXPECT_THROW(GroupCtx(13, 3), InvalidInput);  // 3 has order 3
}

TEST(DiscreteLog, TableAndPohligHellmanAgreeWithOracle) {
  for (u64 q : {101ULL, 463ULL, 1489ULL, 12721ULL}) {
    const GroupCtx table(q);
    const GroupCtx ph(q, std::nullopt, GroupOptions{0});
    ASSERT_TRUE(table.has_index_table());
    ASSERT_FALSE(ph.has_index_table());
    for (u64 x = 1; x < q; x += (q < 2000 ? 1 : 37)) {
      const u64 expected = oracle::log(table.g(), x, q);
      ASSERT_EQ(table.log(x), expected) << q << " " << x;
      ASSERT_EQ(ph.log(x), expected) << q << " " << x;
      ASSERT_EQ(table.power(expected), x);
    }
  }
}

TEST(DiscreteLog, WorkedValues) {
  const GroupCtx c12721(12721);
  EXPECT_EQ(discrete_log(c12721, 2), 1570u);
  EXPECT_EQ(discrete_log(c12721, 3), 1934u);
  EXPECT_EQ(discrete_log(c12721, 4), 3140u);
  EXPECT_EQ(discrete_log(c12721, RationalUnit(-4)), 9500u);
  EXPECT_EQ(discrete_log(c12721, 6), 3504u);
  EXPECT_EQ(discrete_log(c12721, 16), 6280u);
  EXPECT_EQ(mult_order(c12721, RationalUnit(-4, 5)), 265u);

  const GroupCtx c307009(307009);
  EXPECT_EQ(discrete_log(c307009, 2), 280522u);
  EXPECT_EQ(discrete_log(c307009, 3), 134324u);
  EXPECT_EQ(mult_order(c307009, RationalUnit(-3, 4)), 1599u);
  EXPECT_EQ(mult_order(c307009, RationalUnit(-5, 6)), 369u);

  const GroupCtx c475729(475729);
  EXPECT_EQ(discrete_log(c475729, 2), 3786u);
  EXPECT_EQ(discrete_log(c475729, 3), 54066u);
  EXPECT_EQ(discrete_log(c475729, 5), 185182u);
  EXPECT_EQ(mult_order(c475729, RationalUnit(-2, 3)), 9911u);

  const GroupCtx c463(463);
  EXPECT_EQ(discrete_log(c463, 2), 34u);
  EXPECT_EQ(discrete_log(c463, RationalUnit(-2, 3)), 264u);
  EXPECT_EQ(discrete_log(c463, RationalUnit(-4, 5)), 174u);
  EXPECT_EQ(mult_order(c463, RationalUnit(-2, 3)), 7u);
  EXPECT_EQ(mult_order(c463, RationalUnit(-4, 5)), 77u);

  const GroupCtx c1489(1489);
  EXPECT_EQ(discrete_log(c1489, 2), 1222u);
  EXPECT_EQ(discrete_log(c1489, 3), 190u);
  EXPECT_EQ(discrete_log(c1489, RationalUnit(-2, 3)), 288u);
  EXPECT_EQ(discrete_log(c1489, RationalUnit(-4, 5)), 960u);

  const GroupCtx c1171(1171);
  EXPECT_EQ(discrete_log(c1171, 3), 155u);
  EXPECT_EQ(discrete_log(c1171, RationalUnit(-2, 5)), 1158u);
  EXPECT_EQ(discrete_log(c1171, RationalUnit(-3, 4)), 2u * 9 * 41);
  EXPECT_EQ(mult_order(c1171, RationalUnit(-2, 5)), 195u);
  EXPECT_EQ(mult_order(c1171, RationalUnit(-3, 4)), 65u);
}

TEST(RationalUnit, Residues) {
  EXPECT_EQ(RationalUnit(-4, 5).residue(97), oracle::residue(-4, 5, 97));
  EXPECT_EQ(RationalUnit(3, -4).residue(13), oracle::residue(-3, 4, 13));
  EXPECT_THROW(RationalUnit(1, 5).residue(5), InvalidInput);
  EXPECT_THROW(RationalUnit(10, 1).residue(5), InvalidInput);
  EXPECT_EQ(RationalUnit(-4, 5).to_string(), "-4/5");
  EXPECT_EQ(RationalUnit(6).to_string(), "6");
}

TEST(Order, MatchesOracle) {
  for (u64 q : {5ULL, 13ULL, 97ULL, 193ULL}) {
    const GroupCtx ctx(q);
    for (u64 x = 1; x < q; ++x) ASSERT_EQ(mult_order(ctx, static_cast<i64>(x)), oracle::order(x, q));
  }
}

TEST(Subgroup, IndexAndMembership) {
  const GroupCtx ctx(97);
  // index = gcd(ind(6), ind(16), 96)
  const u64 expected = std::gcd(std::gcd(discrete_log(ctx, 6), discrete_log(ctx, 16)), u64{96});
  EXPECT_EQ(subgroup_index(ctx, {6, 16}), expected);
  EXPECT_EQ(subgroup_index(ctx, std::span<const RationalUnit>{}), 96u);
  // Membership by enumerating the generated subgroup.
  std::set<u64> h{1};
  bool grew = true;
  while (grew) {
    grew = false;
    for (u64 x : std::vector<u64>(h.begin(), h.end())) {
      for (u64 g : {6, 16}) grew |= h.insert(x * g % 97).second;
    }
  }
  for (u64 x = 1; x < 97; ++x) EXPECT_EQ(in_subgroup(ctx, static_cast<i64>(x), {6, 16}), h.count(x) == 1) << x;
}

TEST(PowerResidue, QuarticBySearch) {
  for (u64 q : {13ULL, 29ULL, 37ULL, 101ULL}) {
    const GroupCtx ctx(q);
    std::set<u64> fourth;
    for (u64 b = 1; b < q; ++b) fourth.insert(oracle::powmod(b, 4, q));
    for (u64 x = 1; x < q; ++x) EXPECT_EQ(is_power_residue(ctx, static_cast<i64>(x), 4), fourth.count(x) == 1);
  }
  EXPECT_THROW(is_power_residue(GroupCtx(7), 2, 4), InvalidInput);
}
