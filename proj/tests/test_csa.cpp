#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace tits;

namespace {

const Field Q = Field::rational();

BrauerClass inv(std::initializer_list<std::pair<Int, const char*>> entries) {
  BrauerClass::LocalInvariants m;
  for (auto [p, x] : entries) m[p == 0 ? Place::real() : Place::finite(p)] = QZ::parse(x);
  return BrauerClass::rational(m);
}

}  // namespace

TEST(CSA, InvariantsEnforced) {
  EXPECT_THROW(CSA(inv({{2, "1/2"}, {3, "1/2"}}), 3), domain_error);
  EXPECT_THROW(CSA(BrauerClass::zero(Q), 0), domain_error);
  CSA a(inv({{3, "1/3"}, {7, "2/3"}}), 6);
  EXPECT_EQ(a.period(), 3);
  EXPECT_EQ(a.index(), 3);
  EXPECT_FALSE(a.is_division());
}

TEST(CSA, QuaternionExamples) {
  CSA split = quaternion(1, 5, Q);
  EXPECT_TRUE(split.is_split());
  EXPECT_EQ(split.index(), 1);

  CSA h = quaternion(-1, -1, Field::real());
  EXPECT_FALSE(h.is_split());
  EXPECT_EQ(h.index(), 2);
  EXPECT_TRUE(quaternion(-1, 1, Field::real()).is_split());

  CSA a = quaternion(-1, 3, Q);
  EXPECT_EQ(a.brauer_class(), inv({{2, "1/2"}, {3, "1/2"}}));
  EXPECT_EQ(a.index(), 2);
  EXPECT_EQ(quaternion(-1, -1, Q).brauer_class(), inv({{0, "1/2"}, {2, "1/2"}}));
  EXPECT_THROW(quaternion(-1, 3, Field::padic(3)), capability_error);
}

TEST(CSA, QuaternionClassAgreesWithHilbertSymbols) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    Int a = oracle::random_square_free(rng, 200), b = oracle::random_square_free(rng, 200);
    BrauerClass c = quaternion(a, b, Q).brauer_class();
    for (const auto& v : oracle::places_for({a, b})) {
      if (v.prime > 5) continue;  // brute force is limited to small primes
      int want = v.is_real() ? oracle::hilbert_real(a, b) : oracle::hilbert_bruteforce(a, b, v.prime);
      EXPECT_EQ(c.invariant_at(v).is_zero(), want == 1) << a << "," << b << " at " << v.str();
    }
  }
}

TEST(CSA, TensorExamples) {
  CSA a = quaternion(-1, 3, Q);
  EXPECT_EQ(tensor(a, CSA::split(Q)), a);
  CSA aa = tensor(a, a);
  EXPECT_TRUE(aa.brauer_class().is_zero());
  EXPECT_EQ(aa.degree(), 4);
  CSA ab = tensor(a, quaternion(-1, 7, Q));
  EXPECT_EQ(ab.degree(), 4);
  EXPECT_EQ(ab.brauer_class(), inv({{3, "1/2"}, {7, "1/2"}}));
  EXPECT_THROW(tensor(a, quaternion(-1, -1, Field::real())), capability_error);
}

TEST(CSA, TensorIsCommutativeAndAssociative) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    BrauerClass x = oracle::random_rational_class(rng, 6), y = oracle::random_rational_class(rng, 4),
                z = oracle::random_rational_class(rng, 3);
    CSA a(x, 12), b(y, 4), c(z, 3);
    EXPECT_EQ(tensor(a, b).brauer_class(), tensor(b, a).brauer_class());
    EXPECT_EQ(tensor(tensor(a, b), c).brauer_class(), tensor(a, tensor(b, c)).brauer_class());
    EXPECT_EQ(tensor(tensor(a, b), c).degree(), 144);
  }
}

TEST(CSA, TensorPowerExamplesAndOrders) {
  CSA a = quaternion(-1, 3, Q);
  EXPECT_TRUE(tensor_power(a, 0).is_zero());
  EXPECT_TRUE(tensor_power(a, 2).is_zero());
  CSA b(inv({{3, "1/3"}, {7, "2/3"}}), 3);
  EXPECT_EQ(tensor_power(b, 2), inv({{3, "2/3"}, {7, "1/3"}}));
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    BrauerClass x = oracle::random_rational_class(rng, 12);
    CSA c(x, 12);
    EXPECT_TRUE(tensor_power(c, c.period()).is_zero());
    for (Int k = 0; k < 14; ++k) EXPECT_EQ(tensor_power(c, k).order(), c.period() / std::gcd(k, c.period()));
  }
}

TEST(CSA, CoprimeIndexes) {
  CSA q = quaternion(-1, 3, Q);
  CSA t(inv({{3, "1/3"}, {7, "2/3"}}), 3);
  EXPECT_TRUE(coprime_indexes(CSA::split(Q, 5), q));
  EXPECT_FALSE(coprime_indexes(q, quaternion(-1, 7, Q)));
  EXPECT_TRUE(coprime_indexes(q, t));
}

TEST(Subgroup, Examples) {
  EXPECT_EQ(subgroup_generated(Q, {}).size(), 1u);
  BrauerClass c1 = quaternion(-1, 3, Q).brauer_class(), c2 = quaternion(-1, 7, Q).brauer_class();
  auto g1 = subgroup_generated(Q, {c1});
  EXPECT_EQ(g1.size(), 2u);
  EXPECT_TRUE(g1.contains(c1));
  auto g = subgroup_generated(Q, {c1, c2});
  EXPECT_EQ(g.size(), 4u);
  EXPECT_TRUE(g.contains(c1.add(c2)));
}

TEST(Subgroup, MatchesBruteForceClosure) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 60; ++i) {
    std::vector<BrauerClass> gens;
    for (int k = 0; k < 3; ++k) gens.push_back(oracle::random_rational_class(rng, k == 0 ? 4 : 3));
    auto g = subgroup_generated(Q, gens);
    auto want = oracle::closure_bruteforce(Q, gens);
    EXPECT_EQ(std::set<BrauerClass>(g.elements().begin(), g.elements().end()), want);
  }
}

TEST(Subgroup, CapIsEnforced) {
  BrauerClass c = inv({{3, "1/97"}, {5, "96/97"}});
  EXPECT_THROW(subgroup_generated(Q, {c}, 50), capability_error);
  EXPECT_EQ(subgroup_generated(Q, {c}).size(), 97u);
}

TEST(CyclicSubgroup, Examples) {
  CSA a = quaternion(-1, 3, Q);
  EXPECT_TRUE(same_cyclic_subgroup(a, a));
  EXPECT_FALSE(same_cyclic_subgroup(a, CSA::split(Q, 2)));
  BrauerClass c = inv({{3, "1/3"}, {7, "2/3"}});
  EXPECT_TRUE(same_cyclic_subgroup(c, c.times(2)));
}

TEST(CyclicSubgroup, AgreesWithSubgroupEquality) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 300; ++i) {
    BrauerClass x = oracle::random_rational_class(rng, 12);
    BrauerClass y = i % 2 ? x.times(static_cast<Int>(rng() % 13)) : oracle::random_rational_class(rng, 12);
    EXPECT_EQ(same_cyclic_subgroup(x, y), subgroup_generated(Q, {x}) == subgroup_generated(Q, {y}));
  }
}
