#include "support/common.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

using namespace bayesbias;
using bayesbias::testing::R;
namespace bt = bayesbias::testing;

namespace {

BalancingFunction constant(std::size_t n, const Rational& v) { return {std::vector<Rational>(n, v)}; }

}  // namespace

TEST(Balance, Example1IsUnbalanced) {
  EXPECT_FALSE(find_balancing(bt::load_fixture<ModelOfEvidence>("example1.json")).has_value());
}

TEST(Balance, Example3IsBalanced) {
  const auto e = bt::load_fixture<ModelOfEvidence>("example3.json");
  const auto t = find_balancing(e);
  ASSERT_TRUE(t.has_value());
  EXPECT_TRUE(verify_balancing(e, *t));
  EXPECT_TRUE(verify_balancing(e, constant(3, R(1, 2))));
  EXPECT_FALSE(verify_balancing(e, constant(3, R(1, 3))));
  // The fan of three pairs has exactly one balancing function.
  EXPECT_EQ(*t, constant(3, R(1, 2)));
}

TEST(Balance, PartitionGetsAllOnes) {
  const auto e = bt::load_fixture<ModelOfEvidence>("partition.json");
  EXPECT_EQ(find_balancing(e), constant(2, R(1)));
  EXPECT_TRUE(verify_balancing(e, constant(2, R(1))));
}

TEST(Balance, VerifyRejectsOutOfRange) {
  const auto e = bt::load_fixture<ModelOfEvidence>("partition.json");
  EXPECT_FALSE(verify_balancing(e, constant(2, R(0))));
  EXPECT_FALSE(verify_balancing(e, {{R(1), R(2)}}));
  EXPECT_FALSE(verify_balancing(e, constant(3, R(1))));
}

TEST(Balance, NullStatesAreExempt) {
  // z has probability zero and lies in both events; only a and b constrain θ.
  const Frame f({"a", "b", "z"}, {{"A", {"a", "z"}}, {"B", {"b", "z"}}});
  const ModelOfEvidence e(f, {R(1, 2), R(1, 2), R(0)});
  ASSERT_TRUE(validate_evidence(e).empty());
  EXPECT_EQ(find_balancing(e), constant(2, R(1)));
  const ModelOfEvidence full(f, {R(1, 3), R(1, 3), R(1, 3)});
  EXPECT_FALSE(find_balancing(full).has_value());
}

TEST(Balance, ExtractRejectsNonJustifying) {
  const auto e = bt::load_fixture<ModelOfEvidence>("example1.json");
  const auto m = bt::load_fixture<ModelOfBeliefs>("example2.json");
  EXPECT_THROW((void)extract_balancing(m, e), std::invalid_argument);
}

TEST(Balance, ExtractOnPartitionIdentity) {
  const auto e = bt::load_fixture<ModelOfEvidence>("partition.json");
  const ModelOfBeliefs m(e.frame(), std::vector<World>{{0, "x", 0, R(1, 2)}, {1, "x", 1, R(1, 4)}, {2, "x", 1, R(1, 4)}});
  EXPECT_EQ(extract_balancing(m, e), constant(2, R(1)));
}

TEST(Balance, AgreesWithBruteForceSearch) {
  std::mt19937 rng(3);
  int balanced = 0, unbalanced = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto e = bt::random_evidence(rng, 4, 4);
    const bool expected = bt::brute_force_balanced(bt::plain(e));
    const auto t = find_balancing(e);
    ASSERT_EQ(t.has_value(), expected) << "trial " << trial;
    if (t) {
      ++balanced;
      EXPECT_TRUE(verify_balancing(e, *t));
    } else {
      ++unbalanced;
    }
  }
  EXPECT_GT(balanced, 30);
  EXPECT_GT(unbalanced, 30);
}

TEST(Balance, SystemShape) {
  const auto e = bt::load_fixture<ModelOfEvidence>("example1.json");
  const auto sys = balancing_system(e);
  ASSERT_EQ(sys.size(), 5u);  // three state rows, two positivity rows
  EXPECT_EQ(sys[1].coefficients.size(), 2u);  // h lies in both events
  EXPECT_EQ(sys[3].relation, Relation::GT);
}
