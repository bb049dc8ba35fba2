#include "support/common.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace bayesbias;
using bayesbias::testing::R;
namespace bt = bayesbias::testing;

namespace {

ModelOfEvidence example1() {
  Frame f({"e", "h", "f"}, {{"Empty", {"e", "h"}}, {"F", {"h", "f"}}});
  return ModelOfEvidence(f, {R(3, 10), R(2, 5), R(3, 10)});
}

std::set<Clause> clauses(const ValidationReport& r) {
  std::set<Clause> out;
  for (const auto& v : r) out.insert(v.clause);
  return out;
}

}  // namespace

TEST(Frame, ResolvesNamesAndSets) {
  const Frame f = example1().frame();
  EXPECT_EQ(f.state_count(), 3u);
  EXPECT_EQ(f.event_count(), 2u);
  EXPECT_EQ(f.state_index("h"), 1u);
  EXPECT_FALSE(f.find_state("x").has_value());
  EXPECT_TRUE(f.event_ref("OMEGA").is_omega());
  EXPECT_EQ(f.event_ref("F").index(), 1u);
  EXPECT_EQ(f.resolve(EventRef::omega()), f.omega());
  EXPECT_EQ(f.names_in(f.resolve(f.event_ref("Empty"))), (std::vector<std::string>{"e", "h"}));
  EXPECT_EQ(f.all_events().size(), 3u);
  EXPECT_TRUE(f.all_events().front().is_omega());
  EXPECT_THROW((void)f.event_ref("G"), std::invalid_argument);
  EXPECT_THROW((void)f.state_index("x"), std::invalid_argument);
}

TEST(Frame, EventSlotsRoundTrip) {
  EXPECT_EQ(EventRef::omega().slot(), 0u);
  EXPECT_EQ(EventRef::event(2).slot(), 3u);
  EXPECT_TRUE(EventRef::from_slot(0).is_omega());
  EXPECT_EQ(EventRef::from_slot(3).index(), 2u);
}

TEST(Frame, ConstructionRejectsUnresolvableNames) {
  EXPECT_THROW(Frame({"a", "a"}, {}), std::invalid_argument);
  EXPECT_THROW(Frame({""}, {}), std::invalid_argument);
  EXPECT_THROW(Frame({"a", "b"}, {{"OMEGA", {"a"}}}), std::invalid_argument);
  EXPECT_THROW(Frame({"a", "b"}, {{"A", {"a"}}, {"A", {"b"}}}), std::invalid_argument);
  EXPECT_THROW(Frame({"a", "b"}, {{"A", {"c"}}}), std::invalid_argument);
  EXPECT_THROW(Frame({"a", "b"}, {{"", {"a"}}}), std::invalid_argument);
}

TEST(Evidence, Example1IsValid) {
  EXPECT_TRUE(validate_evidence(example1()).empty());
}

TEST(Evidence, HeuristicPosteriorExample1) {
  const auto e = example1();
  const Frame& f = e.frame();
  const auto empty = f.event_ref("Empty");
  EXPECT_EQ(conditional_probability(e, f.states_of({"e"}), empty), R(3, 7));
  EXPECT_EQ(conditional_probability(e, f.states_of({"h"}), empty), R(4, 7));
  EXPECT_EQ(conditional_probability(e, f.states_of({"h"}), f.event_ref("F")), R(4, 7));
  EXPECT_EQ(conditional_probability(e, f.states_of({"e", "f"}), EventRef::omega()), R(3, 5));
  EXPECT_EQ(e.probability(empty), R(7, 10));
}

TEST(Evidence, ConditioningOnNullEventThrows) {
  Frame f({"a", "b", "z"}, {{"A", {"a"}}, {"Z", {"z"}}});
  ModelOfEvidence e(f, {R(1, 2), R(1, 2), R(0)});
  EXPECT_THROW((void)conditional_probability(e, f.states_of({"a"}), f.event_ref("Z")), std::domain_error);
}

TEST(Evidence, PriorSizeMismatchThrows) {
  EXPECT_THROW(ModelOfEvidence(example1().frame(), {R(1)}), std::invalid_argument);
}

TEST(Evidence, ReportsEachClause) {
  const std::vector<std::string> s{"a", "b", "c"};
  auto check = [&](std::vector<EventSpec> events, std::vector<Rational> prior, Clause expected) {
    const ModelOfEvidence e(Frame(s, std::move(events)), std::move(prior));
    const auto found = clauses(validate_evidence(e));
    EXPECT_TRUE(found.contains(expected)) << clause_name(expected);
  };
  const std::vector<Rational> third{R(1, 3), R(1, 3), R(1, 3)};
  check({{"A", {"a", "b"}}, {"B", {"b", "c"}}}, {R(-1, 3), R(2, 3), R(2, 3)}, Clause::PriorNonNegative);
  check({{"A", {"a", "b"}}, {"B", {"b", "c"}}}, {R(1, 3), R(1, 3), R(1, 2)}, Clause::PriorNormalized);
  check({{"A", {"a"}}, {"B", {"b", "c"}}}, {R(0), R(1, 2), R(1, 2)}, Clause::EventPositive);
  check({{"A", {"a", "b"}}, {"B", {"b", "c"}}}, {R(1, 2), R(1, 2), R(0)}, Clause::PairwiseDifferencePositive);
  check({{"A", {}}, {"B", {"a", "b", "c"}}}, third, Clause::EventNonEmpty);
  check({{"A", {"a"}}, {"B", {"b"}}}, third, Clause::EventsCoverStates);
  check({{"A", {"a"}}, {"B", {"a", "b", "c"}}}, third, Clause::EventNotOmega);
  check({{"A", {"a", "b"}}, {"B", {"a", "b"}}, {"C", {"c"}}}, third, Clause::EventsDistinct);
  check({{"A", {"a", "b"}}}, third, Clause::AtLeastTwoEvents);
}

TEST(Evidence, NestedEventsNeedPositiveDifference) {
  // D ⊂ C with P(C \ D) = 0 fails; with positive difference it passes.
  Frame f({"a", "b", "c"}, {{"C", {"a", "b"}}, {"D", {"b"}}, {"X", {"c"}}});
  EXPECT_TRUE(clauses(validate_evidence(ModelOfEvidence(f, {R(0), R(1, 2), R(1, 2)})))
                  .contains(Clause::PairwiseDifferencePositive));
  EXPECT_TRUE(validate_evidence(ModelOfEvidence(f, {R(1, 4), R(1, 4), R(1, 2)})).empty());
}

TEST(Evidence, ClauseNamesAreSnakeCase) {
  EXPECT_EQ(clause_name(Clause::PairwiseDifferencePositive), "pairwise_difference_positive");
  EXPECT_EQ(clause_name(Clause::EventsCoverStates), "events_cover_states");
}

TEST(Evidence, ValidatorAgreesWithLiteralClauses) {
  std::mt19937 rng(7);
  int valid = 0;
  for (int trial = 0; trial < 1500; ++trial) {
    const auto e = bt::random_evidence_any(rng, 5, 4, 30);
    const auto expected = bt::brute_force_clauses(bt::plain(e));
    const auto found = clauses(validate_evidence(e));
    ASSERT_EQ(found, std::set<Clause>(expected.begin(), expected.end())) << "trial " << trial;
    if (found.empty()) ++valid;
  }
  EXPECT_GT(valid, 50);
}

TEST(Evidence, ValidationErrorCarriesReport) {
  const ModelOfEvidence bad(Frame({"a", "b"}, {{"A", {"a"}}}), {R(1, 2), R(1, 2)});
  const ValidationError err(validate_evidence(bad));
  EXPECT_EQ(err.report().size(), 2u);  // b is also uncovered
  EXPECT_NE(std::string(err.what()).find("at_least_two_events"), std::string::npos);
}
