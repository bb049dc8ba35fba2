#include "support/common.hpp"
#include "support/generators.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace bayesbias;
using bayesbias::testing::R;
namespace bt = bayesbias::testing;

namespace {

Frame frame1() { return Frame({"e", "h", "f"}, {{"Empty", {"e", "h"}}, {"F", {"h", "f"}}}); }

ModelOfEvidence example1() { return ModelOfEvidence(frame1(), {R(3, 10), R(2, 5), R(3, 10)}); }

// Ω × E′, labelled and typed by the event.
ModelOfBeliefs grid_model(const std::vector<Rational>& q) {
  const std::vector<std::string> s{"e", "h", "f"}, b{"Empty", "F"};
  std::vector<WorldSpec> worlds;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 2; ++j) worlds.push_back({s[i], b[j], b[j], q[2 * i + j]});
  }
  return ModelOfBeliefs(frame1(), worlds);
}

ModelOfBeliefs example2() { return grid_model({R(3, 10), R(0), R(1, 5), R(1, 5), R(0), R(3, 10)}); }

std::set<Clause> clauses(const ValidationReport& r) {
  std::set<Clause> out;
  for (const auto& v : r) out.insert(v.clause);
  return out;
}

}  // namespace

TEST(Beliefs, Example2IsValid) { EXPECT_TRUE(validate_beliefs(example2()).empty()); }

TEST(Beliefs, FixtureMatchesHandBuiltModel) {
  EXPECT_EQ(bt::load_fixture<ModelOfBeliefs>("example2.json"), example2());
}

TEST(Beliefs, EmbeddingsAndTypeEvents) {
  const auto m = example2();
  const Frame& f = m.frame();
  EXPECT_EQ(beta_event(m, EventRef::omega()).count(), 6u);
  EXPECT_EQ(beta_event(m, f.event_ref("Empty")).count(), 3u);
  EXPECT_EQ(alpha_embed(m, f.states_of({"e", "h"})).count(), 4u);
  EXPECT_EQ(m.mass(beta_event(m, f.event_ref("Empty"))), R(1, 2));
  EXPECT_EQ(m.describe(2), "(h, Empty)");
}

TEST(Beliefs, SoundPosteriorExample2) {
  const auto m = example2();
  const Frame& f = m.frame();
  const Rational sound = sound_posterior(m, f.states_of({"e"}), f.event_ref("Empty"));
  EXPECT_EQ(sound, R(3, 5));
  EXPECT_GT(sound, conditional_probability(example1(), f.states_of({"e"}), f.event_ref("Empty")));
  EXPECT_EQ(sound_posterior(m, f.states_of({"h"}), f.event_ref("Empty")), R(2, 5));
  EXPECT_EQ(sound_posterior(m, f.states_of({"h"}), EventRef::omega()), R(2, 5));
}

TEST(Beliefs, Example2ConformsButDoesNotJustify) {
  const auto check = check_justification(example2(), example1());
  EXPECT_TRUE(check.conforms);
  EXPECT_FALSE(check.justifies);
  ASSERT_EQ(check.mismatches.size(), 4u);
  // Ordered by event (Empty before F), then by state.
  const auto& first = check.mismatches[0];
  EXPECT_EQ(first.state, 0u);
  EXPECT_EQ(first.sound, R(3, 5));
  EXPECT_EQ(first.heuristic, R(3, 7));
  const auto& h_empty = check.mismatches[1];
  EXPECT_EQ(h_empty.state, 1u);
  EXPECT_EQ(h_empty.event.index(), 0u);
  EXPECT_EQ(h_empty.sound, R(2, 5));
  EXPECT_EQ(h_empty.heuristic, R(4, 7));
  EXPECT_NE(check.diagnostic.find("3/5"), std::string::npos);
}

TEST(Beliefs, NonConformingMarginal) {
  const auto m = grid_model({R(1, 10), R(0), R(2, 5), R(2, 5), R(0), R(1, 10)});
  const auto c = check_conformity(m, example1());
  EXPECT_FALSE(c.conforms);
  EXPECT_NE(c.diagnostic.find("state e"), std::string::npos);
  EXPECT_FALSE(check_justification(m, example1()).justifies);
}

TEST(Beliefs, NonConformingTypeLeak) {
  // (f, Empty) carries mass but f is outside Empty.
  const auto m = grid_model({R(3, 10), R(0), R(1, 5), R(1, 5), R(1, 10), R(1, 5)});
  EXPECT_TRUE(validate_beliefs(m).empty());
  const auto c = check_conformity(m, example1());
  EXPECT_FALSE(c.conforms);
  EXPECT_NE(c.diagnostic.find("type Empty"), std::string::npos);
}

TEST(Beliefs, FrameMismatchThrows) {
  const Frame other({"e", "h", "f"}, {{"Empty", {"e", "h"}}, {"G", {"h", "f"}}});
  const ModelOfEvidence e(other, {R(3, 10), R(2, 5), R(3, 10)});
  EXPECT_THROW((void)check_conformity(example2(), e), std::invalid_argument);
}

TEST(Beliefs, ReportsEachClause) {
  const auto bad_mass = grid_model({R(-1, 10), R(1, 10), R(1, 5), R(1, 5), R(1, 5), R(2, 5)});
  EXPECT_TRUE(clauses(validate_beliefs(bad_mass)).contains(Clause::MassNonNegative));
  const auto bad_total = grid_model({R(3, 10), R(0), R(1, 5), R(1, 5), R(0), R(2, 5)});
  EXPECT_TRUE(clauses(validate_beliefs(bad_total)).contains(Clause::MassNormalized));
  const auto one_type = grid_model({R(1, 2), R(0), R(1, 2), R(0), R(0), R(0)});
  const auto found = clauses(validate_beliefs(one_type));
  EXPECT_TRUE(found.contains(Clause::TypeOnto));
  EXPECT_TRUE(found.contains(Clause::TypeMassBounds));

  const ModelOfBeliefs dup(frame1(), std::vector<WorldSpec>{{"e", "x", "Empty", R(1, 2)}, {"e", "x", "F", R(1, 2)}});
  EXPECT_TRUE(clauses(validate_beliefs(dup)).contains(Clause::WorldsUnique));

  const ModelOfBeliefs bad_frame(Frame({"a", "b"}, {{"A", {"a"}}}),
                                 std::vector<WorldSpec>{{"a", "x", "A", R(1)}});
  EXPECT_TRUE(clauses(validate_beliefs(bad_frame)).contains(Clause::AtLeastTwoEvents));
}

TEST(Beliefs, OmegaTypeAndUnknownNamesRejected) {
  EXPECT_THROW(ModelOfBeliefs(frame1(), std::vector<WorldSpec>{{"e", "x", "OMEGA", R(1)}}), std::invalid_argument);
  EXPECT_THROW(ModelOfBeliefs(frame1(), std::vector<WorldSpec>{{"z", "x", "F", R(1)}}), std::invalid_argument);
  EXPECT_THROW(ModelOfBeliefs(frame1(), std::vector<WorldSpec>{{"e", "x", "G", R(1)}}), std::invalid_argument);
  EXPECT_THROW(ModelOfBeliefs(frame1(), std::vector<World>{{0, "x", 5, R(1)}}), std::invalid_argument);
}

TEST(Beliefs, SoundPosteriorOnNullTypeThrows) {
  const ModelOfBeliefs m(frame1(), std::vector<World>{{0, "x", 0, R(1)}, {2, "y", 0, R(0)}});
  EXPECT_THROW((void)sound_posterior(m, m.frame().states_of({"e"}), m.frame().event_ref("F")), std::domain_error);
}

// Generated models conform by construction; justification must then coincide
// with the posterior identity checked pointwise from scratch.
TEST(Beliefs, RandomConformingModels) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    const auto e = bt::random_evidence(rng, 4, 3);
    const auto m = bt::random_conforming_beliefs(rng, e);
    const auto c = check_justification(m, e);
    ASSERT_TRUE(c.conforms) << c.diagnostic;
    // Marginals, recomputed directly from world masses.
    std::vector<Rational> marginal(e.frame().state_count());
    for (const auto& w : m.worlds()) marginal[w.state] += w.q;
    EXPECT_EQ(marginal, e.prior());
    bool same = true;
    for (const auto& b : e.frame().all_events()) {
      for (std::size_t s = 0; s < e.frame().state_count(); ++s) {
        Rational num, den;
        for (const auto& w : m.worlds()) {
          if (b.is_omega() || w.type == b.index()) {
            den += w.q;
            if (w.state == s) num += w.q;
          }
        }
        if (num / den != conditional_probability(e, e.frame().singleton(s), b)) same = false;
      }
    }
    EXPECT_EQ(c.justifies, same);
  }
}
