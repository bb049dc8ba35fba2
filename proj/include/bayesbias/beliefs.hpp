#pragma once

#include "bayesbias/evidence.hpp"

#include <set>
#include <string>
#include <utility>
#include <vector>

namespace bayesbias {

/// Subset of a belief model's worlds, indexed by world position.
using WorldSet = boost::dynamic_bitset<>;

struct WorldSpec {
  std::string state;
  std::string label;
  std::string type;
  Rational q;
};

/// A state of the world: a nature coordinate, a free label that tells apart
/// worlds sharing a state, the agent's type there, and its mass.
struct World {
  std::size_t state = 0;
  std::string label;
  std::size_t type = 0;  // index of a non-trivial event
  Rational q;

  friend bool operator==(const World&, const World&) = default;
};

/// A finite model of beliefs over a frame. The embedding of objective events
/// is fixed: a set of states A corresponds to the worlds whose state lies in A.
class ModelOfBeliefs {
 public:
  ModelOfBeliefs() = default;
  ModelOfBeliefs(Frame frame, std::vector<World> worlds)
      : frame_(std::move(frame)), worlds_(std::move(worlds)) {
    for (const auto& w : worlds_) {
      if (w.state >= frame_.state_count()) throw std::invalid_argument("world state out of range");
      if (w.type >= frame_.event_count()) throw std::invalid_argument("world type out of range");
    }
  }
  ModelOfBeliefs(Frame frame, const std::vector<WorldSpec>& worlds) : frame_(std::move(frame)) {
    for (const auto& spec : worlds) {
      const EventRef type = frame_.event_ref(spec.type);
      if (type.is_omega()) {
        throw std::invalid_argument("world (" + spec.state + ", " + spec.label +
                                    ") cannot have the prior-beliefs type OMEGA");
      }
      worlds_.push_back({frame_.state_index(spec.state), spec.label, type.index(), spec.q});
    }
  }

  [[nodiscard]] const Frame& frame() const { return frame_; }
  [[nodiscard]] const std::vector<World>& worlds() const { return worlds_; }
  [[nodiscard]] std::size_t world_count() const { return worlds_.size(); }

  [[nodiscard]] Rational mass(const WorldSet& s) const {
    Rational total;
    for (std::size_t i = 0; i < worlds_.size(); ++i) {
      if (s.test(i)) total += worlds_[i].q;
    }
    return total;
  }

  [[nodiscard]] WorldSet all_worlds() const { return WorldSet(worlds_.size()).set(); }

  [[nodiscard]] std::string describe(std::size_t world) const {
    const World& w = worlds_.at(world);
    return "(" + frame_.state(w.state) + ", " + w.label + ")";
  }

  friend bool operator==(const ModelOfBeliefs&, const ModelOfBeliefs&) = default;

 private:
  Frame frame_;
  std::vector<World> worlds_;
};

/// β(b): every world when b = Ω, otherwise the worlds whose type is b.
inline WorldSet beta_event(const ModelOfBeliefs& m, const EventRef& b) {
  if (b.is_omega()) return m.all_worlds();
  WorldSet s(m.world_count());
  for (std::size_t i = 0; i < m.world_count(); ++i) {
    if (m.worlds()[i].type == b.index()) s.set(i);
  }
  return s;
}

/// α(a): the worlds whose state coordinate lies in a.
inline WorldSet alpha_embed(const ModelOfBeliefs& m, const StateSet& a) {
  WorldSet s(m.world_count());
  for (std::size_t i = 0; i < m.world_count(); ++i) {
    if (a.test(m.worlds()[i].state)) s.set(i);
  }
  return s;
}

inline ValidationReport validate_beliefs(const ModelOfBeliefs& m) {
  const Frame& f = m.frame();
  ValidationReport out;
  Rational total;
  std::set<std::pair<std::size_t, std::string>> seen;
  for (std::size_t i = 0; i < m.world_count(); ++i) {
    const World& w = m.worlds()[i];
    if (w.q.is_negative()) {
      out.push_back({Clause::MassNonNegative, "Q" + m.describe(i) + " = " + w.q.to_string()});
    }
    if (!seen.emplace(w.state, w.label).second) {
      out.push_back({Clause::WorldsUnique, "world " + m.describe(i) + " listed twice"});
    }
    total += w.q;
  }
  if (total != Rational(1)) {
    out.push_back({Clause::MassNormalized, "Q sums to " + total.to_string()});
  }
  for (std::size_t b = 0; b < f.event_count(); ++b) {
    bool realized = false;
    for (const auto& w : m.worlds()) {
      if (w.type == b && w.q.is_positive()) realized = true;
    }
    if (!realized) {
      out.push_back({Clause::TypeOnto, "no world of positive mass has type " + f.event_name(b)});
    }
    const Rational qb = m.mass(beta_event(m, EventRef::event(b)));
    if (!qb.is_positive() || qb >= Rational(1)) {
      out.push_back({Clause::TypeMassBounds,
                     "Q(beta(" + f.event_name(b) + ")) = " + qb.to_string()});
    }
  }
  for (auto& v : validate_frame(f)) out.push_back(std::move(v));
  return out;
}

/// Q[α(a) | β(b)], the posterior of an agent of type b.
inline Rational sound_posterior(const ModelOfBeliefs& m, const StateSet& a, const EventRef& b) {
  const WorldSet beta = beta_event(m, b);
  const Rational qb = m.mass(beta);
  if (!qb.is_positive()) {
    throw std::domain_error("type " + m.frame().name_of(b) + " has mass zero");
  }
  return m.mass(alpha_embed(m, a) & beta) / qb;
}

namespace detail {
inline void require_same_frame(const ModelOfBeliefs& m, const ModelOfEvidence& e) {
  if (!(m.frame() == e.frame())) {
    throw std::invalid_argument(
        "model of beliefs and model of evidence have different states or events");
  }
}
}  // namespace detail

struct ConformityCheck {
  bool conforms = false;
  /// Names the first failing state or event; empty when conforms.
  std::string diagnostic;
};

/// Conformity on the canonical embedding: the state marginals of Q equal P,
/// and each type's worlds lie (up to Q-null worlds) inside the embedded event.
inline ConformityCheck check_conformity(const ModelOfBeliefs& m, const ModelOfEvidence& e) {
  detail::require_same_frame(m, e);
  const Frame& f = e.frame();
  for (std::size_t s = 0; s < f.state_count(); ++s) {
    const Rational marginal = m.mass(alpha_embed(m, f.singleton(s)));
    if (marginal != e.prior(s)) {
      return {false, "marginal of state " + f.state(s) + " is " + marginal.to_string() +
                         " but P(" + f.state(s) + ") = " + e.prior(s).to_string()};
    }
  }
  for (std::size_t b = 0; b < f.event_count(); ++b) {
    const WorldSet beta = beta_event(m, EventRef::event(b));
    const WorldSet leaked = beta - alpha_embed(m, f.event_states(b));
    const Rational q = m.mass(leaked);
    if (!q.is_zero()) {
      return {false, "type " + f.event_name(b) + " puts mass " + q.to_string() +
                         " on states outside " + f.event_name(b)};
    }
  }
  return {true, {}};
}

struct PosteriorMismatch {
  std::size_t state;
  EventRef event;
  Rational sound;
  Rational heuristic;
};

struct JustificationCheck {
  bool conforms = false;
  bool justifies = false;
  /// Why the check failed: the conformity diagnostic or the first mismatch.
  std::string diagnostic;
  /// Every (state, event) pair where the posteriors differ, Ω first, then
  /// events in order; states in order within each event.
  std::vector<PosteriorMismatch> mismatches;
};

/// Justification: conformity plus Q[α({ω}) | β(b)] = P[{ω} | b] for every
/// state ω and every evidential b (Ω included). Singletons suffice because
/// both sides are additive in the first argument.
inline JustificationCheck check_justification(const ModelOfBeliefs& m, const ModelOfEvidence& e) {
  JustificationCheck out;
  const ConformityCheck conformity = check_conformity(m, e);
  out.conforms = conformity.conforms;
  if (!conformity.conforms) {
    out.diagnostic = "not conforming: " + conformity.diagnostic;
    return out;
  }
  const Frame& f = e.frame();
  for (const EventRef& b : f.all_events()) {
    for (std::size_t s = 0; s < f.state_count(); ++s) {
      const StateSet a = f.singleton(s);
      Rational sound = sound_posterior(m, a, b);
      Rational heuristic = conditional_probability(e, a, b);
      if (sound != heuristic) {
        out.mismatches.push_back({s, b, std::move(sound), std::move(heuristic)});
      }
    }
  }
  out.justifies = out.mismatches.empty();
  if (!out.justifies) {
    const auto& first = out.mismatches.front();
    out.diagnostic = "Q[{" + f.state(first.state) + "} | " + f.name_of(first.event) + "] = " +
                     first.sound.to_string() + " but P[{" + f.state(first.state) + "} | " +
                     f.name_of(first.event) + "] = " + first.heuristic.to_string();
  }
  return out;
}

}  // namespace bayesbias
