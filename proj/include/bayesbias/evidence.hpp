#pragma once

#include "bayesbias/rational.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bayesbias {

/// Reserved name of the trivial evidential event (the whole state space).
inline constexpr std::string_view kOmega = "OMEGA";

/// Subset of a frame's states, indexed by state position.
using StateSet = boost::dynamic_bitset<>;

/// Either the trivial event or the index of a non-trivial evidential event.
class EventRef {
 public:
  static EventRef omega() { return EventRef(); }
  static EventRef event(std::size_t index) { return EventRef(index); }

  [[nodiscard]] bool is_omega() const { return !index_.has_value(); }
  /// Only valid when !is_omega().
  [[nodiscard]] std::size_t index() const { return index_.value(); }

  /// Ω first, then events in order. Used to index per-event tables.
  [[nodiscard]] std::size_t slot() const { return index_ ? *index_ + 1 : 0; }
  static EventRef from_slot(std::size_t slot) {
    return slot == 0 ? omega() : event(slot - 1);
  }

  friend bool operator==(const EventRef&, const EventRef&) = default;

 private:
  EventRef() = default;
  explicit EventRef(std::size_t index) : index_(index) {}
  std::optional<std::size_t> index_;
};

struct EventSpec {
  std::string name;
  std::vector<std::string> states;
};

/// The structural part shared by models of evidence and models of beliefs:
/// the ordered state ids and the ordered, named non-trivial evidential events.
/// Ω itself is always implicitly evidential and never listed.
///
/// Construction rejects input whose names do not resolve (unknown states,
/// duplicate ids, the reserved OMEGA name); everything else about the family
/// is a validity clause and is reported by the validators.
class Frame {
 public:
  Frame() = default;
  Frame(std::vector<std::string> states, const std::vector<EventSpec>& events)
      : states_(std::move(states)) {
    for (std::size_t i = 0; i < states_.size(); ++i) {
      if (states_[i].empty()) throw std::invalid_argument("empty state id");
      if (!state_index_.emplace(states_[i], i).second) {
        throw std::invalid_argument("duplicate state id '" + states_[i] + "'");
      }
    }
    for (const auto& spec : events) {
      if (spec.name.empty()) throw std::invalid_argument("empty event name");
      if (spec.name == kOmega) {
        throw std::invalid_argument("event name OMEGA is reserved");
      }
      if (!event_index_.emplace(spec.name, event_names_.size()).second) {
        throw std::invalid_argument("duplicate event name '" + spec.name + "'");
      }
      event_names_.push_back(spec.name);
      event_sets_.push_back(states_of(spec.states));
    }
  }

  [[nodiscard]] std::size_t state_count() const { return states_.size(); }
  [[nodiscard]] const std::vector<std::string>& states() const { return states_; }
  [[nodiscard]] const std::string& state(std::size_t i) const { return states_.at(i); }

  [[nodiscard]] std::size_t event_count() const { return event_names_.size(); }
  [[nodiscard]] const std::string& event_name(std::size_t i) const { return event_names_.at(i); }
  [[nodiscard]] const StateSet& event_states(std::size_t i) const { return event_sets_.at(i); }

  [[nodiscard]] std::string name_of(const EventRef& ref) const {
    return ref.is_omega() ? std::string(kOmega) : event_name(ref.index());
  }

  [[nodiscard]] std::optional<std::size_t> find_state(std::string_view id) const {
    auto it = state_index_.find(std::string(id));
    if (it == state_index_.end()) return std::nullopt;
    return it->second;
  }
  [[nodiscard]] std::size_t state_index(std::string_view id) const {
    if (auto i = find_state(id)) return *i;
    throw std::invalid_argument("unknown state '" + std::string(id) + "'");
  }

  /// Resolves an event name; "OMEGA" names the trivial event.
  [[nodiscard]] EventRef event_ref(std::string_view name) const {
    if (name == kOmega) return EventRef::omega();
    auto it = event_index_.find(std::string(name));
    if (it == event_index_.end()) {
      throw std::invalid_argument("unknown event '" + std::string(name) + "'");
    }
    return EventRef::event(it->second);
  }

  [[nodiscard]] StateSet omega() const { return StateSet(states_.size()).set(); }
  [[nodiscard]] StateSet empty_set() const { return StateSet(states_.size()); }
  [[nodiscard]] StateSet singleton(std::size_t state) const {
    StateSet s(states_.size());
    s.set(state);
    return s;
  }

  [[nodiscard]] StateSet states_of(std::span<const std::string> ids) const {
    StateSet s(states_.size());
    for (const auto& id : ids) s.set(state_index(id));
    return s;
  }
  [[nodiscard]] StateSet states_of(std::initializer_list<std::string> ids) const {
    return states_of(std::span<const std::string>(ids.begin(), ids.size()));
  }

  [[nodiscard]] StateSet resolve(const EventRef& ref) const {
    return ref.is_omega() ? omega() : event_states(ref.index());
  }

  /// Ω followed by the non-trivial events, in order.
  [[nodiscard]] std::vector<EventRef> all_events() const {
    std::vector<EventRef> out{EventRef::omega()};
    for (std::size_t i = 0; i < event_count(); ++i) out.push_back(EventRef::event(i));
    return out;
  }

  [[nodiscard]] std::vector<std::string> names_in(const StateSet& s) const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < states_.size(); ++i) {
      if (s.test(i)) out.push_back(states_[i]);
    }
    return out;
  }

  friend bool operator==(const Frame& a, const Frame& b) {
    return a.states_ == b.states_ && a.event_names_ == b.event_names_ &&
           a.event_sets_ == b.event_sets_;
  }

 private:
  std::vector<std::string> states_;
  std::map<std::string, std::size_t, std::less<>> state_index_;
  std::vector<std::string> event_names_;
  std::vector<StateSet> event_sets_;
  std::map<std::string, std::size_t, std::less<>> event_index_;
};

/// Identifies which validity clause an input breaks.
enum class Clause {
  // frame
  EventNonEmpty,
  EventsCoverStates,
  EventNotOmega,
  EventsDistinct,
  AtLeastTwoEvents,
  // model of evidence
  PriorNonNegative,
  PriorNormalized,
  EventPositive,
  PairwiseDifferencePositive,
  // model of beliefs
  MassNonNegative,
  MassNormalized,
  WorldsUnique,
  TypeOnto,
  TypeMassBounds,
};

inline std::string_view clause_name(Clause c) {
  switch (c) {
    case Clause::EventNonEmpty: return "event_nonempty";
    case Clause::EventsCoverStates: return "events_cover_states";
    case Clause::EventNotOmega: return "event_not_omega";
    case Clause::EventsDistinct: return "events_distinct";
    case Clause::AtLeastTwoEvents: return "at_least_two_events";
    case Clause::PriorNonNegative: return "prior_nonnegative";
    case Clause::PriorNormalized: return "prior_normalized";
    case Clause::EventPositive: return "event_positive";
    case Clause::PairwiseDifferencePositive: return "pairwise_difference_positive";
    case Clause::MassNonNegative: return "mass_nonnegative";
    case Clause::MassNormalized: return "mass_normalized";
    case Clause::WorldsUnique: return "worlds_unique";
    case Clause::TypeOnto: return "type_onto";
    case Clause::TypeMassBounds: return "type_mass_bounds";
  }
  return "unknown";
}

struct Violation {
  Clause clause;
  std::string detail;
};

/// Empty means valid.
using ValidationReport = std::vector<Violation>;

/// Thrown where a valid model is a precondition and the input is not one.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(ValidationReport report)
      : std::runtime_error(summarize(report)), report_(std::move(report)) {}
  [[nodiscard]] const ValidationReport& report() const { return report_; }

 private:
  static std::string summarize(const ValidationReport& r) {
    std::string s = "invalid model:";
    for (const auto& v : r) {
      s += ' ';
      s += clause_name(v.clause);
      s += " (" + v.detail + ");";
    }
    return s;
  }
  ValidationReport report_;
};

inline std::string join(const std::vector<std::string>& items, std::string_view sep = ",") {
  std::string s;
  for (const auto& item : items) {
    if (!s.empty()) s += sep;
    s += item;
  }
  return s;
}

/// Clauses on the event family alone: events are non-empty and cover Ω, none
/// equals Ω, no two coincide, and there are at least two of them.
inline ValidationReport validate_frame(const Frame& f) {
  ValidationReport out;
  for (std::size_t i = 0; i < f.event_count(); ++i) {
    if (f.event_states(i).none()) {
      out.push_back({Clause::EventNonEmpty, "event " + f.event_name(i) + " is empty"});
    }
  }
  StateSet covered = f.empty_set();
  for (std::size_t i = 0; i < f.event_count(); ++i) covered |= f.event_states(i);
  if (covered != f.omega()) {
    out.push_back({Clause::EventsCoverStates,
                   "states not in any event: " + join(f.names_in(f.omega() - covered))});
  }
  for (std::size_t i = 0; i < f.event_count(); ++i) {
    if (f.event_states(i) == f.omega()) {
      out.push_back({Clause::EventNotOmega, "event " + f.event_name(i) + " equals the state space"});
    }
  }
  for (std::size_t i = 0; i < f.event_count(); ++i) {
    for (std::size_t j = i + 1; j < f.event_count(); ++j) {
      if (f.event_states(i) == f.event_states(j)) {
        out.push_back({Clause::EventsDistinct,
                       "events " + f.event_name(i) + " and " + f.event_name(j) + " are the same set"});
      }
    }
  }
  if (f.event_count() < 2) {
    out.push_back({Clause::AtLeastTwoEvents,
                   "only " + std::to_string(f.event_count()) + " non-trivial event(s)"});
  }
  return out;
}

/// A finite model of evidence: a frame plus a prior pmf over its states.
/// Every subset of states is an objective event.
class ModelOfEvidence {
 public:
  ModelOfEvidence() = default;
  ModelOfEvidence(Frame frame, std::vector<Rational> prior)
      : frame_(std::move(frame)), prior_(std::move(prior)) {
    if (prior_.size() != frame_.state_count()) {
      throw std::invalid_argument("prior must assign a value to every state");
    }
  }

  [[nodiscard]] const Frame& frame() const { return frame_; }
  [[nodiscard]] const std::vector<Rational>& prior() const { return prior_; }
  [[nodiscard]] const Rational& prior(std::size_t state) const { return prior_.at(state); }

  [[nodiscard]] Rational probability(const StateSet& a) const {
    Rational p;
    for (std::size_t i = 0; i < prior_.size(); ++i) {
      if (a.test(i)) p += prior_[i];
    }
    return p;
  }
  [[nodiscard]] Rational probability(const EventRef& b) const {
    return probability(frame_.resolve(b));
  }

  friend bool operator==(const ModelOfEvidence&, const ModelOfEvidence&) = default;

 private:
  Frame frame_;
  std::vector<Rational> prior_;
};

/// Reports every violated clause; empty report = valid model of evidence.
/// The pairwise clause ranges over all ordered pairs of evidential events,
/// Ω included.
inline ValidationReport validate_evidence(const ModelOfEvidence& m) {
  const Frame& f = m.frame();
  ValidationReport out;
  Rational total;
  for (std::size_t i = 0; i < f.state_count(); ++i) {
    if (m.prior(i).is_negative()) {
      out.push_back({Clause::PriorNonNegative,
                     "P(" + f.state(i) + ") = " + m.prior(i).to_string()});
    }
    total += m.prior(i);
  }
  if (total != Rational(1)) {
    out.push_back({Clause::PriorNormalized, "prior sums to " + total.to_string()});
  }
  for (std::size_t i = 0; i < f.event_count(); ++i) {
    const Rational p = m.probability(EventRef::event(i));
    if (!p.is_positive()) {
      out.push_back({Clause::EventPositive, "P(" + f.event_name(i) + ") = " + p.to_string()});
    }
  }
  const auto events = f.all_events();
  for (const auto& b : events) {
    for (const auto& c : events) {
      if (b == c) continue;
      const StateSet bs = f.resolve(b);
      const StateSet cs = f.resolve(c);
      if (cs.is_subset_of(bs)) continue;
      const Rational p = m.probability(cs - bs);
      if (!p.is_positive()) {
        out.push_back({Clause::PairwiseDifferencePositive,
                       "P(" + f.name_of(c) + " \\ " + f.name_of(b) + ") = " + p.to_string()});
      }
    }
  }
  for (auto& v : validate_frame(f)) out.push_back(std::move(v));
  return out;
}

/// P[a | b] = P(a ∩ b) / P(b). With b = Ω this is the prior P(a).
inline Rational conditional_probability(const ModelOfEvidence& m, const StateSet& a,
                                        const EventRef& b) {
  const StateSet bs = m.frame().resolve(b);
  const Rational pb = m.probability(bs);
  if (!pb.is_positive()) {
    throw std::domain_error("conditioning event " + m.frame().name_of(b) +
                            " has probability zero");
  }
  return m.probability(a & bs) / pb;
}

}  // namespace bayesbias
