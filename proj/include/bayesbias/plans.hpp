#pragma once

#include "bayesbias/beliefs.hpp"
#include "bayesbias/evidence.hpp"
#include "bayesbias/feasibility.hpp"

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace bayesbias {

/// Indices into a plan's alternative list.
using AltSet = std::set<std::size_t>;

/// A non-empty set of chosen alternatives for Ω and for each non-trivial
/// event, stored by EventRef::slot() (Ω at 0).
class Plan {
 public:
  Plan() = default;
  Plan(std::vector<std::string> alternatives, std::vector<AltSet> choices)
      : alternatives_(std::move(alternatives)), choices_(std::move(choices)) {
    std::set<std::string> seen;
    for (const auto& a : alternatives_) {
      if (a.empty() || !seen.insert(a).second) {
        throw std::invalid_argument("alternative ids must be unique and non-empty");
      }
    }
    for (const auto& c : choices_) {
      if (c.empty()) throw std::invalid_argument("plan assigns an empty choice set");
      if (*c.rbegin() >= alternatives_.size()) throw std::invalid_argument("unknown alternative");
    }
  }

  [[nodiscard]] const std::vector<std::string>& alternatives() const { return alternatives_; }
  [[nodiscard]] std::size_t alternative_count() const { return alternatives_.size(); }
  [[nodiscard]] const std::vector<AltSet>& choices() const { return choices_; }
  [[nodiscard]] const AltSet& choice(const EventRef& b) const { return choices_.at(b.slot()); }

  friend bool operator==(const Plan&, const Plan&) = default;

 private:
  std::vector<std::string> alternatives_;
  std::vector<AltSet> choices_;
};

/// values[a][p]: utility of alternative a at carrier point p, where points are
/// states (evidence case) or worlds (beliefs case).
struct UtilityTable {
  std::vector<std::string> alternatives;
  std::vector<std::vector<Rational>> values;

  friend bool operator==(const UtilityTable&, const UtilityTable&) = default;
};

namespace detail {

inline AltSet argmax(const std::vector<Rational>& scores) {
  AltSet best;
  for (std::size_t a = 0; a < scores.size(); ++a) {
    if (best.empty() || scores[a] > scores[*best.begin()]) {
      best = {a};
    } else if (scores[a] == scores[*best.begin()]) {
      best.insert(a);
    }
  }
  return best;
}

inline void require_total(const UtilityTable& u, std::size_t points, const char* what) {
  if (u.alternatives.empty() || u.values.size() != u.alternatives.size()) {
    throw std::invalid_argument("utility table needs one row per alternative");
  }
  for (const auto& row : u.values) {
    if (row.size() != points) {
      throw std::invalid_argument(std::string("utility table is not total on the ") + what);
    }
  }
}

using Terms = std::map<VarId, Rational>;

// Argmax constraints for one event: chosen alternatives tie, and each of them
// beats every other alternative strictly.
inline void append_argmax_rows(std::vector<LinConstraint>& system, const AltSet& chosen,
                               std::size_t alternatives,
                               const std::function<Terms(std::size_t)>& score) {
  const std::size_t lead = *chosen.begin();
  const Terms lead_terms = score(lead);
  auto difference = [&](std::size_t other) {
    Terms t = lead_terms;
    for (const auto& [id, coef] : score(other)) t[id] -= coef;
    std::erase_if(t, [](const auto& kv) { return kv.second.is_zero(); });
    return t;
  };
  for (std::size_t a = 0; a < alternatives; ++a) {
    if (a == lead) continue;
    system.push_back({difference(a), chosen.contains(a) ? Relation::EQ : Relation::GT, Rational(0)});
  }
}

inline void require_plan_fits(const Frame& f, const Plan& p) {
  if (p.choices().size() != f.event_count() + 1) {
    throw std::invalid_argument("plan must assign choices to OMEGA and to every event");
  }
}

}  // namespace detail

/// For each evidential event b: the alternatives maximizing Σ_{ω∈b} u_a(ω) P(ω).
inline Plan plan_from_evidence(const ModelOfEvidence& e, const UtilityTable& u) {
  const Frame& f = e.frame();
  detail::require_total(u, f.state_count(), "states");
  std::vector<AltSet> choices;
  for (const EventRef& b : f.all_events()) {
    const StateSet bs = f.resolve(b);
    std::vector<Rational> scores(u.alternatives.size());
    for (std::size_t a = 0; a < scores.size(); ++a) {
      for (std::size_t s = 0; s < f.state_count(); ++s) {
        if (bs.test(s)) scores[a] += u.values[a][s] * e.prior(s);
      }
    }
    choices.push_back(detail::argmax(scores));
  }
  return Plan(u.alternatives, std::move(choices));
}

/// For each evidential event b: the alternatives maximizing Σ_{φ∈β(b)} v_a(φ) q(φ).
inline Plan plan_from_beliefs(const ModelOfBeliefs& m, const UtilityTable& v) {
  detail::require_total(v, m.world_count(), "worlds");
  std::vector<AltSet> choices;
  for (const EventRef& b : m.frame().all_events()) {
    const WorldSet beta = beta_event(m, b);
    std::vector<Rational> scores(v.alternatives.size());
    for (std::size_t a = 0; a < scores.size(); ++a) {
      for (std::size_t w = 0; w < m.world_count(); ++w) {
        if (beta.test(w)) scores[a] += v.values[a][w] * m.worlds()[w].q;
      }
    }
    choices.push_back(detail::argmax(scores));
  }
  return Plan(v.alternatives, std::move(choices));
}

/// v_a(φ) = 1 if a is chosen at φ's type, else 0. Reproduces the plan on every
/// non-trivial event but carries no constraint linking them to the prior type.
inline UtilityTable type_indicator_utilities(const ModelOfBeliefs& m, const Plan& p) {
  detail::require_plan_fits(m.frame(), p);
  UtilityTable v{p.alternatives(), {}};
  for (std::size_t a = 0; a < p.alternative_count(); ++a) {
    std::vector<Rational> row;
    for (const auto& w : m.worlds()) {
      row.emplace_back(p.choice(EventRef::event(w.type)).contains(a) ? 1 : 0);
    }
    v.values.push_back(std::move(row));
  }
  return v;
}

enum class Mode { ByEvidence, ByBeliefs };

struct RationalizationWitness {
  Mode mode = Mode::ByEvidence;
  std::variant<ModelOfEvidence, ModelOfBeliefs> model;
  UtilityTable utilities;
};

struct Rationalization {
  std::optional<RationalizationWitness> witness;
  /// Optimal strictness margin of the underlying linear system.
  Rational margin;

  [[nodiscard]] bool feasible() const { return witness.has_value(); }
};

namespace detail {

inline std::vector<LinConstraint> evidence_system(const Frame& f, const Plan& p,
                                                  const std::vector<Rational>& weight) {
  const std::size_t states = f.state_count();
  std::vector<LinConstraint> system;
  for (const EventRef& b : f.all_events()) {
    const StateSet bs = f.resolve(b);
    detail::append_argmax_rows(system, p.choice(b), p.alternative_count(), [&](std::size_t a) {
      Terms t;
      for (std::size_t s = 0; s < states; ++s) {
        if (bs.test(s) && !weight[s].is_zero()) t[a * states + s] = weight[s];
      }
      return t;
    });
  }
  return system;
}

inline Rational value_of(const std::map<VarId, Rational>& x, VarId id) {
  auto it = x.find(id);
  return it == x.end() ? Rational(0) : it->second;
}

}  // namespace detail

/// Decides whether some full-support prior and utilities make the plan the
/// conditional-expected-utility argmax on every evidential event.
///
/// Works on w_a(ω) = P(ω) u_a(ω), in which the argmax conditions are linear.
/// The witness uses the uniform prior and u_a(ω) = w_a(ω) / P(ω). Throws
/// ValidationError when the frame is not a model of evidence under a
/// full-support prior (that verdict does not depend on which prior).
inline Rationalization rationalize_by_evidence(const Frame& f, const Plan& p) {
  detail::require_plan_fits(f, p);
  const std::size_t states = f.state_count();
  const Rational uniform(1, static_cast<std::int64_t>(states));
  ModelOfEvidence model(f, std::vector<Rational>(states, uniform));
  if (auto report = validate_evidence(model); !report.empty()) throw ValidationError(std::move(report));

  const auto outcome =
      solve_strict_feasibility(detail::evidence_system(f, p, std::vector<Rational>(states, Rational(1))));
  Rationalization out{std::nullopt, outcome.slack};
  if (!outcome.feasible()) return out;
  UtilityTable u{p.alternatives(), {}};
  for (std::size_t a = 0; a < p.alternative_count(); ++a) {
    std::vector<Rational> row;
    for (std::size_t s = 0; s < states; ++s) {
      row.push_back(detail::value_of(outcome.witness, a * states + s) / uniform);
    }
    u.values.push_back(std::move(row));
  }
  out.witness = RationalizationWitness{Mode::ByEvidence, std::move(model), std::move(u)};
  return out;
}

/// Same question with the prior pinned to e's; only the utilities are free.
inline Rationalization rationalize_by_evidence_fixed_prior(const ModelOfEvidence& e, const Plan& p) {
  const Frame& f = e.frame();
  detail::require_plan_fits(f, p);
  if (auto report = validate_evidence(e); !report.empty()) throw ValidationError(std::move(report));
  const std::size_t states = f.state_count();
  const auto outcome = solve_strict_feasibility(detail::evidence_system(f, p, e.prior()));
  Rationalization out{std::nullopt, outcome.slack};
  if (!outcome.feasible()) return out;
  UtilityTable u{p.alternatives(), {}};
  for (std::size_t a = 0; a < p.alternative_count(); ++a) {
    std::vector<Rational> row;
    for (std::size_t s = 0; s < states; ++s) {
      row.push_back(detail::value_of(outcome.witness, a * states + s));
    }
    u.values.push_back(std::move(row));
  }
  out.witness = RationalizationWitness{Mode::ByEvidence, e, std::move(u)};
  return out;
}

/// Decides whether some model of beliefs and utilities make the plan the
/// type-conditioned argmax, Ω included.
///
/// Works on m_a(B) = ∫_{β(B)} v_a dQ for B ∈ E′; the score at Ω is
/// Σ_B m_a(B) because the types partition the worlds. The witness has one
/// world per event B, at the first state of B, typed B, with Q uniform and
/// v_a = |E′| m_a(B).
inline Rationalization rationalize_by_beliefs(const Frame& f, const Plan& p) {
  detail::require_plan_fits(f, p);
  if (auto report = validate_frame(f); !report.empty()) throw ValidationError(std::move(report));
  const std::size_t n = f.event_count();

  std::vector<LinConstraint> system;
  for (const EventRef& b : f.all_events()) {
    detail::append_argmax_rows(system, p.choice(b), p.alternative_count(), [&](std::size_t a) {
      detail::Terms t;
      if (b.is_omega()) {
        for (std::size_t k = 0; k < n; ++k) t[a * n + k] = Rational(1);
      } else {
        t[a * n + b.index()] = Rational(1);
      }
      return t;
    });
  }
  const auto outcome = solve_strict_feasibility(system);
  Rationalization out{std::nullopt, outcome.slack};
  if (!outcome.feasible()) return out;

  const Rational q(1, static_cast<std::int64_t>(n));
  std::vector<World> worlds;
  for (std::size_t b = 0; b < n; ++b) {
    const std::size_t first_state = f.event_states(b).find_first();
    worlds.push_back({first_state, f.event_name(b), b, q});
  }
  UtilityTable v{p.alternatives(), {}};
  for (std::size_t a = 0; a < p.alternative_count(); ++a) {
    std::vector<Rational> row;
    for (std::size_t b = 0; b < n; ++b) {
      row.push_back(detail::value_of(outcome.witness, a * n + b) / q);
    }
    v.values.push_back(std::move(row));
  }
  out.witness = RationalizationWitness{Mode::ByBeliefs, ModelOfBeliefs(f, std::move(worlds)),
                                       std::move(v)};
  return out;
}

}  // namespace bayesbias
