#pragma once

#include "bayesbias/beliefs.hpp"
#include "bayesbias/evidence.hpp"
#include "bayesbias/feasibility.hpp"

#include <optional>
#include <vector>

namespace bayesbias {

/// Weights θ on the non-trivial events, aligned with the frame's event order.
struct BalancingFunction {
  std::vector<Rational> theta;

  friend bool operator==(const BalancingFunction&, const BalancingFunction&) = default;
};

/// Checks 0 < θ(B) <= 1 for every event and Σ_{B ∋ ω} θ(B) = 1 for every
/// state of positive prior probability.
inline bool verify_balancing(const ModelOfEvidence& e, const BalancingFunction& t) {
  const Frame& f = e.frame();
  if (t.theta.size() != f.event_count()) return false;
  for (const auto& v : t.theta) {
    if (!v.is_positive() || v > Rational(1)) return false;
  }
  for (std::size_t s = 0; s < f.state_count(); ++s) {
    if (!e.prior(s).is_positive()) continue;
    Rational sum;
    for (std::size_t b = 0; b < f.event_count(); ++b) {
      if (f.event_states(b).test(s)) sum += t.theta[b];
    }
    if (sum != Rational(1)) return false;
  }
  return true;
}

/// The linear system whose strictly feasible points are the balancing
/// functions; variable b is θ of event b. Null states contribute no row.
inline std::vector<LinConstraint> balancing_system(const ModelOfEvidence& e) {
  const Frame& f = e.frame();
  std::vector<LinConstraint> system;
  for (std::size_t s = 0; s < f.state_count(); ++s) {
    if (!e.prior(s).is_positive()) continue;
    LinConstraint row;
    row.relation = Relation::EQ;
    row.rhs = Rational(1);
    for (std::size_t b = 0; b < f.event_count(); ++b) {
      if (f.event_states(b).test(s)) row.coefficients[b] = Rational(1);
    }
    system.push_back(std::move(row));
  }
  for (std::size_t b = 0; b < f.event_count(); ++b) {
    system.push_back({{{b, Rational(1)}}, Relation::GT, Rational(0)});
  }
  return system;
}

/// A balancing function, or nullopt when the model is unbalanced. When several
/// exist, the solver's pivot rule picks one deterministically.
inline std::optional<BalancingFunction> find_balancing(const ModelOfEvidence& e) {
  const auto outcome = solve_strict_feasibility(balancing_system(e));
  if (!outcome.feasible()) return std::nullopt;
  BalancingFunction t;
  for (std::size_t b = 0; b < e.frame().event_count(); ++b) {
    auto it = outcome.witness.find(b);
    t.theta.push_back(it == outcome.witness.end() ? Rational(0) : it->second);
  }
  // Every event holds a positive-probability state whose row caps θ at 1.
  if (!verify_balancing(e, t)) {
    throw std::logic_error("find_balancing: solver witness is not a balancing function");
  }
  return t;
}

/// θ(B) = Q(β(B)) / P(B) for a belief model that justifies e.
inline BalancingFunction extract_balancing(const ModelOfBeliefs& m, const ModelOfEvidence& e) {
  const auto check = check_justification(m, e);
  if (!check.justifies) {
    throw std::invalid_argument("extract_balancing: model of beliefs does not justify the "
                                "model of evidence: " + check.diagnostic);
  }
  BalancingFunction t;
  for (std::size_t b = 0; b < e.frame().event_count(); ++b) {
    const EventRef ref = EventRef::event(b);
    t.theta.push_back(m.mass(beta_event(m, ref)) / e.probability(ref));
  }
  return t;
}

}  // namespace bayesbias
