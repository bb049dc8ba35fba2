#pragma once

// Finite versions of the three belief-model constructions.
//
// The interval construction behind build_justifying places, over each state
// ω, consecutive slices of width θ(B_s) for the events containing ω. Only the
// mass of each (state, type) cell matters for conformity and justification,
// so the finite model keeps one world per cell with q = θ(B) P(ω).

#include "bayesbias/balance.hpp"
#include "bayesbias/beliefs.hpp"
#include "bayesbias/evidence.hpp"

#include <numeric>
#include <optional>
#include <vector>

namespace bayesbias {

namespace detail {

inline void require_valid(const ModelOfEvidence& e) {
  if (auto report = validate_evidence(e); !report.empty()) throw ValidationError(std::move(report));
}

// Position (in `order`) of the first event containing the state.
inline std::size_t first_containing(const Frame& f, const std::vector<std::size_t>& order,
                                    std::size_t state) {
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (f.event_states(order[k]).test(state)) return k;
  }
  throw std::logic_error("state is not covered by any event");
}

}  // namespace detail

/// A conforming model for any valid model of evidence. Worlds are Ω × E′
/// (label = 1-based event index s); world (ω, B_s) has mass 2^{-s} P(ω) / t with
/// t = Σ_s 2^{-s}, and type B_s when ω ∈ B_s, else the first event holding ω.
inline ModelOfBeliefs build_conforming(const ModelOfEvidence& e) {
  detail::require_valid(e);
  const Frame& f = e.frame();
  const std::size_t n = f.event_count();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});

  std::vector<Rational> weight;  // 2^{-s}, s = 1..n
  Rational t;
  Rational w(1);
  for (std::size_t s = 0; s < n; ++s) {
    w /= Rational(2);
    weight.push_back(w);
    t += w;
  }

  std::vector<World> worlds;
  for (std::size_t state = 0; state < f.state_count(); ++state) {
    const std::size_t mu = detail::first_containing(f, order, state);
    for (std::size_t s = 0; s < n; ++s) {
      const std::size_t type = f.event_states(s).test(state) ? s : mu;
      worlds.push_back({state, std::to_string(s + 1), type, weight[s] * e.prior(state) / t});
    }
  }
  return ModelOfBeliefs(f, std::move(worlds));
}

/// A justifying model from a balancing function: one world (ω, B) per
/// membership ω ∈ B, typed B, with q = θ(B) P(ω). Then Q(β(B)) = θ(B) P(B).
inline ModelOfBeliefs build_justifying(const ModelOfEvidence& e, const BalancingFunction& t) {
  detail::require_valid(e);
  if (!verify_balancing(e, t)) {
    throw std::invalid_argument("build_justifying: theta is not a balancing function");
  }
  const Frame& f = e.frame();
  std::vector<World> worlds;
  for (std::size_t state = 0; state < f.state_count(); ++state) {
    for (std::size_t b = 0; b < f.event_count(); ++b) {
      if (f.event_states(b).test(state)) {
        worlds.push_back({state, f.event_name(b), b, t.theta[b] * e.prior(state)});
      }
    }
  }
  return ModelOfBeliefs(f, std::move(worlds));
}

/// A conforming model that fails justification, with the pair of events
/// (first, second) on which the type-conditioned posterior of first ∩ second
/// given second falls strictly below the event-conditioned one.
struct Counterexample {
  ModelOfBeliefs model;
  std::size_t first = 0;
  std::size_t second = 0;
  Rational sound;      // Q[α(first ∩ second) | β(second)]
  Rational heuristic;  // P[first ∩ second | second]
};

/// Half of the mass follows the justifying model for θ (halved); the other
/// half of each state's mass goes to the first event containing it, with the
/// events re-enumerated so that the chosen overlapping pair comes first.
/// Returns nullopt when E′ is an almost-sure partition, where no such model
/// exists.
///
/// The pair is the first (C, D), scanning i < j in input order, with
/// P(C ∩ D) > 0; C and D are swapped when D ⊆ C so that D ⊄ C.
inline std::optional<Counterexample> build_conforming_nonjustifying(const ModelOfEvidence& e,
                                                                    const BalancingFunction& t) {
  detail::require_valid(e);
  if (!verify_balancing(e, t)) {
    throw std::invalid_argument("build_conforming_nonjustifying: theta is not a balancing function");
  }
  const Frame& f = e.frame();
  const std::size_t n = f.event_count();

  std::optional<std::pair<std::size_t, std::size_t>> pair;
  for (std::size_t i = 0; i < n && !pair; ++i) {
    for (std::size_t j = i + 1; j < n && !pair; ++j) {
      if (e.probability(f.event_states(i) & f.event_states(j)).is_positive()) pair = {i, j};
    }
  }
  if (!pair) return std::nullopt;
  auto [c, d] = *pair;
  if (f.event_states(d).is_subset_of(f.event_states(c))) std::swap(c, d);

  std::vector<std::size_t> order{c, d};
  for (std::size_t b = 0; b < n; ++b) {
    if (b != c && b != d) order.push_back(b);
  }

  const Rational half(1, 2);
  std::vector<World> worlds;
  for (std::size_t state = 0; state < f.state_count(); ++state) {
    const std::size_t mu = order[detail::first_containing(f, order, state)];
    for (std::size_t b = 0; b < n; ++b) {
      if (!f.event_states(b).test(state)) continue;
      Rational q = t.theta[b] * e.prior(state) * half;
      if (b == mu) q += e.prior(state) * half;
      worlds.push_back({state, f.event_name(b), b, std::move(q)});
    }
  }

  Counterexample out{ModelOfBeliefs(f, std::move(worlds)), c, d, {}, {}};
  const StateSet overlap = f.event_states(c) & f.event_states(d);
  out.sound = sound_posterior(out.model, overlap, EventRef::event(d));
  out.heuristic = conditional_probability(e, overlap, EventRef::event(d));
  return out;
}

}  // namespace bayesbias
