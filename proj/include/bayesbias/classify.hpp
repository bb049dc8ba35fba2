#pragma once

#include "bayesbias/balance.hpp"
#include "bayesbias/beliefs.hpp"
#include "bayesbias/constructions.hpp"
#include "bayesbias/evidence.hpp"

#include <string>
#include <variant>
#include <vector>

namespace bayesbias {

/// True iff every two distinct non-trivial events overlap in a null set.
inline bool is_as_partition(const ModelOfEvidence& e) {
  const Frame& f = e.frame();
  for (std::size_t i = 0; i < f.event_count(); ++i) {
    for (std::size_t j = i + 1; j < f.event_count(); ++j) {
      if (e.probability(f.event_states(i) & f.event_states(j)).is_positive()) return false;
    }
  }
  return true;
}

/// Scope covering every conforming model of beliefs.
struct FullScope {
  friend bool operator==(const FullScope&, const FullScope&) = default;
};

struct Situation {
  ModelOfEvidence evidence;
  std::variant<FullScope, std::vector<ModelOfBeliefs>> scope;
};

enum class SituationType { Type1, Type2, Type3 };

inline std::string_view type_name(SituationType t) {
  switch (t) {
    case SituationType::Type1: return "TYPE1";
    case SituationType::Type2: return "TYPE2";
    case SituationType::Type3: return "TYPE3";
  }
  return "unknown";
}

struct Classification {
  SituationType tag = SituationType::Type1;
  std::vector<std::string> evidence_trail;
};

namespace detail {

inline std::string theta_text(const Frame& f, const BalancingFunction& t) {
  std::vector<std::string> parts;
  for (std::size_t b = 0; b < f.event_count(); ++b) {
    parts.push_back(f.event_name(b) + "=" + t.theta[b].to_string());
  }
  return join(parts, ", ");
}

inline Classification classify_full(const ModelOfEvidence& e) {
  Classification out;
  const Frame& f = e.frame();
  const auto theta = find_balancing(e);
  if (!theta) {
    out.tag = SituationType::Type1;
    out.evidence_trail.push_back("not balanced: no balancing function exists");
    out.evidence_trail.push_back("an unbalanced situation is of type 1");
    return out;
  }
  out.evidence_trail.push_back("balanced: theta = {" + theta_text(f, *theta) + "}");
  if (is_as_partition(e)) {
    out.tag = SituationType::Type2;
    out.evidence_trail.push_back("events form an almost-sure partition");
    out.evidence_trail.push_back("every conforming model justifies an almost-sure partition: type 2");
    return out;
  }
  out.tag = SituationType::Type3;
  out.evidence_trail.push_back("full and balanced: the justifying construction lies in scope");
  const auto counter = build_conforming_nonjustifying(e, *theta);
  out.evidence_trail.push_back(
      "not an almost-sure partition: events " + f.event_name(counter->first) + " and " +
      f.event_name(counter->second) + " overlap with positive probability");
  out.evidence_trail.push_back(
      "conforming counterexample has Q[alpha(" + f.event_name(counter->first) + " & " +
      f.event_name(counter->second) + ") | beta(" + f.event_name(counter->second) + ")] = " +
      counter->sound.to_string() + " < " + counter->heuristic.to_string());
  return out;
}

}  // namespace detail

/// Full scope: decided by balancedness and the partition test. Explicit
/// scope: by running the justification check on every listed model, each of
/// which must conform.
inline Classification classify_situation(const Situation& s) {
  if (auto report = validate_evidence(s.evidence); !report.empty()) {
    throw ValidationError(std::move(report));
  }
  if (std::holds_alternative<FullScope>(s.scope)) return detail::classify_full(s.evidence);

  const auto& models = std::get<std::vector<ModelOfBeliefs>>(s.scope);
  if (models.empty()) throw std::invalid_argument("situation scope must not be empty");
  std::size_t justifying = 0;
  std::vector<std::string> trail;
  for (std::size_t i = 0; i < models.size(); ++i) {
    if (auto report = validate_beliefs(models[i]); !report.empty()) {
      throw ValidationError(std::move(report));
    }
    const auto check = check_justification(models[i], s.evidence);
    if (!check.conforms) {
      throw std::invalid_argument("scope model " + std::to_string(i) + " does not conform: " +
                                  check.diagnostic);
    }
    if (check.justifies) {
      ++justifying;
      trail.push_back("model " + std::to_string(i) + " justifies");
    } else {
      trail.push_back("model " + std::to_string(i) + " does not justify: " + check.diagnostic);
    }
  }
  Classification out;
  out.evidence_trail = std::move(trail);
  if (justifying == 0) {
    out.tag = SituationType::Type1;
  } else if (justifying == models.size()) {
    out.tag = SituationType::Type2;
  } else {
    out.tag = SituationType::Type3;
  }
  out.evidence_trail.push_back(std::to_string(justifying) + " of " +
                               std::to_string(models.size()) + " models justify");
  return out;
}

}  // namespace bayesbias
