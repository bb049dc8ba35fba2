// The revised-choice stage of the three-door game, reasoned about two ways.
//
// States name the door hiding the prize. After the agent picks door h, the
// host opens a door that is empty; the agent learns either "e is empty" or
// "f is empty". Conditioning the prior on that event is the heuristic route.
// A model of beliefs that records which door the host actually opened gives
// the sound route. They disagree, and the disagreement cannot be removed.

#include "bayesbias/bayesbias.hpp"

#include <iostream>

using namespace bayesbias;

int main() {
  const Rational third(1, 3);
  const Frame frame({"e", "h", "f"}, {{"Empty", {"h", "f"}}, {"F", {"e", "h"}}});
  const ModelOfEvidence evidence(frame, {third, third, third});
  if (!validate_evidence(evidence).empty()) return 1;

  // Host opens e or f at random when the prize is behind h.
  const Rational sixth(1, 6);
  const ModelOfBeliefs host(frame, std::vector<WorldSpec>{
                                       {"e", "opens-f", "F", third},
                                       {"h", "opens-e", "Empty", sixth},
                                       {"h", "opens-f", "F", sixth},
                                       {"f", "opens-e", "Empty", third},
                                   });

  const StateSet stay = frame.states_of({"h"});
  const EventRef opened_e = frame.event_ref("Empty");
  std::cout << "P[prize at h | e empty]                = "
            << conditional_probability(evidence, stay, opened_e) << '\n';
  std::cout << "Q[prize at h | host opened e]          = " << sound_posterior(host, stay, opened_e) << '\n';

  const auto check = check_justification(host, evidence);
  std::cout << "host model conforms: " << (check.conforms ? "yes" : "no")
            << ", justifies: " << (check.justifies ? "yes" : "no") << '\n';

  if (auto theta = find_balancing(evidence)) {
    std::cout << "balanced; a justifying model exists\n";
  } else {
    std::cout << "unbalanced; no model of beliefs justifies conditioning on the event\n";
  }
  const auto c = classify_situation({evidence, FullScope{}});
  std::cout << "full situation: " << type_name(c.tag) << '\n';
}
