#pragma once

// JSON file formats. One document per file, discriminated by "kind":
//
//   evidence   {"states": [...], "prior": {state: "p/q"}, "events": {name: [states]}}
//   skeleton   {"states": [...], "events": {...}}
//   beliefs    {"states": [...], "events": {...},
//               "worlds": [{"state", "label", "type", "q"}]}
//   situation  {"evidence": <evidence>, "scope": "full" | [<beliefs>...]}
//   plan       {"alternatives": [...], "choice": {"OMEGA" | event: [alternatives]}}
//   utilities  {"carrier": "states", "values": {alt: {state: "u"}}}
//              {"carrier": "worlds", "values": {alt: [{"state", "label", "value"}]}}
//   balancing  {"theta": {event: "p/q"}}
//
// Rationals are strings in canonical "p/q" or integer form. Object key order
// is preserved and is significant for "events". Unknown fields are rejected.

#include "bayesbias/balance.hpp"
#include "bayesbias/beliefs.hpp"
#include "bayesbias/classify.hpp"
#include "bayesbias/evidence.hpp"
#include "bayesbias/plans.hpp"

#include "json.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace bayesbias::io {

using Json = nlohmann::ordered_json;

/// Malformed or ill-typed input; `location` is "line:column" for syntax
/// errors and a JSON pointer otherwise.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string location, const std::string& message)
      : std::runtime_error(location + ": " + message), location_(std::move(location)) {}
  [[nodiscard]] const std::string& location() const { return location_; }

 private:
  std::string location_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Plan as written in a file; event names are resolved against a frame later.
struct PlanSpec {
  std::vector<std::string> alternatives;
  std::vector<std::pair<std::string, std::vector<std::string>>> choice;

  friend bool operator==(const PlanSpec&, const PlanSpec&) = default;
};

struct WorldValue {
  std::string state;
  std::string label;
  Rational value;

  friend bool operator==(const WorldValue&, const WorldValue&) = default;
};

/// Utilities as written in a file, keyed by names.
struct UtilitySpec {
  enum class Carrier { States, Worlds } carrier = Carrier::States;
  std::vector<std::string> alternatives;
  std::vector<std::vector<std::pair<std::string, Rational>>> state_values;  // States
  std::vector<std::vector<WorldValue>> world_values;                       // Worlds

  friend bool operator==(const UtilitySpec&, const UtilitySpec&) = default;
};

struct BalancingSpec {
  std::vector<std::pair<std::string, Rational>> theta;

  friend bool operator==(const BalancingSpec&, const BalancingSpec&) = default;
};

using Document = std::variant<ModelOfEvidence, Frame, ModelOfBeliefs, Situation, PlanSpec,
                              UtilitySpec, BalancingSpec>;

inline std::string_view kind_of(const Document& d) {
  static constexpr std::string_view names[] = {"evidence", "skeleton", "beliefs", "situation",
                                               "plan",     "utilities", "balancing"};
  return names[d.index()];
}

namespace detail {

inline std::string child(const std::string& path, std::string_view key) {
  std::string escaped;
  for (char c : key) {
    if (c == '~') escaped += "~0";
    else if (c == '/') escaped += "~1";
    else escaped += c;
  }
  return path + "/" + escaped;
}
inline std::string child(const std::string& path, std::size_t index) {
  return path + "/" + std::to_string(index);
}

inline const Json& object_at(const Json& j, const std::string& path,
                             std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) throw ParseError(path.empty() ? "/" : path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw ParseError(child(path, key), "unknown field '" + key + "'");
  }
  return j;
}

inline const Json& field(const Json& j, const std::string& path, std::string_view key) {
  auto it = j.find(std::string(key));
  if (it == j.end()) throw ParseError(path.empty() ? "/" : path, "missing field '" + std::string(key) + "'");
  return *it;
}

inline std::string string_at(const Json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path, "expected a string");
  return j.get<std::string>();
}

inline std::vector<std::string> strings_at(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(string_at(j[i], child(path, i)));
  return out;
}

inline Rational rational_at(const Json& j, const std::string& path) {
  const std::string text = string_at(j, path);
  auto r = Rational::parse(text);
  if (!r) throw ParseError(path, "'" + text + "' is not a canonical rational (\"p/q\" or integer)");
  return *r;
}

inline void expect_kind(const Json& j, const std::string& path, std::string_view kind) {
  const std::string got = string_at(field(j, path, "kind"), child(path, "kind"));
  if (got != kind) throw ParseError(child(path, "kind"), "expected kind '" + std::string(kind) + "'");
}

template <typename Fn>
auto structural(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    throw ParseError(path.empty() ? "/" : path, e.what());
  }
}

inline Frame frame_at(const Json& j, const std::string& path) {
  const auto states = strings_at(field(j, path, "states"), child(path, "states"));
  const Json& events = field(j, path, "events");
  const std::string epath = child(path, "events");
  if (!events.is_object()) throw ParseError(epath, "expected an object of named events");
  std::vector<EventSpec> specs;
  for (const auto& [name, members] : events.items()) {
    specs.push_back({name, strings_at(members, child(epath, name))});
  }
  return structural(path, [&] { return Frame(states, specs); });
}

inline ModelOfEvidence evidence_at(const Json& j, const std::string& path) {
  object_at(j, path, {"kind", "states", "prior", "events"});
  expect_kind(j, path, "evidence");
  Frame frame = frame_at(j, path);
  const Json& prior = field(j, path, "prior");
  const std::string ppath = child(path, "prior");
  if (!prior.is_object()) throw ParseError(ppath, "expected an object");
  std::vector<std::optional<Rational>> values(frame.state_count());
  for (const auto& [state, value] : prior.items()) {
    auto idx = frame.find_state(state);
    if (!idx) throw ParseError(child(ppath, state), "unknown state '" + state + "'");
    values[*idx] = rational_at(value, child(ppath, state));
  }
  std::vector<Rational> p;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!values[i]) throw ParseError(ppath, "no prior for state '" + frame.state(i) + "'");
    p.push_back(*values[i]);
  }
  return ModelOfEvidence(std::move(frame), std::move(p));
}

inline Frame skeleton_at(const Json& j, const std::string& path) {
  object_at(j, path, {"kind", "states", "events"});
  expect_kind(j, path, "skeleton");
  return frame_at(j, path);
}

inline ModelOfBeliefs beliefs_at(const Json& j, const std::string& path) {
  object_at(j, path, {"kind", "states", "events", "worlds"});
  expect_kind(j, path, "beliefs");
  Frame frame = frame_at(j, path);
  const Json& worlds = field(j, path, "worlds");
  const std::string wpath = child(path, "worlds");
  if (!worlds.is_array()) throw ParseError(wpath, "expected an array of worlds");
  std::vector<WorldSpec> specs;
  for (std::size_t i = 0; i < worlds.size(); ++i) {
    const std::string p = child(wpath, i);
    const Json& w = object_at(worlds[i], p, {"state", "label", "type", "q"});
    specs.push_back({string_at(field(w, p, "state"), child(p, "state")),
                     string_at(field(w, p, "label"), child(p, "label")),
                     string_at(field(w, p, "type"), child(p, "type")),
                     rational_at(field(w, p, "q"), child(p, "q"))});
  }
  return structural(path, [&] { return ModelOfBeliefs(frame, specs); });
}

inline Situation situation_at(const Json& j, const std::string& path) {
  object_at(j, path, {"kind", "evidence", "scope"});
  expect_kind(j, path, "situation");
  Situation s{evidence_at(field(j, path, "evidence"), child(path, "evidence")), FullScope{}};
  const Json& scope = field(j, path, "scope");
  const std::string spath = child(path, "scope");
  if (scope.is_string()) {
    if (scope.get<std::string>() != "full") throw ParseError(spath, "scope must be \"full\" or a list");
    return s;
  }
  if (!scope.is_array() || scope.empty()) {
    throw ParseError(spath, "scope must be \"full\" or a non-empty list of beliefs");
  }
  std::vector<ModelOfBeliefs> models;
  for (std::size_t i = 0; i < scope.size(); ++i) models.push_back(beliefs_at(scope[i], child(spath, i)));
  s.scope = std::move(models);
  return s;
}

inline PlanSpec plan_at(const Json& j, const std::string& path) {
  object_at(j, path, {"kind", "alternatives", "choice"});
  expect_kind(j, path, "plan");
  PlanSpec p;
  p.alternatives = strings_at(field(j, path, "alternatives"), child(path, "alternatives"));
  const Json& choice = field(j, path, "choice");
  const std::string cpath = child(path, "choice");
  if (!choice.is_object()) throw ParseError(cpath, "expected an object");
  for (const auto& [event, alts] : choice.items()) {
    p.choice.emplace_back(event, strings_at(alts, child(cpath, event)));
  }
  return p;
}

inline UtilitySpec utilities_at(const Json& j, const std::string& path) {
  object_at(j, path, {"kind", "carrier", "values"});
  expect_kind(j, path, "utilities");
  UtilitySpec u;
  const std::string carrier = string_at(field(j, path, "carrier"), child(path, "carrier"));
  if (carrier == "states") {
    u.carrier = UtilitySpec::Carrier::States;
  } else if (carrier == "worlds") {
    u.carrier = UtilitySpec::Carrier::Worlds;
  } else {
    throw ParseError(child(path, "carrier"), "carrier must be \"states\" or \"worlds\"");
  }
  const Json& values = field(j, path, "values");
  const std::string vpath = child(path, "values");
  if (!values.is_object()) throw ParseError(vpath, "expected an object keyed by alternative");
  for (const auto& [alt, table] : values.items()) {
    const std::string apath = child(vpath, alt);
    u.alternatives.push_back(alt);
    if (u.carrier == UtilitySpec::Carrier::States) {
      if (!table.is_object()) throw ParseError(apath, "expected an object keyed by state");
      std::vector<std::pair<std::string, Rational>> row;
      for (const auto& [state, value] : table.items()) {
        row.emplace_back(state, rational_at(value, child(apath, state)));
      }
      u.state_values.push_back(std::move(row));
    } else {
      if (!table.is_array()) throw ParseError(apath, "expected an array of world values");
      std::vector<WorldValue> row;
      for (std::size_t i = 0; i < table.size(); ++i) {
        const std::string p = child(apath, i);
        const Json& w = object_at(table[i], p, {"state", "label", "value"});
        row.push_back({string_at(field(w, p, "state"), child(p, "state")),
                       string_at(field(w, p, "label"), child(p, "label")),
                       rational_at(field(w, p, "value"), child(p, "value"))});
      }
      u.world_values.push_back(std::move(row));
    }
  }
  return u;
}

inline BalancingSpec balancing_at(const Json& j, const std::string& path) {
  object_at(j, path, {"kind", "theta"});
  expect_kind(j, path, "balancing");
  const Json& theta = field(j, path, "theta");
  const std::string tpath = child(path, "theta");
  if (!theta.is_object()) throw ParseError(tpath, "expected an object keyed by event");
  BalancingSpec b;
  for (const auto& [event, value] : theta.items()) {
    b.theta.emplace_back(event, rational_at(value, child(tpath, event)));
  }
  return b;
}

}  // namespace detail

/// Decodes a parsed JSON value into the domain object named by its "kind".
inline Document from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("/", "expected an object");
  const std::string kind = detail::string_at(detail::field(j, "", "kind"), "/kind");
  if (kind == "evidence") return detail::evidence_at(j, "");
  if (kind == "skeleton") return detail::skeleton_at(j, "");
  if (kind == "beliefs") return detail::beliefs_at(j, "");
  if (kind == "situation") return detail::situation_at(j, "");
  if (kind == "plan") return detail::plan_at(j, "");
  if (kind == "utilities") return detail::utilities_at(j, "");
  if (kind == "balancing") return detail::balancing_at(j, "");
  throw ParseError("/kind", "unknown kind '" + kind + "'");
}

inline Document parse_document(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(std::to_string(line) + ":" + std::to_string(column), "malformed JSON");
  }
  return from_json(j);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return buffer.str();
}

inline Document load_document(const std::string& path) { return parse_document(read_file(path)); }

/// Loads a file and requires a particular kind.
template <typename T>
T load(const std::string& path) {
  Document d = load_document(path);
  if (auto* v = std::get_if<T>(&d)) return std::move(*v);
  throw ParseError("/kind", "'" + path + "' holds a " + std::string(kind_of(d)) +
                                " document, which is not accepted here");
}

// ---------------------------------------------------------------------------
// Name resolution against a frame.

inline Plan resolve_plan(const PlanSpec& spec, const Frame& f) {
  try {
    std::vector<std::optional<AltSet>> choices(f.event_count() + 1);
    for (const auto& [event, alts] : spec.choice) {
      const EventRef ref = f.event_ref(event);
      if (choices[ref.slot()]) throw std::invalid_argument("event '" + event + "' listed twice");
      AltSet set;
      for (const auto& a : alts) {
        auto it = std::find(spec.alternatives.begin(), spec.alternatives.end(), a);
        if (it == spec.alternatives.end()) throw std::invalid_argument("unknown alternative '" + a + "'");
        set.insert(static_cast<std::size_t>(it - spec.alternatives.begin()));
      }
      choices[ref.slot()] = std::move(set);
    }
    std::vector<AltSet> out;
    for (std::size_t k = 0; k < choices.size(); ++k) {
      if (!choices[k]) {
        throw std::invalid_argument("plan has no entry for " + f.name_of(EventRef::from_slot(k)));
      }
      out.push_back(std::move(*choices[k]));
    }
    return Plan(spec.alternatives, std::move(out));
  } catch (const std::invalid_argument& e) {
    throw ParseError("/choice", e.what());
  }
}

inline PlanSpec plan_spec(const Plan& p, const Frame& f) {
  PlanSpec spec{p.alternatives(), {}};
  for (const EventRef& b : f.all_events()) {
    std::vector<std::string> alts;
    for (std::size_t a : p.choice(b)) alts.push_back(p.alternatives()[a]);
    spec.choice.emplace_back(f.name_of(b), std::move(alts));
  }
  return spec;
}

inline UtilityTable resolve_state_utilities(const UtilitySpec& spec, const Frame& f) {
  if (spec.carrier != UtilitySpec::Carrier::States) {
    throw ParseError("/carrier", "utilities must be defined on states here");
  }
  UtilityTable u{spec.alternatives, {}};
  for (std::size_t a = 0; a < spec.alternatives.size(); ++a) {
    std::vector<std::optional<Rational>> row(f.state_count());
    for (const auto& [state, value] : spec.state_values[a]) {
      auto idx = f.find_state(state);
      if (!idx) throw ParseError("/values/" + spec.alternatives[a], "unknown state '" + state + "'");
      row[*idx] = value;
    }
    std::vector<Rational> full;
    for (std::size_t s = 0; s < row.size(); ++s) {
      if (!row[s]) {
        throw ParseError("/values/" + spec.alternatives[a], "no utility for state '" + f.state(s) + "'");
      }
      full.push_back(*row[s]);
    }
    u.values.push_back(std::move(full));
  }
  return u;
}

inline UtilityTable resolve_world_utilities(const UtilitySpec& spec, const ModelOfBeliefs& m) {
  if (spec.carrier != UtilitySpec::Carrier::Worlds) {
    throw ParseError("/carrier", "utilities must be defined on worlds here");
  }
  UtilityTable v{spec.alternatives, {}};
  for (std::size_t a = 0; a < spec.alternatives.size(); ++a) {
    const std::string path = "/values/" + spec.alternatives[a];
    std::vector<std::optional<Rational>> row(m.world_count());
    for (const auto& wv : spec.world_values[a]) {
      std::optional<std::size_t> hit;
      for (std::size_t w = 0; w < m.world_count(); ++w) {
        if (m.frame().state(m.worlds()[w].state) == wv.state && m.worlds()[w].label == wv.label) hit = w;
      }
      if (!hit) throw ParseError(path, "unknown world (" + wv.state + ", " + wv.label + ")");
      row[*hit] = wv.value;
    }
    std::vector<Rational> full;
    for (std::size_t w = 0; w < row.size(); ++w) {
      if (!row[w]) throw ParseError(path, "no utility for world " + m.describe(w));
      full.push_back(*row[w]);
    }
    v.values.push_back(std::move(full));
  }
  return v;
}

inline UtilitySpec state_utility_spec(const UtilityTable& u, const Frame& f) {
  UtilitySpec spec;
  spec.carrier = UtilitySpec::Carrier::States;
  spec.alternatives = u.alternatives;
  for (const auto& row : u.values) {
    std::vector<std::pair<std::string, Rational>> named;
    for (std::size_t s = 0; s < row.size(); ++s) named.emplace_back(f.state(s), row[s]);
    spec.state_values.push_back(std::move(named));
  }
  return spec;
}

inline UtilitySpec world_utility_spec(const UtilityTable& v, const ModelOfBeliefs& m) {
  UtilitySpec spec;
  spec.carrier = UtilitySpec::Carrier::Worlds;
  spec.alternatives = v.alternatives;
  for (const auto& row : v.values) {
    std::vector<WorldValue> named;
    for (std::size_t w = 0; w < row.size(); ++w) {
      named.push_back({m.frame().state(m.worlds()[w].state), m.worlds()[w].label, row[w]});
    }
    spec.world_values.push_back(std::move(named));
  }
  return spec;
}

inline BalancingFunction resolve_balancing(const BalancingSpec& spec, const Frame& f) {
  std::vector<std::optional<Rational>> theta(f.event_count());
  for (const auto& [event, value] : spec.theta) {
    EventRef ref = EventRef::omega();
    try {
      ref = f.event_ref(event);
    } catch (const std::invalid_argument& e) {
      throw ParseError("/theta/" + event, e.what());
    }
    if (ref.is_omega()) throw ParseError("/theta/" + event, "theta is not defined on OMEGA");
    theta[ref.index()] = value;
  }
  BalancingFunction t;
  for (std::size_t b = 0; b < theta.size(); ++b) {
    if (!theta[b]) throw ParseError("/theta", "no value for event '" + f.event_name(b) + "'");
    t.theta.push_back(*theta[b]);
  }
  return t;
}

inline BalancingSpec balancing_spec(const BalancingFunction& t, const Frame& f) {
  BalancingSpec spec;
  for (std::size_t b = 0; b < t.theta.size(); ++b) spec.theta.emplace_back(f.event_name(b), t.theta[b]);
  return spec;
}

// ---------------------------------------------------------------------------
// Serialization.

inline Json frame_fields(Json j, const Frame& f) {
  j["states"] = f.states();
  Json events = Json::object();
  for (std::size_t b = 0; b < f.event_count(); ++b) {
    events[f.event_name(b)] = f.names_in(f.event_states(b));
  }
  j["events"] = std::move(events);
  return j;
}

inline Json to_json(const ModelOfEvidence& e) {
  Json j = {{"kind", "evidence"}};
  j["states"] = e.frame().states();
  Json prior = Json::object();
  for (std::size_t s = 0; s < e.frame().state_count(); ++s) {
    prior[e.frame().state(s)] = e.prior(s).to_string();
  }
  j["prior"] = std::move(prior);
  Json events = Json::object();
  for (std::size_t b = 0; b < e.frame().event_count(); ++b) {
    events[e.frame().event_name(b)] = e.frame().names_in(e.frame().event_states(b));
  }
  j["events"] = std::move(events);
  return j;
}

inline Json to_json(const Frame& f) { return frame_fields(Json{{"kind", "skeleton"}}, f); }

inline Json to_json(const ModelOfBeliefs& m) {
  Json j = frame_fields(Json{{"kind", "beliefs"}}, m.frame());
  Json worlds = Json::array();
  for (const auto& w : m.worlds()) {
    worlds.push_back(Json{{"state", m.frame().state(w.state)},
                          {"label", w.label},
                          {"type", m.frame().event_name(w.type)},
                          {"q", w.q.to_string()}});
  }
  j["worlds"] = std::move(worlds);
  return j;
}

inline Json to_json(const Situation& s) {
  Json j = {{"kind", "situation"}, {"evidence", to_json(s.evidence)}};
  if (std::holds_alternative<FullScope>(s.scope)) {
    j["scope"] = "full";
  } else {
    Json list = Json::array();
    for (const auto& m : std::get<std::vector<ModelOfBeliefs>>(s.scope)) list.push_back(to_json(m));
    j["scope"] = std::move(list);
  }
  return j;
}

inline Json to_json(const PlanSpec& p) {
  Json choice = Json::object();
  for (const auto& [event, alts] : p.choice) choice[event] = alts;
  return Json{{"kind", "plan"}, {"alternatives", p.alternatives}, {"choice", std::move(choice)}};
}

inline Json to_json(const UtilitySpec& u) {
  const bool states = u.carrier == UtilitySpec::Carrier::States;
  Json values = Json::object();
  for (std::size_t a = 0; a < u.alternatives.size(); ++a) {
    if (states) {
      Json row = Json::object();
      for (const auto& [state, value] : u.state_values[a]) row[state] = value.to_string();
      values[u.alternatives[a]] = std::move(row);
    } else {
      Json row = Json::array();
      for (const auto& wv : u.world_values[a]) {
        row.push_back(Json{{"state", wv.state}, {"label", wv.label}, {"value", wv.value.to_string()}});
      }
      values[u.alternatives[a]] = std::move(row);
    }
  }
  return Json{{"kind", "utilities"}, {"carrier", states ? "states" : "worlds"}, {"values", std::move(values)}};
}

inline Json to_json(const BalancingSpec& b) {
  Json theta = Json::object();
  for (const auto& [event, value] : b.theta) theta[event] = value.to_string();
  return Json{{"kind", "balancing"}, {"theta", std::move(theta)}};
}

inline Json to_json(const Document& d) {
  return std::visit([](const auto& v) { return to_json(v); }, d);
}

inline Json to_json(const ValidationReport& report) {
  Json list = Json::array();
  for (const auto& v : report) {
    list.push_back(Json{{"clause", std::string(clause_name(v.clause))}, {"detail", v.detail}});
  }
  return list;
}

}  // namespace bayesbias::io
