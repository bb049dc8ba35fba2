#pragma once

// Command-line front end. run_command() is the whole program minus process
// setup, so tests can drive it in-process.
//
// Exit codes: 0 valid / feasible / true, 1 infeasible / false,
// 2 malformed or invalid input, 3 I/O failure.

#include "bayesbias/bayesbias.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

namespace bayesbias::cli {

using io::Json;

enum ExitCode : int { kOk = 0, kNegative = 1, kInvalid = 2, kIoFailure = 3 };

namespace detail {

struct Report {
  Json json;
  std::vector<std::string> text;
  int code = kOk;
};

inline std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  std::erase_if(out, [](const std::string& x) { return x.empty(); });
  return out;
}

inline void require_valid(const ValidationReport& report) {
  if (!report.empty()) throw ValidationError(report);
}

inline ModelOfEvidence load_valid_evidence(const std::string& path) {
  auto e = io::load<ModelOfEvidence>(path);
  require_valid(validate_evidence(e));
  return e;
}

inline ModelOfBeliefs load_valid_beliefs(const std::string& path) {
  auto m = io::load<ModelOfBeliefs>(path);
  require_valid(validate_beliefs(m));
  return m;
}

inline Json mismatches_json(const Frame& f, const std::vector<PosteriorMismatch>& list) {
  Json out = Json::array();
  for (const auto& mm : list) {
    out.push_back(Json{{"state", f.state(mm.state)},
                       {"event", f.name_of(mm.event)},
                       {"sound", mm.sound.to_string()},
                       {"heuristic", mm.heuristic.to_string()}});
  }
  return out;
}

inline Report validate_cmd(const std::string& path) {
  Report r;
  const io::Document doc = io::load_document(path);
  ValidationReport violations;
  if (const auto* e = std::get_if<ModelOfEvidence>(&doc)) {
    violations = validate_evidence(*e);
  } else if (const auto* f = std::get_if<Frame>(&doc)) {
    // A skeleton is valid when it is a model of evidence under full support.
    const Rational uniform(1, static_cast<std::int64_t>(std::max<std::size_t>(f->state_count(), 1)));
    violations = validate_evidence(ModelOfEvidence(*f, std::vector<Rational>(f->state_count(), uniform)));
  } else if (const auto* m = std::get_if<ModelOfBeliefs>(&doc)) {
    violations = validate_beliefs(*m);
  } else if (const auto* s = std::get_if<Situation>(&doc)) {
    violations = validate_evidence(s->evidence);
    if (const auto* list = std::get_if<std::vector<ModelOfBeliefs>>(&s->scope)) {
      for (const auto& m : *list) {
        for (auto& v : validate_beliefs(m)) violations.push_back(std::move(v));
      }
      if (violations.empty()) {
        for (const auto& m : *list) {
          const auto c = check_conformity(m, s->evidence);
          if (!c.conforms) throw std::invalid_argument("scope model does not conform: " + c.diagnostic);
        }
      }
    }
  }
  const bool valid = violations.empty();
  r.json = Json{{"command", "validate"}, {"kind", std::string(io::kind_of(doc))}, {"valid", valid},
                {"violations", io::to_json(violations)}};
  r.text.push_back(std::string(io::kind_of(doc)) + ": " + (valid ? "valid" : "INVALID"));
  for (const auto& v : violations) {
    r.text.push_back("  " + std::string(clause_name(v.clause)) + ": " + v.detail);
  }
  r.code = valid ? kOk : kInvalid;
  return r;
}

inline Report posterior_cmd(const std::string& path, const std::string& of, const std::string& given,
                            const std::string& sound_path) {
  Report r;
  const ModelOfEvidence e = load_valid_evidence(path);
  const Frame& f = e.frame();
  const auto names = split_csv(of);
  const StateSet a = f.states_of(names);
  const EventRef b = f.event_ref(given);
  const Rational heuristic = conditional_probability(e, a, b);
  r.json = Json{{"command", "posterior"}, {"of", names}, {"given", given},
                {"heuristic", heuristic.to_string()}};
  const std::string target = "{" + join(names) + "} | " + given;
  r.text.push_back("heuristic P[" + target + "] = " + heuristic.to_string());
  if (!sound_path.empty()) {
    const ModelOfBeliefs m = load_valid_beliefs(sound_path);
    if (!(m.frame() == f)) {
      throw std::invalid_argument("beliefs file has different states or events than the evidence");
    }
    const Rational sound = sound_posterior(m, a, b);
    const auto order = rat_compare(sound, heuristic);
    const char* cmp = order < 0 ? "sound_less" : order > 0 ? "sound_greater" : "equal";
    r.json["sound"] = sound.to_string();
    r.json["comparison"] = cmp;
    r.text.push_back("sound     Q[" + target + "] = " + sound.to_string());
    r.text.push_back(order == 0 ? "no bias: the posteriors agree"
                                : std::string("bias: sound posterior is ") +
                                      (order > 0 ? "greater" : "less") + " than the heuristic one");
  }
  return r;
}

inline Json theta_json(const BalancingFunction& t, const Frame& f) {
  return io::to_json(io::balancing_spec(t, f))["theta"];
}

inline Report balance_cmd(const std::string& path) {
  Report r;
  const ModelOfEvidence e = load_valid_evidence(path);
  const auto theta = find_balancing(e);
  r.json = Json{{"command", "balance"}, {"balanced", theta.has_value()}};
  if (theta) {
    r.json["theta"] = theta_json(*theta, e.frame());
    r.text.push_back("balanced: " + r.json["theta"].dump());
  } else {
    r.text.push_back("unbalanced: no balancing function exists");
    r.code = kNegative;
  }
  return r;
}

inline Report justify_cmd(const std::string& beliefs_path, const std::string& evidence_path) {
  Report r;
  const ModelOfBeliefs m = load_valid_beliefs(beliefs_path);
  const ModelOfEvidence e = load_valid_evidence(evidence_path);
  const auto check = check_justification(m, e);
  r.json = Json{{"command", "justify"},
                {"conforms", check.conforms},
                {"justifies", check.justifies},
                {"diagnostic", check.diagnostic},
                {"mismatches", mismatches_json(e.frame(), check.mismatches)}};
  r.text.push_back(std::string("conforms: ") + (check.conforms ? "yes" : "no"));
  r.text.push_back(std::string("justifies: ") + (check.justifies ? "yes" : "no"));
  for (const auto& mm : check.mismatches) {
    r.text.push_back("  at ({" + e.frame().state(mm.state) + "}, " + e.frame().name_of(mm.event) +
                     "): sound " + mm.sound.to_string() + " vs heuristic " + mm.heuristic.to_string());
  }
  if (!check.conforms) r.text.push_back("  " + check.diagnostic);
  r.code = check.justifies ? kOk : kNegative;
  return r;
}

inline Report construct_cmd(const std::string& which, const std::string& path,
                            const std::string& theta_path) {
  Report r;
  const ModelOfEvidence e = load_valid_evidence(path);
  r.json = Json{{"command", "construct"}, {"construction", which}};
  if (which == "conforming") {
    r.json["model"] = io::to_json(build_conforming(e));
    r.text.push_back("conforming model of beliefs:");
    r.text.push_back(r.json["model"].dump(2));
    return r;
  }
  std::optional<BalancingFunction> theta;
  if (!theta_path.empty()) {
    theta = io::resolve_balancing(io::load<io::BalancingSpec>(theta_path), e.frame());
    if (!verify_balancing(e, *theta)) throw std::invalid_argument("theta is not a balancing function");
  } else {
    theta = find_balancing(e);
  }
  if (!theta) {
    r.json["possible"] = false;
    r.json["reason"] = "unbalanced";
    r.text.push_back("not possible: the model of evidence is unbalanced");
    r.code = kNegative;
    return r;
  }
  r.json["theta"] = theta_json(*theta, e.frame());
  if (which == "justifying") {
    r.json["possible"] = true;
    r.json["model"] = io::to_json(build_justifying(e, *theta));
    r.text.push_back("justifying model of beliefs:");
    r.text.push_back(r.json["model"].dump(2));
    return r;
  }
  const auto counter = build_conforming_nonjustifying(e, *theta);
  if (!counter) {
    r.json["possible"] = false;
    r.json["reason"] = "almost-sure partition";
    r.text.push_back("not possible: the events form an almost-sure partition");
    r.code = kNegative;
    return r;
  }
  const Frame& f = e.frame();
  r.json["possible"] = true;
  r.json["pair"] = Json::array({f.event_name(counter->first), f.event_name(counter->second)});
  r.json["sound"] = counter->sound.to_string();
  r.json["heuristic"] = counter->heuristic.to_string();
  r.json["model"] = io::to_json(counter->model);
  r.text.push_back("conforming, non-justifying model of beliefs for pair (" +
                   f.event_name(counter->first) + ", " + f.event_name(counter->second) + "):");
  r.text.push_back("  Q[alpha(C & D) | beta(D)] = " + counter->sound.to_string() + " < P[C & D | D] = " +
                   counter->heuristic.to_string());
  r.text.push_back(r.json["model"].dump(2));
  return r;
}

inline Report classify_cmd(const std::string& path) {
  Report r;
  const Situation s = io::load<Situation>(path);
  const auto c = classify_situation(s);
  r.json = Json{{"command", "classify"},
                {"scope", std::holds_alternative<FullScope>(s.scope) ? "full" : "explicit"},
                {"type", std::string(type_name(c.tag))},
                {"trail", c.evidence_trail}};
  r.text.push_back(std::string(type_name(c.tag)));
  for (const auto& line : c.evidence_trail) r.text.push_back("  " + line);
  return r;
}

inline Json witness_json(const RationalizationWitness& w) {
  Json j = Json::object();
  if (const auto* e = std::get_if<ModelOfEvidence>(&w.model)) {
    j["model"] = io::to_json(*e);
    j["utilities"] = io::to_json(io::state_utility_spec(w.utilities, e->frame()));
  } else {
    const auto& m = std::get<ModelOfBeliefs>(w.model);
    j["model"] = io::to_json(m);
    j["utilities"] = io::to_json(io::world_utility_spec(w.utilities, m));
  }
  return j;
}

inline Report rationalize_cmd(const std::string& plan_path, const std::string& skeleton_path,
                              const std::string& by, bool fixed_prior) {
  Report r;
  const auto spec = io::load<io::PlanSpec>(plan_path);
  const io::Document doc = io::load_document(skeleton_path);
  Frame frame;
  const ModelOfEvidence* prior = std::get_if<ModelOfEvidence>(&doc);
  if (prior) {
    frame = prior->frame();
  } else if (const auto* f = std::get_if<Frame>(&doc)) {
    frame = *f;
  } else {
    throw io::ParseError("/kind", "--skeleton needs a skeleton or evidence document");
  }
  if (fixed_prior && (by != "evidence" || !prior)) {
    throw std::invalid_argument("--fixed-prior needs --by evidence and an evidence document");
  }
  const Plan plan = io::resolve_plan(spec, frame);
  Rationalization result;
  if (by == "beliefs") {
    result = rationalize_by_beliefs(frame, plan);
  } else if (fixed_prior) {
    result = rationalize_by_evidence_fixed_prior(*prior, plan);
  } else {
    result = rationalize_by_evidence(frame, plan);
  }
  r.json = Json{{"command", "rationalize"},
                {"by", by},
                {"fixed_prior", fixed_prior},
                {"feasible", result.feasible()},
                {"margin", result.margin.to_string()}};
  if (result.witness) {
    r.json["witness"] = witness_json(*result.witness);
    r.text.push_back("rational by " + by + " (margin " + result.margin.to_string() + ")");
    r.text.push_back(r.json["witness"].dump(2));
  } else {
    r.text.push_back("not rational by " + by);
    r.code = kNegative;
  }
  return r;
}

inline Report plan_cmd(const std::string& model_path, const std::string& utilities_path) {
  Report r;
  const io::Document doc = io::load_document(model_path);
  const auto spec = io::load<io::UtilitySpec>(utilities_path);
  Plan plan;
  Frame frame;
  if (const auto* e = std::get_if<ModelOfEvidence>(&doc)) {
    require_valid(validate_evidence(*e));
    frame = e->frame();
    plan = plan_from_evidence(*e, io::resolve_state_utilities(spec, frame));
  } else if (const auto* m = std::get_if<ModelOfBeliefs>(&doc)) {
    require_valid(validate_beliefs(*m));
    frame = m->frame();
    plan = plan_from_beliefs(*m, io::resolve_world_utilities(spec, *m));
  } else {
    throw io::ParseError("/kind", "plan needs an evidence or beliefs document");
  }
  r.json = Json{{"command", "plan"}, {"plan", io::to_json(io::plan_spec(plan, frame))}};
  for (const auto& [event, alts] : io::plan_spec(plan, frame).choice) {
    r.text.push_back(event + ": {" + join(alts) + "}");
  }
  return r;
}

inline Report error_report(const std::string& command, const char* type, const std::string& message,
                           int code) {
  Report r;
  r.json = Json{{"command", command}, {"error", Json{{"type", type}, {"message", message}}}};
  r.text.push_back(std::string("error (") + type + "): " + message);
  r.code = code;
  return r;
}

}  // namespace detail

/// Runs one command; `args` excludes the program name.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heuristic vs. sound Bayesian inference: evidence and belief models"};
  app.require_subcommand(1);
  bool json_only = false;
  app.add_flag("--json", json_only, "Print only the machine-readable report");

  std::string file, of, given, sound, against, which, theta, skeleton, by, utilities;
  bool fixed_prior = false;

  auto* validate = app.add_subcommand("validate", "Validate any model file");
  validate->add_option("FILE", file)->required();

  auto* posterior = app.add_subcommand("posterior", "Heuristic (and sound) posterior");
  posterior->add_option("FILE", file, "Model of evidence")->required();
  posterior->add_option("--of", of, "Comma-separated states")->required();
  posterior->add_option("--given", given, "Event name or OMEGA")->required();
  posterior->add_option("--sound", sound, "Model of beliefs for the sound posterior");

  auto* balance = app.add_subcommand("balance", "Find a balancing function");
  balance->add_option("FILE", file)->required();

  auto* justify = app.add_subcommand("justify", "Check conformity and justification");
  justify->add_option("BELIEFS_FILE", file)->required();
  justify->add_option("--against", against, "Model of evidence")->required();

  auto* construct = app.add_subcommand("construct", "Build a model of beliefs");
  construct->add_option("KIND", which)
      ->required()
      ->check(CLI::IsMember({"conforming", "justifying", "counterexample"}));
  construct->add_option("FILE", file)->required();
  construct->add_option("--theta", theta, "Balancing function file");

  auto* classify = app.add_subcommand("classify", "Classify a situation");
  classify->add_option("SITUATION_FILE", file)->required();

  auto* rationalize = app.add_subcommand("rationalize", "Decide plan rationalizability");
  rationalize->add_option("PLAN_FILE", file)->required();
  rationalize->add_option("--skeleton", skeleton, "Skeleton or evidence file")->required();
  rationalize->add_option("--by", by)->required()->check(CLI::IsMember({"evidence", "beliefs"}));
  rationalize->add_flag("--fixed-prior", fixed_prior, "Keep the evidence file's prior");

  auto* plan = app.add_subcommand("plan", "Argmax plan of a model and utilities");
  plan->add_option("MODEL_FILE", file)->required();
  plan->add_option("--utilities", utilities)->required();

  for (auto* sub : app.get_subcommands({})) sub->add_flag("--json", json_only, "Print only JSON");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return kInvalid;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  detail::Report report;
  try {
    if (command == "validate") report = detail::validate_cmd(file);
    else if (command == "posterior") report = detail::posterior_cmd(file, of, given, sound);
    else if (command == "balance") report = detail::balance_cmd(file);
    else if (command == "justify") report = detail::justify_cmd(file, against);
    else if (command == "construct") report = detail::construct_cmd(which, file, theta);
    else if (command == "classify") report = detail::classify_cmd(file);
    else if (command == "rationalize") report = detail::rationalize_cmd(file, skeleton, by, fixed_prior);
    else report = detail::plan_cmd(file, utilities);
  } catch (const io::IoError& e) {
    report = detail::error_report(command, "io", e.what(), kIoFailure);
  } catch (const io::ParseError& e) {
    report = detail::error_report(command, "parse", e.what(), kInvalid);
  } catch (const ValidationError& e) {
    report = detail::error_report(command, "validation", e.what(), kInvalid);
    report.json["error"]["violations"] = io::to_json(e.report());
  } catch (const std::invalid_argument& e) {
    report = detail::error_report(command, "validation", e.what(), kInvalid);
  } catch (const std::domain_error& e) {
    report = detail::error_report(command, "validation", e.what(), kInvalid);
  }

  if (!json_only) {
    auto& text_stream = report.code >= kInvalid ? err : out;
    for (const auto& line : report.text) text_stream << line << '\n';
  }
  out << report.json.dump(2) << '\n';
  return report.code;
}

}  // namespace bayesbias::cli
