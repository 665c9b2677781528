#pragma once

#include <string>

#include <json.hpp>

#include "scg/deception.hpp"
#include "scg/epistemics.hpp"
#include "scg/mitigation.hpp"
#include "scg/model.hpp"

namespace scg {

inline nlohmann::json to_json(const Setting& s) {
  nlohmann::json j;
  j["assignment"] = s.assignment;
  j["probability"] = s.probability;
  return j;
}

inline nlohmann::json to_json(const Policy& p) {
  nlohmann::json j;
  j["decision"] = p.decision;
  j["table"] = p.table;
  return j;
}

inline nlohmann::json to_json(const BeliefVerdict& v) {
  nlohmann::json j;
  j["responds"] = v.responds;
  j["acts_as_if"] = v.acts_as_if;
  j["believes"] = v.believes;
  j["truth"] = v.truth;
  j["p_phi_true"] = v.p_phi_true;
  j["p_phi_false"] = v.p_phi_false;
  return j;
}

inline nlohmann::json to_json(const IntentVerdict& v) {
  nlohmann::json j;
  j["benefit"] = v.benefit;
  j["release"] = v.release;
  j["intends"] = v.intends;
  j["realized_outcome"] = v.realized_outcome;
  return j;
}

inline nlohmann::json to_json(const DeceptionRow& r) {
  nlohmann::json j;
  j["setting"] = to_json(r.setting);
  j["phi"] = r.phi;
  j["intends"] = r.intends;
  j["t_believes"] = r.t_believes;
  j["s_believes"] = r.s_believes;
  j["phi_true"] = r.phi_true;
  j["deceptive_here"] = r.deceptive_here();
  return j;
}

inline nlohmann::json to_json(const DeceptionVerdict& v) {
  nlohmann::json j;
  j["deceptive"] = v.deceptive;
  j["witnesses"] = nlohmann::json::array();
  for (const auto& w : v.witnesses) j["witnesses"].push_back(to_json(w));
  j["per_setting"] = nlohmann::json::array();
  for (const auto& r : v.per_setting) j["per_setting"].push_back(to_json(r));
  return j;
}

inline nlohmann::json to_json(const AdoptionRecord& r) {
  nlohmann::json j;
  j["step"] = r.step;
  j["candidate"] = r.candidate;
  j["accepted"] = r.accepted;
  j["reason"] = r.reason;
  return j;
}

inline nlohmann::json to_json(const TrainReport& r) {
  nlohmann::json j;
  j["learned_policy"] = to_json(r.learned_policy);
  j["expected_utility"] = r.expected_utility;
  j["deceptive"] = r.deceptive;
  j["performance_class"] = to_string(r.performance_class);
  j["mode"] = to_string(r.mode);
  if (r.seed)
    j["seed"] = *r.seed;
  else
    j["seed"] = nullptr;
  j["adoption_log"] = nlohmann::json::array();
  for (const auto& rec : r.adoption_log) j["adoption_log"].push_back(to_json(rec));
  return j;
}

/// Envelope for a single CLI invocation.
inline nlohmann::json run_report(const std::string& command, nlohmann::json inputs,
                                 nlohmann::json payload, double duration_seconds) {
  nlohmann::json j;
  j["format"] = 1;
  j["command"] = command;
  j["inputs"] = std::move(inputs);
  j["result"] = std::move(payload);
  j["duration_seconds"] = duration_seconds;
  return j;
}

}  // namespace scg
