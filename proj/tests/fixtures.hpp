#pragma once

#include "scg/gamespec.hpp"
#include "scg/model.hpp"

namespace fixtures {

inline const scg::GameDocument& war() {
  static const scg::GameDocument doc = scg::builtin("war_game");
  return doc;
}

inline const scg::GameDocument& bet() {
  static const scg::GameDocument doc = scg::builtin("bet_game");
  return doc;
}

inline scg::Policy war_honest() { return war().honest_policy(); }

inline scg::Policy war_always_defend() {
  return scg::Policy{"DS", {{"strong", "defend"}, {"weak", "defend"}}};
}

inline scg::Policy war_always_retreat() {
  return scg::Policy{"DS", {{"strong", "retreat"}, {"weak", "retreat"}}};
}

inline scg::PolicyProfile war_profile(const scg::Policy& ds) {
  scg::PolicyProfile p = war().meta.fixed_opponents;
  p["DS"] = ds;
  return p;
}

inline scg::Policy bet_honest() { return bet().honest_policy(); }

// Reports the die truthfully when there is no side bet and shifted by one when
// there is.
inline scg::Policy bet_deceptive() {
  return scg::Policy{"DS",
                     {{"0,0", "0"},
                      {"0,1", "1"},
                      {"1,0", "1"},
                      {"1,1", "2"},
                      {"2,0", "2"},
                      {"2,1", "0"}}};
}

inline scg::PolicyProfile bet_profile(const scg::Policy& ds) {
  scg::PolicyProfile p = bet().meta.fixed_opponents;
  p["DS"] = ds;
  return p;
}

inline scg::Setting setting_of(const scg::Scg& g,
                               const std::map<std::string, std::string>& assignment) {
  for (const auto& s : scg::enumerate_settings(g))
    if (s.assignment == assignment) return s;
  throw std::runtime_error("no such setting");
}

}  // namespace fixtures
