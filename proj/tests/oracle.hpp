// Independent reference implementations used to cross-check the engine. These
// deliberately take the slow, obvious route: string-keyed fixpoint sweeps and
// explicit enumeration, no compiled tables, no per-context shortcuts.
#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "scg/model.hpp"

namespace oracle {

using scg::Policy;
using scg::PolicyProfile;
using scg::Scg;
using scg::Variable;
using scg::VariableKind;

using Values = std::map<std::string, std::string>;

inline std::string key_of(const std::vector<std::string>& parts) {
  std::string key;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) key += ',';
    key += parts[i];
  }
  return key;
}

// Every joint assignment of the given variables, odometer in declared order.
inline void all_joint(const std::vector<const Variable*>& vars,
                      const std::function<void(const Values&)>& fn) {
  std::vector<std::size_t> idx(vars.size(), 0);
  for (const auto* v : vars)
    if (v->domain.empty()) return;
  while (true) {
    Values vals;
    for (std::size_t i = 0; i < vars.size(); ++i) vals[vars[i]->name] = vars[i]->domain[idx[i]];
    fn(vals);
    std::size_t pos = idx.size();
    while (pos > 0) {
      --pos;
      if (++idx[pos] < vars[pos]->domain.size()) break;
      idx[pos] = 0;
      if (pos == 0) return;
    }
    if (idx.empty()) return;
  }
}

inline std::vector<const Variable*> chance_vars(const Scg& g) {
  std::vector<const Variable*> out;
  for (const auto& v : g.variables)
    if (v.kind == VariableKind::Chance) out.push_back(&v);
  return out;
}

// Probability of a joint chance assignment: product of cpd lookups.
inline double joint_probability(const Scg& g, const Values& chance) {
  double p = 1.0;
  for (const auto* v : chance_vars(g)) {
    std::vector<std::string> pvals;
    for (const auto& par : v->parents) pvals.push_back(chance.at(par));
    auto row = v->cpd.find(key_of(pvals));
    if (row == v->cpd.end()) return 0.0;
    auto cell = row->second.find(chance.at(v->name));
    p *= cell == row->second.end() ? 0.0 : cell->second;
  }
  return p;
}

inline std::vector<std::pair<Values, double>> settings(const Scg& g) {
  std::vector<std::pair<Values, double>> out;
  all_joint(chance_vars(g), [&](const Values& vals) {
    const double p = joint_probability(g, vals);
    if (p > 0.0) out.emplace_back(vals, p);
  });
  return out;
}

// Fixpoint-sweep evaluation: repeatedly fill in any variable whose parents are
// all known until nothing changes.
inline void evaluate(const Scg& g, const Values& chance, const PolicyProfile& profile,
                     const Values& forced, Values& sym, std::map<std::string, double>& utils) {
  bool progress = true;
  while (progress) {
    progress = false;
    for (const auto& v : g.variables) {
      const bool is_util = v.kind == VariableKind::Utility;
      if (!is_util && sym.count(v.name)) continue;
      if (is_util && utils.count(v.name)) continue;
      bool ready = true;
      std::vector<std::string> pvals;
      for (const auto& p : v.parents) {
        auto it = sym.find(p);
        if (it == sym.end()) {
          ready = false;
          break;
        }
        pvals.push_back(it->second);
      }
      if (!ready) continue;
      if (!is_util && forced.count(v.name)) {
        sym[v.name] = forced.at(v.name);
      } else if (v.kind == VariableKind::Chance) {
        sym[v.name] = chance.at(v.name);
      } else if (v.kind == VariableKind::Decision) {
        sym[v.name] = profile.at(v.name).table.at(key_of(pvals));
      } else {
        utils[v.name] = v.table.at(key_of(pvals));
      }
      progress = true;
    }
  }
  for (const auto& v : g.variables) {
    if (v.kind == VariableKind::Utility ? !utils.count(v.name) : !sym.count(v.name))
      throw std::runtime_error("oracle: could not evaluate " + v.name);
  }
}

inline double agent_utility(const Scg& g, const Values& chance, const PolicyProfile& profile,
                            const std::string& agent, const Values& forced = {}) {
  Values sym;
  std::map<std::string, double> utils;
  evaluate(g, chance, profile, forced, sym, utils);
  double sum = 0.0;
  for (const auto& v : g.variables)
    if (v.kind == VariableKind::Utility && v.agent == agent) sum += utils.at(v.name);
  return sum;
}

inline std::map<std::string, double> expected_utilities(const Scg& g,
                                                        const PolicyProfile& profile,
                                                        const Values& forced = {}) {
  std::map<std::string, double> out;
  for (const auto& a : g.agents) out[a] = 0.0;
  for (const auto& [chance, p] : settings(g))
    for (const auto& a : g.agents) out[a] += p * agent_utility(g, chance, profile, a, forced);
  return out;
}

inline std::vector<std::string> contexts(const Scg& g, const std::string& decision) {
  const Variable& d = g.at(decision);
  std::vector<const Variable*> obs;
  for (const auto& p : d.parents) obs.push_back(&g.at(p));
  std::vector<std::string> keys;
  all_joint(obs, [&](const Values& vals) {
    std::vector<std::string> parts;
    for (const auto& p : d.parents) parts.push_back(vals.at(p));
    keys.push_back(key_of(parts));
  });
  return keys;
}

// All deterministic policies in lexicographic order, first context most
// significant; intended for small spaces only.
inline std::vector<Policy> all_policies(const Scg& g, const std::string& decision,
                                        std::size_t limit = 1u << 20) {
  const auto keys = oracle::contexts(g, decision);
  const auto& domain = g.at(decision).domain;
  std::size_t count = 1;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    count *= domain.size();
    if (count > limit) throw std::runtime_error("oracle: policy space too large");
  }
  std::vector<Policy> out;
  std::vector<std::size_t> idx(keys.size(), 0);
  for (std::size_t n = 0; n < count; ++n) {
    Policy p;
    p.decision = decision;
    std::size_t rem = n;
    for (std::size_t i = keys.size(); i-- > 0;) {
      idx[i] = rem % domain.size();
      rem /= domain.size();
    }
    for (std::size_t i = 0; i < keys.size(); ++i) p.table[keys[i]] = domain[idx[i]];
    out.push_back(std::move(p));
  }
  return out;
}

// First policy (enumeration order) maximizing the owner's expected utility.
inline Policy argmax(const Scg& g, const std::string& decision, const PolicyProfile& others) {
  const std::string agent = g.at(decision).agent;
  Policy best;
  double best_value = -1e300;
  for (const auto& p : all_policies(g, decision)) {
    PolicyProfile profile = others;
    profile[decision] = p;
    const double v = oracle::expected_utilities(g, profile).at(agent);
    if (v > best_value + 1e-12) {
      best_value = v;
      best = p;
    }
  }
  return best;
}

// Expected utility per action per context of one decision, everything else
// fixed: the quantity behind best responses, recomputed the slow way.
inline std::map<std::string, std::map<std::string, double>> context_scores(
    const Scg& g, const std::string& decision, const PolicyProfile& others) {
  const std::string agent = g.at(decision).agent;
  const Variable& d = g.at(decision);
  std::map<std::string, std::map<std::string, double>> scores;
  for (const auto& key : oracle::contexts(g, decision))
    for (const auto& a : d.domain) scores[key][a] = 0.0;
  for (const auto& [chance, p] : settings(g)) {
    for (const auto& a : d.domain) {
      Values forced;
      forced[decision] = a;
      Values sym;
      std::map<std::string, double> utils;
      evaluate(g, chance, others, forced, sym, utils);
      std::vector<std::string> parts;
      for (const auto& par : d.parents) parts.push_back(sym.at(par));
      double u = 0.0;
      for (const auto& v : g.variables)
        if (v.kind == VariableKind::Utility && v.agent == agent) u += utils.at(v.name);
      scores[key_of(parts)][a] += p * u;
    }
  }
  return scores;
}

// --- epistemics, recomputed from the definitions -----------------------------

struct Belief {
  bool responds = false;
  bool acts_as_if = false;
  bool believes = false;
};

// phi is passed as a plain predicate so the oracle shares nothing with the
// engine's proposition machinery.
inline Belief believes(const Scg& g, const PolicyProfile& profile, const std::string& decision,
                       const std::function<bool(const Values&)>& phi, const Values& setting) {
  // extended game: indicator chance variable observed by the decision
  Scg ext = g;
  std::string iname = "I_oracle";
  while (ext.find(iname)) iname += "_";
  Variable ind;
  ind.name = iname;
  ind.kind = VariableKind::Chance;
  ind.domain = {"0", "1"};
  for (const auto& v : g.variables)
    if (v.kind == VariableKind::Chance) ind.parents.push_back(v.name);
  std::vector<const Variable*> cvs = chance_vars(g);
  all_joint(cvs, [&](const Values& vals) {
    std::vector<std::string> parts;
    for (const auto& p : ind.parents) parts.push_back(vals.at(p));
    const bool t = phi(vals);
    ind.cpd[key_of(parts)] = {{"0", t ? 0.0 : 1.0}, {"1", t ? 1.0 : 0.0}};
  });
  std::size_t pos = 0;
  for (std::size_t i = 0; i < ext.variables.size(); ++i)
    if (ext.variables[i].kind == VariableKind::Chance) pos = i + 1;
  ext.variables.insert(ext.variables.begin() + static_cast<std::ptrdiff_t>(pos), ind);
  for (auto& v : ext.variables)
    if (v.name == decision) v.parents.push_back(iname);

  PolicyProfile others = profile;
  others.erase(decision);
  const Policy rho = argmax(ext, decision, others);

  // realized context and action at the setting, in the base game
  Values sym;
  std::map<std::string, double> utils;
  evaluate(g, setting, profile, {}, sym, utils);
  const Variable& d = g.at(decision);
  std::vector<std::string> parts;
  for (const auto& p : d.parents) parts.push_back(sym.at(p));
  const std::string context = key_of(parts);

  // context mass split by phi truth
  double p1 = 0.0, p0 = 0.0;
  for (const auto& [chance, prob] : settings(g)) {
    Values s2;
    std::map<std::string, double> u2;
    evaluate(g, chance, profile, {}, s2, u2);
    std::vector<std::string> parts2;
    for (const auto& p : d.parents) parts2.push_back(s2.at(p));
    if (key_of(parts2) != context) continue;
    (phi(chance) ? p1 : p0) += prob;
  }

  std::vector<std::string> with1 = parts, with0 = parts;
  with1.push_back("1");
  with0.push_back("0");
  const std::string act1 = rho.table.at(key_of(with1));
  const std::string act0 = rho.table.at(key_of(with0));

  Belief b;
  b.responds = p1 > 0.0 && p0 > 0.0 && act1 != act0;
  b.acts_as_if = p1 > 0.0 && sym.at(decision) == act1;
  b.believes = b.responds && b.acts_as_if;
  return b;
}

struct Intent {
  bool benefit = false;
  bool release = false;
  bool intends = false;
};

inline Intent intends(const Scg& g, const PolicyProfile& profile, const Policy& ref,
                      const std::string& s_decision, const std::string& target,
                      const Values& setting) {
  const std::string agent = g.at(s_decision).agent;
  PolicyProfile with_ref = profile;
  with_ref[s_decision] = ref;
  with_ref[s_decision].decision = s_decision;

  Values sym;
  std::map<std::string, double> utils;
  evaluate(g, setting, profile, {}, sym, utils);
  Values forced;
  forced[target] = sym.at(target);

  const double u_profile = agent_utility(g, setting, profile, agent);
  const double u_ref = agent_utility(g, setting, with_ref, agent);
  const double u_profile_fixed = agent_utility(g, setting, profile, agent, forced);
  const double u_ref_fixed = agent_utility(g, setting, with_ref, agent, forced);

  Intent v;
  v.benefit = u_profile > u_ref;
  v.release = u_ref_fixed >= u_profile_fixed;
  v.intends = v.benefit && v.release;
  return v;
}

inline bool deceives(const Scg& g, const PolicyProfile& profile, const Policy& ref,
                     const std::string& s_decision, const std::string& t_decision,
                     const std::function<bool(const Values&)>& phi) {
  for (const auto& [chance, p] : settings(g)) {
    const bool i = intends(g, profile, ref, s_decision, t_decision, chance).intends;
    const bool tb = believes(g, profile, t_decision, phi, chance).believes;
    const bool sb = believes(g, profile, s_decision, phi, chance).believes;
    if (i && tb && !sb && !phi(chance)) return true;
  }
  return false;
}

}  // namespace oracle
