#pragma once

#include <map>
#include <string>
#include <vector>

#include "scg/model.hpp"
#include "scg/policy.hpp"

namespace scg {

/// Boolean formula over chance-variable assignments.
struct Proposition {
  enum class Kind { Literal, Not, And, Or };

  Kind kind = Kind::Literal;
  std::string var;    // literal only
  std::string value;  // literal only
  std::vector<Proposition> children;

  static Proposition literal(std::string v, std::string val) {
    Proposition p;
    p.kind = Kind::Literal;
    p.var = std::move(v);
    p.value = std::move(val);
    return p;
  }
  static Proposition negation(Proposition a) {
    Proposition p;
    p.kind = Kind::Not;
    p.children.push_back(std::move(a));
    return p;
  }
  static Proposition conjunction(Proposition a, Proposition b) {
    Proposition p;
    p.kind = Kind::And;
    p.children.push_back(std::move(a));
    p.children.push_back(std::move(b));
    return p;
  }
  static Proposition disjunction(Proposition a, Proposition b) {
    Proposition p;
    p.kind = Kind::Or;
    p.children.push_back(std::move(a));
    p.children.push_back(std::move(b));
    return p;
  }

  bool eval(const std::map<std::string, std::string>& assignment) const {
    switch (kind) {
      case Kind::Literal: {
        auto it = assignment.find(var);
        if (it == assignment.end())
          throw InvalidProposition("proposition references unassigned variable: " + var);
        return it->second == value;
      }
      case Kind::Not:
        return !children[0].eval(assignment);
      case Kind::And:
        return children[0].eval(assignment) && children[1].eval(assignment);
      case Kind::Or:
        return children[0].eval(assignment) || children[1].eval(assignment);
    }
    return false;
  }

  /// Literals must name chance variables and in-domain values.
  void validate_against(const Scg& g) const {
    if (kind == Kind::Literal) {
      const Variable* v = g.find(var);
      if (!v) throw InvalidProposition("proposition references unknown variable: " + var);
      if (v->kind != VariableKind::Chance)
        throw InvalidProposition("proposition literal over non-chance variable: " + var);
      if (std::find(v->domain.begin(), v->domain.end(), value) == v->domain.end())
        throw InvalidProposition("proposition value " + value + " is not in the domain of " +
                                 var);
      return;
    }
    for (const auto& c : children) c.validate_against(g);
  }

  void collect_variables(std::vector<std::string>& out) const {
    if (kind == Kind::Literal) {
      if (std::find(out.begin(), out.end(), var) == out.end()) out.push_back(var);
      return;
    }
    for (const auto& c : children) c.collect_variables(out);
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::Literal:
        return var + "=" + value;
      case Kind::Not:
        return "!(" + children[0].to_string() + ")";
      case Kind::And:
        return "(" + children[0].to_string() + " & " + children[1].to_string() + ")";
      case Kind::Or:
        return "(" + children[0].to_string() + " | " + children[1].to_string() + ")";
    }
    return "";
  }
};

struct BeliefVerdict {
  bool responds = false;
  bool acts_as_if = false;
  bool believes = false;
  bool truth = false;
  double p_phi_true = 0.0;   // probability of context (o, I=1) under the profile
  double p_phi_false = 0.0;  // probability of context (o, I=0)
};

struct IntentVerdict {
  bool benefit = false;
  bool release = false;
  bool intends = false;
  std::string realized_outcome;
};

/// The game extended with a 0/1 chance variable that deterministically
/// indicates phi, appended to the agent decision's observation list.
inline Scg indicator_extension(const Scg& g, const std::string& agent_decision,
                               const Proposition& phi, std::string* indicator_name = nullptr) {
  phi.validate_against(g);
  const Variable& dec = g.at(agent_decision);
  if (dec.kind != VariableKind::Decision)
    throw Error(agent_decision + " is not a decision variable");

  std::string iname = "I_phi";
  while (g.find(iname)) iname += "_";

  std::vector<std::string> phi_vars;
  phi.collect_variables(phi_vars);
  // declaration order for the indicator's parents
  std::vector<std::string> parents;
  for (const auto& v : g.variables)
    if (std::find(phi_vars.begin(), phi_vars.end(), v.name) != phi_vars.end())
      parents.push_back(v.name);

  Variable ind;
  ind.name = iname;
  ind.kind = VariableKind::Chance;
  ind.domain = {"0", "1"};
  ind.parents = parents;

  std::vector<const Variable*> pvars;
  std::vector<std::size_t> sizes;
  for (const auto& p : parents) {
    pvars.push_back(&g.at(p));
    sizes.push_back(pvars.back()->domain.size());
  }
  detail::for_each_joint(sizes, [&](const std::vector<std::size_t>& idx) {
    std::map<std::string, std::string> assignment;
    std::vector<std::string> vals;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      vals.push_back(pvars[i]->domain[idx[i]]);
      assignment[parents[i]] = vals.back();
    }
    const bool t = phi.eval(assignment);
    ind.cpd[join_key(vals)] = {{"0", t ? 0.0 : 1.0}, {"1", t ? 1.0 : 0.0}};
  });

  Scg out = g;
  // insert after the last chance variable so the chance layer stays contiguous
  std::size_t pos = 0;
  for (std::size_t i = 0; i < out.variables.size(); ++i)
    if (out.variables[i].kind == VariableKind::Chance) pos = i + 1;
  out.variables.insert(out.variables.begin() + static_cast<std::ptrdiff_t>(pos), ind);
  for (auto& v : out.variables)
    if (v.name == agent_decision) v.parents.push_back(iname);

  if (indicator_name) *indicator_name = iname;
  return out;
}

namespace detail {

// Shared machinery behind `believes`: built once per (game, profile, decision,
// phi) and reused across settings, e.g. by the deception scan.
class BeliefAnalysis {
 public:
  BeliefAnalysis(const Scg& g, const PolicyProfile& profile,
                 const std::string& agent_decision, const Proposition& phi)
      : game_(g), phi_(phi), decision_(agent_decision) {
    extended_ = indicator_extension(g, agent_decision, phi, &indicator_);

    // Realized observation context and phi truth per setting, in the base game.
    CompiledGame cg(g);
    const int dv = cg.var_index(agent_decision);
    const auto settings = enumerate_settings_compiled(cg);
    const auto actions = cg.compile_profile(profile);
    const std::vector<int> no_forced(cg.size(), -1);
    for (const auto& s : settings) {
      auto res = cg.evaluate(s.values, actions, no_forced);
      std::vector<std::string> obs;
      for (auto p : cg.var(dv).parents)
        obs.push_back(g.variables[p].domain[static_cast<std::size_t>(res.sym[p])]);
      const std::string key = join_key(obs);
      const Setting pub = to_setting(cg, s);
      const bool t = phi.eval(pub.assignment);
      rows_.push_back(Row{pub, key, t,
                          g.variables[dv].domain[static_cast<std::size_t>(res.sym[dv])]});
      auto& mass = context_mass_[key];
      (t ? mass.first : mass.second) += s.probability;
    }

    // Extended best response with the other decisions fixed from the profile.
    PolicyProfile others = profile;
    others.erase(agent_decision);
    rho_ = argmax_policy(extended_, agent_decision, others);
  }

  BeliefVerdict verdict_for(const Setting& setting) const {
    const Row* row = nullptr;
    for (const auto& r : rows_)
      if (r.setting.assignment == setting.assignment) {
        row = &r;
        break;
      }
    if (!row) throw Error("setting is not a positive-probability setting of the game");

    BeliefVerdict v;
    v.truth = row->phi_true;
    const auto mass = context_mass_.at(row->context);
    v.p_phi_true = mass.first;
    v.p_phi_false = mass.second;
    const std::string key1 = row->context.empty() ? "1" : row->context + ",1";
    const std::string key0 = row->context.empty() ? "0" : row->context + ",0";
    const std::string act1 = rho_.table.at(key1);
    const std::string act0 = rho_.table.at(key0);
    v.responds = v.p_phi_true > 0.0 && v.p_phi_false > 0.0 && act1 != act0;
    v.acts_as_if = v.p_phi_true > 0.0 && row->realized_action == act1;
    v.believes = v.responds && v.acts_as_if;
    return v;
  }

  const Policy& extended_best_response() const { return rho_; }
  const Scg& extended_game() const { return extended_; }

 private:
  struct Row {
    Setting setting;
    std::string context;
    bool phi_true;
    std::string realized_action;
  };

  const Scg& game_;
  Proposition phi_;
  std::string decision_;
  Scg extended_;
  std::string indicator_;
  Policy rho_;
  std::vector<Row> rows_;
  std::map<std::string, std::pair<double, double>> context_mass_;  // key -> (p1, p0)
};

// Per-setting intention verdicts for one (profile, reference) pair, computed
// with a single compiled game.
class IntentAnalysis {
 public:
  IntentAnalysis(const Scg& g, const PolicyProfile& profile, const Policy& ref_policy,
                 const std::string& s_decision, const std::string& target_decision) {
    const Variable& sdec = g.at(s_decision);
    if (sdec.kind != VariableKind::Decision)
      throw Error(s_decision + " is not a decision variable");
    const Variable& tdec = g.at(target_decision);
    if (tdec.kind != VariableKind::Decision)
      throw Error(target_decision + " is not a decision variable");

    CompiledGame cg(g);
    const int agent = cg.agent_index(sdec.agent);
    const int tv = cg.var_index(target_decision);

    PolicyProfile with_ref = profile;
    with_ref[s_decision] = ref_policy;
    with_ref[s_decision].decision = s_decision;

    const auto settings = enumerate_settings_compiled(cg);
    const auto actions = cg.compile_profile(profile);
    const auto actions_ref = cg.compile_profile(with_ref);
    const std::vector<int> no_forced(cg.size(), -1);
    std::vector<int> forced(cg.size(), -1);

    for (const auto& s : settings) {
      auto res = cg.evaluate(s.values, actions, no_forced);
      const int outcome = res.sym[tv];
      const double u_profile = cg.agent_utility(res, agent);
      const double u_ref =
          cg.agent_utility(cg.evaluate(s.values, actions_ref, no_forced), agent);

      forced[tv] = outcome;
      const double u_profile_fixed =
          cg.agent_utility(cg.evaluate(s.values, actions, forced), agent);
      const double u_ref_fixed =
          cg.agent_utility(cg.evaluate(s.values, actions_ref, forced), agent);
      forced[tv] = -1;

      IntentVerdict v;
      v.realized_outcome = g.variables[tv].domain[static_cast<std::size_t>(outcome)];
      v.benefit = u_profile > u_ref;
      v.release = u_ref_fixed >= u_profile_fixed;
      v.intends = v.benefit && v.release;
      rows_.push_back(Row{to_setting(cg, s), v});
    }
  }

  IntentVerdict verdict_for(const Setting& setting) const {
    for (const auto& r : rows_)
      if (r.setting.assignment == setting.assignment) return r.verdict;
    throw Error("setting is not a positive-probability setting of the game");
  }

 private:
  struct Row {
    Setting setting;
    IntentVerdict verdict;
  };
  std::vector<Row> rows_;
};

}  // namespace detail

/// Behavioral belief: the agent responds to the indicator (both indicator
/// contexts reachable and the extended best response differs between them)
/// and its realized action matches the phi-true branch.
inline BeliefVerdict believes(const Scg& g, const PolicyProfile& profile,
                              const std::string& agent_decision, const Proposition& phi,
                              const Setting& setting) {
  detail::BeliefAnalysis analysis(g, profile, agent_decision, phi);
  return analysis.verdict_for(setting);
}

/// Per-setting intention: the realized target outcome gives the agent strict
/// benefit over the reference policy, and with that outcome forced the
/// reference would do at least as well.
inline IntentVerdict intends_to_cause(const Scg& g, const PolicyProfile& profile,
                                      const Policy& ref_policy, const std::string& s_decision,
                                      const std::string& target_decision,
                                      const Setting& setting) {
  detail::IntentAnalysis analysis(g, profile, ref_policy, s_decision, target_decision);
  return analysis.verdict_for(setting);
}

}  // namespace scg
