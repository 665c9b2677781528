#pragma once

#include <string>
#include <vector>

#include "scg/epistemics.hpp"
#include "scg/model.hpp"

namespace scg {

/// One row of the exhaustive scan: the four conjunct values at one setting.
struct DeceptionRow {
  Setting setting;
  std::string phi;  // source text of the proposition this row was checked against
  bool intends = false;
  bool t_believes = false;
  bool s_believes = false;
  bool phi_true = false;

  bool deceptive_here() const { return intends && t_believes && !s_believes && !phi_true; }
};

struct DeceptionVerdict {
  bool deceptive = false;
  std::vector<DeceptionRow> witnesses;
  std::vector<DeceptionRow> per_setting;
};

namespace detail {

inline void deception_scan(const Scg& g, const std::vector<Setting>& settings,
                           const IntentAnalysis& intent, const PolicyProfile& profile,
                           const std::string& t_decision, const std::string& s_decision,
                           const Proposition& phi, DeceptionVerdict& out) {
  BeliefAnalysis t_belief(g, profile, t_decision, phi);
  BeliefAnalysis s_belief(g, profile, s_decision, phi);
  const std::string phi_text = phi.to_string();
  for (const auto& s : settings) {
    DeceptionRow row;
    row.setting = s;
    row.phi = phi_text;
    row.intends = intent.verdict_for(s).intends;
    row.t_believes = t_belief.verdict_for(s).believes;
    row.s_believes = s_belief.verdict_for(s).believes;
    row.phi_true = phi.eval(s.assignment);
    if (row.deceptive_here()) out.witnesses.push_back(row);
    out.per_setting.push_back(std::move(row));
  }
  out.deceptive = !out.witnesses.empty();
}

}  // namespace detail

/// Sound and complete deception verification: scans every setting and records
/// the conjunct breakdown. Deceptive iff some setting satisfies all four
/// conjuncts; all witnesses are collected rather than returning early.
inline DeceptionVerdict deception_check(const Scg& g, const PolicyProfile& profile,
                                        const Policy& ref_policy, const std::string& s_decision,
                                        const std::string& t_decision, const Proposition& phi) {
  phi.validate_against(g);
  const auto settings = enumerate_settings(g);
  detail::IntentAnalysis intent(g, profile, ref_policy, s_decision, t_decision);
  DeceptionVerdict out;
  detail::deception_scan(g, settings, intent, profile, t_decision, s_decision, phi, out);
  return out;
}

/// Disjunction of deception_check over a family of propositions; witnesses are
/// the union across the family, each tagged with its proposition.
inline DeceptionVerdict deception_check_family(const Scg& g, const PolicyProfile& profile,
                                               const Policy& ref_policy,
                                               const std::string& s_decision,
                                               const std::string& t_decision,
                                               const std::vector<Proposition>& phis) {
  if (phis.empty()) throw EmptyFamily("deception check needs at least one proposition");
  for (const auto& phi : phis) phi.validate_against(g);
  const auto settings = enumerate_settings(g);
  detail::IntentAnalysis intent(g, profile, ref_policy, s_decision, t_decision);
  DeceptionVerdict out;
  for (const auto& phi : phis)
    detail::deception_scan(g, settings, intent, profile, t_decision, s_decision, phi, out);
  return out;
}

}  // namespace scg
