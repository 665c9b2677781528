#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "scg/deception.hpp"
#include "scg/epistemics.hpp"
#include "scg/model.hpp"
#include "scg/policy.hpp"

namespace scg {

/// Information-link edges to sever during PSO surgery.
struct PsoCriterion {
  std::vector<std::pair<std::string, std::string>> remove_edges;  // (from, to-decision)
};

/// Per-variable distribution substituted for a severed dependency. Variables
/// not listed default to uniform over their domain.
using NaturalDistributions = std::map<std::string, std::map<std::string, double>>;

enum class TrainMode { Exact, Rl };

inline const char* to_string(TrainMode m) { return m == TrainMode::Exact ? "exact" : "rl"; }

enum class PerformanceClass { Optimal, OptimalHonest, SubOptimal };

inline const char* to_string(PerformanceClass c) {
  switch (c) {
    case PerformanceClass::Optimal: return "optimal";
    case PerformanceClass::OptimalHonest: return "optimal-honest";
    case PerformanceClass::SubOptimal: return "sub-optimal";
  }
  return "?";
}

struct AdoptionRecord {
  std::uint64_t step = 0;
  std::uint64_t candidate = 0;  // index in the decision's policy enumeration
  bool accepted = false;
  std::string reason;  // "adopted" | "deceptive" | "no_improvement"
};

struct RlConfig {
  double epsilon = 0.1;
  std::uint64_t episodes = 20000;
  std::uint64_t seed = 0;
};

struct TrainReport {
  Policy learned_policy;
  double expected_utility = 0.0;  // in the original game, against the fixed opponents
  bool deceptive = false;         // vs the game's honest reference over its phi family
  PerformanceClass performance_class = PerformanceClass::SubOptimal;
  std::vector<AdoptionRecord> adoption_log;
  TrainMode mode = TrainMode::Exact;
  std::optional<std::uint64_t> seed;
};

inline constexpr double kAdoptionThreshold = 1e-9;

namespace detail {

inline std::map<std::string, double> natural_for(const Scg& g, const NaturalDistributions& n,
                                                 const std::string& var) {
  const Variable& v = g.at(var);
  auto it = n.find(var);
  if (it == n.end()) {
    if (v.domain.empty()) throw MissingNatural("no natural distribution possible for " + var);
    std::map<std::string, double> uniform;
    for (const auto& d : v.domain) uniform[d] = 1.0 / static_cast<double>(v.domain.size());
    return uniform;
  }
  double sum = 0.0;
  for (const auto& [sym, p] : it->second) {
    if (std::find(v.domain.begin(), v.domain.end(), sym) == v.domain.end())
      throw MissingNatural("natural distribution for " + var + " assigns mass to non-domain value " + sym);
    if (p < 0.0 || p > 1.0)
      throw MissingNatural("natural distribution for " + var + " has probability outside [0,1]");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw MissingNatural("natural distribution for " + var + " is not normalized");
  return it->second;
}

}  // namespace detail

/// PSO surgery: delete the criterion edges from their target decisions'
/// observation lists, then turn every opponent decision that lost a parent
/// into a chance variable whose cpd is the opponent policy marginalized over
/// the removed parents under their natural distributions.
inline Scg pso_reduce(const Scg& g, const PsoCriterion& criterion,
                      const NaturalDistributions& naturals, const PolicyProfile& opponents) {
  Scg out = g;
  // removed parent positions in the original observation list, per decision
  std::map<std::string, std::vector<std::size_t>> removed;
  for (const auto& [from, to] : criterion.remove_edges) {
    Variable* target = nullptr;
    for (auto& v : out.variables)
      if (v.name == to) target = &v;
    if (!target || target->kind != VariableKind::Decision)
      throw EdgeNotFound("no information link " + from + " -> " + to +
                         ": target is not a decision of the game");
    const Variable& orig = g.at(to);
    bool found = false;
    for (std::size_t i = 0; i < orig.parents.size(); ++i) {
      if (orig.parents[i] != from) continue;
      auto& r = removed[to];
      if (std::find(r.begin(), r.end(), i) != r.end()) continue;  // already removed
      r.push_back(i);
      found = true;
      break;
    }
    if (!found)
      throw EdgeNotFound("no information link " + from + " -> " + to + " in game " + g.name);
  }

  for (auto& [decision, positions] : removed) {
    const Variable& orig = g.at(decision);
    auto opp = opponents.find(decision);
    if (opp == opponents.end())
      throw MissingOpponentPolicy("decision " + decision +
                                  " loses a parent but has no imputed opponent policy");

    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < orig.parents.size(); ++i)
      if (std::find(positions.begin(), positions.end(), i) == positions.end())
        keep.push_back(i);

    // Marginalize the policy over the removed parents under their naturals.
    std::vector<const Variable*> pvars;
    std::vector<std::size_t> sizes;
    std::vector<std::map<std::string, double>> nat(orig.parents.size());
    for (std::size_t i = 0; i < orig.parents.size(); ++i) {
      pvars.push_back(&g.at(orig.parents[i]));
      sizes.push_back(pvars.back()->domain.size());
      if (std::find(positions.begin(), positions.end(), i) != positions.end())
        nat[i] = detail::natural_for(g, naturals, orig.parents[i]);
    }

    std::map<std::string, std::map<std::string, double>> cpd;
    detail::for_each_joint(sizes, [&](const std::vector<std::size_t>& idx) {
      std::vector<std::string> full;
      std::vector<std::string> remaining;
      double weight = 1.0;
      for (std::size_t i = 0; i < idx.size(); ++i) {
        const std::string& val = pvars[i]->domain[idx[i]];
        full.push_back(val);
        if (nat[i].empty())
          remaining.push_back(val);
        else
          weight *= nat[i].at(val);
      }
      auto action = opp->second.table.find(join_key(full));
      if (action == opp->second.table.end())
        throw MissingOpponentPolicy("opponent policy for " + decision +
                                    " has no entry for context \"" + join_key(full) + "\"");
      cpd[join_key(remaining)][action->second] += weight;
    });

    for (auto& v : out.variables) {
      if (v.name != decision) continue;
      std::vector<std::string> new_parents;
      for (auto i : keep) new_parents.push_back(orig.parents[i]);
      v.kind = VariableKind::Chance;
      v.agent.clear();
      v.parents = std::move(new_parents);
      v.cpd = std::move(cpd);
      v.table.clear();
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Performance classification (Table-1 columns)
// ---------------------------------------------------------------------------

namespace detail {

inline double policy_value(const Scg& g, const Policy& policy, const PolicyProfile& opponents,
                           const std::string& agent) {
  PolicyProfile profile = opponents;
  profile[policy.decision] = policy;
  return expected_utilities(g, profile)[agent];
}

}  // namespace detail

/// Optimal iff the learned value matches the unconstrained maximum and the
/// policy is deceptive; optimal-honest iff it matches the maximum over
/// non-deceptive policies and is itself non-deceptive; sub-optimal otherwise.
inline PerformanceClass classify_performance(const Scg& g, const Policy& learned,
                                             const PolicyProfile& opponents,
                                             const Policy& honest_ref,
                                             const std::vector<Proposition>& phis,
                                             const std::string& target_decision,
                                             double tol = 1e-9,
                                             std::uint64_t cap = kDefaultEnumCap) {
  const std::string& s_decision = learned.decision;
  const std::string agent = g.at(s_decision).agent;

  const double value = detail::policy_value(g, learned, opponents, agent);
  PolicyProfile learned_profile = opponents;
  learned_profile[s_decision] = learned;
  const bool learned_deceptive =
      deception_check_family(g, learned_profile, honest_ref, s_decision, target_decision, phis)
          .deceptive;

  PolicySpace space(g, s_decision, cap);
  double best_global = -std::numeric_limits<double>::infinity();
  double best_honest = -std::numeric_limits<double>::infinity();
  for (std::uint64_t i = 0; i < space.size(); ++i) {
    const Policy p = space.at(i);
    const double v = detail::policy_value(g, p, opponents, agent);
    best_global = std::max(best_global, v);
    PolicyProfile profile = opponents;
    profile[s_decision] = p;
    const bool deceptive =
        deception_check_family(g, profile, honest_ref, s_decision, target_decision, phis)
            .deceptive;
    if (!deceptive) best_honest = std::max(best_honest, v);
  }

  if (learned_deceptive && std::abs(value - best_global) <= tol)
    return PerformanceClass::Optimal;
  if (!learned_deceptive && std::abs(value - best_honest) <= tol)
    return PerformanceClass::OptimalHonest;
  return PerformanceClass::SubOptimal;
}

// ---------------------------------------------------------------------------
// Tabular epsilon-greedy policy-space bandit
// ---------------------------------------------------------------------------

/// Returns true to permanently exclude the candidate policy from the bandit.
using PolicyFilter = std::function<bool(std::uint64_t index, const Policy& candidate)>;

namespace detail {

struct BanditState {
  std::uint64_t greedy = 0;
  std::vector<double> mean;
  std::vector<std::uint64_t> pulls;
};

// Epsilon-greedy over the enumerated policy space. Unvisited arms rank ahead
// of visited ones, so the first episodes sweep the space; with zero episodes
// the greedy arm is policy 0.
inline BanditState run_bandit(const Scg& g, const std::string& s_decision,
                              const PolicyProfile& opponents, const RlConfig& cfg,
                              const PolicyFilter& filter, std::uint64_t cap) {
  PolicySpace space(g, s_decision, cap);
  const std::uint64_t n = space.size();
  CompiledGame cg(g);
  const int dv = cg.var_index(s_decision);
  const CompiledVar& dvar = cg.var(dv);
  const int owner = dvar.agent;
  if (owner < 0) throw UnknownAgent("decision " + s_decision + " has no declared owner");

  const auto settings = enumerate_settings_compiled(cg);
  std::vector<double> weights;
  for (const auto& s : settings) weights.push_back(s.probability);
  std::discrete_distribution<std::size_t> prior(weights.begin(), weights.end());
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<std::uint64_t> any_arm(0, n - 1);

  auto base_actions = cg.compile_profile(opponents);
  base_actions[dv].assign(dvar.radix, -1);
  const std::vector<int> no_forced(cg.size(), -1);
  const auto d = static_cast<std::uint64_t>(dvar.domain_size);

  auto fill_arm = [&](std::uint64_t arm) {
    std::uint64_t stride = n;
    for (std::uint64_t r = 0; r < dvar.radix; ++r) {
      stride /= d;
      base_actions[dv][r] = static_cast<int>((arm / stride) % d);
    }
  };

  BanditState st;
  st.mean.assign(n, 0.0);
  st.pulls.assign(n, 0);
  std::vector<char> excluded(n, 0);
  std::vector<char> checked(n, 0);

  auto greedy = [&]() -> std::uint64_t {
    std::uint64_t best = n;  // n = none found yet
    bool best_unvisited = false;
    double best_mean = -std::numeric_limits<double>::infinity();
    for (std::uint64_t i = 0; i < n; ++i) {
      if (excluded[i]) continue;
      const bool unvisited = st.pulls[i] == 0;
      if (best == n || (unvisited && !best_unvisited) ||
          (unvisited == best_unvisited && !unvisited && st.mean[i] > best_mean)) {
        best = i;
        best_unvisited = unvisited;
        best_mean = st.mean[i];
      }
    }
    return best == n ? 0 : best;
  };

  for (std::uint64_t ep = 0; ep < cfg.episodes; ++ep) {
    std::uint64_t arm;
    if (coin(rng) < cfg.epsilon) {
      arm = any_arm(rng);
      if (excluded[arm]) continue;  // exploration landed on a banned arm
    } else {
      arm = greedy();
    }
    if (filter && !checked[arm]) {
      checked[arm] = 1;
      if (filter(arm, space.at(arm))) {
        excluded[arm] = 1;
        continue;
      }
    }
    const auto& s = settings[prior(rng)];
    fill_arm(arm);
    const auto res = cg.evaluate(s.values, base_actions, no_forced);
    const double u = cg.agent_utility(res, owner);
    ++st.pulls[arm];
    st.mean[arm] += (u - st.mean[arm]) / static_cast<double>(st.pulls[arm]);
  }

  st.greedy = greedy();
  return st;
}

}  // namespace detail

/// Minimal tabular RL, deterministic given the seed. Each episode draws a
/// random setting, picks an action epsilon-greedily for the realized
/// observation context, and updates that cell's running mean reward; the
/// result is the per-context greedy policy. Unvisited contexts fall back to
/// the first domain value, so zero episodes yield the first enumerated
/// policy. With a filter the learner runs as a bandit over whole policies
/// instead, so candidates can be permanently excluded (used by the shield).
inline Policy rl_learner(const Scg& g, const std::string& s_decision,
                         const PolicyProfile& opponents, double epsilon,
                         std::uint64_t episodes, std::uint64_t seed,
                         const PolicyFilter& filter = nullptr,
                         std::uint64_t cap = kDefaultEnumCap) {
  if (filter) {
    RlConfig cfg;
    cfg.epsilon = epsilon;
    cfg.episodes = episodes;
    cfg.seed = seed;
    const auto st = detail::run_bandit(g, s_decision, opponents, cfg, filter, cap);
    return PolicySpace(g, s_decision, cap).at(st.greedy);
  }

  const Variable& dvar_decl = g.at(s_decision);
  if (dvar_decl.kind != VariableKind::Decision)
    throw InvalidGame(s_decision + " is not a decision variable");
  detail::CompiledGame cg(g);
  const int dv = cg.var_index(s_decision);
  const auto& dvar = cg.var(dv);
  const int owner = dvar.agent;
  if (owner < 0) throw UnknownAgent("decision " + s_decision + " has no declared owner");

  const auto settings = detail::enumerate_settings_compiled(cg);
  std::vector<double> weights;
  for (const auto& s : settings) weights.push_back(s.probability);
  std::discrete_distribution<std::size_t> prior(weights.begin(), weights.end());
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const int d = dvar.domain_size;
  std::uniform_int_distribution<int> any_action(0, d - 1);

  const auto actions = cg.compile_profile(opponents);
  std::vector<int> forced(cg.size(), -1);
  std::vector<std::vector<double>> mean(dvar.radix, std::vector<double>(d, 0.0));
  std::vector<std::vector<std::uint64_t>> pulls(
      dvar.radix, std::vector<std::uint64_t>(static_cast<std::size_t>(d), 0));

  // during learning unvisited actions rank first so each context sweeps its
  // actions early; afterwards only visited means count
  auto explore_action = [&](std::uint64_t r) {
    int best = 0;
    bool best_unvisited = pulls[r][0] == 0;
    double best_mean = mean[r][0];
    for (int a = 1; a < d; ++a) {
      const bool unvisited = pulls[r][static_cast<std::size_t>(a)] == 0;
      const double m = mean[r][static_cast<std::size_t>(a)];
      if ((unvisited && !best_unvisited) ||
          (unvisited == best_unvisited && !unvisited && m > best_mean)) {
        best = a;
        best_unvisited = unvisited;
        best_mean = m;
      }
    }
    return best;
  };

  for (std::uint64_t ep = 0; ep < episodes; ++ep) {
    const auto& s = settings[prior(rng)];
    forced[dv] = 0;  // probe run: only the upstream parents are read
    const auto probe = cg.evaluate(s.values, actions, forced);
    const std::uint64_t r = cg.parent_radix_of(dv, probe.sym);
    const int a = coin(rng) < epsilon ? any_action(rng) : explore_action(r);
    forced[dv] = a;
    const auto res = cg.evaluate(s.values, actions, forced);
    const double u = cg.agent_utility(res, owner);
    auto& count = pulls[r][static_cast<std::size_t>(a)];
    ++count;
    auto& m = mean[r][static_cast<std::size_t>(a)];
    m += (u - m) / static_cast<double>(count);
    forced[dv] = -1;
  }

  Policy out;
  out.decision = s_decision;
  cg.for_each_parent_key(dv, [&](std::uint64_t r, const std::string& key) {
    int best = -1;
    double best_mean = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < d; ++a) {
      if (pulls[r][static_cast<std::size_t>(a)] == 0) continue;
      const double m = mean[r][static_cast<std::size_t>(a)];
      if (m > best_mean) {
        best = a;
        best_mean = m;
      }
    }
    out.table[key] = dvar_decl.domain[static_cast<std::size_t>(best < 0 ? 0 : best)];
  });
  return out;
}

// ---------------------------------------------------------------------------
// Trainers
// ---------------------------------------------------------------------------

namespace detail {

inline TrainReport finish_report(const Scg& g, Policy learned, const PolicyProfile& opponents,
                                 const Policy& honest_ref, const std::vector<Proposition>& phis,
                                 const std::string& target_decision, TrainMode mode,
                                 std::optional<std::uint64_t> seed,
                                 std::vector<AdoptionRecord> log, std::uint64_t cap) {
  TrainReport report;
  const std::string agent = g.at(learned.decision).agent;
  report.expected_utility = policy_value(g, learned, opponents, agent);
  PolicyProfile profile = opponents;
  profile[learned.decision] = learned;
  report.deceptive =
      deception_check_family(g, profile, honest_ref, learned.decision, target_decision, phis)
          .deceptive;
  report.performance_class =
      classify_performance(g, learned, opponents, honest_ref, phis, target_decision,
                           kAdoptionThreshold, cap);
  report.learned_policy = std::move(learned);
  report.adoption_log = std::move(log);
  report.mode = mode;
  report.seed = seed;
  return report;
}

}  // namespace detail

/// No mitigation: plain expected-utility maximization against the fixed
/// opponents (exact argmax or the bandit).
inline TrainReport baseline_train(const Scg& g, const std::string& s_decision,
                                  const PolicyProfile& opponents, TrainMode mode,
                                  const Policy& honest_ref,
                                  const std::vector<Proposition>& phis,
                                  const std::string& target_decision,
                                  const RlConfig& rl = {},
                                  std::uint64_t cap = kDefaultEnumCap) {
  Policy learned;
  std::optional<std::uint64_t> seed;
  if (mode == TrainMode::Exact) {
    PolicySpace(g, s_decision, cap);  // enforce the cap like the enumerating path
    learned = argmax_policy(g, s_decision, opponents);
  } else {
    learned = rl_learner(g, s_decision, opponents, rl.epsilon, rl.episodes, rl.seed, nullptr,
                         cap);
    seed = rl.seed;
  }
  return detail::finish_report(g, std::move(learned), opponents, honest_ref, phis,
                               target_decision, mode, seed, {}, cap);
}

/// Path-specific objectives: train in the reduced game, report in the
/// original one.
inline TrainReport pso_train(const Scg& g, const std::string& s_decision,
                             const PsoCriterion& criterion,
                             const NaturalDistributions& naturals,
                             const PolicyProfile& opponents, TrainMode mode,
                             const Policy& honest_ref, const std::vector<Proposition>& phis,
                             const std::string& target_decision, const RlConfig& rl = {},
                             std::uint64_t cap = kDefaultEnumCap) {
  const Scg reduced = pso_reduce(g, criterion, naturals, opponents);
  PolicyProfile remaining;
  for (const auto& v : reduced.variables)
    if (v.kind == VariableKind::Decision && v.name != s_decision) {
      auto it = opponents.find(v.name);
      if (it == opponents.end())
        throw MissingOpponentPolicy("no policy for remaining decision " + v.name +
                                    " in the reduced game");
      remaining[v.name] = it->second;
    }

  Policy learned;
  std::optional<std::uint64_t> seed;
  if (mode == TrainMode::Exact) {
    PolicySpace(reduced, s_decision, cap);
    learned = argmax_policy(reduced, s_decision, remaining);
  } else {
    learned = rl_learner(reduced, s_decision, remaining, rl.epsilon, rl.episodes, rl.seed,
                         nullptr, cap);
    seed = rl.seed;
  }
  return detail::finish_report(g, std::move(learned), opponents, honest_ref, phis,
                               target_decision, mode, seed, {}, cap);
}

/// Shielded training: the incumbent starts at the reference policy and is
/// replaced only by candidates that beat it on expected utility and pass the
/// deception check against the current incumbent.
inline TrainReport shield_train(const Scg& g, const std::string& s_decision,
                                const PolicyProfile& opponents, const Policy& initial_ref,
                                const std::vector<Proposition>& phis,
                                const std::string& target_decision, TrainMode mode,
                                const RlConfig& rl = {}, std::uint64_t cap = kDefaultEnumCap) {
  if (phis.empty()) throw EmptyFamily("shield needs at least one proposition");
  const std::string agent = g.at(s_decision).agent;

  Policy incumbent = initial_ref;
  incumbent.decision = s_decision;
  double incumbent_value = detail::policy_value(g, incumbent, opponents, agent);
  std::vector<AdoptionRecord> log;

  auto check_deceptive = [&](const Policy& candidate) {
    PolicyProfile profile = opponents;
    profile[s_decision] = candidate;
    return deception_check_family(g, profile, incumbent, s_decision, target_decision, phis)
        .deceptive;
  };

  std::optional<std::uint64_t> seed;
  if (mode == TrainMode::Exact) {
    PolicySpace space(g, s_decision, cap);
    // Candidate stream: best-first by value in the original game, enumeration
    // order breaking ties.
    std::vector<std::pair<double, std::uint64_t>> ranked;
    ranked.reserve(space.size());
    for (std::uint64_t i = 0; i < space.size(); ++i)
      ranked.emplace_back(detail::policy_value(g, space.at(i), opponents, agent), i);
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });

    std::uint64_t step = 0;
    for (const auto& [value, index] : ranked) {
      ++step;
      if (value <= incumbent_value + kAdoptionThreshold) {
        log.push_back(AdoptionRecord{step, index, false, "no_improvement"});
        continue;
      }
      const Policy candidate = space.at(index);
      if (check_deceptive(candidate)) {
        log.push_back(AdoptionRecord{step, index, false, "deceptive"});
        continue;
      }
      incumbent = candidate;
      incumbent_value = value;
      log.push_back(AdoptionRecord{step, index, true, "adopted"});
    }
  } else {
    seed = rl.seed;
    std::uint64_t step = 0;
    PolicyFilter filter = [&](std::uint64_t index, const Policy& candidate) -> bool {
      ++step;
      if (check_deceptive(candidate)) {
        log.push_back(AdoptionRecord{step, index, false, "deceptive"});
        return true;
      }
      const double value = detail::policy_value(g, candidate, opponents, agent);
      if (value > incumbent_value + kAdoptionThreshold) {
        incumbent = candidate;
        incumbent_value = value;
        log.push_back(AdoptionRecord{step, index, true, "adopted"});
      } else {
        log.push_back(AdoptionRecord{step, index, false, "no_improvement"});
      }
      return false;
    };
    detail::run_bandit(g, s_decision, opponents, rl, filter, cap);
  }

  TrainReport report = detail::finish_report(g, incumbent, opponents, initial_ref, phis,
                                             target_decision, mode, seed, std::move(log), cap);
  return report;
}

}  // namespace scg
