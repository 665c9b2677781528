#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "scg/model.hpp"

namespace scg {

inline constexpr std::uint64_t kDefaultEnumCap = 1'000'000;

/// Observation-context keys of a decision: the lexicographic product of the
/// observed variables' domains, comma-joined in declared order.
inline std::vector<std::string> contexts(const Scg& g, const std::string& decision) {
  const Variable& d = g.at(decision);
  if (d.kind != VariableKind::Decision)
    throw Error(decision + " is not a decision variable");
  std::vector<const Variable*> obs;
  std::vector<std::size_t> sizes;
  for (const auto& p : d.parents) {
    obs.push_back(&g.at(p));
    sizes.push_back(obs.back()->domain.size());
  }
  std::vector<std::string> keys;
  detail::for_each_joint(sizes, [&](const std::vector<std::size_t>& idx) {
    std::vector<std::string> vals;
    vals.reserve(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) vals.push_back(obs[i]->domain[idx[i]]);
    keys.push_back(join_key(vals));
  });
  return keys;
}

/// The full space of deterministic policies for one decision, indexable in
/// lexicographic order: context 0 is most significant, actions in domain
/// order, so policy 0 maps every context to the first-declared action.
class PolicySpace {
 public:
  PolicySpace(const Scg& g, const std::string& decision,
              std::uint64_t cap = kDefaultEnumCap)
      : decision_(decision), contexts_(contexts(g, decision)), domain_(g.at(decision).domain) {
    size_ = 1;
    const auto d = static_cast<std::uint64_t>(domain_.size());
    for (std::size_t i = 0; i < contexts_.size(); ++i) {
      if (d == 0) {
        size_ = 0;
        break;
      }
      if (size_ > cap / d) throw SpaceTooLarge(too_large_message(cap));
      size_ *= d;
    }
    if (size_ > cap) throw SpaceTooLarge(too_large_message(cap));
  }

  std::uint64_t size() const { return size_; }
  const std::string& decision() const { return decision_; }
  const std::vector<std::string>& context_keys() const { return contexts_; }
  const std::vector<std::string>& domain() const { return domain_; }

  Policy at(std::uint64_t index) const {
    Policy p;
    p.decision = decision_;
    const auto d = static_cast<std::uint64_t>(domain_.size());
    std::uint64_t stride = size_;
    for (const auto& ctx : contexts_) {
      stride /= d;
      p.table[ctx] = domain_[static_cast<std::size_t>((index / stride) % d)];
    }
    return p;
  }

  class iterator {
   public:
    using value_type = Policy;
    using difference_type = std::ptrdiff_t;
    iterator(const PolicySpace* s, std::uint64_t i) : space_(s), i_(i) {}
    Policy operator*() const { return space_->at(i_); }
    iterator& operator++() {
      ++i_;
      return *this;
    }
    bool operator!=(const iterator& o) const { return i_ != o.i_; }
    bool operator==(const iterator& o) const { return i_ == o.i_; }
    std::uint64_t index() const { return i_; }

   private:
    const PolicySpace* space_;
    std::uint64_t i_;
  };

  iterator begin() const { return iterator(this, 0); }
  iterator end() const { return iterator(this, size_); }

 private:
  std::string too_large_message(std::uint64_t cap) const {
    return "policy space of " + decision_ + " exceeds the enumeration cap (" +
           std::to_string(cap) + ")";
  }

  std::string decision_;
  std::vector<std::string> contexts_;
  std::vector<std::string> domain_;
  std::uint64_t size_ = 1;
};

inline PolicySpace enumerate_policies(const Scg& g, const std::string& decision,
                                      std::uint64_t cap = kDefaultEnumCap) {
  return PolicySpace(g, decision, cap);
}

namespace detail {

// Per-context action scores for one decision with every other policy fixed.
// scores[context radix][action index] = sum over settings in that context of
// probability * owner's utility when playing that action.
inline std::vector<std::vector<double>> context_action_scores(const CompiledGame& cg,
                                                              int decision_var,
                                                              const PolicyProfile& others) {
  const CompiledVar& dv = cg.var(decision_var);
  const int owner = dv.agent;
  if (owner < 0)
    throw UnknownAgent("decision " + cg.game().variables[decision_var].name +
                       " has no declared owner");
  const auto settings = enumerate_settings_compiled(cg);
  const auto actions = cg.compile_profile(others);
  std::vector<int> forced(cg.size(), -1);
  std::vector<std::vector<double>> scores(dv.radix,
                                          std::vector<double>(dv.domain_size, 0.0));
  for (const auto& s : settings) {
    std::optional<std::uint64_t> ctx;
    for (int a = 0; a < dv.domain_size; ++a) {
      forced[decision_var] = a;
      auto res = cg.evaluate(s.values, actions, forced);
      if (!ctx) ctx = cg.parent_radix_of(decision_var, res.sym);
      scores[*ctx][a] += s.probability * cg.agent_utility(res, owner);
    }
  }
  return scores;
}

inline Policy policy_from_scores(const CompiledGame& cg, int decision_var,
                                 const std::vector<std::vector<double>>& scores) {
  Policy p;
  p.decision = cg.game().variables[decision_var].name;
  cg.for_each_parent_key(decision_var, [&](std::uint64_t r, const std::string& key) {
    const auto& row = scores[r];
    std::size_t best = 0;
    for (std::size_t a = 1; a < row.size(); ++a)
      if (row[a] > row[best]) best = a;
    p.table[key] = cg.game().variables[decision_var].domain[best];
  });
  return p;
}

}  // namespace detail

/// Expected-utility-maximizing policy for the decision's owner, with every
/// other decision fixed by `others`. Ties break to the first policy in
/// enumeration order, which per context means the first-declared action.
inline Policy argmax_policy(const Scg& g, const std::string& decision,
                            const PolicyProfile& others) {
  detail::CompiledGame cg(g);
  const int dv = cg.var_index(decision);
  if (cg.var(dv).kind != VariableKind::Decision)
    throw Error(decision + " is not a decision variable");
  const auto scores = detail::context_action_scores(cg, dv, others);
  return detail::policy_from_scores(cg, dv, scores);
}

namespace detail {

// Best attainable expected utility for one agent, deviating jointly over all
// of its decisions while the rest of the profile stays fixed.
inline double best_deviation_utility(const Scg& g, const PolicyProfile& profile,
                                     const std::string& agent,
                                     const std::vector<std::string>& own_decisions,
                                     std::uint64_t cap) {
  if (own_decisions.size() == 1) {
    const std::string& d = own_decisions.front();
    PolicyProfile others = profile;
    others.erase(d);
    Policy br = argmax_policy(g, d, others);
    PolicyProfile dev = profile;
    dev[d] = std::move(br);
    return expected_utilities(g, dev)[agent];
  }
  std::vector<PolicySpace> spaces;
  std::uint64_t total = 1;
  for (const auto& d : own_decisions) {
    spaces.emplace_back(g, d, cap);
    const std::uint64_t sz = spaces.back().size();
    if (sz == 0 || total > cap / sz)
      throw SpaceTooLarge("joint deviation space of agent " + agent +
                          " exceeds the enumeration cap");
    total *= sz;
  }
  double best = -std::numeric_limits<double>::infinity();
  std::vector<std::uint64_t> idx(spaces.size(), 0);
  while (true) {
    PolicyProfile dev = profile;
    for (std::size_t i = 0; i < spaces.size(); ++i)
      dev[own_decisions[i]] = spaces[i].at(idx[i]);
    best = std::max(best, expected_utilities(g, dev)[agent]);
    std::size_t pos = idx.size();
    bool done = true;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < spaces[pos].size()) {
        done = false;
        break;
      }
      idx[pos] = 0;
    }
    if (done) break;
  }
  return best;
}

}  // namespace detail

/// True iff no agent can raise its expected utility by more than `tol` with a
/// unilateral change of its own policy.
inline bool is_nash(const Scg& g, const PolicyProfile& profile, double tol = 1e-9,
                    std::uint64_t cap = kDefaultEnumCap) {
  const auto current = expected_utilities(g, profile);
  for (const auto& agent : g.agents) {
    std::vector<std::string> own;
    for (const auto& v : g.variables)
      if (v.kind == VariableKind::Decision && v.agent == agent) own.push_back(v.name);
    if (own.empty()) continue;
    const double best = detail::best_deviation_utility(g, profile, agent, own, cap);
    if (best > current.at(agent) + tol) return false;
  }
  return true;
}

/// All pure-strategy Nash profiles, in lexicographic enumeration order over
/// the decisions' policy spaces (decisions in declaration order).
inline std::vector<PolicyProfile> enumerate_pure_nash(const Scg& g, double tol = 1e-9,
                                                      std::uint64_t cap = kDefaultEnumCap) {
  std::vector<std::string> decisions;
  for (const auto& v : g.variables)
    if (v.kind == VariableKind::Decision) decisions.push_back(v.name);

  std::vector<PolicySpace> spaces;
  std::uint64_t total = 1;
  for (const auto& d : decisions) {
    spaces.emplace_back(g, d, cap);
    const std::uint64_t sz = spaces.back().size();
    if (sz == 0 || total > cap / sz)
      throw SpaceTooLarge("profile space exceeds the enumeration cap");
    total *= sz;
  }

  std::vector<PolicyProfile> out;
  if (decisions.empty()) {
    if (is_nash(g, {}, tol, cap)) out.push_back({});
    return out;
  }
  std::vector<std::uint64_t> idx(spaces.size(), 0);
  while (true) {
    PolicyProfile profile;
    for (std::size_t i = 0; i < spaces.size(); ++i) profile[decisions[i]] = spaces[i].at(idx[i]);
    if (is_nash(g, profile, tol, cap)) out.push_back(std::move(profile));
    std::size_t pos = idx.size();
    bool done = true;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < spaces[pos].size()) {
        done = false;
        break;
      }
      idx[pos] = 0;
    }
    if (done) break;
  }
  return out;
}

}  // namespace scg
