#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "scg/error.hpp"

namespace scg {

enum class VariableKind { Chance, Decision, Utility };

inline const char* to_string(VariableKind k) {
  switch (k) {
    case VariableKind::Chance: return "chance";
    case VariableKind::Decision: return "decision";
    case VariableKind::Utility: return "utility";
  }
  return "?";
}

/// One node of the game graph. Which fields are meaningful depends on `kind`:
///   chance   — domain, parents (chance only), cpd
///   decision — agent, domain, parents (= the information links it observes)
///   utility  — agent, parents, table
struct Variable {
  std::string name;
  VariableKind kind = VariableKind::Chance;
  std::string agent;
  std::vector<std::string> domain;
  std::vector<std::string> parents;
  std::map<std::string, std::map<std::string, double>> cpd;
  std::map<std::string, double> table;
};

struct Scg {
  std::string name;
  std::vector<std::string> agents;
  std::vector<Variable> variables;

  const Variable* find(const std::string& var) const {
    for (const auto& v : variables)
      if (v.name == var) return &v;
    return nullptr;
  }

  const Variable& at(const std::string& var) const {
    const Variable* v = find(var);
    if (!v) throw UnknownVariable("unknown variable: " + var);
    return *v;
  }

  bool has_agent(const std::string& a) const {
    return std::find(agents.begin(), agents.end(), a) != agents.end();
  }
};

/// Deterministic table from observation-context key to action symbol.
struct Policy {
  std::string decision;
  std::map<std::string, std::string> table;

  friend bool operator==(const Policy& a, const Policy& b) {
    return a.decision == b.decision && a.table == b.table;
  }
};

using PolicyProfile = std::map<std::string, Policy>;

/// Positive-probability joint assignment to the chance variables.
struct Setting {
  std::map<std::string, std::string> assignment;
  double probability = 0.0;
};

/// Result of evaluating the game: a symbol per chance/decision variable and a
/// real per utility variable.
struct Assignment {
  std::map<std::string, std::string> symbols;
  std::map<std::string, double> utilities;
};

/// do(V=v) interventions; targets chance or decision variables only.
using Intervention = std::map<std::string, std::string>;

inline std::string join_key(const std::vector<std::string>& values) {
  std::string key;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) key += ',';
    key += values[i];
  }
  return key;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

enum class DiagnosticCode {
  DuplicateVariable,
  DuplicateAgent,
  EmptyDomain,
  UnknownReference,
  UnknownAgentRef,
  CyclicGraph,
  ChanceHasNonChanceParent,
  UtilityHasChildren,
  CpdNotNormalized,
  CpdProbabilityOutOfRange,
  IncompleteTable,
  UnknownTableRow,
  OutOfDomainValue,
  NonFiniteUtility,
};

inline const char* to_string(DiagnosticCode c) {
  switch (c) {
    case DiagnosticCode::DuplicateVariable: return "DuplicateVariable";
    case DiagnosticCode::DuplicateAgent: return "DuplicateAgent";
    case DiagnosticCode::EmptyDomain: return "EmptyDomain";
    case DiagnosticCode::UnknownReference: return "UnknownReference";
    case DiagnosticCode::UnknownAgentRef: return "UnknownAgentRef";
    case DiagnosticCode::CyclicGraph: return "CyclicGraph";
    case DiagnosticCode::ChanceHasNonChanceParent: return "ChanceHasNonChanceParent";
    case DiagnosticCode::UtilityHasChildren: return "UtilityHasChildren";
    case DiagnosticCode::CpdNotNormalized: return "CpdNotNormalized";
    case DiagnosticCode::CpdProbabilityOutOfRange: return "CpdProbabilityOutOfRange";
    case DiagnosticCode::IncompleteTable: return "IncompleteTable";
    case DiagnosticCode::UnknownTableRow: return "UnknownTableRow";
    case DiagnosticCode::OutOfDomainValue: return "OutOfDomainValue";
    case DiagnosticCode::NonFiniteUtility: return "NonFiniteUtility";
  }
  return "?";
}

struct Diagnostic {
  DiagnosticCode code;
  std::string variable;  // variable the violation is attached to ("" if global)
  std::string message;
  std::string token;     // offending token, used to locate positions in source text
};

namespace detail {

// Iterates every joint assignment of the given domains in lexicographic order
// (first domain most significant). Calls fn with a vector of value indices.
template <typename Fn>
void for_each_joint(const std::vector<std::size_t>& sizes, Fn&& fn) {
  std::vector<std::size_t> idx(sizes.size(), 0);
  for (const auto s : sizes)
    if (s == 0) return;
  while (true) {
    fn(idx);
    std::size_t pos = idx.size();
    while (pos > 0) {
      --pos;
      if (++idx[pos] < sizes[pos]) break;
      idx[pos] = 0;
      if (pos == 0) return;
    }
    if (idx.empty()) return;
  }
}

}  // namespace detail

/// Checks every structural invariant; returns one diagnostic per violation.
/// An empty result means the game is valid.
inline std::vector<Diagnostic> validate(const Scg& g) {
  std::vector<Diagnostic> out;
  auto add = [&](DiagnosticCode code, const std::string& var, std::string msg,
                 std::string token = {}) {
    out.push_back(Diagnostic{code, var, std::move(msg), std::move(token)});
  };

  std::unordered_map<std::string, const Variable*> by_name;
  for (const auto& v : g.variables) {
    if (!by_name.emplace(v.name, &v).second)
      add(DiagnosticCode::DuplicateVariable, v.name,
          "variable declared more than once: " + v.name, v.name);
  }
  {
    std::unordered_map<std::string, int> seen;
    for (const auto& a : g.agents)
      if (++seen[a] == 2)
        add(DiagnosticCode::DuplicateAgent, "", "agent declared more than once: " + a, a);
  }

  for (const auto& v : g.variables) {
    if (v.kind != VariableKind::Utility && v.domain.empty())
      add(DiagnosticCode::EmptyDomain, v.name, "variable has an empty domain: " + v.name,
          v.name);

    bool parents_ok = true;
    for (const auto& p : v.parents) {
      auto it = by_name.find(p);
      if (it == by_name.end()) {
        add(DiagnosticCode::UnknownReference, v.name,
            v.name + " references undeclared variable: " + p, p);
        parents_ok = false;
        continue;
      }
      if (it->second->kind == VariableKind::Utility) {
        add(DiagnosticCode::UtilityHasChildren, p,
            "utility variable " + p + " is used as a parent of " + v.name, p);
        parents_ok = false;
      }
      if (v.kind == VariableKind::Chance && it->second->kind != VariableKind::Chance) {
        add(DiagnosticCode::ChanceHasNonChanceParent, v.name,
            "chance variable " + v.name + " has non-chance parent " + p, p);
        parents_ok = false;
      }
    }

    if (v.kind != VariableKind::Chance) {
      if (!g.has_agent(v.agent))
        add(DiagnosticCode::UnknownAgentRef, v.name,
            v.name + " is owned by undeclared agent: " + v.agent, v.agent);
    }

    if (!parents_ok) continue;  // table shape checks would cascade

    // Expected row keys: joint parent assignments in declared parent order.
    std::vector<const Variable*> pvars;
    std::vector<std::size_t> sizes;
    for (const auto& p : v.parents) {
      pvars.push_back(by_name.at(p));
      sizes.push_back(pvars.back()->domain.size());
    }
    std::vector<std::string> expected_keys;
    detail::for_each_joint(sizes, [&](const std::vector<std::size_t>& idx) {
      std::vector<std::string> vals;
      for (std::size_t i = 0; i < idx.size(); ++i) vals.push_back(pvars[i]->domain[idx[i]]);
      expected_keys.push_back(join_key(vals));
    });

    if (v.kind == VariableKind::Chance) {
      for (const auto& key : expected_keys) {
        auto row = v.cpd.find(key);
        if (row == v.cpd.end()) {
          add(DiagnosticCode::IncompleteTable, v.name,
              "cpd of " + v.name + " is missing row: \"" + key + "\"", key);
          continue;
        }
        double sum = 0.0;
        for (const auto& [sym, p] : row->second) {
          if (std::find(v.domain.begin(), v.domain.end(), sym) == v.domain.end())
            add(DiagnosticCode::OutOfDomainValue, v.name,
                "cpd row of " + v.name + " assigns mass to non-domain value: " + sym, sym);
          if (p < 0.0 || p > 1.0)
            add(DiagnosticCode::CpdProbabilityOutOfRange, v.name,
                "cpd of " + v.name + " has probability outside [0,1] at row \"" + key + "\"",
                key.empty() ? v.name : key);
          sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-9)
          add(DiagnosticCode::CpdNotNormalized, v.name,
              "cpd row \"" + key + "\" of " + v.name + " sums to " + std::to_string(sum),
              key.empty() ? v.name : key);
      }
      for (const auto& [key, row] : v.cpd)
        if (std::find(expected_keys.begin(), expected_keys.end(), key) == expected_keys.end())
          add(DiagnosticCode::UnknownTableRow, v.name,
              "cpd of " + v.name + " has a row for impossible parent assignment: \"" + key +
                  "\"",
              key);
    } else if (v.kind == VariableKind::Utility) {
      for (const auto& key : expected_keys)
        if (!v.table.count(key))
          add(DiagnosticCode::IncompleteTable, v.name,
              "utility table of " + v.name + " is missing row: \"" + key + "\"", key);
      for (const auto& [key, val] : v.table) {
        if (std::find(expected_keys.begin(), expected_keys.end(), key) == expected_keys.end())
          add(DiagnosticCode::UnknownTableRow, v.name,
              "utility table of " + v.name + " has a row for impossible parent assignment: \"" +
                  key + "\"",
              key);
        if (!std::isfinite(val))
          add(DiagnosticCode::NonFiniteUtility, v.name,
              "utility table of " + v.name + " has a non-finite value at row \"" + key + "\"",
              key);
      }
    }
  }

  // Cycle detection over the parent relation (Kahn).
  {
    std::unordered_map<std::string, std::size_t> id;
    for (std::size_t i = 0; i < g.variables.size(); ++i)
      id.emplace(g.variables[i].name, i);
    const std::size_t n = g.variables.size();
    std::vector<std::size_t> indeg(n, 0);
    std::vector<std::vector<std::size_t>> children(n);
    bool refs_ok = true;
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& p : g.variables[i].parents) {
        auto it = id.find(p);
        if (it == id.end()) {
          refs_ok = false;
          continue;
        }
        children[it->second].push_back(i);
        ++indeg[i];
      }
    }
    if (refs_ok) {
      std::vector<std::size_t> queue;
      for (std::size_t i = 0; i < n; ++i)
        if (indeg[i] == 0) queue.push_back(i);
      std::size_t done = 0;
      while (!queue.empty()) {
        std::size_t v = queue.back();
        queue.pop_back();
        ++done;
        for (auto c : children[v])
          if (--indeg[c] == 0) queue.push_back(c);
      }
      if (done != n)
        for (std::size_t i = 0; i < n; ++i)
          if (indeg[i] > 0)
            add(DiagnosticCode::CyclicGraph, g.variables[i].name,
                "variable " + g.variables[i].name + " lies on a dependency cycle",
                g.variables[i].name);
    }
  }

  return out;
}

// ---------------------------------------------------------------------------
// Compiled form: integer-indexed mirror of the game for the evaluation loops.
// ---------------------------------------------------------------------------

namespace detail {

struct CompiledVar {
  VariableKind kind = VariableKind::Chance;
  int agent = -1;
  std::vector<int> parents;
  std::vector<std::uint64_t> strides;  // row-major, first parent most significant
  std::uint64_t radix = 1;
  int domain_size = 0;
  std::unordered_map<std::string, int> value_index;
  // chance: one distribution per parent-assignment radix (empty = missing row)
  std::vector<std::vector<double>> cpd_rows;
  // utility
  std::vector<double> table_vals;
  std::vector<char> table_has;
};

class CompiledGame {
 public:
  explicit CompiledGame(const Scg& g) : game_(g) {
    const std::size_t n = g.variables.size();
    for (std::size_t i = 0; i < n; ++i)
      if (!index_.emplace(g.variables[i].name, static_cast<int>(i)).second)
        throw InvalidGame("duplicate variable: " + g.variables[i].name);

    vars_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Variable& v = g.variables[i];
      CompiledVar& cv = vars_[i];
      cv.kind = v.kind;
      cv.domain_size = static_cast<int>(v.domain.size());
      for (int d = 0; d < cv.domain_size; ++d) cv.value_index.emplace(v.domain[d], d);
      if (v.kind != VariableKind::Chance) {
        for (std::size_t a = 0; a < g.agents.size(); ++a)
          if (g.agents[a] == v.agent) cv.agent = static_cast<int>(a);
      }
      for (const auto& p : v.parents) {
        auto it = index_.find(p);
        if (it == index_.end())
          throw InvalidGame(v.name + " references undeclared variable: " + p);
        cv.parents.push_back(it->second);
      }
      // Row-major radix layout: the first parent is most significant, so radix
      // order coincides with lexicographic key order.
      cv.strides.assign(cv.parents.size(), 1);
      cv.radix = 1;
      for (std::size_t k = cv.parents.size(); k-- > 0;) {
        cv.strides[k] = cv.radix;
        const auto psize =
            static_cast<std::uint64_t>(g.variables[cv.parents[k]].domain.size());
        cv.radix *= psize == 0 ? 1 : psize;
      }
    }

    // Topological order (parents before children).
    {
      std::vector<int> indeg(n, 0);
      std::vector<std::vector<int>> children(n);
      for (std::size_t i = 0; i < n; ++i)
        for (auto p : vars_[i].parents) {
          children[p].push_back(static_cast<int>(i));
          ++indeg[i];
        }
      std::vector<int> queue;
      for (std::size_t i = 0; i < n; ++i)
        if (indeg[i] == 0) queue.push_back(static_cast<int>(i));
      // Stable: prefer declaration order among ready nodes.
      std::sort(queue.begin(), queue.end());
      std::size_t head = 0;
      while (head < queue.size()) {
        int v = queue[head++];
        topo_.push_back(v);
        for (auto c : children[v])
          if (--indeg[c] == 0) queue.push_back(c);
      }
      if (topo_.size() != n) throw InvalidGame("game graph has a cycle");
    }

    for (auto v : topo_)
      if (vars_[v].kind == VariableKind::Chance) chance_topo_.push_back(v);
    for (std::size_t i = 0; i < n; ++i)
      if (vars_[i].kind == VariableKind::Chance) chance_decl_.push_back(static_cast<int>(i));

    // Compile cpd and utility tables onto the radix layout.
    for (std::size_t i = 0; i < n; ++i) {
      const Variable& v = g.variables[i];
      CompiledVar& cv = vars_[i];
      if (v.kind == VariableKind::Chance) {
        cv.cpd_rows.assign(cv.radix, {});
        for_each_parent_key(static_cast<int>(i), [&](std::uint64_t r, const std::string& key) {
          auto it = v.cpd.find(key);
          if (it == v.cpd.end()) return;
          std::vector<double> dist(cv.domain_size, 0.0);
          for (const auto& [sym, p] : it->second) {
            auto vi = cv.value_index.find(sym);
            if (vi == cv.value_index.end())
              throw InvalidGame("cpd of " + v.name + " uses non-domain value: " + sym);
            dist[vi->second] = p;
          }
          cv.cpd_rows[r] = std::move(dist);
        });
      } else if (v.kind == VariableKind::Utility) {
        cv.table_vals.assign(cv.radix, 0.0);
        cv.table_has.assign(cv.radix, 0);
        for_each_parent_key(static_cast<int>(i), [&](std::uint64_t r, const std::string& key) {
          auto it = v.table.find(key);
          if (it == v.table.end()) return;
          cv.table_vals[r] = it->second;
          cv.table_has[r] = 1;
        });
      }
    }
  }

  const Scg& game() const { return game_; }
  std::size_t size() const { return vars_.size(); }
  const CompiledVar& var(int i) const { return vars_[i]; }
  const std::vector<int>& topo() const { return topo_; }
  const std::vector<int>& chance_topo() const { return chance_topo_; }
  const std::vector<int>& chance_decl() const { return chance_decl_; }

  int var_index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw UnknownVariable("unknown variable: " + name);
    return it->second;
  }

  int value_index(int v, const std::string& sym) const {
    auto it = vars_[v].value_index.find(sym);
    if (it == vars_[v].value_index.end())
      throw Error("value " + sym + " is not in the domain of " + game_.variables[v].name);
    return it->second;
  }

  int agent_index(const std::string& agent) const {
    for (std::size_t i = 0; i < game_.agents.size(); ++i)
      if (game_.agents[i] == agent) return static_cast<int>(i);
    throw UnknownAgent("unknown agent: " + agent);
  }

  // Calls fn(radix, key) for every joint parent assignment of variable v.
  template <typename Fn>
  void for_each_parent_key(int v, Fn&& fn) const {
    const CompiledVar& cv = vars_[v];
    std::vector<std::size_t> sizes;
    std::vector<const Variable*> pv;
    for (auto p : cv.parents) {
      pv.push_back(&game_.variables[p]);
      sizes.push_back(pv.back()->domain.size());
    }
    std::uint64_t r = 0;
    for_each_joint(sizes, [&](const std::vector<std::size_t>& idx) {
      std::vector<std::string> vals;
      vals.reserve(idx.size());
      for (std::size_t i = 0; i < idx.size(); ++i) vals.push_back(pv[i]->domain[idx[i]]);
      fn(r++, join_key(vals));
    });
  }

  std::uint64_t parent_radix_of(int v, const std::vector<int>& values) const {
    const CompiledVar& cv = vars_[v];
    std::uint64_t r = 0;
    for (std::size_t k = 0; k < cv.parents.size(); ++k) {
      const int pv = values[cv.parents[k]];
      if (pv < 0)
        throw Error("internal: unset parent while evaluating " + game_.variables[v].name);
      r += cv.strides[k] * static_cast<std::uint64_t>(pv);
    }
    return r;
  }

  // --- compiled inputs -----------------------------------------------------

  std::vector<int> compile_setting(const Setting& s) const {
    std::vector<int> vals(size(), -1);
    for (auto c : chance_decl_) {
      auto it = s.assignment.find(game_.variables[c].name);
      if (it == s.assignment.end())
        throw Error("setting does not assign chance variable " +
                    game_.variables[c].name);
      vals[c] = value_index(c, it->second);
    }
    return vals;
  }

  // Per decision variable: action domain index per context radix, -1 missing.
  std::vector<std::vector<int>> compile_profile(const PolicyProfile& profile) const {
    std::vector<std::vector<int>> actions(size());
    for (std::size_t i = 0; i < size(); ++i) {
      if (vars_[i].kind != VariableKind::Decision) continue;
      auto it = profile.find(game_.variables[i].name);
      if (it == profile.end()) continue;  // lazily reported when the decision is reached
      auto& row = actions[i];
      row.assign(vars_[i].radix, -1);
      for_each_parent_key(static_cast<int>(i), [&](std::uint64_t r, const std::string& key) {
        auto a = it->second.table.find(key);
        if (a == it->second.table.end()) return;
        row[r] = value_index(static_cast<int>(i), a->second);
      });
    }
    return actions;
  }

  std::vector<int> compile_intervention(const Intervention& iv) const {
    std::vector<int> forced(size(), -1);
    for (const auto& [name, val] : iv) {
      int v = var_index(name);
      if (vars_[v].kind == VariableKind::Utility)
        throw Error("cannot intervene on utility variable " + name);
      forced[v] = value_index(v, val);
    }
    return forced;
  }

  // --- evaluation ----------------------------------------------------------

  struct EvalResult {
    std::vector<int> sym;      // -1 for utility variables
    std::vector<double> util;  // meaningful for utility variables only
  };

  EvalResult evaluate(const std::vector<int>& chance_vals,
                      const std::vector<std::vector<int>>& profile_actions,
                      const std::vector<int>& forced) const {
    EvalResult res;
    res.sym.assign(size(), -1);
    res.util.assign(size(), 0.0);
    for (auto v : topo_) {
      const CompiledVar& cv = vars_[v];
      if (!forced.empty() && forced[v] >= 0 && cv.kind != VariableKind::Utility) {
        res.sym[v] = forced[v];
        continue;
      }
      switch (cv.kind) {
        case VariableKind::Chance: {
          if (chance_vals[v] < 0)
            throw Error("setting does not assign chance variable " + game_.variables[v].name);
          res.sym[v] = chance_vals[v];
          break;
        }
        case VariableKind::Decision: {
          const auto& row = profile_actions[v];
          if (row.empty())
            throw MissingPolicy("profile has no policy for decision " +
                                game_.variables[v].name);
          const std::uint64_t r = parent_radix_of(v, res.sym);
          if (row[r] < 0)
            throw MissingPolicy("policy for " + game_.variables[v].name +
                                " has no entry for the realized context");
          res.sym[v] = row[r];
          break;
        }
        case VariableKind::Utility: {
          const std::uint64_t r = parent_radix_of(v, res.sym);
          if (!cv.table_has[r])
            throw MissingUtilityRow("utility table of " + game_.variables[v].name +
                                    " has no entry for the realized parent assignment");
          res.util[v] = cv.table_vals[r];
          break;
        }
      }
    }
    return res;
  }

  double agent_utility(const EvalResult& res, int agent) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < size(); ++i)
      if (vars_[i].kind == VariableKind::Utility && vars_[i].agent == agent)
        sum += res.util[i];
    return sum;
  }

 private:
  const Scg& game_;
  std::unordered_map<std::string, int> index_;
  std::vector<CompiledVar> vars_;
  std::vector<int> topo_;
  std::vector<int> chance_topo_;
  std::vector<int> chance_decl_;
};

struct CompiledSetting {
  std::vector<int> values;  // per variable, -1 for non-chance
  double probability = 0.0;
};

// Every positive-probability joint chance assignment, ordered lexicographically
// by variable declaration order and domain order.
inline std::vector<CompiledSetting> enumerate_settings_compiled(const CompiledGame& cg) {
  std::vector<CompiledSetting> out;
  std::vector<int> vals(cg.size(), -1);
  const auto& order = cg.chance_topo();

  auto rec = [&](auto&& self, std::size_t pos, double prob) -> void {
    if (pos == order.size()) {
      out.push_back(CompiledSetting{vals, prob});
      return;
    }
    const int v = order[pos];
    const CompiledVar& cv = cg.var(v);
    const std::uint64_t r = cg.parent_radix_of(v, vals);
    if (r >= cv.cpd_rows.size() || cv.cpd_rows[r].empty())
      throw MissingCpdRow("cpd of " + cg.game().variables[v].name +
                          " has no row for the realized parent assignment");
    const auto& dist = cv.cpd_rows[r];
    for (int d = 0; d < cv.domain_size; ++d) {
      if (dist[d] <= 0.0) continue;
      vals[v] = d;
      self(self, pos + 1, prob * dist[d]);
      vals[v] = -1;
    }
  };
  rec(rec, 0, 1.0);

  const auto& decl = cg.chance_decl();
  std::sort(out.begin(), out.end(), [&](const CompiledSetting& a, const CompiledSetting& b) {
    for (auto v : decl) {
      if (a.values[v] != b.values[v]) return a.values[v] < b.values[v];
    }
    return false;
  });
  return out;
}

inline Setting to_setting(const CompiledGame& cg, const CompiledSetting& cs) {
  Setting s;
  s.probability = cs.probability;
  for (auto v : cg.chance_decl())
    s.assignment[cg.game().variables[v].name] =
        cg.game().variables[v].domain[static_cast<std::size_t>(cs.values[v])];
  return s;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Public model operations
// ---------------------------------------------------------------------------

inline std::vector<Setting> enumerate_settings(const Scg& g) {
  auto diags = validate(g);
  if (!diags.empty()) throw InvalidGame("invalid game " + g.name + ": " + diags.front().message);
  detail::CompiledGame cg(g);
  std::vector<Setting> out;
  for (const auto& cs : detail::enumerate_settings_compiled(cg))
    out.push_back(detail::to_setting(cg, cs));
  return out;
}

inline Assignment evaluate(const Scg& g, const Setting& setting, const PolicyProfile& profile,
                           const Intervention& intervention = {}) {
  detail::CompiledGame cg(g);
  auto res = cg.evaluate(cg.compile_setting(setting), cg.compile_profile(profile),
                         cg.compile_intervention(intervention));
  Assignment out;
  for (std::size_t i = 0; i < cg.size(); ++i) {
    const Variable& v = g.variables[i];
    if (v.kind == VariableKind::Utility)
      out.utilities[v.name] = res.util[i];
    else
      out.symbols[v.name] = v.domain[static_cast<std::size_t>(res.sym[i])];
  }
  return out;
}

inline double utility_at(const Scg& g, const Setting& setting, const PolicyProfile& profile,
                         const std::string& agent, const Intervention& intervention = {}) {
  detail::CompiledGame cg(g);
  const int a = cg.agent_index(agent);
  auto res = cg.evaluate(cg.compile_setting(setting), cg.compile_profile(profile),
                         cg.compile_intervention(intervention));
  return cg.agent_utility(res, a);
}

/// Exact expected utility per agent: probability-weighted sum over all settings.
inline std::map<std::string, double> expected_utilities(const Scg& g,
                                                         const PolicyProfile& profile,
                                                         const Intervention& intervention = {}) {
  detail::CompiledGame cg(g);
  const auto settings = detail::enumerate_settings_compiled(cg);
  const auto actions = cg.compile_profile(profile);
  const auto forced = cg.compile_intervention(intervention);
  std::vector<double> acc(g.agents.size(), 0.0);
  for (const auto& s : settings) {
    auto res = cg.evaluate(s.values, actions, forced);
    for (std::size_t a = 0; a < g.agents.size(); ++a)
      acc[a] += s.probability * cg.agent_utility(res, static_cast<int>(a));
  }
  std::map<std::string, double> out;
  for (std::size_t a = 0; a < g.agents.size(); ++a) out[g.agents[a]] = acc[a];
  return out;
}

}  // namespace scg
