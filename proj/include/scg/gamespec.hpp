#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "scg/builtin_games.hpp"
#include "scg/epistemics.hpp"
#include "scg/model.hpp"
#include "scg/policy.hpp"

namespace scg {

struct ParseDiagnostic {
  std::string severity = "error";
  std::string code;
  std::string message;
  std::size_t line = 1;
  std::size_t column = 1;
  std::string token;
};

/// Optional harness metadata attached to a game file.
struct GameMeta {
  std::string deceiver;  // the potentially deceptive decision variable
  std::string target;    // the decision it may deceive
  std::map<std::string, std::string> honest_reference;
  PolicyProfile fixed_opponents;
  std::vector<std::string> phi_family;

  bool empty() const {
    return deceiver.empty() && target.empty() && honest_reference.empty() &&
           fixed_opponents.empty() && phi_family.empty();
  }
};

struct GameDocument {
  Scg game;
  GameMeta meta;

  Policy honest_policy() const { return Policy{meta.deceiver, meta.honest_reference}; }
};

struct ParseResult {
  std::optional<GameDocument> document;
  std::vector<ParseDiagnostic> diagnostics;
  bool ok() const { return document.has_value() && diagnostics.empty(); }
};

struct PolicyParseResult {
  std::optional<Policy> policy;
  std::vector<ParseDiagnostic> diagnostics;
  bool ok() const { return policy.has_value() && diagnostics.empty(); }
};

struct ProfileParseResult {
  std::optional<PolicyProfile> profile;
  std::vector<ParseDiagnostic> diagnostics;
  bool ok() const { return profile.has_value() && diagnostics.empty(); }
};

struct PropositionParseResult {
  std::optional<Proposition> proposition;
  std::vector<ParseDiagnostic> diagnostics;
  bool ok() const { return proposition.has_value() && diagnostics.empty(); }
};

namespace detail {

inline std::pair<std::size_t, std::size_t> offset_to_position(std::string_view text,
                                                              std::size_t offset) {
  std::size_t line = 1, col = 1;
  offset = std::min(offset, text.size());
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

// Best-effort location of a semantic diagnostic: the first occurrence of the
// offending token in the source, quoted occurrences preferred.
inline std::pair<std::size_t, std::size_t> token_position(std::string_view text,
                                                          const std::string& token) {
  if (!token.empty()) {
    const std::string quoted = "\"" + token + "\"";
    std::size_t pos = text.find(quoted);
    if (pos != std::string_view::npos) return offset_to_position(text, pos + 1);
    pos = text.find(token);
    if (pos != std::string_view::npos) return offset_to_position(text, pos);
  }
  return {1, 1};
}

inline ParseDiagnostic make_diag(std::string_view source, std::string code, std::string message,
                                 std::string token) {
  ParseDiagnostic d;
  d.code = std::move(code);
  d.message = std::move(message);
  d.token = std::move(token);
  auto [line, col] = token_position(source, d.token);
  d.line = line;
  d.column = col;
  return d;
}

inline std::vector<ParseDiagnostic> check_policy_table(
    const Scg& g, const std::string& decision, const std::map<std::string, std::string>& table,
    std::string_view source) {
  std::vector<ParseDiagnostic> out;
  const Variable* dec = g.find(decision);
  if (!dec || dec->kind != VariableKind::Decision) {
    out.push_back(make_diag(source, "UnknownReference",
                            decision + " is not a decision variable of the game", decision));
    return out;
  }
  const auto expected = contexts(g, decision);
  for (const auto& key : expected)
    if (!table.count(key))
      out.push_back(make_diag(source, "IncompleteTable",
                              "policy for " + decision + " is missing context \"" + key + "\"",
                              key));
  for (const auto& [key, action] : table) {
    if (std::find(expected.begin(), expected.end(), key) == expected.end())
      out.push_back(make_diag(source, "UnknownContext",
                              "policy for " + decision + " has an impossible context \"" + key +
                                  "\"",
                              key));
    if (std::find(dec->domain.begin(), dec->domain.end(), action) == dec->domain.end())
      out.push_back(make_diag(source, "OutOfDomain",
                              "action " + action + " is not in the domain of " + decision,
                              action));
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Proposition text grammar:
//   phi := lit | phi "&" phi | phi "|" phi | "!" phi | "(" phi ")"
//   lit := NAME "=" VALUE
// with precedence ! > & > |, left-associative.
// ---------------------------------------------------------------------------

namespace detail {

class PropositionParser {
 public:
  PropositionParser(std::string_view text, const Scg& g) : text_(text), game_(g) {}

  PropositionParseResult run() {
    PropositionParseResult result;
    auto phi = parse_or();
    skip_ws();
    if (!diags_.empty() || !phi) {
      result.diagnostics = std::move(diags_);
      if (result.diagnostics.empty())
        result.diagnostics.push_back(syntax_error("empty proposition"));
      return result;
    }
    if (pos_ != text_.size()) {
      result.diagnostics.push_back(syntax_error("unexpected trailing input"));
      return result;
    }
    result.proposition = std::move(phi);
    return result;
  }

 private:
  ParseDiagnostic syntax_error(std::string message) {
    ParseDiagnostic d;
    d.code = "PropositionSyntax";
    d.message = std::move(message);
    d.line = 1;
    d.column = pos_ + 1;
    d.token = pos_ < text_.size() ? std::string(1, text_[pos_]) : "";
    return d;
  }

  void fail(ParseDiagnostic d) {
    if (diags_.empty()) diags_.push_back(std::move(d));
  }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static bool word_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '^' || c == '-' || c == '.';
  }

  std::optional<std::string> word() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && word_char(text_[pos_])) ++pos_;
    if (pos_ == start) return std::nullopt;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::optional<Proposition> parse_or() {
    auto lhs = parse_and();
    if (!lhs) return std::nullopt;
    while (eat('|')) {
      auto rhs = parse_and();
      if (!rhs) return std::nullopt;
      lhs = Proposition::disjunction(std::move(*lhs), std::move(*rhs));
    }
    return lhs;
  }

  std::optional<Proposition> parse_and() {
    auto lhs = parse_unary();
    if (!lhs) return std::nullopt;
    while (eat('&')) {
      auto rhs = parse_unary();
      if (!rhs) return std::nullopt;
      lhs = Proposition::conjunction(std::move(*lhs), std::move(*rhs));
    }
    return lhs;
  }

  std::optional<Proposition> parse_unary() {
    if (eat('!')) {
      auto inner = parse_unary();
      if (!inner) return std::nullopt;
      return Proposition::negation(std::move(*inner));
    }
    if (eat('(')) {
      auto inner = parse_or();
      if (!inner) return std::nullopt;
      if (!eat(')')) {
        fail(syntax_error("expected ')'"));
        return std::nullopt;
      }
      return inner;
    }
    return parse_literal();
  }

  std::optional<Proposition> parse_literal() {
    skip_ws();
    const std::size_t name_col = pos_ + 1;
    auto name = word();
    if (!name) {
      fail(syntax_error("expected a variable name"));
      return std::nullopt;
    }
    if (!eat('=')) {
      fail(syntax_error("expected '=' after variable name"));
      return std::nullopt;
    }
    skip_ws();
    const std::size_t value_col = pos_ + 1;
    auto value = word();
    if (!value) {
      fail(syntax_error("expected a value after '='"));
      return std::nullopt;
    }
    const Variable* v = game_.find(*name);
    if (!v) {
      ParseDiagnostic d;
      d.code = "UnknownReference";
      d.message = "proposition references unknown variable: " + *name;
      d.line = 1;
      d.column = name_col;
      d.token = *name;
      fail(std::move(d));
      return std::nullopt;
    }
    if (v->kind != VariableKind::Chance) {
      ParseDiagnostic d;
      d.code = "NonChanceLiteral";
      d.message = "proposition literal over non-chance variable: " + *name;
      d.line = 1;
      d.column = name_col;
      d.token = *name;
      fail(std::move(d));
      return std::nullopt;
    }
    if (std::find(v->domain.begin(), v->domain.end(), *value) == v->domain.end()) {
      ParseDiagnostic d;
      d.code = "OutOfDomainValue";
      d.message = "value " + *value + " is not in the domain of " + *name;
      d.line = 1;
      d.column = value_col;
      d.token = *value;
      fail(std::move(d));
      return std::nullopt;
    }
    return Proposition::literal(std::move(*name), std::move(*value));
  }

  std::string_view text_;
  const Scg& game_;
  std::size_t pos_ = 0;
  std::vector<ParseDiagnostic> diags_;
};

}  // namespace detail

inline PropositionParseResult parse_proposition(std::string_view text, const Scg& g) {
  return detail::PropositionParser(text, g).run();
}

// ---------------------------------------------------------------------------
// Game documents (JSON)
// ---------------------------------------------------------------------------

inline ParseResult parse_game(std::string_view text) {
  using nlohmann::json;
  ParseResult result;
  auto diag = [&](std::string code, std::string message, std::string token) {
    result.diagnostics.push_back(
        detail::make_diag(text, std::move(code), std::move(message), std::move(token)));
  };

  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    ParseDiagnostic d;
    d.code = "JsonSyntax";
    d.message = e.what();
    auto [line, col] = detail::offset_to_position(text, e.byte > 0 ? e.byte - 1 : 0);
    d.line = line;
    d.column = col;
    result.diagnostics.push_back(std::move(d));
    return result;
  } catch (const json::exception& e) {
    // e.g. numeric overflow surfaces as out_of_range, not parse_error
    ParseDiagnostic d;
    d.code = "JsonSyntax";
    d.message = e.what();
    d.line = 1;
    d.column = 1;
    result.diagnostics.push_back(std::move(d));
    return result;
  }
  if (!root.is_object()) {
    diag("NotAnObject", "a game document must be a JSON object", "");
    return result;
  }

  if (root.contains("format") &&
      !(root["format"].is_number_integer() && root["format"].get<int>() == 1)) {
    diag("UnknownFormatVersion", "unsupported format version (expected 1)", "format");
    return result;
  }

  GameDocument doc;
  auto get_string = [&](const json& obj, const char* field, const std::string& where,
                        bool required) -> std::optional<std::string> {
    if (!obj.contains(field)) {
      if (required) diag("MissingField", where + " is missing field \"" + field + "\"", field);
      return std::nullopt;
    }
    if (!obj[field].is_string()) {
      diag("WrongType", where + " field \"" + field + "\" must be a string", field);
      return std::nullopt;
    }
    return obj[field].get<std::string>();
  };
  auto get_string_array = [&](const json& obj, const char* field, const std::string& where,
                              bool required) -> std::optional<std::vector<std::string>> {
    if (!obj.contains(field)) {
      if (required) diag("MissingField", where + " is missing field \"" + field + "\"", field);
      return std::nullopt;
    }
    if (!obj[field].is_array()) {
      diag("WrongType", where + " field \"" + field + "\" must be an array", field);
      return std::nullopt;
    }
    std::vector<std::string> out;
    for (const auto& e : obj[field]) {
      if (!e.is_string()) {
        diag("WrongType", where + " field \"" + field + "\" must contain strings only", field);
        return std::nullopt;
      }
      out.push_back(e.get<std::string>());
    }
    return out;
  };

  if (auto name = get_string(root, "name", "document", false)) doc.game.name = *name;
  if (auto agents = get_string_array(root, "agents", "document", true))
    doc.game.agents = *agents;

  if (!root.contains("variables") || !root["variables"].is_array()) {
    diag("MissingField", "document needs a \"variables\" array", "variables");
    return result;
  }

  for (const auto& jv : root["variables"]) {
    if (!jv.is_object()) {
      diag("WrongType", "every entry of \"variables\" must be an object", "variables");
      continue;
    }
    Variable v;
    auto name = get_string(jv, "name", "variable", true);
    if (!name) continue;
    v.name = *name;
    const std::string where = "variable " + v.name;

    auto kind = get_string(jv, "kind", where, true);
    if (!kind) continue;
    if (*kind == "chance")
      v.kind = VariableKind::Chance;
    else if (*kind == "decision")
      v.kind = VariableKind::Decision;
    else if (*kind == "utility")
      v.kind = VariableKind::Utility;
    else {
      diag("UnknownKind", where + " has unknown kind \"" + *kind + "\"", *kind);
      continue;
    }

    if (v.kind != VariableKind::Utility) {
      if (auto domain = get_string_array(jv, "domain", where, true))
        v.domain = *domain;
      else
        continue;
    }
    if (v.kind != VariableKind::Chance) {
      if (auto agent = get_string(jv, "agent", where, true))
        v.agent = *agent;
      else
        continue;
    }
    const char* parent_field = v.kind == VariableKind::Decision ? "observes" : "parents";
    if (auto parents = get_string_array(jv, parent_field, where, v.kind != VariableKind::Decision))
      v.parents = *parents;

    if (v.kind == VariableKind::Chance) {
      if (!jv.contains("cpd") || !jv["cpd"].is_object()) {
        diag("MissingField", where + " needs a \"cpd\" object", "cpd");
        continue;
      }
      bool ok = true;
      for (const auto& [key, row] : jv["cpd"].items()) {
        if (!row.is_object()) {
          diag("WrongType", where + " cpd row \"" + key + "\" must be an object", key);
          ok = false;
          break;
        }
        for (const auto& [sym, p] : row.items()) {
          if (!p.is_number()) {
            diag("WrongType", where + " cpd probability for \"" + sym + "\" must be a number",
                 sym);
            ok = false;
            break;
          }
          v.cpd[key][sym] = p.get<double>();
        }
        if (!ok) break;
      }
      if (!ok) continue;
    } else if (v.kind == VariableKind::Utility) {
      if (!jv.contains("table") || !jv["table"].is_object()) {
        diag("MissingField", where + " needs a \"table\" object", "table");
        continue;
      }
      bool ok = true;
      for (const auto& [key, val] : jv["table"].items()) {
        if (!val.is_number()) {
          diag("WrongType", where + " utility at row \"" + key + "\" must be a number", key);
          ok = false;
          break;
        }
        v.table[key] = val.get<double>();
      }
      if (!ok) continue;
    }

    doc.game.variables.push_back(std::move(v));
  }

  if (!result.diagnostics.empty()) return result;

  for (const auto& d : validate(doc.game)) {
    diag(to_string(d.code), d.message, d.token);
  }
  if (!result.diagnostics.empty()) return result;

  if (root.contains("meta")) {
    const json& m = root["meta"];
    if (!m.is_object()) {
      diag("WrongType", "\"meta\" must be an object", "meta");
      return result;
    }
    if (auto s = get_string(m, "deceiver", "meta", false)) doc.meta.deceiver = *s;
    if (auto s = get_string(m, "target", "meta", false)) doc.meta.target = *s;
    for (const char* role : {"deceiver", "target"}) {
      const std::string& name = role[0] == 'd' ? doc.meta.deceiver : doc.meta.target;
      if (name.empty()) continue;
      const Variable* v = doc.game.find(name);
      if (!v || v->kind != VariableKind::Decision)
        diag("UnknownReference",
             std::string("meta ") + role + " must name a decision variable", name);
    }
    auto read_table = [&](const json& obj,
                          const std::string& where) -> std::optional<std::map<std::string, std::string>> {
      std::map<std::string, std::string> table;
      for (const auto& [key, val] : obj.items()) {
        if (!val.is_string()) {
          diag("WrongType", where + " entries must be strings", key);
          return std::nullopt;
        }
        table[key] = val.get<std::string>();
      }
      return table;
    };
    if (m.contains("honest_reference")) {
      if (!m["honest_reference"].is_object())
        diag("WrongType", "meta honest_reference must be an object", "honest_reference");
      else if (auto t = read_table(m["honest_reference"], "meta honest_reference")) {
        doc.meta.honest_reference = *t;
        if (!doc.meta.deceiver.empty() && doc.game.find(doc.meta.deceiver))
          for (auto& d :
               detail::check_policy_table(doc.game, doc.meta.deceiver, *t, text))
            result.diagnostics.push_back(std::move(d));
      }
    }
    if (m.contains("fixed_opponents")) {
      if (!m["fixed_opponents"].is_object())
        diag("WrongType", "meta fixed_opponents must be an object", "fixed_opponents");
      else
        for (const auto& [decision, table] : m["fixed_opponents"].items()) {
          if (!table.is_object()) {
            diag("WrongType", "meta fixed_opponents entries must be objects", decision);
            continue;
          }
          if (auto t = read_table(table, "meta fixed_opponents." + decision)) {
            for (auto& d : detail::check_policy_table(doc.game, decision, *t, text))
              result.diagnostics.push_back(std::move(d));
            doc.meta.fixed_opponents[decision] = Policy{decision, *t};
          }
        }
    }
    if (auto phis = get_string_array(m, "phi_family", "meta", false)) {
      doc.meta.phi_family = *phis;
      for (const auto& p : doc.meta.phi_family) {
        auto parsed = parse_proposition(p, doc.game);
        for (auto& d : parsed.diagnostics) {
          d.message = "in phi_family entry \"" + p + "\": " + d.message;
          auto [line, col] = detail::token_position(text, p);
          d.line = line;
          d.column = col;
          result.diagnostics.push_back(std::move(d));
        }
      }
    }
  }

  if (!result.diagnostics.empty()) return result;
  result.document = std::move(doc);
  return result;
}

/// Canonical text form: sorted object keys, declared variable order, shortest
/// round-trip number formatting. parse(serialize(d)) == d and serialize is
/// idempotent on parsed documents.
inline std::string serialize_game(const GameDocument& doc) {
  using nlohmann::json;
  json root;
  root["format"] = 1;
  root["name"] = doc.game.name;
  root["agents"] = doc.game.agents;
  root["variables"] = json::array();
  for (const auto& v : doc.game.variables) {
    json jv;
    jv["name"] = v.name;
    jv["kind"] = to_string(v.kind);
    if (v.kind != VariableKind::Utility) jv["domain"] = v.domain;
    if (v.kind != VariableKind::Chance) jv["agent"] = v.agent;
    jv[v.kind == VariableKind::Decision ? "observes" : "parents"] = v.parents;
    if (v.kind == VariableKind::Chance) jv["cpd"] = v.cpd;
    if (v.kind == VariableKind::Utility) jv["table"] = v.table;
    root["variables"].push_back(std::move(jv));
  }
  if (!doc.meta.empty()) {
    json m = json::object();
    if (!doc.meta.deceiver.empty()) m["deceiver"] = doc.meta.deceiver;
    if (!doc.meta.target.empty()) m["target"] = doc.meta.target;
    if (!doc.meta.honest_reference.empty()) m["honest_reference"] = doc.meta.honest_reference;
    if (!doc.meta.fixed_opponents.empty()) {
      json fo = json::object();
      for (const auto& [decision, policy] : doc.meta.fixed_opponents) fo[decision] = policy.table;
      m["fixed_opponents"] = std::move(fo);
    }
    if (!doc.meta.phi_family.empty()) m["phi_family"] = doc.meta.phi_family;
    root["meta"] = std::move(m);
  }
  return root.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Policy files: {"<decision>": {"<context>": "<action>", ...}, ...}
// A bare context->action object is also accepted where the decision is known.
// ---------------------------------------------------------------------------

inline PolicyParseResult parse_policy(std::string_view text, const Scg& g,
                                      const std::string& decision) {
  using nlohmann::json;
  PolicyParseResult result;
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    ParseDiagnostic d;
    d.code = "JsonSyntax";
    d.message = e.what();
    auto [line, col] = detail::offset_to_position(text, e.byte > 0 ? e.byte - 1 : 0);
    d.line = line;
    d.column = col;
    result.diagnostics.push_back(std::move(d));
    return result;
  } catch (const json::exception& e) {
    // e.g. numeric overflow surfaces as out_of_range, not parse_error
    ParseDiagnostic d;
    d.code = "JsonSyntax";
    d.message = e.what();
    d.line = 1;
    d.column = 1;
    result.diagnostics.push_back(std::move(d));
    return result;
  }
  if (!root.is_object()) {
    result.diagnostics.push_back(
        detail::make_diag(text, "NotAnObject", "a policy file must be a JSON object", ""));
    return result;
  }
  const json* table = &root;
  if (root.contains(decision) && root[decision].is_object()) table = &root[decision];
  std::map<std::string, std::string> entries;
  for (const auto& [key, val] : table->items()) {
    if (!val.is_string()) {
      result.diagnostics.push_back(detail::make_diag(
          text, "WrongType", "policy entry \"" + key + "\" must map to an action string", key));
      return result;
    }
    entries[key] = val.get<std::string>();
  }
  auto diags = detail::check_policy_table(g, decision, entries, text);
  if (!diags.empty()) {
    result.diagnostics = std::move(diags);
    return result;
  }
  result.policy = Policy{decision, std::move(entries)};
  return result;
}

inline ProfileParseResult parse_profile(std::string_view text, const Scg& g) {
  using nlohmann::json;
  ProfileParseResult result;
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    ParseDiagnostic d;
    d.code = "JsonSyntax";
    d.message = e.what();
    auto [line, col] = detail::offset_to_position(text, e.byte > 0 ? e.byte - 1 : 0);
    d.line = line;
    d.column = col;
    result.diagnostics.push_back(std::move(d));
    return result;
  } catch (const json::exception& e) {
    // e.g. numeric overflow surfaces as out_of_range, not parse_error
    ParseDiagnostic d;
    d.code = "JsonSyntax";
    d.message = e.what();
    d.line = 1;
    d.column = 1;
    result.diagnostics.push_back(std::move(d));
    return result;
  }
  if (!root.is_object()) {
    result.diagnostics.push_back(
        detail::make_diag(text, "NotAnObject", "a profile file must be a JSON object", ""));
    return result;
  }
  PolicyProfile profile;
  for (const auto& [decision, table] : root.items()) {
    if (!table.is_object()) {
      result.diagnostics.push_back(detail::make_diag(
          text, "WrongType", "profile entry \"" + decision + "\" must be an object", decision));
      continue;
    }
    std::map<std::string, std::string> entries;
    bool ok = true;
    for (const auto& [key, val] : table.items()) {
      if (!val.is_string()) {
        result.diagnostics.push_back(detail::make_diag(
            text, "WrongType", "policy entry \"" + key + "\" must map to an action string",
            key));
        ok = false;
        break;
      }
      entries[key] = val.get<std::string>();
    }
    if (!ok) continue;
    for (auto& d : detail::check_policy_table(g, decision, entries, text))
      result.diagnostics.push_back(std::move(d));
    profile[decision] = Policy{decision, std::move(entries)};
  }
  if (!result.diagnostics.empty()) return result;
  result.profile = std::move(profile);
  return result;
}

// ---------------------------------------------------------------------------
// Built-in games
// ---------------------------------------------------------------------------

inline std::vector<std::string> builtin_names() { return {"war_game", "bet_game"}; }

inline const char* builtin_source(const std::string& name) {
  if (name == "war_game") return detail::kWarGameJson;
  if (name == "bet_game") return detail::kBetGameJson;
  throw UnknownBuiltin("unknown builtin game: " + name);
}

inline GameDocument builtin(const std::string& name) {
  auto result = parse_game(builtin_source(name));
  if (!result.ok())
    throw Error("builtin game " + name + " failed to parse: " +
                (result.diagnostics.empty() ? "?" : result.diagnostics.front().message));
  return std::move(*result.document);
}

/// Parsed phi family of a document (entries are pre-validated by parse_game).
inline std::vector<Proposition> phi_family(const GameDocument& doc) {
  std::vector<Proposition> out;
  for (const auto& text : doc.meta.phi_family) {
    auto parsed = parse_proposition(text, doc.game);
    if (!parsed.ok())
      throw InvalidProposition("invalid proposition in phi family: " + text);
    out.push_back(std::move(*parsed.proposition));
  }
  return out;
}

}  // namespace scg
