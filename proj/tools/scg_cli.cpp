#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scg/deception.hpp"
#include "scg/epistemics.hpp"
#include "scg/gamespec.hpp"
#include "scg/mitigation.hpp"
#include "scg/model.hpp"
#include "scg/policy.hpp"
#include "scg/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;
constexpr int kExitDeceptive = 3;
constexpr int kExitResourceCap = 4;

std::uint64_t enum_cap() {
  if (const char* env = std::getenv("SCG_ENUM_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
    throw scg::Error("SCG_ENUM_CAP must be a positive integer");
  }
  return scg::kDefaultEnumCap;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw scg::IoError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw scg::IoError("cannot read file: " + path);
  return ss.str();
}

void print_diagnostics(const std::string& source_name,
                       const std::vector<scg::ParseDiagnostic>& diags) {
  for (const auto& d : diags)
    std::cerr << source_name << ":" << d.line << ":" << d.column << ": " << d.severity << ": "
              << d.code << ": " << d.message << "\n";
}

struct GameInput {
  std::string game_path;
  std::string builtin_name;

  void add_to(CLI::App* cmd) {
    auto* grp = cmd->add_option_group("game input");
    grp->add_option("--game", game_path, "path to a game file");
    grp->add_option("--builtin", builtin_name, "name of a built-in game");
    grp->require_option(1);
  }

  std::string label() const { return builtin_name.empty() ? game_path : builtin_name; }

  // Loads and fully validates; prints diagnostics and throws on failure.
  scg::GameDocument load() const {
    const std::string source =
        builtin_name.empty() ? read_file(game_path) : scg::builtin_source(builtin_name);
    auto result = scg::parse_game(source);
    if (!result.ok()) {
      print_diagnostics(label(), result.diagnostics);
      throw scg::InvalidGame("game " + label() + " failed validation");
    }
    return std::move(*result.document);
  }
};

scg::Policy load_policy(const std::string& path, const scg::Scg& g,
                        const std::string& decision) {
  auto result = scg::parse_policy(read_file(path), g, decision);
  if (!result.ok()) {
    print_diagnostics(path, result.diagnostics);
    throw scg::InvalidGame("policy file " + path + " failed validation");
  }
  return std::move(*result.policy);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void print_policy(std::ostream& os, const scg::Policy& p, const std::string& indent = "  ") {
  for (const auto& [ctx, action] : p.table)
    os << indent << p.decision << "(" << ctx << ") = " << action << "\n";
}

struct CheckOptions {
  GameInput game;
  std::string policy_path;
  std::string reference_path;
  std::vector<std::string> phi_texts;
  std::string deceiver;
  std::string target;
  std::string format = "text";
};

int cmd_check(const CheckOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  const auto doc = opt.game.load();

  const std::string deceiver = opt.deceiver.empty() ? doc.meta.deceiver : opt.deceiver;
  const std::string target = opt.target.empty() ? doc.meta.target : opt.target;
  if (deceiver.empty() || target.empty())
    throw scg::Error("no deceiver/target: pass --deceiver/--target or use game metadata");

  scg::PolicyProfile profile = doc.meta.fixed_opponents;
  profile[deceiver] = load_policy(opt.policy_path, doc.game, deceiver);

  scg::Policy reference;
  if (!opt.reference_path.empty())
    reference = load_policy(opt.reference_path, doc.game, deceiver);
  else if (!doc.meta.honest_reference.empty())
    reference = scg::Policy{deceiver, doc.meta.honest_reference};
  else
    throw scg::Error("no reference policy: pass --reference or use game metadata");

  std::vector<scg::Proposition> phis;
  std::vector<std::string> phi_texts =
      opt.phi_texts.empty() ? doc.meta.phi_family : opt.phi_texts;
  if (phi_texts.empty())
    throw scg::Error("no propositions: pass --phi or use game metadata");
  for (const auto& text : phi_texts) {
    auto parsed = scg::parse_proposition(text, doc.game);
    if (!parsed.ok()) {
      print_diagnostics("--phi", parsed.diagnostics);
      throw scg::InvalidProposition("invalid proposition: " + text);
    }
    phis.push_back(std::move(*parsed.proposition));
  }

  const auto verdict =
      scg::deception_check_family(doc.game, profile, reference, deceiver, target, phis);

  if (opt.format == "json") {
    nlohmann::json inputs;
    inputs["game"] = opt.game.label();
    inputs["policy"] = opt.policy_path;
    inputs["deceiver"] = deceiver;
    inputs["target"] = target;
    inputs["phi"] = phi_texts;
    std::cout << scg::run_report("check", inputs, scg::to_json(verdict), seconds_since(start))
                     .dump(2)
              << "\n";
  } else {
    std::cout << "deceptive: " << (verdict.deceptive ? "yes" : "no") << "\n";
    for (const auto& w : verdict.witnesses) {
      std::cout << "witness: phi " << w.phi << " at";
      for (const auto& [var, val] : w.setting.assignment) std::cout << " " << var << "=" << val;
      std::cout << "\n";
    }
  }
  return verdict.deceptive ? kExitDeceptive : kExitOk;
}

struct TrainOptions {
  GameInput game;
  std::string mitigation = "none";
  std::string mode = "exact";
  std::optional<std::uint64_t> seed;
  std::uint64_t episodes = 20000;
  double epsilon = 0.1;
  std::string format = "text";
};

scg::TrainReport run_train(const scg::GameDocument& doc, const std::string& mitigation,
                           scg::TrainMode mode, const scg::RlConfig& rl, std::uint64_t cap) {
  const std::string& deceiver = doc.meta.deceiver;
  const std::string& target = doc.meta.target;
  if (deceiver.empty() || target.empty() || doc.meta.honest_reference.empty() ||
      doc.meta.phi_family.empty())
    throw scg::Error("training needs game metadata: deceiver, target, honest_reference and "
                     "phi_family");
  const auto phis = scg::phi_family(doc);
  const scg::Policy honest = doc.honest_policy();
  const auto& opponents = doc.meta.fixed_opponents;

  if (mitigation == "none")
    return scg::baseline_train(doc.game, deceiver, opponents, mode, honest, phis, target, rl,
                               cap);
  if (mitigation == "pso") {
    scg::PsoCriterion criterion;
    criterion.remove_edges.emplace_back(deceiver, target);
    return scg::pso_train(doc.game, deceiver, criterion, {}, opponents, mode, honest, phis,
                          target, rl, cap);
  }
  if (mitigation == "shield")
    return scg::shield_train(doc.game, deceiver, opponents, honest, phis, target, mode, rl,
                             cap);
  throw scg::Error("unknown mitigation: " + mitigation);
}

int cmd_train(const TrainOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  const auto doc = opt.game.load();
  const scg::TrainMode mode = opt.mode == "rl" ? scg::TrainMode::Rl : scg::TrainMode::Exact;
  scg::RlConfig rl;
  rl.epsilon = opt.epsilon;
  rl.episodes = opt.episodes;
  if (mode == scg::TrainMode::Rl) {
    if (!opt.seed) throw scg::Error("--mode rl requires --seed");
    rl.seed = *opt.seed;
  }
  const auto report = run_train(doc, opt.mitigation, mode, rl, enum_cap());

  if (opt.format == "json") {
    nlohmann::json inputs;
    inputs["game"] = opt.game.label();
    inputs["mitigation"] = opt.mitigation;
    inputs["mode"] = opt.mode;
    if (opt.seed) inputs["seed"] = *opt.seed;
    std::cout << scg::run_report("train", inputs, scg::to_json(report), seconds_since(start))
                     .dump(2)
              << "\n";
  } else {
    std::cout << "learned policy:\n";
    print_policy(std::cout, report.learned_policy);
    std::cout << "expected utility: " << report.expected_utility << "\n"
              << "deceptive: " << (report.deceptive ? "yes" : "no") << "\n"
              << "performance: " << to_string(report.performance_class) << "\n";
    if (!report.adoption_log.empty()) {
      std::size_t adopted = 0, rejected = 0;
      for (const auto& r : report.adoption_log) (r.accepted ? adopted : rejected) += 1;
      std::cout << "adoption log: " << adopted << " adopted, " << rejected << " rejected\n";
      for (const auto& r : report.adoption_log)
        if (r.accepted)
          std::cout << "  step " << r.step << ": adopted candidate " << r.candidate << "\n";
    }
  }
  return kExitOk;
}

struct EvalOptions {
  GameInput game;
  std::string profile_path;
  std::vector<std::string> interventions;
  std::string format = "text";
};

int cmd_eval(const EvalOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  const auto doc = opt.game.load();

  scg::PolicyProfile profile = doc.meta.fixed_opponents;
  if (!opt.profile_path.empty()) {
    auto parsed = scg::parse_profile(read_file(opt.profile_path), doc.game);
    if (!parsed.ok()) {
      print_diagnostics(opt.profile_path, parsed.diagnostics);
      throw scg::InvalidGame("profile file " + opt.profile_path + " failed validation");
    }
    for (auto& [decision, policy] : *parsed.profile) profile[decision] = std::move(policy);
  }

  scg::Intervention iv;
  for (const auto& spec : opt.interventions) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size())
      throw scg::Error("--do expects VAR=VALUE, got: " + spec);
    iv[spec.substr(0, eq)] = spec.substr(eq + 1);
  }

  const auto utilities = scg::expected_utilities(doc.game, profile, iv);

  if (opt.format == "json") {
    nlohmann::json inputs;
    inputs["game"] = opt.game.label();
    inputs["profile"] = opt.profile_path;
    inputs["do"] = opt.interventions;
    std::cout << scg::run_report("eval", inputs, nlohmann::json(utilities),
                                 seconds_since(start))
                     .dump(2)
              << "\n";
  } else {
    for (const auto& [agent, value] : utilities)
      std::cout << agent << " = " << value << "\n";
  }
  return kExitOk;
}

int cmd_validate(const GameInput& input, const std::string& format) {
  const auto start = std::chrono::steady_clock::now();
  const std::string source =
      input.builtin_name.empty() ? read_file(input.game_path) : scg::builtin_source(input.builtin_name);
  const auto result = scg::parse_game(source);
  if (format == "json") {
    nlohmann::json payload;
    payload["valid"] = result.ok();
    payload["diagnostics"] = nlohmann::json::array();
    for (const auto& d : result.diagnostics) {
      nlohmann::json jd;
      jd["severity"] = d.severity;
      jd["code"] = d.code;
      jd["message"] = d.message;
      jd["line"] = d.line;
      jd["column"] = d.column;
      payload["diagnostics"].push_back(std::move(jd));
    }
    nlohmann::json inputs;
    inputs["game"] = input.label();
    std::cout << scg::run_report("validate", inputs, payload, seconds_since(start)).dump(2)
              << "\n";
  } else if (result.ok()) {
    std::cout << input.label() << ": ok\n";
  } else {
    print_diagnostics(input.label(), result.diagnostics);
  }
  return result.ok() ? kExitOk : kExitValidation;
}

int cmd_nash(const GameInput& input, const std::string& format) {
  const auto start = std::chrono::steady_clock::now();
  const auto doc = input.load();
  const auto profiles = scg::enumerate_pure_nash(doc.game, 1e-9, enum_cap());

  if (format == "json") {
    nlohmann::json payload = nlohmann::json::array();
    for (const auto& p : profiles) {
      nlohmann::json jp;
      for (const auto& [decision, policy] : p) jp[decision] = policy.table;
      payload.push_back(std::move(jp));
    }
    nlohmann::json inputs;
    inputs["game"] = input.label();
    std::cout << scg::run_report("nash", inputs, payload, seconds_since(start)).dump(2) << "\n";
  } else {
    std::cout << profiles.size() << " pure Nash profile(s)\n";
    for (std::size_t i = 0; i < profiles.size(); ++i) {
      std::cout << "profile " << i + 1 << ":\n";
      for (const auto& [decision, policy] : profiles[i]) print_policy(std::cout, policy);
    }
  }
  return kExitOk;
}

struct Table1Cell {
  std::string game;
  std::string mitigation;
  bool expect_deceptive;
  scg::PerformanceClass expect_class;
};

int cmd_table1(const std::string& format) {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<Table1Cell> cells = {
      {"war_game", "shield", false, scg::PerformanceClass::OptimalHonest},
      {"bet_game", "shield", false, scg::PerformanceClass::OptimalHonest},
      {"war_game", "pso", false, scg::PerformanceClass::OptimalHonest},
      {"bet_game", "pso", false, scg::PerformanceClass::SubOptimal},
      {"war_game", "none", true, scg::PerformanceClass::Optimal},
      {"bet_game", "none", true, scg::PerformanceClass::Optimal},
  };

  bool all_match = true;
  nlohmann::json rows = nlohmann::json::array();
  std::ostringstream text;
  text << "game      mitigation  deceptive  performance     expected_utility  match\n";
  for (const auto& cell : cells) {
    const auto doc = scg::builtin(cell.game);
    const auto report =
        run_train(doc, cell.mitigation, scg::TrainMode::Exact, {}, enum_cap());
    const bool match = report.deceptive == cell.expect_deceptive &&
                       report.performance_class == cell.expect_class;
    all_match = all_match && match;

    nlohmann::json row;
    row["game"] = cell.game;
    row["mitigation"] = cell.mitigation;
    row["deceptive"] = report.deceptive;
    row["performance_class"] = to_string(report.performance_class);
    row["expected_utility"] = report.expected_utility;
    row["expected"] = {{"deceptive", cell.expect_deceptive},
                       {"performance_class", to_string(cell.expect_class)}};
    row["match"] = match;
    rows.push_back(std::move(row));

    char buf[160];
    std::snprintf(buf, sizeof buf, "%-9s %-11s %-10s %-15s %-17.10g %s", cell.game.c_str(),
                  cell.mitigation.c_str(), report.deceptive ? "yes" : "no",
                  to_string(report.performance_class), report.expected_utility,
                  match ? "ok" : "MISMATCH");
    text << buf << "\n";
  }

  if (format == "json") {
    nlohmann::json payload;
    payload["cells"] = std::move(rows);
    payload["all_match"] = all_match;
    std::cout << scg::run_report("table1", nlohmann::json::object(), payload,
                                 seconds_since(start))
                     .dump(2)
              << "\n";
  } else {
    std::cout << text.str();
    std::cout << (all_match ? "all cells match\n" : "MISMATCH against expected cells\n");
  }
  return all_match ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"structural causal game engine: deception checking, mitigation training, "
               "evaluation"};
  app.require_subcommand(1);

  GameInput validate_input;
  std::string validate_format = "text";
  auto* validate = app.add_subcommand("validate", "parse and validate a game file");
  validate_input.add_to(validate);
  validate->add_option("--format", validate_format)->check(CLI::IsMember({"text", "json"}));

  CheckOptions check_opt;
  auto* check = app.add_subcommand("check", "deception check of a policy against a reference");
  check_opt.game.add_to(check);
  check->add_option("--policy", check_opt.policy_path, "policy file for the deceiver")
      ->required();
  check->add_option("--reference", check_opt.reference_path,
                    "reference policy file (default: game metadata)");
  check->add_option("--phi", check_opt.phi_texts,
                    "proposition(s) to check (default: game metadata)");
  check->add_option("--deceiver", check_opt.deceiver);
  check->add_option("--target", check_opt.target);
  check->add_option("--format", check_opt.format)->check(CLI::IsMember({"text", "json"}));

  TrainOptions train_opt;
  auto* train = app.add_subcommand("train", "train a policy with an optional mitigation");
  train_opt.game.add_to(train);
  train->add_option("--mitigation", train_opt.mitigation)
      ->check(CLI::IsMember({"none", "pso", "shield"}));
  train->add_option("--mode", train_opt.mode)->check(CLI::IsMember({"exact", "rl"}));
  train->add_option("--seed", train_opt.seed, "rng seed (required with --mode rl)");
  train->add_option("--episodes", train_opt.episodes);
  train->add_option("--epsilon", train_opt.epsilon);
  train->add_option("--format", train_opt.format)->check(CLI::IsMember({"text", "json"}));

  EvalOptions eval_opt;
  auto* eval = app.add_subcommand("eval", "expected utilities of a profile");
  eval_opt.game.add_to(eval);
  eval->add_option("--profile", eval_opt.profile_path,
                   "profile file (merged over game metadata opponents)");
  eval->add_option("--do", eval_opt.interventions, "intervention VAR=VALUE");
  eval->add_option("--format", eval_opt.format)->check(CLI::IsMember({"text", "json"}));

  GameInput nash_input;
  std::string nash_format = "text";
  auto* nash = app.add_subcommand("nash", "enumerate pure Nash profiles");
  nash_input.add_to(nash);
  nash->add_option("--format", nash_format)->check(CLI::IsMember({"text", "json"}));

  std::string table1_format = "text";
  auto* table1 = app.add_subcommand("table1", "run all six exact-mode mitigation cells");
  table1->add_option("--format", table1_format)->check(CLI::IsMember({"text", "json"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(validate_input, validate_format);
    if (check->parsed()) return cmd_check(check_opt);
    if (train->parsed()) return cmd_train(train_opt);
    if (eval->parsed()) return cmd_eval(eval_opt);
    if (nash->parsed()) return cmd_nash(nash_input, nash_format);
    if (table1->parsed()) return cmd_table1(table1_format);
  } catch (const scg::SpaceTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResourceCap;
  } catch (const scg::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const scg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}
