#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "scg/model.hpp"

using namespace scg;

namespace {

Scg tiny_game() {
  Scg g;
  g.name = "tiny";
  g.agents = {"A"};
  Variable c;
  c.name = "C";
  c.kind = VariableKind::Chance;
  c.domain = {"a", "b"};
  c.cpd = {{"", {{"a", 0.5}, {"b", 0.5}}}};
  Variable d;
  d.name = "D";
  d.kind = VariableKind::Decision;
  d.agent = "A";
  d.domain = {"x", "y"};
  d.parents = {"C"};
  Variable u;
  u.name = "U";
  u.kind = VariableKind::Utility;
  u.agent = "A";
  u.parents = {"C", "D"};
  u.table = {{"a,x", 1.0}, {"a,y", 0.0}, {"b,x", 0.0}, {"b,y", 1.0}};
  g.variables = {c, d, u};
  return g;
}

bool has_code(const std::vector<Diagnostic>& diags, DiagnosticCode code) {
  for (const auto& d : diags)
    if (d.code == code) return true;
  return false;
}

}  // namespace

TEST_CASE("built-in games validate cleanly") {
  CHECK(validate(fixtures::war().game).empty());
  CHECK(validate(fixtures::bet().game).empty());
  CHECK(validate(tiny_game()).empty());
}

TEST_CASE("settings enumeration matches the naive oracle") {
  for (const Scg* g : {&fixtures::war().game, &fixtures::bet().game}) {
    const auto engine = enumerate_settings(*g);
    const auto naive = oracle::settings(*g);
    REQUIRE(engine.size() == naive.size());
    double total = 0.0;
    for (std::size_t i = 0; i < engine.size(); ++i) {
      CHECK(engine[i].assignment == naive[i].first);
      CHECK(engine[i].probability == doctest::Approx(naive[i].second).epsilon(1e-12));
      CHECK(engine[i].probability > 0.0);
      total += engine[i].probability;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("war game settings carry the declared prior") {
  const auto settings = enumerate_settings(fixtures::war().game);
  REQUIRE(settings.size() == 2);
  CHECK(settings[0].assignment.at("X") == "strong");
  CHECK(settings[0].probability == doctest::Approx(0.9));
  CHECK(settings[1].assignment.at("X") == "weak");
  CHECK(settings[1].probability == doctest::Approx(0.1));
  CHECK(enumerate_settings(fixtures::bet().game).size() == 6);
}

TEST_CASE("evaluation is deterministic and matches hand results") {
  const auto& g = fixtures::war().game;
  const auto profile = fixtures::war_profile(fixtures::war_honest());
  const auto strong = fixtures::setting_of(g, {{"X", "strong"}});
  const auto a = evaluate(g, strong, profile);
  CHECK(a.symbols.at("DS") == "defend");
  CHECK(a.symbols.at("DT") == "no_attack");
  CHECK(a.utilities.at("US") == doctest::Approx(3.0));
  CHECK(a.utilities.at("UT") == doctest::Approx(1.0));

  const auto weak = fixtures::setting_of(g, {{"X", "weak"}});
  const auto b = evaluate(g, weak, profile);
  CHECK(b.symbols.at("DS") == "retreat");
  CHECK(b.symbols.at("DT") == "attack");
  CHECK(b.utilities.at("US") == doctest::Approx(1.0));
}

TEST_CASE("interventions cut the mechanism") {
  const auto& g = fixtures::war().game;
  const auto profile = fixtures::war_profile(fixtures::war_honest());
  const auto weak = fixtures::setting_of(g, {{"X", "weak"}});
  const auto forced = evaluate(g, weak, profile, {{"DT", "no_attack"}});
  CHECK(forced.symbols.at("DT") == "no_attack");
  CHECK(forced.utilities.at("US") == doctest::Approx(3.0));
  CHECK(utility_at(g, weak, profile, "S", {{"DT", "no_attack"}}) == doctest::Approx(3.0));

  const auto eu = expected_utilities(g, profile, {{"DT", "no_attack"}});
  CHECK(eu.at("S") == doctest::Approx(3.0));
  CHECK(eu.at("T") == doctest::Approx(0.9));
}

TEST_CASE("expected utilities agree with the oracle on the golden profiles") {
  struct Case {
    const Scg* g;
    PolicyProfile profile;
    double s, t;
  };
  const std::vector<Case> cases = {
      {&fixtures::war().game, fixtures::war_profile(fixtures::war_always_defend()), 2.9, 0.9},
      {&fixtures::war().game, fixtures::war_profile(fixtures::war_honest()), 2.8, 1.0},
      {&fixtures::bet().game, fixtures::bet_profile(fixtures::bet_honest()), 1.0, 1.0},
      {&fixtures::bet().game, fixtures::bet_profile(fixtures::bet_deceptive()), 1.2, 0.9},
  };
  for (const auto& c : cases) {
    const auto engine = expected_utilities(*c.g, c.profile);
    const auto naive = oracle::expected_utilities(*c.g, c.profile);
    CHECK(engine.at("S") == doctest::Approx(naive.at("S")).epsilon(1e-12));
    CHECK(engine.at("T") == doctest::Approx(naive.at("T")).epsilon(1e-12));
    CHECK(std::abs(engine.at("S") - c.s) <= 1e-9);
    CHECK(std::abs(engine.at("T") - c.t) <= 1e-9);
  }
}

TEST_CASE("evaluation requires a policy for every decision") {
  const auto& g = fixtures::war().game;
  const auto strong = fixtures::setting_of(g, {{"X", "strong"}});
  PolicyProfile missing;
  missing["DS"] = fixtures::war_honest();
  CHECK_THROWS_AS(evaluate(g, strong, missing), MissingPolicy);
}

TEST_CASE("validation flags every structural defect") {
  SUBCASE("duplicate variable") {
    Scg g = tiny_game();
    g.variables.push_back(g.variables[0]);
    CHECK(has_code(validate(g), DiagnosticCode::DuplicateVariable));
  }
  SUBCASE("duplicate agent") {
    Scg g = tiny_game();
    g.agents.push_back("A");
    CHECK(has_code(validate(g), DiagnosticCode::DuplicateAgent));
  }
  SUBCASE("empty domain") {
    Scg g = tiny_game();
    g.variables[1].domain.clear();
    CHECK(has_code(validate(g), DiagnosticCode::EmptyDomain));
  }
  SUBCASE("unknown parent") {
    Scg g = tiny_game();
    g.variables[1].parents.push_back("Nope");
    CHECK(has_code(validate(g), DiagnosticCode::UnknownReference));
  }
  SUBCASE("unknown agent") {
    Scg g = tiny_game();
    g.variables[1].agent = "B";
    CHECK(has_code(validate(g), DiagnosticCode::UnknownAgentRef));
  }
  SUBCASE("cycle") {
    Scg g = tiny_game();
    g.variables[0].parents.push_back("D");
    CHECK(has_code(validate(g), DiagnosticCode::CyclicGraph));
  }
  SUBCASE("chance with decision parent") {
    Scg g = tiny_game();
    Variable c2;
    c2.name = "C2";
    c2.kind = VariableKind::Chance;
    c2.domain = {"a"};
    c2.parents = {"D"};
    c2.cpd = {{"x", {{"a", 1.0}}}, {"y", {{"a", 1.0}}}};
    g.variables.push_back(c2);
    CHECK(has_code(validate(g), DiagnosticCode::ChanceHasNonChanceParent));
  }
  SUBCASE("utility used as parent") {
    Scg g = tiny_game();
    g.variables[1].parents.push_back("U");
    CHECK(has_code(validate(g), DiagnosticCode::UtilityHasChildren));
  }
  SUBCASE("cpd not normalized") {
    Scg g = tiny_game();
    g.variables[0].cpd[""]["a"] = 0.7;
    CHECK(has_code(validate(g), DiagnosticCode::CpdNotNormalized));
  }
  SUBCASE("probability out of range") {
    Scg g = tiny_game();
    g.variables[0].cpd[""]["a"] = 1.5;
    g.variables[0].cpd[""]["b"] = -0.5;
    CHECK(has_code(validate(g), DiagnosticCode::CpdProbabilityOutOfRange));
  }
  SUBCASE("incomplete cpd") {
    Scg g = tiny_game();
    g.variables[0].cpd.clear();
    CHECK(has_code(validate(g), DiagnosticCode::IncompleteTable));
  }
  SUBCASE("incomplete utility table") {
    Scg g = tiny_game();
    g.variables[2].table.erase("a,x");
    CHECK(has_code(validate(g), DiagnosticCode::IncompleteTable));
  }
  SUBCASE("row for impossible assignment") {
    Scg g = tiny_game();
    g.variables[2].table["c,x"] = 1.0;
    CHECK(has_code(validate(g), DiagnosticCode::UnknownTableRow));
  }
  SUBCASE("cpd mass on non-domain value") {
    Scg g = tiny_game();
    g.variables[0].cpd[""]["c"] = 0.0;
    CHECK(has_code(validate(g), DiagnosticCode::OutOfDomainValue));
  }
  SUBCASE("non-finite utility") {
    Scg g = tiny_game();
    g.variables[2].table["a,x"] = std::numeric_limits<double>::infinity();
    CHECK(has_code(validate(g), DiagnosticCode::NonFiniteUtility));
  }
}

TEST_CASE("invalid games are rejected before enumeration") {
  Scg g = tiny_game();
  g.variables[0].cpd[""]["a"] = 0.7;
  CHECK_THROWS_AS(enumerate_settings(g), InvalidGame);
}
