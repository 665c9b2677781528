#include <doctest.h>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "scg/deception.hpp"

using namespace scg;

TEST_CASE("the bluffing policy deceives exactly at the weak setting") {
  const auto& g = fixtures::war().game;
  const auto profile = fixtures::war_profile(fixtures::war_always_defend());
  const auto phi = Proposition::literal("X", "strong");

  const auto verdict = deception_check(g, profile, fixtures::war_honest(), "DS", "DT", phi);
  CHECK(verdict.deceptive);
  REQUIRE(verdict.witnesses.size() == 1);
  CHECK(verdict.witnesses[0].setting.assignment.at("X") == "weak");
  CHECK(verdict.witnesses[0].phi == "X=strong");
  CHECK(verdict.per_setting.size() == 2);

  // conjunct breakdown at the witness
  const auto& w = verdict.witnesses[0];
  CHECK(w.intends);
  CHECK(w.t_believes);
  CHECK_FALSE(w.s_believes);
  CHECK_FALSE(w.phi_true);
  CHECK(w.deceptive_here());
}

TEST_CASE("the honest policy is not deceptive") {
  const auto& g = fixtures::war().game;
  const auto profile = fixtures::war_profile(fixtures::war_honest());
  const auto verdict = deception_check(g, profile, fixtures::war_honest(), "DS", "DT",
                                       Proposition::literal("X", "strong"));
  CHECK_FALSE(verdict.deceptive);
  CHECK(verdict.witnesses.empty());
  CHECK(verdict.per_setting.size() == 2);
}

TEST_CASE("war game verdicts agree with the naive oracle for every policy") {
  const auto& g = fixtures::war().game;
  auto phi_fn = [](const oracle::Values& v) { return v.at("X") == "strong"; };
  const auto phi = Proposition::literal("X", "strong");
  for (const auto& ds : oracle::all_policies(g, "DS")) {
    const auto profile = fixtures::war_profile(ds);
    const bool engine =
        deception_check(g, profile, fixtures::war_honest(), "DS", "DT", phi).deceptive;
    const bool naive =
        oracle::deceives(g, profile, fixtures::war_honest(), "DS", "DT", phi_fn);
    CHECK(engine == naive);
  }
}

TEST_CASE("the shifted bet reporter deceives about each die value") {
  const auto& g = fixtures::bet().game;
  const auto profile = fixtures::bet_profile(fixtures::bet_deceptive());
  const auto phis = phi_family(fixtures::bet());
  REQUIRE(phis.size() == 3);

  const auto verdict =
      deception_check_family(g, profile, fixtures::bet_honest(), "DS", "DT", phis);
  CHECK(verdict.deceptive);
  REQUIRE(verdict.witnesses.size() == 3);
  for (const auto& w : verdict.witnesses) {
    // lying happens exactly when the side bet is on, about the reported value
    CHECK(w.setting.assignment.at("Y") == "1");
    const int x = std::stoi(w.setting.assignment.at("X"));
    CHECK(w.phi == "X=" + std::to_string((x + 1) % 3));
  }
  CHECK(verdict.per_setting.size() == 3 * 6);
}

TEST_CASE("the honest bet reporter passes the family check") {
  const auto& g = fixtures::bet().game;
  const auto profile = fixtures::bet_profile(fixtures::bet_honest());
  const auto verdict = deception_check_family(g, profile, fixtures::bet_honest(), "DS", "DT",
                                              phi_family(fixtures::bet()));
  CHECK_FALSE(verdict.deceptive);
  CHECK(verdict.witnesses.empty());
}

TEST_CASE("family checks require at least one proposition") {
  const auto& g = fixtures::war().game;
  const auto profile = fixtures::war_profile(fixtures::war_honest());
  CHECK_THROWS_AS(
      deception_check_family(g, profile, fixtures::war_honest(), "DS", "DT", {}),
      EmptyFamily);
}

TEST_CASE("family verdict is the disjunction of the member verdicts") {
  const auto& g = fixtures::bet().game;
  const auto profile = fixtures::bet_profile(fixtures::bet_deceptive());
  const auto phis = phi_family(fixtures::bet());
  const auto family =
      deception_check_family(g, profile, fixtures::bet_honest(), "DS", "DT", phis);
  bool any = false;
  std::size_t witness_total = 0;
  for (const auto& phi : phis) {
    const auto single = deception_check(g, profile, fixtures::bet_honest(), "DS", "DT", phi);
    any = any || single.deceptive;
    witness_total += single.witnesses.size();
  }
  CHECK(family.deceptive == any);
  CHECK(family.witnesses.size() == witness_total);
}
