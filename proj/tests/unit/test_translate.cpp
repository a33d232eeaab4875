#include <filesystem>

#include "doctest.h"
#include "relevance/errors.hpp"
#include "relevance/translate.hpp"

using namespace relevance;

namespace {
const std::filesystem::path kFixtures{RELEVANCE_FIXTURES};
}

TEST_SUITE("translate") {
  TEST_CASE("configuration core") {
    const ConfigModel m = config_from_json(read_json(kFixtures / "config.json"));
    const ConfigTranslation t = translate_config(m);
    CHECK(t.core_names == std::vector<std::string>{"p2", "p3"});
    CHECK(t.core == CoordSet{1, 2});
    CHECK(check_sufficiency(t.problem, t.core).yes());
    CHECK_FALSE(check_sufficiency(t.problem, {2}).yes());
    // latency is outside the target, so the cache parameter stays irrelevant
    CHECK_FALSE(relevant_coordinates(t.problem).coords.contains(0));
  }

  TEST_CASE("configuration tables must be total") {
    Json j = read_json(kFixtures / "config.json");
    j["table"].erase(j["table"].begin());
    CHECK_THROWS_AS(config_from_json(j), FormatError);
    Json k = read_json(kFixtures / "config.json");
    k["target"] = {"durability"};
    CHECK_THROWS_AS(config_from_json(k), FormatError);
  }

  TEST_CASE("one-step POMDP worked instance") {
    const PomdpTranslation t = translate_pomdp(pomdp_from_json(read_json(kFixtures / "pomdp.json")));
    CHECK_FALSE(t.preservation.yes());
    REQUIRE(t.coarse_optimizer.count("all"));
    CHECK(t.coarse_optimizer.at("all").actions() == std::vector<ActionIndex>{1});
    CHECK(t.full_optimizer[0].actions() == std::vector<ActionIndex>{0});
    CHECK(t.full_optimizer[1].actions() == std::vector<ActionIndex>{1});
    const Json r = pomdp_report(t);
    CHECK(r.at("coarse_optimizer").at("all") == Json::array({"b"}));
  }

  TEST_CASE("identity coarsening preserves") {
    Json j = read_json(kFixtures / "pomdp.json");
    j["coarsen"] = {"o1", "o2"};
    CHECK(translate_pomdp(pomdp_from_json(j)).preservation.yes());
    j["prior"] = {"1/2", "1/3"};
    CHECK_THROWS_AS(pomdp_from_json(j), FormatError);
  }

  TEST_CASE("hyperparameter redundancy") {
    const HyperparamModel m = hyperparam_from_json(read_json(kFixtures / "hyperparam.json"));
    const HyperparamTranslation t = translate_hyperparam(m);
    CHECK(t.redundant);
    CHECK_FALSE(t.witness.has_value());
    CHECK(check_sufficiency(t.problem, {0, 2}).yes());
    const HyperparamModel g = hyperparam_from_json(read_json(kFixtures / "hyperparam_gamma.json"));
    const HyperparamTranslation u = translate_hyperparam(g);
    CHECK_FALSE(u.redundant);
    REQUIRE(u.witness.has_value());
    CHECK(u.witness->first == 0);
  }

  TEST_CASE("hyperparameter index order puts alpha first") {
    HyperparamModel m;
    m.environments = {"e"};
    m.alpha = {"a0", "a1"};
    m.gamma = {"g0", "g1", "g2"};
    m.epsilon = {"x0"};
    m.returns = {{Rational(0), Rational(1), Rational(2), Rational(3), Rational(4), Rational(5)}};
    const DecisionProblem p = hyperparam_problem(m);
    CHECK(p.decode(3) == State{1, 1, 0});
    CHECK(p.utility(0, 3) == 3);
  }
}
