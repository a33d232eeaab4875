#include <filesystem>
#include <set>

#include "doctest.h"
#include "relevance/errors.hpp"
#include "relevance/io.hpp"
#include "relevance/reductions.hpp"

using namespace relevance;

namespace {

const std::filesystem::path kFixtures{RELEVANCE_FIXTURES};

const std::vector<std::string> kInstanceFixtures{
    "xor.json",       "xor_stochastic.json",
    "sufficient.json", "two_state.json",
    "static_not_stochastic.json", "stochastic_not_sequential.json",
    "stochastic_not_sequential_oneshot.json", "tensor.json",
    "tree.json",      "pairwise.json",
    "succinct.json"};

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("every instance fixture round-trips") {
    std::set<std::string> kinds;
    for (const auto& name : kInstanceFixtures) {
      CAPTURE(name);
      const Instance a = load_instance(kFixtures / name);
      kinds.insert(instance_kind(a));
      const Json j = to_json(a);
      CHECK(j.at("schema") == kSchemaVersion);
      const Instance b = instance_from_json(Json::parse(j.dump()));
      CHECK(to_json(b) == j);
      CHECK(explicit_problem(a) == explicit_problem(b));
    }
    CHECK(kinds == std::set<std::string>{"explicit", "succinct", "stochastic", "sequential", "tensor",
                                         "tree", "pairwise"});
  }

  TEST_CASE("rationals are written as p/q strings") {
    CHECK(rational_to_json(Rational(-3, 4)) == "-3/4");
    CHECK(rational_to_json(Rational(2)) == "2/1");
    CHECK(rational_from_json(Json("6/8")) == Rational(3, 4));
    CHECK(rational_from_json(Json(5)) == 5);
    CHECK_THROWS_AS(rational_from_json(Json(0.5)), FormatError);
  }

  TEST_CASE("schema problems become format errors") {
    CHECK_THROWS_AS(load_instance(kFixtures / "bad_schema.json"), FormatError);
    CHECK_THROWS_AS(load_instance(kFixtures / "bad_rational.json"), FormatError);
    CHECK_THROWS_AS(load_instance(kFixtures / "missing.json"), FormatError);
    CHECK_THROWS_AS(instance_from_json(Json::parse(R"({"schema":1,"kind":"weird"})")), FormatError);
    CHECK_THROWS_AS(instance_from_json(Json::parse(R"({"schema":1,"kind":"explicit","actions":"a"})")),
                    FormatError);
    CHECK_THROWS_AS(
        instance_from_json(Json::parse(
            R"({"schema":1,"kind":"explicit","actions":["a"],"domains":[2],"utilities":[["1"]]})")),
        FormatError);
  }

  TEST_CASE("load respects capacity budgets") {
    Budgets tight;
    tight.expansion_entries = 8;
    CHECK_THROWS_AS(instance_from_json(read_json(kFixtures / "sufficient.json"), tight), CapacityError);
    CHECK_NOTHROW(instance_from_json(read_json(kFixtures / "xor.json"), tight));
  }

  TEST_CASE("budget specifications") {
    const Budgets b = Budgets::parse("expansion=64,lattice=5");
    CHECK(b.expansion_entries == 64);
    CHECK(b.lattice_coords == 5);
    CHECK(Budgets::parse("100").expansion_entries == 100);
    CHECK_THROWS_AS(Budgets::parse("bogus=1"), FormatError);
    CHECK_THROWS_AS(Budgets::parse("expansion=x"), FormatError);
  }

  TEST_CASE("circuits round-trip through JSON") {
    CircuitBuilder b(3);
    const auto out = b.disj(b.conj(b.input(0), b.negate(b.input(2))), b.constant(false));
    const BoolCircuit c = b.build(out);
    CHECK(circuit_from_json(circuit_to_json(c)) == c);
    CHECK_THROWS_AS(circuit_from_json(Json::parse(R"({"inputs":1,"gates":[{"op":"xor","args":[0,0]}],"output":0})")),
                    FormatError);
  }

  TEST_CASE("gadget documents load as their embedded instance") {
    const GadgetOutput g = gadget_tautology(Formula::from_cnf(parse_dimacs(read_text(kFixtures / "taut.cnf"))));
    const Json j = gadget_to_json(g);
    CHECK(j.at("kind") == "gadget");
    CHECK(j.at("query").at("kind") == "sufficiency");
    const Instance inst = instance_from_json(j);
    CHECK(std::string(instance_kind(inst)) == "succinct");
    CHECK(check_sufficiency(explicit_problem(inst), {}).yes());
  }

  TEST_CASE("set cover documents") {
    const SetCoverInstance sc = setcover_from_json(read_json(kFixtures / "cover.json"));
    CHECK(sc.universe == 3);
    CHECK(sc.sets.size() == 4);
    const SetCoverInstance back = setcover_from_json(setcover_to_json(sc));
    CHECK(back.sets == sc.sets);
  }

  TEST_CASE("verdicts serialize with typed witnesses") {
    Verdict v = no_verdict(StatePair{1, 2});
    v.steps = 7;
    const Json j = verdict_to_json(v);
    CHECK(j.at("answer") == "NO");
    CHECK(j.at("witness").at("type") == "state_pair");
    CHECK(j.at("steps") == 7);
    CHECK(witness_to_string(Witness{CoordSet{0, 2}}) == "coords {0,2}");
    CHECK(witness_to_string(Witness{}) == "none");
  }
}
