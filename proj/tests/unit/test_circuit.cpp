#include "doctest.h"
#include "oracles.hpp"
#include "relevance/circuit.hpp"
#include "relevance/errors.hpp"

using namespace relevance;

TEST_SUITE("circuit") {
  TEST_CASE("gate evaluation") {
    CircuitBuilder b(2);
    const auto x = b.input(0), y = b.input(1);
    const auto out = b.disj(b.conj(x, b.negate(y)), b.conj(b.negate(x), y));
    const BoolCircuit c = b.build(out);
    for (std::size_t v = 0; v < 4; ++v) {
      const std::vector<std::size_t> bits{v & 1, v >> 1};
      CHECK(c.eval(bits) == (((v & 1) ^ (v >> 1)) == 1));
    }
    const std::vector<std::size_t> short_bits{1};
    CHECK_THROWS_AS(c.eval(short_bits), DimensionError);
  }

  TEST_CASE("malformed circuits are rejected") {
    CHECK_THROWS_AS(BoolCircuit(1, {Gate{GateOp::Not, 0, 0, false}}, 0), FormatError);
    CHECK_THROWS_AS(BoolCircuit(1, {Gate{GateOp::Input, 3, 0, false}}, 0), FormatError);
    CHECK_THROWS_AS(BoolCircuit(1, {Gate{GateOp::Input, 0, 0, false}}, 4), FormatError);
  }

  TEST_CASE("DIMACS parsing") {
    const Cnf f = parse_dimacs("c comment\np cnf 3 2\n1 -2 0\n3\n 0\n");
    CHECK(f.num_vars == 3);
    CHECK(f.clauses == std::vector<std::vector<int>>{{1, -2}, {3}});
    CHECK(parse_dimacs(write_dimacs(f)) == f);
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n3 0\n"), FormatError);
    CHECK_THROWS_AS(parse_dimacs("1 2 0\n"), FormatError);
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 2\n1 0\n"), FormatError);
  }

  TEST_CASE("parse errors carry line numbers") {
    try {
      parse_dimacs("p cnf 2 1\n1 x 0\n");
      FAIL("expected a parse error");
    } catch (const FormatError& e) {
      CHECK(e.line() == 2);
    }
  }

  TEST_CASE("CNF compilation agrees with clause semantics") {
    const Cnf f = parse_dimacs("p cnf 3 3\n1 2 0\n-1 3 0\n-2 -3 0\n");
    const Formula phi = Formula::from_cnf(f);
    for (std::uint64_t v = 0; v < 8; ++v) {
      bool expect = true;
      for (const auto& cl : f.clauses) {
        bool sat = false;
        for (int lit : cl) sat |= ((v >> (std::abs(lit) - 1) & 1) == 1) == (lit > 0);
        expect &= sat;
      }
      CHECK(phi.eval_mask(v) == expect);
    }
    CHECK(compile_cnf(Cnf{2, {}}).eval(std::vector<std::size_t>{0, 0}));
    CHECK_FALSE(compile_cnf(Cnf{1, {{}}}).eval(std::vector<std::size_t>{1}));
  }

  TEST_CASE("truth tables, tautology and model counting") {
    for (std::uint64_t table = 0; table < 256; ++table) {
      const Formula f = Formula::from_truth_table(3, table);
      std::uint64_t models = 0;
      for (std::uint64_t v = 0; v < 8; ++v) {
        CHECK(f.eval_mask(v) == oracle::truth(table, v));
        models += oracle::truth(table, v);
      }
      CHECK(count_models(f) == models);
      CHECK(is_tautology_oracle(f) == (table == 255));
    }
  }

  TEST_CASE("QDIMACS parsing and evaluation") {
    const QBF q = parse_qdimacs("p cnf 2 2\ne 1 0\na 2 0\n1 2 0\n1 -2 0\n");
    CHECK(q.prefix.size() == 2);
    CHECK(q.num_universal() == 1);
    CHECK(eval_qbf_oracle(q));
    const QBF r = parse_qdimacs("p cnf 2 2\na 1 0\ne 2 0\n1 2 0\n-1 -2 0\n");
    CHECK(eval_qbf_oracle(r));
    const QBF s = parse_qdimacs("p cnf 2 2\ne 2 0\na 1 0\n1 2 0\n-1 -2 0\n");
    CHECK_FALSE(eval_qbf_oracle(s));
    CHECK(parse_qdimacs(write_qdimacs(q)).prefix == q.prefix);
    CHECK_THROWS_AS(parse_qdimacs("p cnf 2 1\ne 1 0\ne 1 0\n1 2 0\n"), FormatError);
  }

  TEST_CASE("unquantified variables are treated as outer existentials") {
    const QBF q = parse_qdimacs("p cnf 2 1\na 2 0\n1 0\n");
    CHECK(q.prefix.front() == std::make_pair(Quantifier::Exists, std::size_t{1}));
    CHECK(eval_qbf_oracle(q));
  }

  TEST_CASE("succinct expansion matches term sums") {
    CircuitBuilder b(2);
    const BoolCircuit x0 = b.build(b.input(0));
    SuccinctProblem sp{2, {"a", "b"}, {{{x0, Rational(3, 2)}}, {}}};
    const DecisionProblem p = expand(sp);
    for (StateIndex s = 0; s < 4; ++s) {
      CHECK(p.utility(0, s) == ((s & 1) ? Rational(3, 2) : Rational(0)));
      CHECK(p.utility(1, s) == 0);
    }
    CHECK(instance_length(sp) == 2 + 2 + 1);
    Budgets tight;
    tight.expansion_entries = 4;
    CHECK_THROWS_AS(expand(sp, tight), CapacityError);
  }
}
