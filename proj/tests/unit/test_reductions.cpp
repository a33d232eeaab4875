#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "relevance/errors.hpp"
#include "relevance/reductions.hpp"

using namespace relevance;

namespace {

DecisionProblem table_of(const GadgetOutput& g) {
  return std::visit(
      [](const auto& x) -> DecisionProblem {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, DecisionProblem>) return x;
        else if constexpr (std::is_same_v<T, SuccinctProblem>) return expand(x);
        else return x.base();
      },
      g.instance);
}

Cnf random_3cnf(std::mt19937_64& rng, std::size_t vars, std::size_t clauses) {
  std::uniform_int_distribution<int> v(1, static_cast<int>(vars)), sign(0, 1);
  Cnf f{vars, {}};
  for (std::size_t c = 0; c < clauses; ++c) {
    std::vector<int> cl;
    for (int k = 0; k < 3; ++k) cl.push_back(sign(rng) ? v(rng) : -v(rng));
    f.clauses.push_back(cl);
  }
  return f;
}

}  // namespace

TEST_SUITE("reductions") {
  TEST_CASE("tautology gadget: empty set sufficient iff tautology") {
    for (std::size_t n = 1; n <= 2; ++n)
      for (std::uint64_t table = 0; table < (std::uint64_t{1} << (1u << n)); ++table) {
        const Formula f = Formula::from_truth_table(n, table);
        const GadgetOutput g = gadget_tautology(f);
        CHECK(g.query.kind == QueryKind::Sufficiency);
        CHECK(g.accounting.coords == n + 1);
        CHECK(check_sufficiency(table_of(g), g.query.coords).yes() == is_tautology_oracle(f));
        CHECK(verify_gadget(g).pass);
      }
  }

  TEST_CASE("exists-forall gadget: anchor iff the QBF holds") {
    const char* sources[] = {"p cnf 2 2\ne 1 0\na 2 0\n1 2 0\n1 -2 0\n",
                             "p cnf 2 2\ne 1 0\na 2 0\n1 2 0\n-1 -2 0\n",
                             "p cnf 2 1\ne 1 2 0\n1 2 0\n",
                             "p cnf 2 1\na 1 2 0\n1 2 0\n"};
    for (const char* src : sources) {
      const QBF q = parse_qdimacs(src);
      const GadgetOutput g = gadget_exists_forall(q);
      CHECK(check_anchor(table_of(g), g.query.coords).yes() == eval_qbf_oracle(q));
      CHECK(verify_gadget(g).pass);
    }
    CHECK_THROWS_AS(gadget_exists_forall(parse_qdimacs("p cnf 2 1\na 1 0\ne 2 0\n1 2 0\n")), ShapeError);
  }

  TEST_CASE("MAJSAT gadget: decisive iff at least half the assignments satisfy") {
    for (std::size_t n = 1; n <= 3; ++n)
      for (std::uint64_t table = 0; table < (std::uint64_t{1} << (1u << n)); table += (n == 3 ? 7 : 1)) {
        const Formula f = Formula::from_truth_table(n, table);
        const GadgetOutput g = gadget_majsat(f);
        const auto& sp = std::get<StochasticProblem>(g.instance);
        const bool majority = 2 * count_models(f) >= (std::uint64_t{1} << n);
        CHECK(check_decisiveness(sp, {}).yes() == majority);
        CHECK(check_stoch_anchor(sp, {}).yes() == majority);
        CHECK(find_stoch_minimum(sp, 0, StochFamily::Decisiveness).yes() == majority);
        // hold utility sits strictly between the two sides of the threshold
        const Rational hold = sp.base().utility(1, 0);
        CHECK(hold == Rational(1, 2) - Rational(1, 2 << n));
      }
    CHECK_THROWS_AS(majsat_succinct(Formula::from_truth_table(0, 1)), ShapeError);
  }

  TEST_CASE("TQBF gadget: empty set sequentially sufficient iff the QBF holds") {
    const char* sources[] = {"p cnf 2 1\na 1 0\ne 2 0\n1 2 0\n", "p cnf 2 2\na 1 0\ne 2 0\n1 0\n2 0\n",
                             "p cnf 2 2\ne 1 0\na 2 0\n1 2 0\n-1 2 0\n", "p cnf 1 1\ne 1 0\n1 0\n",
                             "p cnf 1 1\na 1 0\n1 0\n"};
    for (const char* src : sources) {
      const QBF q = parse_qdimacs(src);
      const GadgetOutput g = gadget_tqbf(q);
      const auto& sq = std::get<SequentialProblem>(g.instance);
      CHECK(sq.mode() == SeqMode::Backup);
      CHECK(check_seq_sufficiency(sq, {}).yes() == eval_qbf_oracle(q));
      CHECK(verify_gadget(g).pass);
    }
  }

  TEST_CASE("set cover gadget: restricted minimum equals the minimum cover") {
    const std::vector<SetCoverInstance> covers{
        {3, {{1, 2}, {2, 3}, {3}, {1}}}, {2, {{1}, {2}, {1, 2}}}, {3, {{1}, {2}}}, {1, {{1}}}};
    for (const auto& sc : covers) {
      const GadgetOutput g = gadget_setcover(sc);
      const auto cover = minimum_cover(sc);
      const auto got = restricted_minimum(table_of(g), g.admissible, g.query.coords);
      CHECK(cover.has_value() == got.has_value());
      if (cover) CHECK(cover->size() == got->size());
      CHECK(verify_gadget(g).pass);
    }
    CHECK_THROWS(gadget_setcover(SetCoverInstance{2, {{0}}}));
  }

  TEST_CASE("shifted family: minimum size 1 on tautologies, n + 1 otherwise") {
    for (std::uint64_t table = 0; table < 16; ++table) {
      const Formula f = Formula::from_truth_table(2, table);
      const GadgetOutput g = gadget_shifted(f);
      const std::size_t size = minimum_sufficient_set(table_of(g)).size();
      CHECK(size == (is_tautology_oracle(f) ? 1u : 3u));
    }
  }

  TEST_CASE("3-SAT chain accounting") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 20; ++trial) {
      const Cnf f = random_3cnf(rng, 4, 2 + trial % 10);
      const GadgetOutput g = gadget_3sat_chain(f);
      CHECK(g.accounting.output_size <= 3 * g.accounting.input_size);
      CHECK(g.accounting.coords == f.num_vars + 1);
      CHECK(verify_gadget(g).pass);
    }
  }

  TEST_CASE("minimum cover enumerates by size") {
    const SetCoverInstance sc{4, {{1}, {2}, {3}, {4}, {1, 2, 3, 4}}};
    CHECK(*minimum_cover(sc) == CoordSet{4});
    CHECK(sc.covers(CoordSet{0, 1, 2, 3}));
    CHECK_FALSE(sc.covers(CoordSet{0, 1}));
  }
}
