#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "relevance/errors.hpp"
#include "relevance/static.hpp"

using namespace relevance;

namespace {

DecisionProblem xor_problem() {
  return DecisionProblem::tabulate({"0", "1"}, {2, 2}, [](ActionIndex a, const State& s) {
    return Rational((s[0] ^ s[1]) == a ? 1 : 0);
  });
}

std::uint64_t pow2(std::size_t n) { return std::uint64_t{1} << n; }

}  // namespace

TEST_SUITE("static") {
  TEST_CASE("both strategies equal the pairwise definition") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 200; ++trial) {
      const auto p = oracle::random_problem(rng, 1 + trial % 3, 2 + trial % 2, 2, 3);
      for (std::uint64_t m = 0; m < pow2(p.num_coords()); ++m) {
        const CoordSet I = CoordSet::from_mask(m);
        const bool expect = oracle::sufficient(p, m);
        for (auto strategy : {SufficiencyStrategy::Fiber, SufficiencyStrategy::Pairwise}) {
          StepCounter c;
          const Verdict v = check_sufficiency(p, I, strategy, c);
          CHECK(v.yes() == expect);
          if (v.yes()) {
            CHECK(std::holds_alternative<std::monostate>(v.witness));
          } else {
            const auto w = std::get<StatePair>(v.witness);
            CHECK(oracle::agree(p, w.first, w.second, m));
            CHECK(oracle::opt_of(p, w.first) != oracle::opt_of(p, w.second));
          }
        }
      }
    }
  }

  TEST_CASE("fiber witness matches the definitional oracle") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
      const auto p = oracle::random_problem(rng, 3, 2, 1);
      const CoordSet I{0};
      const Verdict a = check_sufficiency(p, I), b = is_sufficient_oracle(p, I);
      CHECK(a.yes() == b.yes());
      CHECK(a.witness == b.witness);
    }
  }

  TEST_CASE("empty set and full set") {
    const auto p = xor_problem();
    CHECK_FALSE(check_sufficiency(p, {}).yes());
    CHECK(check_sufficiency(p, {0, 1}).yes());
    CHECK_THROWS_AS(check_sufficiency(p, {2}), DimensionError);
  }

  TEST_CASE("XOR minimum is the full set") {
    const auto p = xor_problem();
    const Verdict v = find_minimum_sufficient(p, 1);
    CHECK_FALSE(v.yes());
    CHECK(std::get<CoordSet>(v.witness) == CoordSet{0, 1});
    CHECK(find_minimum_sufficient(p, 2, MinimumMode::Lattice).yes());
  }

  TEST_CASE("anchor equals exists-a-constant-fiber") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 200; ++trial) {
      const auto p = oracle::random_problem(rng, 1 + trial % 3, 2, 1, 3);
      for (std::uint64_t m = 0; m < pow2(p.num_coords()); ++m) {
        const CoordSet I = CoordSet::from_mask(m);
        bool expect = false;
        for (StateIndex s = 0; s < p.num_states() && !expect; ++s) {
          bool constant = true;
          for (StateIndex t = 0; t < p.num_states(); ++t)
            if (oracle::agree(p, s, t, m) && oracle::opt_of(p, s) != oracle::opt_of(p, t)) constant = false;
          expect = constant;
        }
        StepCounter c;
        const Verdict v = check_anchor(p, I, c);
        CHECK(v.yes() == expect);
        CHECK(v.total() <= 2 * p.num_states());
        if (v.yes()) {
          const auto alpha = std::get<Assignment>(v.witness);
          CHECK(alpha.coords == I);
          for (StateIndex t = 0; t < p.num_states(); ++t) {
            const State x = p.decode(t);
            bool in = true;
            for (std::size_t k = 0; k < I.size(); ++k) in &= x[I[k]] == alpha.values[k];
            if (in) CHECK(opt(p, t) == opt(p, p.encode(x)));
          }
        }
      }
    }
  }

  TEST_CASE("collapse and lattice minimum agree and respect k") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 200; ++trial) {
      const auto p = oracle::random_problem(rng, 1 + trial % 4, 2 + trial % 2, 2);
      const std::uint64_t best = oracle::minimum_mask(p);
      const std::size_t size = __builtin_popcountll(best);
      for (std::size_t k = 0; k <= p.num_coords(); ++k) {
        StepCounter c;
        const Verdict lat = find_minimum_sufficient(p, k, MinimumMode::Lattice, c);
        const Verdict col = find_minimum_sufficient(p, k, MinimumMode::Collapse);
        CHECK(lat.yes() == (size <= k));
        CHECK(col.yes() == (size <= k));
        CHECK(oracle::mask_of(std::get<CoordSet>(lat.witness)) == best);
        CHECK(oracle::mask_of(std::get<CoordSet>(col.witness)) == best);
        CHECK(c.checks() <= pow2(p.num_coords()));
      }
    }
  }

  TEST_CASE("lattice order is by size then lexicographic") {
    const auto order = lattice_order(3);
    REQUIRE(order.size() == 8);
    CHECK(order[0].empty());
    CHECK(order[1] == CoordSet{0});
    CHECK(order[4] == CoordSet{0, 1});
    CHECK(order[6] == CoordSet{1, 2});
    CHECK(order[7] == CoordSet{0, 1, 2});
    Budgets tight;
    tight.lattice_coords = 2;
    CHECK_THROWS_AS(lattice_order(3, tight), CapacityError);
  }

  TEST_CASE("step reports stay within declared bounds") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
      const auto p = oracle::random_problem(rng, 1 + trial % 4, 2 + trial % 3, 2);
      for (auto q : {StaticQuery::SufficiencyFiber, StaticQuery::SufficiencyPairwise,
                     StaticQuery::Anchor, StaticQuery::MinimumLattice}) {
        const StepsRow row = steps_report(p, q, CoordSet{0});
        CHECK(row.measured <= row.bound);
        CHECK(row.margin == static_cast<std::int64_t>(row.bound - row.measured));
      }
      const std::uint64_t S = p.num_states(), A = p.num_actions();
      CHECK(steps_report(p, StaticQuery::SufficiencyPairwise, {}).bound == S * S * A * A);
      CHECK(steps_report(p, StaticQuery::Anchor, {}).bound == 2 * S);
      CHECK(steps_report(p, StaticQuery::MinimumLattice, {}).bound == pow2(p.num_coords()));
    }
  }
}
