#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "relevance/errors.hpp"
#include "relevance/stochastic.hpp"

using namespace relevance;

namespace {

StochasticProblem worked_example() {
  const DecisionProblem p({"a", "b"}, {2}, {Rational(2), Rational(0), Rational(1), Rational(3)});
  return StochasticProblem::uniform(p);
}

StochasticProblem uniform_xor() {
  return StochasticProblem::uniform(
      DecisionProblem::tabulate({"0", "1"}, {2, 2}, [](ActionIndex a, const State& s) {
        return Rational((s[0] ^ s[1]) == a ? 1 : 0);
      }));
}

std::uint64_t pow2(std::size_t n) { return std::uint64_t{1} << n; }

std::vector<std::size_t> fiber_set(const FiberOptimizer& fo, const DecisionProblem& p, StateIndex s) {
  const FiberEntry* f = fo.find(fo.state_label[s]);
  if (!f) return {};
  (void)p;
  return f->opt.actions();
}

}  // namespace

TEST_SUITE("stochastic") {
  TEST_CASE("distributions are validated") {
    const DecisionProblem p({"a"}, {2}, {Rational(0), Rational(0)});
    CHECK_THROWS_AS(StochasticProblem(p, {Rational(1, 2)}), FormatError);
    CHECK_THROWS_AS(StochasticProblem(p, {Rational(1, 2), Rational(1, 3)}), FormatError);
    CHECK_THROWS_AS(StochasticProblem(p, {Rational(3, 2), Rational(-1, 2)}), FormatError);
    CHECK(StochasticProblem(p, {Rational(1), Rational(0)}).support() == std::vector<StateIndex>{0});
  }

  TEST_CASE("worked two-state example") {
    const auto sp = worked_example();
    const FiberOptimizer fo = fiber_optimizer(sp, CoordSet{});
    REQUIRE(fo.fibers.size() == 1);
    CHECK(fo.fibers[0].expected[0] == 1);
    CHECK(fo.fibers[0].expected[1] == 2);
    CHECK(fo.fibers[0].opt.actions() == std::vector<ActionIndex>{1});
    const Verdict pres = check_preservation(sp, CoordSet{});
    CHECK_FALSE(pres.yes());
    CHECK(std::get<ViolatingState>(pres.witness).state == 0);
    CHECK(check_decisiveness(sp, {}).yes());
    CHECK_FALSE(check_stoch_anchor_preservation(sp, {}).yes());
  }

  TEST_CASE("uniform XOR ties at one half on each fiber") {
    const auto sp = uniform_xor();
    const FiberOptimizer fo = fiber_optimizer(sp, CoordSet{0});
    REQUIRE(fo.fibers.size() == 2);
    for (const auto& f : fo.fibers) {
      CHECK(f.expected[0] == Rational(1, 2));
      CHECK(f.expected[1] == Rational(1, 2));
      CHECK(f.opt.size() == 2);
    }
    // Literal reading: the fiber OptSet {0,1} differs from each singleton Opt.
    CHECK_FALSE(check_preservation(sp, CoordSet{0}).yes());
    CHECK_FALSE(check_decisiveness(sp, CoordSet{0}).yes());
    // Containment reading: every pointwise optimum lies in its fiber's OptSet.
    for (StateIndex s = 0; s < 4; ++s)
      for (auto a : oracle::opt_of(sp.base(), s)) CHECK(fo.find(fo.state_label[s])->opt.contains(a));
  }

  TEST_CASE("point mass conditions onto a single state") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 40; ++trial) {
      const auto p = oracle::random_problem(rng, 2, 3, 2);
      const StateIndex star = trial % p.num_states();
      std::vector<Rational> d(p.num_states(), 0);
      d[star] = 1;
      const StochasticProblem sp(p, d);
      const FiberOptimizer fo = fiber_optimizer(sp, CoordSet{});
      REQUIRE(fo.fibers.size() == 1);
      CHECK(fo.fibers[0].opt == opt(p, star));
      bool agrees = true;
      for (StateIndex s = 0; s < p.num_states(); ++s) agrees &= opt(p, s) == opt(p, star);
      CHECK(check_stoch_anchor_preservation(sp, {}).yes() == agrees);
    }
  }

  TEST_CASE("deciders equal the conditional-expectation oracle") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 300; ++trial) {
      const auto p = oracle::random_problem(rng, 1 + trial % 3, 2 + trial % 2, 2);
      const auto dist = oracle::random_distribution(rng, p.num_states(), trial % 2 == 0);
      const StochasticProblem sp(p, dist);
      for (std::uint64_t m = 0; m < pow2(p.num_coords()); ++m) {
        const CoordSet I = CoordSet::from_mask(m);
        StepCounter c1, c2, c3;
        const Verdict pres = check_preservation(sp, I, c1);
        const Verdict dec = check_decisiveness(sp, I, c2);
        const Verdict anc = check_stoch_anchor(sp, I, c3);
        CHECK(pres.yes() == oracle::preserving(p, dist, m));
        CHECK(dec.yes() == oracle::decisive(p, dist, m));
        bool any_single = false;
        for (StateIndex s = 0; s < p.num_states(); ++s)
          any_single |= oracle::fiber_opt(p, dist, m, s).size() == 1;
        CHECK(anc.yes() == any_single);
        if (dec.yes()) CHECK(anc.yes());
        CHECK(c1.total() <= 4 * p.num_states());
        CHECK(c2.total() <= 4 * p.num_states());
        CHECK(c3.total() <= 4 * p.num_states());
        const FiberOptimizer fo = fiber_optimizer(sp, I);
        for (StateIndex s = 0; s < p.num_states(); ++s)
          CHECK(fiber_set(fo, p, s) == oracle::fiber_opt(p, dist, m, s));
        if (!pres.yes()) {
          const StateIndex s = std::get<ViolatingState>(pres.witness).state;
          CHECK(oracle::fiber_opt(p, dist, m, s) != oracle::opt_of(p, s));
        }
      }
    }
  }

  TEST_CASE("full-support bridge: preservation iff static sufficiency") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 300; ++trial) {
      const auto p = oracle::random_problem(rng, 1 + trial % 3, 2 + trial % 2, 2);
      const StochasticProblem sp(p, oracle::random_distribution(rng, p.num_states(), true));
      for (std::uint64_t m = 0; m < pow2(p.num_coords()); ++m) {
        const CoordSet I = CoordSet::from_mask(m);
        const bool pres = check_preservation(sp, I).yes();
        CHECK(pres == oracle::sufficient(p, m));
        if (pres) {
          // fiber partition refines the Opt quotient
          const Quotient q = quotient(p);
          for (StateIndex s = 0; s < p.num_states(); ++s)
            for (StateIndex t = 0; t < p.num_states(); ++t)
              if (oracle::agree(p, s, t, m)) CHECK(q.class_of[s] == q.class_of[t]);
        }
      }
      for (std::size_t k = 0; k <= p.num_coords(); ++k)
        CHECK(find_stoch_minimum(sp, k, StochFamily::Preservation).yes() ==
              find_minimum_sufficient(p, k).yes());
      CHECK(find_stoch_minimum(sp, p.num_coords(), StochFamily::Preservation).yes());
    }
  }

  TEST_CASE("general distributions: strict preservation implies relevance containment") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 300; ++trial) {
      const auto p = oracle::random_problem(rng, 1 + trial % 3, 2, 2);
      const StochasticProblem sp(p, oracle::random_distribution(rng, p.num_states(), false));
      const std::uint64_t rel = oracle::relevant_mask(p);
      for (std::uint64_t m = 0; m < pow2(p.num_coords()); ++m) {
        const CoordSet I = CoordSet::from_mask(m);
        if (check_preservation(sp, I, StochOptions{true}).yes()) {
          CHECK(oracle::sufficient(p, m));
          CHECK((rel & ~m) == 0);
        }
        // static sufficiency plus a positive-mass state in every fiber
        bool every_fiber_charged = true;
        for (StateIndex s = 0; s < p.num_states(); ++s) {
          Rational mass = 0;
          for (StateIndex t = 0; t < p.num_states(); ++t)
            if (oracle::agree(p, s, t, m)) mass += sp.prob(t);
          every_fiber_charged &= mass > 0;
        }
        if (oracle::sufficient(p, m) && every_fiber_charged)
          CHECK(check_preservation(sp, I, StochOptions{true}).yes());
      }
    }
  }

  TEST_CASE("singleton static optima transfer to every distribution") {
    std::mt19937_64 rng(47);
    int seen = 0;
    for (int trial = 0; trial < 400; ++trial) {
      const auto p = oracle::random_problem(rng, 2, 2, 3);
      for (std::uint64_t m = 0; m < 4; ++m) {
        bool singleton = oracle::sufficient(p, m);
        for (StateIndex s = 0; s < p.num_states(); ++s) singleton &= oracle::opt_of(p, s).size() == 1;
        if (!singleton) continue;
        ++seen;
        const StochasticProblem sp(p, oracle::random_distribution(rng, p.num_states(), false));
        CHECK(check_preservation(sp, CoordSet::from_mask(m)).yes());
        CHECK(check_decisiveness(sp, CoordSet::from_mask(m)).yes());
      }
    }
    CHECK(seen > 0);
  }

  TEST_CASE("static sufficiency without stochastic preservation needs a zero-mass fiber") {
    const DecisionProblem p({"a", "b"}, {3},
                            {Rational(1), Rational(0), Rational(1), Rational(0), Rational(1), Rational(1)});
    const StochasticProblem sp(p, {Rational(1, 2), Rational(1, 2), Rational(0)});
    CHECK(check_sufficiency(p, {0}).yes());
    const Verdict strict = check_preservation(sp, CoordSet{0}, StochOptions{true});
    CHECK_FALSE(strict.yes());
    CHECK(std::get<ViolatingState>(strict.witness).state == 2);
    CHECK_FALSE(strict.note.empty());
    const Verdict lenient = check_preservation(sp, CoordSet{0});
    CHECK(lenient.yes());
    CHECK_FALSE(lenient.note.empty());
  }

  TEST_CASE("all-ties instance has no anchor") {
    const auto sp = StochasticProblem::uniform(DecisionProblem({"a", "b"}, {2}, std::vector<Rational>(4, 0)));
    CHECK_FALSE(check_stoch_anchor(sp, {}).yes());
    CHECK_FALSE(check_stoch_anchor(sp, {0}).yes());
  }

  TEST_CASE("stochastic anchor preservation matches enumeration") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 200; ++trial) {
      const auto p = oracle::random_problem(rng, 2, 2, 1);
      const auto dist = oracle::random_distribution(rng, p.num_states(), trial % 3 != 0);
      const StochasticProblem sp(p, dist);
      for (std::uint64_t m = 0; m < 4; ++m) {
        bool expect = false;
        for (StateIndex s0 = 0; s0 < p.num_states(); ++s0) {
          const auto f = oracle::fiber_opt(p, dist, m, s0);
          if (f.empty()) continue;
          bool all = true;
          for (StateIndex s = 0; s < p.num_states(); ++s)
            if (oracle::agree(p, s0, s, m)) all &= f == oracle::opt_of(p, s);
          expect |= all;
        }
        CHECK(check_stoch_anchor_preservation(sp, CoordSet::from_mask(m)).yes() == expect);
      }
    }
  }

  TEST_CASE("lattice minimum counts at most 2^n checks") {
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 60; ++trial) {
      const auto p = oracle::random_problem(rng, 1 + trial % 4, 2, 2);
      const StochasticProblem sp = StochasticProblem::uniform(p);
      for (auto family : {StochFamily::Preservation, StochFamily::Decisiveness}) {
        StepCounter c;
        const Verdict v = find_stoch_minimum(sp, p.num_coords(), family, c);
        CHECK(c.checks() <= pow2(p.num_coords()));
        if (v.yes()) {
          const CoordSet I = std::get<CoordSet>(v.witness);
          const auto m = oracle::mask_of(I);
          CHECK((family == StochFamily::Preservation ? oracle::preserving(p, sp.dist(), m)
                                                     : oracle::decisive(p, sp.dist(), m)));
        }
      }
    }
  }
}
