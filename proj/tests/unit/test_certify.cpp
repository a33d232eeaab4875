#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "relevance/certify.hpp"
#include "relevance/errors.hpp"

using namespace relevance;

namespace {

std::vector<CertQueryKind> static_kinds() {
  return {CertQueryKind::Sufficiency, CertQueryKind::Anchor, CertQueryKind::Minimum};
}

}  // namespace

TEST_SUITE("certify") {
  TEST_CASE("slot instances") {
    for (std::size_t n = 1; n <= 4; ++n) {
      CHECK(slot_count(n) == (std::size_t{1} << (n - 1)));
      const DecisionProblem yes = slot_yes_instance(n);
      CHECK(check_sufficiency(yes, {}).yes());
      for (std::size_t z = 0; z < slot_count(n); ++z) {
        const DecisionProblem no = slot_no_instance(n, z);
        CHECK_FALSE(check_sufficiency(no, {}).yes());
        for (StateIndex s = 0; s < yes.num_states(); ++s)
          CHECK((opt(yes, s) == opt(no, s)) == (s != 1 + 2 * z));
      }
    }
  }

  TEST_CASE("slot oracle logs every query") {
    SlotOracle o(slot_no_instance(3, 2));
    CHECK(o.num_slots() == 4);
    CHECK(o.query(0));
    CHECK_FALSE(o.query(2));
    CHECK(o.log() == std::vector<std::size_t>{0, 2});
    CHECK_THROWS_AS(SlotOracle(DecisionProblem({"a"}, {3}, std::vector<Rational>(3, 0))), DimensionError);
  }

  TEST_CASE("adversary fools every small inspection set") {
    for (std::size_t n = 1; n <= 3; ++n) {
      const std::size_t slots = slot_count(n);
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots); ++mask) {
        std::set<std::size_t> inspected;
        for (std::size_t z = 0; z < slots; ++z)
          if (mask >> z & 1) inspected.insert(z);
        const auto pair = adversary_game(n, inspected);
        if (inspected.size() == slots) {
          CHECK_FALSE(pair.has_value());
          continue;
        }
        REQUIRE(pair.has_value());
        CHECK_FALSE(inspected.count(pair->slot));
        SlotOracle a(pair->yes_instance), b(pair->no_instance);
        for (auto z : inspected) CHECK(a.query(z) == b.query(z));
        CHECK(a.log() == b.log());
        CHECK(check_sufficiency(pair->yes_instance, {}).yes());
        CHECK_FALSE(check_sufficiency(pair->no_instance, {}).yes());
      }
    }
    CHECK_THROWS_AS(adversary_game(0, {}), DimensionError);
    CHECK_THROWS_AS(adversary_game(5, {}), DimensionError);
    CHECK_THROWS_AS(adversary_game(2, {7}), DimensionError);
  }

  TEST_CASE("threshold decider matches the tautology oracle inside the gap") {
    for (std::size_t n = 1; n <= 2; ++n)
      for (std::uint64_t table = 0; table < (std::uint64_t{1} << (1u << n)); ++table) {
        const Formula f = Formula::from_truth_table(n, table);
        for (std::size_t rho = 1; rho <= n; ++rho) CHECK(threshold_decider(rho)(f) == is_tautology_oracle(f));
        CHECK_THROWS_AS(threshold_decider(n + 1)(f), OutOfGapError);
      }
    CHECK_THROWS_AS(threshold_decider(0), OutOfGapError);
  }

  TEST_CASE("a wrong solver is exposed by the threshold decider") {
    const MinimumSolver everything = [](const DecisionProblem& p) { return CoordSet::all(p.num_coords()); };
    const Formula taut = Formula::from_truth_table(2, 15);
    CHECK_FALSE(threshold_decider(1, everything)(taut));
  }

  TEST_CASE("budgeted certifier never overclaims and abstains monotonically") {
    std::mt19937_64 rng(113);
    for (int trial = 0; trial < 60; ++trial) {
      const auto p = oracle::random_problem(rng, 1 + trial % 3, 2, 2);
      const StochasticProblem sp = StochasticProblem::uniform(p);
      std::vector<TransitionRow> rows(2 * p.num_states(), TransitionRow{{0, Rational(1)}});
      const SequentialProblem sq(p, rows, 1, SeqMode::Backup);
      const CertQuery q{CoordSet{0}, 1};
      const std::vector<std::pair<CertQueryKind, CertInstance>> cases{
          {CertQueryKind::Sufficiency, p},         {CertQueryKind::Anchor, p},
          {CertQueryKind::Minimum, p},             {CertQueryKind::StochPreservation, sp},
          {CertQueryKind::StochDecisiveness, sp},  {CertQueryKind::StochMinimum, sp},
          {CertQueryKind::SeqSufficiency, sq},     {CertQueryKind::SeqMinimum, sq}};
      for (const auto& [kind, inst] : cases) {
        const std::uint64_t bound = declared_bound(kind, inst);
        bool answered = false;
        for (std::uint64_t b = 0; b <= bound; ++b) {
          const CertOutcome out = budgeted_certify({kind, b, false}, inst, q);
          if (answered) CHECK_FALSE(out.abstained());
          if (!out.abstained()) {
            answered = true;
            CHECK(verify_verdict(kind, inst, q, out.verdict));
            CHECK(out.verdict.total() <= b);
          }
        }
        CHECK(answered);
        const CertOutcome lazy = budgeted_certify({kind, bound, true}, inst, q);
        CHECK(lazy.abstained());
        CHECK(lazy.reason == "always abstains");
      }
    }
  }

  TEST_CASE("the verifier rejects tampered verdicts") {
    const DecisionProblem p({"a", "b"}, {2, 2},
                            {Rational(1), Rational(0), Rational(1), Rational(0), Rational(0), Rational(1),
                             Rational(0), Rational(1)});
    const CertQuery q{CoordSet{1}, 0};
    CHECK_FALSE(verify_verdict(CertQueryKind::Sufficiency, p, q, yes_verdict()));
    CHECK_FALSE(verify_verdict(CertQueryKind::Sufficiency, p, q, no_verdict(StatePair{0, 2})));
    CHECK(verify_verdict(CertQueryKind::Sufficiency, p, q, no_verdict(StatePair{0, 1})));
    CHECK_FALSE(verify_verdict(CertQueryKind::Minimum, p, {{}, 0}, yes_verdict(CoordSet{})));
    CHECK(verify_verdict(CertQueryKind::Minimum, p, {{}, 1}, yes_verdict(CoordSet{0})));
    CHECK_FALSE(verify_verdict(CertQueryKind::Minimum, p, {{}, 1}, yes_verdict(CoordSet{1})));
  }

  TEST_CASE("kind mismatch is a precondition error") {
    const DecisionProblem p({"a"}, {2}, std::vector<Rational>(2, 0));
    CHECK_THROWS_AS(budgeted_certify({CertQueryKind::StochPreservation, 100, false}, p, {}), PreconditionError);
    for (auto kind : static_kinds()) CHECK_NOTHROW(budgeted_certify({kind, 100, false}, p, {}));
  }

  TEST_CASE("externalized relevance splits the relevant set") {
    const DecisionProblem p = DecisionProblem::tabulate({"a", "b"}, {2, 2, 2}, [](ActionIndex a, const State& s) {
      return Rational((s[0] ^ s[2]) == a ? 1 : 0);
    });
    const auto r = externalized_relevance(p, {0, 1});
    CHECK(r.internal == CoordSet{0});
    CHECK(r.externalized == CoordSet{2});
    CHECK_FALSE(r.interface_sufficient);
    const auto full = externalized_relevance(p, {0, 2});
    CHECK(full.externalized.empty());
    CHECK(full.interface_sufficient);
  }
}
