#pragma once

#include <map>
#include <span>
#include <vector>

#include "relevance/budget.hpp"
#include "relevance/core.hpp"
#include "relevance/static.hpp"
#include "relevance/steps.hpp"

namespace relevance {

// Decision problem plus a distribution over its states.
class StochasticProblem {
 public:
  // Throws FormatError unless dist has |S| nonnegative entries summing to 1.
  StochasticProblem(DecisionProblem base, std::vector<Rational> dist);
  static StochasticProblem uniform(DecisionProblem base);

  const DecisionProblem& base() const noexcept { return base_; }
  const std::vector<Rational>& dist() const noexcept { return dist_; }
  const Rational& prob(StateIndex s) const { return dist_.at(s); }
  bool full_support() const;
  std::vector<StateIndex> support() const;

  friend bool operator==(const StochasticProblem&, const StochasticProblem&) = default;

 private:
  DecisionProblem base_;
  std::vector<Rational> dist_;
};

struct FiberEntry {
  std::size_t label = 0;
  Rational mass;
  std::vector<Rational> expected;  // E[U(a, S) | fiber], one per action
  OptSet opt;
};

// Conditional optimizer over the fibers of a state labelling. Only fibers of
// positive mass are stored, in ascending label order.
struct FiberOptimizer {
  std::vector<std::size_t> state_label;  // label of every state
  std::vector<FiberEntry> fibers;
  std::map<std::size_t, std::size_t> index;  // label -> position in fibers

  const FiberEntry* find(std::size_t label) const;
};

// Steps: one accumulation per state, one argmax per positive-mass fiber.
FiberOptimizer fiber_optimizer(const StochasticProblem& sp, std::span<const std::size_t> labels,
                               StepCounter& counter);
// Labels are projection keys, so a fiber's label decodes to its assignment.
FiberOptimizer fiber_optimizer(const StochasticProblem& sp, const CoordSet& I,
                               StepCounter& counter);
FiberOptimizer fiber_optimizer(const StochasticProblem& sp, const CoordSet& I);

std::vector<std::size_t> projection_labels(const DecisionProblem& problem, const CoordSet& I);

struct StochOptions {
  // Lenient: states in zero-mass fibers are skipped. Strict: such a state
  // is a NO with a note naming the reason.
  bool strict = false;
};

// Total steps <= 4|S| for preservation, decisiveness and anchor-preservation;
// <= 2|S| + |fibers| for the anchor query.
Verdict check_preservation(const StochasticProblem& sp, std::span<const std::size_t> labels,
                           StepCounter& counter, StochOptions options = {});
Verdict check_preservation(const StochasticProblem& sp, const CoordSet& I, StepCounter& counter,
                           StochOptions options = {});
Verdict check_preservation(const StochasticProblem& sp, const CoordSet& I,
                           StochOptions options = {});

// NO carries the Assignment of the first positive-mass fiber whose
// conditional OptSet is not a singleton.
Verdict check_decisiveness(const StochasticProblem& sp, const CoordSet& I, StepCounter& counter);
Verdict check_decisiveness(const StochasticProblem& sp, const CoordSet& I);

// YES carries AnchorAction for the first positive-mass fiber with a unique
// conditional optimum.
Verdict check_stoch_anchor(const StochasticProblem& sp, const CoordSet& I, StepCounter& counter);
Verdict check_stoch_anchor(const StochasticProblem& sp, const CoordSet& I);

// YES iff some positive-mass fiber has Opt(s) equal to the fiber optimizer
// at every one of its states; the witness is that fiber's Assignment.
Verdict check_stoch_anchor_preservation(const StochasticProblem& sp, const CoordSet& I,
                                        StepCounter& counter);
Verdict check_stoch_anchor_preservation(const StochasticProblem& sp, const CoordSet& I);

enum class StochFamily { Preservation, Decisiveness };

// Subset-lattice scan by size then lexicographically; at most 2^n checks.
// The witness is the smallest passing set, if any exists.
Verdict find_stoch_minimum(const StochasticProblem& sp, std::size_t k, StochFamily family,
                           StepCounter& counter, StochOptions options = {},
                           const Budgets& budgets = default_budgets());
Verdict find_stoch_minimum(const StochasticProblem& sp, std::size_t k, StochFamily family,
                           StochOptions options = {});

}  // namespace relevance
