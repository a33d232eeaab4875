#pragma once

#include <cstdint>
#include <string>

#include "relevance/budget.hpp"
#include "relevance/core.hpp"
#include "relevance/steps.hpp"

namespace relevance {

enum class SufficiencyStrategy { Fiber, Pairwise };

// Fiber strategy: one OptSet computation per state plus one comparison per
// state against its fiber's first member, so steps <= 2|S| (evals = |S|).
// The NO witness is the oracle's: (first state of the fiber, first state in
// it that disagrees).
//
// Pairwise strategy: |S| OptSet computations, then one step per state pair
// s < t, so steps <= |S|^2. The NO witness is the lexicographically first
// agreeing pair with different OptSets.
Verdict check_sufficiency(const DecisionProblem& problem, const CoordSet& I,
                          SufficiencyStrategy strategy, StepCounter& counter);
Verdict check_sufficiency(const DecisionProblem& problem, const CoordSet& I,
                          SufficiencyStrategy strategy = SufficiencyStrategy::Fiber);

// One pass over S: |S| OptSet computations and at most |S| comparisons.
// YES carries an Assignment: the smallest fiber value (mixed-radix order of
// the projection key) whose fiber has constant Opt. A fiber is abandoned at
// its first disagreement, so evals <= |S|.
Verdict check_anchor(const DecisionProblem& problem, const CoordSet& I, StepCounter& counter);
Verdict check_anchor(const DecisionProblem& problem, const CoordSet& I);

// All subsets of {0..n-1} ordered by size, then lexicographically. Throws
// CapacityError when n exceeds the lattice budget.
std::vector<CoordSet> lattice_order(std::size_t n, const Budgets& budgets = default_budgets());

enum class MinimumMode { Collapse, Lattice };

// YES iff the minimum sufficient set has size <= k; the witness is that set.
// Lattice mode scans subsets by size, then lexicographically, running the
// fiber sufficiency check on each; at most 2^n checks. Throws CapacityError
// when n exceeds the lattice budget.
Verdict find_minimum_sufficient(const DecisionProblem& problem, std::size_t k, MinimumMode mode,
                                StepCounter& counter, const Budgets& budgets = default_budgets());
Verdict find_minimum_sufficient(const DecisionProblem& problem, std::size_t k,
                                MinimumMode mode = MinimumMode::Collapse);

enum class StaticQuery { SufficiencyFiber, SufficiencyPairwise, Anchor, MinimumLattice };

const char* to_string(StaticQuery q);

struct StepsRow {
  std::string query;
  std::size_t states = 0;
  std::size_t actions = 0;
  std::size_t coords = 0;
  std::string unit;          // "steps" or "checks"
  std::uint64_t measured = 0;
  std::uint64_t bound = 0;
  std::int64_t margin = 0;   // bound - measured
  Answer answer = Answer::Yes;
};

// Declared bounds: fiber 2|S|, pairwise |S|^2 |A|^2, anchor 2|S|, lattice 2^n
// checks. For MinimumLattice the measured unit is sufficiency checks and I
// is ignored (k = |I| is used as the query size).
StepsRow steps_report(const DecisionProblem& problem, StaticQuery query, const CoordSet& I);

}  // namespace relevance
