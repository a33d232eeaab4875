#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "relevance/budget.hpp"
#include "relevance/core.hpp"
#include "relevance/static.hpp"
#include "relevance/steps.hpp"

namespace relevance {

enum class SeqMode { Immediate, Backup };

using TransitionRow = std::vector<std::pair<StateIndex, Rational>>;

class SequentialProblem {
 public:
  // transitions is action-major: transitions[a * |S| + s]. It may be empty in
  // immediate mode. Rows must be nonnegative, reference valid states, and sum
  // to exactly 1 (FormatError otherwise).
  SequentialProblem(DecisionProblem base, std::vector<TransitionRow> transitions,
                    std::size_t horizon, SeqMode mode,
                    std::optional<std::vector<std::size_t>> observations = std::nullopt);

  const DecisionProblem& base() const noexcept { return base_; }
  const std::vector<TransitionRow>& transitions() const noexcept { return transitions_; }
  const TransitionRow& row(ActionIndex a, StateIndex s) const {
    return transitions_.at(a * base_.num_states() + s);
  }
  std::size_t horizon() const noexcept { return horizon_; }
  SeqMode mode() const noexcept { return mode_; }
  const std::optional<std::vector<std::size_t>>& observations() const noexcept {
    return observations_;
  }

  friend bool operator==(const SequentialProblem&, const SequentialProblem&) = default;

 private:
  DecisionProblem base_;
  std::vector<TransitionRow> transitions_;
  std::size_t horizon_;
  SeqMode mode_;
  std::optional<std::vector<std::size_t>> observations_;
};

// Finite-horizon backup: Q_0 = U, Q_t(a,s) = sum_s' T(a,s)(s') V_{t-1}(s'),
// V_t(s) = max_a Q_t(a,s).
struct BackupTrace {
  std::vector<std::vector<Rational>> values;  // values[t][s] = V_t(s), t = 0..H
  std::vector<Rational> q;                    // Q_H, action-major
};

// Charges one setup unit per multiply-add p(s') V_{t-1}(s') with t >= 1.
BackupTrace backup(const SequentialProblem& sq, StepCounter& counter);

// Opt_seq per state. Immediate mode: Opt of the base problem (|S| setup
// units). Backup mode: argmax_a Q_H(a, s) (H * nnz(T) + |S| setup units,
// nnz(T) the total transition row length).
std::vector<OptSet> induced_optimizer(const SequentialProblem& sq, StepCounter& counter);
std::vector<OptSet> induced_optimizer(const SequentialProblem& sq);

// Exact setup charge of induced_optimizer.
std::uint64_t setup_cost(const SequentialProblem& sq);

// Scans over a precomputed Opt_seq table. Pairwise: one step per pair s < t,
// steps <= |S|^2. Fiber: one step per state, steps <= |S|.
Verdict check_seq_sufficiency(const SequentialProblem& sq, const CoordSet& I,
                              SufficiencyStrategy strategy, StepCounter& counter);
Verdict check_seq_sufficiency(const SequentialProblem& sq, const CoordSet& I,
                              SufficiencyStrategy strategy = SufficiencyStrategy::Pairwise);

// One step per state; steps <= |S|. YES carries the anchor's Assignment.
Verdict check_seq_anchor(const SequentialProblem& sq, const CoordSet& I, StepCounter& counter);
Verdict check_seq_anchor(const SequentialProblem& sq, const CoordSet& I);

// Lattice: at most 2^n fiber checks over one Opt_seq table. Collapse: the
// relevant coordinates of Opt_seq.
Verdict find_seq_minimum(const SequentialProblem& sq, std::size_t k, MinimumMode mode,
                         StepCounter& counter, const Budgets& budgets = default_budgets());
Verdict find_seq_minimum(const SequentialProblem& sq, std::size_t k,
                         MinimumMode mode = MinimumMode::Lattice);

// Predicates over an arbitrary per-state OptSet table.
Verdict table_sufficiency(const DecisionProblem& shape, std::span<const OptSet> table,
                          const CoordSet& I, SufficiencyStrategy strategy, StepCounter& counter);
Verdict table_anchor(const DecisionProblem& shape, std::span<const OptSet> table,
                     const CoordSet& I, StepCounter& counter);
CoordSet table_relevant(const DecisionProblem& shape, std::span<const OptSet> table,
                        StepCounter& counter);

}  // namespace relevance
