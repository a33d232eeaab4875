#include "relevance/sequential.hpp"

#include <algorithm>

#include "relevance/errors.hpp"

namespace relevance {

SequentialProblem::SequentialProblem(DecisionProblem base, std::vector<TransitionRow> transitions,
                                     std::size_t horizon, SeqMode mode,
                                     std::optional<std::vector<std::size_t>> observations)
    : base_(std::move(base)),
      transitions_(std::move(transitions)),
      horizon_(horizon),
      mode_(mode),
      observations_(std::move(observations)) {
  const std::size_t S = base_.num_states();
  if (observations_ && observations_->size() != S)
    throw FormatError("observation map has " + std::to_string(observations_->size()) +
                      " entries, expected " + std::to_string(S));
  if (transitions_.empty() && mode_ == SeqMode::Immediate) return;
  if (transitions_.size() != base_.num_actions() * S)
    throw FormatError("transition table has " + std::to_string(transitions_.size()) +
                      " rows, expected " + std::to_string(base_.num_actions() * S));
  for (std::size_t r = 0; r < transitions_.size(); ++r) {
    const std::string where =
        "transition row (" + base_.actions()[r / S] + ", " + std::to_string(r % S) + ")";
    Rational total = 0;
    for (const auto& [t, p] : transitions_[r]) {
      if (t >= S) throw FormatError(where + " targets missing state " + std::to_string(t));
      if (sgn(p) < 0) throw FormatError(where + " has a negative probability");
      total += p;
    }
    if (total != 1) throw FormatError(where + " sums to " + format_rational(total));
  }
}

BackupTrace backup(const SequentialProblem& sq, StepCounter& counter) {
  const DecisionProblem& P = sq.base();
  const std::size_t S = P.num_states(), A = P.num_actions();
  if (sq.horizon() > 0 && sq.transitions().empty())
    throw FormatError("backup mode needs a transition table");
  BackupTrace trace;
  trace.q = P.utilities();
  auto values_of = [&](const std::vector<Rational>& q) {
    std::vector<Rational> v(S);
    for (StateIndex s = 0; s < S; ++s) {
      v[s] = q[s];
      for (ActionIndex a = 1; a < A; ++a)
        if (q[a * S + s] > v[s]) v[s] = q[a * S + s];
    }
    return v;
  };
  trace.values.push_back(values_of(trace.q));
  for (std::size_t t = 1; t <= sq.horizon(); ++t) {
    const auto& prev = trace.values.back();
    std::vector<Rational> q(A * S);
    for (ActionIndex a = 0; a < A; ++a)
      for (StateIndex s = 0; s < S; ++s) {
        const auto& row = sq.row(a, s);
        counter.setup(row.size());
        Rational sum = 0;
        for (const auto& [next, p] : row) sum += p * prev[next];
        q[a * S + s] = std::move(sum);
      }
    trace.q = std::move(q);
    trace.values.push_back(values_of(trace.q));
  }
  return trace;
}

std::vector<OptSet> induced_optimizer(const SequentialProblem& sq, StepCounter& counter) {
  const DecisionProblem& P = sq.base();
  if (sq.mode() == SeqMode::Immediate) {
    counter.setup(P.num_states());
    return opt_table(P);
  }
  const BackupTrace trace = backup(sq, counter);
  const std::size_t S = P.num_states();
  std::vector<OptSet> table;
  table.reserve(S);
  std::vector<Rational> scores(P.num_actions());
  for (StateIndex s = 0; s < S; ++s) {
    counter.setup();
    for (ActionIndex a = 0; a < scores.size(); ++a) scores[a] = trace.q[a * S + s];
    table.push_back(argmax(scores));
  }
  return table;
}

std::vector<OptSet> induced_optimizer(const SequentialProblem& sq) {
  StepCounter counter;
  return induced_optimizer(sq, counter);
}

std::uint64_t setup_cost(const SequentialProblem& sq) {
  std::uint64_t S = sq.base().num_states();
  if (sq.mode() == SeqMode::Immediate) return S;
  std::uint64_t nnz = 0;
  for (const auto& row : sq.transitions()) nnz += row.size();
  return sq.horizon() * nnz + S;
}

Verdict table_sufficiency(const DecisionProblem& shape, std::span<const OptSet> table,
                          const CoordSet& I, SufficiencyStrategy strategy, StepCounter& counter) {
  I.validate(shape.num_coords());
  const std::size_t S = shape.num_states();
  if (strategy == SufficiencyStrategy::Pairwise) {
    std::vector<std::size_t> keys(S);
    for (StateIndex s = 0; s < S; ++s) keys[s] = projection_key(shape, s, I);
    for (StateIndex s = 0; s < S; ++s)
      for (StateIndex t = s + 1; t < S; ++t) {
        counter.step();
        if (keys[s] == keys[t] && table[s] != table[t])
          return no_verdict(StatePair{s, t}).record(counter);
      }
    return yes_verdict().record(counter);
  }
  std::vector<std::optional<StateIndex>> first(fiber_count(shape, I));
  for (StateIndex s = 0; s < S; ++s) {
    auto& slot = first[projection_key(shape, s, I)];
    if (!slot) {
      slot = s;
      continue;
    }
    counter.step();
    if (table[*slot] != table[s]) return no_verdict(StatePair{*slot, s}).record(counter);
  }
  return yes_verdict().record(counter);
}

Verdict table_anchor(const DecisionProblem& shape, std::span<const OptSet> table,
                     const CoordSet& I, StepCounter& counter) {
  I.validate(shape.num_coords());
  const std::size_t fibers = fiber_count(shape, I);
  std::vector<std::optional<StateIndex>> first(fibers);
  std::vector<char> broken(fibers, 0);
  for (StateIndex s = 0; s < shape.num_states(); ++s) {
    const std::size_t key = projection_key(shape, s, I);
    if (broken[key]) continue;
    if (!first[key]) {
      first[key] = s;
      continue;
    }
    counter.step();
    if (table[*first[key]] != table[s]) broken[key] = 1;
  }
  for (std::size_t key = 0; key < fibers; ++key)
    if (first[key] && !broken[key])
      return yes_verdict(assignment_from_key(shape, I, key)).record(counter);
  return no_verdict().record(counter);
}

CoordSet table_relevant(const DecisionProblem& shape, std::span<const OptSet> table,
                        StepCounter& counter) {
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < shape.num_coords(); ++i) {
    bool relevant = false;
    for (StateIndex s = 0; s < shape.num_states() && !relevant; ++s)
      for (std::size_t v = shape.digit(s, i) + 1; v < shape.domains()[i] && !relevant; ++v) {
        counter.step();
        relevant = table[s] != table[shape.with_digit(s, i, v)];
      }
    if (relevant) members.push_back(i);
  }
  return CoordSet(std::move(members));
}

Verdict check_seq_sufficiency(const SequentialProblem& sq, const CoordSet& I,
                              SufficiencyStrategy strategy, StepCounter& counter) {
  const auto table = induced_optimizer(sq, counter);
  return table_sufficiency(sq.base(), table, I, strategy, counter);
}

Verdict check_seq_sufficiency(const SequentialProblem& sq, const CoordSet& I,
                              SufficiencyStrategy strategy) {
  StepCounter counter;
  return check_seq_sufficiency(sq, I, strategy, counter);
}

Verdict check_seq_anchor(const SequentialProblem& sq, const CoordSet& I, StepCounter& counter) {
  const auto table = induced_optimizer(sq, counter);
  return table_anchor(sq.base(), table, I, counter);
}

Verdict check_seq_anchor(const SequentialProblem& sq, const CoordSet& I) {
  StepCounter counter;
  return check_seq_anchor(sq, I, counter);
}

Verdict find_seq_minimum(const SequentialProblem& sq, std::size_t k, MinimumMode mode,
                         StepCounter& counter, const Budgets& budgets) {
  const DecisionProblem& P = sq.base();
  if (mode == MinimumMode::Lattice) {
    const auto order = lattice_order(P.num_coords(), budgets);
    const auto table = induced_optimizer(sq, counter);
    for (const CoordSet& I : order) {
      counter.check();
      if (table_sufficiency(P, table, I, SufficiencyStrategy::Fiber, counter).yes()) {
        Verdict v = I.size() <= k ? yes_verdict(I) : no_verdict(I);
        return v.record(counter);
      }
    }
    throw std::logic_error("full coordinate set was not sequentially sufficient");
  }
  const auto table = induced_optimizer(sq, counter);
  CoordSet result = table_relevant(P, table, counter);
  Verdict v = result.size() <= k ? yes_verdict(result) : no_verdict(result);
  return v.record(counter);
}

Verdict find_seq_minimum(const SequentialProblem& sq, std::size_t k, MinimumMode mode) {
  StepCounter counter;
  return find_seq_minimum(sq, k, mode, counter);
}

}  // namespace relevance
