#include "relevance/static.hpp"

#include <algorithm>
#include <optional>

#include "relevance/errors.hpp"

namespace relevance {

namespace {

Verdict sufficiency_fiber(const DecisionProblem& problem, const CoordSet& I, StepCounter& counter) {
  const std::size_t fibers = fiber_count(problem, I);
  std::vector<std::optional<std::pair<StateIndex, OptSet>>> first(fibers);
  for (StateIndex s = 0; s < problem.num_states(); ++s) {
    counter.eval();
    OptSet o = opt(problem, s);
    auto& slot = first[projection_key(problem, s, I)];
    if (!slot) {
      slot.emplace(s, std::move(o));
      continue;
    }
    counter.step();
    if (slot->second != o) return no_verdict(StatePair{slot->first, s}).record(counter);
  }
  return yes_verdict().record(counter);
}

Verdict sufficiency_pairwise(const DecisionProblem& problem, const CoordSet& I,
                             StepCounter& counter) {
  std::vector<OptSet> table;
  std::vector<std::size_t> keys;
  table.reserve(problem.num_states());
  for (StateIndex s = 0; s < problem.num_states(); ++s) {
    counter.eval();
    table.push_back(opt(problem, s));
    keys.push_back(projection_key(problem, s, I));
  }
  for (StateIndex s = 0; s < table.size(); ++s)
    for (StateIndex t = s + 1; t < table.size(); ++t) {
      counter.step();
      if (keys[s] == keys[t] && table[s] != table[t])
        return no_verdict(StatePair{s, t}).record(counter);
    }
  return yes_verdict().record(counter);
}

}  // namespace

Verdict check_sufficiency(const DecisionProblem& problem, const CoordSet& I,
                          SufficiencyStrategy strategy, StepCounter& counter) {
  I.validate(problem.num_coords());
  return strategy == SufficiencyStrategy::Fiber ? sufficiency_fiber(problem, I, counter)
                                                : sufficiency_pairwise(problem, I, counter);
}

Verdict check_sufficiency(const DecisionProblem& problem, const CoordSet& I,
                          SufficiencyStrategy strategy) {
  StepCounter counter;
  return check_sufficiency(problem, I, strategy, counter);
}

Verdict check_anchor(const DecisionProblem& problem, const CoordSet& I, StepCounter& counter) {
  I.validate(problem.num_coords());
  const std::size_t fibers = fiber_count(problem, I);
  std::vector<std::optional<OptSet>> first(fibers);
  std::vector<char> broken(fibers, 0);
  for (StateIndex s = 0; s < problem.num_states(); ++s) {
    const std::size_t key = projection_key(problem, s, I);
    if (broken[key]) continue;
    counter.eval();
    OptSet o = opt(problem, s);
    if (!first[key]) {
      first[key] = std::move(o);
      continue;
    }
    counter.step();
    if (*first[key] != o) broken[key] = 1;
  }
  for (std::size_t key = 0; key < fibers; ++key)
    if (first[key] && !broken[key])
      return yes_verdict(assignment_from_key(problem, I, key)).record(counter);
  return no_verdict().record(counter);
}

Verdict check_anchor(const DecisionProblem& problem, const CoordSet& I) {
  StepCounter counter;
  return check_anchor(problem, I, counter);
}

std::vector<CoordSet> lattice_order(std::size_t n, const Budgets& budgets) {
  if (n > budgets.lattice_coords || n >= 63)
    throw CapacityError("subset lattice over " + std::to_string(n) +
                        " coordinates exceeds budget of " +
                        std::to_string(budgets.lattice_coords));
  std::vector<std::uint64_t> masks(std::uint64_t{1} << n);
  for (std::uint64_t m = 0; m < masks.size(); ++m) masks[m] = m;
  std::sort(masks.begin(), masks.end(), [](std::uint64_t a, std::uint64_t b) {
    const int pa = __builtin_popcountll(a), pb = __builtin_popcountll(b);
    if (pa != pb) return pa < pb;
    return ((a ^ b) & a & (~(a ^ b) + 1)) != 0;  // lowest differing member lies in a
  });
  std::vector<CoordSet> out;
  out.reserve(masks.size());
  for (auto m : masks) out.push_back(CoordSet::from_mask(m));
  return out;
}

Verdict find_minimum_sufficient(const DecisionProblem& problem, std::size_t k, MinimumMode mode,
                                StepCounter& counter, const Budgets& budgets) {
  const std::size_t n = problem.num_coords();
  if (mode == MinimumMode::Collapse) {
    const std::vector<OptSet> table = opt_table(problem);
    counter.eval(table.size());
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i) {
      bool relevant = false;
      for (StateIndex s = 0; s < table.size() && !relevant; ++s)
        for (std::size_t v = problem.digit(s, i) + 1; v < problem.domains()[i] && !relevant; ++v) {
          counter.step();
          relevant = table[s] != table[problem.with_digit(s, i, v)];
        }
      if (relevant) members.push_back(i);
    }
    CoordSet result(std::move(members));
    Verdict v = result.size() <= k ? yes_verdict(result) : no_verdict(result);
    return v.record(counter);
  }

  for (const CoordSet& I : lattice_order(n, budgets)) {
    counter.check();
    if (check_sufficiency(problem, I, SufficiencyStrategy::Fiber, counter).yes()) {
      Verdict v = I.size() <= k ? yes_verdict(I) : no_verdict(I);
      return v.record(counter);
    }
  }
  throw std::logic_error("full coordinate set was not sufficient");
}

Verdict find_minimum_sufficient(const DecisionProblem& problem, std::size_t k, MinimumMode mode) {
  StepCounter counter;
  return find_minimum_sufficient(problem, k, mode, counter);
}

const char* to_string(StaticQuery q) {
  switch (q) {
    case StaticQuery::SufficiencyFiber: return "sufficiency-fiber";
    case StaticQuery::SufficiencyPairwise: return "sufficiency-pairwise";
    case StaticQuery::Anchor: return "anchor";
    case StaticQuery::MinimumLattice: return "minimum-lattice";
  }
  return "?";
}

StepsRow steps_report(const DecisionProblem& problem, StaticQuery query, const CoordSet& I) {
  StepsRow row;
  row.query = to_string(query);
  row.states = problem.num_states();
  row.actions = problem.num_actions();
  row.coords = problem.num_coords();
  row.unit = "steps";
  const std::uint64_t S = row.states, A = row.actions;
  StepCounter counter;
  Verdict v;
  switch (query) {
    case StaticQuery::SufficiencyFiber:
      v = check_sufficiency(problem, I, SufficiencyStrategy::Fiber, counter);
      row.measured = v.steps;
      row.bound = 2 * S;
      break;
    case StaticQuery::SufficiencyPairwise:
      v = check_sufficiency(problem, I, SufficiencyStrategy::Pairwise, counter);
      row.measured = v.steps;
      row.bound = S * S * A * A;
      break;
    case StaticQuery::Anchor:
      v = check_anchor(problem, I, counter);
      row.measured = v.steps;
      row.bound = 2 * S;
      break;
    case StaticQuery::MinimumLattice:
      v = find_minimum_sufficient(problem, I.size(), MinimumMode::Lattice, counter);
      row.unit = "checks";
      row.measured = v.checks;
      row.bound = std::uint64_t{1} << row.coords;
      break;
  }
  row.answer = v.answer;
  row.margin = static_cast<std::int64_t>(row.bound) - static_cast<std::int64_t>(row.measured);
  return row;
}

}  // namespace relevance
