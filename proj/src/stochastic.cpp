#include "relevance/stochastic.hpp"

#include "relevance/errors.hpp"

namespace relevance {

StochasticProblem::StochasticProblem(DecisionProblem base, std::vector<Rational> dist)
    : base_(std::move(base)), dist_(std::move(dist)) {
  if (dist_.size() != base_.num_states())
    throw FormatError("distribution has " + std::to_string(dist_.size()) + " entries, expected " +
                      std::to_string(base_.num_states()));
  Rational total = 0;
  for (StateIndex s = 0; s < dist_.size(); ++s) {
    if (sgn(dist_[s]) < 0)
      throw FormatError("negative probability at state " + std::to_string(s));
    total += dist_[s];
  }
  if (total != 1) throw FormatError("distribution sums to " + format_rational(total) + ", not 1");
}

StochasticProblem StochasticProblem::uniform(DecisionProblem base) {
  const Rational p(1, base.num_states());
  std::vector<Rational> dist(base.num_states(), p);
  return StochasticProblem(std::move(base), std::move(dist));
}

bool StochasticProblem::full_support() const {
  for (const auto& p : dist_)
    if (sgn(p) == 0) return false;
  return true;
}

std::vector<StateIndex> StochasticProblem::support() const {
  std::vector<StateIndex> out;
  for (StateIndex s = 0; s < dist_.size(); ++s)
    if (sgn(dist_[s]) > 0) out.push_back(s);
  return out;
}

const FiberEntry* FiberOptimizer::find(std::size_t label) const {
  auto it = index.find(label);
  return it == index.end() ? nullptr : &fibers[it->second];
}

std::vector<std::size_t> projection_labels(const DecisionProblem& problem, const CoordSet& I) {
  I.validate(problem.num_coords());
  std::vector<std::size_t> labels(problem.num_states());
  for (StateIndex s = 0; s < labels.size(); ++s) labels[s] = projection_key(problem, s, I);
  return labels;
}

FiberOptimizer fiber_optimizer(const StochasticProblem& sp, std::span<const std::size_t> labels,
                               StepCounter& counter) {
  const DecisionProblem& P = sp.base();
  if (labels.size() != P.num_states())
    throw DimensionError("labelling has " + std::to_string(labels.size()) + " entries, expected " +
                         std::to_string(P.num_states()));
  FiberOptimizer out;
  out.state_label.assign(labels.begin(), labels.end());
  std::map<std::size_t, FiberEntry> acc;
  for (StateIndex s = 0; s < labels.size(); ++s) {
    counter.step();
    const Rational& p = sp.prob(s);
    if (sgn(p) == 0) continue;
    FiberEntry& e = acc[labels[s]];
    if (e.expected.empty()) {
      e.label = labels[s];
      e.expected.assign(P.num_actions(), Rational(0));
    }
    e.mass += p;
    for (ActionIndex a = 0; a < P.num_actions(); ++a) e.expected[a] += p * P.utility(a, s);
  }
  for (auto& [label, e] : acc) {
    counter.step();
    for (auto& x : e.expected) x /= e.mass;
    e.opt = argmax(e.expected);
    out.index.emplace(label, out.fibers.size());
    out.fibers.push_back(std::move(e));
  }
  return out;
}

FiberOptimizer fiber_optimizer(const StochasticProblem& sp, const CoordSet& I,
                               StepCounter& counter) {
  return fiber_optimizer(sp, projection_labels(sp.base(), I), counter);
}

FiberOptimizer fiber_optimizer(const StochasticProblem& sp, const CoordSet& I) {
  StepCounter counter;
  return fiber_optimizer(sp, I, counter);
}

Verdict check_preservation(const StochasticProblem& sp, std::span<const std::size_t> labels,
                           StepCounter& counter, StochOptions options) {
  const FiberOptimizer fo = fiber_optimizer(sp, labels, counter);
  std::size_t skipped = 0;
  for (StateIndex s = 0; s < labels.size(); ++s) {
    const FiberEntry* e = fo.find(labels[s]);
    if (e == nullptr) {
      if (options.strict) {
        Verdict v = no_verdict(ViolatingState{s});
        v.note = "state " + std::to_string(s) + " lies in a zero-mass fiber";
        return v.record(counter);
      }
      ++skipped;
      continue;
    }
    counter.eval();
    const OptSet o = opt(sp.base(), s);
    counter.step();
    if (o != e->opt) return no_verdict(ViolatingState{s}).record(counter);
  }
  Verdict v = yes_verdict();
  if (skipped) v.note = std::to_string(skipped) + " states in zero-mass fibers skipped";
  return v.record(counter);
}

Verdict check_preservation(const StochasticProblem& sp, const CoordSet& I, StepCounter& counter,
                           StochOptions options) {
  return check_preservation(sp, projection_labels(sp.base(), I), counter, options);
}

Verdict check_preservation(const StochasticProblem& sp, const CoordSet& I, StochOptions options) {
  StepCounter counter;
  return check_preservation(sp, I, counter, options);
}

Verdict check_decisiveness(const StochasticProblem& sp, const CoordSet& I, StepCounter& counter) {
  const FiberOptimizer fo = fiber_optimizer(sp, I, counter);
  for (const auto& e : fo.fibers) {
    counter.step();
    if (!e.opt.singleton())
      return no_verdict(assignment_from_key(sp.base(), I, e.label)).record(counter);
  }
  return yes_verdict().record(counter);
}

Verdict check_decisiveness(const StochasticProblem& sp, const CoordSet& I) {
  StepCounter counter;
  return check_decisiveness(sp, I, counter);
}

Verdict check_stoch_anchor(const StochasticProblem& sp, const CoordSet& I, StepCounter& counter) {
  const FiberOptimizer fo = fiber_optimizer(sp, I, counter);
  for (const auto& e : fo.fibers) {
    counter.step();
    if (e.opt.singleton())
      return yes_verdict(AnchorAction{assignment_from_key(sp.base(), I, e.label),
                                      *e.opt.begin()})
          .record(counter);
  }
  return no_verdict().record(counter);
}

Verdict check_stoch_anchor(const StochasticProblem& sp, const CoordSet& I) {
  StepCounter counter;
  return check_stoch_anchor(sp, I, counter);
}

Verdict check_stoch_anchor_preservation(const StochasticProblem& sp, const CoordSet& I,
                                        StepCounter& counter) {
  const FiberOptimizer fo = fiber_optimizer(sp, I, counter);
  std::vector<char> broken(fo.fibers.size(), 0);
  for (StateIndex s = 0; s < fo.state_label.size(); ++s) {
    auto it = fo.index.find(fo.state_label[s]);
    if (it == fo.index.end() || broken[it->second]) continue;
    counter.eval();
    const OptSet o = opt(sp.base(), s);
    counter.step();
    if (o != fo.fibers[it->second].opt) broken[it->second] = 1;
  }
  for (std::size_t k = 0; k < fo.fibers.size(); ++k)
    if (!broken[k])
      return yes_verdict(assignment_from_key(sp.base(), I, fo.fibers[k].label)).record(counter);
  return no_verdict().record(counter);
}

Verdict check_stoch_anchor_preservation(const StochasticProblem& sp, const CoordSet& I) {
  StepCounter counter;
  return check_stoch_anchor_preservation(sp, I, counter);
}

Verdict find_stoch_minimum(const StochasticProblem& sp, std::size_t k, StochFamily family,
                           StepCounter& counter, StochOptions options, const Budgets& budgets) {
  for (const CoordSet& I : lattice_order(sp.base().num_coords(), budgets)) {
    counter.check();
    const bool pass = family == StochFamily::Preservation
                          ? check_preservation(sp, I, counter, options).yes()
                          : check_decisiveness(sp, I, counter).yes();
    if (pass) {
      Verdict v = I.size() <= k ? yes_verdict(I) : no_verdict(I);
      return v.record(counter);
    }
  }
  Verdict v = no_verdict();
  v.note = "no coordinate set passes";
  return v.record(counter);
}

Verdict find_stoch_minimum(const StochasticProblem& sp, std::size_t k, StochFamily family,
                           StochOptions options) {
  StepCounter counter;
  return find_stoch_minimum(sp, k, family, counter, options);
}

}  // namespace relevance
