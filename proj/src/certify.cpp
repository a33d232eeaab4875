#include "relevance/certify.hpp"

#include <map>
#include <type_traits>

#include "relevance/errors.hpp"
#include "relevance/reductions.hpp"
#include "relevance/static.hpp"

namespace relevance {

// ---------------------------------------------------------------- slots

std::size_t slot_count(std::size_t n) { return n == 0 ? 0 : std::size_t{1} << (n - 1); }

namespace {

DecisionProblem slot_instance(std::size_t n, std::optional<std::size_t> flipped) {
  if (n == 0) throw DimensionError("slot instances need n >= 1");
  return DecisionProblem::tabulate(
      {"keep", "flip"}, std::vector<std::size_t>(n, 2), [&](ActionIndex a, const State& s) {
        std::size_t z = 0;
        for (std::size_t i = n; i-- > 1;) z = 2 * z + s[i];
        const bool flip = flipped && *flipped == z && s[0] == 1;
        return Rational((a == 1) == flip ? 1 : 0);
      });
}

}  // namespace

DecisionProblem slot_yes_instance(std::size_t n) { return slot_instance(n, std::nullopt); }

DecisionProblem slot_no_instance(std::size_t n, std::size_t z) {
  if (z >= slot_count(n)) throw DimensionError("slot " + std::to_string(z) + " out of range");
  return slot_instance(n, z);
}

SlotOracle::SlotOracle(DecisionProblem hidden) : hidden_(std::move(hidden)) {
  const auto& dom = hidden_.domains();
  if (dom.empty()) throw DimensionError("slot oracle needs n >= 1");
  for (auto d : dom)
    if (d != 2) throw DimensionError("slot oracle needs Boolean coordinates");
  slots_ = slot_count(dom.size());
}

bool SlotOracle::query(std::size_t z) {
  if (z >= slots_) throw DimensionError("slot " + std::to_string(z) + " out of range");
  log_.push_back(z);
  return opt(hidden_, 2 * z) == opt(hidden_, 2 * z + 1);
}

std::optional<FoolingPair> adversary_game(std::size_t n, const std::set<std::size_t>& inspected) {
  if (n == 0 || n > 4) throw DimensionError("adversary game runs for 1 <= n <= 4");
  const std::size_t slots = slot_count(n);
  for (auto z : inspected)
    if (z >= slots) throw DimensionError("slot " + std::to_string(z) + " out of range");
  for (std::size_t z = 0; z < slots; ++z)
    if (!inspected.count(z)) return FoolingPair{slot_yes_instance(n), slot_no_instance(n, z), z};
  return std::nullopt;
}

// ---------------------------------------------------------------- threshold

MinimumSolver exact_minimum_solver() {
  return [](const DecisionProblem& p) { return minimum_sufficient_set(p); };
}

ThresholdDecider::ThresholdDecider(std::size_t rho, MinimumSolver solver)
    : rho_(rho), solver_(std::move(solver)) {
  if (rho_ == 0) throw OutOfGapError("threshold must be at least 1");
}

bool ThresholdDecider::operator()(const Formula& f) const {
  const std::size_t n = f.num_vars();
  if (rho_ >= n + 1)
    throw OutOfGapError("threshold " + std::to_string(rho_) + " is outside the gap for n = " +
                        std::to_string(n) + " (need rho < n + 1)");
  const GadgetOutput g = gadget_shifted(f);
  return solver_(std::get<DecisionProblem>(g.instance)).size() <= rho_;
}

ThresholdDecider threshold_decider(std::size_t rho, MinimumSolver solver) {
  return ThresholdDecider(rho, std::move(solver));
}

// ---------------------------------------------------------------- budgeted

const char* to_string(CertQueryKind kind) {
  switch (kind) {
    case CertQueryKind::Sufficiency: return "sufficiency";
    case CertQueryKind::Anchor: return "anchor";
    case CertQueryKind::Minimum: return "minimum";
    case CertQueryKind::StochPreservation: return "stoch-preservation";
    case CertQueryKind::StochDecisiveness: return "stoch-decisiveness";
    case CertQueryKind::StochMinimum: return "stoch-minimum";
    case CertQueryKind::SeqSufficiency: return "seq-sufficiency";
    case CertQueryKind::SeqMinimum: return "seq-minimum";
  }
  return "?";
}

namespace {

template <class T>
const T& instance_as(const CertInstance& instance, CertQueryKind kind) {
  const T* p = std::get_if<T>(&instance);
  if (!p)
    throw PreconditionError(std::string("instance kind does not fit query ") + to_string(kind));
  return *p;
}

const DecisionProblem& base_of(const CertInstance& instance) {
  return std::visit(
      [](const auto& x) -> const DecisionProblem& {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, DecisionProblem>)
          return x;
        else
          return x.base();
      },
      instance);
}

// Fiber grouping by projection tuple, independent of the counted deciders.
std::map<std::vector<std::size_t>, std::vector<StateIndex>> fibers_of(const DecisionProblem& p,
                                                                      const CoordSet& I) {
  std::map<std::vector<std::size_t>, std::vector<StateIndex>> out;
  for (StateIndex s = 0; s < p.num_states(); ++s) out[project(p.decode(s), I)].push_back(s);
  return out;
}

bool table_sufficient(const DecisionProblem& p, const std::vector<OptSet>& table,
                      const CoordSet& I) {
  for (const auto& [key, states] : fibers_of(p, I))
    for (auto s : states)
      if (table[s] != table[states.front()]) return false;
  return true;
}

struct Conditional {
  Rational mass;
  OptSet opt;
};

Conditional conditional(const StochasticProblem& sp, const std::vector<StateIndex>& states) {
  const DecisionProblem& p = sp.base();
  Conditional c;
  c.mass = 0;
  std::vector<Rational> sums(p.num_actions(), Rational(0));
  for (auto s : states) {
    c.mass += sp.prob(s);
    for (ActionIndex a = 0; a < p.num_actions(); ++a) sums[a] += sp.prob(s) * p.utility(a, s);
  }
  if (sgn(c.mass) > 0) c.opt = argmax(sums);
  return c;
}

bool decisive(const StochasticProblem& sp, const CoordSet& I) {
  for (const auto& [key, states] : fibers_of(sp.base(), I)) {
    const Conditional c = conditional(sp, states);
    if (sgn(c.mass) > 0 && !c.opt.singleton()) return false;
  }
  return true;
}

bool preserving(const StochasticProblem& sp, const CoordSet& I) {
  const auto table = opt_table(sp.base());
  for (const auto& [key, states] : fibers_of(sp.base(), I)) {
    const Conditional c = conditional(sp, states);
    if (sgn(c.mass) == 0) continue;
    for (auto s : states)
      if (table[s] != c.opt) return false;
  }
  return true;
}

bool same_fiber(const DecisionProblem& p, StateIndex s, StateIndex t, const CoordSet& I) {
  return project(p.decode(s), I) == project(p.decode(t), I);
}

bool pair_replays(const DecisionProblem& p, const std::vector<OptSet>& table, const Verdict& v,
                  const CoordSet& I) {
  const auto* w = std::get_if<StatePair>(&v.witness);
  if (!w || w->first >= p.num_states() || w->second >= p.num_states()) return false;
  return same_fiber(p, w->first, w->second, I) && table[w->first] != table[w->second];
}

// Smallest passing set under `passes`, by size then lexicographically.
std::optional<CoordSet> first_passing(std::size_t n, const Budgets& budgets,
                                      const std::function<bool(const CoordSet&)>& passes) {
  for (const CoordSet& I : lattice_order(n, budgets))
    if (passes(I)) return I;
  return std::nullopt;
}

bool minimum_replays(const Verdict& v, std::size_t k, const std::optional<CoordSet>& expected) {
  const auto* w = std::get_if<CoordSet>(&v.witness);
  if (!expected) return !v.yes() && !w;
  return w && *w == *expected && v.yes() == (w->size() <= k);
}

}  // namespace

bool verify_verdict(CertQueryKind kind, const CertInstance& instance, const CertQuery& query,
                    const Verdict& v, const Budgets& budgets) {
  const CoordSet& I = query.coords;
  switch (kind) {
    case CertQueryKind::Sufficiency: {
      const auto& p = instance_as<DecisionProblem>(instance, kind);
      const auto table = opt_table(p);
      return v.yes() ? table_sufficient(p, table, I) : pair_replays(p, table, v, I);
    }
    case CertQueryKind::Anchor: {
      const auto& p = instance_as<DecisionProblem>(instance, kind);
      const auto table = opt_table(p);
      const auto fibers = fibers_of(p, I);
      auto constant = [&](const std::vector<StateIndex>& states) {
        for (auto s : states)
          if (table[s] != table[states.front()]) return false;
        return true;
      };
      if (v.yes()) {
        const auto* a = std::get_if<Assignment>(&v.witness);
        if (!a || a->coords != I) return false;
        auto it = fibers.find(a->values);
        return it != fibers.end() && constant(it->second);
      }
      for (const auto& [key, states] : fibers)
        if (constant(states)) return false;
      return true;
    }
    case CertQueryKind::Minimum: {
      const auto& p = instance_as<DecisionProblem>(instance, kind);
      const auto table = opt_table(p);
      return minimum_replays(v, query.k, first_passing(p.num_coords(), budgets, [&](const CoordSet& J) {
                               return table_sufficient(p, table, J);
                             }));
    }
    case CertQueryKind::StochPreservation: {
      const auto& sp = instance_as<StochasticProblem>(instance, kind);
      if (v.yes()) return preserving(sp, I);
      const auto* w = std::get_if<ViolatingState>(&v.witness);
      if (!w || w->state >= sp.base().num_states()) return false;
      const auto key = project(sp.base().decode(w->state), I);
      const Conditional c = conditional(sp, fibers_of(sp.base(), I).at(key));
      return sgn(c.mass) > 0 && c.opt != opt(sp.base(), w->state);
    }
    case CertQueryKind::StochDecisiveness: {
      const auto& sp = instance_as<StochasticProblem>(instance, kind);
      if (v.yes()) return decisive(sp, I);
      const auto* a = std::get_if<Assignment>(&v.witness);
      if (!a || a->coords != I) return false;
      const auto fibers = fibers_of(sp.base(), I);
      auto it = fibers.find(a->values);
      if (it == fibers.end()) return false;
      const Conditional c = conditional(sp, it->second);
      return sgn(c.mass) > 0 && !c.opt.singleton();
    }
    case CertQueryKind::StochMinimum: {
      const auto& sp = instance_as<StochasticProblem>(instance, kind);
      return minimum_replays(v, query.k, first_passing(sp.base().num_coords(), budgets,
                                                       [&](const CoordSet& J) {
                                                         return decisive(sp, J);
                                                       }));
    }
    case CertQueryKind::SeqSufficiency: {
      const auto& sq = instance_as<SequentialProblem>(instance, kind);
      const auto table = induced_optimizer(sq);
      return v.yes() ? table_sufficient(sq.base(), table, I)
                     : pair_replays(sq.base(), table, v, I);
    }
    case CertQueryKind::SeqMinimum: {
      const auto& sq = instance_as<SequentialProblem>(instance, kind);
      const auto table = induced_optimizer(sq);
      return minimum_replays(v, query.k, first_passing(sq.base().num_coords(), budgets,
                                                       [&](const CoordSet& J) {
                                                         return table_sufficient(sq.base(), table, J);
                                                       }));
    }
  }
  return false;
}

std::uint64_t declared_bound(CertQueryKind kind, const CertInstance& instance) {
  const DecisionProblem& p = base_of(instance);
  const std::uint64_t S = p.num_states();
  const std::uint64_t lattice = std::uint64_t{1} << p.num_coords();
  switch (kind) {
    case CertQueryKind::Sufficiency:
    case CertQueryKind::Anchor: return 2 * S;
    case CertQueryKind::Minimum: return lattice * 2 * S;
    case CertQueryKind::StochPreservation:
    case CertQueryKind::StochDecisiveness: return 4 * S;
    case CertQueryKind::StochMinimum: return lattice * 4 * S;
    case CertQueryKind::SeqSufficiency:
      return setup_cost(instance_as<SequentialProblem>(instance, kind)) + S;
    case CertQueryKind::SeqMinimum:
      return setup_cost(instance_as<SequentialProblem>(instance, kind)) + lattice * S;
  }
  return 0;
}

namespace {

Verdict run_counted(CertQueryKind kind, const CertInstance& instance, const CertQuery& q,
                    StepCounter& counter, const Budgets& budgets) {
  switch (kind) {
    case CertQueryKind::Sufficiency:
      return check_sufficiency(instance_as<DecisionProblem>(instance, kind), q.coords,
                               SufficiencyStrategy::Fiber, counter);
    case CertQueryKind::Anchor:
      return check_anchor(instance_as<DecisionProblem>(instance, kind), q.coords, counter);
    case CertQueryKind::Minimum:
      return find_minimum_sufficient(instance_as<DecisionProblem>(instance, kind), q.k,
                                     MinimumMode::Lattice, counter, budgets);
    case CertQueryKind::StochPreservation:
      return check_preservation(instance_as<StochasticProblem>(instance, kind), q.coords, counter);
    case CertQueryKind::StochDecisiveness:
      return check_decisiveness(instance_as<StochasticProblem>(instance, kind), q.coords, counter);
    case CertQueryKind::StochMinimum:
      return find_stoch_minimum(instance_as<StochasticProblem>(instance, kind), q.k,
                                StochFamily::Decisiveness, counter, {}, budgets);
    case CertQueryKind::SeqSufficiency:
      return check_seq_sufficiency(instance_as<SequentialProblem>(instance, kind), q.coords,
                                   SufficiencyStrategy::Fiber, counter);
    case CertQueryKind::SeqMinimum:
      return find_seq_minimum(instance_as<SequentialProblem>(instance, kind), q.k,
                              MinimumMode::Lattice, counter, budgets);
  }
  throw PreconditionError("unknown query kind");
}

}  // namespace

CertOutcome budgeted_certify(const BudgetedCertifier& certifier, const CertInstance& instance,
                             const CertQuery& query, const Budgets& budgets) {
  CertOutcome out;
  const DecisionProblem& base = base_of(instance);
  if (certifier.kind != CertQueryKind::Minimum && certifier.kind != CertQueryKind::StochMinimum &&
      certifier.kind != CertQueryKind::SeqMinimum)
    query.coords.validate(base.num_coords());
  // Kind mismatches are usage errors, not abstentions.
  (void)declared_bound(certifier.kind, instance);
  if (certifier.always_abstain) {
    out.reason = "always abstains";
    return out;
  }
  StepCounter counter(certifier.budget);
  try {
    out.verdict = run_counted(certifier.kind, instance, query, counter, budgets);
  } catch (const BudgetExhausted&) {
    out.reason = "budget of " + std::to_string(certifier.budget) + " steps exhausted";
    return out;
  }
  if (!verify_verdict(certifier.kind, instance, query, out.verdict, budgets)) {
    out.reason = "verdict failed independent verification";
    return out;
  }
  out.status = CertStatus::Verdict;
  return out;
}

// ---------------------------------------------------------------- interface

ExternalizedRelevance externalized_relevance(const DecisionProblem& problem,
                                             const CoordSet& interface) {
  interface.validate(problem.num_coords());
  const CoordSet relevant = relevant_coordinates(problem).coords;
  ExternalizedRelevance r;
  r.internal = relevant.set_intersection(interface);
  r.externalized = relevant.set_difference(interface);
  r.interface_sufficient = check_sufficiency(problem, interface).yes();
  return r;
}

}  // namespace relevance
