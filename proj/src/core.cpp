#include "relevance/core.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "relevance/errors.hpp"

namespace relevance {

// ---------------------------------------------------------------- CoordSet

CoordSet::CoordSet(std::initializer_list<std::size_t> members)
    : CoordSet(std::vector<std::size_t>(members)) {}

CoordSet::CoordSet(std::vector<std::size_t> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

CoordSet CoordSet::all(std::size_t n) {
  std::vector<std::size_t> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = i;
  return CoordSet(std::move(m));
}

CoordSet CoordSet::from_mask(std::uint64_t mask) {
  std::vector<std::size_t> m;
  for (std::size_t i = 0; mask != 0; ++i, mask >>= 1)
    if (mask & 1u) m.push_back(i);
  return CoordSet(std::move(m));
}

bool CoordSet::contains(std::size_t i) const {
  return std::binary_search(members_.begin(), members_.end(), i);
}

bool CoordSet::subset_of(const CoordSet& other) const {
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(),
                       members_.end());
}

CoordSet CoordSet::with(std::size_t i) const {
  auto m = members_;
  m.push_back(i);
  return CoordSet(std::move(m));
}

CoordSet CoordSet::without(std::size_t i) const {
  auto m = members_;
  m.erase(std::remove(m.begin(), m.end(), i), m.end());
  return CoordSet(std::move(m));
}

CoordSet CoordSet::set_union(const CoordSet& other) const {
  std::vector<std::size_t> m;
  std::set_union(begin(), end(), other.begin(), other.end(), std::back_inserter(m));
  return CoordSet(std::move(m));
}

CoordSet CoordSet::set_difference(const CoordSet& other) const {
  std::vector<std::size_t> m;
  std::set_difference(begin(), end(), other.begin(), other.end(), std::back_inserter(m));
  return CoordSet(std::move(m));
}

CoordSet CoordSet::set_intersection(const CoordSet& other) const {
  std::vector<std::size_t> m;
  std::set_intersection(begin(), end(), other.begin(), other.end(), std::back_inserter(m));
  return CoordSet(std::move(m));
}

void CoordSet::validate(std::size_t n) const {
  if (!members_.empty() && members_.back() >= n)
    throw DimensionError("coordinate " + std::to_string(members_.back()) +
                         " out of range for n = " + std::to_string(n));
}

std::string CoordSet::to_string() const {
  std::ostringstream out;
  out << '{';
  for (std::size_t k = 0; k < members_.size(); ++k) out << (k ? "," : "") << members_[k];
  out << '}';
  return out.str();
}

// ---------------------------------------------------------------- OptSet

OptSet::OptSet(std::vector<ActionIndex> actions) : actions_(std::move(actions)) {
  std::sort(actions_.begin(), actions_.end());
  actions_.erase(std::unique(actions_.begin(), actions_.end()), actions_.end());
}

bool OptSet::contains(ActionIndex a) const {
  return std::binary_search(actions_.begin(), actions_.end(), a);
}

OptSet argmax(std::span<const Rational> scores) {
  std::vector<ActionIndex> best;
  const Rational* top = nullptr;
  for (std::size_t a = 0; a < scores.size(); ++a) {
    if (top == nullptr || scores[a] > *top) {
      top = &scores[a];
      best.assign(1, a);
    } else if (scores[a] == *top) {
      best.push_back(a);
    }
  }
  return OptSet(std::move(best));
}

// ---------------------------------------------------------------- DecisionProblem

DecisionProblem::DecisionProblem(std::vector<std::string> actions,
                                 std::vector<std::size_t> domains,
                                 std::vector<Rational> utilities)
    : actions_(std::move(actions)), domains_(std::move(domains)), utilities_(std::move(utilities)) {
  if (actions_.empty()) throw FormatError("decision problem needs at least one action");
  strides_.resize(domains_.size());
  for (std::size_t i = 0; i < domains_.size(); ++i) {
    if (domains_[i] == 0) throw FormatError("coordinate " + std::to_string(i) + " has empty domain");
    strides_[i] = num_states_;
    if (num_states_ > std::numeric_limits<std::size_t>::max() / domains_[i])
      throw CapacityError("state space overflows size_t");
    num_states_ *= domains_[i];
  }
  if (num_states_ > std::numeric_limits<std::size_t>::max() / actions_.size())
    throw CapacityError("utility table overflows size_t");
  if (utilities_.size() != actions_.size() * num_states_)
    throw FormatError("utility table has " + std::to_string(utilities_.size()) +
                      " entries, expected " + std::to_string(actions_.size() * num_states_));
}

DecisionProblem DecisionProblem::tabulate(std::vector<std::string> actions,
                                          std::vector<std::size_t> domains,
                                          const UtilityFn& utility) {
  std::size_t states = 1;
  for (auto d : domains) states *= d;
  std::vector<Rational> table;
  table.reserve(actions.size() * states);
  State s(domains.size(), 0);
  for (ActionIndex a = 0; a < actions.size(); ++a) {
    std::fill(s.begin(), s.end(), 0);
    for (StateIndex k = 0; k < states; ++k) {
      table.push_back(utility(a, s));
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (++s[i] < domains[i]) break;
        s[i] = 0;
      }
    }
  }
  return DecisionProblem(std::move(actions), std::move(domains), std::move(table));
}

State DecisionProblem::decode(StateIndex s) const {
  validate_state(s);
  State out(domains_.size());
  for (std::size_t i = 0; i < domains_.size(); ++i) out[i] = digit(s, i);
  return out;
}

StateIndex DecisionProblem::encode(std::span<const std::size_t> digits) const {
  if (digits.size() != domains_.size())
    throw DimensionError("state has " + std::to_string(digits.size()) + " coordinates, expected " +
                         std::to_string(domains_.size()));
  StateIndex s = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] >= domains_[i])
      throw DimensionError("digit " + std::to_string(digits[i]) + " out of range at coordinate " +
                           std::to_string(i));
    s += digits[i] * strides_[i];
  }
  return s;
}

void DecisionProblem::validate_state(StateIndex s) const {
  if (s >= num_states_)
    throw DimensionError("state index " + std::to_string(s) + " out of range");
}

void DecisionProblem::validate_state(const State& s) const { (void)encode(s); }

// ---------------------------------------------------------------- projections

std::vector<std::size_t> project(const State& s, const CoordSet& I) {
  std::vector<std::size_t> out;
  out.reserve(I.size());
  for (auto i : I) {
    if (i >= s.size()) throw DimensionError("coordinate " + std::to_string(i) + " out of range");
    out.push_back(s[i]);
  }
  return out;
}

std::size_t projection_key(const DecisionProblem& problem, StateIndex s, const CoordSet& I) {
  std::size_t key = 0;
  std::size_t radix = 1;
  for (auto i : I) {
    key += problem.digit(s, i) * radix;
    radix *= problem.domains()[i];
  }
  return key;
}

std::size_t fiber_count(const DecisionProblem& problem, const CoordSet& I) {
  I.validate(problem.num_coords());
  std::size_t count = 1;
  for (auto i : I) count *= problem.domains()[i];
  return count;
}

Assignment assignment_from_key(const DecisionProblem& problem, const CoordSet& I,
                               std::size_t key) {
  Assignment alpha{I, {}};
  for (auto i : I) {
    alpha.values.push_back(key % problem.domains()[i]);
    key /= problem.domains()[i];
  }
  return alpha;
}

std::string Assignment::to_string() const {
  std::ostringstream out;
  out << '{';
  for (std::size_t k = 0; k < coords.size(); ++k)
    out << (k ? "," : "") << coords[k] << '=' << values[k];
  out << '}';
  return out.str();
}

// ---------------------------------------------------------------- optimizer

OptSet opt(const DecisionProblem& problem, StateIndex s) {
  problem.validate_state(s);
  std::vector<Rational> scores;
  scores.reserve(problem.num_actions());
  for (ActionIndex a = 0; a < problem.num_actions(); ++a) scores.push_back(problem.utility(a, s));
  return argmax(scores);
}

OptSet opt(const DecisionProblem& problem, const State& s) {
  return opt(problem, problem.encode(s));
}

std::vector<OptSet> opt_table(const DecisionProblem& problem) {
  std::vector<OptSet> table;
  table.reserve(problem.num_states());
  for (StateIndex s = 0; s < problem.num_states(); ++s) table.push_back(opt(problem, s));
  return table;
}

// ---------------------------------------------------------------- oracles

Verdict is_sufficient_on(const DecisionProblem& problem, const CoordSet& I,
                         std::span<const StateIndex> states) {
  I.validate(problem.num_coords());
  std::map<std::vector<std::size_t>, std::pair<StateIndex, OptSet>> groups;
  for (StateIndex s : states) {
    auto key = project(problem.decode(s), I);
    OptSet o = opt(problem, s);
    auto [it, fresh] = groups.try_emplace(std::move(key), s, o);
    if (!fresh && it->second.second != o) {
      Verdict v;
      v.answer = Answer::No;
      v.witness = StatePair{it->second.first, s};
      return v;
    }
  }
  return Verdict{};
}

Verdict is_sufficient_oracle(const DecisionProblem& problem, const CoordSet& I) {
  std::vector<StateIndex> all(problem.num_states());
  for (StateIndex s = 0; s < all.size(); ++s) all[s] = s;
  return is_sufficient_on(problem, I, all);
}

Relevance relevant_coordinates(const DecisionProblem& problem) {
  const auto table = opt_table(problem);
  Relevance out;
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < problem.num_coords(); ++i) {
    bool found = false;
    for (StateIndex s = 0; s < problem.num_states() && !found; ++s) {
      for (std::size_t v = 0; v < problem.domains()[i] && !found; ++v) {
        if (v == problem.digit(s, i)) continue;
        const StateIndex t = problem.with_digit(s, i, v);
        if (table[s] != table[t]) {
          members.push_back(i);
          out.witnesses.push_back({s, t});
          found = true;
        }
      }
    }
  }
  out.coords = CoordSet(std::move(members));
  return out;
}

CoordSet minimum_sufficient_set(const DecisionProblem& problem) {
  CoordSet result = relevant_coordinates(problem).coords;
#ifndef NDEBUG
  if (!is_sufficient_oracle(problem, result).yes())
    throw std::logic_error("relevant set is not sufficient");
  for (auto i : result)
    if (is_sufficient_oracle(problem, result.without(i)).yes())
      throw std::logic_error("relevant set is not minimal");
#endif
  return result;
}

std::size_t structural_rank(const DecisionProblem& problem) {
  return relevant_coordinates(problem).coords.size();
}

Quotient quotient(const DecisionProblem& problem) {
  const auto table = opt_table(problem);
  std::map<OptSet, StateIndex> first_seen;
  for (StateIndex s = 0; s < table.size(); ++s) first_seen.try_emplace(table[s], s);
  Quotient q;
  std::map<OptSet, std::size_t> ids;
  for (const auto& [o, s] : first_seen) {
    ids.emplace(o, q.class_optset.size());
    q.class_optset.push_back(o);
    q.representatives.push_back(s);
  }
  q.class_of.reserve(table.size());
  for (const auto& o : table) q.class_of.push_back(ids.at(o));
  return q;
}

FactorResult factor_through(const DecisionProblem& problem, std::span<const std::size_t> phi) {
  if (phi.size() != problem.num_states())
    throw DimensionError("labelling has " + std::to_string(phi.size()) + " entries, expected " +
                         std::to_string(problem.num_states()));
  const auto q = quotient(problem);
  std::map<std::size_t, std::pair<StateIndex, std::size_t>> seen;  // label -> (state, class)
  for (StateIndex s = 0; s < phi.size(); ++s) {
    auto [it, fresh] = seen.try_emplace(phi[s], s, q.class_of[s]);
    if (!fresh && it->second.second != q.class_of[s]) return Refusal{{it->second.first, s}};
  }
  Factorization f;
  for (const auto& [label, entry] : seen) f.psi.emplace(label, entry.second);
  return f;
}

}  // namespace relevance
