#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "relevance/rational.hpp"
#include "relevance/steps.hpp"

namespace relevance {

using StateIndex = std::size_t;
using ActionIndex = std::size_t;

// Digits s_0..s_{n-1}, 0 <= s_i < |X_i|.
using State = std::vector<std::size_t>;

// Sorted, duplicate-free set of coordinate indices.
class CoordSet {
 public:
  CoordSet() = default;
  CoordSet(std::initializer_list<std::size_t> members);
  explicit CoordSet(std::vector<std::size_t> members);

  static CoordSet all(std::size_t n);
  // Bit i of mask selects coordinate i.
  static CoordSet from_mask(std::uint64_t mask);

  bool contains(std::size_t i) const;
  bool subset_of(const CoordSet& other) const;
  bool empty() const noexcept { return members_.empty(); }
  std::size_t size() const noexcept { return members_.size(); }
  std::size_t operator[](std::size_t k) const { return members_[k]; }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }
  const std::vector<std::size_t>& members() const noexcept { return members_; }

  CoordSet with(std::size_t i) const;
  CoordSet without(std::size_t i) const;
  CoordSet set_union(const CoordSet& other) const;
  CoordSet set_difference(const CoordSet& other) const;
  CoordSet set_intersection(const CoordSet& other) const;

  // Throws DimensionError when a member is >= n.
  void validate(std::size_t n) const;

  std::string to_string() const;  // "{0,2}"

  friend bool operator==(const CoordSet&, const CoordSet&) = default;
  friend auto operator<=>(const CoordSet&, const CoordSet&) = default;

 private:
  std::vector<std::size_t> members_;
};

// Canonically sorted set of optimal actions, so set equality is list equality.
class OptSet {
 public:
  OptSet() = default;
  explicit OptSet(std::vector<ActionIndex> actions);

  bool contains(ActionIndex a) const;
  bool singleton() const noexcept { return actions_.size() == 1; }
  bool empty() const noexcept { return actions_.empty(); }
  std::size_t size() const noexcept { return actions_.size(); }
  auto begin() const noexcept { return actions_.begin(); }
  auto end() const noexcept { return actions_.end(); }
  const std::vector<ActionIndex>& actions() const noexcept { return actions_; }

  friend bool operator==(const OptSet&, const OptSet&) = default;
  friend auto operator<=>(const OptSet&, const OptSet&) = default;

 private:
  std::vector<ActionIndex> actions_;
};

// Exact argmax of a score vector; ties are exact equality.
OptSet argmax(std::span<const Rational> scores);

// Finite decision problem with an explicit utility table.
//
// States are indexed in mixed radix with coordinate 0 least significant:
// index(s) = sum_i s_i * prod_{j<i} |X_j|. n = 0 is allowed and yields a
// single empty state.
class DecisionProblem {
 public:
  // utilities is action-major: utilities[a * num_states() + s].
  DecisionProblem(std::vector<std::string> actions, std::vector<std::size_t> domains,
                  std::vector<Rational> utilities);

  using UtilityFn = std::function<Rational(ActionIndex, const State&)>;
  static DecisionProblem tabulate(std::vector<std::string> actions,
                                  std::vector<std::size_t> domains, const UtilityFn& utility);

  std::size_t num_actions() const noexcept { return actions_.size(); }
  std::size_t num_coords() const noexcept { return domains_.size(); }
  std::size_t num_states() const noexcept { return num_states_; }

  const std::vector<std::string>& actions() const noexcept { return actions_; }
  const std::vector<std::size_t>& domains() const noexcept { return domains_; }
  const std::vector<std::size_t>& strides() const noexcept { return strides_; }
  const std::vector<Rational>& utilities() const noexcept { return utilities_; }

  const Rational& utility(ActionIndex a, StateIndex s) const {
    return utilities_[a * num_states_ + s];
  }
  std::span<const Rational> action_row(ActionIndex a) const {
    return {utilities_.data() + a * num_states_, num_states_};
  }

  std::size_t digit(StateIndex s, std::size_t i) const {
    return (s / strides_[i]) % domains_[i];
  }
  StateIndex with_digit(StateIndex s, std::size_t i, std::size_t value) const {
    return s - digit(s, i) * strides_[i] + value * strides_[i];
  }
  State decode(StateIndex s) const;
  StateIndex encode(std::span<const std::size_t> digits) const;  // validates

  void validate_state(StateIndex s) const;
  void validate_state(const State& s) const;

  friend bool operator==(const DecisionProblem&, const DecisionProblem&) = default;

 private:
  std::vector<std::string> actions_;
  std::vector<std::size_t> domains_;
  std::vector<std::size_t> strides_;
  std::size_t num_states_ = 1;
  std::vector<Rational> utilities_;
};

// s_I in I's sorted order.
std::vector<std::size_t> project(const State& s, const CoordSet& I);

// Mixed-radix index of s_I (I[0] least significant) and the number of such
// keys. Used to group states into I-fibers.
std::size_t projection_key(const DecisionProblem& problem, StateIndex s, const CoordSet& I);
std::size_t fiber_count(const DecisionProblem& problem, const CoordSet& I);

OptSet opt(const DecisionProblem& problem, StateIndex s);
OptSet opt(const DecisionProblem& problem, const State& s);
std::vector<OptSet> opt_table(const DecisionProblem& problem);

// Partial assignment alpha to the coordinates of I.
struct Assignment {
  CoordSet coords;
  std::vector<std::size_t> values;
  friend bool operator==(const Assignment&, const Assignment&) = default;
  std::string to_string() const;  // "{0=1,2=0}"
};

Assignment assignment_from_key(const DecisionProblem& problem, const CoordSet& I,
                               std::size_t key);

struct StatePair {
  StateIndex first = 0;
  StateIndex second = 0;
  friend bool operator==(const StatePair&, const StatePair&) = default;
};

struct ViolatingState {
  StateIndex state = 0;
  friend bool operator==(const ViolatingState&, const ViolatingState&) = default;
};

// Fiber value plus the unique conditional optimum found there.
struct AnchorAction {
  Assignment alpha;
  ActionIndex action = 0;
  friend bool operator==(const AnchorAction&, const AnchorAction&) = default;
};

using Witness =
    std::variant<std::monostate, StatePair, ViolatingState, Assignment, AnchorAction, CoordSet>;

enum class Answer { Yes, No };

// Decision plus witness plus instrumentation. The counters mirror
// StepCounter at the end of the run.
struct Verdict {
  Answer answer = Answer::Yes;
  Witness witness;
  std::uint64_t steps = 0;
  std::uint64_t evals = 0;
  std::uint64_t setup = 0;
  std::uint64_t checks = 0;
  std::string note;

  bool yes() const noexcept { return answer == Answer::Yes; }
  std::uint64_t total() const noexcept { return steps + setup; }

  Verdict& record(const StepCounter& c) {
    steps = c.steps();
    evals = c.evals();
    setup = c.setup_units();
    checks = c.checks();
    return *this;
  }
};

inline Verdict make_verdict(Answer answer, Witness w = {}) {
  Verdict v;
  v.answer = answer;
  v.witness = std::move(w);
  return v;
}
inline Verdict yes_verdict(Witness w = {}) { return make_verdict(Answer::Yes, std::move(w)); }
inline Verdict no_verdict(Witness w = {}) { return make_verdict(Answer::No, std::move(w)); }

// Definitional oracle: groups states by their projection tuple and compares
// OptSets within each group. NO carries the first counterexample in state order
// (the group's first state paired with the first disagreeing state).
Verdict is_sufficient_oracle(const DecisionProblem& problem, const CoordSet& I);

// Same predicate with the universal quantifier restricted to the listed states.
Verdict is_sufficient_on(const DecisionProblem& problem, const CoordSet& I,
                         std::span<const StateIndex> states);

struct Relevance {
  CoordSet coords;
  std::vector<StatePair> witnesses;  // witnesses[k] differs only at coords[k]
};

// Brute force over all (s, i, v): i is relevant iff flipping s_i to some v
// changes Opt.
Relevance relevant_coordinates(const DecisionProblem& problem);

// The unique minimal sufficient set (the relevant coordinates).
CoordSet minimum_sufficient_set(const DecisionProblem& problem);

// Number of relevant coordinates.
std::size_t structural_rank(const DecisionProblem& problem);

struct Quotient {
  std::vector<std::size_t> class_of;           // state -> class id
  std::vector<StateIndex> representatives;     // class id -> first state
  std::vector<OptSet> class_optset;            // class id -> OptSet (sorted)
  std::size_t num_classes() const noexcept { return class_optset.size(); }
};

// Partition of S by equality of Opt; class ids follow the canonical order of
// the OptSets.
Quotient quotient(const DecisionProblem& problem);

struct Factorization {
  std::map<std::size_t, std::size_t> psi;  // label -> class id
};
struct Refusal {
  StatePair witness;  // same label, different OptSet
};
using FactorResult = std::variant<Factorization, Refusal>;

// Universal property of the quotient: phi factors pi = psi o phi iff every
// phi-fiber has constant Opt. phi[s] is the label of state s.
FactorResult factor_through(const DecisionProblem& problem, std::span<const std::size_t> phi);

}  // namespace relevance
