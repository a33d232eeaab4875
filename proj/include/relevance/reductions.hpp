#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "relevance/budget.hpp"
#include "relevance/circuit.hpp"
#include "relevance/core.hpp"
#include "relevance/sequential.hpp"
#include "relevance/stochastic.hpp"

namespace relevance {

struct SetCoverInstance {
  std::size_t universe = 0;                    // elements 1..universe
  std::vector<std::vector<std::size_t>> sets;  // each a subset of 1..universe

  void validate() const;
  bool covers(const CoordSet& chosen) const;  // chosen indexes sets
};

// Smallest covering subfamily (by size, then lexicographically), if any.
std::optional<CoordSet> minimum_cover(const SetCoverInstance& sc,
                                      const Budgets& budgets = default_budgets());

enum class QueryKind {
  Sufficiency,     // static, I
  Anchor,          // static, I
  Decisiveness,    // stochastic, I
  SeqSufficiency,  // sequential backup, I
  Minimum,         // static minimum, k
  RestrictedMinimum  // minimum over subsets of I, quantified over admissible states
};

const char* to_string(QueryKind kind);

struct GadgetQuery {
  QueryKind kind = QueryKind::Sufficiency;
  CoordSet coords;
  std::size_t k = 0;
};

struct Accounting {
  std::size_t input_size = 0;   // source gate count (formulas) or element count
  std::size_t output_size = 0;  // gadget gate count (succinct) or table entries
  std::size_t coords = 0;
};

using GadgetInstance =
    std::variant<DecisionProblem, SuccinctProblem, StochasticProblem, SequentialProblem>;
using GadgetSource = std::variant<Formula, QBF, SetCoverInstance>;

struct GadgetOutput {
  std::string gadget;  // tautology, ea-sat, majsat, tqbf, setcover, shifted, eth-chain
  GadgetSource source;
  GadgetInstance instance;
  GadgetQuery query;
  Accounting accounting;
  std::vector<StateIndex> admissible;  // RestrictedMinimum only
};

// Coordinate 0 selects the reference (value 1); coordinates 1..n carry x.
// U(accept) = sel OR phi(x), U(reject) = 0. Query: sufficiency of the empty set.
GadgetOutput gadget_tautology(const Formula& f);

// Prefix must be one existential block then one universal block (either may
// be empty; ShapeError otherwise). x coordinates come first, then y. With no
// universal variable a dummy one is appended. U(YES) = 2 phi(x, y),
// U(NO) = [y = 0]. Query: anchor on the x coordinates.
GadgetOutput gadget_exists_forall(const QBF& q);

// U(accept) = phi, U(hold_L) = U(hold_R) = 1/2 - 2^-(n+1), uniform P.
// Query: decisiveness of the empty set. ShapeError when n = 0.
SuccinctProblem majsat_succinct(const Formula& f);
GadgetOutput gadget_majsat(const Formula& f, const Budgets& budgets = default_budgets());

// Finite-horizon game over coordinates (tag, level, b_1..b_L) with
// tag in {game, ref, bail}, horizon L + 1 and actions go, bail, play0, play1.
// Query: sequential sufficiency of the empty set in backup mode.
GadgetOutput gadget_tqbf(const QBF& q, const Budgets& budgets = default_budgets());

// Coordinates: one Boolean per set, then tag (size 2), then element (size u).
// U(a) = [tag = 0], U(b) = [tag = 1]. Admissible states have
// c_j = tag AND [element in S_j]. Query: minimum over subsets of the set
// coordinates, quantified over admissible states.
GadgetOutput gadget_setcover(const SetCoverInstance& sc);

// Gate coordinate 0, then n coordinates with domain 1 + 2^n (0 = reference,
// v = assignment v - 1). Closed gate: U(hold) = 1. Open gate: U(accept) = 1
// iff every non-reference coordinate holds a satisfying assignment.
// Minimum sufficient size is 1 on tautologies and n + 1 otherwise.
GadgetOutput gadget_shifted(const Formula& f, const Budgets& budgets = default_budgets());

// Negates the CNF and feeds the circuit to the tautology gadget. Accounting
// input is the CNF's compiled gate count, output the gadget's gate count.
GadgetOutput gadget_3sat_chain(const Cnf& f);

// Smallest I within candidates (by size, then lexicographically) that is
// sufficient on the given states.
std::optional<CoordSet> restricted_minimum(const DecisionProblem& problem,
                                           std::span<const StateIndex> states,
                                           const CoordSet& candidates,
                                           const Budgets& budgets = default_budgets());

struct VerifyReport {
  bool pass = false;
  std::string source_answer;
  std::string target_answer;
  std::string detail;
};

// Runs the source oracle and the target decider and compares them. Throws
// CapacityError above the configured budgets.
VerifyReport verify_gadget(const GadgetOutput& g, const Budgets& budgets = default_budgets());

}  // namespace relevance
