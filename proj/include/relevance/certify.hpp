#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "relevance/budget.hpp"
#include "relevance/circuit.hpp"
#include "relevance/core.hpp"
#include "relevance/sequential.hpp"
#include "relevance/stochastic.hpp"

namespace relevance {

// ---------------------------------------------------------------- slots

// Slot z pairs the states (0, z) and (1, z) of {0,1}^n, where the leading bit
// is coordinate 0 and z fills coordinates 1..n-1. Index of (b, z) is b + 2z.
std::size_t slot_count(std::size_t n);

// Two actions, U(keep) = 1 and U(flip) = 0 everywhere: Opt is constant.
DecisionProblem slot_yes_instance(std::size_t n);
// Same as the YES instance except that (1, z) prefers flip.
DecisionProblem slot_no_instance(std::size_t n, std::size_t z);

class SlotOracle {
 public:
  // Throws DimensionError unless the problem has n >= 1 Boolean coordinates.
  explicit SlotOracle(DecisionProblem hidden);

  // True iff Opt agrees on the slot's two states. Every query is logged.
  bool query(std::size_t z);
  const std::vector<std::size_t>& log() const noexcept { return log_; }
  std::size_t num_slots() const noexcept { return slots_; }

 private:
  DecisionProblem hidden_;
  std::size_t slots_ = 0;
  std::vector<std::size_t> log_;
};

struct FoolingPair {
  DecisionProblem yes_instance;  // empty set sufficient
  DecisionProblem no_instance;   // empty set insufficient
  std::size_t slot = 0;          // the uninspected slot z*
};

// With fewer than 2^(n-1) inspected slots returns instances that agree on
// every inspected slot; z* is the smallest uninspected one. Returns nullopt
// once every slot is inspected. Requires 1 <= n <= 4 (DimensionError).
std::optional<FoolingPair> adversary_game(std::size_t n, const std::set<std::size_t>& inspected);

// ---------------------------------------------------------------- threshold

using MinimumSolver = std::function<CoordSet(const DecisionProblem&)>;

// The exact solver: relevant coordinates.
MinimumSolver exact_minimum_solver();

// Tautology test through the shifted family: f is reported a tautology iff
// the solver's set has size <= rho. Inputs need 1 <= rho < n + 1, otherwise
// OutOfGapError.
class ThresholdDecider {
 public:
  ThresholdDecider(std::size_t rho, MinimumSolver solver);

  bool operator()(const Formula& f) const;
  std::size_t rho() const noexcept { return rho_; }

 private:
  std::size_t rho_;
  MinimumSolver solver_;
};

ThresholdDecider threshold_decider(std::size_t rho, MinimumSolver solver = exact_minimum_solver());

// ---------------------------------------------------------------- budgeted

enum class CertQueryKind {
  Sufficiency,         // static, fiber scan
  Anchor,              // static
  Minimum,             // static, subset lattice
  StochPreservation,   // lenient
  StochDecisiveness,
  StochMinimum,        // decisiveness lattice
  SeqSufficiency,      // fiber scan over Opt_seq
  SeqMinimum           // lattice over Opt_seq
};

const char* to_string(CertQueryKind kind);

struct CertQuery {
  CoordSet coords;
  std::size_t k = 0;
};

using CertInstance = std::variant<DecisionProblem, StochasticProblem, SequentialProblem>;

struct BudgetedCertifier {
  CertQueryKind kind = CertQueryKind::Sufficiency;
  std::uint64_t budget = 0;     // cap on steps + setup
  bool always_abstain = false;  // the trivially sound certifier
};

enum class CertStatus { Verdict, Abstain };

struct CertOutcome {
  CertStatus status = CertStatus::Abstain;
  Verdict verdict;     // meaningful when status is Verdict
  std::string reason;  // why the run abstained
  bool abstained() const noexcept { return status == CertStatus::Abstain; }
};

// Runs the counted decider under the budget. Abstains when the counter would
// pass the budget, and also when the verdict fails independent verification.
// PreconditionError when the instance kind does not fit the query kind.
CertOutcome budgeted_certify(const BudgetedCertifier& certifier, const CertInstance& instance,
                             const CertQuery& query, const Budgets& budgets = default_budgets());

// Independent verifier: replays witnesses and rechecks YES claims by
// uncounted definitional computation.
bool verify_verdict(CertQueryKind kind, const CertInstance& instance, const CertQuery& query,
                    const Verdict& verdict, const Budgets& budgets = default_budgets());

// Worst-case steps + setup of the wrapped decider on this instance.
std::uint64_t declared_bound(CertQueryKind kind, const CertInstance& instance);

// ---------------------------------------------------------------- interface

struct ExternalizedRelevance {
  CoordSet internal;      // relevant and inside the interface
  CoordSet externalized;  // relevant and outside it
  bool interface_sufficient = false;
};

ExternalizedRelevance externalized_relevance(const DecisionProblem& problem,
                                             const CoordSet& interface);

}  // namespace relevance
