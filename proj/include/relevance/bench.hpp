#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "relevance/certify.hpp"
#include "relevance/core.hpp"
#include "relevance/tractable.hpp"

namespace relevance {

// Regimes: static, stochastic-preservation, stochastic-decisiveness,
// sequential, tractable.
const std::vector<std::string>& bench_regimes();

struct BenchOptions {
  std::uint64_t seed = 1;
  std::size_t max_n = 3;               // instance sizes 1..max_n
  std::size_t per_size = 2;            // random instances per size
  std::set<std::string> regimes;       // empty: all
};

// One measured query. `unit` names what `steps` counts: steps, checks,
// setup or mult-adds. budget is empty and outcome is YES/NO for plain
// runs; sweeps fill budget and allow ABSTAIN.
struct BenchRow {
  std::string instance;
  std::string regime;
  std::string query;
  std::string unit;
  std::uint64_t states = 0;
  std::size_t n = 0;
  std::size_t actions = 0;
  std::uint64_t steps = 0;
  std::uint64_t bound = 0;
  std::optional<std::uint64_t> budget;
  std::string outcome;

  long long margin() const { return static_cast<long long>(bound) - static_cast<long long>(steps); }
};

struct BenchInstance {
  std::string id;
  DecisionProblem problem;
  CoordSet query;  // the I used by base and anchor queries
  // Structured form for the tractable regime, when the instance has one.
  std::variant<std::monostate, TreeUtility, TensorRankUtility> structure;
};

// Deterministic random suite plus the parity family, sizes 1..max_n.
std::vector<BenchInstance> bench_suite(const BenchOptions& options);

// Parity instances: every proper lattice prefix fails in every regime.
std::vector<BenchInstance> frontier_suite(std::size_t max_n);

// The sequential view used by the bench: uniform dense transitions, H = 2,
// backup mode.
SequentialProblem bench_sequential(const DecisionProblem& problem);

// Counted runs of every regime-matrix cell with declared bounds.
std::vector<BenchRow> run_bench(const BenchOptions& options);
std::vector<BenchRow> run_bench(const std::vector<BenchInstance>& suite,
                                const std::set<std::string>& regimes);

// Lattice minimum in each regime through the budgeted certifier.
// Rows are ordered by instance, regime, then budget.
std::vector<BenchRow> budget_sweep(const std::vector<BenchInstance>& suite,
                                   const std::vector<std::uint64_t>& budgets);

// Budgets 0, 2^j up to the largest requirement of the suite.
std::vector<std::uint64_t> default_sweep_budgets(const std::vector<BenchInstance>& suite);

std::string bench_csv_header();
std::string to_csv(const std::vector<BenchRow>& rows);

}  // namespace relevance
