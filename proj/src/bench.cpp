#include "relevance/bench.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <tuple>

#include "relevance/errors.hpp"
#include "relevance/sequential.hpp"
#include "relevance/static.hpp"
#include "relevance/stochastic.hpp"

namespace relevance {

const std::vector<std::string>& bench_regimes() {
  static const std::vector<std::string> names{"static", "stochastic-preservation",
                                              "stochastic-decisiveness", "sequential",
                                              "tractable"};
  return names;
}

namespace {

std::vector<std::string> action_names(std::size_t count) {
  std::vector<std::string> out;
  for (std::size_t a = 0; a < count; ++a) out.push_back("a" + std::to_string(a));
  return out;
}

DecisionProblem parity_problem(std::size_t n) {
  return DecisionProblem::tabulate({"even", "odd"}, std::vector<std::size_t>(n, 2),
                                   [](ActionIndex a, const State& s) {
                                     std::size_t x = 0;
                                     for (auto v : s) x ^= v;
                                     return Rational(a == x ? 1 : 0);
                                   });
}

CoordSet random_subset(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < n; ++i)
    if (rng() & 1) members.push_back(i);
  return CoordSet(std::move(members));
}

std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

TreeUtility random_tree(std::mt19937_64& rng, std::size_t n) {
  TreeUtility tu;
  tu.actions = action_names(pick(rng, 2, 3));
  tu.domains.assign(n, 2);
  for (std::size_t i = 0; i < n; ++i) {
    tu.parent.push_back(i == 0 || pick(rng, 0, 3) == 0 ? -1 : static_cast<long>(pick(rng, 0, i - 1)));
    const std::size_t kp = tu.parent[i] < 0 ? 1 : 2;
    std::vector<Rational> table;
    for (std::size_t e = 0; e < tu.actions.size() * 2 * kp; ++e)
      table.emplace_back(static_cast<long>(pick(rng, 0, 2)));
    tu.local.push_back(std::move(table));
  }
  return tu;
}

TensorRankUtility random_tensor(std::mt19937_64& rng, std::size_t n) {
  TensorRankUtility tu;
  tu.actions = action_names(pick(rng, 2, 3));
  tu.domains.assign(n, 2);
  const std::size_t R = pick(rng, 1, 3);
  for (std::size_t r = 0; r < R; ++r) {
    tu.weights.emplace_back(static_cast<long>(pick(rng, 1, 2)));
    std::vector<Rational> af;
    for (std::size_t a = 0; a < tu.actions.size(); ++a) af.emplace_back(static_cast<long>(pick(rng, 0, 2)));
    tu.action_factors.push_back(std::move(af));
    std::vector<std::vector<Rational>> cf;
    for (std::size_t i = 0; i < n; ++i)
      cf.push_back({Rational(static_cast<long>(pick(rng, 0, 2))),
                    Rational(static_cast<long>(pick(rng, 0, 2)))});
    tu.coord_factors.push_back(std::move(cf));
  }
  return tu;
}

DecisionProblem random_symmetric(std::mt19937_64& rng, std::size_t n) {
  const std::size_t A = pick(rng, 2, 3);
  std::vector<std::vector<long>> by_count(A, std::vector<long>(n + 1));
  for (auto& row : by_count)
    for (auto& x : row) x = static_cast<long>(pick(rng, 0, 2));
  return DecisionProblem::tabulate(action_names(A), std::vector<std::size_t>(n, 2),
                                   [&](ActionIndex a, const State& s) {
                                     std::size_t ones = 0;
                                     for (auto v : s) ones += v;
                                     return Rational(by_count[a][ones]);
                                   });
}

BenchRow make_row(const BenchInstance& inst, const std::string& regime, const std::string& query,
                  const std::string& unit, std::uint64_t steps, std::uint64_t bound, bool yes) {
  BenchRow r;
  r.instance = inst.id;
  r.regime = regime;
  r.query = query;
  r.unit = unit;
  r.states = inst.problem.num_states();
  r.n = inst.problem.num_coords();
  r.actions = inst.problem.num_actions();
  r.steps = steps;
  r.bound = bound;
  r.outcome = yes ? "YES" : "NO";
  return r;
}

void sort_rows(std::vector<BenchRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const BenchRow& x, const BenchRow& y) {
    return std::tie(x.instance, x.regime, x.query, x.unit, x.budget) <
           std::tie(y.instance, y.regime, y.query, y.unit, y.budget);
  });
}

}  // namespace

std::vector<BenchInstance> frontier_suite(std::size_t max_n) {
  std::vector<BenchInstance> out;
  for (std::size_t n = 1; n <= max_n; ++n)
    out.push_back({"parity-n" + std::to_string(n), parity_problem(n), CoordSet{}, {}});
  return out;
}

std::vector<BenchInstance> bench_suite(const BenchOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::vector<BenchInstance> out = frontier_suite(options.max_n);
  for (std::size_t n = 1; n <= options.max_n; ++n) {
    const std::string tag = "-n" + std::to_string(n) + "-";
    for (std::size_t j = 0; j < options.per_size; ++j) {
      const std::size_t A = pick(rng, 2, 3);
      std::vector<Rational> utilities;
      for (std::size_t e = 0; e < A * (std::size_t{1} << n); ++e)
        utilities.emplace_back(static_cast<long>(pick(rng, 0, 2)));
      out.push_back({"random" + tag + std::to_string(j),
                     DecisionProblem(action_names(A), std::vector<std::size_t>(n, 2),
                                     std::move(utilities)),
                     random_subset(rng, n), {}});
      TreeUtility tree = random_tree(rng, n);
      DecisionProblem tp = expand_tree(tree);
      out.push_back({"tree" + tag + std::to_string(j), std::move(tp), random_subset(rng, n), tree});
      TensorRankUtility tensor = random_tensor(rng, n);
      DecisionProblem xp = expand_tensor(tensor);
      out.push_back(
          {"tensor" + tag + std::to_string(j), std::move(xp), random_subset(rng, n), tensor});
      out.push_back({"symmetric" + tag + std::to_string(j), random_symmetric(rng, n),
                     random_subset(rng, n), {}});
    }
  }
  return out;
}

SequentialProblem bench_sequential(const DecisionProblem& problem) {
  const std::size_t S = problem.num_states();
  TransitionRow uniform;
  for (StateIndex t = 0; t < S; ++t) uniform.emplace_back(t, Rational(1, static_cast<long>(S)));
  return SequentialProblem(problem, std::vector<TransitionRow>(problem.num_actions() * S, uniform),
                           2, SeqMode::Backup);
}

std::vector<BenchRow> run_bench(const std::vector<BenchInstance>& suite,
                                const std::set<std::string>& regimes) {
  auto wanted = [&](const std::string& r) { return regimes.empty() || regimes.count(r) > 0; };
  std::vector<BenchRow> rows;
  for (const auto& inst : suite) {
    const DecisionProblem& P = inst.problem;
    const CoordSet& I = inst.query;
    const std::uint64_t S = P.num_states(), A = P.num_actions();
    const std::uint64_t lattice = std::uint64_t{1} << P.num_coords();
    const std::size_t k = I.size();

    if (wanted("static")) {
      const std::string g = "static";
      {
        StepCounter c;
        auto v = check_sufficiency(P, I, SufficiencyStrategy::Fiber, c);
        rows.push_back(make_row(inst, g, "base-fiber", "steps", c.steps(), 2 * S, v.yes()));
      }
      {
        StepCounter c;
        auto v = check_sufficiency(P, I, SufficiencyStrategy::Pairwise, c);
        rows.push_back(make_row(inst, g, "base-pairwise", "steps", c.steps(), S * S * A * A, v.yes()));
      }
      {
        StepCounter c;
        auto v = check_anchor(P, I, c);
        rows.push_back(make_row(inst, g, "anchor", "steps", c.steps(), 2 * S, v.yes()));
      }
      {
        StepCounter c;
        auto v = find_minimum_sufficient(P, k, MinimumMode::Lattice, c);
        rows.push_back(make_row(inst, g, "minimum", "checks", c.checks(), lattice, v.yes()));
      }
    }
    const StochasticProblem sp = StochasticProblem::uniform(P);
    if (wanted("stochastic-preservation")) {
      const std::string g = "stochastic-preservation";
      {
        StepCounter c;
        auto v = check_preservation(sp, I, c);
        rows.push_back(make_row(inst, g, "base", "steps", c.steps(), 4 * S, v.yes()));
      }
      {
        StepCounter c;
        auto v = check_stoch_anchor_preservation(sp, I, c);
        rows.push_back(make_row(inst, g, "anchor", "steps", c.steps(), 4 * S, v.yes()));
      }
      {
        StepCounter c;
        auto v = find_stoch_minimum(sp, k, StochFamily::Preservation, c);
        rows.push_back(make_row(inst, g, "minimum", "checks", c.checks(), lattice, v.yes()));
      }
    }
    if (wanted("stochastic-decisiveness")) {
      const std::string g = "stochastic-decisiveness";
      {
        StepCounter c;
        auto v = check_decisiveness(sp, I, c);
        rows.push_back(make_row(inst, g, "base", "steps", c.steps(), 4 * S, v.yes()));
      }
      {
        StepCounter c;
        auto v = check_stoch_anchor(sp, I, c);
        rows.push_back(make_row(inst, g, "anchor", "steps", c.steps(), 4 * S, v.yes()));
      }
      {
        StepCounter c;
        auto v = find_stoch_minimum(sp, k, StochFamily::Decisiveness, c);
        rows.push_back(make_row(inst, g, "minimum", "checks", c.checks(), lattice, v.yes()));
      }
    }
    if (wanted("sequential")) {
      const std::string g = "sequential";
      const SequentialProblem sq = bench_sequential(P);
      {
        StepCounter c;
        auto v = check_seq_sufficiency(sq, I, SufficiencyStrategy::Pairwise, c);
        rows.push_back(make_row(inst, g, "base-pairwise", "steps", c.steps(), S * S, v.yes()));
        rows.push_back(make_row(inst, g, "backup", "setup", c.setup_units(), setup_cost(sq), v.yes()));
      }
      {
        StepCounter c;
        auto v = check_seq_sufficiency(sq, I, SufficiencyStrategy::Fiber, c);
        rows.push_back(make_row(inst, g, "base-fiber", "steps", c.steps(), S, v.yes()));
      }
      {
        StepCounter c;
        auto v = check_seq_anchor(sq, I, c);
        rows.push_back(make_row(inst, g, "anchor", "steps", c.steps(), S, v.yes()));
      }
      {
        StepCounter c;
        auto v = find_seq_minimum(sq, k, MinimumMode::Lattice, c);
        rows.push_back(make_row(inst, g, "minimum", "checks", c.checks(), lattice, v.yes()));
      }
    }
    if (wanted("tractable")) {
      const std::string g = "tractable";
      if (const auto* tree = std::get_if<TreeUtility>(&inst.structure)) {
        const PairwiseUtility pu = tree->to_pairwise();
        StepCounter c;
        auto v = check_sufficiency_treewidth(pu, I, c);
        rows.push_back(make_row(inst, g, "treewidth-base", "steps", c.steps(),
                                treewidth_step_bound(pu, I), v.yes()));
      }
      if (const auto* tensor = std::get_if<TensorRankUtility>(&inst.structure)) {
        std::uint64_t worst = 0;
        for (StateIndex s = 0; s < S; ++s)
          worst = std::max(worst, opt_tensor(*tensor, P.decode(s)).mult_adds);
        const std::uint64_t R = tensor->rank(), n = P.num_coords();
        rows.push_back(make_row(inst, g, "tensor-opt", "mult-adds", worst, A * R * n + R * n,
                                true));
      }
      bool symmetric = true;
      try {
        verify_symmetric(P);
      } catch (const PreconditionError&) {
        symmetric = false;
      }
      if (symmetric) {
        StepCounter c;
        auto v = check_sufficiency_symmetric(P, I, c);
        const std::uint64_t d = P.num_coords(), kk = d ? P.domains()[0] : 1;
        const std::uint64_t T = binomial(d + kk - 1, kk - 1);
        rows.push_back(make_row(inst, g, "symmetric-base", "steps", c.steps(), T * (T - 1) / 2,
                                v.yes()));
      }
    }
  }
  sort_rows(rows);
  return rows;
}

std::vector<BenchRow> run_bench(const BenchOptions& options) {
  return run_bench(bench_suite(options), options.regimes);
}

namespace {

struct SweepCell {
  const char* regime;
  CertQueryKind kind;
};

constexpr SweepCell kSweep[] = {
    {"static", CertQueryKind::Minimum},
    {"stochastic-decisiveness", CertQueryKind::StochMinimum},
    {"sequential", CertQueryKind::SeqMinimum},
};

CertInstance sweep_instance(const DecisionProblem& P, CertQueryKind kind) {
  if (kind == CertQueryKind::Minimum) return P;
  if (kind == CertQueryKind::StochMinimum) return StochasticProblem::uniform(P);
  return bench_sequential(P);
}

std::uint64_t requirement(const CertInstance& inst, CertQueryKind kind, std::size_t k) {
  BudgetedCertifier unlimited{kind, declared_bound(kind, inst), false};
  const CertOutcome out = budgeted_certify(unlimited, inst, {{}, k});
  if (out.abstained())
    throw std::logic_error(std::string("declared bound too small for ") + to_string(kind));
  return out.verdict.total();
}

}  // namespace

std::vector<std::uint64_t> default_sweep_budgets(const std::vector<BenchInstance>& suite) {
  std::uint64_t top = 0;
  for (const auto& inst : suite)
    for (const auto& cell : kSweep)
      top = std::max(top, requirement(sweep_instance(inst.problem, cell.kind), cell.kind,
                                      inst.query.size()));
  std::vector<std::uint64_t> out{0};
  for (std::uint64_t b = 1; b <= 2 * top; b *= 2) out.push_back(b);
  return out;
}

std::vector<BenchRow> budget_sweep(const std::vector<BenchInstance>& suite,
                                   const std::vector<std::uint64_t>& budgets) {
  std::vector<BenchRow> rows;
  for (const auto& inst : suite)
    for (const auto& cell : kSweep) {
      const CertInstance ci = sweep_instance(inst.problem, cell.kind);
      const CertQuery q{{}, inst.query.size()};
      const std::uint64_t needed = requirement(ci, cell.kind, q.k);
      for (auto b : budgets) {
        const CertOutcome out = budgeted_certify({cell.kind, b, false}, ci, q);
        BenchRow r = make_row(inst, cell.regime, "minimum", "steps", needed,
                              declared_bound(cell.kind, ci), out.verdict.yes());
        r.budget = b;
        if (out.abstained()) r.outcome = "ABSTAIN";
        rows.push_back(std::move(r));
      }
    }
  sort_rows(rows);
  return rows;
}

std::string bench_csv_header() {
  return "instance,regime,query,unit,states,n,actions,steps,bound,margin,budget,outcome";
}

std::string to_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << bench_csv_header() << '\n';
  for (const auto& r : rows) {
    out << r.instance << ',' << r.regime << ',' << r.query << ',' << r.unit << ',' << r.states
        << ',' << r.n << ',' << r.actions << ',' << r.steps << ',' << r.bound << ',' << r.margin()
        << ',' << (r.budget ? std::to_string(*r.budget) : "") << ',' << r.outcome << '\n';
  }
  return out.str();
}

}  // namespace relevance
