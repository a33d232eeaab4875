#include "doctest.h"
#include "relevance/bench.hpp"

using namespace relevance;

namespace {

std::vector<BenchRow> rows_for(const std::string& instance, const std::vector<BenchRow>& rows) {
  std::vector<BenchRow> out;
  for (const auto& r : rows)
    if (r.instance == instance) out.push_back(r);
  return out;
}

}  // namespace

TEST_SUITE("bench") {
  TEST_CASE("every measured cell stays within its declared bound") {
    BenchOptions o;
    o.max_n = 3;
    const auto rows = run_bench(o);
    CHECK(rows.size() > 100);
    std::set<std::string> regimes;
    for (const auto& r : rows) {
      CAPTURE(r.instance);
      CAPTURE(r.query);
      CHECK(r.margin() >= 0);
      regimes.insert(r.regime);
    }
    CHECK(regimes.size() == bench_regimes().size());
  }

  TEST_CASE("output is deterministic in the seed") {
    BenchOptions o;
    o.max_n = 2;
    CHECK(to_csv(run_bench(o)) == to_csv(run_bench(o)));
    BenchOptions other = o;
    other.seed = 9;
    CHECK(to_csv(run_bench(o)) != to_csv(run_bench(other)));
  }

  TEST_CASE("regime filter and empty suite") {
    BenchOptions o;
    o.max_n = 2;
    o.regimes = {"tractable"};
    for (const auto& r : run_bench(o)) CHECK(r.regime == "tractable");
    CHECK(to_csv(run_bench(std::vector<BenchInstance>{}, {})) == bench_csv_header() + "\n");
    CHECK(bench_csv_header() == "instance,regime,query,unit,states,n,actions,steps,bound,margin,budget,outcome");
  }

  TEST_CASE("abstention is monotone in the budget") {
    BenchOptions o;
    o.max_n = 2;
    const auto suite = bench_suite(o);
    const auto rows = budget_sweep(suite, default_sweep_budgets(suite));
    std::map<std::pair<std::string, std::string>, bool> answered;
    for (const auto& r : rows) {
      auto key = std::make_pair(r.instance, r.regime);
      if (answered[key]) CHECK(r.outcome != "ABSTAIN");
      if (r.outcome != "ABSTAIN") {
        answered[key] = true;
        CHECK(r.steps <= *r.budget);
      }
    }
    for (const auto& [key, done] : answered) CHECK(done);
  }

  TEST_CASE("the parity frontier nests static below stochastic below sequential") {
    const auto suite = frontier_suite(4);
    const auto rows = budget_sweep(suite, {0});
    for (const auto& inst : suite) {
      std::map<std::string, std::uint64_t> need;
      for (const auto& r : rows_for(inst.id, rows)) need[r.regime] = r.steps;
      CHECK(need.at("static") < need.at("stochastic-decisiveness"));
      CHECK(need.at("stochastic-decisiveness") < need.at("sequential"));
    }
  }
}
