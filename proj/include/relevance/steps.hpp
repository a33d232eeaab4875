#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

namespace relevance {

// Thrown by StepCounter when a charged step would exceed its limit. Callers
// that run under a budget translate this into an abstention.
class BudgetExhausted : public std::runtime_error {
 public:
  BudgetExhausted() : std::runtime_error("step budget exhausted") {}
};

// Instrumentation shared by every counted search.
//
//   steps  - search units of the operation (OptSet computations, OptSet
//            comparisons, fiber accumulations; documented per operation)
//   evals  - the subset of steps that were OptSet computations
//   setup  - preprocessing units (finite-horizon Q-value computations)
//   checks - inner decider invocations made by subset-lattice scans
//
// The optional limit caps steps + setup. Nested checks charge their own
// steps into the same counter, so a lattice scan's total includes the work
// of every sufficiency check it ran.
class StepCounter {
 public:
  StepCounter() = default;
  explicit StepCounter(std::uint64_t limit) : limit_(limit) {}

  void step(std::uint64_t n = 1) { charge(steps_, n); }
  void eval(std::uint64_t n = 1) {
    charge(steps_, n);
    evals_ += n;
  }
  void setup(std::uint64_t n = 1) { charge(setup_, n); }
  void check() { ++checks_; }

  std::uint64_t steps() const noexcept { return steps_; }
  std::uint64_t evals() const noexcept { return evals_; }
  std::uint64_t setup_units() const noexcept { return setup_; }
  std::uint64_t checks() const noexcept { return checks_; }
  std::uint64_t total() const noexcept { return steps_ + setup_; }
  std::optional<std::uint64_t> limit() const noexcept { return limit_; }

 private:
  void charge(std::uint64_t& field, std::uint64_t n) {
    if (limit_ && total() + n > *limit_) throw BudgetExhausted{};
    field += n;
  }

  std::uint64_t steps_ = 0;
  std::uint64_t evals_ = 0;
  std::uint64_t setup_ = 0;
  std::uint64_t checks_ = 0;
  std::optional<std::uint64_t> limit_;
};

}  // namespace relevance
