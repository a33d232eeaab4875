#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "relevance/budget.hpp"
#include "relevance/core.hpp"

namespace relevance {

enum class GateOp { Input, Const, Not, And, Or };

struct Gate {
  GateOp op = GateOp::Const;
  std::size_t lhs = 0;  // input index for Input, operand for Not/And/Or
  std::size_t rhs = 0;  // second operand for And/Or
  bool value = false;   // Const only
  friend bool operator==(const Gate&, const Gate&) = default;
};

// Topologically ordered gate list. Operands always refer to earlier gates.
class BoolCircuit {
 public:
  BoolCircuit() = default;
  // Throws FormatError on forward references, missing output, or an input
  // index >= num_inputs.
  BoolCircuit(std::size_t num_inputs, std::vector<Gate> gates, std::size_t output);

  std::size_t num_inputs() const noexcept { return num_inputs_; }
  std::size_t size() const noexcept { return gates_.size(); }
  std::size_t output() const noexcept { return output_; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }

  // Nonzero digits read as 1. Throws DimensionError if bits is too short.
  bool eval(std::span<const std::size_t> bits) const;

  // Same circuit over a wider input space with input i renamed to map[i].
  BoolCircuit remap_inputs(std::span<const std::size_t> map, std::size_t num_inputs) const;

  friend bool operator==(const BoolCircuit&, const BoolCircuit&) = default;

 private:
  std::size_t num_inputs_ = 0;
  std::vector<Gate> gates_;
  std::size_t output_ = 0;
};

// Incremental construction; node ids are gate indices.
class CircuitBuilder {
 public:
  explicit CircuitBuilder(std::size_t num_inputs) : num_inputs_(num_inputs) {}

  std::size_t input(std::size_t i);
  std::size_t constant(bool value);
  std::size_t negate(std::size_t g);
  std::size_t conj(std::size_t g, std::size_t h);
  std::size_t disj(std::size_t g, std::size_t h);
  // Inlines every gate of c, renaming input i to inputs[i]. Returns c's output.
  std::size_t embed(const BoolCircuit& c, std::span<const std::size_t> inputs);

  std::size_t size() const noexcept { return gates_.size(); }
  BoolCircuit build(std::size_t output) const;

 private:
  std::size_t push(Gate g);
  std::size_t num_inputs_;
  std::vector<Gate> gates_;
};

struct Cnf {
  std::size_t num_vars = 0;
  std::vector<std::vector<int>> clauses;  // DIMACS literals, nonzero
  friend bool operator==(const Cnf&, const Cnf&) = default;
};

// Boolean formula over variables x_1..x_n (circuit input i is x_{i+1}).
class Formula {
 public:
  static Formula from_cnf(Cnf cnf);
  static Formula from_circuit(BoolCircuit circuit);
  // Bit k of table is the value on the assignment whose variable x_{i+1}
  // is bit i of k. Compiled as a CNF with one clause per false row.
  static Formula from_truth_table(std::size_t num_vars, std::uint64_t table);

  std::size_t num_vars() const noexcept { return circuit_.num_inputs(); }
  const BoolCircuit& circuit() const noexcept { return circuit_; }
  const std::optional<Cnf>& cnf() const noexcept { return cnf_; }

  bool eval(std::span<const std::size_t> bits) const { return circuit_.eval(bits); }
  bool eval_mask(std::uint64_t assignment) const;

 private:
  std::optional<Cnf> cnf_;
  BoolCircuit circuit_;
};

// Or-of-literals per clause, and-of-clauses; inputs shared, one Not per
// negative literal occurrence. The empty CNF compiles to const(1), an empty
// clause to const(0).
BoolCircuit compile_cnf(const Cnf& cnf);

enum class Quantifier { Exists, Forall };

struct QBF {
  std::vector<std::pair<Quantifier, std::size_t>> prefix;  // 1-based variables, outermost first
  Formula matrix;
  std::size_t num_universal() const;
};

// Validates the invariants: every variable quantified exactly once and every
// matrix variable quantified. Throws FormatError.
void validate_qbf(const QBF& q);

struct WeightedTerm {
  BoolCircuit circuit;
  Rational weight;
};

// U(a, s) = sum_j weight_j * circuit_j(s) over s in {0,1}^n.
struct SuccinctProblem {
  std::size_t n = 0;
  std::vector<std::string> actions;
  std::vector<std::vector<WeightedTerm>> terms;  // one list per action

  void validate() const;
  Rational utility(ActionIndex a, std::span<const std::size_t> s) const;
  std::size_t gate_count() const;
};

// Throws CapacityError when |A| * 2^n exceeds the expansion budget.
DecisionProblem expand(const SuccinctProblem& sp, const Budgets& budgets = default_budgets());

// |A| + n + total gate count over all terms.
std::size_t instance_length(const SuccinctProblem& sp);

// Parsers report FormatError with the 1-based line number.
Cnf parse_dimacs(std::string_view text);
QBF parse_qdimacs(std::string_view text);
std::string write_dimacs(const Cnf& cnf);
std::string write_qdimacs(const QBF& q);  // requires a CNF matrix

// Exhaustive truth-table and game-tree oracles.
bool is_tautology_oracle(const Formula& f, const Budgets& budgets = default_budgets());
std::uint64_t count_models(const Formula& f, const Budgets& budgets = default_budgets());
bool eval_qbf_oracle(const QBF& q, const Budgets& budgets = default_budgets());

}  // namespace relevance
