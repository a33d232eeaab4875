#include "relevance/circuit.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "relevance/errors.hpp"

namespace relevance {

BoolCircuit::BoolCircuit(std::size_t num_inputs, std::vector<Gate> gates, std::size_t output)
    : num_inputs_(num_inputs), gates_(std::move(gates)), output_(output) {
  if (gates_.empty()) throw FormatError("circuit has no gates");
  if (output_ >= gates_.size()) throw FormatError("circuit output refers to a missing gate");
  for (std::size_t g = 0; g < gates_.size(); ++g) {
    const Gate& gate = gates_[g];
    switch (gate.op) {
      case GateOp::Input:
        if (gate.lhs >= num_inputs_)
          throw FormatError("gate " + std::to_string(g) + " reads input " +
                            std::to_string(gate.lhs) + " of " + std::to_string(num_inputs_));
        break;
      case GateOp::Const:
        break;
      case GateOp::And:
      case GateOp::Or:
        if (gate.rhs >= g) throw FormatError("gate " + std::to_string(g) + " is not topological");
        [[fallthrough]];
      case GateOp::Not:
        if (gate.lhs >= g) throw FormatError("gate " + std::to_string(g) + " is not topological");
        break;
    }
  }
}

bool BoolCircuit::eval(std::span<const std::size_t> bits) const {
  if (bits.size() < num_inputs_)
    throw DimensionError("circuit needs " + std::to_string(num_inputs_) + " inputs, got " +
                         std::to_string(bits.size()));
  std::vector<char> val(gates_.size());
  for (std::size_t g = 0; g < gates_.size(); ++g) {
    const Gate& gate = gates_[g];
    switch (gate.op) {
      case GateOp::Input: val[g] = bits[gate.lhs] != 0; break;
      case GateOp::Const: val[g] = gate.value; break;
      case GateOp::Not: val[g] = !val[gate.lhs]; break;
      case GateOp::And: val[g] = val[gate.lhs] && val[gate.rhs]; break;
      case GateOp::Or: val[g] = val[gate.lhs] || val[gate.rhs]; break;
    }
  }
  return val[output_];
}

BoolCircuit BoolCircuit::remap_inputs(std::span<const std::size_t> map,
                                      std::size_t num_inputs) const {
  if (map.size() < num_inputs_) throw DimensionError("input map too short");
  auto gates = gates_;
  for (auto& g : gates)
    if (g.op == GateOp::Input) g.lhs = map[g.lhs];
  return BoolCircuit(num_inputs, std::move(gates), output_);
}

// ---------------------------------------------------------------- builder

std::size_t CircuitBuilder::push(Gate g) {
  gates_.push_back(g);
  return gates_.size() - 1;
}

std::size_t CircuitBuilder::input(std::size_t i) {
  if (i >= num_inputs_) throw DimensionError("input " + std::to_string(i) + " out of range");
  return push({GateOp::Input, i, 0, false});
}
std::size_t CircuitBuilder::constant(bool value) { return push({GateOp::Const, 0, 0, value}); }
std::size_t CircuitBuilder::negate(std::size_t g) { return push({GateOp::Not, g, 0, false}); }
std::size_t CircuitBuilder::conj(std::size_t g, std::size_t h) {
  return push({GateOp::And, g, h, false});
}
std::size_t CircuitBuilder::disj(std::size_t g, std::size_t h) {
  return push({GateOp::Or, g, h, false});
}

std::size_t CircuitBuilder::embed(const BoolCircuit& c, std::span<const std::size_t> inputs) {
  const std::size_t base = gates_.size();
  for (Gate g : c.gates()) {
    switch (g.op) {
      case GateOp::Input: g.lhs = inputs[g.lhs]; break;
      case GateOp::Const: break;
      case GateOp::Not: g.lhs += base; break;
      case GateOp::And:
      case GateOp::Or:
        g.lhs += base;
        g.rhs += base;
        break;
    }
    push(g);
  }
  return base + c.output();
}

BoolCircuit CircuitBuilder::build(std::size_t output) const {
  return BoolCircuit(num_inputs_, gates_, output);
}

// ---------------------------------------------------------------- formulas

BoolCircuit compile_cnf(const Cnf& cnf) {
  CircuitBuilder b(cnf.num_vars);
  std::vector<std::optional<std::size_t>> inputs(cnf.num_vars);
  auto var = [&](std::size_t v) {
    if (!inputs[v]) inputs[v] = b.input(v);
    return *inputs[v];
  };
  std::optional<std::size_t> all;
  for (const auto& clause : cnf.clauses) {
    std::optional<std::size_t> any;
    for (int lit : clause) {
      const std::size_t v = static_cast<std::size_t>(lit > 0 ? lit : -lit) - 1;
      std::size_t g = var(v);
      if (lit < 0) g = b.negate(g);
      any = any ? b.disj(*any, g) : g;
    }
    if (!any) any = b.constant(false);
    all = all ? b.conj(*all, *any) : *any;
  }
  if (!all) all = b.constant(true);
  return b.build(*all);
}

static void validate_cnf(const Cnf& cnf) {
  for (const auto& clause : cnf.clauses)
    for (int lit : clause) {
      if (lit == 0) throw FormatError("zero literal inside a clause");
      const auto v = static_cast<std::size_t>(lit > 0 ? lit : -lit);
      if (v > cnf.num_vars)
        throw FormatError("literal " + std::to_string(lit) + " exceeds variable count " +
                          std::to_string(cnf.num_vars));
    }
}

Formula Formula::from_cnf(Cnf cnf) {
  validate_cnf(cnf);
  Formula f;
  f.circuit_ = compile_cnf(cnf);
  f.cnf_ = std::move(cnf);
  return f;
}

Formula Formula::from_circuit(BoolCircuit circuit) {
  Formula f;
  f.circuit_ = std::move(circuit);
  return f;
}

Formula Formula::from_truth_table(std::size_t num_vars, std::uint64_t table) {
  if (num_vars > 6) throw CapacityError("truth tables are limited to 6 variables");
  Cnf cnf{num_vars, {}};
  for (std::uint64_t row = 0; row < (std::uint64_t{1} << num_vars); ++row) {
    if ((table >> row) & 1u) continue;
    std::vector<int> clause;
    for (std::size_t i = 0; i < num_vars; ++i) {
      const int v = static_cast<int>(i) + 1;
      clause.push_back(((row >> i) & 1u) ? -v : v);
    }
    cnf.clauses.push_back(std::move(clause));
  }
  return from_cnf(std::move(cnf));
}

bool Formula::eval_mask(std::uint64_t assignment) const {
  std::vector<std::size_t> bits(num_vars());
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = (assignment >> i) & 1u;
  return eval(bits);
}

std::size_t QBF::num_universal() const {
  return static_cast<std::size_t>(std::count_if(
      prefix.begin(), prefix.end(), [](const auto& q) { return q.first == Quantifier::Forall; }));
}

void validate_qbf(const QBF& q) {
  std::set<std::size_t> seen;
  for (const auto& [kind, v] : q.prefix) {
    if (v == 0 || v > q.matrix.num_vars())
      throw FormatError("quantified variable " + std::to_string(v) + " out of range");
    if (!seen.insert(v).second)
      throw FormatError("variable " + std::to_string(v) + " quantified twice");
  }
  for (const auto& g : q.matrix.circuit().gates())
    if (g.op == GateOp::Input && !seen.count(g.lhs + 1))
      throw FormatError("matrix variable " + std::to_string(g.lhs + 1) + " is free");
}

// ---------------------------------------------------------------- succinct

void SuccinctProblem::validate() const {
  if (actions.empty()) throw FormatError("succinct problem needs at least one action");
  if (terms.size() != actions.size())
    throw FormatError("expected one term list per action");
  for (const auto& list : terms)
    for (const auto& t : list)
      if (t.circuit.num_inputs() > n)
        throw FormatError("term circuit reads more than n inputs");
}

Rational SuccinctProblem::utility(ActionIndex a, std::span<const std::size_t> s) const {
  if (a >= terms.size()) throw DimensionError("action out of range");
  if (s.size() != n) throw DimensionError("state length differs from n");
  Rational total = 0;
  for (const auto& t : terms[a])
    if (t.circuit.eval(s)) total += t.weight;
  return total;
}

std::size_t SuccinctProblem::gate_count() const {
  std::size_t total = 0;
  for (const auto& list : terms)
    for (const auto& t : list) total += t.circuit.size();
  return total;
}

DecisionProblem expand(const SuccinctProblem& sp, const Budgets& budgets) {
  sp.validate();
  if (sp.n >= 63 || (std::uint64_t{1} << sp.n) * sp.actions.size() > budgets.expansion_entries)
    throw CapacityError("expansion of " + std::to_string(sp.actions.size()) + " actions over 2^" +
                        std::to_string(sp.n) + " states exceeds budget of " +
                        std::to_string(budgets.expansion_entries) + " entries");
  return DecisionProblem::tabulate(sp.actions, std::vector<std::size_t>(sp.n, 2),
                                   [&](ActionIndex a, const State& s) { return sp.utility(a, s); });
}

std::size_t instance_length(const SuccinctProblem& sp) {
  return sp.actions.size() + sp.n + sp.gate_count();
}

// ---------------------------------------------------------------- DIMACS

namespace {

struct LineReader {
  std::string_view text;
  std::size_t line_no = 0;

  bool next(std::string_view& line) {
    while (!text.empty()) {
      const auto nl = text.find('\n');
      line = text.substr(0, nl);
      text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      const auto first = line.find_first_not_of(" \t");
      if (first == std::string_view::npos) continue;
      line = line.substr(first);
      if (line[0] == 'c') continue;
      return true;
    }
    return false;
  }
};

std::vector<long long> parse_ints(std::string_view line, std::size_t line_no) {
  std::istringstream in{std::string(line)};
  std::vector<long long> out;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      throw FormatError("expected integer, got '" + tok + "'", line_no);
    }
    if (used != tok.size()) throw FormatError("expected integer, got '" + tok + "'", line_no);
    out.push_back(v);
  }
  return out;
}

struct Header {
  std::size_t vars = 0;
  std::size_t clauses = 0;
};

Header parse_header(LineReader& reader) {
  std::string_view line;
  if (!reader.next(line)) throw FormatError("missing 'p cnf' header", reader.line_no);
  std::istringstream in{std::string(line)};
  std::string p, fmt;
  long long v = -1, c = -1;
  in >> p >> fmt >> v >> c;
  std::string extra;
  if (p != "p" || fmt != "cnf" || in.fail() || v < 0 || c < 0 || (in >> extra))
    throw FormatError("malformed header '" + std::string(line) + "'", reader.line_no);
  return {static_cast<std::size_t>(v), static_cast<std::size_t>(c)};
}

void read_clauses(LineReader& reader, std::string_view first, bool have_first, Cnf& cnf,
                  std::size_t expected) {
  std::vector<int> current;
  std::size_t last_line = reader.line_no;
  auto consume = [&](std::string_view line) {
    if (line[0] == '%') return false;  // SATLIB trailer
    for (long long lit : parse_ints(line, reader.line_no)) {
      if (lit == 0) {
        cnf.clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      const auto v = static_cast<std::size_t>(lit > 0 ? lit : -lit);
      if (v > cnf.num_vars)
        throw FormatError("literal " + std::to_string(lit) + " exceeds declared variable count " +
                          std::to_string(cnf.num_vars),
                          reader.line_no);
      current.push_back(static_cast<int>(lit));
    }
    last_line = reader.line_no;
    return true;
  };
  bool go = !have_first || consume(first);
  std::string_view line;
  while (go && reader.next(line)) go = consume(line);
  if (!current.empty()) throw FormatError("last clause is not terminated by 0", last_line);
  if (cnf.clauses.size() != expected)
    throw FormatError("header declares " + std::to_string(expected) + " clauses, found " +
                          std::to_string(cnf.clauses.size()),
                      last_line);
}

}  // namespace

Cnf parse_dimacs(std::string_view text) {
  LineReader reader{text};
  const Header h = parse_header(reader);
  Cnf cnf{h.vars, {}};
  read_clauses(reader, {}, false, cnf, h.clauses);
  return cnf;
}

QBF parse_qdimacs(std::string_view text) {
  LineReader reader{text};
  const Header h = parse_header(reader);
  QBF q;
  std::set<std::size_t> seen;
  std::string_view line;
  bool have_line = false;
  while (reader.next(line)) {
    if (line[0] != 'e' && line[0] != 'a') {
      have_line = true;
      break;
    }
    const Quantifier kind = line[0] == 'e' ? Quantifier::Exists : Quantifier::Forall;
    auto nums = parse_ints(line.substr(1), reader.line_no);
    if (nums.empty() || nums.back() != 0)
      throw FormatError("quantifier line is not terminated by 0", reader.line_no);
    nums.pop_back();
    for (long long v : nums) {
      if (v <= 0 || static_cast<std::size_t>(v) > h.vars)
        throw FormatError("quantified variable " + std::to_string(v) + " out of range",
                          reader.line_no);
      if (!seen.insert(static_cast<std::size_t>(v)).second)
        throw FormatError("variable " + std::to_string(v) + " quantified twice", reader.line_no);
      q.prefix.emplace_back(kind, static_cast<std::size_t>(v));
    }
  }
  Cnf cnf{h.vars, {}};
  read_clauses(reader, line, have_line, cnf, h.clauses);
  // Free matrix variables are existential in the outermost block.
  std::set<std::size_t> free_vars;
  for (const auto& clause : cnf.clauses)
    for (int lit : clause) {
      const auto v = static_cast<std::size_t>(lit > 0 ? lit : -lit);
      if (!seen.count(v)) free_vars.insert(v);
    }
  std::vector<std::pair<Quantifier, std::size_t>> outer;
  for (auto v : free_vars) outer.emplace_back(Quantifier::Exists, v);
  q.prefix.insert(q.prefix.begin(), outer.begin(), outer.end());
  q.matrix = Formula::from_cnf(std::move(cnf));
  return q;
}

std::string write_dimacs(const Cnf& cnf) {
  std::ostringstream out;
  out << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
  for (const auto& clause : cnf.clauses) {
    for (int lit : clause) out << lit << ' ';
    out << "0\n";
  }
  return out.str();
}

std::string write_qdimacs(const QBF& q) {
  if (!q.matrix.cnf()) throw FormatError("QDIMACS output needs a CNF matrix");
  const Cnf& cnf = *q.matrix.cnf();
  std::ostringstream out;
  out << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
  for (std::size_t k = 0; k < q.prefix.size();) {
    const Quantifier kind = q.prefix[k].first;
    out << (kind == Quantifier::Exists ? 'e' : 'a');
    for (; k < q.prefix.size() && q.prefix[k].first == kind; ++k) out << ' ' << q.prefix[k].second;
    out << " 0\n";
  }
  for (const auto& clause : cnf.clauses) {
    for (int lit : clause) out << lit << ' ';
    out << "0\n";
  }
  return out.str();
}

// ---------------------------------------------------------------- oracles

std::uint64_t count_models(const Formula& f, const Budgets& budgets) {
  if (f.num_vars() > budgets.formula_vars)
    throw CapacityError("formula has " + std::to_string(f.num_vars()) +
                        " variables, oracle budget is " + std::to_string(budgets.formula_vars));
  std::vector<std::size_t> bits(f.num_vars(), 0);
  std::uint64_t models = 0;
  for (std::uint64_t row = 0; row < (std::uint64_t{1} << f.num_vars()); ++row) {
    for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = (row >> i) & 1u;
    models += f.eval(bits);
  }
  return models;
}

bool is_tautology_oracle(const Formula& f, const Budgets& budgets) {
  return count_models(f, budgets) == (std::uint64_t{1} << f.num_vars());
}

namespace {

bool game(const QBF& q, std::size_t depth, std::vector<std::size_t>& bits) {
  if (depth == q.prefix.size()) return q.matrix.eval(bits);
  const auto [kind, v] = q.prefix[depth];
  bool result = kind == Quantifier::Forall;
  for (std::size_t b = 0; b < 2; ++b) {
    bits[v - 1] = b;
    const bool sub = game(q, depth + 1, bits);
    if (kind == Quantifier::Exists && sub) { result = true; break; }
    if (kind == Quantifier::Forall && !sub) { result = false; break; }
  }
  bits[v - 1] = 0;
  return result;
}

}  // namespace

bool eval_qbf_oracle(const QBF& q, const Budgets& budgets) {
  validate_qbf(q);
  if (q.prefix.size() > budgets.qbf_vars)
    throw CapacityError("QBF has " + std::to_string(q.prefix.size()) +
                        " quantifiers, oracle budget is " + std::to_string(budgets.qbf_vars));
  std::vector<std::size_t> bits(q.matrix.num_vars(), 0);
  return game(q, 0, bits);
}

}  // namespace relevance
