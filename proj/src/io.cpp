#include "relevance/io.hpp"

#include <fstream>
#include <sstream>

#include "relevance/errors.hpp"

namespace relevance {

const char* instance_kind(const Instance& instance) {
  static constexpr const char* names[] = {"explicit", "succinct", "stochastic", "sequential",
                                          "tensor",   "tree",     "pairwise"};
  return names[instance.index()];
}

Json rational_to_json(const Rational& r) { return format_rational(r); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
  throw FormatError("expected a rational string \"p/q\", got " + j.dump());
}

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw FormatError(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string("missing field '") + key + "'");
  return *it;
}

std::size_t as_size(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    throw FormatError(std::string(what) + " must be a nonnegative integer");
  return j.get<std::size_t>();
}

std::vector<std::size_t> size_list(const Json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be an array");
  std::vector<std::size_t> out;
  for (const auto& x : j) out.push_back(as_size(x, what));
  return out;
}

std::vector<std::string> string_list(const Json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (!x.is_string()) throw FormatError(std::string(what) + " entries must be strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

Json rationals_to_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& r : v) out.push_back(rational_to_json(r));
  return out;
}

std::vector<Rational> rational_list(const Json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be an array");
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(rational_from_json(x));
  return out;
}

std::vector<std::vector<Rational>> rational_matrix(const Json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be an array of arrays");
  std::vector<std::vector<Rational>> out;
  for (const auto& row : j) out.push_back(rational_list(row, what));
  return out;
}

Json matrix_to_json(const std::vector<std::vector<Rational>>& m) {
  Json out = Json::array();
  for (const auto& row : m) out.push_back(rationals_to_json(row));
  return out;
}

void check_table_budget(std::size_t actions, const std::vector<std::size_t>& domains,
                        const Budgets& budgets) {
  std::uint64_t entries = actions;
  for (auto d : domains) {
    if (d != 0 && entries > budgets.expansion_entries / d)
      throw CapacityError("utility table exceeds the expansion budget of " +
                          std::to_string(budgets.expansion_entries) + " entries");
    entries *= d;
  }
  if (entries > budgets.expansion_entries)
    throw CapacityError("utility table exceeds the expansion budget of " +
                        std::to_string(budgets.expansion_entries) + " entries");
}

Json header(const char* kind) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = kind;
  return j;
}

void explicit_body(Json& j, const DecisionProblem& p) {
  j["actions"] = p.actions();
  j["domains"] = p.domains();
  Json rows = Json::array();
  for (ActionIndex a = 0; a < p.num_actions(); ++a) {
    const auto row = p.action_row(a);
    rows.push_back(rationals_to_json({row.begin(), row.end()}));
  }
  j["utilities"] = std::move(rows);
}

DecisionProblem explicit_from(const Json& j, const Budgets& budgets) {
  auto actions = string_list(field(j, "actions"), "actions");
  auto domains = size_list(field(j, "domains"), "domains");
  check_table_budget(actions.size(), domains, budgets);
  const auto rows = rational_matrix(field(j, "utilities"), "utilities");
  if (rows.size() != actions.size())
    throw FormatError("utilities has " + std::to_string(rows.size()) + " rows for " +
                      std::to_string(actions.size()) + " actions");
  std::vector<Rational> flat;
  for (const auto& row : rows) flat.insert(flat.end(), row.begin(), row.end());
  return DecisionProblem(std::move(actions), std::move(domains), std::move(flat));
}

Json formula_to_json(const Formula& f) {
  if (f.cnf()) {
    Json j;
    j["type"] = "cnf";
    j["num_vars"] = f.cnf()->num_vars;
    j["clauses"] = f.cnf()->clauses;
    return j;
  }
  Json j;
  j["type"] = "circuit";
  j["circuit"] = circuit_to_json(f.circuit());
  return j;
}

Json source_to_json(const GadgetSource& source) {
  return std::visit(
      [](const auto& x) -> Json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Formula>) {
          return formula_to_json(x);
        } else if constexpr (std::is_same_v<T, QBF>) {
          Json j;
          j["type"] = "qbf";
          Json prefix = Json::array();
          for (const auto& [q, v] : x.prefix)
            prefix.push_back(Json::array({q == Quantifier::Exists ? "e" : "a", v}));
          j["prefix"] = std::move(prefix);
          j["matrix"] = formula_to_json(x.matrix);
          return j;
        } else {
          Json j = setcover_to_json(x);
          j.erase("schema");
          j.erase("kind");
          j["type"] = "setcover";
          return j;
        }
      },
      source);
}

}  // namespace

Json circuit_to_json(const BoolCircuit& c) {
  Json gates = Json::array();
  for (const auto& g : c.gates()) {
    switch (g.op) {
      case GateOp::Input: gates.push_back({{"op", "input"}, {"index", g.lhs}}); break;
      case GateOp::Const: gates.push_back({{"op", "const"}, {"value", g.value}}); break;
      case GateOp::Not: gates.push_back({{"op", "not"}, {"args", {g.lhs}}}); break;
      case GateOp::And: gates.push_back({{"op", "and"}, {"args", {g.lhs, g.rhs}}}); break;
      case GateOp::Or: gates.push_back({{"op", "or"}, {"args", {g.lhs, g.rhs}}}); break;
    }
  }
  Json j;
  j["inputs"] = c.num_inputs();
  j["gates"] = std::move(gates);
  j["output"] = c.output();
  return j;
}

BoolCircuit circuit_from_json(const Json& j) {
  const std::size_t inputs = as_size(field(j, "inputs"), "inputs");
  std::vector<Gate> gates;
  const Json& list = field(j, "gates");
  if (!list.is_array()) throw FormatError("gates must be an array");
  for (const auto& g : list) {
    const std::string op = field(g, "op").get<std::string>();
    Gate gate;
    auto args = [&](std::size_t count) {
      const auto a = size_list(field(g, "args"), "args");
      if (a.size() != count)
        throw FormatError("gate '" + op + "' takes " + std::to_string(count) + " operands");
      return a;
    };
    if (op == "input") {
      gate.op = GateOp::Input;
      gate.lhs = as_size(field(g, "index"), "index");
    } else if (op == "const") {
      gate.op = GateOp::Const;
      const Json& v = field(g, "value");
      if (!v.is_boolean()) throw FormatError("const gate value must be a boolean");
      gate.value = v.get<bool>();
    } else if (op == "not") {
      gate.op = GateOp::Not;
      gate.lhs = args(1)[0];
    } else if (op == "and" || op == "or") {
      gate.op = op == "and" ? GateOp::And : GateOp::Or;
      const auto a = args(2);
      gate.lhs = a[0];
      gate.rhs = a[1];
    } else {
      throw FormatError("unknown gate op '" + op + "'");
    }
    gates.push_back(gate);
  }
  return BoolCircuit(inputs, std::move(gates), as_size(field(j, "output"), "output"));
}

Json to_json(const Instance& instance) {
  Json j = header(instance_kind(instance));
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, DecisionProblem>) {
          explicit_body(j, x);
        } else if constexpr (std::is_same_v<T, SuccinctProblem>) {
          j["n"] = x.n;
          j["actions"] = x.actions;
          Json terms = Json::array();
          for (const auto& list : x.terms) {
            Json per = Json::array();
            for (const auto& t : list)
              per.push_back({{"weight", rational_to_json(t.weight)},
                             {"circuit", circuit_to_json(t.circuit)}});
            terms.push_back(std::move(per));
          }
          j["terms"] = std::move(terms);
        } else if constexpr (std::is_same_v<T, StochasticProblem>) {
          explicit_body(j, x.base());
          j["distribution"] = rationals_to_json(x.dist());
        } else if constexpr (std::is_same_v<T, SequentialProblem>) {
          explicit_body(j, x.base());
          j["horizon"] = x.horizon();
          j["mode"] = x.mode() == SeqMode::Backup ? "backup" : "immediate";
          Json rows = Json::array();
          for (const auto& row : x.transitions()) {
            Json r = Json::array();
            for (const auto& [t, p] : row) r.push_back(Json::array({t, rational_to_json(p)}));
            rows.push_back(std::move(r));
          }
          j["transitions"] = std::move(rows);
          if (x.observations()) j["observations"] = *x.observations();
        } else if constexpr (std::is_same_v<T, TensorRankUtility>) {
          j["actions"] = x.actions;
          j["domains"] = x.domains;
          j["weights"] = rationals_to_json(x.weights);
          j["action_factors"] = matrix_to_json(x.action_factors);
          Json cf = Json::array();
          for (const auto& r : x.coord_factors) cf.push_back(matrix_to_json(r));
          j["coord_factors"] = std::move(cf);
        } else if constexpr (std::is_same_v<T, TreeUtility>) {
          j["actions"] = x.actions;
          j["domains"] = x.domains;
          j["parent"] = x.parent;
          j["local"] = matrix_to_json(x.local);
        } else {
          j["actions"] = x.actions;
          j["domains"] = x.domains;
          j["unary"] = matrix_to_json(x.unary);
          Json edges = Json::array();
          for (const auto& e : x.edges)
            edges.push_back({{"u", e.u}, {"v", e.v}, {"table", rationals_to_json(e.table)}});
          j["edges"] = std::move(edges);
          Json tree = Json::array();
          for (const auto& [a, b] : x.decomposition.edges) tree.push_back(Json::array({a, b}));
          j["decomposition"] = {{"bags", x.decomposition.bags},
                                {"edges", std::move(tree)},
                                {"width", x.decomposition.width}};
        }
      },
      instance);
  return j;
}

namespace {

Instance parse_instance(const Json& j, const Budgets& budgets) {
  const Json& schema = field(j, "schema");
  if (!schema.is_number_integer() || schema.get<int>() != kSchemaVersion)
    throw FormatError("unsupported schema version " + schema.dump());
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "gadget") return parse_instance(field(j, "instance"), budgets);
  if (kind == "explicit") return explicit_from(j, budgets);
  if (kind == "succinct") {
    SuccinctProblem sp;
    sp.n = as_size(field(j, "n"), "n");
    sp.actions = string_list(field(j, "actions"), "actions");
    const Json& terms = field(j, "terms");
    if (!terms.is_array()) throw FormatError("terms must be an array");
    for (const auto& list : terms) {
      if (!list.is_array()) throw FormatError("terms entries must be arrays");
      std::vector<WeightedTerm> per;
      for (const auto& t : list)
        per.push_back({circuit_from_json(field(t, "circuit")), rational_from_json(field(t, "weight"))});
      sp.terms.push_back(std::move(per));
    }
    sp.validate();
    return sp;
  }
  if (kind == "stochastic")
    return StochasticProblem(explicit_from(j, budgets),
                             rational_list(field(j, "distribution"), "distribution"));
  if (kind == "sequential") {
    DecisionProblem base = explicit_from(j, budgets);
    const std::string mode = field(j, "mode").get<std::string>();
    if (mode != "backup" && mode != "immediate")
      throw FormatError("mode must be 'backup' or 'immediate'");
    std::vector<TransitionRow> rows;
    if (auto it = j.find("transitions"); it != j.end()) {
      for (const auto& row : *it) {
        TransitionRow r;
        for (const auto& entry : row) {
          if (!entry.is_array() || entry.size() != 2)
            throw FormatError("transition entries are [state, probability] pairs");
          r.emplace_back(as_size(entry[0], "transition target"), rational_from_json(entry[1]));
        }
        rows.push_back(std::move(r));
      }
    }
    std::optional<std::vector<std::size_t>> obs;
    if (auto it = j.find("observations"); it != j.end()) obs = size_list(*it, "observations");
    return SequentialProblem(std::move(base), std::move(rows),
                             as_size(field(j, "horizon"), "horizon"),
                             mode == "backup" ? SeqMode::Backup : SeqMode::Immediate,
                             std::move(obs));
  }
  if (kind == "tensor") {
    TensorRankUtility tu;
    tu.actions = string_list(field(j, "actions"), "actions");
    tu.domains = size_list(field(j, "domains"), "domains");
    tu.weights = rational_list(field(j, "weights"), "weights");
    tu.action_factors = rational_matrix(field(j, "action_factors"), "action_factors");
    for (const auto& r : field(j, "coord_factors"))
      tu.coord_factors.push_back(rational_matrix(r, "coord_factors"));
    tu.validate();
    return tu;
  }
  if (kind == "tree") {
    TreeUtility tu;
    tu.actions = string_list(field(j, "actions"), "actions");
    tu.domains = size_list(field(j, "domains"), "domains");
    const Json& parent = field(j, "parent");
    if (!parent.is_array()) throw FormatError("parent must be an array");
    for (const auto& p : parent) {
      if (!p.is_number_integer()) throw FormatError("parent entries must be integers");
      tu.parent.push_back(p.get<long>());
    }
    tu.local = rational_matrix(field(j, "local"), "local");
    tu.validate();
    return tu;
  }
  if (kind == "pairwise") {
    PairwiseUtility pu;
    pu.actions = string_list(field(j, "actions"), "actions");
    pu.domains = size_list(field(j, "domains"), "domains");
    pu.unary = rational_matrix(field(j, "unary"), "unary");
    for (const auto& e : field(j, "edges"))
      pu.edges.push_back({as_size(field(e, "u"), "u"), as_size(field(e, "v"), "v"),
                          rational_list(field(e, "table"), "table")});
    const Json& d = field(j, "decomposition");
    for (const auto& bag : field(d, "bags")) pu.decomposition.bags.push_back(size_list(bag, "bag"));
    for (const auto& e : field(d, "edges")) {
      const auto pair = size_list(e, "decomposition edge");
      if (pair.size() != 2) throw FormatError("decomposition edges are [bag, bag] pairs");
      pu.decomposition.edges.emplace_back(pair[0], pair[1]);
    }
    pu.decomposition.width = as_size(field(d, "width"), "width");
    pu.validate_tables();
    pu.validate_decomposition();
    return pu;
  }
  throw FormatError("unknown instance kind '" + kind + "'");
}

}  // namespace

Instance instance_from_json(const Json& j, const Budgets& budgets) {
  try {
    return parse_instance(j, budgets);
  } catch (const Json::exception& e) {
    throw FormatError(std::string("schema error: ") + e.what());
  }
}

Json gadget_to_json(const GadgetOutput& g) {
  Json j = header("gadget");
  j["gadget"] = g.gadget;
  j["source"] = source_to_json(g.source);
  j["query"] = {{"kind", to_string(g.query.kind)},
                {"coords", g.query.coords.members()},
                {"k", g.query.k}};
  j["accounting"] = {{"input_size", g.accounting.input_size},
                     {"output_size", g.accounting.output_size},
                     {"coords", g.accounting.coords}};
  if (!g.admissible.empty()) j["admissible"] = g.admissible;
  j["instance"] = std::visit([](const auto& x) { return to_json(Instance(x)); }, g.instance);
  return j;
}

std::string witness_to_string(const Witness& w) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "none";
        } else if constexpr (std::is_same_v<T, StatePair>) {
          return "states (" + std::to_string(x.first) + ", " + std::to_string(x.second) + ")";
        } else if constexpr (std::is_same_v<T, ViolatingState>) {
          return "state " + std::to_string(x.state);
        } else if constexpr (std::is_same_v<T, Assignment>) {
          return "fiber " + x.to_string();
        } else if constexpr (std::is_same_v<T, AnchorAction>) {
          return "fiber " + x.alpha.to_string() + " action " + std::to_string(x.action);
        } else {
          return "coords " + x.to_string();
        }
      },
      w);
}

Json verdict_to_json(const Verdict& v) {
  Json j;
  j["answer"] = v.yes() ? "YES" : "NO";
  Json w;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          w = nullptr;
        } else if constexpr (std::is_same_v<T, StatePair>) {
          w = {{"type", "state_pair"}, {"states", {x.first, x.second}}};
        } else if constexpr (std::is_same_v<T, ViolatingState>) {
          w = {{"type", "violating_state"}, {"state", x.state}};
        } else if constexpr (std::is_same_v<T, Assignment>) {
          w = {{"type", "assignment"}, {"coords", x.coords.members()}, {"values", x.values}};
        } else if constexpr (std::is_same_v<T, AnchorAction>) {
          w = {{"type", "anchor_action"},
               {"coords", x.alpha.coords.members()},
               {"values", x.alpha.values},
               {"action", x.action}};
        } else {
          w = {{"type", "coords"}, {"coords", x.members()}};
        }
      },
      v.witness);
  j["witness"] = std::move(w);
  j["steps"] = v.steps;
  j["evals"] = v.evals;
  j["setup"] = v.setup;
  j["checks"] = v.checks;
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

SetCoverInstance setcover_from_json(const Json& j) {
  SetCoverInstance sc;
  sc.universe = as_size(field(j, "universe"), "universe");
  const Json& sets = field(j, "sets");
  if (!sets.is_array()) throw FormatError("sets must be an array");
  for (const auto& s : sets) sc.sets.push_back(size_list(s, "set"));
  sc.validate();
  return sc;
}

Json setcover_to_json(const SetCoverInstance& sc) {
  Json j = header("setcover");
  j["universe"] = sc.universe;
  j["sets"] = sc.sets;
  return j;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json(const std::filesystem::path& path) {
  try {
    return Json::parse(read_text(path));
  } catch (const Json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

Instance load_instance(const std::filesystem::path& path, const Budgets& budgets) {
  const Json j = read_json(path);
  try {
    return instance_from_json(j, budgets);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  } catch (const Json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

DecisionProblem explicit_problem(const Instance& instance, const Budgets& budgets) {
  return std::visit(
      [&](const auto& x) -> DecisionProblem {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, DecisionProblem>) {
          return x;
        } else if constexpr (std::is_same_v<T, SuccinctProblem>) {
          return expand(x, budgets);
        } else if constexpr (std::is_same_v<T, StochasticProblem> ||
                             std::is_same_v<T, SequentialProblem>) {
          return x.base();
        } else {
          check_table_budget(x.actions.size(), x.domains, budgets);
          if constexpr (std::is_same_v<T, TensorRankUtility>)
            return expand_tensor(x);
          else if constexpr (std::is_same_v<T, TreeUtility>)
            return expand_tree(x);
          else
            return expand_pairwise(x);
        }
      },
      instance);
}

}  // namespace relevance
