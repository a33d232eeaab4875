#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "relevance/budget.hpp"
#include "relevance/circuit.hpp"
#include "relevance/core.hpp"
#include "relevance/reductions.hpp"
#include "relevance/sequential.hpp"
#include "relevance/stochastic.hpp"
#include "relevance/tractable.hpp"

namespace relevance {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

using Instance = std::variant<DecisionProblem, SuccinctProblem, StochasticProblem,
                              SequentialProblem, TensorRankUtility, TreeUtility, PairwiseUtility>;

// explicit, succinct, stochastic, sequential, tensor, tree, pairwise
const char* instance_kind(const Instance& instance);

// Rationals are "p/q" strings; "p" strings and JSON integers are accepted.
Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json to_json(const Instance& instance);
// Validates the schema version and kind, every table size and value, and the
// expansion budget for table-backed kinds. FormatError or CapacityError.
// A gadget document loads as its embedded instance.
Instance instance_from_json(const Json& j, const Budgets& budgets = default_budgets());

Json circuit_to_json(const BoolCircuit& c);
BoolCircuit circuit_from_json(const Json& j);

Json gadget_to_json(const GadgetOutput& g);
Json verdict_to_json(const Verdict& v);
std::string witness_to_string(const Witness& w);

SetCoverInstance setcover_from_json(const Json& j);
Json setcover_to_json(const SetCoverInstance& sc);

// File helpers. Parse errors carry the file name.
std::string read_text(const std::filesystem::path& path);
Json read_json(const std::filesystem::path& path);
Instance load_instance(const std::filesystem::path& path,
                       const Budgets& budgets = default_budgets());
void write_json(const std::filesystem::path& path, const Json& j);

// Table-backed view for queries that need explicit utilities. Expands
// succinct, tensor, tree and pairwise instances.
DecisionProblem explicit_problem(const Instance& instance,
                                 const Budgets& budgets = default_budgets());

}  // namespace relevance
