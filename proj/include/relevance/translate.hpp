#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relevance/core.hpp"
#include "relevance/io.hpp"
#include "relevance/stochastic.hpp"

namespace relevance {

// ---------------------------------------------------------------- config

struct ConfigParameter {
  std::string name;
  std::vector<std::string> values;
};

struct ConfigRow {
  std::vector<std::size_t> values;  // one value index per parameter
  std::vector<std::string> holds;   // behaviors observed under this configuration
};

// Total behavior table over every parameter combination.
struct ConfigModel {
  std::vector<ConfigParameter> parameters;
  std::vector<std::string> behaviors;
  std::vector<ConfigRow> table;
  std::vector<std::string> target;  // behaviors the simplification must preserve

  void validate() const;
};

// One action per target behavior with U = [behavior holds], plus "none" at
// 1/2, so Opt(s) is the set of target behaviors holding at s (or none).
DecisionProblem config_problem(const ConfigModel& model);

struct ConfigTranslation {
  DecisionProblem problem;
  CoordSet core;
  std::vector<std::string> core_names;
};

ConfigTranslation translate_config(const ConfigModel& model);

// ---------------------------------------------------------------- pomdp

struct OneStepPomdp {
  std::vector<std::string> states;
  std::vector<std::string> actions;
  std::vector<std::string> observations;
  std::vector<Rational> prior;
  std::vector<std::size_t> observe;         // state -> observation
  std::vector<std::vector<Rational>> reward;  // [a][s]
  std::vector<std::string> coarsen;         // observation -> coarse label

  void validate() const;
};

struct PomdpTranslation {
  StochasticProblem problem;                // one coordinate ranging over S
  std::vector<std::size_t> labels;          // phi(s) as an index into coarse_labels
  std::vector<std::string> coarse_labels;   // sorted
  Verdict preservation;
  std::map<std::string, OptSet> coarse_optimizer;  // positive-mass labels only
  std::vector<OptSet> full_optimizer;
};

PomdpTranslation translate_pomdp(const OneStepPomdp& pomdp);

// ---------------------------------------------------------------- hyperparam

// Returns f_e(h) over H = X_alpha x X_gamma x X_epsilon, indexed with alpha
// least significant: h = a + |X_alpha| (g + |X_gamma| e).
struct HyperparamModel {
  std::vector<std::string> environments;
  std::vector<std::string> alpha, gamma, epsilon;
  std::vector<std::vector<Rational>> returns;  // [e][h]

  void validate() const;
};

DecisionProblem hyperparam_problem(const HyperparamModel& model);

struct HyperparamTranslation {
  DecisionProblem problem;
  bool redundant = false;
  // First (environment, h) where membership in Opt_e differs from membership
  // of pi(h) in pi(Opt_e).
  std::optional<std::pair<std::size_t, StateIndex>> witness;
};

HyperparamTranslation translate_hyperparam(const HyperparamModel& model);

// ---------------------------------------------------------------- json

ConfigModel config_from_json(const Json& j);
OneStepPomdp pomdp_from_json(const Json& j);
HyperparamModel hyperparam_from_json(const Json& j);

Json config_report(const ConfigTranslation& t);
Json pomdp_report(const PomdpTranslation& t);
Json hyperparam_report(const HyperparamModel& model, const HyperparamTranslation& t);

}  // namespace relevance
