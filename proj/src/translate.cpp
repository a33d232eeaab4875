#include "relevance/translate.hpp"

#include <algorithm>
#include <set>

#include "relevance/errors.hpp"

namespace relevance {

// ---------------------------------------------------------------- config

void ConfigModel::validate() const {
  const std::set<std::string> known(behaviors.begin(), behaviors.end());
  if (known.size() != behaviors.size()) throw FormatError("behavior names must be distinct");
  for (const auto& t : target)
    if (!known.count(t)) throw FormatError("target names unknown behavior '" + t + "'");
  std::size_t combos = 1;
  for (const auto& p : parameters) {
    if (p.values.empty()) throw FormatError("parameter '" + p.name + "' has no values");
    combos *= p.values.size();
  }
  std::set<std::vector<std::size_t>> seen;
  for (const auto& row : table) {
    if (row.values.size() != parameters.size())
      throw FormatError("behavior table row has the wrong number of parameter values");
    for (std::size_t i = 0; i < parameters.size(); ++i)
      if (row.values[i] >= parameters[i].values.size())
        throw FormatError("behavior table row has a bad value for '" + parameters[i].name + "'");
    for (const auto& b : row.holds)
      if (!known.count(b)) throw FormatError("behavior table names unknown behavior '" + b + "'");
    if (!seen.insert(row.values).second)
      throw FormatError("behavior table lists a configuration twice");
  }
  if (seen.size() != combos)
    throw FormatError("behavior table covers " + std::to_string(seen.size()) + " of " +
                      std::to_string(combos) + " configurations");
}

DecisionProblem config_problem(const ConfigModel& model) {
  model.validate();
  std::vector<std::size_t> domains;
  for (const auto& p : model.parameters) domains.push_back(p.values.size());
  std::vector<std::string> actions = model.target;
  actions.push_back("none");
  std::map<std::vector<std::size_t>, const ConfigRow*> rows;
  for (const auto& r : model.table) rows[r.values] = &r;
  return DecisionProblem::tabulate(actions, domains, [&](ActionIndex a, const State& s) {
    if (a == model.target.size()) return Rational(1, 2);
    const auto& holds = rows.at(s)->holds;
    return Rational(std::count(holds.begin(), holds.end(), model.target[a]) ? 1 : 0);
  });
}

ConfigTranslation translate_config(const ConfigModel& model) {
  ConfigTranslation t{config_problem(model), {}, {}};
  t.core = minimum_sufficient_set(t.problem);
  for (auto i : t.core) t.core_names.push_back(model.parameters[i].name);
  return t;
}

// ---------------------------------------------------------------- pomdp

void OneStepPomdp::validate() const {
  const std::size_t S = states.size();
  if (S == 0 || actions.empty()) throw FormatError("POMDP needs states and actions");
  if (prior.size() != S) throw FormatError("prior needs one entry per state");
  if (observe.size() != S) throw FormatError("observation map needs one entry per state");
  for (auto o : observe)
    if (o >= observations.size()) throw FormatError("observation map names a missing observation");
  if (coarsen.size() != observations.size())
    throw FormatError("coarsening needs one label per observation");
  if (reward.size() != actions.size()) throw FormatError("reward needs one row per action");
  for (const auto& row : reward)
    if (row.size() != S) throw FormatError("reward rows need one entry per state");
}

PomdpTranslation translate_pomdp(const OneStepPomdp& pomdp) {
  pomdp.validate();
  std::vector<Rational> flat;
  for (const auto& row : pomdp.reward) flat.insert(flat.end(), row.begin(), row.end());
  StochasticProblem sp(DecisionProblem(pomdp.actions, {pomdp.states.size()}, std::move(flat)),
                       pomdp.prior);
  std::set<std::string> names(pomdp.coarsen.begin(), pomdp.coarsen.end());
  std::vector<std::string> coarse(names.begin(), names.end());
  std::vector<std::size_t> labels;
  for (auto o : pomdp.observe) {
    const auto& name = pomdp.coarsen[o];
    labels.push_back(std::lower_bound(coarse.begin(), coarse.end(), name) - coarse.begin());
  }
  StepCounter counter;
  Verdict v = check_preservation(sp, labels, counter);
  const FiberOptimizer fo = fiber_optimizer(sp, labels, counter);
  PomdpTranslation t{sp, labels, coarse, v, {}, opt_table(sp.base())};
  for (const auto& f : fo.fibers) t.coarse_optimizer[coarse[f.label]] = f.opt;
  return t;
}

// ---------------------------------------------------------------- hyperparam

void HyperparamModel::validate() const {
  if (environments.empty()) throw FormatError("hyperparameter model needs environments");
  if (alpha.empty() || gamma.empty() || epsilon.empty())
    throw FormatError("hyperparameter domains must be nonempty");
  const std::size_t H = alpha.size() * gamma.size() * epsilon.size();
  if (returns.size() != environments.size())
    throw FormatError("returns needs one row per environment");
  for (const auto& row : returns)
    if (row.size() != H)
      throw FormatError("returns rows need " + std::to_string(H) + " entries");
}

DecisionProblem hyperparam_problem(const HyperparamModel& model) {
  model.validate();
  std::vector<Rational> flat;
  for (const auto& row : model.returns) flat.insert(flat.end(), row.begin(), row.end());
  return DecisionProblem(model.environments,
                         {model.alpha.size(), model.gamma.size(), model.epsilon.size()},
                         std::move(flat));
}

HyperparamTranslation translate_hyperparam(const HyperparamModel& model) {
  HyperparamTranslation t{hyperparam_problem(model), true, std::nullopt};
  const DecisionProblem& P = t.problem;
  const CoordSet kept{0, 2};
  for (ActionIndex e = 0; e < P.num_actions(); ++e) {
    const auto row = P.action_row(e);
    const Rational best = *std::max_element(row.begin(), row.end());
    std::set<std::size_t> projected;
    for (StateIndex h = 0; h < P.num_states(); ++h)
      if (row[h] == best) projected.insert(projection_key(P, h, kept));
    for (StateIndex h = 0; h < P.num_states(); ++h) {
      const bool member = row[h] == best;
      if (member != (projected.count(projection_key(P, h, kept)) > 0)) {
        t.redundant = false;
        t.witness = std::make_pair(e, h);
        return t;
      }
    }
  }
  return t;
}

// ---------------------------------------------------------------- json

namespace {

std::vector<std::string> names_of(const Json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& x : j) out.push_back(x.get<std::string>());
  return out;
}

std::size_t index_of(const std::vector<std::string>& names, const std::string& name,
                     const char* what) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw FormatError(std::string(what) + " '" + name + "' is not declared");
  return static_cast<std::size_t>(it - names.begin());
}

void check_header(const Json& j, const char* kind) {
  if (j.value("schema", 0) != kSchemaVersion) throw FormatError("unsupported schema version");
  if (j.value("kind", std::string{}) != kind)
    throw FormatError(std::string("expected a document of kind '") + kind + "'");
}

std::vector<std::string> optset_names(const OptSet& o, const std::vector<std::string>& actions) {
  std::vector<std::string> out;
  for (auto a : o) out.push_back(actions[a]);
  return out;
}

template <class F>
auto wrap_json(F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw FormatError(std::string("schema error: ") + e.what());
  }
}

}  // namespace

ConfigModel config_from_json(const Json& j) {
  return wrap_json([&] {
    check_header(j, "config");
    ConfigModel m;
    for (const auto& p : j.at("parameters"))
      m.parameters.push_back({p.at("name").get<std::string>(), names_of(p.at("values"), "values")});
    m.behaviors = names_of(j.at("behaviors"), "behaviors");
    m.target = names_of(j.at("target"), "target");
    for (const auto& r : j.at("table")) {
      const auto values = names_of(r.at("values"), "values");
      if (values.size() != m.parameters.size())
        throw FormatError("behavior table row has the wrong number of parameter values");
      ConfigRow row;
      for (std::size_t i = 0; i < values.size(); ++i)
        row.values.push_back(index_of(m.parameters[i].values, values[i], "value"));
      row.holds = names_of(r.at("holds"), "holds");
      m.table.push_back(std::move(row));
    }
    m.validate();
    return m;
  });
}

OneStepPomdp pomdp_from_json(const Json& j) {
  return wrap_json([&] {
    check_header(j, "pomdp");
    OneStepPomdp p;
    p.states = names_of(j.at("states"), "states");
    p.actions = names_of(j.at("actions"), "actions");
    p.observations = names_of(j.at("observations"), "observations");
    for (const auto& x : j.at("prior")) p.prior.push_back(rational_from_json(x));
    for (const auto& o : names_of(j.at("observe"), "observe"))
      p.observe.push_back(index_of(p.observations, o, "observation"));
    for (const auto& row : j.at("reward")) {
      std::vector<Rational> r;
      for (const auto& x : row) r.push_back(rational_from_json(x));
      p.reward.push_back(std::move(r));
    }
    p.coarsen = names_of(j.at("coarsen"), "coarsen");
    p.validate();
    Rational total = 0;
    for (const auto& x : p.prior) {
      if (sgn(x) < 0) throw FormatError("prior has a negative entry");
      total += x;
    }
    if (total != 1) throw FormatError("prior sums to " + format_rational(total));
    return p;
  });
}

HyperparamModel hyperparam_from_json(const Json& j) {
  return wrap_json([&] {
    check_header(j, "hyperparam");
    HyperparamModel m;
    m.environments = names_of(j.at("environments"), "environments");
    m.alpha = names_of(j.at("alpha"), "alpha");
    m.gamma = names_of(j.at("gamma"), "gamma");
    m.epsilon = names_of(j.at("epsilon"), "epsilon");
    for (const auto& row : j.at("returns")) {
      std::vector<Rational> r;
      for (const auto& x : row) r.push_back(rational_from_json(x));
      m.returns.push_back(std::move(r));
    }
    m.validate();
    return m;
  });
}

Json config_report(const ConfigTranslation& t) {
  Json j;
  j["translation"] = "config";
  j["core"] = t.core_names;
  j["core_coords"] = t.core.members();
  j["instance"] = to_json(t.problem);
  return j;
}

Json pomdp_report(const PomdpTranslation& t) {
  const auto& actions = t.problem.base().actions();
  Json j;
  j["translation"] = "pomdp";
  j["preserving"] = t.preservation.yes();
  j["verdict"] = verdict_to_json(t.preservation);
  Json coarse = Json::object();
  for (const auto& [label, o] : t.coarse_optimizer) coarse[label] = optset_names(o, actions);
  j["coarse_optimizer"] = std::move(coarse);
  Json full = Json::array();
  for (const auto& o : t.full_optimizer) full.push_back(optset_names(o, actions));
  j["full_optimizer"] = std::move(full);
  j["instance"] = to_json(t.problem);
  return j;
}

Json hyperparam_report(const HyperparamModel& model, const HyperparamTranslation& t) {
  Json j;
  j["translation"] = "hyperparam";
  j["gamma_redundant"] = t.redundant;
  if (t.witness) {
    const State h = t.problem.decode(t.witness->second);
    j["witness"] = {{"environment", model.environments[t.witness->first]},
                    {"alpha", model.alpha[h[0]]},
                    {"gamma", model.gamma[h[1]]},
                    {"epsilon", model.epsilon[h[2]]}};
  }
  j["instance"] = to_json(t.problem);
  return j;
}

}  // namespace relevance
