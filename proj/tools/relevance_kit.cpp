// relevance-kit: command-line front end.
//
// Exit codes: 0 YES, 1 NO, 2 ABSTAIN, 3 usage or input error, 4 capacity
// error, 5 any other failure.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "relevance/bench.hpp"
#include "relevance/certify.hpp"
#include "relevance/errors.hpp"
#include "relevance/io.hpp"
#include "relevance/reductions.hpp"
#include "relevance/sequential.hpp"
#include "relevance/static.hpp"
#include "relevance/stochastic.hpp"
#include "relevance/tractable.hpp"
#include "relevance/translate.hpp"

using namespace relevance;

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitAbstain = 2;
constexpr int kExitInput = 3;
constexpr int kExitCapacity = 4;
constexpr int kExitOther = 5;

struct Common {
  std::string format = "text";
  std::string path;
  std::string set;
  std::size_t k = 0;
};

CoordSet parse_set(const std::string& text) {
  std::vector<std::size_t> members;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      members.push_back(v);
    } catch (const std::logic_error&) {
      throw FormatError("bad coordinate '" + item + "' in --set");
    }
  }
  return CoordSet(std::move(members));
}

std::string optset_string(const OptSet& o, const DecisionProblem& p) {
  std::string out = "{";
  for (auto a : o) out += (out.size() > 1 ? "," : "") + p.actions()[a];
  return out + "}";
}

std::string state_string(const DecisionProblem& p, StateIndex s) {
  std::string out = std::to_string(s) + " [";
  const State digits = p.decode(s);
  for (std::size_t i = 0; i < digits.size(); ++i) out += (i ? "," : "") + std::to_string(digits[i]);
  return out + "]";
}

int emit(const Verdict& v, const DecisionProblem& shape, const std::string& format,
         const std::string& query, Json extra = Json::object(),
         const std::vector<OptSet>* table = nullptr) {
  auto opt_at = [&](StateIndex s) { return table ? (*table)[s] : opt(shape, s); };
  if (format == "json") {
    Json j;
    j["query"] = query;
    const Json body = verdict_to_json(v);
    for (auto& [key, value] : body.items()) j[key] = value;
    for (auto& [key, value] : extra.items()) j[key] = value;
    std::cout << j.dump(2) << '\n';
  } else if (format == "csv") {
    std::cout << "query,answer,witness,steps,evals,setup,checks\n"
              << query << ',' << (v.yes() ? "YES" : "NO") << ",\"" << witness_to_string(v.witness)
              << "\"," << v.steps << ',' << v.evals << ',' << v.setup << ',' << v.checks << '\n';
  } else {
    std::cout << "query: " << query << '\n'
              << "answer: " << (v.yes() ? "YES" : "NO") << '\n'
              << "witness: " << witness_to_string(v.witness) << '\n';
    if (const auto* w = std::get_if<StatePair>(&v.witness)) {
      for (auto s : {w->first, w->second})
        std::cout << "  state " << state_string(shape, s) << " opt "
                  << optset_string(opt_at(s), shape) << '\n';
    } else if (const auto* w = std::get_if<ViolatingState>(&v.witness)) {
      std::cout << "  state " << state_string(shape, w->state) << " opt "
                << optset_string(opt_at(w->state), shape) << '\n';
    }
    for (auto& [key, value] : extra.items()) std::cout << key << ": " << value.dump() << '\n';
    std::cout << "steps: " << v.steps << "  evals: " << v.evals << "  setup: " << v.setup
              << "  checks: " << v.checks << '\n';
    if (!v.note.empty()) std::cout << "note: " << v.note << '\n';
  }
  return v.yes() ? kExitYes : kExitNo;
}

template <class T>
T require_kind(const Instance& inst, const char* wanted) {
  if (const T* p = std::get_if<T>(&inst)) return *p;
  throw FormatError(std::string("expected a ") + wanted + " instance, got " + instance_kind(inst));
}

SufficiencyStrategy strategy_of(const std::string& s) {
  return s == "pairwise" ? SufficiencyStrategy::Pairwise : SufficiencyStrategy::Fiber;
}

void add_common(CLI::App* cmd, Common& c, bool with_set, bool with_k) {
  cmd->add_option("instance", c.path, "Instance file (JSON)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  if (with_set) cmd->add_option("--set", c.set, "Coordinate set, e.g. 0,2");
  if (with_k) cmd->add_option("--k", c.k, "Size threshold");
}

Formula formula_source(const std::string& path) {
  return Formula::from_cnf(parse_dimacs(read_text(path)));
}

GadgetOutput build_gadget(const std::string& kind, const std::string& path) {
  if (kind == "tautology") return gadget_tautology(formula_source(path));
  if (kind == "majsat") return gadget_majsat(formula_source(path));
  if (kind == "shifted") return gadget_shifted(formula_source(path));
  if (kind == "eth-chain") return gadget_3sat_chain(parse_dimacs(read_text(path)));
  if (kind == "ea-sat") return gadget_exists_forall(parse_qdimacs(read_text(path)));
  if (kind == "tqbf") return gadget_tqbf(parse_qdimacs(read_text(path)));
  return gadget_setcover(setcover_from_json(read_json(path)));
}

CertQueryKind cert_kind(const std::string& s) {
  static const std::map<std::string, CertQueryKind> names{
      {"sufficiency", CertQueryKind::Sufficiency},
      {"anchor", CertQueryKind::Anchor},
      {"minimum", CertQueryKind::Minimum},
      {"stoch-preservation", CertQueryKind::StochPreservation},
      {"stoch-decisiveness", CertQueryKind::StochDecisiveness},
      {"stoch-minimum", CertQueryKind::StochMinimum},
      {"seq-sufficiency", CertQueryKind::SeqSufficiency},
      {"seq-minimum", CertQueryKind::SeqMinimum}};
  return names.at(s);
}

CertInstance cert_instance(const Instance& inst, CertQueryKind kind) {
  switch (kind) {
    case CertQueryKind::StochPreservation:
    case CertQueryKind::StochDecisiveness:
    case CertQueryKind::StochMinimum:
      return require_kind<StochasticProblem>(inst, "stochastic");
    case CertQueryKind::SeqSufficiency:
    case CertQueryKind::SeqMinimum:
      return require_kind<SequentialProblem>(inst, "sequential");
    default: return explicit_problem(inst);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact decision-relevance certification toolkit"};
  app.require_subcommand(1);
  std::function<int()> run;
  Common c;

  // ---- static queries
  std::string strategy = "fiber";
  auto* check = app.add_subcommand("check", "Is the coordinate set sufficient?");
  add_common(check, c, true, false);
  check->add_option("--strategy", strategy)->check(CLI::IsMember({"fiber", "pairwise"}));
  check->callback([&] {
    run = [&] {
      const DecisionProblem p = explicit_problem(load_instance(c.path));
      StepCounter counter;
      return emit(check_sufficiency(p, parse_set(c.set), strategy_of(strategy), counter), p,
                  c.format, "sufficiency");
    };
  });

  std::string mode = "collapse";
  auto* min = app.add_subcommand("min", "Minimum sufficient set, compared against --k");
  add_common(min, c, false, true);
  min->add_option("--mode", mode)->check(CLI::IsMember({"collapse", "lattice"}));
  min->callback([&] {
    run = [&] {
      const DecisionProblem p = explicit_problem(load_instance(c.path));
      StepCounter counter;
      const auto m = mode == "lattice" ? MinimumMode::Lattice : MinimumMode::Collapse;
      return emit(find_minimum_sufficient(p, c.k, m, counter, default_budgets()), p, c.format,
                  "minimum");
    };
  });

  auto* anchor = app.add_subcommand("anchor", "Is some fiber of the set Opt-constant?");
  add_common(anchor, c, true, false);
  anchor->callback([&] {
    run = [&] {
      const DecisionProblem p = explicit_problem(load_instance(c.path));
      return emit(check_anchor(p, parse_set(c.set)), p, c.format, "anchor");
    };
  });

  auto* relevant = app.add_subcommand("relevant", "List the relevant coordinates");
  add_common(relevant, c, false, false);
  relevant->callback([&] {
    run = [&] {
      const Instance inst = load_instance(c.path);
      CoordSet rel;
      StepCounter counter;
      if (const auto* t = std::get_if<TreeUtility>(&inst))
        rel = relevant_tree(*t, counter);
      else if (const auto* pw = std::get_if<PairwiseUtility>(&inst))
        rel = relevant_pairwise(*pw, counter);
      else
        rel = relevant_coordinates(explicit_problem(inst)).coords;
      if (c.format == "json")
        std::cout << Json{{"relevant", rel.members()}, {"steps", counter.steps()}}.dump(2) << '\n';
      else
        std::cout << "relevant: " << rel.to_string() << '\n';
      return kExitYes;
    };
  });

  auto* quot = app.add_subcommand("quotient", "Partition states by optimal-action set");
  add_common(quot, c, false, false);
  quot->callback([&] {
    run = [&] {
      const DecisionProblem p = explicit_problem(load_instance(c.path));
      const Quotient q = quotient(p);
      Json classes = Json::array();
      for (std::size_t id = 0; id < q.num_classes(); ++id) {
        std::vector<StateIndex> members;
        for (StateIndex s = 0; s < p.num_states(); ++s)
          if (q.class_of[s] == id) members.push_back(s);
        std::vector<std::string> names;
        for (auto a : q.class_optset[id]) names.push_back(p.actions()[a]);
        classes.push_back({{"opt", names}, {"states", members}});
      }
      if (c.format == "json") {
        std::cout << Json{{"classes", classes}, {"srank", structural_rank(p)}}.dump(2) << '\n';
      } else {
        std::cout << "classes: " << q.num_classes() << "  srank: " << structural_rank(p) << '\n';
        for (const auto& cl : classes) std::cout << "  " << cl.dump() << '\n';
      }
      return kExitYes;
    };
  });

  std::string steps_query = "fiber";
  auto* steps = app.add_subcommand("steps", "Measured steps against the declared bound");
  add_common(steps, c, true, false);
  steps->add_option("--query", steps_query)
      ->check(CLI::IsMember({"fiber", "pairwise", "anchor", "lattice"}));
  steps->callback([&] {
    run = [&] {
      const DecisionProblem p = explicit_problem(load_instance(c.path));
      static const std::map<std::string, StaticQuery> q{{"fiber", StaticQuery::SufficiencyFiber},
                                                        {"pairwise", StaticQuery::SufficiencyPairwise},
                                                        {"anchor", StaticQuery::Anchor},
                                                        {"lattice", StaticQuery::MinimumLattice}};
      const StepsRow r = steps_report(p, q.at(steps_query), parse_set(c.set));
      std::cout << "query,states,actions,coords,unit,measured,bound,margin,answer\n"
                << r.query << ',' << r.states << ',' << r.actions << ',' << r.coords << ','
                << r.unit << ',' << r.measured << ',' << r.bound << ',' << r.margin << ','
                << (r.answer == Answer::Yes ? "YES" : "NO") << '\n';
      return r.answer == Answer::Yes ? kExitYes : kExitNo;
    };
  });

  // ---- stochastic
  std::string stoch_query;
  bool strict = false;
  std::string family = "decisiveness";
  auto* stoch = app.add_subcommand("stoch", "Stochastic queries");
  stoch->add_option("query", stoch_query)
      ->required()
      ->check(CLI::IsMember({"preserve", "decisive", "anchor", "anchor-preserve", "min"}));
  add_common(stoch, c, true, true);
  stoch->add_flag("--strict", strict, "Treat states in zero-mass fibers as violations");
  stoch->add_option("--family", family)->check(CLI::IsMember({"preservation", "decisiveness"}));
  stoch->callback([&] {
    run = [&] {
      const auto sp = require_kind<StochasticProblem>(load_instance(c.path), "stochastic");
      const CoordSet I = parse_set(c.set);
      StepCounter counter;
      const StochOptions opts{strict};
      Verdict v;
      if (stoch_query == "preserve")
        v = check_preservation(sp, I, counter, opts);
      else if (stoch_query == "decisive")
        v = check_decisiveness(sp, I, counter);
      else if (stoch_query == "anchor")
        v = check_stoch_anchor(sp, I, counter);
      else if (stoch_query == "anchor-preserve")
        v = check_stoch_anchor_preservation(sp, I, counter);
      else
        v = find_stoch_minimum(sp, c.k,
                               family == "preservation" ? StochFamily::Preservation
                                                        : StochFamily::Decisiveness,
                               counter, opts);
      return emit(v, sp.base(), c.format, "stoch-" + stoch_query);
    };
  });

  // ---- sequential
  std::string seq_query;
  auto* seq = app.add_subcommand("seq", "Sequential queries over the induced optimizer");
  seq->add_option("query", seq_query)->required()->check(CLI::IsMember({"check", "anchor", "min"}));
  add_common(seq, c, true, true);
  seq->add_option("--strategy", strategy)->check(CLI::IsMember({"fiber", "pairwise"}));
  seq->add_option("--mode", mode)->check(CLI::IsMember({"collapse", "lattice"}));
  seq->callback([&] {
    run = [&] {
      const auto sq = require_kind<SequentialProblem>(load_instance(c.path), "sequential");
      StepCounter counter;
      Verdict v;
      if (seq_query == "check")
        v = check_seq_sufficiency(sq, parse_set(c.set), strategy_of(strategy), counter);
      else if (seq_query == "anchor")
        v = check_seq_anchor(sq, parse_set(c.set), counter);
      else
        v = find_seq_minimum(sq, c.k, mode == "collapse" ? MinimumMode::Collapse : MinimumMode::Lattice,
                             counter);
      const auto table = induced_optimizer(sq);
      return emit(v, sq.base(), c.format, "seq-" + seq_query, Json::object(), &table);
    };
  });

  // ---- fast paths
  std::string fast_kind;
  auto* fast = app.add_subcommand("fast", "Structured fast paths");
  fast->add_option("kind", fast_kind)
      ->required()
      ->check(CLI::IsMember({"treewidth", "tree", "symmetric", "tensor", "separable", "bounded"}));
  add_common(fast, c, true, false);
  fast->callback([&] {
    run = [&]() -> int {
      const Instance inst = load_instance(c.path);
      const CoordSet I = parse_set(c.set);
      StepCounter counter;
      if (fast_kind == "treewidth" || fast_kind == "tree") {
        const PairwiseUtility pu =
            fast_kind == "tree" ? require_kind<TreeUtility>(inst, "tree").to_pairwise()
                                : require_kind<PairwiseUtility>(inst, "pairwise");
        const Verdict v = check_sufficiency_treewidth(pu, I, counter);
        return emit(v, expand_pairwise(pu), c.format, "treewidth-sufficiency",
                    {{"bound", treewidth_step_bound(pu, I)}});
      }
      if (fast_kind == "tensor") {
        const auto tu = require_kind<TensorRankUtility>(inst, "tensor");
        const DecisionProblem p = expand_tensor(tu);
        Json rows = Json::array();
        std::uint64_t worst = 0;
        for (StateIndex s = 0; s < p.num_states(); ++s) {
          const TensorEval e = opt_tensor(tu, p.decode(s));
          worst = std::max(worst, e.mult_adds);
          std::vector<std::string> names;
          for (auto a : e.opt) names.push_back(p.actions()[a]);
          rows.push_back(names);
        }
        const std::uint64_t R = tu.rank(), n = tu.domains.size(), A = tu.actions.size();
        Json j{{"opt", rows}, {"mult_adds", worst}, {"bound", A * R * n + R * n}};
        std::cout << (c.format == "json" ? j.dump(2) : j.dump()) << '\n';
        return kExitYes;
      }
      const DecisionProblem p = explicit_problem(inst);
      if (fast_kind == "symmetric")
        return emit(check_sufficiency_symmetric(p, I, counter), p, c.format, "symmetric-sufficiency");
      if (fast_kind == "bounded") {
        const BoundedActionsResult r = check_bounded_actions(p, I);
        return emit(r.verdict, p, c.format, "bounded-actions", {{"bound", r.bound}});
      }
      const SeparableResult r = check_separable(p);
      std::cout << "separable: " << (r.separable ? "yes" : "no") << '\n';
      return r.separable ? kExitYes : kExitNo;
    };
  });

  // ---- certification
  std::string cert_query = "sufficiency";
  std::uint64_t budget = 0;
  auto* certify = app.add_subcommand("certify", "Budgeted certifier: verdict or abstention");
  add_common(certify, c, true, true);
  certify->add_option("--query", cert_query)
      ->check(CLI::IsMember({"sufficiency", "anchor", "minimum", "stoch-preservation",
                             "stoch-decisiveness", "stoch-minimum", "seq-sufficiency",
                             "seq-minimum"}));
  certify->add_option("--budget", budget, "Step budget")->required();
  certify->callback([&] {
    run = [&] {
      const Instance inst = load_instance(c.path);
      const CertQueryKind kind = cert_kind(cert_query);
      const CertInstance ci = cert_instance(inst, kind);
      const CertOutcome out = budgeted_certify({kind, budget, false}, ci, {parse_set(c.set), c.k});
      if (out.abstained()) {
        if (c.format == "json")
          std::cout << Json{{"query", cert_query}, {"answer", "ABSTAIN"}, {"reason", out.reason}}.dump(2)
                    << '\n';
        else
          std::cout << "query: " << cert_query << "\nanswer: ABSTAIN\nreason: " << out.reason << '\n';
        return kExitAbstain;
      }
      const DecisionProblem& shape = std::visit(
          [](const auto& x) -> const DecisionProblem& {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, DecisionProblem>)
              return x;
            else
              return x.base();
          },
          ci);
      return emit(out.verdict, shape, c.format, cert_query,
                  {{"bound", declared_bound(kind, ci)}, {"budget", budget}});
    };
  });

  auto* ext = app.add_subcommand("externalize", "Split relevance by a model interface");
  add_common(ext, c, true, false);
  ext->callback([&] {
    run = [&] {
      const DecisionProblem p = explicit_problem(load_instance(c.path));
      const ExternalizedRelevance r = externalized_relevance(p, parse_set(c.set));
      Json j{{"internal", r.internal.members()},
             {"externalized", r.externalized.members()},
             {"interface_sufficient", r.interface_sufficient}};
      std::cout << (c.format == "json" ? j.dump(2) : j.dump()) << '\n';
      return r.interface_sufficient ? kExitYes : kExitNo;
    };
  });

  std::size_t rho = 1;
  std::string cnf_path;
  auto* threshold = app.add_subcommand("threshold", "Tautology test through the shifted family");
  threshold->add_option("cnf", cnf_path)->required()->check(CLI::ExistingFile);
  threshold->add_option("--rho", rho)->required();
  threshold->callback([&] {
    run = [&] {
      const bool taut = threshold_decider(rho)(formula_source(cnf_path));
      std::cout << "tautology: " << (taut ? "yes" : "no") << '\n';
      return taut ? kExitYes : kExitNo;
    };
  });

  std::size_t slots_n = 2;
  std::string inspected_text;
  auto* adversary = app.add_subcommand("adversary", "Fooling pair for a slot-inspection checker");
  adversary->add_option("--n", slots_n)->required();
  adversary->add_option("--inspected", inspected_text, "Inspected slots, e.g. 0,2");
  adversary->callback([&] {
    run = [&] {
      const CoordSet slots = parse_set(inspected_text);
      const auto pair = adversary_game(slots_n, {slots.begin(), slots.end()});
      if (!pair) {
        std::cout << "refusal: every slot inspected\n";
        return kExitNo;
      }
      std::cout << Json{{"slot", pair->slot},
                        {"yes_instance", to_json(pair->yes_instance)},
                        {"no_instance", to_json(pair->no_instance)}}
                       .dump(2)
                << '\n';
      return kExitYes;
    };
  });

  // ---- reductions
  std::string reduce_kind, source, out_path;
  bool verify = false;
  auto* reduce = app.add_subcommand("reduce", "Generate a reduction gadget");
  reduce->add_option("kind", reduce_kind)
      ->required()
      ->check(CLI::IsMember({"tautology", "ea-sat", "majsat", "tqbf", "setcover", "shifted",
                             "eth-chain"}));
  reduce->add_option("source", source)->required()->check(CLI::ExistingFile);
  reduce->add_option("--out", out_path, "Write the gadget JSON here");
  reduce->add_flag("--verify", verify, "Compare source oracle and target decider");
  reduce->callback([&] {
    run = [&] {
      const GadgetOutput g = build_gadget(reduce_kind, source);
      const Json j = gadget_to_json(g);
      if (!out_path.empty()) write_json(out_path, j);
      std::cout << "gadget: " << g.gadget << "\ninput_size: " << g.accounting.input_size
                << "\noutput_size: " << g.accounting.output_size
                << "\ncoords: " << g.accounting.coords << '\n';
      if (reduce_kind == "eth-chain")
        std::cout << "m_out <= 3 m_in: "
                  << (g.accounting.output_size <= 3 * g.accounting.input_size ? "yes" : "no")
                  << '\n';
      if (!verify) {
        if (out_path.empty()) std::cout << j.dump(2) << '\n';
        return kExitYes;
      }
      const VerifyReport r = verify_gadget(g);
      std::cout << "source: " << r.source_answer << "\ntarget: " << r.target_answer
                << "\nverify: " << (r.pass ? "PASS" : "FAIL") << '\n';
      if (!r.detail.empty()) std::cout << "detail: " << r.detail << '\n';
      return r.pass ? kExitYes : kExitNo;
    };
  });

  // ---- translations
  std::string tr_kind, tr_path;
  auto* translate = app.add_subcommand("translate", "Applied translations to decision problems");
  translate->add_option("kind", tr_kind)
      ->required()
      ->check(CLI::IsMember({"config", "pomdp", "hyperparam"}));
  translate->add_option("input", tr_path)->required()->check(CLI::ExistingFile);
  translate->add_option("--out", out_path, "Write the induced instance here");
  translate->callback([&] {
    run = [&] {
      const Json in = read_json(tr_path);
      Json report;
      int code = kExitYes;
      if (tr_kind == "config") {
        const auto t = translate_config(config_from_json(in));
        report = config_report(t);
      } else if (tr_kind == "pomdp") {
        const auto t = translate_pomdp(pomdp_from_json(in));
        report = pomdp_report(t);
        code = t.preservation.yes() ? kExitYes : kExitNo;
      } else {
        const auto m = hyperparam_from_json(in);
        const auto t = translate_hyperparam(m);
        report = hyperparam_report(m, t);
        code = t.redundant ? kExitYes : kExitNo;
      }
      if (!out_path.empty()) write_json(out_path, report["instance"]);
      report.erase("instance");
      std::cout << report.dump(2) << '\n';
      return code;
    };
  });

  // ---- bench
  BenchOptions bench_opts;
  std::string regimes = "all";
  bool sweep = false, empty_suite = false;
  auto* bench = app.add_subcommand("bench", "Instrumented step table as CSV");
  bench->add_option("--regimes", regimes, "all or a comma separated list");
  bench->add_option("--n", bench_opts.max_n, "Largest instance size");
  bench->add_option("--seed", bench_opts.seed);
  bench->add_option("--per-size", bench_opts.per_size);
  bench->add_flag("--budget-sweep", sweep, "Abstention sweep over budgets");
  bench->add_flag("--empty", empty_suite, "Run on an empty suite");
  bench->callback([&] {
    run = [&] {
      if (regimes != "all") {
        std::stringstream ss(regimes);
        std::string r;
        while (std::getline(ss, r, ',')) {
          const auto& known = bench_regimes();
          if (std::find(known.begin(), known.end(), r) == known.end())
            throw FormatError("unknown regime '" + r + "'");
          bench_opts.regimes.insert(r);
        }
      }
      std::vector<BenchInstance> suite;
      if (!empty_suite) suite = bench_suite(bench_opts);
      if (sweep) {
        const auto budgets = suite.empty() ? std::vector<std::uint64_t>{} : default_sweep_budgets(suite);
        std::cout << to_csv(budget_sweep(suite, budgets));
      } else {
        std::cout << to_csv(run_bench(suite, bench_opts.regimes));
      }
      return kExitYes;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }
  try {
    return run();
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const OutOfGapError& e) {
    std::cerr << "out of gap: " << e.what() << '\n';
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitOther;
  }
}
