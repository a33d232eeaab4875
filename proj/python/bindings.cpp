#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "relevance/bench.hpp"
#include "relevance/certify.hpp"
#include "relevance/errors.hpp"
#include "relevance/io.hpp"
#include "relevance/reductions.hpp"
#include "relevance/static.hpp"
#include "relevance/stochastic.hpp"
#include "relevance/translate.hpp"

namespace py = pybind11;
using namespace relevance;

namespace {

// Accepts int, str ("p/q") or fractions.Fraction.
Rational to_rational(const py::handle& h) { return parse_rational(py::str(h).cast<std::string>()); }

py::object to_python(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

py::object verdict(const Verdict& v) { return to_python(verdict_to_json(v)); }

CoordSet coords(const std::vector<std::size_t>& v) { return CoordSet(v); }

DecisionProblem make_problem(std::vector<std::string> actions, std::vector<std::size_t> domains,
                             const std::vector<std::vector<py::object>>& rows) {
  std::vector<Rational> flat;
  for (const auto& row : rows)
    for (const auto& x : row) flat.push_back(to_rational(x));
  return DecisionProblem(std::move(actions), std::move(domains), std::move(flat));
}

GadgetOutput gadget_from_text(const std::string& kind, const std::string& text) {
  if (kind == "tautology") return gadget_tautology(Formula::from_cnf(parse_dimacs(text)));
  if (kind == "majsat") return gadget_majsat(Formula::from_cnf(parse_dimacs(text)));
  if (kind == "shifted") return gadget_shifted(Formula::from_cnf(parse_dimacs(text)));
  if (kind == "eth-chain") return gadget_3sat_chain(parse_dimacs(text));
  if (kind == "ea-sat") return gadget_exists_forall(parse_qdimacs(text));
  if (kind == "tqbf") return gadget_tqbf(parse_qdimacs(text));
  if (kind == "setcover") return gadget_setcover(setcover_from_json(Json::parse(text)));
  throw py::value_error("unknown gadget kind '" + kind + "'");
}

}  // namespace

PYBIND11_MODULE(_relevance_kit, m) {
  m.doc() = "Exact decision-relevance certification";
  m.attr("__version__") = "0.1.0";

  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<DimensionError>(m, "DimensionError", PyExc_IndexError);
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_RuntimeError);
  py::register_exception<ShapeError>(m, "ShapeError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<OutOfGapError>(m, "OutOfGapError", PyExc_ValueError);

  py::class_<DecisionProblem>(m, "DecisionProblem")
      .def(py::init(&make_problem), py::arg("actions"), py::arg("domains"), py::arg("utilities"),
           "Utilities hold one row per action over all states, coordinate 0 least significant.")
      .def_property_readonly("actions", &DecisionProblem::actions)
      .def_property_readonly("domains", &DecisionProblem::domains)
      .def_property_readonly("num_states", &DecisionProblem::num_states)
      .def("utility", [](const DecisionProblem& p, ActionIndex a, StateIndex s) {
        return format_rational(p.utility(a, s));
      })
      .def("decode", &DecisionProblem::decode)
      .def("opt", [](const DecisionProblem& p, StateIndex s) { return opt(p, s).actions(); })
      .def("to_json", [](const DecisionProblem& p) { return to_json(p).dump(); })
      .def("__repr__", [](const DecisionProblem& p) {
        return "<DecisionProblem |A|=" + std::to_string(p.num_actions()) +
               " |S|=" + std::to_string(p.num_states()) + ">";
      });

  py::class_<StochasticProblem>(m, "StochasticProblem")
      .def(py::init([](const DecisionProblem& p, const std::vector<py::object>& dist) {
             std::vector<Rational> d;
             for (const auto& x : dist) d.push_back(to_rational(x));
             return StochasticProblem(p, std::move(d));
           }),
           py::arg("problem"), py::arg("distribution"))
      .def_static("uniform", &StochasticProblem::uniform)
      .def_property_readonly("base", &StochasticProblem::base);

  m.def("load_problem", [](const std::string& path) { return explicit_problem(load_instance(path)); },
        "Explicit view of any instance file.");
  m.def("load_stochastic", [](const std::string& path) {
    const Instance inst = load_instance(path);
    if (const auto* sp = std::get_if<StochasticProblem>(&inst)) return *sp;
    throw FormatError("not a stochastic instance: " + path);
  });

  m.def("check_sufficiency",
        [](const DecisionProblem& p, const std::vector<std::size_t>& I, const std::string& strategy) {
          StepCounter c;
          return verdict(check_sufficiency(
              p, coords(I), strategy == "pairwise" ? SufficiencyStrategy::Pairwise : SufficiencyStrategy::Fiber,
              c));
        },
        py::arg("problem"), py::arg("coords"), py::arg("strategy") = "fiber");
  m.def("check_anchor", [](const DecisionProblem& p, const std::vector<std::size_t>& I) {
    return verdict(check_anchor(p, coords(I)));
  });
  m.def("find_minimum",
        [](const DecisionProblem& p, std::size_t k, const std::string& mode) {
          return verdict(find_minimum_sufficient(
              p, k, mode == "lattice" ? MinimumMode::Lattice : MinimumMode::Collapse));
        },
        py::arg("problem"), py::arg("k"), py::arg("mode") = "collapse");
  m.def("relevant_coordinates",
        [](const DecisionProblem& p) { return relevant_coordinates(p).coords.members(); });
  m.def("structural_rank", &structural_rank);
  m.def("quotient", [](const DecisionProblem& p) {
    const Quotient q = quotient(p);
    std::vector<std::vector<StateIndex>> classes(q.num_classes());
    for (StateIndex s = 0; s < p.num_states(); ++s) classes[q.class_of[s]].push_back(s);
    return classes;
  });

  m.def("check_preservation",
        [](const StochasticProblem& sp, const std::vector<std::size_t>& I, bool strict) {
          return verdict(check_preservation(sp, coords(I), StochOptions{strict}));
        },
        py::arg("problem"), py::arg("coords"), py::arg("strict") = false);
  m.def("check_decisiveness", [](const StochasticProblem& sp, const std::vector<std::size_t>& I) {
    return verdict(check_decisiveness(sp, coords(I)));
  });

  m.def("gadget", [](const std::string& kind, const std::string& text) {
    return to_python(gadget_to_json(gadget_from_text(kind, text)));
  }, "Gadget document for a DIMACS, QDIMACS or set-cover JSON source.");
  m.def("verify_gadget", [](const std::string& kind, const std::string& text) {
    const VerifyReport r = verify_gadget(gadget_from_text(kind, text));
    py::dict d;
    d["pass"] = r.pass;
    d["source"] = r.source_answer;
    d["target"] = r.target_answer;
    d["detail"] = r.detail;
    return d;
  });

  m.def("certify",
        [](const DecisionProblem& p, const std::vector<std::size_t>& I, std::uint64_t budget,
           const std::string& query, std::size_t k) {
          static const std::map<std::string, CertQueryKind> kinds{
              {"sufficiency", CertQueryKind::Sufficiency},
              {"anchor", CertQueryKind::Anchor},
              {"minimum", CertQueryKind::Minimum}};
          auto it = kinds.find(query);
          if (it == kinds.end()) throw py::value_error("unknown static query '" + query + "'");
          const CertOutcome out = budgeted_certify({it->second, budget, false}, p, {coords(I), k});
          if (out.abstained()) return py::object(py::dict(py::arg("answer") = "ABSTAIN",
                                                          py::arg("reason") = out.reason));
          return verdict(out.verdict);
        },
        py::arg("problem"), py::arg("coords"), py::arg("budget"), py::arg("query") = "sufficiency",
        py::arg("k") = 0);

  m.def("externalized_relevance", [](const DecisionProblem& p, const std::vector<std::size_t>& I) {
    const ExternalizedRelevance r = externalized_relevance(p, coords(I));
    return py::make_tuple(r.internal.members(), r.externalized.members(), r.interface_sufficient);
  });
  m.def("is_tautology_threshold", [](const std::string& cnf, std::size_t rho) {
    return threshold_decider(rho)(Formula::from_cnf(parse_dimacs(cnf)));
  });

  m.def("translate", [](const std::string& kind, const std::string& text) {
    const Json in = Json::parse(text);
    Json report;
    if (kind == "config")
      report = config_report(translate_config(config_from_json(in)));
    else if (kind == "pomdp")
      report = pomdp_report(translate_pomdp(pomdp_from_json(in)));
    else if (kind == "hyperparam") {
      const auto model = hyperparam_from_json(in);
      report = hyperparam_report(model, translate_hyperparam(model));
    } else {
      throw py::value_error("unknown translation '" + kind + "'");
    }
    return to_python(report);
  });

  m.def("bench_csv", [](std::size_t max_n, std::uint64_t seed) {
    BenchOptions o;
    o.max_n = max_n;
    o.seed = seed;
    return to_csv(run_bench(o));
  }, py::arg("max_n") = 2, py::arg("seed") = 1);
}
