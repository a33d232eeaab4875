#include "relevance/reductions.hpp"

#include <algorithm>

#include "relevance/errors.hpp"
#include "relevance/static.hpp"

namespace relevance {

// ---------------------------------------------------------------- set cover

void SetCoverInstance::validate() const {
  for (std::size_t j = 0; j < sets.size(); ++j)
    for (std::size_t e : sets[j])
      if (e == 0 || e > universe)
        throw FormatError("set " + std::to_string(j) + " contains element " + std::to_string(e) +
                          " outside 1.." + std::to_string(universe));
}

bool SetCoverInstance::covers(const CoordSet& chosen) const {
  std::vector<char> hit(universe + 1, 0);
  for (std::size_t j : chosen)
    for (std::size_t e : sets.at(j)) hit[e] = 1;
  return std::all_of(hit.begin() + 1, hit.end(), [](char c) { return c != 0; });
}

std::optional<CoordSet> minimum_cover(const SetCoverInstance& sc, const Budgets& budgets) {
  sc.validate();
  for (const CoordSet& J : lattice_order(sc.sets.size(), budgets))
    if (sc.covers(J)) return J;
  return std::nullopt;
}

const char* to_string(QueryKind kind) {
  switch (kind) {
    case QueryKind::Sufficiency: return "sufficiency";
    case QueryKind::Anchor: return "anchor";
    case QueryKind::Decisiveness: return "decisiveness";
    case QueryKind::SeqSufficiency: return "seq-sufficiency";
    case QueryKind::Minimum: return "minimum";
    case QueryKind::RestrictedMinimum: return "restricted-minimum";
  }
  return "?";
}

// ---------------------------------------------------------------- tautology

GadgetOutput gadget_tautology(const Formula& f) {
  const std::size_t n = f.num_vars();
  CircuitBuilder b(n + 1);
  const std::size_t sel = b.input(0);
  std::vector<std::size_t> shift(n);
  for (std::size_t i = 0; i < n; ++i) shift[i] = i + 1;
  const std::size_t phi = b.embed(f.circuit(), shift);
  const std::size_t out = b.disj(sel, phi);

  SuccinctProblem sp;
  sp.n = n + 1;
  sp.actions = {"accept", "reject"};
  sp.terms = {{WeightedTerm{b.build(out), Rational(1)}}, {}};

  GadgetOutput g{"tautology", f, sp, {QueryKind::Sufficiency, {}, 0}, {}, {}};
  g.accounting = {f.circuit().size(), sp.gate_count(), n + 1};
  return g;
}

GadgetOutput gadget_3sat_chain(const Cnf& f) {
  const BoolCircuit base = compile_cnf(f);
  CircuitBuilder b(f.num_vars);
  std::vector<std::size_t> same(f.num_vars);
  for (std::size_t i = 0; i < same.size(); ++i) same[i] = i;
  const std::size_t neg = b.negate(b.embed(base, same));
  GadgetOutput g = gadget_tautology(Formula::from_circuit(b.build(neg)));
  g.gadget = "eth-chain";
  g.source = Formula::from_cnf(f);
  g.accounting.input_size = base.size();
  return g;
}

// ---------------------------------------------------------------- exists-forall

GadgetOutput gadget_exists_forall(const QBF& q) {
  validate_qbf(q);
  std::vector<std::size_t> xs, ys;
  for (const auto& [kind, v] : q.prefix) {
    if (kind == Quantifier::Exists) {
      if (!ys.empty()) throw ShapeError("prefix is not of the form exists* forall*");
      xs.push_back(v);
    } else {
      ys.push_back(v);
    }
  }
  const bool padded = ys.empty();
  const std::size_t k = xs.size();
  const std::size_t m = padded ? 1 : ys.size();
  const std::size_t n = k + m;

  std::vector<std::size_t> coord_of(q.matrix.num_vars(), 0);
  for (std::size_t j = 0; j < k; ++j) coord_of[xs[j] - 1] = j;
  for (std::size_t j = 0; j < ys.size(); ++j) coord_of[ys[j] - 1] = k + j;

  CircuitBuilder yes(n);
  const BoolCircuit phi = yes.build(yes.embed(q.matrix.circuit(), coord_of));

  CircuitBuilder no(n);
  std::size_t zero = no.negate(no.input(k));
  for (std::size_t j = 1; j < m; ++j) zero = no.conj(zero, no.negate(no.input(k + j)));

  SuccinctProblem sp;
  sp.n = n;
  sp.actions = {"YES", "NO"};
  sp.terms = {{WeightedTerm{phi, Rational(2)}}, {WeightedTerm{no.build(zero), Rational(1)}}};

  GadgetOutput g{"ea-sat", q, sp, {QueryKind::Anchor, CoordSet::all(k), 0}, {}, {}};
  g.accounting = {q.matrix.circuit().size(), sp.gate_count(), n};
  return g;
}

// ---------------------------------------------------------------- majsat

SuccinctProblem majsat_succinct(const Formula& f) {
  const std::size_t n = f.num_vars();
  if (n == 0) throw ShapeError("MAJSAT gadget needs at least one variable");
  Rational hold = Rational(1, 2) - Rational(1, 2) / (mpz_class(1) << static_cast<unsigned>(n));
  hold.canonicalize();
  CircuitBuilder one(n);
  const BoolCircuit constant = one.build(one.constant(true));
  SuccinctProblem sp;
  sp.n = n;
  sp.actions = {"accept", "hold_L", "hold_R"};
  sp.terms = {{WeightedTerm{f.circuit(), Rational(1)}},
              {WeightedTerm{constant, hold}},
              {WeightedTerm{constant, hold}}};
  return sp;
}

GadgetOutput gadget_majsat(const Formula& f, const Budgets& budgets) {
  const SuccinctProblem sp = majsat_succinct(f);
  GadgetOutput g{"majsat", f, StochasticProblem::uniform(expand(sp, budgets)),
                 {QueryKind::Decisiveness, {}, 0}, {}, {}};
  g.accounting = {f.circuit().size(), sp.gate_count(), f.num_vars()};
  return g;
}

// ---------------------------------------------------------------- tqbf

namespace {

enum Tag : std::size_t { kGame = 0, kRef = 1, kBail = 2 };
enum Move : std::size_t { kGo = 0, kBailOut = 1, kPlay0 = 2, kPlay1 = 3 };

}  // namespace

GadgetOutput gadget_tqbf(const QBF& q, const Budgets& budgets) {
  validate_qbf(q);
  const std::size_t L = q.prefix.size();
  if (L > budgets.qbf_vars)
    throw CapacityError("QBF has " + std::to_string(L) + " quantifiers, budget is " +
                        std::to_string(budgets.qbf_vars));
  std::vector<std::size_t> domains{3, L + 2};
  domains.insert(domains.end(), L, 2);
  const std::uint64_t states = 3 * (L + 2) * (std::uint64_t{1} << L);
  if (4 * states > budgets.expansion_entries)
    throw CapacityError("TQBF gadget needs " + std::to_string(4 * states) +
                        " utility entries, budget is " + std::to_string(budgets.expansion_entries));

  const Rational c = 1 - Rational(1, 2) / (mpz_class(1) << static_cast<unsigned>(q.num_universal()));
  auto matrix_value = [&](const State& s) {
    std::vector<std::size_t> bits(q.matrix.num_vars(), 0);
    for (std::size_t j = 0; j < L; ++j) bits[q.prefix[j].second - 1] = s[2 + j];
    return q.matrix.eval(bits);
  };
  DecisionProblem base = DecisionProblem::tabulate(
      {"go", "bail", "play0", "play1"}, domains, [&](ActionIndex, const State& s) -> Rational {
        switch (s[0]) {
          case kGame: return s[1] >= L && matrix_value(s) ? 1 : 0;
          case kRef: return 1;
          default: return s[1] == L ? c : Rational(0);
        }
      });

  auto at = [&](std::size_t tag, std::size_t level) {
    State s(domains.size(), 0);
    s[0] = tag;
    s[1] = std::min(level, L + 1);
    return base.encode(s);
  };
  const StateIndex root = at(kGame, 0);
  const StateIndex sink = at(kBail, L + 1);
  std::vector<TransitionRow> rows(4 * base.num_states());
  for (StateIndex si = 0; si < base.num_states(); ++si) {
    const State s = base.decode(si);
    const std::size_t level = s[1];
    for (ActionIndex a = 0; a < 4; ++a) {
      TransitionRow& row = rows[a * base.num_states() + si];
      if (s[0] == kRef) {
        row = {{a == kGo ? at(kRef, level + 1) : sink, Rational(1)}};
      } else if (s[0] == kBail) {
        row = {{a == kGo ? root : at(kBail, level + 1), Rational(1)}};
      } else if (a == kGo) {
        row = {{root, Rational(1)}};
      } else if (a == kBailOut) {
        row = {{at(kBail, 0), Rational(1)}};
      } else if (level >= L) {
        row = {{sink, Rational(1)}};
      } else {
        State next = s;
        next[1] = level + 1;
        if (q.prefix[level].first == Quantifier::Exists) {
          next[2 + level] = a == kPlay1 ? 1 : 0;
          row = {{base.encode(next), Rational(1)}};
        } else {
          next[2 + level] = 0;
          const StateIndex left = base.encode(next);
          next[2 + level] = 1;
          row = {{left, Rational(1, 2)}, {base.encode(next), Rational(1, 2)}};
        }
      }
    }
  }
  const std::size_t entries = 4 * base.num_states();
  SequentialProblem sq(std::move(base), std::move(rows), L + 1, SeqMode::Backup);
  GadgetOutput g{"tqbf", q, std::move(sq), {QueryKind::SeqSufficiency, {}, 0}, {}, {}};
  g.accounting = {L + q.matrix.circuit().size(), entries, domains.size()};
  return g;
}

// ---------------------------------------------------------------- set cover

GadgetOutput gadget_setcover(const SetCoverInstance& sc) {
  sc.validate();
  if (sc.universe == 0) throw ShapeError("set cover gadget needs a nonempty universe");
  const std::size_t m = sc.sets.size();
  std::vector<std::size_t> domains(m, 2);
  domains.push_back(2);
  domains.push_back(sc.universe);
  DecisionProblem problem = DecisionProblem::tabulate(
      {"a", "b"}, domains,
      [&](ActionIndex a, const State& s) { return Rational(s[m] == a ? 1 : 0); });

  std::vector<StateIndex> admissible;
  for (std::size_t tag = 0; tag < 2; ++tag)
    for (std::size_t e = 1; e <= sc.universe; ++e) {
      State s(m + 2, 0);
      for (std::size_t j = 0; j < m; ++j)
        s[j] = tag && std::count(sc.sets[j].begin(), sc.sets[j].end(), e) ? 1 : 0;
      s[m] = tag;
      s[m + 1] = e - 1;
      admissible.push_back(problem.encode(s));
    }
  std::sort(admissible.begin(), admissible.end());

  std::size_t listed = 0;
  for (const auto& set : sc.sets) listed += set.size();
  GadgetOutput g{"setcover", sc, std::move(problem),
                 {QueryKind::RestrictedMinimum, CoordSet::all(m), 0}, {}, std::move(admissible)};
  g.accounting = {sc.universe + listed, g.admissible.size(), m + 2};
  return g;
}

std::optional<CoordSet> restricted_minimum(const DecisionProblem& problem,
                                           std::span<const StateIndex> states,
                                           const CoordSet& candidates, const Budgets& budgets) {
  for (const CoordSet& pick : lattice_order(candidates.size(), budgets)) {
    std::vector<std::size_t> members;
    for (std::size_t k : pick) members.push_back(candidates[k]);
    CoordSet I(std::move(members));
    if (is_sufficient_on(problem, I, states).yes()) return I;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- shifted

GadgetOutput gadget_shifted(const Formula& f, const Budgets& budgets) {
  const std::size_t n = f.num_vars();
  if (n == 0) throw ShapeError("shifted family needs at least one variable");
  if (n > 6) throw CapacityError("shifted family is limited to 6 variables");
  const std::size_t D = (std::size_t{1} << n) + 1;
  std::uint64_t entries = 3 * 2;
  for (std::size_t i = 0; i < n; ++i) {
    entries *= D;
    if (entries > budgets.expansion_entries)
      throw CapacityError("shifted family on " + std::to_string(n) +
                          " variables exceeds the expansion budget");
  }
  std::vector<char> sat(D - 1);
  for (std::size_t v = 0; v + 1 < D; ++v) sat[v] = f.eval_mask(v);

  std::vector<std::size_t> domains(n + 1, D);
  domains[0] = 2;
  DecisionProblem problem = DecisionProblem::tabulate(
      {"accept", "reject", "hold"}, domains, [&](ActionIndex a, const State& s) {
        if (s[0] == 0) return Rational(a == 2 ? 1 : 0);
        if (a != 0) return Rational(0);
        for (std::size_t i = 1; i <= n; ++i)
          if (s[i] != 0 && !sat[s[i] - 1]) return Rational(0);
        return Rational(1);
      });
  GadgetOutput g{"shifted", f, std::move(problem), {QueryKind::Minimum, {}, 1}, {}, {}};
  g.accounting = {f.circuit().size(), static_cast<std::size_t>(entries), n + 1};
  return g;
}

// ---------------------------------------------------------------- verify

namespace {

std::string yes_no(bool b, const char* yes, const char* no) { return b ? yes : no; }

}  // namespace

VerifyReport verify_gadget(const GadgetOutput& g, const Budgets& budgets) {
  VerifyReport r;
  if (g.gadget == "tautology" || g.gadget == "eth-chain") {
    const Formula& f = std::get<Formula>(g.source);
    const bool src = g.gadget == "tautology" ? is_tautology_oracle(f, budgets)
                                             : count_models(f, budgets) == 0;
    const DecisionProblem P = expand(std::get<SuccinctProblem>(g.instance), budgets);
    const Verdict v = check_sufficiency(P, {});
    bool witness_ok = true;
    if (!v.yes()) {
      const auto& w = std::get<StatePair>(v.witness);
      witness_ok = opt(P, w.first) != opt(P, w.second);
    }
    const bool coords_ok = P.num_coords() == f.num_vars() + 1;
    r.source_answer = g.gadget == "tautology" ? yes_no(src, "tautology", "not a tautology")
                                              : yes_no(src, "unsatisfiable", "satisfiable");
    r.target_answer = yes_no(v.yes(), "empty set sufficient", "empty set insufficient");
    r.pass = src == v.yes() && witness_ok && coords_ok;
    r.detail = "coordinates " + std::to_string(P.num_coords()) + ", gates in " +
               std::to_string(g.accounting.input_size) + ", gates out " +
               std::to_string(g.accounting.output_size);
    if (g.gadget == "eth-chain")
      r.pass = r.pass && g.accounting.output_size <= 3 * g.accounting.input_size;
  } else if (g.gadget == "ea-sat") {
    const QBF& q = std::get<QBF>(g.source);
    const bool src = eval_qbf_oracle(q, budgets);
    const DecisionProblem P = expand(std::get<SuccinctProblem>(g.instance), budgets);
    const Verdict v = check_anchor(P, g.query.coords);
    bool witness_ok = true;
    if (v.yes()) {
      const auto& alpha = std::get<Assignment>(v.witness);
      std::vector<StateIndex> fiber;
      for (StateIndex s = 0; s < P.num_states(); ++s)
        if (project(P.decode(s), alpha.coords) == alpha.values) fiber.push_back(s);
      witness_ok = is_sufficient_on(P, {}, fiber).yes();
      r.detail = "anchor " + alpha.to_string();
    }
    r.source_answer = yes_no(src, "true", "false");
    r.target_answer = yes_no(v.yes(), "anchor exists", "no anchor");
    r.pass = src == v.yes() && witness_ok;
  } else if (g.gadget == "majsat") {
    const Formula& f = std::get<Formula>(g.source);
    const std::uint64_t models = count_models(f, budgets);
    const bool src = models >= (std::uint64_t{1} << (f.num_vars() - 1));
    const Verdict v = check_decisiveness(std::get<StochasticProblem>(g.instance), {});
    r.source_answer = std::to_string(models) + " models, " + yes_no(src, "majority", "minority");
    r.target_answer = yes_no(v.yes(), "decisive", "not decisive");
    r.pass = src == v.yes();
  } else if (g.gadget == "tqbf") {
    const bool src = eval_qbf_oracle(std::get<QBF>(g.source), budgets);
    const Verdict v = check_seq_sufficiency(std::get<SequentialProblem>(g.instance), {},
                                            SufficiencyStrategy::Fiber);
    r.source_answer = yes_no(src, "true", "false");
    r.target_answer = yes_no(v.yes(), "empty set sequentially sufficient",
                             "empty set not sequentially sufficient");
    r.pass = src == v.yes();
  } else if (g.gadget == "setcover") {
    const auto& sc = std::get<SetCoverInstance>(g.source);
    const auto& P = std::get<DecisionProblem>(g.instance);
    const auto cover = minimum_cover(sc, budgets);
    const auto suff = restricted_minimum(P, g.admissible, g.query.coords, budgets);
    bool bijection = true;
    for (const CoordSet& J : lattice_order(sc.sets.size(), budgets))
      bijection = bijection && sc.covers(J) == is_sufficient_on(P, J, g.admissible).yes();
    r.source_answer = cover ? "minimum cover " + cover->to_string() : "no cover";
    r.target_answer = suff ? "minimum sufficient " + suff->to_string() : "no sufficient set";
    r.pass = bijection && cover.has_value() == suff.has_value() &&
             (!cover || cover->size() == suff->size());
    r.detail = bijection ? "covers and sufficient sets coincide" : "cover/sufficiency mismatch";
  } else if (g.gadget == "shifted") {
    const Formula& f = std::get<Formula>(g.source);
    const bool taut = is_tautology_oracle(f, budgets);
    const std::size_t expected = taut ? 1 : f.num_vars() + 1;
    const Verdict v = find_minimum_sufficient(std::get<DecisionProblem>(g.instance), 0);
    const std::size_t got = std::get<CoordSet>(v.witness).size();
    r.source_answer = yes_no(taut, "tautology", "not a tautology");
    r.target_answer = "minimum sufficient size " + std::to_string(got);
    r.pass = got == expected;
    r.detail = "expected " + std::to_string(expected);
  } else {
    throw FormatError("unknown gadget '" + g.gadget + "'");
  }
  return r;
}

}  // namespace relevance
