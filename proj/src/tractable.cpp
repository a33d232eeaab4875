#include "relevance/tractable.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "relevance/errors.hpp"

namespace relevance {

// ---------------------------------------------------------------- separable

SeparableResult check_separable(const DecisionProblem& problem) {
  SeparableResult r;
  const auto base = problem.action_row(0);
  r.g.assign(base.begin(), base.end());
  for (ActionIndex a = 0; a < problem.num_actions(); ++a) {
    const auto row = problem.action_row(a);
    const Rational shift = row[0] - base[0];
    for (StateIndex s = 1; s < problem.num_states(); ++s)
      if (row[s] - base[s] != shift) return SeparableResult{};
    r.f.push_back(shift);
  }
  r.separable = true;
  return r;
}

// ---------------------------------------------------------------- tensor

void TensorRankUtility::validate() const {
  if (actions.empty()) throw FormatError("tensor utility needs at least one action");
  const std::size_t R = weights.size();
  if (action_factors.size() != R || coord_factors.size() != R)
    throw FormatError("tensor factor lists disagree with the rank");
  for (std::size_t r = 0; r < R; ++r) {
    if (action_factors[r].size() != actions.size())
      throw FormatError("action factor " + std::to_string(r) + " has the wrong length");
    if (coord_factors[r].size() != domains.size())
      throw FormatError("coordinate factors " + std::to_string(r) + " have the wrong count");
    for (std::size_t i = 0; i < domains.size(); ++i)
      if (coord_factors[r][i].size() != domains[i])
        throw FormatError("coordinate factor (" + std::to_string(r) + ", " + std::to_string(i) +
                          ") has the wrong length");
  }
}

TensorEval opt_tensor(const TensorRankUtility& tu, const State& s) {
  if (s.size() != tu.domains.size()) throw DimensionError("state length differs from n");
  TensorEval out;
  std::vector<Rational> scores(tu.actions.size(), Rational(0));
  for (std::size_t r = 0; r < tu.rank(); ++r) {
    Rational prod = tu.weights[r];
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] >= tu.domains[i]) throw DimensionError("digit out of range");
      prod *= tu.coord_factors[r][i][s[i]];
      ++out.mult_adds;
    }
    for (ActionIndex a = 0; a < scores.size(); ++a) {
      scores[a] += tu.action_factors[r][a] * prod;
      ++out.mult_adds;
    }
  }
  out.opt = argmax(scores);
  return out;
}

DecisionProblem expand_tensor(const TensorRankUtility& tu) {
  tu.validate();
  return DecisionProblem::tabulate(tu.actions, tu.domains, [&](ActionIndex a, const State& s) {
    Rational total = 0;
    for (std::size_t r = 0; r < tu.rank(); ++r) {
      Rational prod = tu.weights[r] * tu.action_factors[r][a];
      for (std::size_t i = 0; i < s.size(); ++i) prod *= tu.coord_factors[r][i][s[i]];
      total += prod;
    }
    return total;
  });
}

// ---------------------------------------------------------------- pairwise

void PairwiseUtility::validate_tables() const {
  const std::size_t A = actions.size(), n = domains.size();
  if (A == 0) throw FormatError("pairwise utility needs at least one action");
  if (unary.size() != n) throw FormatError("expected one unary table per coordinate");
  for (std::size_t i = 0; i < n; ++i)
    if (!unary[i].empty() && unary[i].size() != A * domains[i])
      throw FormatError("unary table " + std::to_string(i) + " has the wrong size");
  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n || e.u >= e.v)
      throw FormatError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                        ") is not an ordered pair of coordinates");
    if (e.table.size() != A * domains[e.u] * domains[e.v])
      throw FormatError("edge table (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                        ") has the wrong size");
  }
}

void PairwiseUtility::validate_decomposition() const {
  const auto& bags = decomposition.bags;
  const std::size_t n = domains.size(), B = bags.size();
  if (n > 0 && B == 0) throw FormatError("tree decomposition has no bags");
  std::vector<std::set<std::size_t>> sets(B);
  std::size_t widest = 0;
  for (std::size_t b = 0; b < B; ++b) {
    for (auto v : bags[b]) {
      if (v >= n) throw FormatError("bag " + std::to_string(b) + " names missing vertex");
      sets[b].insert(v);
    }
    widest = std::max(widest, sets[b].size());
  }
  if (B > 0 && decomposition.width != widest - 1)
    throw FormatError("declared width " + std::to_string(decomposition.width) +
                      " differs from max bag size - 1 = " + std::to_string(widest - 1));
  // Tree shape.
  if (decomposition.edges.size() + 1 != std::max<std::size_t>(B, 1))
    throw FormatError("decomposition needs exactly |bags| - 1 tree edges");
  std::vector<std::vector<std::size_t>> adj(B);
  for (auto [x, y] : decomposition.edges) {
    if (x >= B || y >= B || x == y) throw FormatError("bad decomposition tree edge");
    adj[x].push_back(y);
    adj[y].push_back(x);
  }
  if (B > 0) {
    std::vector<char> seen(B, 0);
    std::queue<std::size_t> todo;
    todo.push(0);
    seen[0] = 1;
    std::size_t reached = 1;
    while (!todo.empty()) {
      auto x = todo.front();
      todo.pop();
      for (auto y : adj[x])
        if (!seen[y]) {
          seen[y] = 1;
          ++reached;
          todo.push(y);
        }
    }
    if (reached != B) throw FormatError("decomposition tree is not connected");
  }
  // Coverage.
  for (std::size_t v = 0; v < n; ++v)
    if (std::none_of(sets.begin(), sets.end(), [&](const auto& s) { return s.count(v) > 0; }))
      throw FormatError("vertex " + std::to_string(v) + " is in no bag");
  for (const auto& e : edges)
    if (std::none_of(sets.begin(), sets.end(),
                     [&](const auto& s) { return s.count(e.u) && s.count(e.v); }))
      throw FormatError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                        ") is in no bag");
  // Running intersection: bags holding v induce a connected subtree.
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<std::size_t> holders;
    for (std::size_t b = 0; b < B; ++b)
      if (sets[b].count(v)) holders.push_back(b);
    std::vector<char> seen(B, 0);
    std::queue<std::size_t> todo;
    todo.push(holders[0]);
    seen[holders[0]] = 1;
    std::size_t reached = 1;
    while (!todo.empty()) {
      auto x = todo.front();
      todo.pop();
      for (auto y : adj[x])
        if (!seen[y] && sets[y].count(v)) {
          seen[y] = 1;
          ++reached;
          todo.push(y);
        }
    }
    if (reached != holders.size())
      throw FormatError("running intersection fails for vertex " + std::to_string(v));
  }
}

DecisionProblem expand_pairwise(const PairwiseUtility& pu) {
  pu.validate_tables();
  const std::size_t A = pu.actions.size();
  return DecisionProblem::tabulate(pu.actions, pu.domains, [&](ActionIndex a, const State& s) {
    Rational total = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (!pu.unary[i].empty()) total += pu.unary[i][a * pu.domains[i] + s[i]];
    for (const auto& e : pu.edges)
      total += e.table[(a * pu.domains[e.u] + s[e.u]) * pu.domains[e.v] + s[e.v]];
    (void)A;
    return total;
  });
}

namespace {

// Differences U(a) - U(0) for a >= 1, first for s then for s'.
using PairVec = std::vector<Rational>;
using VecSet = std::set<PairVec>;

VecSet minkowski(const VecSet& x, const VecSet& y) {
  VecSet out;
  for (const auto& p : x)
    for (const auto& q : y) {
      PairVec r = p;
      for (std::size_t k = 0; k < r.size(); ++k) r[k] += q[k];
      out.insert(std::move(r));
    }
  return out;
}

OptSet pattern(const PairVec& v, std::size_t offset, std::size_t A) {
  std::vector<Rational> scores(A, Rational(0));
  for (std::size_t a = 1; a < A; ++a) scores[a] = v[offset + a - 1];
  return argmax(scores);
}

std::uint64_t ipow(std::uint64_t base, std::size_t e) {
  std::uint64_t r = 1;
  while (e--) r *= base;
  return r;
}

}  // namespace

bool coordinate_relevant(const PairwiseUtility& pu, std::size_t i, StepCounter& counter) {
  pu.validate_tables();
  pu.validate_decomposition();
  const std::size_t A = pu.actions.size(), n = pu.domains.size();
  if (i >= n) throw DimensionError("coordinate " + std::to_string(i) + " out of range");
  if (A == 1) return false;
  const std::size_t half = A - 1;
  const auto& bags = pu.decomposition.bags;
  const std::size_t B = bags.size();

  // Root the decomposition at bag 0.
  std::vector<std::vector<std::size_t>> adj(B), children(B);
  for (auto [x, y] : pu.decomposition.edges) {
    adj[x].push_back(y);
    adj[y].push_back(x);
  }
  std::vector<long> parent(B, -1);
  std::vector<std::size_t> order{0};
  std::vector<char> seen(B, 0);
  seen[0] = 1;
  for (std::size_t h = 0; h < order.size(); ++h)
    for (auto y : adj[order[h]])
      if (!seen[y]) {
        seen[y] = 1;
        parent[y] = static_cast<long>(order[h]);
        children[order[h]].push_back(y);
        order.push_back(y);
      }

  std::vector<std::vector<std::size_t>> vars(B);
  for (std::size_t b = 0; b < B; ++b) {
    vars[b] = bags[b];
    std::sort(vars[b].begin(), vars[b].end());
    vars[b].erase(std::unique(vars[b].begin(), vars[b].end()), vars[b].end());
  }
  auto holds = [&](std::size_t b, std::size_t v) {
    return std::binary_search(vars[b].begin(), vars[b].end(), v);
  };
  std::vector<std::vector<std::size_t>> unary_at(B), edge_at(B);
  for (std::size_t v = 0; v < n; ++v) {
    if (pu.unary[v].empty()) continue;
    for (std::size_t b = 0; b < B; ++b)
      if (holds(b, v)) {
        unary_at[b].push_back(v);
        break;
      }
  }
  for (std::size_t e = 0; e < pu.edges.size(); ++e)
    for (std::size_t b = 0; b < B; ++b)
      if (holds(b, pu.edges[e].u) && holds(b, pu.edges[e].v)) {
        edge_at[b].push_back(e);
        break;
      }

  // Messages keyed by the assignment of the separator with the parent bag.
  // The tested coordinate carries the code x * k_i + x'.
  const std::size_t ki = pu.domains[i];
  std::vector<std::map<std::vector<std::size_t>, VecSet>> msg(B);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::size_t b = *it;
    const auto& vb = vars[b];
    std::vector<std::size_t> radix(vb.size());
    for (std::size_t k = 0; k < vb.size(); ++k)
      radix[k] = vb[k] == i ? ki * ki : pu.domains[vb[k]];
    std::vector<std::size_t> sep_pos;
    if (parent[b] >= 0)
      for (std::size_t k = 0; k < vb.size(); ++k)
        if (holds(static_cast<std::size_t>(parent[b]), vb[k])) sep_pos.push_back(k);

    std::vector<std::size_t> code(vb.size(), 0);
    std::vector<std::size_t> x(n, 0), xp(n, 0);
    while (true) {
      counter.step();
      for (std::size_t k = 0; k < vb.size(); ++k) {
        const std::size_t v = vb[k];
        if (v == i) {
          x[v] = code[k] / ki;
          xp[v] = code[k] % ki;
        } else {
          x[v] = xp[v] = code[k];
        }
      }
      PairVec base(2 * half, Rational(0));
      auto add = [&](auto value_of) {
        const Rational f0 = value_of(0, x), g0 = value_of(0, xp);
        for (std::size_t a = 1; a < A; ++a) {
          base[a - 1] += value_of(a, x) - f0;
          base[half + a - 1] += value_of(a, xp) - g0;
        }
      };
      for (auto v : unary_at[b])
        add([&](std::size_t a, const std::vector<std::size_t>& s) -> const Rational& {
          return pu.unary[v][a * pu.domains[v] + s[v]];
        });
      for (auto e : edge_at[b]) {
        const PairEdge& E = pu.edges[e];
        add([&](std::size_t a, const std::vector<std::size_t>& s) -> const Rational& {
          return E.table[(a * pu.domains[E.u] + s[E.u]) * pu.domains[E.v] + s[E.v]];
        });
      }
      VecSet acc{base};
      for (auto c : children[b]) {
        std::vector<std::size_t> key;
        for (auto v : vars[c])
          if (holds(b, v)) key.push_back(code[std::lower_bound(vb.begin(), vb.end(), v) - vb.begin()]);
        acc = minkowski(acc, msg[c].at(key));
      }
      std::vector<std::size_t> key;
      for (auto k : sep_pos) key.push_back(code[k]);
      auto& slot = msg[b][key];
      slot.insert(acc.begin(), acc.end());

      std::size_t k = 0;
      for (; k < code.size(); ++k) {
        if (++code[k] < radix[k]) break;
        code[k] = 0;
      }
      if (k == code.size()) break;
    }
    for (auto c : children[b]) msg[c].clear();
  }
  for (const auto& pv : msg[0].at({}))
    if (pattern(pv, 0, A) != pattern(pv, half, A)) return true;
  return false;
}

CoordSet relevant_pairwise(const PairwiseUtility& pu, StepCounter& counter) {
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < pu.domains.size(); ++i)
    if (coordinate_relevant(pu, i, counter)) members.push_back(i);
  return CoordSet(std::move(members));
}

Verdict check_sufficiency_treewidth(const PairwiseUtility& pu, const CoordSet& I,
                                    StepCounter& counter) {
  I.validate(pu.domains.size());
  for (std::size_t i = 0; i < pu.domains.size(); ++i)
    if (!I.contains(i) && coordinate_relevant(pu, i, counter))
      return no_verdict(CoordSet{i}).record(counter);
  return yes_verdict().record(counter);
}

Verdict check_sufficiency_treewidth(const PairwiseUtility& pu, const CoordSet& I) {
  StepCounter counter;
  return check_sufficiency_treewidth(pu, I, counter);
}

std::uint64_t treewidth_step_bound(const PairwiseUtility& pu, const CoordSet& I) {
  std::size_t k = 1;
  for (auto d : pu.domains) k = std::max(k, d);
  const std::size_t tested = pu.domains.size() - I.size();
  return tested * pu.decomposition.bags.size() * ipow(k, pu.decomposition.width + 2);
}

// ---------------------------------------------------------------- tree

void TreeUtility::validate() const {
  const std::size_t n = domains.size(), A = actions.size();
  if (A == 0) throw FormatError("tree utility needs at least one action");
  if (parent.size() != n || local.size() != n)
    throw FormatError("tree utility needs one parent and one local table per coordinate");
  for (std::size_t i = 0; i < n; ++i) {
    if (parent[i] >= static_cast<long>(i) || parent[i] < -1)
      throw FormatError("parent of " + std::to_string(i) + " must be -1 or a smaller index");
    const std::size_t kp = parent[i] < 0 ? 1 : domains[static_cast<std::size_t>(parent[i])];
    if (local[i].size() != A * domains[i] * kp)
      throw FormatError("local table " + std::to_string(i) + " has the wrong size");
  }
}

PairwiseUtility TreeUtility::to_pairwise() const {
  validate();
  const std::size_t n = domains.size(), A = actions.size();
  PairwiseUtility pu;
  pu.actions = actions;
  pu.domains = domains;
  pu.unary.assign(n, {});
  std::size_t first_root = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = domains[i];
    if (parent[i] < 0) {
      pu.unary[i] = local[i];
      pu.decomposition.bags.push_back({i});
      if (i != first_root) pu.decomposition.edges.emplace_back(first_root, i);
      continue;
    }
    const auto p = static_cast<std::size_t>(parent[i]);
    const std::size_t kp = domains[p];
    PairEdge e{p, i, std::vector<Rational>(A * kp * k)};
    for (std::size_t a = 0; a < A; ++a)
      for (std::size_t xi = 0; xi < k; ++xi)
        for (std::size_t xp = 0; xp < kp; ++xp)
          e.table[(a * kp + xp) * k + xi] = local[i][(a * k + xi) * kp + xp];
    pu.edges.push_back(std::move(e));
    pu.decomposition.bags.push_back({p, i});
    pu.decomposition.edges.emplace_back(p, i);
    pu.decomposition.width = 1;
  }
  return pu;
}

DecisionProblem expand_tree(const TreeUtility& tu) {
  tu.validate();
  return DecisionProblem::tabulate(tu.actions, tu.domains, [&](ActionIndex a, const State& s) {
    Rational total = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const std::size_t k = tu.domains[i];
      if (tu.parent[i] < 0) {
        total += tu.local[i][a * k + s[i]];
      } else {
        const auto p = static_cast<std::size_t>(tu.parent[i]);
        total += tu.local[i][(a * k + s[i]) * tu.domains[p] + s[p]];
      }
    }
    return total;
  });
}

CoordSet relevant_tree(const TreeUtility& tu, StepCounter& counter) {
  return relevant_pairwise(tu.to_pairwise(), counter);
}

CoordSet relevant_tree(const TreeUtility& tu) {
  StepCounter counter;
  return relevant_tree(tu, counter);
}

// ---------------------------------------------------------------- symmetric

std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t out = 1;
  for (std::uint64_t j = 1; j <= r; ++j) out = out * (n - r + j) / j;
  return out;
}

std::vector<OrbitType> orbit_types(std::size_t d, std::size_t k) {
  std::vector<OrbitType> out;
  if (k == 0) return out;
  OrbitType cur(k, 0);
  auto fill = [&](auto&& self, std::size_t pos, std::size_t left) -> void {
    if (pos + 1 == k) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (std::size_t c = 0; c <= left; ++c) {
      cur[pos] = c;
      self(self, pos + 1, left - c);
    }
  };
  fill(fill, 0, d);
  return out;
}

OrbitType orbit_type(const State& s, std::size_t k) {
  OrbitType t(k, 0);
  for (auto v : s) ++t.at(v);
  return t;
}

void verify_symmetric(const DecisionProblem& problem) {
  const auto& dom = problem.domains();
  for (std::size_t i = 1; i < dom.size(); ++i)
    if (dom[i] != dom[0]) throw PreconditionError("coordinate domains differ; not symmetric");
  for (StateIndex s = 0; s < problem.num_states(); ++s)
    for (std::size_t j = 0; j + 1 < dom.size(); ++j) {
      const std::size_t x = problem.digit(s, j), y = problem.digit(s, j + 1);
      if (x == y) continue;
      const StateIndex t = problem.with_digit(problem.with_digit(s, j, y), j + 1, x);
      for (ActionIndex a = 0; a < problem.num_actions(); ++a)
        if (problem.utility(a, s) != problem.utility(a, t))
          throw PreconditionError("utility not invariant under transposition (" +
                                  std::to_string(j) + " " + std::to_string(j + 1) +
                                  ") at state " + std::to_string(s));
    }
}

Verdict check_sufficiency_symmetric(const DecisionProblem& problem, const CoordSet& I,
                                    StepCounter& counter) {
  I.validate(problem.num_coords());
  verify_symmetric(problem);
  const std::size_t d = problem.num_coords();
  const std::size_t k = d ? problem.domains()[0] : 1;
  const auto types = orbit_types(d, k);
  auto representative = [&](const OrbitType& t) {
    State s;
    for (std::size_t v = 0; v < k; ++v) s.insert(s.end(), t[v], v);
    return s;
  };
  std::vector<OptSet> F;
  for (const auto& t : types) F.push_back(opt(problem, representative(t)));

  for (std::size_t x = 0; x < types.size(); ++x)
    for (std::size_t y = x + 1; y < types.size(); ++y) {
      counter.step();
      if (F[x] == F[y]) continue;
      std::size_t shared = 0;
      for (std::size_t v = 0; v < k; ++v) shared += std::min(types[x][v], types[y][v]);
      if (shared < I.size()) continue;
      // Common values on I, the rest of each type elsewhere.
      OrbitType common(k, 0);
      std::size_t need = I.size();
      for (std::size_t v = 0; v < k && need; ++v) {
        common[v] = std::min({types[x][v], types[y][v], need});
        need -= common[v];
      }
      auto build = [&](const OrbitType& t) {
        State s(d, 0);
        std::vector<std::size_t> on, off;
        for (std::size_t v = 0; v < k; ++v) {
          on.insert(on.end(), common[v], v);
          off.insert(off.end(), t[v] - common[v], v);
        }
        std::size_t a = 0, b = 0;
        for (std::size_t i = 0; i < d; ++i) s[i] = I.contains(i) ? on[a++] : off[b++];
        return problem.encode(s);
      };
      StateIndex s = build(types[x]), t = build(types[y]);
      if (s > t) std::swap(s, t);
      return no_verdict(StatePair{s, t}).record(counter);
    }
  return yes_verdict().record(counter);
}

Verdict check_sufficiency_symmetric(const DecisionProblem& problem, const CoordSet& I) {
  StepCounter counter;
  return check_sufficiency_symmetric(problem, I, counter);
}

// ---------------------------------------------------------------- bounded actions

BoundedActionsResult check_bounded_actions(const DecisionProblem& problem, const CoordSet& I) {
  BoundedActionsResult r;
  r.verdict = check_sufficiency(problem, I, SufficiencyStrategy::Pairwise);
  const std::uint64_t S = problem.num_states(), A = problem.num_actions();
  r.bound = S * S * A * A;
  return r;
}

}  // namespace relevance
