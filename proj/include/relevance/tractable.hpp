#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "relevance/core.hpp"
#include "relevance/static.hpp"
#include "relevance/steps.hpp"

namespace relevance {

// ---------------------------------------------------------------- separable

struct SeparableResult {
  bool separable = false;
  std::vector<Rational> f;  // per action, relative to action 0
  std::vector<Rational> g;  // per state, U(action 0, s)
};

// U(a, s) - U(0, s) constant in s for every a.
SeparableResult check_separable(const DecisionProblem& problem);

// ---------------------------------------------------------------- tensor

struct TensorRankUtility {
  std::vector<std::string> actions;
  std::vector<std::size_t> domains;
  std::vector<Rational> weights;                             // w_r
  std::vector<std::vector<Rational>> action_factors;         // f_r(a)
  std::vector<std::vector<std::vector<Rational>>> coord_factors;  // g_{r,i}(x)

  std::size_t rank() const noexcept { return weights.size(); }
  void validate() const;
};

struct TensorEval {
  OptSet opt;
  std::uint64_t mult_adds = 0;
};

// Products over coordinates once per r (R n), then |A| R multiply-adds.
TensorEval opt_tensor(const TensorRankUtility& tu, const State& s);
DecisionProblem expand_tensor(const TensorRankUtility& tu);

// ---------------------------------------------------------------- pairwise

struct PairEdge {
  std::size_t u = 0, v = 0;      // u < v
  std::vector<Rational> table;  // [a][x_u][x_v]
};

struct TreeDecomposition {
  std::vector<std::vector<std::size_t>> bags;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // between bag indices
  std::size_t width = 0;
};

// U(a, s) = sum_i unary_i(a, s_i) + sum_{(u,v)} edge(a, s_u, s_v).
struct PairwiseUtility {
  std::vector<std::string> actions;
  std::vector<std::size_t> domains;
  std::vector<std::vector<Rational>> unary;  // [i][a][x]; may be empty per i
  std::vector<PairEdge> edges;
  TreeDecomposition decomposition;

  // Tables sized correctly; FormatError otherwise.
  void validate_tables() const;
  // Every vertex and edge covered, tree shaped, running intersection, and
  // declared width = max bag size - 1. FormatError otherwise.
  void validate_decomposition() const;
};

DecisionProblem expand_pairwise(const PairwiseUtility& pu);

// Bag dynamic program over achievable pairs of action-difference vectors for
// two states that differ only at the tested coordinate. One step per bag
// assignment enumerated; per tested coordinate at most
// |bags| * k^(w+1) * k steps with k the largest domain.
bool coordinate_relevant(const PairwiseUtility& pu, std::size_t i, StepCounter& counter);
CoordSet relevant_pairwise(const PairwiseUtility& pu, StepCounter& counter);

// NO carries CoordSet{i} for the first relevant coordinate outside I.
Verdict check_sufficiency_treewidth(const PairwiseUtility& pu, const CoordSet& I,
                                    StepCounter& counter);
Verdict check_sufficiency_treewidth(const PairwiseUtility& pu, const CoordSet& I);

std::uint64_t treewidth_step_bound(const PairwiseUtility& pu, const CoordSet& I);

// ---------------------------------------------------------------- tree

// parent[i] < i, or -1 for a root. local[i] is [a][x_i][x_parent] with a
// parent domain of 1 for roots.
struct TreeUtility {
  std::vector<std::string> actions;
  std::vector<std::size_t> domains;
  std::vector<long> parent;
  std::vector<std::vector<Rational>> local;

  void validate() const;
  // Edges (i, parent(i)) with bags {parent(i), i}; roots carry unary terms.
  PairwiseUtility to_pairwise() const;
};

DecisionProblem expand_tree(const TreeUtility& tu);
CoordSet relevant_tree(const TreeUtility& tu, StepCounter& counter);
CoordSet relevant_tree(const TreeUtility& tu);

// ---------------------------------------------------------------- symmetric

using OrbitType = std::vector<std::size_t>;  // counts of each value, sums to d

// Count vectors of length k summing to d, in lexicographic order.
std::vector<OrbitType> orbit_types(std::size_t d, std::size_t k);
OrbitType orbit_type(const State& s, std::size_t k);
std::uint64_t binomial(std::uint64_t n, std::uint64_t r);

// Exact check: U is invariant under every adjacent transposition, which
// generate all coordinate permutations. Throws PreconditionError naming the
// transposition and state on failure, or when domains differ.
void verify_symmetric(const DecisionProblem& problem);

// I is insufficient iff two orbit types with different optimizer sets share
// a sub-multiset of size |I|. One step per orbit-type pair. NO carries an
// explicit state pair.
Verdict check_sufficiency_symmetric(const DecisionProblem& problem, const CoordSet& I,
                                    StepCounter& counter);
Verdict check_sufficiency_symmetric(const DecisionProblem& problem, const CoordSet& I);

// ---------------------------------------------------------------- bounded actions

struct BoundedActionsResult {
  Verdict verdict;
  std::uint64_t bound = 0;  // |S|^2 |A|^2
};

BoundedActionsResult check_bounded_actions(const DecisionProblem& problem, const CoordSet& I);

}  // namespace relevance
