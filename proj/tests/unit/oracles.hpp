#pragma once

// Test-side reference implementations. They use only the raw utility table
// and state decoding of DecisionProblem, never the library's deciders.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "relevance/core.hpp"
#include "relevance/rational.hpp"

namespace oracle {

using relevance::DecisionProblem;
using relevance::Rational;

inline std::vector<std::size_t> argmax(const std::vector<Rational>& xs) {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < xs.size(); ++a) {
    if (out.empty() || xs[a] > xs[out.front()])
      out = {a};
    else if (xs[a] == xs[out.front()])
      out.push_back(a);
  }
  return out;
}

inline std::vector<std::size_t> opt_of(const DecisionProblem& p, std::size_t s) {
  std::vector<Rational> u;
  for (std::size_t a = 0; a < p.num_actions(); ++a) u.push_back(p.utility(a, s));
  return argmax(u);
}

inline bool agree(const DecisionProblem& p, std::size_t s, std::size_t t, std::uint64_t mask) {
  const auto x = p.decode(s), y = p.decode(t);
  for (std::size_t i = 0; i < x.size(); ++i)
    if ((mask >> i & 1) && x[i] != y[i]) return false;
  return true;
}

// Pairwise definition of sufficiency over a coordinate mask.
inline bool sufficient(const DecisionProblem& p, std::uint64_t mask) {
  for (std::size_t s = 0; s < p.num_states(); ++s)
    for (std::size_t t = s + 1; t < p.num_states(); ++t)
      if (agree(p, s, t, mask) && opt_of(p, s) != opt_of(p, t)) return false;
  return true;
}

// Smallest sufficient mask by size, then lexicographic member order.
inline std::uint64_t minimum_mask(const DecisionProblem& p) {
  const std::size_t n = p.num_coords();
  std::optional<std::uint64_t> best;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    if (!sufficient(p, m)) continue;
    if (!best || __builtin_popcountll(m) < __builtin_popcountll(*best)) best = m;
  }
  return *best;
}

inline std::uint64_t relevant_mask(const DecisionProblem& p) {
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < p.num_coords(); ++i) {
    const std::uint64_t others = ((std::uint64_t{1} << p.num_coords()) - 1) & ~(std::uint64_t{1} << i);
    for (std::size_t s = 0; s < p.num_states() && !(out >> i & 1); ++s)
      for (std::size_t t = 0; t < p.num_states(); ++t)
        if (agree(p, s, t, others) && opt_of(p, s) != opt_of(p, t)) {
          out |= std::uint64_t{1} << i;
          break;
        }
  }
  return out;
}

inline std::uint64_t mask_of(const relevance::CoordSet& I) {
  std::uint64_t m = 0;
  for (auto i : I) m |= std::uint64_t{1} << i;
  return m;
}

// Conditional optimizer of the fiber of s under a distribution; empty when
// the fiber has zero mass.
inline std::vector<std::size_t> fiber_opt(const DecisionProblem& p, const std::vector<Rational>& dist,
                                          std::uint64_t mask, std::size_t s) {
  std::vector<Rational> e(p.num_actions());
  Rational mass = 0;
  for (std::size_t t = 0; t < p.num_states(); ++t) {
    if (!agree(p, s, t, mask)) continue;
    mass += dist[t];
    for (std::size_t a = 0; a < p.num_actions(); ++a) e[a] += dist[t] * p.utility(a, t);
  }
  if (mass == 0) return {};
  return argmax(e);
}

// Lenient preservation: every state of a positive-mass fiber has Opt equal to
// the fiber optimizer.
inline bool preserving(const DecisionProblem& p, const std::vector<Rational>& dist, std::uint64_t mask) {
  for (std::size_t s = 0; s < p.num_states(); ++s) {
    const auto f = fiber_opt(p, dist, mask, s);
    if (!f.empty() && f != opt_of(p, s)) return false;
  }
  return true;
}

inline bool decisive(const DecisionProblem& p, const std::vector<Rational>& dist, std::uint64_t mask) {
  for (std::size_t s = 0; s < p.num_states(); ++s) {
    const auto f = fiber_opt(p, dist, mask, s);
    if (!f.empty() && f.size() != 1) return false;
  }
  return true;
}

inline DecisionProblem random_problem(std::mt19937_64& rng, std::size_t n, std::size_t actions,
                                      int max_utility, std::size_t max_domain = 2) {
  std::uniform_int_distribution<std::size_t> dom(2, max_domain);
  std::vector<std::size_t> domains;
  for (std::size_t i = 0; i < n; ++i) domains.push_back(dom(rng));
  std::size_t S = 1;
  for (auto d : domains) S *= d;
  std::uniform_int_distribution<int> u(0, max_utility);
  std::vector<Rational> table;
  for (std::size_t k = 0; k < actions * S; ++k) table.emplace_back(u(rng));
  std::vector<std::string> names;
  for (std::size_t a = 0; a < actions; ++a) names.push_back("a" + std::to_string(a));
  return DecisionProblem(names, domains, table);
}

inline std::vector<Rational> random_distribution(std::mt19937_64& rng, std::size_t S, bool full) {
  std::uniform_int_distribution<int> w(full ? 1 : 0, 4);
  std::vector<Rational> d;
  Rational total = 0;
  for (std::size_t s = 0; s < S; ++s) {
    d.emplace_back(w(rng));
    total += d.back();
  }
  if (total == 0) {
    d[0] = 1;
    total = 1;
  }
  for (auto& x : d) {
    x /= total;
    x.canonicalize();
  }
  return d;
}

// Truth table on k variables as a bitmask.
inline bool truth(std::uint64_t table, std::uint64_t assignment) { return table >> assignment & 1; }

}  // namespace oracle
