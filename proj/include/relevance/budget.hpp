#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace relevance {

// Capacity limits for exhaustive procedures. All limits are inclusive.
struct Budgets {
  std::uint64_t expansion_entries = std::uint64_t{1} << 20;  // |A| * |S| for expand()
  std::size_t formula_vars = 20;                             // truth-table oracle
  std::size_t qbf_vars = 16;                                 // game-tree oracle
  std::size_t lattice_coords = 20;                           // subset-lattice scans

  // Defaults, overridden by RELEVANCE_KIT_BUDGET when set. The variable holds
  // either a bare integer (expansion entries) or a comma separated list of
  // key=value pairs with keys expansion, formula, qbf, lattice.
  static Budgets from_env();
  static Budgets parse(std::string_view spec, const Budgets& base);
  static Budgets parse(std::string_view spec);
};

const Budgets& default_budgets();

}  // namespace relevance
