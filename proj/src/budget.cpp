#include "relevance/budget.hpp"

#include <charconv>
#include <cstdlib>
#include <string>

#include "relevance/errors.hpp"

namespace relevance {

namespace {

std::uint64_t parse_count(std::string_view text) {
  std::uint64_t value = 0;
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), last, value);
  if (ec != std::errc{} || ptr != last)
    throw FormatError("bad budget value '" + std::string(text) + "'");
  return value;
}

}  // namespace

Budgets Budgets::parse(std::string_view spec) { return parse(spec, Budgets{}); }

Budgets Budgets::parse(std::string_view spec, const Budgets& defaults) {
  Budgets base = defaults;
  if (spec.find('=') == std::string_view::npos) {
    base.expansion_entries = parse_count(spec);
    return base;
  }
  while (!spec.empty()) {
    const auto comma = spec.find(',');
    const std::string_view item = spec.substr(0, comma);
    spec = comma == std::string_view::npos ? std::string_view{} : spec.substr(comma + 1);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw FormatError("bad budget item '" + std::string(item) + "'");
    const std::string_view key = item.substr(0, eq);
    const std::uint64_t value = parse_count(item.substr(eq + 1));
    if (key == "expansion") base.expansion_entries = value;
    else if (key == "formula") base.formula_vars = value;
    else if (key == "qbf") base.qbf_vars = value;
    else if (key == "lattice") base.lattice_coords = value;
    else throw FormatError("unknown budget key '" + std::string(key) + "'");
  }
  return base;
}

Budgets Budgets::from_env() {
  const char* env = std::getenv("RELEVANCE_KIT_BUDGET");
  if (env == nullptr || *env == '\0') return Budgets{};
  return parse(env);
}

const Budgets& default_budgets() {
  static const Budgets budgets = Budgets::from_env();
  return budgets;
}

}  // namespace relevance
