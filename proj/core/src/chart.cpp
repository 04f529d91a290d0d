#include "nonholonomy/chart.hpp"

#include <algorithm>
#include <unordered_set>

#include "nonholonomy/errors.hpp"

namespace nonholonomy {

Chart::Chart(std::vector<std::string> names) {
  if (names.empty()) throw InputError("a chart needs at least one coordinate");
  std::unordered_set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty()) throw InputError("empty coordinate name");
    if (!seen.insert(n).second) throw InputError("duplicate coordinate '" + n + "'");
  }
  names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
}

Chart Chart::numbered(std::string_view prefix, std::size_t n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) names.push_back(std::string(prefix) + std::to_string(i));
  return Chart(std::move(names));
}

std::optional<std::size_t> Chart::index_of(std::string_view name) const {
  const auto it = std::find(names_->begin(), names_->end(), name);
  if (it == names_->end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_->begin());
}

}  // namespace nonholonomy
