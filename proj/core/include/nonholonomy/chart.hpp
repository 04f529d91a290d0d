#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nonholonomy {

/// Ordered list of distinct coordinate names. Copies share storage.
class Chart {
 public:
  /// Throws InputError on an empty list or duplicate names.
  explicit Chart(std::vector<std::string> names);

  /// Chart with coordinates prefix1..prefixN.
  static Chart numbered(std::string_view prefix, std::size_t n);

  std::size_t dim() const noexcept { return names_->size(); }
  const std::string& name(std::size_t i) const { return (*names_)[i]; }
  const std::vector<std::string>& names() const noexcept { return *names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  friend bool operator==(const Chart& a, const Chart& b) {
    return a.names_ == b.names_ || *a.names_ == *b.names_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

}  // namespace nonholonomy
