#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "nonholonomy/chart.hpp"
#include "nonholonomy/distributions.hpp"
#include "nonholonomy/errors.hpp"
#include "nonholonomy/forms.hpp"

namespace nonholonomy::cli {

/// Syntax or type error with a 1-based source position.
class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

using Value = std::variant<DiffForm, VectorField>;

struct Binding {
  std::string name;
  Value value;

  friend bool operator==(const Binding&, const Binding&) = default;
};

struct TaskSpec {
  std::string name;
  std::vector<std::pair<std::string, std::string>> args;

  std::optional<std::string> arg(std::string_view key) const;

  friend bool operator==(const TaskSpec&, const TaskSpec&) = default;
};

/// A parsed input file:
///
///   coords x y z;
///   form a = d(z) - y*d(x);
///   field X = @x + y*@z;
///   coframe a;
///   task check-dlo;
///
/// `*` multiplies by a function, `^` is the wedge product; both bind equally
/// tightly and associate to the left.
struct Document {
  std::optional<Chart> chart;
  std::vector<Binding> bindings;
  std::vector<std::string> frame;
  std::vector<std::string> coframe;
  std::vector<std::string> omegas;
  std::vector<TaskSpec> tasks;

  const Binding* find(std::string_view name) const;
  /// Throw InputError for unknown names or the wrong kind.
  const DiffForm& form(std::string_view name) const;
  const VectorField& field(std::string_view name) const;

  std::vector<DiffForm> coframe_forms() const;
  std::vector<DiffForm> omega_forms() const;
  /// From the frame and/or coframe statements. Throws InputError when neither is given.
  Distribution distribution() const;

  /// Source text that parses back to an equal document.
  std::string to_string() const;

  friend bool operator==(const Document&, const Document&) = default;
};

Document parse_document(std::string_view text);

}  // namespace nonholonomy::cli
