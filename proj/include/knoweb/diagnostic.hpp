#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "knoweb/node_id.hpp"

namespace knoweb {

enum class Severity { Error, Warning };

struct SourceLocation {
  std::string file;
  int line = 0;

  friend bool operator==(const SourceLocation&, const SourceLocation&) = default;
};

/// A coded finding. Codes starting with `E` are errors, `W` warnings.
struct Diagnostic {
  std::string code;
  std::optional<NodeId> node;
  std::optional<std::string> field;
  std::string message;
  SourceLocation location;

  Severity severity() const { return !code.empty() && code[0] == 'E' ? Severity::Error : Severity::Warning; }
  bool is_error() const { return severity() == Severity::Error; }

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

using Diagnostics = std::vector<Diagnostic>;

bool has_errors(const Diagnostics& diags);
std::size_t count_code(const Diagnostics& diags, std::string_view code);

/// Stable order: file, line, code, then node and message as tie-breakers.
void sort_diagnostics(Diagnostics& diags);

/// `LEVEL CODE file:line node.field — message`
std::string render(const Diagnostic& diag);

/// Thrown by query operations (shortcuts, usability, urls) that fail with a code.
class DiagnosticError : public std::runtime_error {
 public:
  explicit DiagnosticError(Diagnostic diag)
      : std::runtime_error(diag.code + ": " + diag.message), diag_(std::move(diag)) {}

  const Diagnostic& diagnostic() const { return diag_; }

 private:
  Diagnostic diag_;
};

}  // namespace knoweb
