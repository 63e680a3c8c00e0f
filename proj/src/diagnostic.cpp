#include "knoweb/diagnostic.hpp"

#include <algorithm>
#include <tuple>

namespace knoweb {

bool has_errors(const Diagnostics& diags) {
  return std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) { return d.is_error(); });
}

std::size_t count_code(const Diagnostics& diags, std::string_view code) {
  return static_cast<std::size_t>(
      std::count_if(diags.begin(), diags.end(), [&](const Diagnostic& d) { return d.code == code; }));
}

void sort_diagnostics(Diagnostics& diags) {
  auto key = [](const Diagnostic& d) {
    return std::make_tuple(std::cref(d.location.file), d.location.line, std::cref(d.code),
                           d.node ? d.node->str() : std::string{}, std::cref(d.message));
  };
  std::stable_sort(diags.begin(), diags.end(),
                   [&](const Diagnostic& a, const Diagnostic& b) { return key(a) < key(b); });
}

std::string render(const Diagnostic& diag) {
  std::string out = diag.is_error() ? "error " : "warning ";
  out += diag.code;
  out += ' ';
  out += diag.location.file.empty() ? std::string("-") : diag.location.file;
  out += ':';
  out += std::to_string(diag.location.line);
  out += ' ';
  if (diag.node) {
    out += diag.node->str();
    if (diag.field) out += "." + *diag.field;
  } else if (diag.field) {
    out += *diag.field;
  } else {
    out += '-';
  }
  out += " — ";
  out += diag.message;
  return out;
}

}  // namespace knoweb
