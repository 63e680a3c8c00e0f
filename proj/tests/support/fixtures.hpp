#pragma once

#include <stdexcept>
#include <string>

#include "knoweb/analysis.hpp"
#include "knoweb/cli.hpp"
#include "knoweb/validator.hpp"

namespace knoweb::testing {

/// Validates and fails loudly on any error.
inline KnowledgeGraph resolved(KnowledgeGraph graph) {
  auto result = validate(std::move(graph));
  for (const auto& d : result.diagnostics)
    if (d.is_error()) throw std::runtime_error("unexpected " + render(d));
  return std::move(result.graph);
}

inline KnowledgeGraph completed(KnowledgeGraph graph) { return complete_inverses(resolved(std::move(graph))).graph; }

inline KnowledgeGraph load_checked(const std::string& dir) {
  auto checked = check_knowledge_base(dir);
  for (const auto& d : checked.diagnostics)
    if (d.is_error()) throw std::runtime_error("unexpected " + render(d));
  return std::move(checked.graph);
}

}  // namespace knoweb::testing
