#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "knoweb/diagnostic.hpp"
#include "knoweb/graph.hpp"

namespace knoweb {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kValidationErrors = 1;
inline constexpr int kUsage = 2;
}  // namespace exit_code

struct CheckedBase {
  KnowledgeGraph graph;  // resolved iff no link errors
  Diagnostics diagnostics;
};

/// Loads `root` and runs every validation; diagnostics are merged and sorted.
CheckedBase check_knowledge_base(const std::filesystem::path& root);

/// Entry point for the `knoweb` tool. `args` excludes the program name.
/// Results go to `out`, diagnostics and usage text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace knoweb
