#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "knoweb/diagnostic.hpp"
#include "knoweb/graph.hpp"

// Source format
//
//   # comment
//   @concept quadratic-function-real
//   name: real-valued quadratic function of a real variable
//   definition: A [[real-polynomial-function|real-valued polynomial function
//     of a real variable]] involving [[term|terms]] of the
//     [[second-degree|second degree]] at most.
//   generalizations: polynomial-solvable-by-radicals, function-with-global-extremum
//   domain: mathematics
//
// A field line starts in column 0 with `<field>:`. Any other non-blank,
// non-comment line continues the current value; continuation lines are
// trimmed and joined with single spaces. `name:` repeats on problems and
// strategies. Id-list fields are comma-separated and may repeat.

namespace knoweb {

struct RawField {
  std::string name;
  std::string value;
  int line = 0;
};

struct NodeDraft {
  NodeKind kind = NodeKind::Concept;
  NodeId id;
  std::vector<RawField> fields;  // authored order
  SourceLocation location;
  std::vector<std::string> comments;  // comment lines attached to this block
};

struct SourceParse {
  std::vector<NodeDraft> drafts;
  Diagnostics diagnostics;
  std::vector<std::string> trailing_comments;  // comments in a file with no block after them
};

/// Never throws on malformed input; every anomaly becomes a diagnostic.
SourceParse parse_source(std::string_view text, const std::string& file);

struct InlineParse {
  RichText text;
  Diagnostics diagnostics;  // W201 unterminated marker, E104 malformed id
};

/// `[[id]]` and `[[id|display]]` become links; everything else is literal.
InlineParse parse_inline_links(std::string_view text);

struct Elaboration {
  std::optional<Node> node;  // absent when a required field is missing
  Diagnostics diagnostics;
  NodeOrigin origin;
};

/// Turns a draft into a typed node.
Elaboration elaborate(const NodeDraft& draft);

struct ManifestParse {
  Manifest manifest;
  Diagnostics diagnostics;
};

ManifestParse parse_manifest(std::string_view text, const std::string& file);

inline constexpr std::string_view kManifestFileName = "knoweb.manifest";
inline constexpr std::string_view kSourceExtension = ".knb";

struct LoadResult {
  KnowledgeGraph graph;  // unresolved
  Diagnostics diagnostics;
};

/// Parses `knoweb.manifest` and every `*.knb` below `root` in lexicographic path order.
LoadResult load_knowledge_base(const std::filesystem::path& root);

/// `*.knb` files below `root`, sorted by their root-relative generic path.
std::vector<std::filesystem::path> source_files(const std::filesystem::path& root);

/// Canonical block text, terminated by a newline.
std::string serialize_node(const Node& node);

/// Canonical text for a whole file: comments, then blocks separated by blank lines.
std::string serialize_source(const std::vector<Node>& nodes,
                             const std::vector<std::vector<std::string>>& comments = {},
                             const std::vector<std::string>& trailing_comments = {});

struct FormatResult {
  std::optional<std::string> text;  // absent when the file has errors
  Diagnostics diagnostics;
};

/// Parses and re-emits one source file in canonical form.
FormatResult format_source(std::string_view text, const std::string& file);

}  // namespace knoweb
