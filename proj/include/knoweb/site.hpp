#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "knoweb/diagnostic.hpp"
#include "knoweb/graph.hpp"

namespace knoweb {

inline constexpr std::string_view kIndexPage = "index.html";
inline constexpr std::string_view kNamesPage = "names.html";
inline constexpr std::string_view kGraphExport = "graph.json";
inline constexpr std::string_view kStylesheet = "assets/style.css";
inline constexpr std::string_view kExplorerScript = "assets/explorer.js";

/// `<kind>/<local>.html`, relative to the site root.
std::string page_path(const NodeId& id, NodeKind kind);

/// Local ids map to `<kind>/<local>.html`. Namespaced ids map to
/// `<base-url>/node/<local>.html`, since the hosting site's kind layout is
/// unknown here. Throws DiagnosticError E501 for an undeclared namespace.
std::string node_url(const NodeId& id, const Manifest& manifest, NodeKind kind = NodeKind::Concept);

struct SiteOptions {
  std::optional<std::string> base_url;  // absolute links to local pages when set
  std::optional<std::filesystem::path> explorer_script;  // copied to assets/explorer.js when set
};

struct SiteManifest {
  std::vector<std::pair<NodeId, std::string>> pages;
  std::vector<std::string> indexes;
  std::string graph_export;
  std::vector<std::string> assets;
  std::optional<std::string> base_url;

  /// Every relative path written, sorted.
  std::vector<std::string> files() const;
};

struct RenderedSite {
  SiteManifest manifest;
  std::map<std::string, std::string> files;  // relative path -> bytes
  Diagnostics diagnostics;                   // W502 per rendered external link
};

/// Builds the whole site in memory. Expects a resolved graph with inverses completed.
RenderedSite render_site(const KnowledgeGraph& graph, const SiteOptions& options = {});

struct SiteResult {
  SiteManifest manifest;
  Diagnostics diagnostics;
};

/// Renders and writes the site under `out_dir`. Throws DiagnosticError E503
/// when a file cannot be written.
SiteResult emit_site(const KnowledgeGraph& graph, const std::filesystem::path& out_dir,
                     const SiteOptions& options = {});

/// The graph export: `{"edges": [...], "nodes": [...]}` with stable ordering.
std::string export_graph(const KnowledgeGraph& graph);

}  // namespace knoweb
