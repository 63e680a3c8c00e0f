#include "knoweb/site.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace knoweb {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kSummaryLength = 200;

constexpr std::string_view kStyle = R"(body { font-family: sans-serif; max-width: 52em; margin: 2em auto; padding: 0 1em; line-height: 1.5; }
nav { font-size: 0.9em; margin-bottom: 1.5em; }
.kind { text-transform: uppercase; letter-spacing: 0.08em; font-size: 0.8em; color: #666; margin: 0; }
.node-id { font-family: monospace; color: #888; margin-top: 0; }
h1 { margin-bottom: 0.2em; }
h2 { font-size: 1.05em; border-bottom: 1px solid #ddd; padding-bottom: 0.2em; }
.none { color: #999; font-style: italic; }
a.external::after { content: " \2197"; }
body.kind-concept h1 { color: #1f4e79; }
body.kind-problem h1 { color: #7a2e0e; }
body.kind-pattern h1 { color: #2e6b30; }
body.kind-strategy h1 { color: #5b2c83; }
body.kind-domain h1 { color: #444; }
)";

std::string escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string capitalize(std::string_view text) {
  std::string out(text);
  if (!out.empty() && out[0] >= 'a' && out[0] <= 'z') out[0] = static_cast<char>(out[0] - 'a' + 'A');
  return out;
}

std::string section_title(NodeKind kind, std::string_view field) {
  bool strategy = kind == NodeKind::Strategy;
  if (field == fields::kName) return kind == NodeKind::Problem || strategy ? "Names" : "Name";
  if (field == fields::kGeneralizations) return strategy ? "Strategic generalizations" : "Generalizations";
  if (field == fields::kSpecializations) return strategy ? "Strategic specializations" : "Specializations";
  if (field == fields::kSteps) return strategy ? "Strategic subproblems" : "Subproblems";
  if (field == fields::kUsedIn) return "Used in definitions of";
  if (field == fields::kMotivates) return "Steps of solution patterns";
  if (field == fields::kSolutions) return "Solution patterns";
  if (field == fields::kPatternSpecializations) return "Domain-specific solution patterns";
  if (field == fields::kProminentConcepts) return "Prominent concepts";
  if (field == fields::kProminentProblems) return "Prominent problems";
  return capitalize(field);
}

/// First `limit` code points of valid UTF-8 text.
std::string utf8_prefix(const std::string& text, std::size_t limit) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if ((static_cast<unsigned char>(text[i]) & 0xC0) == 0x80) continue;
    if (count++ == limit) return text.substr(0, i);
  }
  return text;
}

/// Renders pages for one graph; collects W502 as it goes.
class PageWriter {
 public:
  PageWriter(const KnowledgeGraph& graph, const SiteOptions& options) : graph_(graph), options_(options) {}

  Diagnostics take_diagnostics() { return std::move(diags_); }

  std::string node_page(const Node& node) {
    NodeKind kind = kind_of(node);
    const NodeId& id = id_of(node);
    std::string body;
    body += "<p class=\"kind\">" + escape(to_string(kind)) + "</p>\n";
    body += "<h1>" + escape(display_name(node)) + "</h1>\n";
    body += "<p class=\"node-id\">" + escape(id.str()) + "</p>\n";

    for_each_field(node, [&](const FieldSpec& spec, const auto& value) {
      using T = std::decay_t<decltype(value)>;
      current_ = {id, spec.name};
      std::string content;
      if constexpr (std::is_same_v<T, std::string>) {
        content = paragraph(value);
      } else if constexpr (std::is_same_v<T, std::optional<std::string>>) {
        content = value ? paragraph(*value) : none();
      } else if constexpr (std::is_same_v<T, std::vector<std::string>>) {
        content = value.empty() ? none() : text_list(value);
      } else if constexpr (std::is_same_v<T, RichText>) {
        content = value.empty() ? none() : "<p>" + rich_text(value) + "</p>\n";
      } else if constexpr (std::is_same_v<T, NodeId>) {
        content = "<p>" + anchor(value) + "</p>\n";
      } else if constexpr (std::is_same_v<T, std::optional<NodeId>>) {
        content = value ? "<p>" + anchor(*value) + "</p>\n" : none();
      } else if constexpr (std::is_same_v<T, IdList>) {
        content = value.empty() ? none() : id_list(value, spec.name == fields::kSteps);
      }
      body += "<section class=\"field-" + std::string(spec.name) + "\">\n<h2>" +
              escape(section_title(kind, spec.name)) + "</h2>\n" + content + "</section>\n";
    });

    body += "<div id=\"knoweb-explorer\" data-node=\"" + escape(id.str()) + "\" data-root=\"..\"></div>\n";
    return document(display_name(node) + " (" + std::string(to_string(kind)) + ")", "kind-" + std::string(to_string(kind)),
                    "../", body);
  }

  std::string index_page() {
    std::map<std::optional<NodeId>, std::map<NodeKind, std::vector<const Node*>>> by_domain;
    std::vector<const Node*> domains;
    for (const auto& [id, node] : graph_.nodes) {
      if (kind_of(node) == NodeKind::Domain) {
        domains.push_back(&node);
        continue;
      }
      auto domain = domain_of(node);
      const Node* d = domain ? graph_.find(*domain) : nullptr;
      if (d == nullptr || kind_of(*d) != NodeKind::Domain) domain.reset();
      by_domain[domain][kind_of(node)].push_back(&node);
    }

    current_ = {};
    std::string body = "<h1>Knowledge base</h1>\n";
    body += "<p>" + std::to_string(graph_.nodes.size()) + " nodes. See also the <a href=\"" +
            std::string(kNamesPage) + "\">name index</a>.</p>\n";
    body += "<section class=\"domains\">\n<h2>Domains</h2>\n";
    body += domains.empty() ? none() : node_list(domains, "");
    body += "</section>\n";

    auto group = [&](const std::string& title, const std::map<NodeKind, std::vector<const Node*>>& kinds,
                     const std::string& heading_link) {
      body += "<section class=\"domain-group\">\n<h2>" + (heading_link.empty() ? escape(title) : heading_link) +
              "</h2>\n";
      for (const auto& [kind, nodes] : kinds) {
        body += "<h3>" + escape(capitalize(to_string(kind))) + "s</h3>\n";
        body += node_list(nodes, "");
      }
      body += "</section>\n";
    };
    for (const Node* d : domains) {
      auto it = by_domain.find(id_of(*d));
      if (it == by_domain.end()) continue;
      group(display_name(*d), it->second, link_to(*d, ""));
    }
    if (auto it = by_domain.find(std::nullopt); it != by_domain.end()) group("Other", it->second, "");
    return document("Knowledge base", "index", "", body);
  }

  std::string names_page() {
    std::map<std::string, std::vector<const Node*>> by_name;
    std::vector<const Node*> unnamed;
    for (const auto& [id, node] : graph_.nodes) {
      auto names = names_of(node);
      if (names.empty()) unnamed.push_back(&node);
      std::set<std::string> distinct(names.begin(), names.end());
      for (const auto& name : distinct) by_name[name].push_back(&node);
    }

    current_ = {};
    std::string body = "<h1>Names</h1>\n<p>Nodes sharing a name are listed together.</p>\n<dl>\n";
    for (const auto& [name, nodes] : by_name) {
      body += "<dt>" + escape(name) + "</dt>\n";
      for (const Node* n : nodes)
        body += "<dd>" + link_to(*n, "") + " <span class=\"kind\">" + escape(to_string(kind_of(*n))) +
                "</span></dd>\n";
    }
    body += "</dl>\n";
    if (!unnamed.empty()) body += "<section class=\"unnamed\">\n<h2>Unnamed</h2>\n" + node_list(unnamed, "") + "</section>\n";
    return document("Names", "names", "", body);
  }

 private:
  std::string document(const std::string& title, const std::string& body_class, const std::string& root,
                       const std::string& body) const {
    std::string out = "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n";
    out += "<title>" + escape(title) + "</title>\n";
    out += "<link rel=\"stylesheet\" href=\"" + root + std::string(kStylesheet) + "\">\n";
    if (options_.explorer_script) out += "<script src=\"" + root + std::string(kExplorerScript) + "\" defer></script>\n";
    out += "</head>\n<body class=\"" + body_class + "\">\n";
    out += "<nav><a href=\"" + root + std::string(kIndexPage) + "\">Index</a> | <a href=\"" + root +
           std::string(kNamesPage) + "\">Names</a></nav>\n<main>\n";
    out += body;
    out += "</main>\n</body>\n</html>\n";
    return out;
  }

  static std::string none() { return "<p class=\"none\">none</p>\n"; }
  static std::string paragraph(const std::string& text) { return "<p>" + escape(text) + "</p>\n"; }

  static std::string text_list(const std::vector<std::string>& items) {
    std::string out = "<ul>\n";
    for (const auto& item : items) out += "<li>" + escape(item) + "</li>\n";
    return out + "</ul>\n";
  }

  std::string id_list(const IdList& ids, bool ordered) {
    std::string tag = ordered ? "ol" : "ul";
    std::string out = "<" + tag + ">\n";
    for (const auto& id : ids) out += "<li>" + anchor(id) + "</li>\n";
    return out + "</" + tag + ">\n";
  }

  std::string node_list(const std::vector<const Node*>& nodes, const std::string& root) const {
    std::string out = "<ul>\n";
    for (const Node* n : nodes) out += "<li>" + link_to(*n, root) + "</li>\n";
    return out + "</ul>\n";
  }

  std::string link_to(const Node& node, const std::string& root) const {
    return "<a href=\"" + escape(local_href(id_of(node), kind_of(node), root)) + "\">" + escape(display_name(node)) +
           "</a>";
  }

  std::string local_href(const NodeId& id, NodeKind kind, const std::string& root) const {
    if (options_.base_url) return *options_.base_url + "/" + page_path(id, kind);
    return root + page_path(id, kind);
  }

  std::string rich_text(const RichText& text) {
    std::string out;
    for (const auto& seg : text.segments()) {
      if (const auto* literal = std::get_if<std::string>(&seg))
        out += escape(*literal);
      else
        out += anchor(std::get<Link>(seg).target, std::get<Link>(seg).display);
    }
    return out;
  }

  /// A link from a node page (one directory below the root).
  std::string anchor(const NodeId& id, std::optional<std::string> label = std::nullopt) {
    if (id.is_external()) {
      diags_.push_back(Diagnostic{"W502", current_.first, std::string(current_.second),
                                  "external link to '" + id.str() + "' cannot be verified",
                                  graph_.location_of(current_.first, current_.second)});
      std::string href = node_url(id, graph_.manifest);
      return "<a class=\"external\" href=\"" + escape(href) + "\">" + escape(label.value_or(id.str())) + "</a>";
    }
    const Node* target = graph_.find(id);
    if (target == nullptr) return "<span class=\"missing\">" + escape(label.value_or(id.str())) + "</span>";
    return "<a href=\"" + escape(local_href(id, kind_of(*target), "../")) + "\">" +
           escape(label.value_or(display_name(*target))) + "</a>";
  }

  const KnowledgeGraph& graph_;
  const SiteOptions& options_;
  Diagnostics diags_;
  std::pair<NodeId, std::string_view> current_;
};

void write_file(const fs::path& path, const std::string& bytes) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (ec || !out || !out.write(bytes.data(), static_cast<std::streamsize>(bytes.size())))
    throw DiagnosticError(Diagnostic{"E503", std::nullopt, std::nullopt,
                                     "cannot write " + path.generic_string(), {path.generic_string(), 0}});
}

}  // namespace

std::string page_path(const NodeId& id, NodeKind kind) {
  return std::string(to_string(kind)) + "/" + id.local() + ".html";
}

std::string node_url(const NodeId& id, const Manifest& manifest, NodeKind kind) {
  if (!id.is_external()) return page_path(id, kind);
  auto it = manifest.namespaces.find(id.ns());
  if (it == manifest.namespaces.end())
    throw DiagnosticError(Diagnostic{"E501", id, std::nullopt, "namespace '" + id.ns() + "' is not declared", {}});
  return it->second + "/node/" + id.local() + ".html";
}

std::vector<std::string> SiteManifest::files() const {
  std::vector<std::string> out;
  for (const auto& [id, path] : pages) out.push_back(path);
  out.insert(out.end(), indexes.begin(), indexes.end());
  out.push_back(graph_export);
  out.insert(out.end(), assets.begin(), assets.end());
  std::sort(out.begin(), out.end());
  return out;
}

RenderedSite render_site(const KnowledgeGraph& graph, const SiteOptions& options) {
  RenderedSite site;
  site.manifest.base_url = options.base_url;
  PageWriter writer(graph, options);

  for (const auto& [id, node] : graph.nodes) {
    auto path = page_path(id, kind_of(node));
    site.files[path] = writer.node_page(node);
    site.manifest.pages.emplace_back(id, path);
  }
  site.files[std::string(kIndexPage)] = writer.index_page();
  site.files[std::string(kNamesPage)] = writer.names_page();
  site.manifest.indexes = {std::string(kIndexPage), std::string(kNamesPage)};

  site.files[std::string(kGraphExport)] = export_graph(graph);
  site.manifest.graph_export = std::string(kGraphExport);

  site.files[std::string(kStylesheet)] = std::string(kStyle);
  site.manifest.assets.emplace_back(kStylesheet);
  if (options.explorer_script) {
    std::ifstream in(*options.explorer_script, std::ios::binary);
    if (!in)
      throw DiagnosticError(Diagnostic{"E503", std::nullopt, std::nullopt,
                                       "cannot read explorer script " + options.explorer_script->generic_string(),
                                       {}});
    std::ostringstream buffer;
    buffer << in.rdbuf();
    site.files[std::string(kExplorerScript)] = buffer.str();
    site.manifest.assets.emplace_back(kExplorerScript);
  }

  site.diagnostics = writer.take_diagnostics();
  sort_diagnostics(site.diagnostics);
  return site;
}

SiteResult emit_site(const KnowledgeGraph& graph, const fs::path& out_dir, const SiteOptions& options) {
  auto site = render_site(graph, options);
  for (const auto& [path, bytes] : site.files) write_file(out_dir / path, bytes);
  return {std::move(site.manifest), std::move(site.diagnostics)};
}

std::string export_graph(const KnowledgeGraph& graph) {
  using nlohmann::json;
  json nodes = json::array();
  std::set<std::tuple<std::string, std::string, std::string>> edges;

  for (const auto& [id, node] : graph.nodes) {
    json entry;
    entry["id"] = id.str();
    entry["kind"] = to_string(kind_of(node));
    entry["names"] = names_of(node);
    auto domain = domain_of(node);
    entry["domain"] = domain ? json(domain->str()) : json(nullptr);
    const RichText* prose = prose_of(node);
    entry["summary"] = prose ? utf8_prefix(prose->plain_text(), kSummaryLength) : std::string{};
    nodes.push_back(std::move(entry));

    for (const auto& link : link_targets(node))
      edges.emplace(id.str(), std::string(to_string(link.edge)), link.target.str());
  }

  json edge_array = json::array();
  for (const auto& [from, kind, to] : edges) edge_array.push_back({{"from", from}, {"kind", kind}, {"to", to}});

  json doc;
  doc["nodes"] = std::move(nodes);
  doc["edges"] = std::move(edge_array);
  return doc.dump(2, ' ', false, json::error_handler_t::replace) + "\n";
}

}  // namespace knoweb
