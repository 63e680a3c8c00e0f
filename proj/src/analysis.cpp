#include "knoweb/analysis.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace knoweb {

namespace {

[[noreturn]] void fail(std::string code, const NodeId& id, std::string message) {
  throw DiagnosticError(Diagnostic{std::move(code), id, std::nullopt, std::move(message), {}});
}

const Node& require_node(const KnowledgeGraph& graph, const NodeId& id) {
  const Node* node = graph.find(id);
  if (node == nullptr) fail("E401", id, "no node with id '" + id.str() + "'");
  return *node;
}

/// Abstraction edges of one kind, gathered from both sides so that a
/// one-sided authoring still yields the full relation.
struct Abstraction {
  std::map<NodeId, std::set<NodeId>> up;
  std::map<NodeId, std::set<NodeId>> down;
};

Abstraction abstraction_of(const KnowledgeGraph& graph, NodeKind kind) {
  Abstraction a;
  auto same_kind = [&](const NodeId& id) {
    const Node* n = graph.find(id);
    return n != nullptr && kind_of(*n) == kind;
  };
  auto link = [&](const NodeId& child, const NodeId& parent) {
    if (child == parent) return;
    a.up[child].insert(parent);
    a.down[parent].insert(child);
  };
  for (const auto& [id, node] : graph.nodes) {
    if (kind_of(node) != kind || kind == NodeKind::Pattern) continue;
    for (const auto& parent : *generalizations_of(node))
      if (same_kind(parent)) link(id, parent);
    for (const auto& child : *specializations_of(node))
      if (same_kind(child)) link(child, id);
  }
  return a;
}

const std::set<NodeId>& neighbors(const std::map<NodeId, std::set<NodeId>>& rel, const NodeId& id) {
  static const std::set<NodeId> none;
  auto it = rel.find(id);
  return it == rel.end() ? none : it->second;
}

}  // namespace

CompletionResult complete_inverses(KnowledgeGraph graph) {
  CompletionResult result;
  for (const auto& edge : derivable_inverses(graph)) {
    IdList* list = id_list_field(*graph.find(edge.holder), edge.field);
    if (list == nullptr || std::find(list->begin(), list->end(), edge.entry) != list->end()) continue;
    list->push_back(edge.entry);
    ++result.added;
  }
  result.graph = std::move(graph);
  return result;
}

std::vector<SimilarNode> similarity_neighbors(const KnowledgeGraph& graph, const NodeId& id) {
  const Node& node = require_node(graph, id);
  NodeKind kind = kind_of(node);
  if (kind == NodeKind::Pattern)
    fail("E402", id, "solution patterns have no generalization structure");

  auto abstraction = abstraction_of(graph, kind);
  // Direct generalizations, including external ones only the node itself names.
  auto generalizations = [&](const NodeId& n) {
    std::set<NodeId> out = neighbors(abstraction.up, n);
    for (const auto& g : *generalizations_of(*graph.find(n)))
      if (g.is_external()) out.insert(g);
    return out;
  };

  const auto mine = generalizations(id);
  const auto& above = neighbors(abstraction.up, id);
  const auto& below = neighbors(abstraction.down, id);
  std::vector<SimilarNode> out;
  if (mine.empty()) return out;
  for (const auto& [other, other_node] : graph.nodes) {
    if (other == id || kind_of(other_node) != kind || above.contains(other) || below.contains(other)) continue;
    SimilarNode entry{other, {}};
    auto theirs = generalizations(other);
    std::set_intersection(mine.begin(), mine.end(), theirs.begin(), theirs.end(), std::back_inserter(entry.shared));
    if (!entry.shared.empty()) out.push_back(std::move(entry));
  }
  std::stable_sort(out.begin(), out.end(), [](const SimilarNode& a, const SimilarNode& b) {
    if (a.shared.size() != b.shared.size()) return a.shared.size() > b.shared.size();
    return a.node < b.node;
  });
  return out;
}

std::string_view to_string(ShortcutKind kind) {
  switch (kind) {
    case ShortcutKind::Generalization: return "generalization";
    case ShortcutKind::Specialization: return "specialization";
    case ShortcutKind::Similarity: return "similarity";
    case ShortcutKind::Mixed: return "mixed";
  }
  return "unknown";
}

std::vector<NodeId> ShortcutPath::nodes() const {
  std::vector<NodeId> out{from};
  for (const auto& step : steps) out.push_back(step.to);
  return out;
}

ShortcutKind classify(const std::vector<Direction>& directions) {
  auto first_down = std::find(directions.begin(), directions.end(), Direction::Down);
  bool rest_down = std::all_of(first_down, directions.end(), [](Direction d) { return d == Direction::Down; });
  if (first_down == directions.end()) return ShortcutKind::Generalization;
  if (first_down == directions.begin()) return rest_down ? ShortcutKind::Specialization : ShortcutKind::Mixed;
  return rest_down ? ShortcutKind::Similarity : ShortcutKind::Mixed;
}

std::vector<ShortcutPath> find_shortcuts(const KnowledgeGraph& graph, const NodeId& from, const NodeId& to,
                                         std::size_t max_len) {
  NodeKind kind = kind_of(require_node(graph, from));
  NodeKind to_kind = kind_of(require_node(graph, to));
  if (kind != to_kind)
    fail("E403", to,
         "'" + from.str() + "' is a " + std::string(to_string(kind)) + " but '" + to.str() + "' is a " +
             std::string(to_string(to_kind)));

  std::vector<ShortcutPath> out;
  if (from == to) {
    out.push_back({from, to, {}, ShortcutKind::Generalization});
    return out;
  }

  auto abstraction = abstraction_of(graph, kind);
  std::vector<ShortcutStep> trail;
  std::set<NodeId> on_path{from};

  auto dfs = [&](auto&& self, const NodeId& at) -> void {
    if (at == to) {
      std::vector<Direction> dirs;
      for (const auto& step : trail) dirs.push_back(step.direction);
      out.push_back({from, to, trail, classify(dirs)});
      return;
    }
    if (trail.size() == max_len) return;
    for (auto [rel, dir] : {std::pair{&abstraction.up, Direction::Up}, std::pair{&abstraction.down, Direction::Down}}) {
      for (const auto& next : neighbors(*rel, at)) {
        if (!on_path.insert(next).second) continue;
        trail.push_back({at, dir, next});
        self(self, next);
        trail.pop_back();
        on_path.erase(next);
      }
    }
  };
  dfs(dfs, from);

  std::sort(out.begin(), out.end(), [](const ShortcutPath& a, const ShortcutPath& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.nodes() < b.nodes();
  });
  return out;
}

std::string describe(const ShortcutPath& path) {
  std::string out = std::string(to_string(path.kind)) + " (" + std::to_string(path.length()) + "): " + path.from.str();
  for (const auto& step : path.steps)
    out += (step.direction == Direction::Up ? " -up-> " : " -down-> ") + step.to.str();
  return out;
}

UsabilityLabeling usability_closure(const KnowledgeGraph& graph, const std::set<NodeId>& primitives) {
  for (const auto& id : primitives) {
    const Node* node = graph.find(id);
    if (node == nullptr || kind_of(*node) != NodeKind::Problem)
      fail("E404", id, "primitive '" + id.str() + "' is not a problem of this knowledge base");
  }

  UsabilityLabeling labeling;
  labeling.primitives = primitives;
  labeling.solvable = primitives;

  std::vector<const PatternNode*> pending;
  for (const auto& [id, node] : graph.nodes)
    if (const auto* pattern = std::get_if<PatternNode>(&node)) pending.push_back(pattern);

  // Each round either promotes a pattern or stops, so it runs at most |patterns| + 1 times.
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = pending.begin(); it != pending.end();) {
      const PatternNode& pattern = **it;
      bool ready = std::all_of(pattern.steps.begin(), pattern.steps.end(),
                               [&](const NodeId& step) { return labeling.solvable.contains(step); });
      if (!ready) {
        ++it;
        continue;
      }
      labeling.usable.insert(pattern.id);
      const Node* problem = graph.find(pattern.problem);
      if (problem != nullptr && kind_of(*problem) == NodeKind::Problem) labeling.solvable.insert(pattern.problem);
      it = pending.erase(it);
      changed = true;
    }
  }
  return labeling;
}

std::set<NodeId> usable_strategies(const KnowledgeGraph& graph) {
  std::set<NodeId> usable;
  std::vector<const StrategyNode*> pending;
  for (const auto& [id, node] : graph.nodes)
    if (const auto* strategy = std::get_if<StrategyNode>(&node)) pending.push_back(strategy);

  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = pending.begin(); it != pending.end();) {
      const auto& steps = (*it)->steps;
      if (std::all_of(steps.begin(), steps.end(), [&](const NodeId& s) { return usable.contains(s); })) {
        usable.insert((*it)->id);
        it = pending.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
  }
  return usable;
}

GraphStats graph_stats(const KnowledgeGraph& graph) {
  GraphStats stats;
  for (auto kind : kAllKinds) stats.per_kind[kind] = 0;
  std::set<NodeId> referenced;

  auto local_domain = [&](const NodeId& id) -> std::optional<NodeId> {
    const Node* n = graph.find(id);
    return n == nullptr ? std::nullopt : domain_of(*n);
  };

  for (const auto& [id, node] : graph.nodes) {
    ++stats.node_count;
    ++stats.per_kind[kind_of(node)];
    auto domain = domain_of(node);
    if (domain) ++stats.per_domain[*domain];

    std::set<std::pair<EdgeKind, NodeId>> seen;
    for (const auto& link : link_targets(node)) {
      if (!seen.emplace(link.edge, link.target).second) continue;
      ++stats.edge_count;
      if (link.target.is_external()) continue;
      if (link.target != id) referenced.insert(link.target);
      auto target_domain = local_domain(link.target);
      if (domain && target_domain && *domain != *target_domain) ++stats.cross_domain_edges;
    }

    if (kind_of(node) == NodeKind::Concept) {
      std::set<NodeId> reached;
      for (const auto* list : {generalizations_of(node), specializations_of(node)})
        for (const auto& other : *list)
          if (auto d = local_domain(other)) reached.insert(*d);
      if (reached.size() >= 2) stats.bridge_concepts.push_back(id);
    }
  }

  for (const auto& [id, node] : graph.nodes)
    if (!referenced.contains(id)) stats.orphans.push_back(id);
  return stats;
}

std::string render_stats_text(const GraphStats& stats) {
  std::size_t width = 20;
  for (const auto& [domain, count] : stats.per_domain) width = std::max(width, domain.str().size() + 2);
  std::ostringstream out;
  auto row = [&](std::string_view label, std::size_t indent, std::size_t value) {
    out << std::string(indent, ' ') << std::left << std::setw(static_cast<int>(width + 2 - indent)) << label << value
        << "\n";
  };
  row("nodes", 0, stats.node_count);
  for (const auto& [kind, count] : stats.per_kind) row(to_string(kind), 2, count);
  row("edges", 0, stats.edge_count);
  row("cross-domain edges", 0, stats.cross_domain_edges);
  out << "nodes per domain\n";
  for (const auto& [domain, count] : stats.per_domain) row(domain.str(), 2, count);
  auto list = [&](std::string_view title, const std::vector<NodeId>& ids) {
    out << title << " (" << ids.size() << ")\n";
    for (const auto& id : ids) out << "  " << id.str() << "\n";
  };
  list("bridge concepts", stats.bridge_concepts);
  list("orphans", stats.orphans);
  return out.str();
}

std::string render_stats_json(const GraphStats& stats) {
  nlohmann::json doc;
  doc["nodes"] = stats.node_count;
  doc["edges"] = stats.edge_count;
  doc["cross_domain_edges"] = stats.cross_domain_edges;
  for (const auto& [kind, count] : stats.per_kind) doc["per_kind"][std::string(to_string(kind))] = count;
  doc["per_domain"] = nlohmann::json::object();
  for (const auto& [domain, count] : stats.per_domain) doc["per_domain"][domain.str()] = count;
  doc["bridge_concepts"] = nlohmann::json::array();
  for (const auto& id : stats.bridge_concepts) doc["bridge_concepts"].push_back(id.str());
  doc["orphans"] = nlohmann::json::array();
  for (const auto& id : stats.orphans) doc["orphans"].push_back(id.str());
  return doc.dump(2) + "\n";
}

}  // namespace knoweb
