#include "knoweb/validator.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace knoweb {

namespace {

Diagnostic node_diag(const KnowledgeGraph& graph, std::string code, const NodeId& node, std::string_view field,
                     std::string message) {
  return Diagnostic{std::move(code), node, field.empty() ? std::nullopt : std::optional<std::string>(field),
                    std::move(message), graph.location_of(node, field)};
}

bool contains(const IdList& list, const NodeId& id) { return std::find(list.begin(), list.end(), id) != list.end(); }

/// Index-based view of one kind's generalization relation (child -> parent).
struct AbstractionGraph {
  std::vector<NodeId> ids;
  std::vector<std::vector<std::size_t>> parents;
};

AbstractionGraph abstraction_graph(const KnowledgeGraph& graph, NodeKind kind) {
  AbstractionGraph g;
  std::map<NodeId, std::size_t> index;
  for (const auto& [id, node] : graph.nodes) {
    if (kind_of(node) != kind) continue;
    index.emplace(id, g.ids.size());
    g.ids.push_back(id);
  }
  std::vector<std::set<std::size_t>> edges(g.ids.size());
  auto same_kind = [&](const NodeId& id) { return index.find(id); };
  for (std::size_t i = 0; i < g.ids.size(); ++i) {
    const Node& node = *graph.find(g.ids[i]);
    for (const auto& parent : *generalizations_of(node))
      if (auto it = same_kind(parent); it != index.end()) edges[i].insert(it->second);
    for (const auto& child : *specializations_of(node))
      if (auto it = same_kind(child); it != index.end()) edges[it->second].insert(i);
  }
  g.parents.reserve(edges.size());
  for (auto& e : edges) g.parents.emplace_back(e.begin(), e.end());
  return g;
}

/// Tarjan's algorithm without recursion; components come out in reverse topological order.
std::vector<std::vector<std::size_t>> strongly_connected_components(const std::vector<std::vector<std::size_t>>& adj) {
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  const std::size_t n = adj.size();
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> components;
  std::size_t counter = 0;

  struct Frame {
    std::size_t node;
    std::size_t next_edge;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& frame = frames.back();
      std::size_t v = frame.node;
      if (frame.next_edge < adj[v].size()) {
        std::size_t w = adj[v][frame.next_edge++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<std::size_t> component;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component.push_back(w);
        } while (w != v);
        std::sort(component.begin(), component.end());
        components.push_back(std::move(component));
      }
      frames.pop_back();
      if (!frames.empty()) low[frames.back().node] = std::min(low[frames.back().node], low[v]);
    }
  }
  return components;
}

/// Shortest cycle through `start` staying inside `members`, as a node sequence
/// beginning and ending at `start`.
std::vector<std::size_t> witness_cycle(const AbstractionGraph& g, const std::vector<std::size_t>& members,
                                       std::size_t start) {
  std::set<std::size_t> inside(members.begin(), members.end());
  std::map<std::size_t, std::size_t> parent_of;
  std::deque<std::size_t> queue{start};
  std::set<std::size_t> visited{start};
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    for (auto w : g.parents[v]) {
      if (!inside.contains(w)) continue;
      if (w == start) {
        std::vector<std::size_t> path{start};
        for (auto at = v; at != start; at = parent_of[at]) path.insert(path.begin() + 1, at);
        path.push_back(start);
        return path;
      }
      if (visited.insert(w).second) {
        parent_of[w] = v;
        queue.push_back(w);
      }
    }
  }
  return {start, start};
}

}  // namespace

ResolveResult resolve_links(KnowledgeGraph graph) {
  Diagnostics diags;
  for (const auto& [id, node] : graph.nodes) {
    for (const auto& link : link_targets(node)) {
      if (link.target.is_external()) {
        if (!graph.manifest.namespaces.contains(link.target.ns()))
          diags.push_back(node_diag(graph, "E303", id, link.field,
                                    "reference '" + link.target.str() + "' uses undeclared namespace '" +
                                        link.target.ns() + "'"));
        continue;
      }
      const Node* target = graph.find(link.target);
      if (target == nullptr) {
        diags.push_back(node_diag(graph, "E301", id, link.field, "dangling reference to '" + link.target.str() + "'"));
      } else if (!link.expected.contains(kind_of(*target))) {
        diags.push_back(node_diag(graph, "E302", id, link.field,
                                  "'" + link.target.str() + "' is a " + std::string(to_string(kind_of(*target))) +
                                      " but field '" + std::string(link.field) + "' expects a " +
                                      link.expected.describe()));
      }
    }
  }
  sort_diagnostics(diags);
  graph.resolved = !has_errors(diags);
  return {std::move(graph), std::move(diags)};
}

Diagnostics check_inverse_consistency(const KnowledgeGraph& graph) {
  Diagnostics diags;
  auto expected = derivable_inverses(graph);

  for (const auto& edge : expected) {
    const IdList* list = id_list_field(*graph.find(edge.holder), edge.field);
    if (list != nullptr && !contains(*list, edge.entry))
      diags.push_back(node_diag(graph, "W304", edge.holder, edge.field,
                                "'" + edge.entry.str() + "' links here but is missing from '" +
                                    std::string(edge.field) + "'"));
  }

  std::set<std::tuple<NodeId, std::string_view, NodeId>> backed;
  for (const auto& edge : expected) backed.emplace(edge.holder, edge.field, edge.entry);
  for (const auto& [id, node] : graph.nodes) {
    for_each_field(node, [&](const FieldSpec& spec, const auto& value) {
      if constexpr (std::is_same_v<std::decay_t<decltype(value)>, IdList>) {
        if (!spec.derived) return;
        for (const auto& entry : value)
          if (!entry.is_external() && !backed.contains({id, spec.name, entry}))
            diags.push_back(node_diag(graph, "W304", id, spec.name,
                                      "'" + entry.str() + "' is listed in '" + std::string(spec.name) +
                                          "' but does not link back"));
      }
    });
  }
  sort_diagnostics(diags);
  return diags;
}

Diagnostics check_acyclicity(const KnowledgeGraph& graph) {
  Diagnostics diags;
  for (auto kind : kAllKinds) {
    if (kind == NodeKind::Pattern) continue;
    auto g = abstraction_graph(graph, kind);
    for (const auto& component : strongly_connected_components(g.parents)) {
      std::size_t head = component.front();
      bool self_loop = std::find(g.parents[head].begin(), g.parents[head].end(), head) != g.parents[head].end();
      if (component.size() < 2 && !self_loop) continue;
      std::string path;
      for (auto v : witness_cycle(g, component, head)) path += (path.empty() ? "" : " -> ") + g.ids[v].str();
      diags.push_back(node_diag(graph, "E305", g.ids[head], fields::kGeneralizations,
                                std::string(to_string(kind)) + " generalization cycle: " + path));
    }
  }
  sort_diagnostics(diags);
  return diags;
}

Diagnostics check_strategy_domain(const KnowledgeGraph& graph) {
  Diagnostics diags;
  bool any_strategy = false;
  for (const auto& [id, node] : graph.nodes) {
    const auto* strategy = std::get_if<StrategyNode>(&node);
    if (strategy == nullptr) continue;
    any_strategy = true;
    if (strategy->domain != strategies_domain())
      diags.push_back(node_diag(graph, "E306", id, fields::kDomain,
                                "strategies belong to the '" + strategies_domain().str() + "' domain, not '" +
                                    strategy->domain.str() + "'"));
  }
  const Node* domain = graph.find(strategies_domain());
  if (any_strategy && (domain == nullptr || kind_of(*domain) != NodeKind::Domain))
    diags.push_back(Diagnostic{"W307", std::nullopt, std::nullopt,
                               "strategies exist but no '" + strategies_domain().str() + "' domain node is defined",
                               {}});
  sort_diagnostics(diags);
  return diags;
}

Diagnostics lint_fanout(const KnowledgeGraph& graph, int threshold) {
  Diagnostics diags;
  for (const auto& [id, node] : graph.nodes) {
    for_each_field(node, [&](const FieldSpec& spec, const auto& value) {
      if constexpr (std::is_same_v<std::decay_t<decltype(value)>, IdList>) {
        if (std::cmp_greater(value.size(), threshold))
          diags.push_back(node_diag(graph, "W308", id, spec.name,
                                    std::to_string(value.size()) + " entries exceed the fan-out threshold of " +
                                        std::to_string(threshold) + "; consider an intermediate node"));
      }
    });
  }
  sort_diagnostics(diags);
  return diags;
}

ResolveResult validate(KnowledgeGraph graph) {
  auto result = resolve_links(std::move(graph));
  const auto& g = result.graph;
  for (auto more : {check_inverse_consistency(g), check_acyclicity(g), check_strategy_domain(g),
                    lint_fanout(g, g.manifest.fanout_threshold)})
    result.diagnostics.insert(result.diagnostics.end(), more.begin(), more.end());
  sort_diagnostics(result.diagnostics);
  return result;
}

}  // namespace knoweb
