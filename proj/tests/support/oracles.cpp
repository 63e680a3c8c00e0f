#include "oracles.hpp"

#include <algorithm>
#include <deque>
#include <filesystem>
#include <functional>
#include <regex>

namespace knoweb::testing {

Abstraction abstraction_of(const KnowledgeGraph& graph) {
  Abstraction a;
  for (const auto& [id, node] : graph.nodes) {
    const auto* gens = generalizations_of(node);
    const auto* specs = specializations_of(node);
    if (gens == nullptr) continue;
    a.up[id];
    a.down[id];
    for (const auto& g : *gens) {
      a.up[id].insert(g);
      if (!g.is_external()) a.down[g].insert(id);
    }
    for (const auto& s : *specs) {
      if (s.is_external()) continue;
      a.down[id].insert(s);
      a.up[s].insert(id);
    }
  }
  return a;
}

UsabilityLabeling brute_force_usability(const KnowledgeGraph& graph, const std::set<NodeId>& primitives) {
  std::vector<NodeId> problems;
  std::vector<const PatternNode*> patterns;
  for (const auto& [id, node] : graph.nodes) {
    if (const auto* p = std::get_if<ProblemNode>(&node)) problems.push_back(p->id);
    if (const auto* s = std::get_if<PatternNode>(&node)) patterns.push_back(s);
  }
  if (problems.size() > 20) throw std::invalid_argument("too many problems for exhaustive search");

  auto usable_under = [&](const std::set<NodeId>& solvable) {
    std::set<NodeId> usable;
    for (const auto* s : patterns) {
      bool all = std::all_of(s->steps.begin(), s->steps.end(), [&](const NodeId& st) { return solvable.count(st) > 0; });
      if (all) usable.insert(s->id);
    }
    return usable;
  };

  std::vector<std::set<NodeId>> fixed_points;
  for (std::uint32_t mask = 0; mask < (1u << problems.size()); ++mask) {
    std::set<NodeId> candidate;
    for (std::size_t i = 0; i < problems.size(); ++i)
      if (mask & (1u << i)) candidate.insert(problems[i]);
    std::set<NodeId> image = primitives;
    for (const auto* s : patterns)
      if (usable_under(candidate).count(s->id)) image.insert(s->problem);
    if (image == candidate) fixed_points.push_back(candidate);
  }
  if (fixed_points.empty()) throw std::logic_error("no fixed point");

  auto least = *std::min_element(fixed_points.begin(), fixed_points.end(),
                                 [](const auto& a, const auto& b) { return a.size() < b.size(); });
  for (const auto& fp : fixed_points)
    if (!std::includes(fp.begin(), fp.end(), least.begin(), least.end()))
      throw std::logic_error("smallest fixed point is not below all others");
  return UsabilityLabeling{least, usable_under(least), primitives};
}

namespace {

/// Local generalization edges (child, parent) of one kind, read from both list directions.
std::map<NodeKind, std::set<std::pair<NodeId, NodeId>>> generalization_edges(const KnowledgeGraph& graph) {
  std::map<NodeKind, std::set<std::pair<NodeId, NodeId>>> edges;
  for (const auto& [id, node] : graph.nodes) {
    const auto* gens = generalizations_of(node);
    if (gens == nullptr) continue;
    auto& set = edges[kind_of(node)];
    for (const auto& g : *gens)
      if (graph.find(g) != nullptr) set.emplace(id, g);
    for (const auto& s : *specializations_of(node))
      if (graph.find(s) != nullptr) set.emplace(s, id);
  }
  return edges;
}

}  // namespace

std::size_t count_generalization_cycles(const KnowledgeGraph& graph) {
  std::size_t cycles = 0;
  for (const auto& [kind, edges] : generalization_edges(graph)) {
    std::vector<NodeId> ids;
    for (const auto& [id, node] : graph.nodes)
      if (kind_of(node) == kind) ids.push_back(id);
    std::map<NodeId, std::size_t> index;
    for (std::size_t i = 0; i < ids.size(); ++i) index[ids[i]] = i;
    std::size_t n = ids.size();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (const auto& [a, b] : edges) reach[index[a]][index[b]] = true;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (reach[i][k])
          for (std::size_t j = 0; j < n; ++j)
            if (reach[k][j]) reach[i][j] = true;
    std::vector<bool> counted(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      if (counted[i] || !reach[i][i]) continue;
      ++cycles;
      for (std::size_t j = 0; j < n; ++j)
        if (reach[i][j] && reach[j][i]) counted[j] = true;
    }
  }
  return cycles;
}

bool is_generalization_acyclic(const KnowledgeGraph& graph) {
  for (const auto& [kind, edges] : generalization_edges(graph)) {
    std::map<NodeId, std::size_t> indegree;
    std::map<NodeId, std::vector<NodeId>> out;
    for (const auto& [id, node] : graph.nodes)
      if (kind_of(node) == kind) indegree[id];
    for (const auto& [a, b] : edges) {
      out[a].push_back(b);
      ++indegree[b];
    }
    std::deque<NodeId> ready;
    for (const auto& [id, d] : indegree)
      if (d == 0) ready.push_back(id);
    std::size_t seen = 0;
    while (!ready.empty()) {
      auto id = ready.front();
      ready.pop_front();
      ++seen;
      for (const auto& next : out[id])
        if (--indegree[next] == 0) ready.push_back(next);
    }
    if (seen != indegree.size()) return false;
  }
  return true;
}

std::map<std::vector<NodeId>, std::string> brute_force_paths(const KnowledgeGraph& graph, const NodeId& from,
                                                             const NodeId& to, std::size_t max_len) {
  auto a = abstraction_of(graph);
  std::map<std::vector<NodeId>, std::string> found;
  // Breadth-first over partial walks; every extension is kept, so all walks are seen.
  std::deque<std::pair<std::vector<NodeId>, std::string>> frontier = {{{from}, ""}};
  while (!frontier.empty()) {
    auto [walk, dirs] = frontier.front();
    frontier.pop_front();
    if (walk.back() == to) found[walk] = dirs;
    if (dirs.size() == max_len) continue;
    auto extend = [&](const std::set<NodeId>& next, char d) {
      for (const auto& n : next) {
        if (n.is_external() || graph.find(n) == nullptr) continue;
        if (std::find(walk.begin(), walk.end(), n) != walk.end()) continue;
        auto w = walk;
        w.push_back(n);
        frontier.emplace_back(std::move(w), dirs + d);
      }
    };
    extend(a.up[walk.back()], 'u');
    extend(a.down[walk.back()], 'd');
  }
  return found;
}

ShortcutKind classify_by_pattern(const std::string& directions) {
  if (std::regex_match(directions, std::regex("u*"))) return ShortcutKind::Generalization;
  if (std::regex_match(directions, std::regex("d+"))) return ShortcutKind::Specialization;
  if (std::regex_match(directions, std::regex("u+d+"))) return ShortcutKind::Similarity;
  return ShortcutKind::Mixed;
}

std::vector<SimilarNode> brute_force_similarity(const KnowledgeGraph& graph, const NodeId& id) {
  auto a = abstraction_of(graph);
  NodeKind kind = kind_of(*graph.find(id));
  std::vector<SimilarNode> out;
  for (const auto& [other, node] : graph.nodes) {
    if (other == id || kind_of(node) != kind) continue;
    if (a.up[id].count(other) || a.down[id].count(other)) continue;
    IdList shared;
    std::set_intersection(a.up[id].begin(), a.up[id].end(), a.up[other].begin(), a.up[other].end(),
                          std::back_inserter(shared));
    if (!shared.empty()) out.push_back({other, shared});
  }
  std::sort(out.begin(), out.end(), [](const SimilarNode& x, const SimilarNode& y) {
    if (x.shared.size() != y.shared.size()) return x.shared.size() > y.shared.size();
    return x.node < y.node;
  });
  return out;
}

std::set<std::string> expected_inverses(const KnowledgeGraph& graph) {
  std::set<std::string> out;
  auto add = [&](const NodeId& holder, NodeKind expected, std::string_view field, const NodeId& entry) {
    const Node* h = graph.find(holder);
    if (h == nullptr || kind_of(*h) != expected) return;
    out.insert(holder.str() + "." + std::string(field) + "=" + entry.str());
  };
  for (const auto& [id, node] : graph.nodes) {
    NodeKind kind = kind_of(node);
    if (const auto* gens = generalizations_of(node)) {
      for (const auto& g : *gens) add(g, kind, fields::kSpecializations, id);
      for (const auto& s : *specializations_of(node)) add(s, kind, fields::kGeneralizations, id);
    }
    if (const auto* c = std::get_if<ConceptNode>(&node))
      for (const auto& t : c->definition.link_targets())
        if (t != id) add(t, NodeKind::Concept, fields::kUsedIn, id);
    if (const auto* s = std::get_if<PatternNode>(&node)) {
      add(s->problem, NodeKind::Problem, fields::kSolutions, id);
      for (const auto& st : s->steps) add(st, NodeKind::Problem, fields::kMotivates, id);
      if (s->strategy) add(*s->strategy, NodeKind::Strategy, fields::kPatternSpecializations, id);
    }
  }
  return out;
}

std::vector<std::string> relative_links(const std::string& page, const std::string& html) {
  static const std::regex attr(R"re((?:href|src)="([^"]*)")re");
  std::vector<std::string> out;
  auto dir = std::filesystem::path(page).parent_path();
  for (auto it = std::sregex_iterator(html.begin(), html.end(), attr); it != std::sregex_iterator(); ++it) {
    std::string target = (*it)[1];
    if (target.find("://") != std::string::npos || target.starts_with("mailto:") || target.starts_with("#")) continue;
    if (auto hash = target.find('#'); hash != std::string::npos) target.resize(hash);
    for (std::size_t pos; (pos = target.find("&amp;")) != std::string::npos;) target.replace(pos, 5, "&");
    out.push_back((dir / target).lexically_normal().generic_string());
  }
  return out;
}

std::vector<std::string> broken_links(const std::map<std::string, std::string>& files) {
  std::vector<std::string> broken;
  for (const auto& [page, html] : files) {
    if (!page.ends_with(".html")) continue;
    for (const auto& target : relative_links(page, html))
      if (!files.count(target)) broken.push_back(page + " -> " + target);
  }
  return broken;
}

}  // namespace knoweb::testing
