#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "knoweb/graph.hpp"

namespace knoweb {

struct CompletionResult {
  KnowledgeGraph graph;
  std::size_t added = 0;
};

/// Materializes every inverse entry implied by a forward edge. Idempotent;
/// new entries are appended after the authored ones.
CompletionResult complete_inverses(KnowledgeGraph graph);

struct SimilarNode {
  NodeId node;
  IdList shared;  // common direct generalizations, ascending

  friend bool operator==(const SimilarNode&, const SimilarNode&) = default;
};

/// Same-kind nodes sharing a direct generalization with `id`, excluding its
/// direct generalizations and specializations. Sorted by shared count
/// (descending) then id. Throws DiagnosticError E401 or E402.
std::vector<SimilarNode> similarity_neighbors(const KnowledgeGraph& graph, const NodeId& id);

enum class Direction { Up, Down };

/// Ordered by rank for sorting.
enum class ShortcutKind { Generalization, Specialization, Similarity, Mixed };

std::string_view to_string(ShortcutKind kind);

struct ShortcutStep {
  NodeId from;
  Direction direction;
  NodeId to;

  friend bool operator==(const ShortcutStep&, const ShortcutStep&) = default;
};

struct ShortcutPath {
  NodeId from;
  NodeId to;
  std::vector<ShortcutStep> steps;
  ShortcutKind kind = ShortcutKind::Generalization;

  std::size_t length() const { return steps.size(); }
  std::vector<NodeId> nodes() const;

  friend bool operator==(const ShortcutPath&, const ShortcutPath&) = default;
};

/// All up: Generalization. All down: Specialization. One up-run then one
/// down-run: Similarity. Anything else: Mixed. Empty: Generalization.
ShortcutKind classify(const std::vector<Direction>& directions);

/// Simple paths of at most `max_len` abstraction edges, sorted by length,
/// kind and node sequence. Throws DiagnosticError E401 or E403.
std::vector<ShortcutPath> find_shortcuts(const KnowledgeGraph& graph, const NodeId& from, const NodeId& to,
                                         std::size_t max_len);

/// `similarity (2): velocity -up-> derivative-with-respect-to-time -down-> chemical-reaction-speed`
std::string describe(const ShortcutPath& path);

struct UsabilityLabeling {
  std::set<NodeId> solvable;    // problems
  std::set<NodeId> usable;      // patterns
  std::set<NodeId> primitives;  // as given

  friend bool operator==(const UsabilityLabeling&, const UsabilityLabeling&) = default;
};

/// Least fixed point of
///   solvable = primitives + problems solved by some usable pattern
///   usable   = patterns whose steps are all solvable
/// External step references never count as solvable. Throws DiagnosticError
/// E404 when a primitive is not a local problem.
UsabilityLabeling usability_closure(const KnowledgeGraph& graph, const std::set<NodeId>& primitives);

/// The same closure over the strategy layer: atomic strategies (no steps) are
/// usable, and a strategy is usable once all of its strategic steps are.
std::set<NodeId> usable_strategies(const KnowledgeGraph& graph);

struct GraphStats {
  std::map<NodeKind, std::size_t> per_kind;  // every kind present, possibly zero
  std::map<NodeId, std::size_t> per_domain;  // nodes filed under each domain id
  std::size_t node_count = 0;
  std::size_t edge_count = 0;  // distinct (source, kind, target) triples, as in the graph export
  std::size_t cross_domain_edges = 0;
  std::vector<NodeId> bridge_concepts;
  std::vector<NodeId> orphans;

  friend bool operator==(const GraphStats&, const GraphStats&) = default;
};

GraphStats graph_stats(const KnowledgeGraph& graph);

std::string render_stats_text(const GraphStats& stats);
std::string render_stats_json(const GraphStats& stats);

}  // namespace knoweb
