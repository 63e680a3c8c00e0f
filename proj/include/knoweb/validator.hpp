#pragma once

#include "knoweb/diagnostic.hpp"
#include "knoweb/graph.hpp"

namespace knoweb {

struct ResolveResult {
  KnowledgeGraph graph;
  Diagnostics diagnostics;
};

/// E301 dangling local reference, E302 wrong target kind, E303 undeclared namespace.
/// The returned graph is marked resolved iff no errors were found.
ResolveResult resolve_links(KnowledgeGraph graph);

/// W304 for every missing inverse entry and every derived entry with no forward edge.
Diagnostics check_inverse_consistency(const KnowledgeGraph& graph);

/// E305 once per cycle (strongly connected component or self-loop) in the
/// generalization relation of each kind, with a witness cycle in the message.
Diagnostics check_acyclicity(const KnowledgeGraph& graph);

/// E306 strategy outside the `strategies` domain; W307 strategies but no such domain node.
Diagnostics check_strategy_domain(const KnowledgeGraph& graph);

/// W308 for every id-list field longer than `threshold`.
Diagnostics lint_fanout(const KnowledgeGraph& graph, int threshold);

/// Every check above, sorted. Also returns the resolved graph.
ResolveResult validate(KnowledgeGraph graph);

}  // namespace knoweb
