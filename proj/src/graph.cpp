#include "knoweb/graph.hpp"

#include <algorithm>
#include <set>
#include <type_traits>

namespace knoweb {

namespace {

template <class T>
constexpr bool is_id_list = std::is_same_v<std::remove_const_t<T>, IdList>;

}  // namespace

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Concept: return "concept";
    case NodeKind::Problem: return "problem";
    case NodeKind::Pattern: return "pattern";
    case NodeKind::Strategy: return "strategy";
    case NodeKind::Domain: return "domain";
  }
  return "unknown";
}

std::optional<NodeKind> parse_kind(std::string_view text) {
  for (auto kind : kAllKinds)
    if (to_string(kind) == text) return kind;
  return std::nullopt;
}

std::string KindSet::describe() const {
  std::string out;
  for (auto kind : kAllKinds) {
    if (!contains(kind)) continue;
    if (!out.empty()) out += " or ";
    out += to_string(kind);
  }
  return out;
}

std::string_view to_string(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::Generalization: return "generalization";
    case EdgeKind::Specialization: return "specialization";
    case EdgeKind::Mention: return "mention";
    case EdgeKind::UsedIn: return "used-in";
    case EdgeKind::Problem: return "problem";
    case EdgeKind::Motivates: return "motivates";
    case EdgeKind::Solution: return "solution";
    case EdgeKind::Strategy: return "strategy";
    case EdgeKind::Step: return "step";
    case EdgeKind::PatternSpecialization: return "pattern-specialization";
    case EdgeKind::Domain: return "domain";
    case EdgeKind::ProminentConcept: return "prominent-concept";
    case EdgeKind::ProminentProblem: return "prominent-problem";
  }
  return "unknown";
}

std::span<const FieldSpec> field_specs(NodeKind kind) {
  switch (kind) {
    case NodeKind::Concept: return schema::kConcept;
    case NodeKind::Problem: return schema::kProblem;
    case NodeKind::Pattern: return schema::kPattern;
    case NodeKind::Strategy: return schema::kStrategy;
    case NodeKind::Domain: return schema::kDomain;
  }
  return {};
}

const FieldSpec* find_field(NodeKind kind, std::string_view name) {
  for (const auto& spec : field_specs(kind))
    if (spec.name == name) return &spec;
  return nullptr;
}

const NodeId& strategies_domain() {
  static const NodeId id("strategies");
  return id;
}

NodeKind kind_of(const Node& node) {
  return std::visit([](const auto& n) { return std::decay_t<decltype(n)>::kKind; }, node);
}

const NodeId& id_of(const Node& node) {
  return std::visit([](const auto& n) -> const NodeId& { return n.id; }, node);
}

std::vector<std::string> names_of(const Node& node) {
  std::vector<std::string> out;
  for_each_field(node, [&](const FieldSpec&, const auto& value) {
    using T = std::decay_t<decltype(value)>;
    if constexpr (std::is_same_v<T, std::string>) {
      if (!value.empty()) out.push_back(value);
    } else if constexpr (std::is_same_v<T, std::optional<std::string>>) {
      if (value) out.push_back(*value);
    } else if constexpr (std::is_same_v<T, std::vector<std::string>>) {
      out.insert(out.end(), value.begin(), value.end());
    }
  });
  return out;
}

std::string display_name(const Node& node) {
  auto names = names_of(node);
  return names.empty() ? id_of(node).default_display() : names.front();
}

std::optional<NodeId> domain_of(const Node& node) {
  if (std::holds_alternative<DomainNode>(node)) return std::nullopt;
  return std::visit(
      [](const auto& n) -> std::optional<NodeId> {
        if constexpr (requires { n.domain; })
          return n.domain;
        else
          return std::nullopt;
      },
      node);
}

const RichText* prose_of(const Node& node) {
  if (const auto* c = std::get_if<ConceptNode>(&node)) return &c->definition;
  if (const auto* p = std::get_if<ProblemNode>(&node)) return &p->description;
  if (const auto* s = std::get_if<StrategyNode>(&node)) return &s->description;
  return nullptr;
}

const IdList* generalizations_of(const Node& node) {
  return std::visit(
      [](const auto& n) -> const IdList* {
        if constexpr (requires { n.generalizations; })
          return &n.generalizations;
        else
          return nullptr;
      },
      node);
}

const IdList* specializations_of(const Node& node) {
  return std::visit(
      [](const auto& n) -> const IdList* {
        if constexpr (requires { n.specializations; })
          return &n.specializations;
        else
          return nullptr;
      },
      node);
}

IdList* id_list_field(Node& node, std::string_view field) {
  IdList* out = nullptr;
  for_each_field(node, [&](const FieldSpec& spec, auto& value) {
    if constexpr (is_id_list<std::remove_reference_t<decltype(value)>>)
      if (spec.name == field) out = &value;
  });
  return out;
}

const IdList* id_list_field(const Node& node, std::string_view field) {
  const IdList* out = nullptr;
  for_each_field(node, [&](const FieldSpec& spec, const auto& value) {
    if constexpr (is_id_list<std::remove_reference_t<decltype(value)>>)
      if (spec.name == field) out = &value;
  });
  return out;
}

Node make_node(NodeKind kind, NodeId id) {
  auto blank = [&]<class T>(T node) -> Node {
    node.id = std::move(id);
    return node;
  };
  switch (kind) {
    case NodeKind::Concept: return blank(ConceptNode{});
    case NodeKind::Problem: return blank(ProblemNode{});
    case NodeKind::Pattern: return blank(PatternNode{});
    case NodeKind::Strategy: return blank(StrategyNode{});
    case NodeKind::Domain: return blank(DomainNode{});
  }
  return blank(ConceptNode{});
}

std::vector<LinkTarget> link_targets(const Node& node) {
  std::vector<LinkTarget> out;
  for_each_field(node, [&](const FieldSpec& spec, const auto& value) {
    using T = std::decay_t<decltype(value)>;
    auto add = [&](const NodeId& id) { out.push_back({spec.name, id, spec.targets, spec.edge}); };
    if constexpr (std::is_same_v<T, NodeId>) {
      add(value);
    } else if constexpr (std::is_same_v<T, std::optional<NodeId>>) {
      if (value) add(*value);
    } else if constexpr (std::is_same_v<T, IdList>) {
      for (const auto& id : value) add(id);
    } else if constexpr (std::is_same_v<T, RichText>) {
      for (const auto& id : value.link_targets()) add(id);
    }
  });
  return out;
}

const Node* KnowledgeGraph::find(const NodeId& id) const {
  auto it = nodes.find(id);
  return it == nodes.end() ? nullptr : &it->second;
}

Node* KnowledgeGraph::find(const NodeId& id) {
  auto it = nodes.find(id);
  return it == nodes.end() ? nullptr : &it->second;
}

SourceLocation KnowledgeGraph::location_of(const NodeId& id, std::string_view field) const {
  auto it = origins.find(id);
  if (it == origins.end()) return {};
  SourceLocation loc = it->second.header;
  if (!field.empty()) {
    auto f = it->second.field_lines.find(field);
    if (f != it->second.field_lines.end()) loc.line = f->second;
  }
  return loc;
}

bool KnowledgeGraph::insert(Node node, NodeOrigin origin) {
  NodeId id = id_of(node);
  bool fresh = !nodes.contains(id);
  nodes.insert_or_assign(id, std::move(node));
  origins.insert_or_assign(std::move(id), std::move(origin));
  return fresh;
}

std::vector<InverseEdge> derivable_inverses(const KnowledgeGraph& graph) {
  std::vector<InverseEdge> out;
  std::set<std::tuple<NodeId, std::string_view, NodeId>> seen;
  auto add = [&](const NodeId& holder, NodeKind holder_kind, std::string_view field, const NodeId& entry) {
    const Node* target = graph.find(holder);
    if (target == nullptr || kind_of(*target) != holder_kind) return;
    if (seen.emplace(holder, field, entry).second) out.push_back({holder, field, entry});
  };

  for (const auto& [id, node] : graph.nodes) {
    NodeKind kind = kind_of(node);
    for (const auto& link : link_targets(node)) {
      if (link.target.is_external()) continue;
      if (link.edge == EdgeKind::Generalization) {
        add(link.target, kind, fields::kSpecializations, id);
      } else if (link.edge == EdgeKind::Specialization) {
        add(link.target, kind, fields::kGeneralizations, id);
      } else if (kind == NodeKind::Concept && link.field == fields::kDefinition) {
        add(link.target, NodeKind::Concept, fields::kUsedIn, id);
      } else if (kind == NodeKind::Pattern) {
        if (link.field == fields::kProblem)
          add(link.target, NodeKind::Problem, fields::kSolutions, id);
        else if (link.field == fields::kSteps)
          add(link.target, NodeKind::Problem, fields::kMotivates, id);
        else if (link.field == fields::kStrategy)
          add(link.target, NodeKind::Strategy, fields::kPatternSpecializations, id);
      }
    }
  }
  return out;
}

}  // namespace knoweb
