#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "knoweb/diagnostic.hpp"
#include "knoweb/node_id.hpp"
#include "knoweb/rich_text.hpp"

namespace knoweb {

enum class NodeKind : std::uint8_t { Concept, Problem, Pattern, Strategy, Domain };

inline constexpr std::array<NodeKind, 5> kAllKinds = {NodeKind::Concept, NodeKind::Problem, NodeKind::Pattern,
                                                      NodeKind::Strategy, NodeKind::Domain};

/// Lowercase keyword used in headers and URLs (`concept`, `problem`, ...).
std::string_view to_string(NodeKind kind);
std::optional<NodeKind> parse_kind(std::string_view text);

class KindSet {
 public:
  constexpr KindSet() = default;
  constexpr KindSet(NodeKind kind) : bits_(bit(kind)) {}
  constexpr KindSet(NodeKind a, NodeKind b) : bits_(bit(a) | bit(b)) {}

  constexpr bool contains(NodeKind kind) const { return (bits_ & bit(kind)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }

  std::string describe() const;

 private:
  static constexpr std::uint8_t bit(NodeKind kind) { return std::uint8_t(1u << static_cast<unsigned>(kind)); }
  std::uint8_t bits_ = 0;
};

/// The link kinds carried by the graph export.
enum class EdgeKind : std::uint8_t {
  Generalization,
  Specialization,
  Mention,  // reference from a definition or description
  UsedIn,
  Problem,
  Motivates,
  Solution,
  Strategy,
  Step,
  PatternSpecialization,
  Domain,
  ProminentConcept,
  ProminentProblem,
};

inline constexpr std::size_t kEdgeKindCount = 13;

std::string_view to_string(EdgeKind kind);

struct FieldSpec {
  std::string_view name;  // spelling in `.knb` sources
  KindSet targets;        // empty for plain-text name fields
  EdgeKind edge = EdgeKind::Mention;
  bool required = false;
  bool derived = false;
};

namespace fields {
inline constexpr std::string_view kName = "name";
inline constexpr std::string_view kDefinition = "definition";
inline constexpr std::string_view kDescription = "description";
inline constexpr std::string_view kGeneralizations = "generalizations";
inline constexpr std::string_view kSpecializations = "specializations";
inline constexpr std::string_view kUsedIn = "used-in";
inline constexpr std::string_view kProblems = "problems";
inline constexpr std::string_view kMotivates = "motivates";
inline constexpr std::string_view kSolutions = "solutions";
inline constexpr std::string_view kProblem = "problem";
inline constexpr std::string_view kStrategy = "strategy";
inline constexpr std::string_view kSteps = "steps";
inline constexpr std::string_view kPatternSpecializations = "pattern-specializations";
inline constexpr std::string_view kDomain = "domain";
inline constexpr std::string_view kProminentConcepts = "prominent-concepts";
inline constexpr std::string_view kProminentProblems = "prominent-problems";
}  // namespace fields

using IdList = std::vector<NodeId>;

// Field tables in schema order. Serialization, parsing and link projection all
// walk these through each node's visit_fields.
namespace schema {
using K = NodeKind;
using E = EdgeKind;
inline constexpr std::array<FieldSpec, 7> kConcept = {{
    {fields::kName, {}, E::Mention, true, false},
    {fields::kDefinition, K::Concept, E::Mention, true, false},
    {fields::kGeneralizations, K::Concept, E::Generalization, false, false},
    {fields::kSpecializations, K::Concept, E::Specialization, false, false},
    {fields::kUsedIn, K::Concept, E::UsedIn, false, true},
    {fields::kProblems, K::Problem, E::Problem, false, false},
    {fields::kDomain, K::Domain, E::Domain, true, false},
}};
inline constexpr std::array<FieldSpec, 7> kProblem = {{
    {fields::kName, {}, E::Mention, false, false},
    {fields::kDescription, K::Concept, E::Mention, true, false},
    {fields::kGeneralizations, K::Problem, E::Generalization, false, false},
    {fields::kSpecializations, K::Problem, E::Specialization, false, false},
    {fields::kMotivates, K::Pattern, E::Motivates, false, true},
    {fields::kSolutions, K::Pattern, E::Solution, false, true},
    {fields::kDomain, K::Domain, E::Domain, true, false},
}};
inline constexpr std::array<FieldSpec, 5> kPattern = {{
    {fields::kName, {}, E::Mention, false, false},
    {fields::kProblem, K::Problem, E::Problem, true, false},
    {fields::kStrategy, K::Strategy, E::Strategy, false, false},
    {fields::kSteps, K::Problem, E::Step, true, false},
    {fields::kDomain, K::Domain, E::Domain, true, false},
}};
// Strategy domain is not required: a missing one defaults to `strategies`.
inline constexpr std::array<FieldSpec, 7> kStrategy = {{
    {fields::kName, {}, E::Mention, false, false},
    {fields::kDescription, KindSet(K::Concept, K::Strategy), E::Mention, true, false},
    {fields::kGeneralizations, K::Strategy, E::Generalization, false, false},
    {fields::kSpecializations, K::Strategy, E::Specialization, false, false},
    {fields::kSteps, K::Strategy, E::Step, false, false},
    {fields::kPatternSpecializations, K::Pattern, E::PatternSpecialization, false, true},
    {fields::kDomain, K::Domain, E::Domain, false, false},
}};
inline constexpr std::array<FieldSpec, 5> kDomain = {{
    {fields::kName, {}, E::Mention, true, false},
    {fields::kGeneralizations, K::Domain, E::Generalization, false, false},
    {fields::kSpecializations, K::Domain, E::Specialization, false, false},
    {fields::kProminentConcepts, K::Concept, E::ProminentConcept, false, false},
    {fields::kProminentProblems, K::Problem, E::ProminentProblem, false, false},
}};
}  // namespace schema

std::span<const FieldSpec> field_specs(NodeKind kind);
const FieldSpec* find_field(NodeKind kind, std::string_view name);

/// The distinguished domain every strategy belongs to.
const NodeId& strategies_domain();

struct ConceptNode {
  static constexpr NodeKind kKind = NodeKind::Concept;

  NodeId id;
  std::string name;
  RichText definition;
  IdList generalizations;
  IdList specializations;
  IdList used_in;  // derived from definitions elsewhere
  IdList problems;
  NodeId domain;

  template <class Self, class F>
  static void visit_fields(Self& n, F&& f) {
    const auto& s = schema::kConcept;
    f(s[0], n.name), f(s[1], n.definition), f(s[2], n.generalizations), f(s[3], n.specializations);
    f(s[4], n.used_in), f(s[5], n.problems), f(s[6], n.domain);
  }

  friend bool operator==(const ConceptNode&, const ConceptNode&) = default;
};

struct ProblemNode {
  static constexpr NodeKind kKind = NodeKind::Problem;

  NodeId id;
  std::vector<std::string> names;
  RichText description;  // goal and context
  IdList generalizations;
  IdList specializations;
  IdList motivates;  // derived: patterns using this problem as a step
  IdList solutions;  // derived: patterns solving this problem
  NodeId domain;

  template <class Self, class F>
  static void visit_fields(Self& n, F&& f) {
    const auto& s = schema::kProblem;
    f(s[0], n.names), f(s[1], n.description), f(s[2], n.generalizations), f(s[3], n.specializations);
    f(s[4], n.motivates), f(s[5], n.solutions), f(s[6], n.domain);
  }

  friend bool operator==(const ProblemNode&, const ProblemNode&) = default;
};

struct PatternNode {
  static constexpr NodeKind kKind = NodeKind::Pattern;

  NodeId id;
  std::optional<std::string> name;
  NodeId problem;
  std::optional<NodeId> strategy;
  IdList steps;  // ordered subproblems, never empty
  NodeId domain;

  template <class Self, class F>
  static void visit_fields(Self& n, F&& f) {
    const auto& s = schema::kPattern;
    f(s[0], n.name), f(s[1], n.problem), f(s[2], n.strategy), f(s[3], n.steps), f(s[4], n.domain);
  }

  friend bool operator==(const PatternNode&, const PatternNode&) = default;
};

struct StrategyNode {
  static constexpr NodeKind kKind = NodeKind::Strategy;

  NodeId id;
  std::vector<std::string> names;
  RichText description;
  IdList generalizations;
  IdList specializations;
  IdList steps;  // strategic subproblems; empty means atomic
  IdList pattern_specializations;  // derived
  NodeId domain = strategies_domain();

  template <class Self, class F>
  static void visit_fields(Self& n, F&& f) {
    const auto& s = schema::kStrategy;
    f(s[0], n.names), f(s[1], n.description), f(s[2], n.generalizations), f(s[3], n.specializations);
    f(s[4], n.steps), f(s[5], n.pattern_specializations), f(s[6], n.domain);
  }

  friend bool operator==(const StrategyNode&, const StrategyNode&) = default;
};

struct DomainNode {
  static constexpr NodeKind kKind = NodeKind::Domain;

  NodeId id;
  std::string name;
  IdList generalizations;
  IdList specializations;
  IdList prominent_concepts;
  IdList prominent_problems;

  template <class Self, class F>
  static void visit_fields(Self& n, F&& f) {
    const auto& s = schema::kDomain;
    f(s[0], n.name), f(s[1], n.generalizations), f(s[2], n.specializations), f(s[3], n.prominent_concepts);
    f(s[4], n.prominent_problems);
  }

  friend bool operator==(const DomainNode&, const DomainNode&) = default;
};

using Node = std::variant<ConceptNode, ProblemNode, PatternNode, StrategyNode, DomainNode>;

/// Calls `f(const FieldSpec&, member&)` for every field in schema order.
template <class F>
void for_each_field(const Node& node, F&& f) {
  std::visit([&](const auto& n) { std::decay_t<decltype(n)>::visit_fields(n, f); }, node);
}
template <class F>
void for_each_field(Node& node, F&& f) {
  std::visit([&](auto& n) { std::decay_t<decltype(n)>::visit_fields(n, f); }, node);
}

NodeKind kind_of(const Node& node);
const NodeId& id_of(const Node& node);
std::vector<std::string> names_of(const Node& node);
/// First name, or the id's default display text for unnamed nodes.
std::string display_name(const Node& node);
std::optional<NodeId> domain_of(const Node& node);
/// Definition or description; null for patterns and domains.
const RichText* prose_of(const Node& node);
/// Null for patterns, which have no abstraction lists.
const IdList* generalizations_of(const Node& node);
const IdList* specializations_of(const Node& node);
/// Mutable access to an id-list field by its source name; null if absent.
IdList* id_list_field(Node& node, std::string_view field);
const IdList* id_list_field(const Node& node, std::string_view field);

/// An empty node of `kind` carrying `id`.
Node make_node(NodeKind kind, NodeId id);

struct LinkTarget {
  std::string_view field;
  NodeId target;
  KindSet expected;
  EdgeKind edge;

  friend bool operator==(const LinkTarget&, const LinkTarget&) = default;
};

/// Every outgoing reference in field order, then list/prose order.
std::vector<LinkTarget> link_targets(const Node& node);

struct Manifest {
  static constexpr int kDefaultFanoutThreshold = 12;

  std::map<std::string, std::string> namespaces;  // token -> absolute base URL without trailing slash
  std::vector<NodeId> primitives;
  int fanout_threshold = kDefaultFanoutThreshold;

  friend bool operator==(const Manifest&, const Manifest&) = default;
};

/// Where a node came from; used to place graph-level diagnostics.
struct NodeOrigin {
  SourceLocation header;
  std::map<std::string, int, std::less<>> field_lines;
};

struct KnowledgeGraph {
  std::map<NodeId, Node> nodes;
  Manifest manifest;
  bool resolved = false;
  std::map<NodeId, NodeOrigin> origins;

  const Node* find(const NodeId& id) const;
  Node* find(const NodeId& id);

  /// Header location, or the field's own line when known.
  SourceLocation location_of(const NodeId& id, std::string_view field = {}) const;

  /// Inserts or replaces; returns false if the id was already present.
  bool insert(Node node, NodeOrigin origin = {});
};

/// An inverse entry implied by a forward edge: `holder.field` should list `entry`.
struct InverseEdge {
  NodeId holder;
  std::string_view field;
  NodeId entry;

  friend bool operator==(const InverseEdge&, const InverseEdge&) = default;
};

/// Inverses implied by the graph's edges, deduplicated, in deterministic order.
/// Pairs: generalizations <-> specializations within one kind,
/// concept definition -> used-in, pattern problem -> solutions,
/// pattern steps -> motivates, pattern strategy -> pattern-specializations.
/// Only local holders of the expected kind are considered.
std::vector<InverseEdge> derivable_inverses(const KnowledgeGraph& graph);

}  // namespace knoweb
