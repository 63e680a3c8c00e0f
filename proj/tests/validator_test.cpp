#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "generators.hpp"
#include "knoweb/parser.hpp"
#include "oracles.hpp"

using namespace knoweb;
using namespace knoweb::testing;

namespace {

KnowledgeGraph graph_of(std::string_view text, std::string_view manifest = "") {
  KnowledgeGraph g;
  g.manifest = parse_manifest(manifest, "m").manifest;
  auto parsed = parse_source(text, "t.knb");
  EXPECT_TRUE(parsed.diagnostics.empty());
  for (const auto& draft : parsed.drafts) {
    auto e = elaborate(draft);
    EXPECT_TRUE(e.node) << draft.id.str();
    g.insert(std::move(*e.node), e.origin);
  }
  return g;
}

std::vector<std::string> codes(const Diagnostics& ds) {
  std::vector<std::string> out;
  for (const auto& d : ds) out.push_back(d.code);
  return out;
}

constexpr std::string_view kBase =
    "@domain d\nname: D\n\n"
    "@concept a\nname: A\ndefinition: plain\ndomain: d\n\n";

}  // namespace

TEST(Resolve, CleanGraphIsResolved) {
  auto r = resolve_links(graph_of(std::string(kBase) + "@concept b\nname: B\ndefinition: [[a]]\ndomain: d\n"));
  EXPECT_TRUE(r.diagnostics.empty());
  EXPECT_TRUE(r.graph.resolved);
}

TEST(Resolve, DanglingWrongKindAndUnknownNamespace) {
  auto r = resolve_links(graph_of(std::string(kBase) +
                                  "@concept b\nname: B\ndefinition: [[ghost]] and [[other:x]]\n"
                                  "generalizations: d, ext:y\nproblems: a\ndomain: d\n",
                                  "namespace ext https://example.org\n"));
  EXPECT_FALSE(r.graph.resolved);
  auto c = codes(r.diagnostics);
  std::sort(c.begin(), c.end());
  EXPECT_EQ(c, (std::vector<std::string>{"E301", "E302", "E302", "E303"}));
  for (const auto& d : r.diagnostics) {
    EXPECT_EQ(d.node, NodeId("b"));
    EXPECT_EQ(d.location.file, "t.knb");
  }
}

TEST(Resolve, ErrorsPointAtTheFieldLine) {
  auto r = resolve_links(graph_of(std::string(kBase) + "@concept b\nname: B\ndefinition: x\n"
                                                       "generalizations: nowhere\ndomain: d\n"));
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].field, "generalizations");
  EXPECT_EQ(r.diagnostics[0].location.line, 12);
}

TEST(Inverses, MissingEntriesInBothDirections) {
  auto g = graph_of(std::string(kBase) +
                    "@concept b\nname: B\ndefinition: x\ngeneralizations: a\ndomain: d\n\n"
                    "@concept c\nname: C\ndefinition: x\nspecializations: a\ndomain: d\n");
  auto ds = check_inverse_consistency(g);
  ASSERT_EQ(codes(ds), (std::vector<std::string>{"W304", "W304"}));
  std::set<std::pair<std::string, std::string>> where;
  for (const auto& d : ds) where.emplace(d.node->str(), *d.field);
  EXPECT_TRUE(where.count({"a", "specializations"}));
  EXPECT_TRUE(where.count({"a", "generalizations"}));
}

TEST(Inverses, StaleDerivedEntryWarns) {
  auto g = graph_of(std::string(kBase) + "@concept b\nname: B\ndefinition: x\nused-in: a\ndomain: d\n");
  auto ds = check_inverse_consistency(g);
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].node, NodeId("b"));
  EXPECT_EQ(ds[0].field, "used-in");
  EXPECT_NE(ds[0].message.find("does not link back"), std::string::npos);
}

TEST(Inverses, CountsEveryMissingEntry) {
  auto g = graph_of(std::string(kBase) +
                    "@concept b\nname: B\ndefinition: see [[a]]\ngeneralizations: a\ndomain: d\n\n"
                    "@concept a2\nname: A\ndefinition: x\nspecializations: b\ndomain: d\n");
  // a lacks b in specializations and used-in; b lacks a2 in generalizations.
  EXPECT_EQ(check_inverse_consistency(g).size(), 3u);
}

TEST(Inverses, ConsistentGraphIsQuiet) {
  auto g = graph_of(
      "@domain d\nname: D\n\n"
      "@concept b\nname: B\ndefinition: see [[a]]\ngeneralizations: a\ndomain: d\n\n"
      "@concept a\nname: A\ndefinition: x\nspecializations: b\nused-in: b\ndomain: d\n");
  EXPECT_TRUE(check_inverse_consistency(g).empty());
}

TEST(Acyclicity, SelfLoopAndTwoCycleWithWitness) {
  auto g = graph_of(std::string(kBase) +
                    "@concept b\nname: B\ndefinition: x\ngeneralizations: b\ndomain: d\n\n"
                    "@concept c\nname: C\ndefinition: x\ngeneralizations: e\ndomain: d\n\n"
                    "@concept e\nname: E\ndefinition: x\ngeneralizations: c\ndomain: d\n");
  auto ds = check_acyclicity(g);
  ASSERT_EQ(codes(ds), (std::vector<std::string>{"E305", "E305"}));
  std::set<std::string> messages;
  for (const auto& d : ds) messages.insert(d.message);
  EXPECT_TRUE(messages.count("concept generalization cycle: b -> b"));
  EXPECT_TRUE(messages.count("concept generalization cycle: c -> e -> c"));
}

TEST(Acyclicity, CycleThroughSpecializationLists) {
  auto g = graph_of(
      "@domain d\nname: D\nspecializations: e\n\n"
      "@domain e\nname: E\nspecializations: d\n");
  EXPECT_EQ(count_code(check_acyclicity(g), "E305"), 1u);
}

TEST(Acyclicity, KindsAreSeparate) {
  auto g = graph_of(std::string(kBase) + "@concept b\nname: B\ndefinition: x\ngeneralizations: d\ndomain: d\n");
  EXPECT_TRUE(check_acyclicity(g).empty());
}

TEST(StrategyDomain, MisfiledStrategyAndMissingDomainNode) {
  auto g = graph_of("@domain d\nname: D\n\n@strategy s\ndescription: x\ndomain: d\n\n@strategy t\ndescription: y\n");
  auto c = codes(check_strategy_domain(g));
  std::sort(c.begin(), c.end());
  EXPECT_EQ(c, (std::vector<std::string>{"E306", "W307"}));
}

TEST(StrategyDomain, DefaultDomainIsAccepted) {
  auto g = graph_of("@domain strategies\nname: Strategies\n\n@strategy t\ndescription: y\n");
  EXPECT_TRUE(check_strategy_domain(g).empty());
}

TEST(Fanout, StrictlyGreaterThanThreshold) {
  std::string text = "@domain d\nname: D\n";
  for (int i = 0; i < 3; ++i) text += "@concept c" + std::to_string(i) + "\nname: C\ndefinition: x\ndomain: d\n";
  text += "@domain e\nname: E\nprominent-concepts: c0, c1, c2\n";
  auto g = graph_of(text);
  EXPECT_TRUE(lint_fanout(g, 3).empty());
  auto ds = lint_fanout(g, 2);
  ASSERT_EQ(codes(ds), (std::vector<std::string>{"W308"}));
  EXPECT_EQ(ds[0].node, NodeId("e"));
}

TEST(Validate, CorpusHasNoErrorsAndOnlyInverseWarnings) {
  auto checked = check_knowledge_base(KNOWEB_CORPUS_DIR);
  EXPECT_FALSE(has_errors(checked.diagnostics));
  EXPECT_EQ(count_code(checked.diagnostics, "W304"), checked.diagnostics.size());
  EXPECT_TRUE(checked.graph.resolved);
}

TEST(ValidateProperty, RandomGraphsValidate) {
  Rng rng(21);
  for (int round = 0; round < 100; ++round) {
    auto r = validate(random_graph(rng, options_for(rng, 30)));
    for (const auto& d : r.diagnostics) EXPECT_TRUE(d.code == "W304" || d.code == "W308") << render(d);
    EXPECT_TRUE(r.graph.resolved);
  }
}

TEST(ValidateProperty, CycleCountMatchesClosureOracle) {
  Rng rng(22);
  for (int round = 0; round < 100; ++round) {
    auto g = random_graph(rng, options_for(rng, 25));
    for (int k = 1 + round % 3; k > 0; --k) inject_generalization_cycle(g, rng);
    auto ds = check_acyclicity(g);
    EXPECT_EQ(ds.size(), count_generalization_cycles(g));
    EXPECT_FALSE(is_generalization_acyclic(g));
    for (const auto& d : ds) EXPECT_EQ(d.code, "E305");
  }
}

TEST(ValidateProperty, AcyclicGraphsAgreeWithKahn) {
  Rng rng(23);
  for (int round = 0; round < 50; ++round) {
    auto g = random_graph(rng, options_for(rng, 40));
    EXPECT_TRUE(is_generalization_acyclic(g));
    EXPECT_TRUE(check_acyclicity(g).empty());
  }
}
