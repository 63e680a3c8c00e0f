#include <gtest/gtest.h>

#include "knoweb/diagnostic.hpp"
#include "knoweb/parser.hpp"
#include "knoweb/rich_text.hpp"

using namespace knoweb;

TEST(RichText, MergesAdjacentLiteralsAndDropsEmpty) {
  RichText a;
  a.append_text("A ");
  a.append_text("");
  a.append_text("rate");
  RichText b;
  b.append_text("A rate");
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.segments().size(), 1u);
  EXPECT_TRUE(RichText().empty());
}

TEST(RichText, PlainTextAndTargets) {
  RichText t;
  t.append_text("A ");
  t.append_link(NodeId("derivative"), "derivative");
  t.append_text(" of ");
  t.append_link(NodeId("math", "time"), "time");
  EXPECT_EQ(t.plain_text(), "A derivative of time");
  EXPECT_EQ(t.link_targets(), (std::vector<NodeId>{NodeId("derivative"), NodeId("math", "time")}));
}

TEST(InlineLinks, DisplayDefaultsToIdText) {
  auto parsed = parse_inline_links("see [[second-degree]] and [[term|terms]].");
  EXPECT_TRUE(parsed.diagnostics.empty());
  RichText expected;
  expected.append_text("see ");
  expected.append_link(NodeId("second-degree"), "second degree");
  expected.append_text(" and ");
  expected.append_link(NodeId("term"), "terms");
  expected.append_text(".");
  EXPECT_EQ(parsed.text, expected);
}

TEST(InlineLinks, EmptyDisplayFallsBackToIdText) {
  auto parsed = parse_inline_links("[[root|]]");
  ASSERT_EQ(parsed.text.segments().size(), 1u);
  EXPECT_EQ(std::get<Link>(parsed.text.segments()[0]).display, "root");
}

TEST(InlineLinks, NamespacedTarget) {
  auto parsed = parse_inline_links("[[math:derivative|d]]");
  EXPECT_EQ(parsed.text.link_targets(), (std::vector<NodeId>{NodeId("math", "derivative")}));
}

TEST(InlineLinks, UnterminatedMarkerIsKeptAsText) {
  auto parsed = parse_inline_links("broken [[term here");
  ASSERT_EQ(parsed.diagnostics.size(), 1u);
  EXPECT_EQ(parsed.diagnostics[0].code, "W201");
  EXPECT_EQ(parsed.text.plain_text(), "broken [[term here");
  EXPECT_TRUE(parsed.text.link_targets().empty());
}

TEST(InlineLinks, MalformedIdIsAnError) {
  auto parsed = parse_inline_links("a [[Not An Id|x]] b");
  ASSERT_EQ(parsed.diagnostics.size(), 1u);
  EXPECT_EQ(parsed.diagnostics[0].code, "E104");
  EXPECT_TRUE(parsed.text.link_targets().empty());
  EXPECT_EQ(parsed.text.plain_text(), "a [[Not An Id|x]] b");
}

TEST(InlineLinks, PlainTextWithoutMarkers) {
  auto parsed = parse_inline_links("no links ] | here");
  EXPECT_TRUE(parsed.diagnostics.empty());
  EXPECT_EQ(parsed.text.segments().size(), 1u);
}
