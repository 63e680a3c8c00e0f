#pragma once

#include <string>
#include <variant>
#include <vector>

#include "knoweb/node_id.hpp"

namespace knoweb {

struct Link {
  NodeId target;
  std::string display;

  friend bool operator==(const Link&, const Link&) = default;
};

using Segment = std::variant<std::string, Link>;

/// Prose with embedded node references. Adjacent literals are always merged
/// and empty literals dropped, so equal sentences compare equal.
class RichText {
 public:
  RichText() = default;

  void append_text(std::string_view text);
  void append_link(NodeId target, std::string display);

  const std::vector<Segment>& segments() const { return segments_; }
  bool empty() const { return segments_.empty(); }

  /// Literals and display texts concatenated.
  std::string plain_text() const;
  std::vector<NodeId> link_targets() const;

  friend bool operator==(const RichText&, const RichText&) = default;

 private:
  std::vector<Segment> segments_;
};

}  // namespace knoweb
