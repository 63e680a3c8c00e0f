#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace knoweb {

/// True when `token` matches `[a-z0-9][a-z0-9-]*`.
bool is_valid_token(std::string_view token);

/// Names any node, local (`velocity`) or hosted elsewhere (`math:derivative`).
class NodeId {
 public:
  NodeId() = default;

  /// Throws std::invalid_argument on a malformed part. An empty `ns` gives a local id.
  NodeId(std::string local);
  NodeId(std::string ns, std::string local);

  /// Accepts `local` or `ns:local`; returns nullopt on anything else.
  static std::optional<NodeId> parse(std::string_view text);

  const std::string& ns() const { return ns_; }
  const std::string& local() const { return local_; }
  bool is_external() const { return !ns_.empty(); }
  bool empty() const { return local_.empty(); }

  std::string str() const;

  /// Local part with hyphens as spaces; the default display text of `[[id]]`.
  std::string default_display() const;

  friend bool operator==(const NodeId&, const NodeId&) = default;
  friend std::strong_ordering operator<=>(const NodeId&, const NodeId&) = default;

 private:
  std::string ns_;
  std::string local_;
};

}  // namespace knoweb
