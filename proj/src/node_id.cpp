#include "knoweb/node_id.hpp"

#include <algorithm>
#include <stdexcept>

namespace knoweb {

namespace {

bool is_token_head(char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'); }

}  // namespace

bool is_valid_token(std::string_view token) {
  if (token.empty() || !is_token_head(token.front())) return false;
  return std::all_of(token.begin() + 1, token.end(),
                     [](char c) { return is_token_head(c) || c == '-'; });
}

NodeId::NodeId(std::string local) : NodeId(std::string{}, std::move(local)) {}

NodeId::NodeId(std::string ns, std::string local) : ns_(std::move(ns)), local_(std::move(local)) {
  if (!is_valid_token(local_)) throw std::invalid_argument("malformed node id '" + local_ + "'");
  if (!ns_.empty() && !is_valid_token(ns_))
    throw std::invalid_argument("malformed namespace '" + ns_ + "'");
}

std::optional<NodeId> NodeId::parse(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    if (!is_valid_token(text)) return std::nullopt;
    return NodeId(std::string(text));
  }
  auto ns = text.substr(0, colon);
  auto local = text.substr(colon + 1);
  if (!is_valid_token(ns) || !is_valid_token(local)) return std::nullopt;
  return NodeId(std::string(ns), std::string(local));
}

std::string NodeId::str() const { return ns_.empty() ? local_ : ns_ + ":" + local_; }

std::string NodeId::default_display() const {
  std::string out = local_;
  std::replace(out.begin(), out.end(), '-', ' ');
  return out;
}

}  // namespace knoweb
