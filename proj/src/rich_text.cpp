#include "knoweb/rich_text.hpp"

namespace knoweb {

void RichText::append_text(std::string_view text) {
  if (text.empty()) return;
  if (!segments_.empty()) {
    if (auto* last = std::get_if<std::string>(&segments_.back())) {
      last->append(text);
      return;
    }
  }
  segments_.emplace_back(std::string(text));
}

void RichText::append_link(NodeId target, std::string display) {
  segments_.emplace_back(Link{std::move(target), std::move(display)});
}

std::string RichText::plain_text() const {
  std::string out;
  for (const auto& seg : segments_) {
    if (const auto* text = std::get_if<std::string>(&seg))
      out += *text;
    else
      out += std::get<Link>(seg).display;
  }
  return out;
}

std::vector<NodeId> RichText::link_targets() const {
  std::vector<NodeId> out;
  for (const auto& seg : segments_)
    if (const auto* link = std::get_if<Link>(&seg)) out.push_back(link->target);
  return out;
}

}  // namespace knoweb
