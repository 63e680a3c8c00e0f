#include "knoweb/parser.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>

namespace knoweb {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kWhitespace = " \t\r\f\v";

std::string_view trim(std::string_view s) {
  auto first = s.find_first_not_of(kWhitespace);
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(kWhitespace);
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::vector<std::string_view> split_words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    pos = s.find_first_not_of(kWhitespace, pos);
    if (pos == std::string_view::npos) break;
    auto end = s.find_first_of(kWhitespace, pos);
    if (end == std::string_view::npos) end = s.size();
    out.push_back(s.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

/// Length of the `field` prefix when `line` is a field line (`name:` in column 0), else 0.
std::size_t field_name_length(std::string_view line) {
  if (line.empty() || line[0] < 'a' || line[0] > 'z') return 0;
  std::size_t i = 1;
  while (i < line.size() && ((line[i] >= 'a' && line[i] <= 'z') || line[i] == '-')) ++i;
  return i < line.size() && line[i] == ':' ? i : 0;
}

/// Fields that may appear several times: repeated names and id lists.
bool is_repeatable(NodeKind kind, std::string_view field) {
  bool repeatable = false;
  Node probe = make_node(kind, NodeId("probe"));
  for_each_field(probe, [&](const FieldSpec& spec, const auto& value) {
    using T = std::decay_t<decltype(value)>;
    if (spec.name == field)
      repeatable = std::is_same_v<T, IdList> || std::is_same_v<T, std::vector<std::string>>;
  });
  return repeatable;
}

Diagnostic diag_at(std::string code, std::string message, const std::string& file, int line) {
  return Diagnostic{std::move(code), std::nullopt, std::nullopt, std::move(message), {file, line}};
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in || !fs::is_regular_file(path)) throw std::runtime_error("cannot read " + path.generic_string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw std::runtime_error("cannot read " + path.generic_string());
  return buffer.str();
}

void write_rich_text(std::string& out, const RichText& text) {
  for (const auto& seg : text.segments()) {
    if (const auto* literal = std::get_if<std::string>(&seg)) {
      out += *literal;
    } else {
      const auto& link = std::get<Link>(seg);
      out += "[[" + link.target.str() + "|" + link.display + "]]";
    }
  }
}

}  // namespace

SourceParse parse_source(std::string_view text, const std::string& file) {
  SourceParse result;
  std::vector<std::string> pending_comments;
  NodeDraft* block = nullptr;
  RawField* value = nullptr;
  bool skipping_block = false;  // inside a block whose header was rejected
  bool skipping_value = false;  // continuation of a rejected field line

  auto take_comments = [&](std::vector<std::string>& into) {
    into.insert(into.end(), pending_comments.begin(), pending_comments.end());
    pending_comments.clear();
  };
  auto report = [&](std::string code, std::string message, int line) {
    result.diagnostics.push_back(diag_at(std::move(code), std::move(message), file, line));
  };

  int lineno = 0;
  for (auto line : split_lines(text)) {
    ++lineno;
    auto trimmed = trim(line);
    if (trimmed.empty()) continue;

    if (trimmed.front() == '#') {
      pending_comments.emplace_back(trimmed);
      continue;
    }

    if (trimmed.front() == '@') {
      block = nullptr;
      value = nullptr;
      skipping_block = true;
      skipping_value = false;
      auto words = split_words(trimmed.substr(1));
      auto kind = words.empty() ? std::nullopt : parse_kind(words[0]);
      if (!kind || words.size() != 2) {
        report("E101", "malformed header '" + std::string(trimmed) + "'; expected '@<kind> <id>'", lineno);
        continue;
      }
      auto id = NodeId::parse(words[1]);
      if (!id || id->is_external()) {
        report("E104", "malformed node id '" + std::string(words[1]) + "'", lineno);
        continue;
      }
      skipping_block = false;
      NodeDraft draft;
      draft.kind = *kind;
      draft.id = *id;
      draft.location = {file, lineno};
      take_comments(draft.comments);
      result.drafts.push_back(std::move(draft));
      block = &result.drafts.back();
      continue;
    }

    if (block == nullptr) {
      if (!skipping_block) report("E101", "text outside any '@<kind> <id>' block", lineno);
      continue;
    }
    take_comments(block->comments);

    if (auto len = field_name_length(line); len > 0) {
      std::string name(line.substr(0, len));
      value = nullptr;
      skipping_value = true;
      if (find_field(block->kind, name) == nullptr) {
        report("E102", "unknown field '" + name + "' for " + std::string(to_string(block->kind)), lineno);
        continue;
      }
      bool seen = std::any_of(block->fields.begin(), block->fields.end(),
                              [&](const RawField& f) { return f.name == name; });
      if (seen && !is_repeatable(block->kind, name)) {
        report("E103", "field '" + name + "' takes a single value and is already set", lineno);
        continue;
      }
      skipping_value = false;
      block->fields.push_back({name, std::string(trim(line.substr(len + 1))), lineno});
      value = &block->fields.back();
      continue;
    }

    if (skipping_value) continue;
    if (value == nullptr) {
      report("E101", "text before the first field of a block", lineno);
      continue;
    }
    if (!value->value.empty()) value->value += ' ';
    value->value += trimmed;
  }

  result.trailing_comments = std::move(pending_comments);
  return result;
}

InlineParse parse_inline_links(std::string_view text) {
  InlineParse result;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto open = text.find("[[", pos);
    if (open == std::string_view::npos) {
      result.text.append_text(text.substr(pos));
      break;
    }
    result.text.append_text(text.substr(pos, open - pos));
    auto close = text.find("]]", open + 2);
    if (close == std::string_view::npos) {
      result.diagnostics.push_back(diag_at("W201", "unterminated '[[' kept as text", {}, 0));
      result.text.append_text(text.substr(open));
      break;
    }
    auto inner = text.substr(open + 2, close - open - 2);
    auto bar = inner.find('|');
    auto id = NodeId::parse(inner.substr(0, bar));
    if (!id) {
      result.diagnostics.push_back(
          diag_at("E104", "malformed node id '" + std::string(inner.substr(0, bar)) + "' in link", {}, 0));
      result.text.append_text(text.substr(open, close + 2 - open));
    } else {
      std::string display = bar == std::string_view::npos ? std::string{} : std::string(inner.substr(bar + 1));
      if (display.empty()) display = id->default_display();
      result.text.append_link(*id, std::move(display));
    }
    pos = close + 2;
  }
  return result;
}

Elaboration elaborate(const NodeDraft& draft) {
  Elaboration result;
  result.origin.header = draft.location;
  for (const auto& raw : draft.fields) result.origin.field_lines.try_emplace(raw.name, raw.line);

  Node node = make_node(draft.kind, draft.id);
  bool buildable = true;

  auto report = [&](std::string code, std::string_view field, std::string message, int line) {
    result.diagnostics.push_back(Diagnostic{std::move(code), draft.id, std::string(field), std::move(message),
                                            {draft.location.file, line}});
  };
  auto parse_id = [&](std::string_view text, const RawField& raw) -> std::optional<NodeId> {
    auto id = NodeId::parse(text);
    if (!id) report("E104", raw.name, "malformed node id '" + std::string(text) + "'", raw.line);
    return id;
  };

  for_each_field(node, [&](const FieldSpec& spec, auto& member) {
    using T = std::decay_t<decltype(member)>;
    std::vector<const RawField*> raws;
    for (const auto& raw : draft.fields)
      if (raw.name == spec.name) raws.push_back(&raw);

    bool filled = false;
    if constexpr (std::is_same_v<T, std::string>) {
      if (!raws.empty() && !raws[0]->value.empty()) member = raws[0]->value, filled = true;
    } else if constexpr (std::is_same_v<T, std::optional<std::string>>) {
      if (!raws.empty() && !raws[0]->value.empty()) member = raws[0]->value, filled = true;
    } else if constexpr (std::is_same_v<T, std::vector<std::string>>) {
      for (const auto* raw : raws)
        if (!raw->value.empty()) member.push_back(raw->value);
      filled = !member.empty();
    } else if constexpr (std::is_same_v<T, RichText>) {
      if (!raws.empty()) {
        auto parsed = parse_inline_links(raws[0]->value);
        for (auto& d : parsed.diagnostics)
          report(std::move(d.code), spec.name, std::move(d.message), raws[0]->line);
        member = std::move(parsed.text);
        filled = !member.empty();
      }
    } else if constexpr (std::is_same_v<T, NodeId>) {
      if (!raws.empty() && !raws[0]->value.empty()) {
        if (auto id = parse_id(raws[0]->value, *raws[0])) {
          member = *id, filled = true;
        } else if (spec.required || !member.empty()) {
          buildable = false;
          return;
        }
      }
    } else if constexpr (std::is_same_v<T, std::optional<NodeId>>) {
      if (!raws.empty() && !raws[0]->value.empty()) {
        member = parse_id(raws[0]->value, *raws[0]);
        filled = member.has_value();
      }
    } else if constexpr (std::is_same_v<T, IdList>) {
      for (const auto* raw : raws) {
        std::string_view rest = raw->value;
        while (!rest.empty()) {
          auto comma = rest.find(',');
          auto item = trim(rest.substr(0, comma));
          rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
          if (item.empty()) continue;
          auto id = parse_id(item, *raw);
          if (!id) continue;
          if (std::find(member.begin(), member.end(), *id) != member.end()) {
            report("W109", spec.name, "'" + id->str() + "' listed twice; duplicate dropped", raw->line);
            continue;
          }
          member.push_back(std::move(*id));
        }
      }
      filled = !member.empty();
    }

    // A strategy's domain is pre-filled with `strategies`.
    bool defaulted = [&] {
      if constexpr (std::is_same_v<T, NodeId>) return !member.empty();
      return false;
    }();
    if (spec.required && !filled && !defaulted) {
      report("E107", spec.name, "required field '" + std::string(spec.name) + "' is missing or empty",
             raws.empty() ? draft.location.line : raws[0]->line);
      buildable = false;
    }
  });

  if (buildable) result.node = std::move(node);
  return result;
}

ManifestParse parse_manifest(std::string_view text, const std::string& file) {
  static const std::regex absolute_url(R"(^[A-Za-z][A-Za-z0-9+.\-]*://[^\s/]+(/\S*)?$)");
  ManifestParse result;
  std::set<NodeId> primitives;
  auto bad = [&](std::string message, int line) {
    result.diagnostics.push_back(diag_at("E108", std::move(message), file, line));
  };

  int lineno = 0;
  for (auto line : split_lines(text)) {
    ++lineno;
    auto trimmed = trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    auto words = split_words(trimmed);
    const auto& directive = words[0];
    if (directive == "namespace") {
      if (words.size() != 3) {
        bad("expected 'namespace <token> <absolute-url>'", lineno);
      } else if (!is_valid_token(words[1])) {
        bad("malformed namespace token '" + std::string(words[1]) + "'", lineno);
      } else if (!std::regex_match(words[2].begin(), words[2].end(), absolute_url)) {
        bad("namespace base '" + std::string(words[2]) + "' is not an absolute URL", lineno);
      } else {
        std::string url(words[2]);
        while (url.back() == '/') url.pop_back();
        if (!result.manifest.namespaces.emplace(std::string(words[1]), url).second)
          bad("namespace '" + std::string(words[1]) + "' declared twice", lineno);
      }
    } else if (directive == "primitive") {
      auto id = words.size() == 2 ? NodeId::parse(words[1]) : std::nullopt;
      if (!id)
        bad("expected 'primitive <problem-id>'", lineno);
      else if (primitives.insert(*id).second)
        result.manifest.primitives.push_back(*id);
    } else if (directive == "fanout-threshold") {
      int value = 0;
      bool ok = words.size() == 2;
      if (ok) {
        auto [ptr, ec] = std::from_chars(words[1].data(), words[1].data() + words[1].size(), value);
        ok = ec == std::errc{} && ptr == words[1].data() + words[1].size() && value > 0;
      }
      if (ok)
        result.manifest.fanout_threshold = value;
      else
        bad("expected 'fanout-threshold <positive integer>'", lineno);
    } else {
      bad("unknown manifest directive '" + std::string(directive) + "'", lineno);
    }
  }
  return result;
}

std::vector<fs::path> source_files(const fs::path& root) {
  std::vector<std::pair<std::string, fs::path>> found;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file() || entry.path().extension() != kSourceExtension) continue;
    found.emplace_back(fs::relative(entry.path(), root).generic_string(), entry.path());
  }
  std::sort(found.begin(), found.end());
  std::vector<fs::path> out;
  out.reserve(found.size());
  for (auto& [rel, path] : found) out.push_back(root / rel);
  return out;
}

LoadResult load_knowledge_base(const fs::path& root) {
  if (!fs::is_directory(root)) throw std::runtime_error(root.generic_string() + " is not a directory");

  LoadResult result;
  auto manifest_path = root / kManifestFileName;
  std::string manifest_file = manifest_path.generic_string();
  if (!fs::exists(manifest_path)) {
    result.diagnostics.push_back(diag_at("W106", "no manifest found; using defaults", manifest_file, 0));
  } else {
    try {
      auto parsed = parse_manifest(read_file(manifest_path), manifest_file);
      result.graph.manifest = std::move(parsed.manifest);
      result.diagnostics.insert(result.diagnostics.end(), parsed.diagnostics.begin(), parsed.diagnostics.end());
    } catch (const std::exception&) {
      result.diagnostics.push_back(diag_at("E106", "manifest unreadable; using defaults", manifest_file, 0));
    }
  }

  for (const auto& path : source_files(root)) {
    std::string file = path.generic_string();
    auto parsed = parse_source(read_file(path), file);
    result.diagnostics.insert(result.diagnostics.end(), parsed.diagnostics.begin(), parsed.diagnostics.end());
    for (const auto& draft : parsed.drafts) {
      auto elaborated = elaborate(draft);
      result.diagnostics.insert(result.diagnostics.end(), elaborated.diagnostics.begin(),
                                elaborated.diagnostics.end());
      if (!elaborated.node) continue;
      if (const Node* first = result.graph.find(draft.id)) {
        auto where = result.graph.location_of(draft.id);
        result.diagnostics.push_back(Diagnostic{"E105", draft.id, std::nullopt,
                                                "duplicate id; first defined as " +
                                                    std::string(to_string(kind_of(*first))) + " at " +
                                                    where.file + ":" + std::to_string(where.line),
                                                draft.location});
        continue;
      }
      result.graph.insert(std::move(*elaborated.node), std::move(elaborated.origin));
    }
  }
  return result;
}

std::string serialize_node(const Node& node) {
  std::string out = "@" + std::string(to_string(kind_of(node))) + " " + id_of(node).str() + "\n";
  for_each_field(node, [&](const FieldSpec& spec, const auto& value) {
    using T = std::decay_t<decltype(value)>;
    auto line = [&](const std::string& text) { out += std::string(spec.name) + ": " + text + "\n"; };
    if constexpr (std::is_same_v<T, std::string>) {
      if (!value.empty()) line(value);
    } else if constexpr (std::is_same_v<T, std::optional<std::string>>) {
      if (value) line(*value);
    } else if constexpr (std::is_same_v<T, std::vector<std::string>>) {
      for (const auto& name : value) line(name);
    } else if constexpr (std::is_same_v<T, RichText>) {
      if (!value.empty()) {
        std::string text;
        write_rich_text(text, value);
        line(text);
      }
    } else if constexpr (std::is_same_v<T, NodeId>) {
      if (!value.empty()) line(value.str());
    } else if constexpr (std::is_same_v<T, std::optional<NodeId>>) {
      if (value) line(value->str());
    } else if constexpr (std::is_same_v<T, IdList>) {
      if (!value.empty()) {
        std::string joined;
        for (const auto& id : value) joined += (joined.empty() ? "" : ", ") + id.str();
        line(joined);
      }
    }
  });
  return out;
}

std::string serialize_source(const std::vector<Node>& nodes, const std::vector<std::vector<std::string>>& comments,
                             const std::vector<std::string>& trailing_comments) {
  std::string out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i > 0) out += '\n';
    if (i < comments.size())
      for (const auto& c : comments[i]) out += c + "\n";
    out += serialize_node(nodes[i]);
  }
  if (!trailing_comments.empty()) {
    if (!out.empty()) out += '\n';
    for (const auto& c : trailing_comments) out += c + "\n";
  }
  return out;
}

FormatResult format_source(std::string_view text, const std::string& file) {
  FormatResult result;
  auto parsed = parse_source(text, file);
  result.diagnostics = std::move(parsed.diagnostics);
  std::vector<Node> nodes;
  std::vector<std::vector<std::string>> comments;
  for (const auto& draft : parsed.drafts) {
    auto elaborated = elaborate(draft);
    result.diagnostics.insert(result.diagnostics.end(), elaborated.diagnostics.begin(), elaborated.diagnostics.end());
    if (elaborated.node) {
      nodes.push_back(std::move(*elaborated.node));
      comments.push_back(draft.comments);
    }
  }
  if (!has_errors(result.diagnostics)) result.text = serialize_source(nodes, comments, parsed.trailing_comments);
  return result;
}

}  // namespace knoweb
