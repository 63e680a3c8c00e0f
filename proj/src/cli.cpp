#include "knoweb/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "knoweb/analysis.hpp"
#include "knoweb/parser.hpp"
#include "knoweb/site.hpp"
#include "knoweb/validator.hpp"

namespace knoweb {

namespace fs = std::filesystem;

namespace {

std::size_t count_errors(const Diagnostics& diags) {
  return static_cast<std::size_t>(std::count_if(diags.begin(), diags.end(), [](const Diagnostic& d) { return d.is_error(); }));
}

void print_diagnostics(const Diagnostics& diags, std::ostream& err, bool errors_only = false) {
  for (const auto& d : diags)
    if (!errors_only || d.is_error()) err << render(d) << "\n";
}

void print_summary(const Diagnostics& diags, std::ostream& err) {
  auto errors = count_errors(diags);
  err << errors << (errors == 1 ? " error, " : " errors, ") << diags.size() - errors
      << (diags.size() - errors == 1 ? " warning\n" : " warnings\n");
}

std::optional<NodeId> parse_id_arg(const std::string& text, std::ostream& err) {
  auto id = NodeId::parse(text);
  if (!id) err << "knoweb: malformed node id '" << text << "'\n";
  return id;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.generic_string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int cmd_check(const fs::path& dir, std::ostream&, std::ostream& err) {
  auto checked = check_knowledge_base(dir);
  print_diagnostics(checked.diagnostics, err);
  print_summary(checked.diagnostics, err);
  return has_errors(checked.diagnostics) ? exit_code::kValidationErrors : exit_code::kOk;
}

int cmd_build(const fs::path& dir, const fs::path& out_dir, const std::string& base_url, std::ostream& out,
              std::ostream& err) {
  static const std::regex absolute_url(R"(^[A-Za-z][A-Za-z0-9+.\-]*://\S+$)");
  SiteOptions options;
  if (!base_url.empty()) {
    if (!std::regex_match(base_url, absolute_url)) {
      err << "knoweb: --base-url must be an absolute URL\n";
      return exit_code::kUsage;
    }
    std::string trimmed = base_url;
    while (trimmed.back() == '/') trimmed.pop_back();
    options.base_url = trimmed;
  }

  auto checked = check_knowledge_base(dir);
  print_diagnostics(checked.diagnostics, err);
  if (has_errors(checked.diagnostics)) {
    print_summary(checked.diagnostics, err);
    err << "knoweb: not building because of errors\n";
    return exit_code::kValidationErrors;
  }

  auto completed = complete_inverses(std::move(checked.graph));
  auto site = emit_site(completed.graph, out_dir, options);
  print_diagnostics(site.diagnostics, err);
  out << "wrote " << site.manifest.pages.size() << " node pages, " << site.manifest.indexes.size()
      << " indexes and " << site.manifest.graph_export << " to " << out_dir.generic_string() << "\n";
  return exit_code::kOk;
}

int cmd_shortcuts(const fs::path& dir, const std::string& from_text, const std::string& to_text, std::size_t max_len,
                  std::ostream& out, std::ostream& err) {
  auto from = parse_id_arg(from_text, err);
  auto to = parse_id_arg(to_text, err);
  if (!from || !to) return exit_code::kUsage;

  auto checked = check_knowledge_base(dir);
  if (has_errors(checked.diagnostics)) {
    print_diagnostics(checked.diagnostics, err, true);
    return exit_code::kValidationErrors;
  }
  auto graph = complete_inverses(std::move(checked.graph)).graph;
  auto paths = find_shortcuts(graph, *from, *to, max_len);
  for (const auto& path : paths) out << describe(path) << "\n";
  if (paths.empty()) err << "no shortcuts of length <= " << max_len << "\n";
  return exit_code::kOk;
}

int cmd_usability(const fs::path& dir, const std::vector<std::string>& primitive_args, std::ostream& out,
                  std::ostream& err) {
  std::set<NodeId> primitives;
  for (const auto& text : primitive_args) {
    auto id = parse_id_arg(text, err);
    if (!id) return exit_code::kUsage;
    primitives.insert(*id);
  }

  auto checked = check_knowledge_base(dir);
  if (has_errors(checked.diagnostics)) {
    print_diagnostics(checked.diagnostics, err, true);
    return exit_code::kValidationErrors;
  }
  const auto& graph = checked.graph;
  primitives.insert(graph.manifest.primitives.begin(), graph.manifest.primitives.end());

  auto labeling = usability_closure(graph, primitives);
  auto strategies = usable_strategies(graph);
  auto section = [&](std::string_view title, const std::set<NodeId>& ids) {
    out << title << " (" << ids.size() << ")\n";
    for (const auto& id : ids) out << "  " << id.str() << "\n";
  };
  section("primitive problems", labeling.primitives);
  section("solvable problems", labeling.solvable);
  section("usable patterns", labeling.usable);
  section("usable strategies", strategies);
  return exit_code::kOk;
}

int cmd_stats(const fs::path& dir, std::ostream& out, std::ostream& err) {
  auto checked = check_knowledge_base(dir);
  if (has_errors(checked.diagnostics)) {
    print_diagnostics(checked.diagnostics, err, true);
    return exit_code::kValidationErrors;
  }
  auto completed = complete_inverses(std::move(checked.graph));
  out << render_stats_text(graph_stats(completed.graph));
  return exit_code::kOk;
}

int cmd_fmt(const fs::path& dir, std::ostream& out, std::ostream& err) {
  if (!fs::is_directory(dir)) throw std::runtime_error(dir.generic_string() + " is not a directory");
  std::size_t changed = 0;
  std::size_t failed = 0;
  auto files = source_files(dir);
  for (const auto& path : files) {
    std::string file = path.generic_string();
    std::string original = read_text(path);
    auto formatted = format_source(original, file);
    sort_diagnostics(formatted.diagnostics);
    print_diagnostics(formatted.diagnostics, err);
    if (!formatted.text) {
      ++failed;
      err << "knoweb: left " << file << " unchanged because of errors\n";
      continue;
    }
    if (*formatted.text == original) continue;
    std::ofstream stream(path, std::ios::binary | std::ios::trunc);
    if (!stream || !(stream << *formatted.text)) throw std::runtime_error("cannot write " + file);
    ++changed;
  }
  out << "formatted " << changed << " of " << files.size() << " files\n";
  return failed > 0 ? exit_code::kValidationErrors : exit_code::kOk;
}

}  // namespace

CheckedBase check_knowledge_base(const fs::path& root) {
  auto loaded = load_knowledge_base(root);
  auto validated = validate(std::move(loaded.graph));
  CheckedBase result{std::move(validated.graph), std::move(loaded.diagnostics)};
  result.diagnostics.insert(result.diagnostics.end(), validated.diagnostics.begin(), validated.diagnostics.end());
  sort_diagnostics(result.diagnostics);
  return result;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compile a typed knowledge base of concepts, problems, solution patterns, strategies and domains"};
  app.name("knoweb");
  app.require_subcommand(1);

  std::string dir;
  std::string out_dir;
  std::string base_url;
  std::string from;
  std::string to;
  std::size_t max_len = 4;
  std::vector<std::string> primitives;

  auto* check = app.add_subcommand("check", "Parse and validate, printing diagnostics");
  check->add_option("dir", dir, "Knowledge base directory")->required();

  auto* build = app.add_subcommand("build", "Validate, complete inverse links and emit the static site");
  build->add_option("dir", dir, "Knowledge base directory")->required();
  build->add_option("-o,--out", out_dir, "Output directory")->required();
  build->add_option("--base-url", base_url, "Absolute URL the site will be served from");

  auto* shortcuts = app.add_subcommand("shortcuts", "List abstraction paths between two nodes");
  shortcuts->add_option("dir", dir, "Knowledge base directory")->required();
  shortcuts->add_option("from", from, "Start node id")->required();
  shortcuts->add_option("to", to, "End node id")->required();
  shortcuts->add_option("--max-len", max_len, "Longest path to report")->check(CLI::PositiveNumber);

  auto* usability = app.add_subcommand("usability", "Compute solvable problems and usable patterns");
  usability->add_option("dir", dir, "Knowledge base directory")->required();
  usability->add_option("--primitive", primitives, "Problem taken as immediately accessible (repeatable)");

  auto* stats = app.add_subcommand("stats", "Print graph statistics");
  stats->add_option("dir", dir, "Knowledge base directory")->required();

  auto* fmt = app.add_subcommand("fmt", "Rewrite sources in canonical form");
  fmt->add_option("dir", dir, "Knowledge base directory")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::kOk;
  } catch (const CLI::ParseError& e) {
    err << "knoweb: " << e.what() << "\n\n" << app.help();
    return exit_code::kUsage;
  }

  try {
    if (*check) return cmd_check(dir, out, err);
    if (*build) return cmd_build(dir, out_dir, base_url, out, err);
    if (*shortcuts) return cmd_shortcuts(dir, from, to, max_len, out, err);
    if (*usability) return cmd_usability(dir, primitives, out, err);
    if (*stats) return cmd_stats(dir, out, err);
    if (*fmt) return cmd_fmt(dir, out, err);
  } catch (const DiagnosticError& e) {
    err << render(e.diagnostic()) << "\n";
    return e.diagnostic().code.starts_with("E5") ? exit_code::kUsage : exit_code::kValidationErrors;
  } catch (const std::exception& e) {
    err << "knoweb: " << e.what() << "\n";
    return exit_code::kUsage;
  }
  return exit_code::kUsage;
}

}  // namespace knoweb
