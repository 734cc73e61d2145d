// ontoplot command-line entry point: stats, render, query, convert, serve.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ontoplot/error.hpp"
#include "ontoplot/hierarchy.hpp"
#include "ontoplot/layout.hpp"
#include "ontoplot/owl_parser.hpp"
#include "ontoplot/query_command.hpp"
#include "ontoplot/service.hpp"
#include "ontoplot/svg.hpp"

using namespace ontoplot;

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

void report_warnings(const OntologySnapshot& s, bool verbose) {
  const auto& warnings = s.provenance().warnings;
  if (warnings.empty()) return;
  if (verbose)
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  else
    std::cerr << warnings.size() << " warning(s); use --verbose to list them\n";
}

int cmd_stats(const std::string& file, bool verbose) {
  auto snapshot = load_owl(file);
  report_warnings(snapshot, verbose);
  auto stats = summarize(snapshot);
  std::cout << "classes: " << stats.class_count << "\n"
            << "object properties: " << stats.property_count << "\n"
            << "associations: " << stats.association_count << "\n"
            << "roots: " << stats.root_count << "\n"
            << "max depth: " << stats.max_depth << "\n";
  for (const auto& [property, count] : stats.per_property_counts)
    std::cout << "  " << property << ": " << count << "\n";
  return 0;
}

struct RenderArgs {
  std::string file, property, out;
  std::string focus, selection;
  std::vector<int> expand, collapse;
  std::vector<std::string> pin;
  bool no_legend = false;
  bool verbose = false;
};

int cmd_render(const RenderArgs& a) {
  auto snapshot = load_owl(a.file);
  report_warnings(snapshot, a.verbose);
  auto tree = build_occurrence_tree(snapshot);
  ViewState view;
  view.property = snapshot.property_id(resolve_property(snapshot, a.property));
  if (!a.focus.empty()) view.focus = snapshot.class_id(resolve_class(snapshot, a.focus));
  if (!a.selection.empty())
    view.selection = snapshot.class_id(resolve_class(snapshot, a.selection));
  for (int occ : a.expand) view.overrides[occ] = Override::ForceExpanded;
  for (int occ : a.collapse) view.overrides[occ] = Override::ForceCollapsed;
  for (const auto& p : a.pin) view.pinned.insert(snapshot.class_id(resolve_class(snapshot, p)));

  SvgOptions options;
  options.legend = !a.no_legend;
  options.title = view.property;
  auto vm = layout_view(snapshot, tree, options.config, view);
  write_file(a.out, render_svg(vm.layout, options));
  std::cerr << "wrote " << a.out << " (" << vm.plan.visible.size() << " of " << tree.size()
            << " occurrences visible, " << vm.plan.regions.size() << " compressed regions)\n";
  return 0;
}

int cmd_query(const std::string& file, const std::string& sub,
              const std::vector<std::string>& args, bool transitive) {
  auto snapshot = load_owl(file);
  HierarchyQueries queries(snapshot);
  auto named = positional_query_args(sub, args);
  if (transitive) named["transitive"] = "true";
  for (const auto& line : run_query(queries, sub, named).lines) std::cout << line << "\n";
  return 0;
}

int cmd_convert(const std::string& file, const std::string& out, bool verbose) {
  auto snapshot = load_owl(file);
  report_warnings(snapshot, verbose);
  write_file(out, write_native_document(snapshot));
  return 0;
}

int cmd_serve(const std::string& file, const std::string& host, int port) {
  Service service(load_owl(file));
  std::cerr << "serving " << file << " on http://" << host << ":" << port << "\n";
  if (!serve(service, host, port)) {
    std::cerr << "error: cannot listen on " << host << ":" << port << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Explore ontology class hierarchies and their associations"};
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "Print every load warning");

  std::string file;
  auto* stats = app.add_subcommand("stats", "Print class, property and association counts");
  stats->add_option("file", file, "Ontology (.ofn or .json)")->required();

  RenderArgs render;
  auto* rend = app.add_subcommand("render", "Render the compressed hierarchy to SVG");
  rend->add_option("file", render.file, "Ontology (.ofn or .json)")->required();
  rend->add_option("--property", render.property, "Association property")->required();
  rend->add_option("--out", render.out, "SVG output path")->required();
  rend->add_option("--focus", render.focus, "Focus class: show its associations only");
  rend->add_option("--select", render.selection, "Selected class");
  rend->add_option("--expand", render.expand, "Force-expand occurrence (repeatable)");
  rend->add_option("--collapse", render.collapse, "Force-collapse occurrence (repeatable)");
  rend->add_option("--pin", render.pin, "Pin a class label (repeatable)");
  rend->add_flag("--no-legend", render.no_legend, "Omit the colour legend");

  std::string sub;
  std::vector<std::string> query_args;
  bool transitive = false;
  auto* query = app.add_subcommand("query", "Run a hierarchy query");
  query->add_option("file", file, "Ontology (.ofn or .json)")->required();
  std::string choices;
  for (const auto& name : query_subcommands()) choices += (choices.empty() ? "" : ", ") + name;
  query->add_option("subcommand", sub, "One of: " + choices)->required();
  query->add_option("args", query_args, "Subcommand arguments");
  query->add_flag("--transitive", transitive, "class-effect: count leaf descendants");

  std::string out;
  auto* convert = app.add_subcommand("convert", "Write the canonical JSON document");
  convert->add_option("file", file, "Ontology (.ofn or .json)")->required();
  convert->add_option("--out", out, "JSON output path")->required();

  std::string host = "127.0.0.1";
  int port = 8080;
  auto* srv = app.add_subcommand("serve", "Serve the JSON API");
  srv->add_option("file", file, "Ontology (.ofn or .json)")->required();
  srv->add_option("--port", port, "TCP port")->check(CLI::Range(0, 65535));
  srv->add_option("--host", host, "Bind address");

  CLI11_PARSE(app, argc, argv);
  render.verbose = verbose;

  try {
    if (stats->parsed()) return cmd_stats(file, verbose);
    if (rend->parsed()) return cmd_render(render);
    if (query->parsed()) return cmd_query(file, sub, query_args, transitive);
    if (convert->parsed()) return cmd_convert(file, out, verbose);
    if (srv->parsed()) return cmd_serve(file, host, port);
  } catch (const Error& e) {
    std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
