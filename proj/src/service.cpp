#include "ontoplot/service.hpp"

#include <algorithm>

#include <httplib.h>
#include <json.hpp>

#include "ontoplot/error.hpp"
#include "ontoplot/search.hpp"
#include "ontoplot/wire.hpp"

namespace ontoplot {

using nlohmann::json;

namespace {

HttpResponse ok(const json& body) { return {200, body.dump()}; }

HttpResponse error_response(int status, std::string_view code, std::string_view message) {
  return {status, json{{"error", message}, {"code", code}}.dump()};
}

int status_for(const Error& e) {
  const auto& code = e.code();
  if (code == "UnknownClass" || code == "UnknownProperty" || code == "UnknownOccurrence")
    return 404;
  if (code == "InconsistentPlan") return 500;
  return 400;
}

json parse_body(std::string_view body) {
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw FormatError(0, "body", e.what());
  }
}

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(0, key, "missing");
  return j.at(key);
}

std::optional<std::string> param(const QueryArgs& params, const char* key) {
  auto it = params.find(key);
  if (it == params.end() || it->second.empty()) return std::nullopt;
  return it->second;
}

}  // namespace

Service::Service(OntologySnapshot snapshot, LayoutConfig config)
    : snapshot_(std::move(snapshot)),
      tree_(build_occurrence_tree(snapshot_)),
      queries_(snapshot_),
      config_(std::move(config)) {
  config_.validate();
}

HttpResponse Service::handle(std::string_view method, std::string_view path,
                             const QueryArgs& params, std::string_view body) const {
  try {
    return route(method, path, params, body);
  } catch (const Error& e) {
    return error_response(status_for(e), e.code(), e.what());
  } catch (const std::exception& e) {
    return error_response(500, "Internal", e.what());
  }
}

HttpResponse Service::route(std::string_view method, std::string_view path,
                            const QueryArgs& params, std::string_view body) const {
  const bool get = method == "GET";
  const bool post = method == "POST";

  if (path == "/summary") {
    if (!get) return error_response(405, "MethodNotAllowed", "use GET");
    return ok(json(summarize(snapshot_)));
  }

  if (path == "/properties") {
    if (!get) return error_response(405, "MethodNotAllowed", "use GET");
    std::vector<std::size_t> counts(snapshot_.property_count(), 0);
    for (const auto& a : snapshot_.indexed_associations()) ++counts[a.property];
    std::vector<PropertyIndex> order(snapshot_.property_count());
    for (PropertyIndex p = 0; p < order.size(); ++p) order[p] = p;
    std::sort(order.begin(), order.end(), [&](PropertyIndex a, PropertyIndex b) {
      if (counts[a] != counts[b]) return counts[a] > counts[b];
      return snapshot_.property_id(a) < snapshot_.property_id(b);
    });
    json out = json::array();
    for (PropertyIndex p : order)
      out.push_back({{"id", snapshot_.property_id(p)},
                     {"label", snapshot_.property_label(p)},
                     {"associationCount", counts[p]}});
    return ok(out);
  }

  if (path.starts_with("/class/")) {
    if (!get) return error_response(405, "MethodNotAllowed", "use GET");
    const ClassIndex c = resolve_class(snapshot_, path.substr(7));
    auto refs = [&](const std::vector<ClassIndex>& classes) {
      json out = json::array();
      for (ClassIndex k : classes)
        out.push_back({{"id", snapshot_.class_id(k)}, {"label", snapshot_.class_label(k)}});
      return out;
    };
    json assoc = json::array();
    for (const auto& a : snapshot_.indexed_associations()) {
      if (a.source != c && a.target != c) continue;
      assoc.push_back({{"source", snapshot_.class_id(a.source)},
                       {"sourceLabel", snapshot_.class_label(a.source)},
                       {"property", snapshot_.property_id(a.property)},
                       {"propertyLabel", snapshot_.property_label(a.property)},
                       {"target", snapshot_.class_id(a.target)},
                       {"targetLabel", snapshot_.class_label(a.target)}});
    }
    json occs = json::array();
    for (OccId o : tree_.occurrences_of(c)) occs.push_back(o);
    return ok({{"id", snapshot_.class_id(c)},
               {"label", snapshot_.class_label(c)},
               {"parents", refs(snapshot_.parents(c))},
               {"children", refs(snapshot_.children(c))},
               {"occurrences", std::move(occs)},
               {"associations", std::move(assoc)}});
  }

  if (path == "/search") {
    if (!get) return error_response(405, "MethodNotAllowed", "use GET");
    auto q = param(params, "q");
    if (!q) throw UsageError("missing query parameter q");
    std::optional<PropertyIndex> property;
    if (auto p = param(params, "property")) property = resolve_property(snapshot_, *p);
    return ok(json(search(snapshot_, *q, property)));
  }

  if (path == "/layout") {
    if (!post) return error_response(405, "MethodNotAllowed", "use POST");
    const json request = parse_body(body);
    ViewState view = parse_view_state(member(request, "viewState"), "viewState");
    auto vm = layout_view(snapshot_, tree_, config_, view);
    return ok({{"layout", vm.layout}, {"legend", vm.layout.legend}});
  }

  if (path == "/layout-diff") {
    if (!post) return error_response(405, "MethodNotAllowed", "use POST");
    const json request = parse_body(body);
    ViewState prev = parse_view_state(member(request, "prevViewState"), "prevViewState");
    ViewState next = parse_view_state(member(request, "nextViewState"), "nextViewState");
    return ok({{"diff", compute_layout_diff(snapshot_, tree_, config_, prev, next)}});
  }

  if (path.starts_with("/query/")) {
    if (!get) return error_response(405, "MethodNotAllowed", "use GET");
    auto out = run_query(queries_, path.substr(7), params);
    return ok({{"result", std::move(out.json)}});
  }

  return error_response(404, "NotFound", "no such endpoint: " + std::string(path));
}

void mount_routes(httplib::Server& server, const Service& service) {
  auto dispatch = [&service](const httplib::Request& req, httplib::Response& res) {
    QueryArgs params;
    for (const auto& [k, v] : req.params) params.emplace(k, v);
    auto out = service.handle(req.method, req.path, params, req.body);
    res.status = out.status;
    res.set_content(out.body, "application/json");
  };
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});
  server.Get(".*", dispatch);
  server.Post(".*", dispatch);
  server.Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
}

bool serve(const Service& service, const std::string& host, int port) {
  httplib::Server server;
  mount_routes(server, service);
  return server.listen(host, port);
}

}  // namespace ontoplot
