#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <future>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "ontoplot/error.hpp"
#include "ontoplot/owl_parser.hpp"
#include "ontoplot/search.hpp"
#include "ontoplot/service.hpp"
#include "ontoplot/wire.hpp"
#include "support/oracles.hpp"

using namespace ontoplot;
using nlohmann::json;

namespace {

std::string data(const char* name) { return std::string(ONTOPLOT_TEST_DATA) + "/" + name; }

const std::string kHeart = "http://example.org/heart#";

json get(const Service& svc, const std::string& path, const QueryArgs& params = {},
         int expect = 200) {
  auto r = svc.handle("GET", path, params, "");
  REQUIRE(r.status == expect);
  return json::parse(r.body);
}

json post(const Service& svc, const std::string& path, const json& body, int expect = 200) {
  auto r = svc.handle("POST", path, {}, body.dump());
  REQUIRE(r.status == expect);
  return json::parse(r.body);
}

ViewState property_view(const std::string& p) {
  ViewState v;
  v.property = p;
  return v;
}

// Runs a real server on an ephemeral loopback port for the fixture's lifetime.
struct LiveServer {
  httplib::Server server;
  std::thread worker;
  int port = 0;

  explicit LiveServer(const Service& svc) {
    mount_routes(server, svc);
    port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    worker = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
  }
  ~LiveServer() {
    server.stop();
    worker.join();
  }
};

}  // namespace

TEST_CASE("search ranks exact, prefix, substring") {
  auto s = load_owl(data("sample.ofn"));
  auto pain = search(s, "pain");
  REQUIRE(pain.size() == 1);
  CHECK(pain[0].class_id == kHeart + "Pain");
  CHECK(pain[0].rank == MatchRank::Exact);

  auto at = search(s, "AT");
  REQUIRE(at.size() == 3);
  CHECK(at[0].label == "atrial fibrillation");
  CHECK(at[0].rank == MatchRank::Prefix);
  // Ties within a rank sort by label bytes, so capitals come first.
  CHECK(at[1].label == "Palpitation");
  CHECK(at[1].rank == MatchRank::Substring);
  CHECK(at[2].label == "familial atrial fibrillation");

  CHECK(search(s, "zzz").empty());
  CHECK(search(s, "").empty());

  auto symptom = s.property_index(kHeart + "hasSymptom");
  auto palp = search(s, "palpitation", symptom);
  REQUIRE(palp.size() == 1);
  CHECK(palp[0].association_count == 2);
}

TEST_CASE("search caps its results") {
  SnapshotInput in;
  for (int i = 0; i < 120; ++i) in.classes.push_back({testsupport::cid(i), "item " + std::to_string(i)});
  auto hits = search(build_snapshot(in), "item");
  CHECK(hits.size() == kMaxSearchResults);
  CHECK(std::is_sorted(hits.begin(), hits.end(), [](const SearchResult& a, const SearchResult& b) {
    return a.label < b.label;
  }));
}

TEST_CASE("wire: view state and layouts round trip") {
  ViewState v = property_view("p");
  v.focus = "D";
  v.selection = "E";
  v.overrides = {{3, Override::ForceExpanded}, {5, Override::ForceCollapsed}};
  v.label_offsets["D"] = {4, -2};
  v.pinned = {"F"};
  CHECK(json(v).get<ViewState>() == v);
  json encoded = v;
  CHECK(encoded["overrides"][0] == json{{"occ", 3}, {"mode", "expand"}});

  auto s = load_owl(data("toy_a.json"));
  auto t = build_occurrence_tree(s);
  auto layout = layout_view(s, t, {}, v).layout;
  CHECK(json(layout).get<Layout>() == layout);
  ViewState next = v;
  next.overrides.clear();
  auto diff = compute_layout_diff(s, t, {}, v, next);
  CHECK(json(diff).get<LayoutDiff>() == diff);
}

TEST_CASE("wire: malformed view state names the field") {
  try {
    parse_view_state(json{{"property", 3}}, "viewState");
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(e.field().find("viewState.property") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_view_state(json{{"property", "p"}, {"overrides", {{{"occ", 1}, {"mode", "sideways"}}}}},
                                   "viewState"),
                  FormatError);
}

TEST_CASE("service: summary and properties") {
  Service svc(load_owl(data("sample.ofn")));
  CHECK(get(svc, "/summary") == json(summarize(svc.snapshot())));
  auto props = get(svc, "/properties");
  REQUIRE(props.size() == 2);
  CHECK(props[0]["id"] == kHeart + "hasSymptom");
  CHECK(props[0]["associationCount"] == 3);
  CHECK(props[1]["associationCount"] == 1);
}

TEST_CASE("service: class details") {
  Service svc(load_owl(data("toy_a.json")));
  auto b = get(svc, "/class/B");
  CHECK(b["id"] == "B");
  CHECK(b["parents"] == json::array({{{"id", "A"}, {"label", "A"}}}));
  CHECK(b["children"].size() == 2);
  CHECK(b["occurrences"].size() == 1);
  auto d = get(svc, "/class/D");
  REQUIRE(d["associations"].size() == 1);
  CHECK(d["associations"][0]["target"] == "F");
  auto missing = get(svc, "/class/Nope", {}, 404);
  CHECK(missing["code"] == "UnknownClass");
  CHECK(missing.contains("error"));
}

TEST_CASE("service: errors map to statuses") {
  Service svc(load_owl(data("toy_a.json")));
  auto unknown = post(svc, "/layout", {{"viewState", {{"property", "nope"}}}}, 404);
  CHECK(unknown["code"] == "UnknownProperty");
  CHECK(post(svc, "/layout", {{"nothing", 1}}, 400)["code"] == "Format");
  CHECK(svc.handle("POST", "/layout", {}, "{not json").status == 400);
  CHECK(get(svc, "/nowhere", {}, 404)["code"] == "NotFound");
  CHECK(svc.handle("POST", "/summary", {}, "").status == 405);
  CHECK(svc.handle("GET", "/layout", {}, "").status == 405);
  CHECK(get(svc, "/search", {}, 400).contains("error"));
  auto bad_occ =
      post(svc, "/layout",
           {{"viewState", {{"property", "p"}, {"overrides", {{{"occ", 99}, {"mode", "expand"}}}}}}},
           404);
  CHECK(bad_occ["code"] == "UnknownOccurrence");
  auto root = post(
      svc, "/layout",
      {{"viewState", {{"property", "p"}, {"overrides", {{{"occ", 0}, {"mode", "collapse"}}}}}}}, 400);
  CHECK(root["code"] == "RootCollapse");
}

TEST_CASE("service: queries") {
  Service svc(load_owl(data("toy_c.json")));
  auto max = get(svc, "/query/max", {{"property", "r"}});
  CHECK(max["result"]["classes"] == json::array({"L1"}));
  CHECK(max["result"]["count"] == 2);
  Service toy_a(load_owl(data("toy_a.json")));
  CHECK(get(toy_a, "/query/lca", {{"a", "D"}, {"b", "E"}})["result"] == json::array({"B"}));
  CHECK(get(toy_a, "/query/parents", {{"class", "A"}})["result"] == json::array());
  CHECK(get(toy_a, "/query/nope", {}, 400).contains("error"));
  CHECK(get(toy_a, "/query/parents", {}, 400).contains("error"));
}

TEST_CASE("service: search endpoint") {
  Service svc(load_owl(data("sample.ofn")));
  auto hits = get(svc, "/search", {{"q", "pain"}});
  REQUIRE(hits.size() == 1);
  CHECK(hits[0]["rank"] == "Exact");
  CHECK(get(svc, "/search", {{"q", "zzz"}}) == json::array());
}

TEST_CASE("service: responses are byte-identical across calls") {
  Service svc(load_owl(data("toy_b.json")));
  json body = {{"viewState", json(property_view("q"))}};
  auto a = svc.handle("POST", "/layout", {}, body.dump());
  auto b = svc.handle("POST", "/layout", {}, body.dump());
  CHECK(a.status == 200);
  CHECK(a.body == b.body);
  CHECK(svc.handle("GET", "/summary", {}, "").body == svc.handle("GET", "/summary", {}, "").body);
}

TEST_CASE("http: layout, diff, client-side apply") {
  Service svc(load_owl(data("toy_b.json")));
  LiveServer live(svc);
  httplib::Client client("127.0.0.1", live.port);

  ViewState prev = property_view("q");
  ViewState next = prev;
  next.overrides[svc.tree().occurrences_of(svc.snapshot().class_index("M1")).front()] =
      Override::ForceExpanded;

  auto post_json = [&](const char* path, const json& body) {
    auto res = client.Post(path, body.dump(), "application/json");
    REQUIRE(res);
    REQUIRE(res->status == 200);
    CHECK(res->get_header_value("Access-Control-Allow-Origin") == "*");
    return json::parse(res->body);
  };

  auto before = post_json("/layout", {{"viewState", prev}})["layout"].get<Layout>();
  auto after = post_json("/layout", {{"viewState", next}});
  auto diff = post_json("/layout-diff", {{"prevViewState", prev}, {"nextViewState", next}})["diff"]
                  .get<LayoutDiff>();
  CHECK(apply_diff(before, diff) == after["layout"].get<Layout>());
  CHECK(after["legend"] == after["layout"]["legend"]);

  auto missing = client.Get("/class/Nope");
  REQUIRE(missing);
  CHECK(missing->status == 404);
  CHECK(json::parse(missing->body)["code"] == "UnknownClass");

  auto preflight = client.Options("/layout");
  REQUIRE(preflight);
  CHECK(preflight->status == 204);

  auto encoded = client.Get("/search?q=m%31");
  REQUIRE(encoded);
  CHECK(json::parse(encoded->body).size() == 1);
}

TEST_CASE("http: concurrent requests see consistent answers") {
  Service svc(load_owl(data("toy_c.json")));
  LiveServer live(svc);
  const std::string expected = svc.handle("GET", "/summary", {}, "").body;
  std::vector<std::future<bool>> results;
  for (int i = 0; i < 8; ++i)
    results.push_back(std::async(std::launch::async, [&] {
      httplib::Client client("127.0.0.1", live.port);
      for (int k = 0; k < 20; ++k) {
        auto res = client.Get("/summary");
        if (!res || res->status != 200 || res->body != expected) return false;
      }
      return true;
    }));
  for (auto& r : results) CHECK(r.get());
}
