#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ontoplot/compression.hpp"
#include "ontoplot/error.hpp"
#include "ontoplot/owl_parser.hpp"
#include "support/oracles.hpp"

using namespace ontoplot;

namespace {

struct Fixture {
  OntologySnapshot s;
  OccurrenceTree t;
  explicit Fixture(const char* name)
      : s(load_owl(std::string(ONTOPLOT_TEST_DATA) + "/" + name)), t(build_occurrence_tree(s)) {}

  OccId occ(const char* id) const { return t.occurrences_of(s.class_index(id)).front(); }
  std::vector<OccId> occs(std::initializer_list<const char*> ids) const {
    std::vector<OccId> out;
    for (auto id : ids) out.push_back(occ(id));
    return out;
  }
  std::set<std::string> interesting(const InterestModel& m) const {
    std::set<std::string> out;
    for (ClassIndex c = 0; c < s.class_count(); ++c)
      if (m.interesting[c]) out.insert(s.class_id(c));
    return out;
  }
};

}  // namespace

TEST_CASE("TOY-A interest") {
  Fixture f("toy_a.json");
  auto m = mark_interest(f.s, f.t, "p");
  CHECK(f.interesting(m) == std::set<std::string>{"D", "F"});
  CHECK(m.count_by_class[f.s.class_index("D")] == 1);
  CHECK(m.count_by_class[f.s.class_index("F")] == 1);
  CHECK(m.subtree_interesting[static_cast<std::size_t>(f.t.root())] == 2);

  auto focus = mark_focus_interest(f.s, f.t, "D", "p");
  CHECK(f.interesting(focus) == std::set<std::string>{"D", "F"});
  auto lonely = mark_focus_interest(f.s, f.t, "A", "p");
  CHECK(f.interesting(lonely) == std::set<std::string>{"A"});
  CHECK_THROWS_AS(mark_interest(f.s, f.t, "nope"), UnknownPropertyError);
}

TEST_CASE("TOY-C interest counts both directions") {
  Fixture f("toy_c.json");
  auto m = mark_interest(f.s, f.t, "r");
  std::map<std::string, std::size_t> counts;
  for (ClassIndex c = 0; c < f.s.class_count(); ++c)
    if (m.count_by_class[c]) counts[f.s.class_id(c)] = m.count_by_class[c];
  CHECK(counts == std::map<std::string, std::size_t>{{"L1", 2}, {"L4", 1}, {"Z1", 2}, {"Z2", 1}});
  auto focus = mark_focus_interest(f.s, f.t, "Z1", "r");
  CHECK(f.interesting(focus) == std::set<std::string>{"L1", "L4", "Z1"});
}

TEST_CASE("property without associations marks nothing and compresses nothing") {
  SnapshotInput in;
  in.classes = {{"A", std::nullopt}, {"B", std::nullopt}, {"C", std::nullopt}};
  in.properties = {{"p", std::nullopt}};
  in.edges = {{"B", "A"}, {"C", "B"}};
  auto s = build_snapshot(in);
  auto t = build_occurrence_tree(s);
  auto m = mark_interest(s, t, "p");
  CHECK(std::none_of(m.interesting.begin(), m.interesting.end(), [](bool b) { return b; }));
  auto plan = detect_collapsible(t, m);
  CHECK(plan.regions.empty());
  CHECK(plan.visible.size() == t.size());
}

TEST_CASE("TOY-A leaves merge into two squares") {
  Fixture f("toy_a.json");
  auto plan = detect_collapsible(f.t, mark_interest(f.s, f.t, "p"));
  REQUIRE(plan.regions.size() == 2);
  for (const auto& r : plan.regions) CHECK(r.kind == RegionKind::SquareMerge);
  std::set<std::pair<OccId, std::vector<OccId>>> got;
  for (const auto& r : plan.regions) got.insert({r.anchor, r.members});
  CHECK(got == std::set<std::pair<OccId, std::vector<OccId>>>{{f.occ("B"), f.occs({"E"})},
                                                                {f.occ("C"), f.occs({"G"})}});
  CHECK(plan.is_visible(f.occ("D")));
  CHECK(plan.is_visible(f.occ("F")));
  CHECK(plan.visits == f.t.size());
}

TEST_CASE("TOY-B barren path becomes a chain") {
  Fixture f("toy_b.json");
  auto m = mark_interest(f.s, f.t, "q");
  auto plan = detect_collapsible(f.t, m);
  REQUIRE(plan.regions.size() == 1);
  CHECK(plan.regions[0].kind == RegionKind::Chain);
  CHECK(plan.regions[0].members == f.occs({"M1", "M2", "M3"}));
  CHECK(plan.regions[0].hidden_count() == 3);
  CHECK(plan.regions[0].anchor == f.occ("R"));

  auto expanded = apply_overrides(plan, f.t, m, {{f.occ("M1"), Override::ForceExpanded}});
  CHECK(expanded.regions.empty());
  for (const char* id : {"M1", "M2", "M3"}) CHECK(expanded.is_visible(f.occ(id)));
}

TEST_CASE("TOY-A forced collapse of B") {
  Fixture f("toy_a.json");
  auto m = mark_interest(f.s, f.t, "p");
  auto plan = apply_overrides(detect_collapsible(f.t, m), f.t, m,
                              {{f.occ("B"), Override::ForceCollapsed}});
  const CompressedRegion* b = nullptr;
  for (const auto& r : plan.regions)
    if (r.anchor == f.occ("A")) b = &r;
  REQUIRE(b != nullptr);
  CHECK(b->kind == RegionKind::Subtree);
  CHECK(b->forced);
  CHECK(b->hidden_count() == 3);
  CHECK(b->max_assoc_inside == 1);
  CHECK(b->root() == f.occ("B"));
  // The square formerly under B is swallowed; C's square remains.
  CHECK(plan.regions.size() == 2);
}

TEST_CASE("override validation") {
  Fixture f("toy_a.json");
  auto m = mark_interest(f.s, f.t, "p");
  auto base = detect_collapsible(f.t, m);
  CHECK_THROWS_AS(apply_overrides(base, f.t, m, {{f.t.root(), Override::ForceCollapsed}}),
                  RootCollapseError);
  CHECK_THROWS_AS(apply_overrides(base, f.t, m, {{99, Override::ForceExpanded}}),
                  UnknownOccurrenceError);
  CHECK(apply_overrides(base, f.t, m, {}).regions == base.regions);
}

TEST_CASE("leaf collapse becomes a one-member subtree") {
  Fixture f("toy_a.json");
  auto m = mark_interest(f.s, f.t, "p");
  auto plan = apply_overrides(detect_collapsible(f.t, m), f.t, m,
                              {{f.occ("D"), Override::ForceCollapsed}});
  bool found = false;
  for (const auto& r : plan.regions)
    if (r.forced) {
      found = true;
      CHECK(r.kind == RegionKind::Subtree);
      CHECK(r.members == f.occs({"D"}));
      CHECK(r.max_assoc_inside == 1);
    }
  CHECK(found);
}

TEST_CASE("property: detection matches the quadratic oracle") {
  testsupport::Rng rng(41);
  const double densities[] = {0.0, 0.01, 0.05, 0.2, 0.6};
  for (int round = 0; round < 300; ++round) {
    testsupport::GenOptions o;
    o.classes = rng.uniform(1, 200);
    o.max_depth = rng.uniform(1, 8);
    o.properties = 1;
    o.associations = static_cast<int>(densities[round % 5] * o.classes);
    auto s = build_snapshot(testsupport::random_input(rng, o));
    auto t = build_occurrence_tree(s);
    auto m = mark_interest(s, t, "p0");
    auto plan = detect_collapsible(t, m);

    REQUIRE(testsupport::plain(plan) == testsupport::oracle_plan(t, m));
    REQUIRE(plan.visits == t.size());
    std::size_t hidden = 0;
    for (const auto& r : plan.regions) {
      hidden += r.hidden_count();
      REQUIRE(r.max_assoc_inside == 0);
      for (OccId x : r.members) REQUIRE_FALSE(m.interesting[*t[x].class_index]);
    }
    REQUIRE(plan.visible.size() + hidden == t.size());
  }
}

TEST_CASE("property: overrides keep the partition and honour collapse requests") {
  testsupport::Rng rng(42);
  for (int round = 0; round < 300; ++round) {
    testsupport::GenOptions o;
    o.classes = rng.uniform(2, 120);
    o.properties = 1;
    o.associations = rng.uniform(0, o.classes / 3 + 1);
    o.extra_parent = 0.1;
    auto s = build_snapshot(testsupport::random_input(rng, o));
    auto t = build_occurrence_tree(s);
    auto m = mark_interest(s, t, "p0");
    Overrides ov;
    for (int k = rng.uniform(0, 4); k > 0; --k) {
      OccId occ = rng.uniform(1, static_cast<int>(t.size()) - 1);
      ov[occ] = rng.chance(0.5) ? Override::ForceExpanded : Override::ForceCollapsed;
    }
    auto plan = apply_overrides(detect_collapsible(t, m), t, m, ov);
    std::size_t hidden = 0;
    std::vector<int> seen(t.size(), 0);
    for (const auto& r : plan.regions) {
      hidden += r.hidden_count();
      REQUIRE(plan.is_visible(r.anchor));
      for (OccId x : r.members) ++seen[static_cast<std::size_t>(x)];
    }
    for (auto n : seen) REQUIRE(n <= 1);
    REQUIRE(plan.visible.size() + hidden == t.size());
    REQUIRE(plan.is_visible(t.root()));
    for (const auto& [occ, what] : ov) {
      if (what != Override::ForceCollapsed) continue;
      REQUIRE_FALSE(plan.is_visible(occ));
    }
  }
}
