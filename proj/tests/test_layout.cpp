#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <regex>

#include "ontoplot/error.hpp"
#include "ontoplot/layout.hpp"
#include "ontoplot/owl_parser.hpp"
#include "ontoplot/svg.hpp"
#include "support/oracles.hpp"

using namespace ontoplot;

namespace {

struct Fixture {
  OntologySnapshot s;
  OccurrenceTree t;
  LayoutConfig cfg;
  explicit Fixture(const char* name)
      : s(load_owl(std::string(ONTOPLOT_TEST_DATA) + "/" + name)), t(build_occurrence_tree(s)) {}
  explicit Fixture(OntologySnapshot snap) : s(std::move(snap)), t(build_occurrence_tree(s)) {}

  OccId occ(const char* id) const { return t.occurrences_of(s.class_index(id)).front(); }
  ViewModel view(const ViewState& v) const { return layout_view(s, t, cfg, v); }
};

ViewState property_view(const char* p) {
  ViewState v;
  v.property = p;
  return v;
}

template <typename T>
const T* by_ref(const std::vector<T>& items, const std::string& ref) {
  for (const auto& x : items)
    if (x.ref == ref) return &x;
  return nullptr;
}

std::string occ_ref(const char* prefix, OccId occ) { return prefix + std::to_string(occ); }

std::size_t count_matches(const std::string& text, const std::string& pattern) {
  std::regex re(pattern);
  return static_cast<std::size_t>(
      std::distance(std::sregex_iterator(text.begin(), text.end(), re), std::sregex_iterator()));
}

}  // namespace

TEST_CASE("legend bins") {
  auto bins = [](std::vector<std::size_t> counts) { return build_legend(counts).bins; };
  using Bins = std::vector<std::pair<std::size_t, std::size_t>>;
  CHECK(bins({1}) == Bins{{1, 1}});
  CHECK(bins({1, 2}) == Bins{{1, 1}, {2, 2}});
  CHECK(bins({1, 25, 3, 7, 12}) == Bins{{1, 5}, {6, 10}, {11, 15}, {16, 20}, {21, 25}});
  CHECK(bins({}).empty());
  CHECK(bins({0, 0}).empty());
  auto single = build_legend(std::vector<std::size_t>{4});
  CHECK(single.colors == std::vector<std::string>{"#bd0026"});
  auto pair = build_legend(std::vector<std::size_t>{1, 2});
  CHECK(pair.colors == std::vector<std::string>{"#ffffb2", "#bd0026"});
}

TEST_CASE("property: legend monotone over random counts") {
  testsupport::Rng rng(51);
  for (int round = 0; round < 1000; ++round) {
    std::vector<std::size_t> counts;
    for (int k = rng.uniform(0, 30); k > 0; --k)
      counts.push_back(static_cast<std::size_t>(rng.uniform(0, rng.chance(0.5) ? 6 : 400)));
    auto legend = build_legend(counts);
    REQUIRE(testsupport::check_legend(legend, counts) == "");
  }
}

TEST_CASE("config validation") {
  LayoutConfig c;
  CHECK_NOTHROW(c.validate());
  c.glyph_diameter = c.cell_size;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = LayoutConfig{};
  c.max_grid_columns = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("single class: one box, one circle") {
  SnapshotInput in;
  in.classes = {{"A", std::nullopt}};
  in.properties = {{"p", std::nullopt}};
  Fixture f(build_snapshot(in));
  auto l = f.view(property_view("p")).layout;
  CHECK(l.boxes.size() == 1);
  REQUIRE(l.glyphs.size() == 1);
  CHECK(l.glyphs[0].kind == GlyphKind::Circle);
  CHECK(l.total_w == f.cfg.cell_size + 2 * f.cfg.box_padding);
  CHECK(l.legend.empty());
}

TEST_CASE("TOY-A layout") {
  Fixture f("toy_a.json");
  auto l = f.view(property_view("p")).layout;
  const Box* a = by_ref(l.boxes, occ_ref("occ:", f.occ("A")));
  const Box* b = by_ref(l.boxes, occ_ref("occ:", f.occ("B")));
  const Box* c = by_ref(l.boxes, occ_ref("occ:", f.occ("C")));
  REQUIRE(a);
  REQUIRE(b);
  REQUIRE(c);
  CHECK(a->w == b->w + c->w);
  CHECK(b->x == a->x);
  CHECK(c->x == b->x + b->w);

  // B's grid: D circle first, then the square of E.
  const Box* grid = by_ref(l.boxes, occ_ref("grid:", f.occ("B")));
  REQUIRE(grid);
  const Glyph* d = by_ref(l.glyphs, occ_ref("circle:", f.occ("D")));
  const Glyph* sq = by_ref(l.glyphs, occ_ref("square:", f.occ("B")));
  REQUIRE(d);
  REQUIRE(sq);
  CHECK(sq->count_label == std::optional<std::size_t>(1));
  const int pad = f.cfg.box_padding, cell = f.cfg.cell_size;
  CHECK(grid->w == 2 * cell + 2 * pad);
  CHECK(grid->h == cell + 2 * pad);
  CHECK(d->cx == grid->x + pad + cell / 2);
  CHECK(sq->cx == grid->x + pad + cell + cell / 2);
  CHECK(d->color_bin == std::optional<int>(0));
  CHECK_FALSE(by_ref(l.glyphs, occ_ref("circle:", f.occ("E"))));

  // Row heights: class rows hold a glyph and a label line.
  CHECK(a->h == cell + f.cfg.font_size + 2 * pad);
  CHECK(b->y == a->h + f.cfg.level_gap);
  CHECK(grid->y == b->y + b->h + f.cfg.level_gap);

  const Separator* bc = by_ref(l.separators, "sep:" + occ_ref("occ:", f.occ("C")));
  REQUIRE(bc);
  CHECK(bc->style == SeparatorStyle::FaintPartial);
  CHECK(bc->x == c->x);
  const Separator* grids = by_ref(l.separators, "sep:" + occ_ref("grid:", f.occ("C")));
  REQUIRE(grids);
  CHECK(grids->style == SeparatorStyle::Solid);

  CHECK(by_ref(l.labels, occ_ref("label:parent:", f.occ("A"))));
  CHECK(by_ref(l.labels, occ_ref("label:assoc:", f.occ("D")))->orientation ==
        LabelOrientation::Diagonal);
}

TEST_CASE("TOY-C grid under P") {
  Fixture f("toy_c.json");
  auto vm = f.view(property_view("r"));
  const auto& l = vm.layout;
  const Box* grid = by_ref(l.boxes, occ_ref("grid:", f.occ("P")));
  REQUIRE(grid);
  const int pad = f.cfg.box_padding, cell = f.cfg.cell_size;
  CHECK(grid->w == 2 * cell + 2 * pad);  // cols 2
  CHECK(grid->h == 2 * cell + 2 * pad);  // rows 2
  const Glyph* l1 = by_ref(l.glyphs, occ_ref("circle:", f.occ("L1")));
  const Glyph* l4 = by_ref(l.glyphs, occ_ref("circle:", f.occ("L4")));
  const Glyph* sq = by_ref(l.glyphs, occ_ref("square:", f.occ("P")));
  REQUIRE(l1);
  REQUIRE(l4);
  REQUIRE(sq);
  CHECK(l1->cx == grid->x + pad + cell / 2);
  CHECK(l1->cy == grid->y + pad + cell / 2);
  CHECK(l4->cx == grid->x + pad + cell + cell / 2);
  CHECK(l4->cy == l1->cy);
  CHECK(sq->cx == l1->cx);
  CHECK(sq->cy == grid->y + pad + cell + cell / 2);
  CHECK(sq->count_label == std::optional<std::size_t>(2));
  CHECK(l.legend.bins == std::vector<std::pair<std::size_t, std::size_t>>{{1, 1}, {2, 2}});
  CHECK(l1->color_bin == std::optional<int>(1));
  CHECK(l4->color_bin == std::optional<int>(0));
  // Stacked diagonal labels inside one grid.
  const Label* a = by_ref(l.labels, occ_ref("label:assoc:", f.occ("L1")));
  const Label* b = by_ref(l.labels, occ_ref("label:assoc:", f.occ("L4")));
  REQUIRE(a);
  REQUIRE(b);
  CHECK(b->x - (l4->cx + l4->r) == cell / 2);
  CHECK(a->x - (l1->cx + l1->r) == 0);
}

TEST_CASE("selection marks and region glyph decorations") {
  Fixture f("toy_a.json");
  ViewState v = property_view("p");
  v.selection = "D";
  auto l = f.view(v).layout;
  const Glyph* d = by_ref(l.glyphs, occ_ref("circle:", f.occ("D")));
  REQUIRE(d->selection);
  CHECK(d->selection->outline);
  CHECK(d->selection->out_arrow);
  CHECK_FALSE(d->selection->in_arrow);
  v.selection = "F";
  const Glyph* fg = nullptr;
  auto lf = f.view(v).layout;
  fg = by_ref(lf.glyphs, occ_ref("circle:", f.occ("F")));
  CHECK(fg->selection->in_arrow);
  CHECK_FALSE(fg->selection->out_arrow);

  v.overrides[f.occ("B")] = Override::ForceCollapsed;
  v.selection = "E";
  auto lc = f.view(v).layout;
  const Glyph* tri = by_ref(lc.glyphs, occ_ref("region:", f.occ("B")));
  REQUIRE(tri);
  CHECK(tri->kind == GlyphKind::Triangle);
  CHECK(tri->count_label == std::optional<std::size_t>(3));
  CHECK(tri->shadow_color == std::optional<std::string>(lc.legend.colors.at(0)));
  REQUIRE(tri->selection);
  CHECK(tri->selection->pulsing_ring);
}

TEST_CASE("labels: greedy parent labels, pins and offsets") {
  SnapshotInput in;
  in.classes = {{"R", "a rather long root label"}, {"X", std::nullopt}, {"Y", std::nullopt}};
  in.edges = {{"X", "R"}, {"Y", "R"}};
  in.properties = {{"p", std::nullopt}};
  in.associations = {{"X", "p", "Y"}};
  Fixture f(build_snapshot(in));
  ViewState v = property_view("p");
  v.pinned = {"Y"};
  v.label_offsets["X"] = {10, -5};
  auto l = f.view(v).layout;
  CHECK_FALSE(by_ref(l.labels, occ_ref("label:parent:", f.occ("R"))));
  const Label* pin = by_ref(l.labels, occ_ref("label:pin:", f.occ("Y")));
  REQUIRE(pin);
  CHECK(pin->orientation == LabelOrientation::Horizontal);
  CHECK(pin->kind == LabelKind::Pinned);
  v.label_offsets.clear();
  auto base = f.view(v).layout;
  const Label* moved = by_ref(l.labels, occ_ref("label:assoc:", f.occ("X")));
  const Label* orig = by_ref(base.labels, occ_ref("label:assoc:", f.occ("X")));
  CHECK(moved->x - orig->x == 10);
  CHECK(moved->y - orig->y == -5);
}

TEST_CASE("synthetic root box carries the Thing label") {
  SnapshotInput in;
  in.classes = {{"A1", std::nullopt}, {"A2", std::nullopt}, {"B", std::nullopt}};
  in.edges = {{"B", "A1"}};
  in.properties = {{"p", std::nullopt}};
  Fixture f(build_snapshot(in));
  auto l = f.view(property_view("p")).layout;
  CHECK(by_ref(l.boxes, "occ:0"));
  CHECK_FALSE(by_ref(l.glyphs, "circle:0"));
}

TEST_CASE("inconsistent plans are rejected") {
  Fixture f("toy_a.json");
  auto m = mark_interest(f.s, f.t, "p");
  auto plan = detect_collapsible(f.t, m);
  plan.region_of.pop_back();
  CHECK_THROWS_AS(compute_layout(f.s, f.t, m, plan, f.cfg, property_view("p")),
                  InconsistentPlanError);
  auto bad = detect_collapsible(f.t, m);
  bad.regions[0].members.push_back(99);
  CHECK_THROWS_AS(compute_layout(f.s, f.t, m, bad, f.cfg, property_view("p")),
                  InconsistentPlanError);
}

TEST_CASE("TOY-B: expanding the chain") {
  Fixture f("toy_b.json");
  ViewState prev = property_view("q");
  ViewState next = prev;
  next.overrides[f.occ("M1")] = Override::ForceExpanded;
  auto before = f.view(prev).layout;
  auto after = f.view(next).layout;
  auto diff = compute_layout_diff(f.s, f.t, f.cfg, prev, next);

  const std::string chain = occ_ref("region:", f.occ("M1"));
  CHECK(by_ref(before.glyphs, chain));
  CHECK(std::find(diff.removed.begin(), diff.removed.end(), chain) != diff.removed.end());
  std::set<std::string> added;
  for (const auto& b : diff.added.boxes) added.insert(b.ref);
  CHECK(added == std::set<std::string>{occ_ref("occ:", f.occ("M1")), occ_ref("occ:", f.occ("M2")),
                                       occ_ref("grid:", f.occ("M2"))});
  const int m1_width = by_ref(after.boxes, occ_ref("occ:", f.occ("M1")))->w;
  const auto grid = occ_ref("grid:", f.occ("R"));
  auto moved = std::find_if(diff.moved.begin(), diff.moved.end(),
                            [&](const Move& m) { return m.ref == grid; });
  REQUIRE(moved != diff.moved.end());
  CHECK(moved->dx == m1_width);
  CHECK(moved->dy == 0);
  CHECK(apply_diff(before, diff) == after);
  CHECK(std::find(diff.changed_region.begin(), diff.changed_region.end(), chain) !=
        diff.changed_region.end());
  CHECK(diff.highlight_ms == highlight_duration_ms(3));
}

TEST_CASE("identical views give an empty diff; a drag touches one label") {
  Fixture f("toy_a.json");
  ViewState v = property_view("p");
  auto same = compute_layout_diff(f.s, f.t, f.cfg, v, v);
  CHECK(same.empty());
  CHECK(same.changed_region.empty());

  ViewState dragged = v;
  dragged.label_offsets["D"] = {10, -5};
  auto diff = compute_layout_diff(f.s, f.t, f.cfg, v, dragged);
  REQUIRE(diff.moved.size() == 1);
  CHECK(diff.moved[0].ref == occ_ref("label:assoc:", f.occ("D")));
  CHECK(diff.moved[0].dx == 10);
  CHECK(diff.moved[0].dy == -5);
  CHECK(diff.resized.empty());
  CHECK(diff.removed.empty());
  CHECK(diff.added.labels.empty());
}

TEST_CASE("highlight duration clamps") {
  CHECK(highlight_duration_ms(0) == 300);
  CHECK(highlight_duration_ms(10) == 400);
  CHECK(highlight_duration_ms(170) == 2000);
  CHECK(highlight_duration_ms(100000) == 2000);
}

TEST_CASE("hit testing") {
  Fixture f("toy_a.json");
  auto l = f.view(property_view("p")).layout;
  const Glyph* d = by_ref(l.glyphs, occ_ref("circle:", f.occ("D")));
  auto hit = hit_test(l, d->cx, d->cy);
  REQUIRE(hit);
  CHECK(*hit == Hit{HitKind::Glyph, d->ref});
  CHECK_FALSE(hit_test(l, -1, 5));
  CHECK_FALSE(hit_test(l, l.total_w + 1, 5));
  CHECK_FALSE(hit_test(l, 5, l.total_h));

  // Between the first two cells of B's grid: outside both glyphs.
  const Box* grid = by_ref(l.boxes, occ_ref("grid:", f.occ("B")));
  const double x = grid->x + f.cfg.box_padding + f.cfg.cell_size;
  const double y = grid->y + f.cfg.box_padding + f.cfg.cell_size / 2.0;
  auto between = hit_test(l, x, y);
  REQUIRE(between);
  CHECK(*between == Hit{HitKind::Box, grid->ref});

  const Label* parent = by_ref(l.labels, occ_ref("label:parent:", f.occ("A")));
  auto on_label = hit_test(l, parent->x + 1, parent->y - 2);
  REQUIRE(on_label);
  CHECK(on_label->kind == HitKind::Label);
}

TEST_CASE("SVG rendering") {
  Fixture f("toy_a.json");
  auto l = f.view(property_view("p")).layout;
  auto svg = render_svg(l);
  CHECK(count_matches(svg, "class=\"glyph square\"") == 2);
  CHECK(count_matches(svg, "<text class=\"count\"[^>]*>1</text>") == 2);
  CHECK(svg.find("class=\"legend\"") != std::string::npos);
  CHECK(render_svg(f.view(property_view("p")).layout) == svg);

  Layout bare = l;
  bare.legend = {};
  CHECK(render_svg(bare).find("class=\"legend\"") == std::string::npos);

  SvgOptions title;
  title.title = "a < b";
  CHECK(render_svg(l, title).find("<title>a &lt; b</title>") != std::string::npos);
}

TEST_CASE("property: layout invariants and diff soundness on random trees") {
  testsupport::Rng rng(52);
  const LayoutConfig cfg;
  for (int round = 0; round < 150; ++round) {
    testsupport::GenOptions o;
    o.classes = rng.uniform(1, 150);
    o.max_depth = rng.uniform(1, 8);
    o.properties = 1;
    o.associations = rng.uniform(0, o.classes / 2 + 1);
    o.extra_parent = rng.chance(0.3) ? 0.15 : 0.0;
    o.roots = rng.uniform(1, 2);
    auto s = build_snapshot(testsupport::random_input(rng, o));
    auto t = build_occurrence_tree(s);
    ViewState view = property_view("p0");
    if (rng.chance(0.2)) view.focus = rng.pick(s.classes()).id;
    auto vm = layout_view(s, t, cfg, view);
    for (int step = 0; step < 10; ++step) {
      REQUIRE(testsupport::check_layout_geometry(vm.layout, t, vm.plan, cfg) == "");
      REQUIRE(testsupport::check_count_labels(vm.layout, vm.plan) == "");
      REQUIRE(layout_view(s, t, cfg, view).layout == vm.layout);

      ViewState next = testsupport::random_view_step(rng, view, s, t, vm.layout);
      auto next_vm = layout_view(s, t, cfg, next);
      auto diff = compute_layout_diff(s, t, cfg, view, next);
      REQUIRE(apply_diff(vm.layout, diff) == next_vm.layout);
      view = std::move(next);
      vm = std::move(next_vm);
    }
  }
}

TEST_CASE("dragged and pinned labels survive expand/collapse and a replayed view") {
  Fixture f("toy_a.json");
  ViewState v = property_view("p");
  v.label_offsets["D"] = {7, 3};
  v.pinned = {"F"};
  auto before = f.view(v).layout;

  ViewState collapsed = v;
  collapsed.overrides[f.occ("B")] = Override::ForceCollapsed;
  auto hidden = f.view(collapsed).layout;
  CHECK_FALSE(by_ref(hidden.labels, occ_ref("label:assoc:", f.occ("D"))));

  ViewState reopened = collapsed;
  reopened.overrides.erase(f.occ("B"));
  auto after = f.view(reopened).layout;
  CHECK(after == before);
  CHECK(by_ref(after.labels, occ_ref("label:pin:", f.occ("F"))));
  auto diff = compute_layout_diff(f.s, f.t, f.cfg, collapsed, reopened);
  CHECK(apply_diff(hidden, diff) == before);
}
