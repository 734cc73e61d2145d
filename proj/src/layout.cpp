#include "ontoplot/layout.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "ontoplot/error.hpp"

namespace ontoplot {

void LayoutConfig::validate() const {
  if (cell_size <= 0 || glyph_diameter <= 0 || glyph_diameter >= cell_size)
    throw std::invalid_argument("glyph_diameter must be positive and below cell_size");
  if (max_grid_columns < 1) throw std::invalid_argument("max_grid_columns must be >= 1");
  if (box_padding < 0 || level_gap < 0 || char_width <= 0 || font_size <= 0)
    throw std::invalid_argument("negative or zero metric in layout config");
}

std::string_view to_string(BoxKind k) { return k == BoxKind::Class ? "Class" : "Grid"; }

std::string_view to_string(GlyphKind k) {
  switch (k) {
    case GlyphKind::Circle: return "Circle";
    case GlyphKind::Square: return "Square";
    case GlyphKind::ThinBlock: return "ThinBlock";
    case GlyphKind::Triangle: return "Triangle";
  }
  return "?";
}

std::string_view to_string(SeparatorStyle s) {
  return s == SeparatorStyle::FaintPartial ? "FaintPartial" : "Solid";
}

std::string_view to_string(LabelOrientation o) {
  return o == LabelOrientation::Horizontal ? "Horizontal" : "Diagonal";
}

std::string_view to_string(LabelKind k) {
  switch (k) {
    case LabelKind::Parent: return "Parent";
    case LabelKind::Association: return "Association";
    case LabelKind::Pinned: return "Pinned";
  }
  return "?";
}

//------------------------------------------------------------------------------
// Legend

std::optional<int> Legend::bin_of(std::size_t count) const {
  for (std::size_t i = 0; i < bins.size(); ++i)
    if (count >= bins[i].first && count <= bins[i].second) return static_cast<int>(i);
  return std::nullopt;
}

Legend build_legend(std::span<const std::size_t> counts, const LayoutConfig& config) {
  std::set<std::size_t> distinct;
  for (auto c : counts)
    if (c > 0) distinct.insert(c);
  Legend legend;
  if (distinct.empty()) return legend;
  const std::size_t max = *distinct.rbegin();
  const std::size_t n = std::min<std::size_t>(5, distinct.size());
  // bins <= distinct values <= max, so every bin is non-empty.
  for (std::size_t i = 0; i < n; ++i)
    legend.bins.emplace_back(1 + i * max / n, (i + 1) * max / n);
  const std::size_t stops = config.color_ramp.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t stop = n == 1 ? stops - 1
                              : static_cast<std::size_t>(std::lround(
                                    double(i) * double(stops - 1) / double(n - 1)));
    legend.colors.push_back(config.color_ramp[stop]);
  }
  return legend;
}

//------------------------------------------------------------------------------
// Layout

namespace {

std::size_t utf8_length(std::string_view s) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
}

int ceil_sqrt(std::size_t n) {
  int c = 0;
  while (static_cast<std::size_t>(c) * static_cast<std::size_t>(c) < n) ++c;
  return c;
}

std::string ref(const char* prefix, long id) { return std::string(prefix) + std::to_string(id); }

enum class ItemKind { Circle, Square, Region };

struct GridItem {
  ItemKind kind;
  OccId occ;  // circle occurrence, square anchor, or region root
  std::size_t count = 0;
  std::int32_t region = -1;
};

struct PlacedBox {
  Box box;
  OccId owner;  // parent occurrence of the box, for separator styling
  std::vector<GridItem> items;
  int cols = 0;
};

class LayoutBuilder {
 public:
  LayoutBuilder(const OntologySnapshot& snapshot, const OccurrenceTree& tree,
                const InterestModel& interest, const CompressionPlan& plan,
                const LayoutConfig& config, const ViewState& view)
      : s_(snapshot), tree_(tree), interest_(interest), plan_(plan), cfg_(config), view_(view) {}

  Layout build() {
    check_plan();
    std::vector<std::size_t> counts;
    for (ClassIndex c = 0; c < s_.class_count(); ++c)
      if (interest_.interesting[c] && interest_.count_by_class[c] > 0)
        counts.push_back(interest_.count_by_class[c]);
    out_.legend = build_legend(counts, cfg_);
    prepare_selection();

    const OccId root = tree_.root();
    int width = 0;
    if (!tree_[root].children.empty()) {
      width = place_class(root, 0, 0, -2);
    } else {
      std::vector<GridItem> items{circle_item(root)};
      width = place_grid(-1, std::move(items), 0, 0, -2);
    }

    assign_rows();
    emit();
    out_.total_w = width;
    out_.total_h = row_y_.empty() ? 0 : row_y_.back() + row_h_.back();

    auto by_ref = [](const auto& a, const auto& b) { return a.ref < b.ref; };
    std::sort(out_.boxes.begin(), out_.boxes.end(), by_ref);
    std::sort(out_.glyphs.begin(), out_.glyphs.end(), by_ref);
    std::sort(out_.separators.begin(), out_.separators.end(), by_ref);
    std::sort(out_.labels.begin(), out_.labels.end(), by_ref);
    return std::move(out_);
  }

 private:
  void check_plan() const {
    if (plan_.region_of.size() != tree_.size())
      throw InconsistentPlanError("plan covers " + std::to_string(plan_.region_of.size()) +
                                  " occurrences, tree has " + std::to_string(tree_.size()));
    for (const auto& r : plan_.regions) {
      if (r.members.empty()) throw InconsistentPlanError("empty compressed region");
      if (!tree_.contains(r.anchor)) throw InconsistentPlanError("region anchor not in tree");
      for (OccId m : r.members)
        if (!tree_.contains(m)) throw InconsistentPlanError("region member not in tree");
      if (!plan_.is_visible(r.anchor)) throw InconsistentPlanError("region anchor is hidden");
    }
    if (!plan_.is_visible(tree_.root())) throw InconsistentPlanError("root is hidden");
  }

  void prepare_selection() {
    if (!view_.selection) return;
    selected_ = s_.find_class(*view_.selection);
    if (!selected_) return;
    for (const auto& a : s_.indexed_associations()) {
      if (a.property != interest_.property) continue;
      if (a.source == *selected_) selected_is_source_ = true;
      if (a.target == *selected_) selected_is_target_ = true;
    }
  }

  GridItem circle_item(OccId occ) const {
    const auto& node = tree_[occ];
    std::size_t count = node.class_index ? interest_.count_by_class[*node.class_index] : 0;
    return {ItemKind::Circle, occ, count, -1};
  }

  int intrinsic_class_height() const {
    return cfg_.cell_size + cfg_.font_size + 2 * cfg_.box_padding;
  }

  // Places the box of a visible occurrence with children; returns its width.
  int place_class(OccId v, int x, int depth, OccId owner) {
    struct Slot {
      bool grid;
      OccId child;
    };
    std::vector<Slot> slots;
    std::vector<GridItem> items;
    std::vector<GridItem> region_items;
    bool grid_slot = false, square_added = false;
    for (OccId c : tree_[v].children) {
      const auto& child = tree_[c];
      if (plan_.is_visible(c)) {
        if (!child.children.empty()) {
          slots.push_back({false, c});
          continue;
        }
        items.push_back(circle_item(c));
      } else {
        auto r = plan_.region_of[static_cast<std::size_t>(c)];
        const auto& region = plan_.regions[static_cast<std::size_t>(r)];
        if (region.anchor != v)
          throw InconsistentPlanError("hidden child " + std::to_string(c) +
                                      " belongs to a region anchored elsewhere");
        if (region.kind == RegionKind::SquareMerge) {
          if (square_added) continue;
          square_added = true;
        } else if (region.root() != c) {
          throw InconsistentPlanError("region does not start at child " + std::to_string(c));
        }
        region_items.push_back({region.kind == RegionKind::SquareMerge ? ItemKind::Square
                                                                        : ItemKind::Region,
                                region.kind == RegionKind::SquareMerge ? v : c, 0, r});
      }
      if (!grid_slot) {
        slots.push_back({true, c});
        grid_slot = true;
      }
    }

    // Circles by association count, then the square, then chain/subtree glyphs.
    std::stable_sort(items.begin(), items.end(),
                     [](const GridItem& a, const GridItem& b) { return a.count > b.count; });
    std::stable_sort(region_items.begin(), region_items.end(), [](const auto& a, const auto& b) {
      return a.kind == ItemKind::Square && b.kind != ItemKind::Square;
    });
    items.insert(items.end(), region_items.begin(), region_items.end());

    int cursor = x;
    for (const auto& slot : slots) {
      if (slot.grid)
        cursor += place_grid(v, std::move(items), cursor, depth + 1, v);
      else
        cursor += place_class(slot.child, cursor, depth + 1, v);
    }
    int width = std::max(cursor - x, cfg_.cell_size);

    PlacedBox placed;
    placed.box = {ref("occ:", v), BoxKind::Class, v, x, 0, width, intrinsic_class_height(), depth};
    placed.owner = owner;
    push_box(std::move(placed));
    return width;
  }

  int place_grid(OccId owner_occ, std::vector<GridItem> items, int x, int depth, OccId owner) {
    const auto n = items.size();
    const int cols = std::min(cfg_.max_grid_columns, ceil_sqrt(n));
    const int rows = static_cast<int>((n + static_cast<std::size_t>(cols) - 1) /
                                      static_cast<std::size_t>(cols));
    PlacedBox placed;
    placed.box = {ref("grid:", owner_occ), BoxKind::Grid, owner_occ, x, 0,
                  cols * cfg_.cell_size + 2 * cfg_.box_padding, 0, depth};
    placed.box.h = rows * cfg_.cell_size + 2 * cfg_.box_padding;
    placed.owner = owner;
    placed.items = std::move(items);
    placed.cols = cols;
    int width = placed.box.w;
    push_box(std::move(placed));
    return width;
  }

  void push_box(PlacedBox placed) {
    auto d = static_cast<std::size_t>(placed.box.depth);
    if (row_h_.size() <= d) row_h_.resize(d + 1, 0);
    row_h_[d] = std::max(row_h_[d], placed.box.h);
    placed_.push_back(std::move(placed));
  }

  void assign_rows() {
    row_y_.assign(row_h_.size(), 0);
    for (std::size_t d = 1; d < row_h_.size(); ++d)
      row_y_[d] = row_y_[d - 1] + row_h_[d - 1] + cfg_.level_gap;
    for (auto& p : placed_) {
      auto d = static_cast<std::size_t>(p.box.depth);
      p.box.y = row_y_[d];
      if (p.box.kind == BoxKind::Class) p.box.h = row_h_[d];
    }
  }

  std::optional<int> bin_for(ClassIndex c) const {
    if (!interest_.interesting[c] || interest_.count_by_class[c] == 0) return std::nullopt;
    return out_.legend.bin_of(interest_.count_by_class[c]);
  }

  std::string color_for(std::size_t count) const {
    auto bin = out_.legend.bin_of(count);
    if (!bin) return out_.legend.colors.empty() ? cfg_.color_ramp.back() : out_.legend.colors.back();
    return out_.legend.colors[static_cast<std::size_t>(*bin)];
  }

  // Circle glyph plus its association and pinned labels. `stack` is the
  // label's index among labelled items of the same grid.
  void emit_circle(OccId occ, int cx, int cy, int& stack) {
    const auto& node = tree_[occ];
    if (!node.class_index) return;
    const ClassIndex c = *node.class_index;
    Glyph g;
    g.ref = ref("circle:", occ);
    g.kind = GlyphKind::Circle;
    g.occ = occ;
    g.class_id = s_.class_id(c);
    g.cx = cx;
    g.cy = cy;
    g.r = cfg_.glyph_diameter / 2;
    g.color_bin = bin_for(c);
    if (selected_ && *selected_ == c)
      g.selection = SelectionMark{true, selected_is_target_, selected_is_source_, false};
    out_.glyphs.push_back(g);

    const std::string text = s_.class_label(c);
    const int text_w = static_cast<int>(utf8_length(text)) * cfg_.char_width;
    if (interest_.interesting[c]) {
      auto [dx, dy] = offset_for(g.class_id);
      const int step = stack++ * (cfg_.cell_size / 2);
      out_.labels.push_back({ref("label:assoc:", occ), text, g.class_id, cx + g.r + step + dx,
                             cy + g.r + step + dy, text_w, cfg_.font_size,
                             LabelOrientation::Diagonal, g.color_bin, LabelKind::Association});
    }
    if (view_.pinned.count(g.class_id)) {
      out_.labels.push_back({ref("label:pin:", occ), text, g.class_id, cx + g.r + 2, cy - g.r - 1,
                             text_w, cfg_.font_size, LabelOrientation::Horizontal, g.color_bin,
                             LabelKind::Pinned});
    }
  }

  std::pair<int, int> offset_for(const std::string& class_id) const {
    auto it = view_.label_offsets.find(class_id);
    return it == view_.label_offsets.end() ? std::pair<int, int>{0, 0} : it->second;
  }

  void emit_region(const GridItem& item, int cx, int cy) {
    const auto& region = plan_.regions[static_cast<std::size_t>(item.region)];
    Glyph g;
    g.occ = item.occ;
    g.cx = cx;
    g.cy = cy;
    g.r = cfg_.glyph_diameter / 2;
    switch (region.kind) {
      case RegionKind::SquareMerge:
        g.ref = ref("square:", region.anchor);
        g.kind = GlyphKind::Square;
        break;
      case RegionKind::Chain:
        g.ref = ref("region:", region.root());
        g.kind = GlyphKind::ThinBlock;
        break;
      case RegionKind::Subtree:
        g.ref = ref("region:", region.root());
        g.kind = GlyphKind::Triangle;
        break;
    }
    g.count_label = region.hidden_count();
    if (region.max_assoc_inside > 0) g.shadow_color = color_for(region.max_assoc_inside);
    if (selected_) {
      bool inside = std::any_of(region.members.begin(), region.members.end(), [&](OccId m) {
        return tree_[m].class_index == selected_;
      });
      if (inside) g.selection = SelectionMark{false, false, false, true};
    }
    out_.glyphs.push_back(std::move(g));
  }

  void emit() {
    const int half = cfg_.cell_size / 2;
    for (const auto& p : placed_) {
      const Box& b = p.box;
      if (b.kind == BoxKind::Class) {
        int stack = 0;
        emit_circle(b.occ, b.x + cfg_.box_padding + half, b.y + cfg_.box_padding + half, stack);
        std::string text = tree_.label(s_, b.occ);
        int text_w = static_cast<int>(utf8_length(text)) * cfg_.char_width;
        if (text_w + 4 <= b.w) {
          out_.labels.push_back({ref("label:parent:", b.occ), text, tree_.class_id(s_, b.occ),
                                 b.x + 2, b.y + cfg_.box_padding + cfg_.cell_size + cfg_.font_size - 2,
                                 text_w, cfg_.font_size, LabelOrientation::Horizontal,
                                 std::nullopt, LabelKind::Parent});
        }
      } else {
        int stack = 0;
        for (std::size_t i = 0; i < p.items.size(); ++i) {
          const int col = static_cast<int>(i) % p.cols;
          const int row = static_cast<int>(i) / p.cols;
          const int cx = b.x + cfg_.box_padding + col * cfg_.cell_size + half;
          const int cy = b.y + cfg_.box_padding + row * cfg_.cell_size + half;
          if (p.items[i].kind == ItemKind::Circle)
            emit_circle(p.items[i].occ, cx, cy, stack);
          else
            emit_region(p.items[i], cx, cy);
        }
      }
      out_.boxes.push_back(b);
    }
    emit_separators();
  }

  void emit_separators() {
    std::vector<std::vector<const PlacedBox*>> by_depth(row_h_.size());
    for (const auto& p : placed_) by_depth[static_cast<std::size_t>(p.box.depth)].push_back(&p);
    for (std::size_t d = 0; d < by_depth.size(); ++d) {
      auto& row = by_depth[d];
      std::sort(row.begin(), row.end(),
                [](const PlacedBox* a, const PlacedBox* b) { return a->box.x < b->box.x; });
      for (std::size_t i = 1; i < row.size(); ++i) {
        const auto& left = row[i - 1]->box;
        const auto& right = row[i]->box;
        if (left.x + left.w != right.x) continue;
        const bool siblings = row[i - 1]->owner == row[i]->owner;
        Separator sep;
        sep.ref = "sep:" + right.ref;
        sep.x = right.x;
        sep.y_top = row_y_[d];
        sep.y_bottom = row_y_[d] + (siblings ? row_h_[d] / 2 : row_h_[d]);
        sep.style = siblings ? SeparatorStyle::FaintPartial : SeparatorStyle::Solid;
        out_.separators.push_back(std::move(sep));
      }
    }
  }

  const OntologySnapshot& s_;
  const OccurrenceTree& tree_;
  const InterestModel& interest_;
  const CompressionPlan& plan_;
  const LayoutConfig& cfg_;
  const ViewState& view_;

  std::vector<PlacedBox> placed_;
  std::vector<int> row_h_;
  std::vector<int> row_y_;
  std::optional<ClassIndex> selected_;
  bool selected_is_source_ = false;
  bool selected_is_target_ = false;
  Layout out_;
};

}  // namespace

Layout compute_layout(const OntologySnapshot& snapshot, const OccurrenceTree& tree,
                      const InterestModel& interest, const CompressionPlan& plan,
                      const LayoutConfig& config, const ViewState& view) {
  return LayoutBuilder(snapshot, tree, interest, plan, config, view).build();
}

ViewModel layout_view(const OntologySnapshot& snapshot, const OccurrenceTree& tree,
                      const LayoutConfig& config, const ViewState& view) {
  ViewModel vm;
  vm.interest = view.focus ? mark_focus_interest(snapshot, tree, *view.focus, view.property)
                           : mark_interest(snapshot, tree, view.property);
  vm.plan = apply_overrides(detect_collapsible(tree, vm.interest), tree, vm.interest,
                            view.overrides);
  vm.layout = compute_layout(snapshot, tree, vm.interest, vm.plan, config, view);
  return vm;
}

//------------------------------------------------------------------------------
// Diffs

namespace {

// Position, size and content accessors per element type. Content equality
// ignores position and size.
struct BoxTraits {
  static std::pair<int, int> pos(const Box& b) { return {b.x, b.y}; }
  static std::optional<std::pair<int, int>> size(const Box& b) { return std::pair{b.w, b.h}; }
  static void move(Box& b, int dx, int dy) { b.x += dx; b.y += dy; }
  static void resize(Box& b, int w, int h) { b.w = w; b.h = h; }
  static bool same_content(Box a, Box b) {
    a.x = a.y = a.w = a.h = b.x = b.y = b.w = b.h = 0;
    return a == b;
  }
};

struct GlyphTraits {
  static std::pair<int, int> pos(const Glyph& g) { return {g.cx, g.cy}; }
  static std::optional<std::pair<int, int>> size(const Glyph&) { return std::nullopt; }
  static void move(Glyph& g, int dx, int dy) { g.cx += dx; g.cy += dy; }
  static void resize(Glyph&, int, int) {}
  static bool same_content(Glyph a, Glyph b) {
    a.cx = a.cy = b.cx = b.cy = 0;
    return a == b;
  }
};

struct SeparatorTraits {
  static std::pair<int, int> pos(const Separator& s) { return {s.x, s.y_top}; }
  static std::optional<std::pair<int, int>> size(const Separator& s) {
    return std::pair{0, s.y_bottom - s.y_top};
  }
  static void move(Separator& s, int dx, int dy) {
    s.x += dx;
    s.y_top += dy;
    s.y_bottom += dy;
  }
  static void resize(Separator& s, int, int h) { s.y_bottom = s.y_top + h; }
  static bool same_content(Separator a, Separator b) {
    a.x = a.y_top = a.y_bottom = b.x = b.y_top = b.y_bottom = 0;
    return a == b;
  }
};

struct LabelTraits {
  static std::pair<int, int> pos(const Label& l) { return {l.x, l.y}; }
  static std::optional<std::pair<int, int>> size(const Label&) { return std::nullopt; }
  static void move(Label& l, int dx, int dy) { l.x += dx; l.y += dy; }
  static void resize(Label&, int, int) {}
  static bool same_content(Label a, Label b) {
    a.x = a.y = b.x = b.y = 0;
    return a == b;
  }
};

template <typename Traits, typename T>
void diff_elements(const std::vector<T>& prev, const std::vector<T>& next, LayoutDiff& diff,
                   std::vector<T>& added) {
  std::unordered_map<std::string_view, const T*> before;
  for (const auto& e : prev) before.emplace(e.ref, &e);
  std::unordered_set<std::string_view> kept;
  for (const auto& e : next) {
    auto it = before.find(e.ref);
    if (it == before.end()) {
      added.push_back(e);
      continue;
    }
    const T& old = *it->second;
    kept.insert(e.ref);
    if (!Traits::same_content(old, e)) {
      diff.removed.push_back(e.ref);
      added.push_back(e);
      continue;
    }
    auto [ox, oy] = Traits::pos(old);
    auto [nx, ny] = Traits::pos(e);
    if (ox != nx || oy != ny) diff.moved.push_back({e.ref, nx - ox, ny - oy});
    auto os = Traits::size(old);
    auto ns = Traits::size(e);
    if (os != ns && ns) diff.resized.push_back({e.ref, ns->first, ns->second});
  }
  for (const auto& e : prev)
    if (!kept.count(e.ref)) diff.removed.push_back(e.ref);
}

template <typename Traits, typename T>
void apply_elements(std::vector<T>& elems, const LayoutDiff& diff,
                    const std::unordered_set<std::string_view>& removed,
                    const std::unordered_map<std::string_view, const Move*>& moves,
                    const std::unordered_map<std::string_view, const Resize*>& resizes,
                    const std::vector<T>& added) {
  (void)diff;
  std::erase_if(elems, [&](const T& e) { return removed.count(e.ref) > 0; });
  for (auto& e : elems) {
    if (auto m = moves.find(e.ref); m != moves.end()) Traits::move(e, m->second->dx, m->second->dy);
    if (auto r = resizes.find(e.ref); r != resizes.end())
      Traits::resize(e, r->second->w, r->second->h);
  }
  elems.insert(elems.end(), added.begin(), added.end());
  std::sort(elems.begin(), elems.end(), [](const T& a, const T& b) { return a.ref < b.ref; });
}

}  // namespace

bool LayoutDiff::empty() const noexcept {
  return moved.empty() && resized.empty() && removed.empty() && added.boxes.empty() &&
         added.glyphs.empty() && added.separators.empty() && added.labels.empty() && !legend;
}

LayoutDiff diff_layouts(const Layout& prev, const Layout& next) {
  LayoutDiff diff;
  diff_elements<BoxTraits>(prev.boxes, next.boxes, diff, diff.added.boxes);
  diff_elements<GlyphTraits>(prev.glyphs, next.glyphs, diff, diff.added.glyphs);
  diff_elements<SeparatorTraits>(prev.separators, next.separators, diff, diff.added.separators);
  diff_elements<LabelTraits>(prev.labels, next.labels, diff, diff.added.labels);
  if (prev.legend != next.legend) diff.legend = next.legend;
  diff.added.legend = {};
  diff.total_w = next.total_w;
  diff.total_h = next.total_h;
  auto by_ref = [](const auto& a, const auto& b) { return a.ref < b.ref; };
  std::sort(diff.moved.begin(), diff.moved.end(), by_ref);
  std::sort(diff.resized.begin(), diff.resized.end(), by_ref);
  std::sort(diff.removed.begin(), diff.removed.end());
  return diff;
}

Layout apply_diff(const Layout& prev, const LayoutDiff& diff) {
  Layout out = prev;
  std::unordered_set<std::string_view> removed(diff.removed.begin(), diff.removed.end());
  std::unordered_map<std::string_view, const Move*> moves;
  for (const auto& m : diff.moved) moves.emplace(m.ref, &m);
  std::unordered_map<std::string_view, const Resize*> resizes;
  for (const auto& r : diff.resized) resizes.emplace(r.ref, &r);
  apply_elements<BoxTraits>(out.boxes, diff, removed, moves, resizes, diff.added.boxes);
  apply_elements<GlyphTraits>(out.glyphs, diff, removed, moves, resizes, diff.added.glyphs);
  apply_elements<SeparatorTraits>(out.separators, diff, removed, moves, resizes,
                                  diff.added.separators);
  apply_elements<LabelTraits>(out.labels, diff, removed, moves, resizes, diff.added.labels);
  if (diff.legend) out.legend = *diff.legend;
  out.total_w = diff.total_w;
  out.total_h = diff.total_h;
  return out;
}

int highlight_duration_ms(std::size_t hidden_count) {
  const auto ms = 300 + 10 * static_cast<long long>(hidden_count);
  return static_cast<int>(std::clamp<long long>(ms, 300, 2000));
}

namespace {

// Occurrences an element stands for, used to select the changed region.
std::vector<OccId> coverage(const std::string& ref, const OccurrenceTree& tree,
                            const CompressionPlan& plan) {
  auto colon = ref.find(':');
  const std::string kind = ref.substr(0, colon);
  const OccId id = static_cast<OccId>(std::stol(ref.substr(colon + 1)));
  if (kind == "occ" || kind == "circle") return {id};
  if (kind == "grid") return id < 0 ? std::vector<OccId>{tree.root()} : tree[id].children;
  for (const auto& r : plan.regions) {
    if (kind == "square" && r.kind == RegionKind::SquareMerge && r.anchor == id) return r.members;
    if (kind == "region" && r.kind != RegionKind::SquareMerge && r.root() == id) return r.members;
  }
  return {};
}

LayoutDiff diff_views(const OccurrenceTree& tree, const ViewModel& prev, const ViewModel& next,
                      const ViewState& prev_view, const ViewState& next_view) {
  LayoutDiff diff = diff_layouts(prev.layout, next.layout);

  std::vector<OccId> toggled;
  for (const auto& [occ, what] : prev_view.overrides) {
    auto it = next_view.overrides.find(occ);
    if (it == next_view.overrides.end() || it->second != what) toggled.push_back(occ);
  }
  for (const auto& [occ, what] : next_view.overrides)
    if (!prev_view.overrides.count(occ)) toggled.push_back(occ);

  std::vector<bool> in_region(tree.size(), false);
  std::size_t touched = 0;
  std::vector<OccId> stack(toggled.begin(), toggled.end());
  while (!stack.empty()) {
    OccId o = stack.back();
    stack.pop_back();
    if (!tree.contains(o) || in_region[static_cast<std::size_t>(o)]) continue;
    in_region[static_cast<std::size_t>(o)] = true;
    ++touched;
    for (OccId c : tree[o].children) stack.push_back(c);
  }

  if (touched > 0) {
    std::set<std::string> refs;
    auto collect = [&](const Layout& layout, const CompressionPlan& plan) {
      auto hit = [&](const std::string& r) {
        for (OccId o : coverage(r, tree, plan))
          if (in_region[static_cast<std::size_t>(o)]) return true;
        return false;
      };
      for (const auto& b : layout.boxes)
        if (hit(b.ref)) refs.insert(b.ref);
      for (const auto& g : layout.glyphs)
        if (hit(g.ref)) refs.insert(g.ref);
    };
    collect(prev.layout, prev.plan);
    collect(next.layout, next.plan);
    diff.changed_region.assign(refs.begin(), refs.end());
  }
  diff.highlight_ms = highlight_duration_ms(touched);
  return diff;
}

}  // namespace

LayoutDiff compute_layout_diff(const OntologySnapshot& snapshot, const OccurrenceTree& tree,
                               const LayoutConfig& config, const ViewState& prev,
                               const ViewState& next) {
  return diff_views(tree, layout_view(snapshot, tree, config, prev),
                    layout_view(snapshot, tree, config, next), prev, next);
}

LayoutDiff compute_layout_diff(const OntologySnapshot& snapshot, const OccurrenceTree& tree,
                               const InterestModel& interest, const LayoutConfig& config,
                               const ViewState& prev, const ViewState& next) {
  auto model = [&](const ViewState& view) {
    ViewModel vm;
    vm.interest = interest;
    vm.plan = apply_overrides(detect_collapsible(tree, interest), tree, interest, view.overrides);
    vm.layout = compute_layout(snapshot, tree, interest, vm.plan, config, view);
    return vm;
  };
  return diff_views(tree, model(prev), model(next), prev, next);
}

//------------------------------------------------------------------------------
// Hit testing

std::optional<Hit> hit_test(const Layout& layout, double x, double y) {
  if (x < 0 || y < 0 || x >= layout.total_w || y >= layout.total_h) return std::nullopt;

  for (const auto& g : layout.glyphs) {
    const double dx = x - g.cx, dy = y - g.cy;
    bool inside = g.kind == GlyphKind::Circle ? dx * dx + dy * dy <= double(g.r) * g.r
                                              : std::abs(dx) <= g.r && std::abs(dy) <= g.r;
    if (inside) return Hit{HitKind::Glyph, g.ref};
  }
  for (const auto& l : layout.labels) {
    double u = x - l.x, v = y - l.y;
    if (l.orientation == LabelOrientation::Diagonal) {
      const double c = std::sqrt(0.5);
      const double ru = u * c + v * c;
      const double rv = -u * c + v * c;
      u = ru;
      v = rv;
    }
    if (u >= 0 && u <= l.w && v >= -l.h && v <= 0) return Hit{HitKind::Label, l.ref};
  }
  const Box* best = nullptr;
  for (const auto& b : layout.boxes) {
    if (x < b.x || x >= b.x + b.w || y < b.y || y >= b.y + b.h) continue;
    if (!best || b.depth > best->depth) best = &b;
  }
  if (best) return Hit{HitKind::Box, best->ref};
  return std::nullopt;
}

}  // namespace ontoplot
