#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ontoplot/compression.hpp"
#include "ontoplot/hierarchy.hpp"
#include "ontoplot/ontology.hpp"

namespace ontoplot {

/// Geometry parameters in pixels.
struct LayoutConfig {
  int cell_size = 16;
  int glyph_diameter = 12;
  int box_padding = 2;
  int level_gap = 4;
  int max_grid_columns = 8;
  int char_width = 7;
  int label_angle_deg = 45;
  int font_size = 11;
  /// Light yellow to deep red.
  std::array<std::string, 5> color_ramp = {"#ffffb2", "#fecc5c", "#fd8d3c", "#f03b20",
                                           "#bd0026"};

  /// Throws std::invalid_argument.
  void validate() const;
};

/// Association-count colour key. `bins[i]` is an inclusive count range.
struct Legend {
  std::vector<std::pair<std::size_t, std::size_t>> bins;
  std::vector<std::string> colors;

  bool empty() const noexcept { return bins.empty(); }
  /// Bin holding `count`, or nullopt for counts outside every bin.
  std::optional<int> bin_of(std::size_t count) const;

  friend bool operator==(const Legend&, const Legend&) = default;
};

/// Up to five equal-width integer bins over [1, max count]; zero counts are
/// ignored. No counts yields an empty legend.
Legend build_legend(std::span<const std::size_t> counts, const LayoutConfig& config = {});

enum class BoxKind { Class, Grid };
enum class GlyphKind { Circle, Square, ThinBlock, Triangle };
enum class SeparatorStyle { FaintPartial, Solid };
enum class LabelOrientation { Horizontal, Diagonal };
enum class LabelKind { Parent, Association, Pinned };

std::string_view to_string(BoxKind);
std::string_view to_string(GlyphKind);
std::string_view to_string(SeparatorStyle);
std::string_view to_string(LabelOrientation);
std::string_view to_string(LabelKind);

// Every element carries a `ref` that is stable across view changes:
//   occ:N  grid:N  circle:N  square:N  region:N  sep:<ref>  label:{parent,assoc,pin}:N

struct Box {
  std::string ref;
  BoxKind kind = BoxKind::Class;
  /// Class box: its occurrence. Grid box: the occurrence whose leaf-type
  /// children it wraps (-1 for a lone leaf root).
  OccId occ = 0;
  int x = 0, y = 0, w = 0, h = 0;
  int depth = 0;

  friend bool operator==(const Box&, const Box&) = default;
};

struct SelectionMark {
  bool outline = false;
  bool in_arrow = false;
  bool out_arrow = false;
  bool pulsing_ring = false;

  friend bool operator==(const SelectionMark&, const SelectionMark&) = default;
};

struct Glyph {
  std::string ref;
  GlyphKind kind = GlyphKind::Circle;
  /// Circle: its occurrence. Square: the anchor. Chain/subtree: the hidden root.
  OccId occ = 0;
  std::string class_id;  // circles only
  int cx = 0, cy = 0;
  int r = 0;  // half the glyph extent
  std::optional<int> color_bin;
  std::optional<std::size_t> count_label;
  std::optional<std::string> shadow_color;
  std::optional<SelectionMark> selection;

  friend bool operator==(const Glyph&, const Glyph&) = default;
};

struct Separator {
  std::string ref;
  int x = 0, y_top = 0, y_bottom = 0;
  SeparatorStyle style = SeparatorStyle::Solid;

  friend bool operator==(const Separator&, const Separator&) = default;
};

struct Label {
  std::string ref;
  std::string text;
  std::string class_id;
  /// Anchor at the start of the baseline; diagonal labels rotate about it.
  int x = 0, y = 0;
  int w = 0, h = 0;  // unrotated text extent
  LabelOrientation orientation = LabelOrientation::Horizontal;
  std::optional<int> color_bin;
  LabelKind kind = LabelKind::Parent;

  friend bool operator==(const Label&, const Label&) = default;
};

/// Absolute geometry of one view. Element vectors are sorted by ref.
struct Layout {
  std::vector<Box> boxes;
  std::vector<Glyph> glyphs;
  std::vector<Separator> separators;
  std::vector<Label> labels;
  Legend legend;
  int total_w = 0;
  int total_h = 0;

  friend bool operator==(const Layout&, const Layout&) = default;
};

/// Everything the layout depends on besides the ontology.
struct ViewState {
  std::string property;
  std::optional<std::string> focus;
  std::optional<std::string> selection;
  Overrides overrides;
  std::set<std::string> pinned;
  std::map<std::string, std::pair<int, int>> label_offsets;

  friend bool operator==(const ViewState&, const ViewState&) = default;
};

Layout compute_layout(const OntologySnapshot& snapshot, const OccurrenceTree& tree,
                      const InterestModel& interest, const CompressionPlan& plan,
                      const LayoutConfig& config, const ViewState& view);

/// Interest, compression plan and layout for a view.
struct ViewModel {
  InterestModel interest;
  CompressionPlan plan;
  Layout layout;
};

/// Runs the whole pipeline: interest (focus or property mode), detection,
/// overrides, layout.
ViewModel layout_view(const OntologySnapshot& snapshot, const OccurrenceTree& tree,
                      const LayoutConfig& config, const ViewState& view);

struct Move {
  std::string ref;
  int dx = 0, dy = 0;
  friend bool operator==(const Move&, const Move&) = default;
};

/// New extent; for separators `h` is y_bottom - y_top.
struct Resize {
  std::string ref;
  int w = 0, h = 0;
  friend bool operator==(const Resize&, const Resize&) = default;
};

struct LayoutDiff {
  std::vector<Move> moved;
  std::vector<Resize> resized;
  /// Elements new to the next layout or whose content changed.
  Layout added;
  std::vector<std::string> removed;
  /// Boxes and glyphs covering the toggled subtrees.
  std::vector<std::string> changed_region;
  std::optional<Legend> legend;
  int total_w = 0;
  int total_h = 0;
  int highlight_ms = 300;

  /// True when applying the diff leaves the layout unchanged.
  bool empty() const noexcept;

  friend bool operator==(const LayoutDiff&, const LayoutDiff&) = default;
};

/// Minimal change set turning `prev` into `next`.
LayoutDiff diff_layouts(const Layout& prev, const Layout& next);

Layout apply_diff(const Layout& prev, const LayoutDiff& diff);

/// Transient highlight duration for a collapse/expand touching
/// `hidden_count` occurrences.
int highlight_duration_ms(std::size_t hidden_count);

/// Both views use their own property/focus for interest.
LayoutDiff compute_layout_diff(const OntologySnapshot& snapshot, const OccurrenceTree& tree,
                               const LayoutConfig& config, const ViewState& prev,
                               const ViewState& next);

/// Variant for views sharing `interest` (same property and focus).
LayoutDiff compute_layout_diff(const OntologySnapshot& snapshot, const OccurrenceTree& tree,
                               const InterestModel& interest, const LayoutConfig& config,
                               const ViewState& prev, const ViewState& next);

enum class HitKind { Glyph, Label, Box };

struct Hit {
  HitKind kind;
  std::string ref;
  friend bool operator==(const Hit&, const Hit&) = default;
};

/// Topmost element under the point: glyphs, then labels, then the
/// innermost box. Nothing outside [0, total_w) x [0, total_h).
std::optional<Hit> hit_test(const Layout& layout, double x, double y);

}  // namespace ontoplot
