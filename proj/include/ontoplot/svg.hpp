#pragma once

#include <string>

#include "ontoplot/layout.hpp"

namespace ontoplot {

struct SvgOptions {
  LayoutConfig config;
  bool legend = true;
  std::string title;
};

/// Standalone SVG document for a layout. Output is a pure function of the
/// inputs. Glyphs carry class attributes "glyph circle", "glyph square",
/// "glyph chain" and "glyph subtree"; hidden-count text is "count".
std::string render_svg(const Layout& layout, const SvgOptions& options = {});

}  // namespace ontoplot
