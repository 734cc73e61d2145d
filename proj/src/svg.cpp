#include "ontoplot/svg.hpp"

#include <algorithm>
#include <sstream>

namespace ontoplot {

namespace {

std::string escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr int kLegendRow = 14;
constexpr int kLegendWidth = 110;

const std::string& fill_of(const Legend& legend, const std::optional<int>& bin) {
  static const std::string none = "#ffffff";
  if (!bin || *bin < 0 || static_cast<std::size_t>(*bin) >= legend.colors.size()) return none;
  return legend.colors[static_cast<std::size_t>(*bin)];
}

void write_glyph(std::ostream& os, const Glyph& g, const Legend& legend) {
  const bool selected = g.selection && g.selection->outline;
  const char* stroke = selected ? "#1f4e9c" : "#555555";
  const int stroke_w = selected ? 2 : 1;
  os << "<g id=\"" << escape(g.ref) << "\"";
  if (!g.class_id.empty()) os << " data-class=\"" << escape(g.class_id) << "\"";
  os << ">";
  if (g.shadow_color)
    os << "<rect class=\"shadow\" x=\"" << g.cx - g.r + 2 << "\" y=\"" << g.cy - g.r + 2
       << "\" width=\"" << 2 * g.r << "\" height=\"" << 2 * g.r << "\" fill=\""
       << escape(*g.shadow_color) << "\"/>";
  switch (g.kind) {
    case GlyphKind::Circle:
      os << "<circle class=\"glyph circle\" cx=\"" << g.cx << "\" cy=\"" << g.cy << "\" r=\""
         << g.r << "\" fill=\"" << fill_of(legend, g.color_bin) << "\" stroke=\"" << stroke
         << "\" stroke-width=\"" << stroke_w << "\"/>";
      break;
    case GlyphKind::Square:
      os << "<rect class=\"glyph square\" x=\"" << g.cx - g.r << "\" y=\"" << g.cy - g.r
         << "\" width=\"" << 2 * g.r << "\" height=\"" << 2 * g.r
         << "\" fill=\"#e0e0e0\" stroke=\"#555555\"/>";
      break;
    case GlyphKind::ThinBlock: {
      const int h = std::max(2, 2 * g.r / 3);
      os << "<rect class=\"glyph chain\" x=\"" << g.cx - g.r << "\" y=\"" << g.cy - h / 2
         << "\" width=\"" << 2 * g.r << "\" height=\"" << h
         << "\" fill=\"#c8c8c8\" stroke=\"#555555\"/>";
      break;
    }
    case GlyphKind::Triangle:
      os << "<path class=\"glyph subtree\" d=\"M" << g.cx << ' ' << g.cy - g.r << " L"
         << g.cx + g.r << ' ' << g.cy + g.r << " L" << g.cx - g.r << ' ' << g.cy + g.r
         << " Z\" fill=\"#d8d8d8\" stroke=\"#555555\"/>";
      break;
  }
  if (g.count_label)
    os << "<text class=\"count\" x=\"" << g.cx << "\" y=\"" << g.cy + 3
       << "\" font-size=\"8\" text-anchor=\"middle\">" << *g.count_label << "</text>";
  if (g.selection) {
    if (g.selection->in_arrow)
      os << "<path class=\"arrow in\" d=\"M" << g.cx - g.r - 6 << ' ' << g.cy << " L"
         << g.cx - g.r << ' ' << g.cy << "\" stroke=\"#1f4e9c\"/>";
    if (g.selection->out_arrow)
      os << "<path class=\"arrow out\" d=\"M" << g.cx + g.r << ' ' << g.cy << " L"
         << g.cx + g.r + 6 << ' ' << g.cy << "\" stroke=\"#1f4e9c\"/>";
    if (g.selection->pulsing_ring)
      os << "<circle class=\"ring\" cx=\"" << g.cx << "\" cy=\"" << g.cy << "\" r=\""
         << g.r + 3 << "\" fill=\"none\" stroke=\"#1f4e9c\"/>";
  }
  os << "</g>\n";
}

void write_label(std::ostream& os, const Label& l, const Legend& legend) {
  os << "<text id=\"" << escape(l.ref) << "\" class=\"label " << to_string(l.kind) << "\" x=\""
     << l.x << "\" y=\"" << l.y << "\" font-size=\"" << l.h << "\"";
  if (l.orientation == LabelOrientation::Diagonal)
    os << " transform=\"rotate(45 " << l.x << ' ' << l.y << ")\"";
  if (l.color_bin && l.kind != LabelKind::Parent)
    os << " data-color=\"" << fill_of(legend, l.color_bin) << "\"";
  os << ">" << escape(l.text) << "</text>\n";
}

}  // namespace

std::string render_svg(const Layout& layout, const SvgOptions& options) {
  const bool legend = options.legend && !layout.legend.empty();
  const int legend_h = legend ? kLegendRow * static_cast<int>(layout.legend.bins.size() + 1) : 0;
  // Diagonal labels reach past the boxes; leave room to the right and below.
  int width = layout.total_w;
  int height = layout.total_h;
  for (const auto& l : layout.labels) {
    const int reach = l.orientation == LabelOrientation::Diagonal ? (l.w * 71) / 100 + l.h : l.w;
    width = std::max(width, l.x + reach);
    height = std::max(height, l.y + (l.orientation == LabelOrientation::Diagonal ? reach : 0));
  }
  width = std::max(width, legend ? kLegendWidth : 0) + 4;
  height += legend_h + 4;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height
     << "\" font-family=\"sans-serif\">\n";
  if (!options.title.empty()) os << "<title>" << escape(options.title) << "</title>\n";

  for (const auto& b : layout.boxes) {
    os << "<rect id=\"" << escape(b.ref) << "\" class=\"box "
       << (b.kind == BoxKind::Class ? "class" : "grid") << "\" x=\"" << b.x << "\" y=\"" << b.y
       << "\" width=\"" << b.w << "\" height=\"" << b.h << "\" fill=\""
       << (b.kind == BoxKind::Class ? "#f7f7f7" : "#ffffff") << "\" stroke=\"#bbbbbb\"/>\n";
  }
  for (const auto& s : layout.separators) {
    const bool faint = s.style == SeparatorStyle::FaintPartial;
    os << "<line id=\"" << escape(s.ref) << "\" class=\"separator "
       << (faint ? "faint" : "solid") << "\" x1=\"" << s.x << "\" y1=\"" << s.y_top
       << "\" x2=\"" << s.x << "\" y2=\"" << s.y_bottom << "\" stroke=\""
       << (faint ? "#dddddd" : "#888888") << "\"/>\n";
  }
  for (const auto& g : layout.glyphs) write_glyph(os, g, layout.legend);
  for (const auto& l : layout.labels) write_label(os, l, layout.legend);

  if (legend) {
    const int x0 = width - kLegendWidth - 2;
    int y = height - legend_h - 2;
    os << "<g class=\"legend\">\n";
    os << "<text x=\"" << x0 << "\" y=\"" << y + 10 << "\" font-size=\"10\">associations</text>\n";
    for (std::size_t i = 0; i < layout.legend.bins.size(); ++i) {
      y += kLegendRow;
      const auto [lo, hi] = layout.legend.bins[i];
      os << "<rect x=\"" << x0 << "\" y=\"" << y << "\" width=\"10\" height=\"10\" fill=\""
         << layout.legend.colors[i] << "\" stroke=\"#555555\"/>";
      os << "<text x=\"" << x0 + 14 << "\" y=\"" << y + 9 << "\" font-size=\"10\">" << lo;
      if (hi != lo) os << "-" << hi;
      os << "</text>\n";
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace ontoplot
