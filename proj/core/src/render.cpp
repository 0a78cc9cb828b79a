#include "vennfan/render.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <unordered_map>

namespace vennfan {

namespace {

std::string hex_from_hsl(double hue_deg, double sat, double light) {
  const double c = (1.0 - std::fabs(2.0 * light - 1.0)) * sat;
  const double hp = std::fmod(hue_deg, 360.0) / 60.0;
  const double x = c * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  if (hp < 1) {
    r = c, g = x;
  } else if (hp < 2) {
    r = x, g = c;
  } else if (hp < 3) {
    g = c, b = x;
  } else if (hp < 4) {
    g = x, b = c;
  } else if (hp < 5) {
    r = x, b = c;
  } else {
    r = c, b = x;
  }
  const double m = light - c / 2.0;
  auto channel = [m](double v) { return static_cast<int>(std::lround(std::clamp(v + m, 0.0, 1.0) * 255.0)); };
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", channel(r), channel(g), channel(b));
  return buf;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

struct Canvas {
  double extent;
  double px;
  double scale() const { return px / (2.0 * extent); }
  double X(double x) const { return (x + extent) * scale(); }
  double Y(double y) const { return (extent - y) * scale(); }
};

void append_path(std::ostringstream& out, const Canvas& cv, const Polyline& poly, bool close) {
  for (std::size_t k = 0; k < poly.size(); ++k) {
    if (close && k + 1 == poly.size() && poly[k] == poly.front()) break;
    out << (k == 0 ? 'M' : 'L') << num(cv.X(poly[k].x)) << ' ' << num(cv.Y(poly[k].y));
  }
  if (close) out << 'Z';
}

std::array<Point, 9> box_points(Point anchor, double rotation_deg, double width, double height,
                                TextAnchor text_anchor) {
  const double a = rotation_deg * kPi / 180.0;
  const Point d{std::cos(a), std::sin(a)};
  const Point nrm{-d.y, d.x};
  double s0 = -width / 2, s1 = width / 2;
  if (text_anchor == TextAnchor::Start) s0 = 0, s1 = width;
  if (text_anchor == TextAnchor::End) s0 = -width, s1 = 0;
  std::array<Point, 9> out{};
  int k = 0;
  for (double s : {s0, 0.5 * (s0 + s1), s1})
    for (double t : {-height / 2, 0.0, height / 2}) out[static_cast<std::size_t>(k++)] = anchor + s * d + t * nrm;
  return out;
}

// Cell -> mask lookup rebuilt from the component list.
class MaskLookup {
 public:
  explicit MaskLookup(std::span<const RegionComponent> comps) {
    if (comps.empty()) return;
    frame_ = comps.front().frame;
    cells_.assign(static_cast<std::size_t>(frame_.cell_count()), -1);
    for (const auto& c : comps)
      for (CellIndex i : c.cells) cells_[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(c.mask);
  }
  bool contains(RegionMask mask, Point p) const {
    if (cells_.empty()) return false;
    const double h = frame_.cell_size();
    const int col = static_cast<int>(std::floor((p.x + frame_.extent) / h));
    const int row = static_cast<int>(std::floor((p.y + frame_.extent) / h));
    if (row < 0 || col < 0 || row >= frame_.resolution || col >= frame_.resolution) return false;
    return cells_[static_cast<std::size_t>(frame_.index(row, col))] == static_cast<std::int64_t>(mask);
  }

 private:
  GridFrame frame_;
  std::vector<std::int64_t> cells_;
};

}  // namespace

void validate(const RenderConfig& config) {
  if (config.canvas_px < 256) throw ValidationError("render: canvas_px must be at least 256");
  if (!(config.stroke_width_px > 0.0)) throw ValidationError("render: stroke width must be positive");
  if (!(config.min_font_px > 0.0) || config.max_font_px < config.min_font_px)
    throw ValidationError("render: need 0 < min font <= max font");
}

double text_width_px(const std::string& text, double font_px) {
  return 0.6 * font_px * static_cast<double>(text.size());
}

std::string region_fill_color(RegionMask mask, int n) {
  static thread_local std::map<int, std::vector<int>> rank_cache;
  auto& rank = rank_cache[n];
  if (rank.empty()) {
    const auto order = gray_order(n);
    rank.assign(order.sequence.size(), 0);
    for (std::size_t k = 0; k < order.sequence.size(); ++k) rank[order.sequence[k]] = static_cast<int>(k);
  }
  const double hue = 360.0 * rank[mask] / static_cast<double>(rank.size());
  const double light = 0.92 - 0.32 * std::popcount(mask) / static_cast<double>(n);
  return hex_from_hsl(hue, 0.55, light);
}

std::string set_stroke_color(int set, int n) { return hex_from_hsl(360.0 * set / n, 0.75, 0.32); }

std::vector<PlacedLabel> layout_labels(const RenderInput& input, const RenderConfig& config) {
  std::vector<PlacedLabel> out;
  if (input.plan == nullptr) return out;
  const Canvas cv{config.extent, static_cast<double>(config.canvas_px)};
  const double to_world = 1.0 / cv.scale();
  const MaskLookup lookup(input.components);

  for (const auto& [mask, entry] : input.plan->entries) {
    PlacedLabel lab;
    lab.mask = mask;
    auto it = input.label_text.find(mask);
    lab.text = it != input.label_text.end() ? it->second : mask_to_string(mask, input.n);
    lab.anchor = entry.anchor;
    lab.rotation_deg = entry.rotation_deg;
    lab.strategy = entry.strategy;
    const double chars = std::max<double>(1.0, static_cast<double>(lab.text.size()));

    if (entry.strategy == LabelStrategy::Radial) {
      // Text runs outward along the radius; its height must fit the slot.
      const double slot_px = entry.max_chord * cv.scale();
      lab.font_px = std::clamp(0.9 * slot_px, config.min_font_px, config.max_font_px);
      const bool flipped = std::cos(std::atan2(entry.anchor.y, entry.anchor.x)) < 0.0;
      lab.text_anchor = flipped ? TextAnchor::End : TextAnchor::Start;
      lab.box = box_points(lab.anchor, lab.rotation_deg, text_width_px(lab.text, lab.font_px) * to_world,
                           lab.font_px * to_world, lab.text_anchor);
      lab.fits = 0.9 * slot_px >= config.min_font_px;
    } else {
      const double chord_px = entry.max_chord * cv.scale();
      double font = std::clamp(0.9 * chord_px / (0.6 * chars), config.min_font_px, config.max_font_px);
      lab.text_anchor = TextAnchor::Middle;
      auto inside = [&](double f) {
        const auto box = box_points(lab.anchor, lab.rotation_deg, text_width_px(lab.text, f) * to_world,
                                    f * to_world, lab.text_anchor);
        return std::all_of(box.begin(), box.end(), [&](Point p) { return lookup.contains(mask, p); });
      };
      while (font > config.min_font_px && !inside(font)) font = std::max(config.min_font_px, font * 0.9);
      lab.fits = inside(font);
      lab.font_px = font;
      lab.box = box_points(lab.anchor, lab.rotation_deg, text_width_px(lab.text, font) * to_world,
                           font * to_world, lab.text_anchor);
    }
    out.push_back(std::move(lab));
  }
  return out;
}

RenderResult render_diagram(const RenderInput& input, const RenderConfig& config) {
  validate(config);
  RenderResult result;
  const Canvas cv{config.extent, static_cast<double>(config.canvas_px)};
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << config.canvas_px
      << "\" height=\"" << config.canvas_px << "\" viewBox=\"0 0 " << config.canvas_px << ' '
      << config.canvas_px << "\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << config.canvas_px << "\" height=\"" << config.canvas_px
      << "\" fill=\"" << config.background << "\"/>\n";

  if (config.fill_regions) {
    svg << "<g id=\"regions\" stroke=\"none\" fill-rule=\"evenodd\">\n";
    for (const auto& comp : input.components) {
      if (comp.touches_frame) continue;  // the background stands in for unbounded regions
      std::ostringstream d;
      for (const auto& loop : comp.contours) append_path(d, cv, loop, true);
      svg << "<path data-mask=\"" << mask_to_string(comp.mask, input.n) << "\" fill=\""
          << region_fill_color(comp.mask, input.n) << "\" d=\"" << d.str() << "\"/>\n";
    }
    svg << "</g>\n";
  }

  svg << "<g id=\"boundaries\" fill=\"none\" stroke-linejoin=\"round\" stroke-width=\""
      << num(config.stroke_width_px) << "\">\n";
  for (std::size_t i = 0; i < input.boundaries.size(); ++i) {
    const std::string color = i < config.set_colors.size() ? config.set_colors[i]
                                                           : set_stroke_color(static_cast<int>(i), input.n);
    std::ostringstream d;
    append_path(d, cv, input.boundaries[i], false);
    svg << "<path data-set=\"" << i << "\" stroke=\"" << color << "\" d=\"" << d.str() << "\"/>\n";
  }
  svg << "</g>\n";

  const auto labels = layout_labels(input, config);
  if (!labels.empty()) {
    svg << "<g id=\"labels\" font-family=\"" << xml_escape(config.label_font_family)
        << "\" fill=\"#111111\" dominant-baseline=\"central\">\n";
    for (const auto& lab : labels) {
      const char* anchor = lab.text_anchor == TextAnchor::Start ? "start"
                           : lab.text_anchor == TextAnchor::End ? "end"
                                                                : "middle";
      const double X = cv.X(lab.anchor.x);
      const double Y = cv.Y(lab.anchor.y);
      svg << "<text data-mask=\"" << mask_to_string(lab.mask, input.n) << "\" data-strategy=\""
          << to_string(lab.strategy) << "\" x=\"" << num(X) << "\" y=\"" << num(Y) << "\" font-size=\""
          << num(lab.font_px) << "\" text-anchor=\"" << anchor << "\" transform=\"rotate("
          << num(-lab.rotation_deg) << ' ' << num(X) << ' ' << num(Y) << ")\">" << xml_escape(lab.text)
          << "</text>\n";
      if (!lab.fits)
        result.warnings.push_back("label " + mask_to_string(lab.mask, input.n) +
                                  " does not fit its region at the minimum font size");
    }
    svg << "</g>\n";
  }

  if (config.legend && input.n > 0) {
    svg << "<g id=\"legend\" font-family=\"" << xml_escape(config.label_font_family)
        << "\" font-size=\"14\" fill=\"#111111\">\n";
    for (int i = 0; i < input.n; ++i) {
      const std::string name = static_cast<std::size_t>(i) < input.set_names.size()
                                   ? input.set_names[static_cast<std::size_t>(i)]
                                   : "S" + std::to_string(i);
      const std::string color = static_cast<std::size_t>(i) < config.set_colors.size()
                                    ? config.set_colors[static_cast<std::size_t>(i)]
                                    : set_stroke_color(i, input.n);
      const double y = 20.0 + 20.0 * i;
      svg << "<line x1=\"12\" y1=\"" << num(y) << "\" x2=\"36\" y2=\"" << num(y) << "\" stroke=\"" << color
          << "\" stroke-width=\"3\"/>"
          << "<text x=\"42\" y=\"" << num(y + 5.0) << "\">" << xml_escape(name) << "</text>\n";
    }
    svg << "</g>\n";
  }
  svg << "</svg>\n";
  result.svg = svg.str();
  return result;
}

std::int64_t uncovered_tiny_cells(std::span<const RegionComponent> components, double tiny_threshold,
                                  std::span<const Polyline> boundaries, double stroke_width_world) {
  const double reach = stroke_width_world / 2.0;
  // Bucket boundary segments on a grid of pitch `reach` (at least 1e-3).
  const double pitch = std::max(reach, 1e-3);
  auto key = [pitch](double x, double y) {
    const auto bx = static_cast<std::int64_t>(std::floor(x / pitch));
    const auto by = static_cast<std::int64_t>(std::floor(y / pitch));
    return (bx << 32) ^ (by & 0xffffffff);
  };
  std::unordered_map<std::int64_t, std::vector<std::pair<Point, Point>>> buckets;
  for (const auto& poly : boundaries) {
    for (std::size_t k = 0; k + 1 < poly.size(); ++k) {
      const Point a = poly[k], b = poly[k + 1];
      const int steps = 1 + static_cast<int>(distance(a, b) / pitch);
      for (int s = 0; s <= steps; ++s) {
        const Point p = a + (static_cast<double>(s) / steps) * (b - a);
        auto& list = buckets[key(p.x, p.y)];
        if (list.empty() || !(list.back().first == a && list.back().second == b)) list.push_back({a, b});
      }
    }
  }
  auto seg_dist = [](Point p, Point a, Point b) {
    const Point ab = b - a;
    const double len2 = dot(ab, ab);
    const double t = len2 > 0 ? std::clamp(dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
    return distance(p, a + t * ab);
  };
  std::int64_t uncovered = 0;
  for (const auto& comp : components) {
    if (comp.area >= tiny_threshold) continue;
    for (CellIndex c : comp.cells) {
      const Point p = comp.frame.cell_center(c);
      bool covered = false;
      for (int dx = -1; dx <= 1 && !covered; ++dx) {
        for (int dy = -1; dy <= 1 && !covered; ++dy) {
          auto it = buckets.find(key(p.x + dx * pitch, p.y + dy * pitch));
          if (it == buckets.end()) continue;
          for (const auto& [a, b] : it->second)
            if (seg_dist(p, a, b) <= reach) {
              covered = true;
              break;
            }
        }
      }
      if (!covered) ++uncovered;
    }
  }
  return uncovered;
}

std::string render_curves(std::span<const Polyline> curves, const RenderConfig& config,
                          const std::vector<std::string>& names) {
  validate(config);
  const Canvas cv{config.extent, static_cast<double>(config.canvas_px)};
  const int n = static_cast<int>(curves.size());
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << config.canvas_px
      << "\" height=\"" << config.canvas_px << "\" viewBox=\"0 0 " << config.canvas_px << ' '
      << config.canvas_px << "\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << config.canvas_px << "\" height=\"" << config.canvas_px
      << "\" fill=\"" << config.background << "\"/>\n";
  svg << "<g id=\"boundaries\" fill=\"none\" stroke-linejoin=\"round\" stroke-width=\""
      << num(config.stroke_width_px) << "\">\n";
  for (int i = 0; i < n; ++i) {
    std::ostringstream d;
    append_path(d, cv, curves[static_cast<std::size_t>(i)], false);
    svg << "<path data-set=\"" << i << "\" stroke=\"" << set_stroke_color(i, n) << "\" d=\"" << d.str()
        << "\"/>\n";
  }
  svg << "</g>\n";
  if (config.legend) {
    svg << "<g id=\"legend\" font-family=\"" << xml_escape(config.label_font_family)
        << "\" font-size=\"14\" fill=\"#111111\">\n";
    for (int i = 0; i < n; ++i) {
      const std::string name =
          static_cast<std::size_t>(i) < names.size() ? names[static_cast<std::size_t>(i)] : "S" + std::to_string(i);
      const double y = 20.0 + 20.0 * i;
      svg << "<line x1=\"12\" y1=\"" << num(y) << "\" x2=\"36\" y2=\"" << num(y) << "\" stroke=\""
          << set_stroke_color(i, n) << "\" stroke-width=\"3\"/>"
          << "<text x=\"42\" y=\"" << num(y + 5.0) << "\">" << xml_escape(name) << "</text>\n";
    }
    svg << "</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace vennfan
