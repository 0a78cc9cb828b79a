#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "vennfan/labels.hpp"
#include "vennfan/regions.hpp"

namespace vennfan {

struct RenderConfig {
  int canvas_px = 1024;
  /// Per-set stroke colors; generated from evenly spaced hues when empty.
  std::vector<std::string> set_colors;
  double stroke_width_px = 1.5;
  std::string label_font_family = "DejaVu Sans, Arial, sans-serif";
  double min_font_px = 7.0;
  double max_font_px = 28.0;
  std::string background = "#ffffff";
  bool fill_regions = true;
  bool legend = true;
  /// Half-width of the square world window mapped onto the canvas.
  double extent = kDefaultExtent;
};

void validate(const RenderConfig& config);

struct RenderInput {
  int n = 0;
  std::span<const Polyline> boundaries;
  std::span<const RegionComponent> components;
  const LabelPlan* plan = nullptr;
  /// Label text per mask; masks without an entry show their bit string.
  std::map<RegionMask, std::string> label_text;
  /// Legend entries; "S0", "S1", ... when empty.
  std::vector<std::string> set_names;
};

enum class TextAnchor { Middle, Start, End };

struct PlacedLabel {
  RegionMask mask = 0;
  std::string text;
  Point anchor;
  double rotation_deg = 0.0;
  LabelStrategy strategy = LabelStrategy::Radial;
  double font_px = 0.0;
  TextAnchor text_anchor = TextAnchor::Middle;
  /// Corners, edge midpoints and center of the rotated text box (world units).
  std::array<Point, 9> box{};
  bool fits = true;
};

/// Width model without glyph metrics: 0.6 * font size per character.
double text_width_px(const std::string& text, double font_px);

/// Font sizes and text boxes for every plan entry. Segment and visual-center
/// labels shrink until their box lies in their region; radial labels grow
/// outward from radius 1.06.
std::vector<PlacedLabel> layout_labels(const RenderInput& input, const RenderConfig& config);

/// HSL fill: hue from the mask's rank in the Gray order, lightness from its
/// popcount.
std::string region_fill_color(RegionMask mask, int n);
std::string set_stroke_color(int set, int n);

struct RenderResult {
  std::string svg;
  std::vector<std::string> warnings;
};

RenderResult render_diagram(const RenderInput& input, const RenderConfig& config = {});

/// Cells of components smaller than `tiny_threshold` whose centers are more
/// than half a stroke away from every boundary (i.e. would stay visible).
std::int64_t uncovered_tiny_cells(std::span<const RegionComponent> components, double tiny_threshold,
                                  std::span<const Polyline> boundaries, double stroke_width_world);

/// Stroke-only SVG for curve sets without region data (equatorial views).
std::string render_curves(std::span<const Polyline> curves, const RenderConfig& config,
                          const std::vector<std::string>& names = {});

}  // namespace vennfan
