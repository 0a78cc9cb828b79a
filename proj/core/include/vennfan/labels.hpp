#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "vennfan/curves.hpp"
#include "vennfan/regions.hpp"

namespace vennfan {

/// Binary-reflected Gray code over n sets, starting at the empty mask, with
/// set n-1 as the most frequently flipping bit.
struct GrayOrder {
  int n = 0;
  std::vector<RegionMask> sequence;
};

GrayOrder gray_order(int n);

/// Sign vector (bit i = trig term of boundary i positive) at the midpoint of
/// each of the 2^n equal sign-constancy intervals of the variant's strip
/// domain, in increasing x. Zeros of the family all lie on the dyadic grid
/// of spacing pi / 2^(n-1), so every interval has a constant sign vector.
std::vector<RegionMask> sign_interval_masks(Variant variant, int n);

inline constexpr double kRadialLabelRadius = 1.06;

struct RadialAnchor {
  double angle = 0.0;  ///< polar angle in (-pi, pi]
  double radius = kRadialLabelRadius;
  Point point() const;
};

/// One anchor per mask at the angular midpoint of the interval on which the
/// family's sign vector equals that mask. Requires n >= 1.
std::map<RegionMask, RadialAnchor> radial_anchors(Variant variant, int n);
std::map<RegionMask, RadialAnchor> radial_anchors(const CurveSpec& spec);

/// Arc length of one radial slot at kRadialLabelRadius.
double radial_slot_width(int n);

/// Mean of the cell centers; may fall outside a non-convex region.
Point centroid(const RegionComponent& component);

struct VisualCenter {
  Point point;
  /// Distance from the chosen cell center to the nearest non-region cell
  /// center, minus half a cell (so it approximates distance to the boundary).
  double clearance = 0.0;
  CellIndex cell = -1;
};

/// Cell center maximizing the exact Euclidean distance transform (distance
/// to the nearest cell outside the component, the frame's outside counting
/// as outside). Ties go to the lowest (row, column).
VisualCenter visual_center(const RegionComponent& component);

/// Repeated 4-neighbour erosion until the cell count drops to
/// fraction * original or below. Never returns an empty set: if the next
/// step would empty the region, the current one is returned.
RegionComponent erode_to_fraction(const RegionComponent& component, double fraction);

struct Chord {
  Point p1;
  Point p2;
  /// Direction in degrees, folded into (-90, 90].
  double angle_deg = 0.0;
  double length() const { return distance(p1, p2); }
  Point midpoint() const { return 0.5 * (p1 + p2); }
};

/// Longest chord through `anchor` over `directions` evenly spaced angles in
/// [0, pi). Each half-chord stops where the ray first enters a cell outside
/// the component. Throws ContractViolation if the anchor lies outside.
Chord longest_segment(const RegionComponent& component, Point anchor, int directions = 90);

enum class LabelStrategy { Radial, VisualCenter, Segment };
std::string to_string(LabelStrategy s);

struct LabelEntry {
  Point anchor;
  double rotation_deg = 0.0;
  LabelStrategy strategy = LabelStrategy::Radial;
  double max_chord = 0.0;
  /// Clearance of the region the label sits in (0 for radial labels).
  double clearance = 0.0;
};

struct LabelPlan {
  int n = 0;
  std::map<RegionMask, LabelEntry> entries;
};

enum class LabelMode {
  Balanced,      ///< segment heuristic where there is room, radial elsewhere
  VisualCenter,  ///< visual centers only, radial for regions touching the frame
  Radial,        ///< every label on the outer ring
};

struct LabelConfig {
  LabelMode mode = LabelMode::Balanced;
  double erosion_fraction = 0.5;
  int directions = 90;
  /// 8 px on a 1024 px render of the default frame.
  double min_clearance = 8.0 / 1024.0 * 2.0 * kDefaultExtent;
};

/// Plans one label per mask present in `components`, using the largest
/// component of each mask.
LabelPlan plan_labels(std::span<const RegionComponent> components, Variant variant, int n,
                      const LabelConfig& config = {});

/// Folds an angle in degrees into (-90, 90].
double upright_degrees(double deg);

std::string to_json(const LabelPlan& plan);

}  // namespace vennfan
