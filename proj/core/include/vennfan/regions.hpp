#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vennfan/curves.hpp"
#include "vennfan/geometry.hpp"

namespace vennfan {

/// Bit i set = member of set i.
using RegionMask = std::uint32_t;

/// Binary string with set 0 first, e.g. mask 0b10 for n = 2 prints "01".
std::string mask_to_string(RegionMask mask, int n);
RegionMask mask_from_string(std::string_view bits);

inline constexpr double kDefaultExtent = 2.1;
inline constexpr double kDiagramRadius = 2.0;
inline constexpr int kMinResolution = 256;

using CellIndex = std::int32_t;

/// Square raster frame [-extent, extent]^2 split into resolution^2 cells.
/// Row 0 is the bottom row (smallest y).
struct GridFrame {
  int resolution = kMinResolution;
  double extent = kDefaultExtent;

  double cell_size() const { return 2.0 * extent / resolution; }
  Point cell_center(int row, int col) const {
    const double h = cell_size();
    return {-extent + (col + 0.5) * h, -extent + (row + 0.5) * h};
  }
  Point cell_center(CellIndex cell) const { return cell_center(cell / resolution, cell % resolution); }
  CellIndex index(int row, int col) const { return row * resolution + col; }
  std::int64_t cell_count() const {
    return static_cast<std::int64_t>(resolution) * resolution;
  }
  /// Cells whose centers lie within kDiagramRadius of the origin.
  std::int64_t disk_cell_count() const;

  friend bool operator==(const GridFrame&, const GridFrame&) = default;
};

struct RasterGrid {
  int n = 0;
  GridFrame frame;
  std::vector<RegionMask> cells;

  RegionMask at(int row, int col) const {
    return cells[static_cast<std::size_t>(frame.index(row, col))];
  }
};

/// Radial membership: bit i set iff |point| < 1 + f_i(theta(point)).
RegionMask classify_point(const CurveSpec& spec, Point point);

/// Classify every cell center with classify_point.
RasterGrid rasterize(const CurveSpec& spec, int resolution, double extent = kDefaultExtent);

/// Even-odd (ray casting toward +x) containment in each closed polyline.
/// An edge counts when exactly one endpoint lies strictly above the ray's
/// height and the crossing lies strictly to the right of the point, so points
/// on bottom/left edges count as inside and on top/right edges as outside.
RegionMask classify_by_even_odd(std::span<const Polyline> curves, Point point);

/// Scanline equivalent of classify_by_even_odd over every cell center.
RasterGrid rasterize_even_odd(std::span<const Polyline> curves, int resolution,
                              double extent = kDefaultExtent);

/// Strip-domain classifier: bit i set iff y < f_i(x), for x in the variant's
/// strip domain and y in [-1, 1]. Returns the masks seen on a cols x rows grid.
std::set<RegionMask> strip_census(const CurveSpec& spec, int cols, int rows);

/// Set of masks present in a grid.
std::set<RegionMask> census(const RasterGrid& grid);

/// One 4-connected component of a mask.
struct RegionComponent {
  RegionMask mask = 0;
  GridFrame frame;
  /// Sorted cell indices into the frame.
  std::vector<CellIndex> cells;
  /// cells / frame.disk_cell_count().
  double area = 0.0;
  /// Outer marching-squares contour (counter-clockwise, closed).
  Polyline outline;
  /// Every contour of the cell set, holes included (holes clockwise).
  std::vector<Polyline> contours;
  bool touches_frame = false;
};

/// Builds a component from a cell set, computing area, contours and the
/// frame-contact flag. Cells need not be sorted.
RegionComponent make_component(const GridFrame& frame, RegionMask mask, std::vector<CellIndex> cells);

/// Marching-squares contours of a cell set (iso-level between member and
/// non-member cell centers; saddles split so that 4-connected pieces stay
/// separate).
std::vector<Polyline> cell_set_contours(const GridFrame& frame, std::span<const CellIndex> cells);

struct ComponentLabels {
  std::vector<std::int32_t> label_of_cell;
  std::vector<RegionComponent> components;
};

/// 4-connected component labeling, components ordered by first cell index.
ComponentLabels label_components(const RasterGrid& grid, bool with_contours = true);
std::vector<RegionComponent> extract_components(const RasterGrid& grid);

enum class Tristate { False, True, Unknown };
std::string to_string(Tristate t);

struct TinyRegion {
  RegionMask mask = 0;
  double area = 0.0;
  std::int64_t cells = 0;
  Point centroid;
};

struct DiagramReport {
  int n = 0;
  int resolution = 0;
  bool is_independent_family = false;
  bool is_venn = false;
  Tristate is_simple = Tristate::Unknown;
  /// Components at or above the tiny threshold, for every one of the 2^n masks.
  std::map<RegionMask, int> components_per_mask;
  std::vector<TinyRegion> tiny_regions;
  /// Total normalized area per mask (tiny pieces included).
  std::map<RegionMask, double> areas;
  /// Masks with a component touching the raster frame (unbounded regions).
  std::vector<RegionMask> outer_masks;
  double tiny_threshold = 0.0;
};

/// Four cells, as a fraction of the frame's disk cell count.
double default_tiny_threshold(const GridFrame& frame);

/// Cluster tolerance used by the simplicity check: two cells.
double simplicity_tolerance(const GridFrame& frame);

/// Pairwise polyline intersections clustered within `tolerance`; False if a
/// cluster holds a complete triangle of pairwise crossings among three or
/// more curves, Unknown if a cluster holds three or more curves without one
/// or if two curves overlap along a segment, True otherwise. Only the part
/// inside [-extent, extent]^2 is inspected.
Tristate check_simple(std::span<const Polyline> curves, double tolerance, double extent);

/// Builds a report from an already labeled grid.
DiagramReport verify_arrangement(const RasterGrid& grid, std::span<const RegionComponent> components,
                                 std::span<const Polyline> curves, double tiny_threshold);

/// Full verification of a VennFan spec. Throws ContractViolation if the
/// grid or boundaries were not produced from `spec`.
DiagramReport verify(const CurveSpec& spec, const RasterGrid& grid,
                     std::span<const SampledBoundary> boundaries,
                     std::optional<double> tiny_threshold = std::nullopt);

struct AreaStats {
  /// Regions in the statistics (outer/unbounded masks excluded).
  int regions = 0;
  /// Normalized so the included regions sum to one.
  double min_weight = 0.0;
  double max_weight = 0.0;
  double log10_min = 0.0;
  double log10_max = 0.0;
  double log10_mean = 0.0;
  double log10_std = 0.0;
  double hist_lo = 0.0;
  double hist_hi = 0.0;
  std::vector<int> histogram;
  std::map<RegionMask, double> weights;
};

inline constexpr int kHistogramBins = 20;

/// Statistics of log10 region weights. Masks listed in report.outer_masks are
/// excluded. Histogram bins are uniform in log10 over [hist_lo, hist_hi]
/// (defaults to the data range). Throws ValidationError if a mask is empty.
AreaStats area_stats(const DiagramReport& report, int bins = kHistogramBins,
                     std::optional<std::pair<double, double>> log10_range = std::nullopt);

std::string to_json(const DiagramReport& report);
std::string to_json(const AreaStats& stats);

}  // namespace vennfan
