#include "vennfan/regions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

namespace vennfan {

namespace {

// Runs body(row) for every row, split across hardware threads. Rows are
// independent so the result does not depend on the split.
template <class Body>
void for_each_row(int rows, Body&& body) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int workers = static_cast<int>(std::min<unsigned>(hw, 16u));
  if (workers <= 1 || rows < 64) {
    for (int r = 0; r < rows; ++r) body(r);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int r = w; r < rows; r += workers) body(r);
    });
  }
}

// x coordinate where edge (a, b) crosses the horizontal line at height y.
// Shared by the point and scanline even-odd tests so that both agree bit for bit.
inline double edge_crossing_x(Point a, Point b, double y) {
  return a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y);
}

inline bool edge_straddles(Point a, Point b, double y) { return (a.y > y) != (b.y > y); }

}  // namespace

std::string mask_to_string(RegionMask mask, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i)
    if (mask >> i & 1u) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

RegionMask mask_from_string(std::string_view bits) {
  RegionMask m = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1')
      m |= RegionMask{1} << i;
    else if (bits[i] != '0')
      throw ValidationError("mask string must contain only 0 and 1");
  }
  return m;
}

std::int64_t GridFrame::disk_cell_count() const {
  const double h = cell_size();
  const double r2 = kDiagramRadius * kDiagramRadius;
  auto inside = [&](int col, double y) {
    const double x = -extent + (col + 0.5) * h;
    return x * x + y * y <= r2;
  };
  std::int64_t count = 0;
  for (int row = 0; row < resolution; ++row) {
    const double y = -extent + (row + 0.5) * h;
    if (y * y > r2) continue;
    const double half = std::sqrt(r2 - y * y);
    int lo = std::clamp(static_cast<int>(std::ceil((extent - half) / h - 0.5)), 0, resolution - 1);
    int hi = std::clamp(static_cast<int>(std::floor((extent + half) / h - 0.5)), 0, resolution - 1);
    while (lo > 0 && inside(lo - 1, y)) --lo;
    while (lo <= hi && !inside(lo, y)) ++lo;
    while (hi + 1 < resolution && inside(hi + 1, y)) ++hi;
    while (hi >= lo && !inside(hi, y)) --hi;
    if (hi >= lo) count += hi - lo + 1;
  }
  return count;
}

RegionMask classify_point(const CurveSpec& spec, Point point) {
  const double r = norm(point);
  const int n = spec.n();
  if (r == 0.0) return (RegionMask{1} << n) - 1;
  const double x = x_of_theta(spec.variant(), std::atan2(point.y, point.x));
  RegionMask mask = 0;
  for (int i = 0; i < n; ++i) {
    const double lambda = spec.amplitude(i);
    bool inside;
    if (r < 1.0 - lambda)
      inside = true;
    else if (r >= 1.0 + lambda)
      inside = false;
    else
      inside = r < 1.0 + shaped_trig(spec, i, x);
    if (inside) mask |= RegionMask{1} << i;
  }
  return mask;
}

RasterGrid rasterize(const CurveSpec& spec, int resolution, double extent) {
  if (resolution < kMinResolution)
    throw ValidationError("resolution must be at least " + std::to_string(kMinResolution));
  require_projectable(spec);
  RasterGrid grid;
  grid.n = spec.n();
  grid.frame = {resolution, extent};
  grid.cells.assign(static_cast<std::size_t>(grid.frame.cell_count()), 0);
  for_each_row(resolution, [&](int row) {
    for (int col = 0; col < resolution; ++col)
      grid.cells[static_cast<std::size_t>(grid.frame.index(row, col))] =
          classify_point(spec, grid.frame.cell_center(row, col));
  });
  return grid;
}

RegionMask classify_by_even_odd(std::span<const Polyline> curves, Point point) {
  RegionMask mask = 0;
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const Polyline& poly = curves[c];
    bool inside = false;
    for (std::size_t k = 0; k + 1 < poly.size(); ++k) {
      const Point a = poly[k];
      const Point b = poly[k + 1];
      if (edge_straddles(a, b, point.y) && point.x < edge_crossing_x(a, b, point.y))
        inside = !inside;
    }
    if (inside) mask |= RegionMask{1} << c;
  }
  return mask;
}

RasterGrid rasterize_even_odd(std::span<const Polyline> curves, int resolution, double extent) {
  if (resolution < kMinResolution)
    throw ValidationError("resolution must be at least " + std::to_string(kMinResolution));
  RasterGrid grid;
  grid.n = static_cast<int>(curves.size());
  grid.frame = {resolution, extent};
  grid.cells.assign(static_cast<std::size_t>(grid.frame.cell_count()), 0);
  const double h = grid.frame.cell_size();

  std::vector<std::vector<double>> crossings(static_cast<std::size_t>(resolution));
  for (std::size_t c = 0; c < curves.size(); ++c) {
    for (auto& row : crossings) row.clear();
    const Polyline& poly = curves[c];
    for (std::size_t k = 0; k + 1 < poly.size(); ++k) {
      const Point a = poly[k];
      const Point b = poly[k + 1];
      if (a.y == b.y) continue;
      const double lo = std::min(a.y, b.y);
      const double hi = std::max(a.y, b.y);
      // Candidate rows whose center height falls in [lo, hi); widened by one
      // and re-checked with the exact predicate.
      int r0 = static_cast<int>(std::floor((lo + extent) / h - 0.5)) - 1;
      int r1 = static_cast<int>(std::ceil((hi + extent) / h - 0.5)) + 1;
      r0 = std::max(r0, 0);
      r1 = std::min(r1, resolution - 1);
      for (int r = r0; r <= r1; ++r) {
        const double y = -extent + (r + 0.5) * h;
        if (edge_straddles(a, b, y))
          crossings[static_cast<std::size_t>(r)].push_back(edge_crossing_x(a, b, y));
      }
    }
    const RegionMask bit = RegionMask{1} << c;
    for (int r = 0; r < resolution; ++r) {
      auto& xs = crossings[static_cast<std::size_t>(r)];
      if (xs.empty()) continue;
      std::sort(xs.begin(), xs.end());
      std::size_t passed = 0;
      for (int col = 0; col < resolution; ++col) {
        const double px = -extent + (col + 0.5) * h;
        while (passed < xs.size() && xs[passed] <= px) ++passed;
        if ((xs.size() - passed) & 1u)
          grid.cells[static_cast<std::size_t>(grid.frame.index(r, col))] |= bit;
      }
    }
  }
  return grid;
}

std::set<RegionMask> strip_census(const CurveSpec& spec, int cols, int rows) {
  const auto [lo, hi] = strip_domain(spec.variant());
  const int n = spec.n();
  std::vector<double> f(static_cast<std::size_t>(cols) * n);
  for (int c = 0; c < cols; ++c) {
    const double x = lo + (c + 0.5) * (hi - lo) / cols;
    for (int i = 0; i < n; ++i) f[static_cast<std::size_t>(c * n + i)] = shaped_trig(spec, i, x);
  }
  std::vector<bool> seen(std::size_t{1} << n, false);
  for (int r = 0; r < rows; ++r) {
    const double y = -1.0 + (r + 0.5) * 2.0 / rows;
    for (int c = 0; c < cols; ++c) {
      RegionMask m = 0;
      for (int i = 0; i < n; ++i)
        if (y < f[static_cast<std::size_t>(c * n + i)]) m |= RegionMask{1} << i;
      seen[m] = true;
    }
  }
  std::set<RegionMask> out;
  for (std::size_t m = 0; m < seen.size(); ++m)
    if (seen[m]) out.insert(static_cast<RegionMask>(m));
  return out;
}

std::set<RegionMask> census(const RasterGrid& grid) {
  std::vector<bool> seen(std::size_t{1} << grid.n, false);
  for (RegionMask m : grid.cells) seen[m] = true;
  std::set<RegionMask> out;
  for (std::size_t m = 0; m < seen.size(); ++m)
    if (seen[m]) out.insert(static_cast<RegionMask>(m));
  return out;
}

RegionComponent make_component(const GridFrame& frame, RegionMask mask, std::vector<CellIndex> cells) {
  RegionComponent comp;
  comp.mask = mask;
  comp.frame = frame;
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  comp.cells = std::move(cells);
  comp.area = static_cast<double>(comp.cells.size()) / static_cast<double>(frame.disk_cell_count());
  const int res = frame.resolution;
  for (CellIndex c : comp.cells) {
    const int row = c / res;
    const int col = c % res;
    if (row == 0 || col == 0 || row == res - 1 || col == res - 1) {
      comp.touches_frame = true;
      break;
    }
  }
  comp.contours = cell_set_contours(frame, comp.cells);
  double best = -1.0;
  for (const auto& loop : comp.contours) {
    const double a = signed_area(loop);
    if (a > best) {
      best = a;
      comp.outline = loop;
    }
  }
  return comp;
}

ComponentLabels label_components(const RasterGrid& grid, bool with_contours) {
  const int res = grid.frame.resolution;
  const std::size_t total = grid.cells.size();
  ComponentLabels out;
  out.label_of_cell.assign(total, -1);
  const double disk_cells = static_cast<double>(grid.frame.disk_cell_count());

  std::vector<CellIndex> stack;
  for (std::size_t start = 0; start < total; ++start) {
    if (out.label_of_cell[start] >= 0) continue;
    const RegionMask mask = grid.cells[start];
    const auto label = static_cast<std::int32_t>(out.components.size());
    std::vector<CellIndex> cells;
    stack.push_back(static_cast<CellIndex>(start));
    out.label_of_cell[start] = label;
    while (!stack.empty()) {
      const CellIndex c = stack.back();
      stack.pop_back();
      cells.push_back(c);
      const int row = c / res;
      const int col = c % res;
      const CellIndex nbrs[4] = {col > 0 ? c - 1 : -1, col + 1 < res ? c + 1 : -1,
                                 row > 0 ? c - res : -1, row + 1 < res ? c + res : -1};
      for (CellIndex nb : nbrs) {
        if (nb < 0) continue;
        const auto u = static_cast<std::size_t>(nb);
        if (out.label_of_cell[u] < 0 && grid.cells[u] == mask) {
          out.label_of_cell[u] = label;
          stack.push_back(nb);
        }
      }
    }
    if (with_contours) {
      out.components.push_back(make_component(grid.frame, mask, std::move(cells)));
    } else {
      RegionComponent comp;
      comp.mask = mask;
      comp.frame = grid.frame;
      std::sort(cells.begin(), cells.end());
      comp.cells = std::move(cells);
      comp.area = static_cast<double>(comp.cells.size()) / disk_cells;
      for (CellIndex c : comp.cells) {
        const int row = c / res;
        const int col = c % res;
        if (row == 0 || col == 0 || row == res - 1 || col == res - 1) {
          comp.touches_frame = true;
          break;
        }
      }
      out.components.push_back(std::move(comp));
    }
  }
  return out;
}

std::vector<RegionComponent> extract_components(const RasterGrid& grid) {
  return label_components(grid, true).components;
}

std::string to_string(Tristate t) {
  switch (t) {
    case Tristate::True:
      return "true";
    case Tristate::False:
      return "false";
    case Tristate::Unknown:
      break;
  }
  return "unknown";
}

double default_tiny_threshold(const GridFrame& frame) {
  return 4.0 / static_cast<double>(frame.disk_cell_count());
}

double simplicity_tolerance(const GridFrame& frame) { return 2.0 * frame.cell_size(); }

DiagramReport verify_arrangement(const RasterGrid& grid, std::span<const RegionComponent> components,
                                 std::span<const Polyline> curves, double tiny_threshold) {
  DiagramReport report;
  report.n = grid.n;
  report.resolution = grid.frame.resolution;
  report.tiny_threshold = tiny_threshold;
  const RegionMask masks = RegionMask{1} << grid.n;
  for (RegionMask m = 0; m < masks; ++m) {
    report.components_per_mask[m] = 0;
    report.areas[m] = 0.0;
  }

  std::vector<bool> nonempty(masks, false);
  std::set<RegionMask> outer;
  for (const auto& comp : components) {
    nonempty[comp.mask] = true;
    report.areas[comp.mask] += comp.area;
    if (comp.touches_frame) outer.insert(comp.mask);
    if (comp.area >= tiny_threshold) {
      ++report.components_per_mask[comp.mask];
    } else {
      Point sum;
      for (CellIndex c : comp.cells) sum = sum + comp.frame.cell_center(c);
      const double k = 1.0 / static_cast<double>(comp.cells.size());
      report.tiny_regions.push_back(
          {comp.mask, comp.area, static_cast<std::int64_t>(comp.cells.size()), k * sum});
    }
  }
  report.outer_masks.assign(outer.begin(), outer.end());
  report.is_independent_family = std::all_of(nonempty.begin(), nonempty.end(), [](bool b) { return b; });
  report.is_venn = report.is_independent_family &&
                   std::all_of(report.components_per_mask.begin(), report.components_per_mask.end(),
                               [](const auto& kv) { return kv.second == 1; });
  report.is_simple = check_simple(curves, simplicity_tolerance(grid.frame), grid.frame.extent);
  return report;
}

DiagramReport verify(const CurveSpec& spec, const RasterGrid& grid,
                     std::span<const SampledBoundary> boundaries, std::optional<double> tiny_threshold) {
  if (grid.n != spec.n()) throw ContractViolation("verify: grid was built for a different n");
  if (boundaries.size() != static_cast<std::size_t>(spec.n()))
    throw ContractViolation("verify: expected one sampled boundary per set");
  for (std::size_t i = 0; i < boundaries.size(); ++i) {
    const auto& b = boundaries[i];
    if (b.index != static_cast<int>(i) || b.strip_samples.empty())
      throw ContractViolation("verify: boundaries out of order");
    // Spot-check that the samples came from this spec.
    const std::size_t probes[3] = {0, b.strip_samples.size() / 3, b.strip_samples.size() / 2};
    for (std::size_t k : probes) {
      const auto s = b.strip_samples[k];
      if (std::fabs(shaped_trig(spec, b.index, s.x) - s.f) > 1e-12)
        throw ContractViolation("verify: boundary samples do not match the spec");
    }
  }
  const int res = grid.frame.resolution;
  for (int k = 0; k < 16; ++k) {
    const int row = (k * 7919 + 13) % res;
    const int col = (k * 104729 + 71) % res;
    if (grid.at(row, col) != classify_point(spec, grid.frame.cell_center(row, col)))
      throw ContractViolation("verify: grid cells do not match the spec");
  }

  const auto labels = label_components(grid, false);
  std::vector<Polyline> curves;
  curves.reserve(boundaries.size());
  for (const auto& b : boundaries) curves.push_back(b.projected);
  return verify_arrangement(grid, labels.components, curves,
                            tiny_threshold.value_or(default_tiny_threshold(grid.frame)));
}

AreaStats area_stats(const DiagramReport& report, int bins,
                     std::optional<std::pair<double, double>> log10_range) {
  if (bins < 1) throw ValidationError("area_stats: need at least one histogram bin");
  AreaStats stats;
  const std::set<RegionMask> outer(report.outer_masks.begin(), report.outer_masks.end());
  double total = 0.0;
  for (const auto& [mask, area] : report.areas) {
    if (!(area > 0.0))
      throw ValidationError("area_stats: mask " + mask_to_string(mask, report.n) +
                            " is empty; run verify() and check isIndependentFamily first");
    if (!outer.contains(mask)) total += area;
  }
  std::vector<double> logs;
  for (const auto& [mask, area] : report.areas) {
    if (outer.contains(mask)) continue;
    const double w = area / total;
    stats.weights[mask] = w;
    logs.push_back(std::log10(w));
  }
  if (logs.empty()) throw ValidationError("area_stats: no bounded regions");
  stats.regions = static_cast<int>(logs.size());
  const auto [lo_it, hi_it] = std::minmax_element(logs.begin(), logs.end());
  stats.log10_min = *lo_it;
  stats.log10_max = *hi_it;
  stats.min_weight = std::pow(10.0, stats.log10_min);
  stats.max_weight = std::pow(10.0, stats.log10_max);
  stats.log10_mean = std::accumulate(logs.begin(), logs.end(), 0.0) / static_cast<double>(logs.size());
  double var = 0.0;
  for (double l : logs) var += (l - stats.log10_mean) * (l - stats.log10_mean);
  stats.log10_std = std::sqrt(var / static_cast<double>(logs.size()));

  stats.hist_lo = log10_range ? log10_range->first : stats.log10_min;
  stats.hist_hi = log10_range ? log10_range->second : stats.log10_max;
  stats.histogram.assign(static_cast<std::size_t>(bins), 0);
  const double width = stats.hist_hi - stats.hist_lo;
  for (double l : logs) {
    int b = width > 0.0 ? static_cast<int>(std::floor((l - stats.hist_lo) / width * bins)) : 0;
    b = std::clamp(b, 0, bins - 1);
    ++stats.histogram[static_cast<std::size_t>(b)];
  }
  return stats;
}

}  // namespace vennfan
