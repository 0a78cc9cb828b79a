#include "vennfan/labels.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace vennfan {

namespace {

// Component cells on a local bitmap over the bounding box padded by one
// non-member cell on every side.
struct LocalMask {
  GridFrame frame;
  int row0 = 0;
  int col0 = 0;
  int H = 0;
  int W = 0;
  std::vector<std::uint8_t> in;

  explicit LocalMask(const RegionComponent& comp) : frame(comp.frame) {
    const int res = frame.resolution;
    int rmin = res, rmax = -1, cmin = res, cmax = -1;
    for (CellIndex c : comp.cells) {
      rmin = std::min(rmin, c / res);
      rmax = std::max(rmax, c / res);
      cmin = std::min(cmin, c % res);
      cmax = std::max(cmax, c % res);
    }
    row0 = rmin - 1;
    col0 = cmin - 1;
    H = rmax - rmin + 3;
    W = cmax - cmin + 3;
    in.assign(static_cast<std::size_t>(H) * W, 0);
    for (CellIndex c : comp.cells) in[idx(c / res - row0, c % res - col0)] = 1;
  }

  std::size_t idx(int r, int c) const { return static_cast<std::size_t>(r) * W + c; }
  bool at(int r, int c) const { return r >= 0 && c >= 0 && r < H && c < W && in[idx(r, c)] != 0; }
  CellIndex global(int r, int c) const { return frame.index(r + row0, c + col0); }

  // Position in local cell units: cell (r, c) spans [c, c+1) x [r, r+1).
  double u_of(double x) const { return (x + frame.extent) / frame.cell_size() - col0; }
  double v_of(double y) const { return (y + frame.extent) / frame.cell_size() - row0; }
};

// Felzenszwalb-Huttenlocher lower envelope of parabolas. Every column and
// row of a padded LocalMask contains a non-member, so kFar never survives.
constexpr double kFar = 1e20;

void edt_1d(const std::vector<double>& f, std::vector<double>& d, std::vector<int>& v,
            std::vector<double>& z) {
  const int n = static_cast<int>(f.size());
  auto at = [](const auto& vec, int i) { return vec[static_cast<std::size_t>(i)]; };
  auto intersect = [&](int q, int p) {
    return ((at(f, q) + double(q) * q) - (at(f, p) + double(p) * p)) / (2.0 * q - 2.0 * p);
  };
  int k = 0;
  v[0] = 0;
  z[0] = -std::numeric_limits<double>::infinity();
  z[1] = std::numeric_limits<double>::infinity();
  for (int q = 1; q < n; ++q) {
    double s = intersect(q, at(v, k));
    while (s <= at(z, k)) {
      --k;
      s = intersect(q, at(v, k));
    }
    ++k;
    v[static_cast<std::size_t>(k)] = q;
    z[static_cast<std::size_t>(k)] = s;
    z[static_cast<std::size_t>(k) + 1] = std::numeric_limits<double>::infinity();
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (at(z, k + 1) < q) ++k;
    const int p = at(v, k);
    d[static_cast<std::size_t>(q)] = double(q - p) * (q - p) + at(f, p);
  }
}

// Squared distance (in cells) from every local cell to the nearest non-member.
std::vector<double> squared_edt(const LocalMask& m) {
  std::vector<double> g(m.in.size());
  for (std::size_t k = 0; k < m.in.size(); ++k) g[k] = m.in[k] ? kFar : 0.0;
  const int longest = std::max(m.H, m.W);
  std::vector<double> f(static_cast<std::size_t>(longest)), d(static_cast<std::size_t>(longest));
  std::vector<int> v(static_cast<std::size_t>(longest));
  std::vector<double> z(static_cast<std::size_t>(longest) + 1);
  for (int c = 0; c < m.W; ++c) {
    f.resize(static_cast<std::size_t>(m.H));
    d.resize(static_cast<std::size_t>(m.H));
    for (int r = 0; r < m.H; ++r) f[static_cast<std::size_t>(r)] = g[m.idx(r, c)];
    edt_1d(f, d, v, z);
    for (int r = 0; r < m.H; ++r) g[m.idx(r, c)] = d[static_cast<std::size_t>(r)];
  }
  for (int r = 0; r < m.H; ++r) {
    f.resize(static_cast<std::size_t>(m.W));
    d.resize(static_cast<std::size_t>(m.W));
    for (int c = 0; c < m.W; ++c) f[static_cast<std::size_t>(c)] = g[m.idx(r, c)];
    edt_1d(f, d, v, z);
    for (int c = 0; c < m.W; ++c) g[m.idx(r, c)] = d[static_cast<std::size_t>(c)];
  }
  return g;
}

// Distance (cell units) a ray from (u, v) travels before entering a
// non-member cell.
double ray_exit(const LocalMask& m, double u, double v, double dx, double dy) {
  int cx = static_cast<int>(std::floor(u));
  int cy = static_cast<int>(std::floor(v));
  if (!m.at(cy, cx)) return 0.0;
  constexpr double inf = std::numeric_limits<double>::infinity();
  const int sx = dx > 0 ? 1 : -1;
  const int sy = dy > 0 ? 1 : -1;
  double tmax_x = dx > 0 ? (cx + 1 - u) / dx : dx < 0 ? (u - cx) / -dx : inf;
  double tmax_y = dy > 0 ? (cy + 1 - v) / dy : dy < 0 ? (v - cy) / -dy : inf;
  const double tdx = dx != 0 ? 1.0 / std::fabs(dx) : inf;
  const double tdy = dy != 0 ? 1.0 / std::fabs(dy) : inf;
  while (true) {
    double t;
    if (tmax_x <= tmax_y) {
      cx += sx;
      t = tmax_x;
      tmax_x += tdx;
    } else {
      cy += sy;
      t = tmax_y;
      tmax_y += tdy;
    }
    if (!m.at(cy, cx)) return t;
  }
}

}  // namespace

GrayOrder gray_order(int n) {
  if (n < 1 || n > 24) throw ValidationError("gray_order: n must lie in [1, 24]");
  GrayOrder order;
  order.n = n;
  const std::uint32_t count = std::uint32_t{1} << n;
  order.sequence.reserve(count);
  for (std::uint32_t k = 0; k < count; ++k) {
    const std::uint32_t g = k ^ (k >> 1);
    // Bit n-1-i of the code (MSB first) belongs to set i.
    RegionMask m = 0;
    for (int i = 0; i < n; ++i)
      if (g >> (n - 1 - i) & 1u) m |= RegionMask{1} << i;
    order.sequence.push_back(m);
  }
  return order;
}

std::vector<RegionMask> sign_interval_masks(Variant variant, int n) {
  if (n < 1 || n > 24) throw ValidationError("sign_interval_masks: n must lie in [1, 24]");
  const auto [lo, hi] = strip_domain(variant);
  const std::uint32_t count = std::uint32_t{1} << n;
  std::vector<RegionMask> out;
  out.reserve(count);
  for (std::uint32_t j = 0; j < count; ++j) {
    const double x = lo + (j + 0.5) * (hi - lo) / count;
    RegionMask m = 0;
    for (int i = 0; i < n; ++i)
      if (trig_term(variant, i, x) > 0.0) m |= RegionMask{1} << i;
    out.push_back(m);
  }
  return out;
}

Point RadialAnchor::point() const { return {radius * std::cos(angle), radius * std::sin(angle)}; }

std::map<RegionMask, RadialAnchor> radial_anchors(Variant variant, int n) {
  const auto masks = sign_interval_masks(variant, n);
  const auto [lo, hi] = strip_domain(variant);
  const double width = (hi - lo) / static_cast<double>(masks.size());
  std::map<RegionMask, RadialAnchor> out;
  for (std::size_t j = 0; j < masks.size(); ++j) {
    double theta = theta_of_x(variant, lo + (static_cast<double>(j) + 0.5) * width);
    if (theta > kPi) theta -= 2.0 * kPi;
    out[masks[j]] = RadialAnchor{theta, kRadialLabelRadius};
  }
  return out;
}

std::map<RegionMask, RadialAnchor> radial_anchors(const CurveSpec& spec) {
  return radial_anchors(spec.variant(), spec.n());
}

double radial_slot_width(int n) { return kRadialLabelRadius * 2.0 * kPi / std::ldexp(1.0, n); }

Point centroid(const RegionComponent& component) {
  if (component.cells.empty()) throw ContractViolation("centroid: empty component");
  double sx = 0.0, sy = 0.0;
  for (CellIndex c : component.cells) {
    const Point p = component.frame.cell_center(c);
    sx += p.x;
    sy += p.y;
  }
  const double k = 1.0 / static_cast<double>(component.cells.size());
  return {sx * k, sy * k};
}

VisualCenter visual_center(const RegionComponent& component) {
  if (component.cells.empty()) throw ContractViolation("visual_center: empty component");
  const LocalMask m(component);
  const auto d2 = squared_edt(m);
  const int res = component.frame.resolution;
  double best = -1.0;
  CellIndex best_cell = -1;
  for (CellIndex c : component.cells) {  // sorted: row-major from the bottom row
    const double v = d2[m.idx(c / res - m.row0, c % res - m.col0)];
    if (v > best) {
      best = v;
      best_cell = c;
    }
  }
  VisualCenter out;
  out.cell = best_cell;
  out.point = component.frame.cell_center(best_cell);
  out.clearance = (std::sqrt(best) - 0.5) * component.frame.cell_size();
  return out;
}

RegionComponent erode_to_fraction(const RegionComponent& component, double fraction) {
  if (component.cells.empty()) throw ContractViolation("erode_to_fraction: empty component");
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw ValidationError("erode_to_fraction: fraction must lie in (0, 1]");
  LocalMask m(component);
  const double target = fraction * static_cast<double>(component.cells.size());
  std::size_t count = component.cells.size();
  std::vector<std::uint8_t> next(m.in.size());
  bool changed = false;
  while (static_cast<double>(count) > target) {
    std::size_t survivors = 0;
    std::fill(next.begin(), next.end(), 0);
    for (int r = 1; r + 1 < m.H; ++r) {
      for (int c = 1; c + 1 < m.W; ++c) {
        if (m.in[m.idx(r, c)] && m.at(r - 1, c) && m.at(r + 1, c) && m.at(r, c - 1) && m.at(r, c + 1)) {
          next[m.idx(r, c)] = 1;
          ++survivors;
        }
      }
    }
    if (survivors == 0) break;
    m.in.swap(next);
    count = survivors;
    changed = true;
  }
  if (!changed) return component;
  std::vector<CellIndex> cells;
  cells.reserve(count);
  for (int r = 0; r < m.H; ++r)
    for (int c = 0; c < m.W; ++c)
      if (m.in[m.idx(r, c)]) cells.push_back(m.global(r, c));
  return make_component(component.frame, component.mask, std::move(cells));
}

double upright_degrees(double deg) {
  double d = std::fmod(deg, 180.0);
  if (d <= -90.0) d += 180.0;
  if (d > 90.0) d -= 180.0;
  return d;
}

Chord longest_segment(const RegionComponent& component, Point anchor, int directions) {
  if (component.cells.empty()) throw ContractViolation("longest_segment: empty component");
  if (directions < 8) throw ValidationError("longest_segment: directions must be at least 8");
  const LocalMask m(component);
  const double u = m.u_of(anchor.x);
  const double v = m.v_of(anchor.y);
  if (!m.at(static_cast<int>(std::floor(v)), static_cast<int>(std::floor(u))))
    throw ContractViolation("longest_segment: anchor lies outside the component");
  const double h = component.frame.cell_size();
  // Keep endpoints a hair inside the last member cell.
  constexpr double kInset = 1e-7;

  Chord best;
  double best_len = -1.0;
  for (int k = 0; k < directions; ++k) {
    const double a = kPi * k / directions;
    const double dx = std::cos(a);
    const double dy = std::sin(a);
    const double fwd = std::max(0.0, ray_exit(m, u, v, dx, dy) - kInset);
    const double back = std::max(0.0, ray_exit(m, u, v, -dx, -dy) - kInset);
    const double len = (fwd + back) * h;
    if (len > best_len + 1e-12) {
      best_len = len;
      best.p1 = {anchor.x - back * h * dx, anchor.y - back * h * dy};
      best.p2 = {anchor.x + fwd * h * dx, anchor.y + fwd * h * dy};
      best.angle_deg = upright_degrees(a * 180.0 / kPi);
    }
  }
  return best;
}

std::string to_string(LabelStrategy s) {
  switch (s) {
    case LabelStrategy::Radial:
      return "radial";
    case LabelStrategy::VisualCenter:
      return "visual-center";
    case LabelStrategy::Segment:
      break;
  }
  return "segment";
}

LabelPlan plan_labels(std::span<const RegionComponent> components, Variant variant, int n,
                      const LabelConfig& config) {
  LabelPlan plan;
  plan.n = n;
  std::map<RegionMask, const RegionComponent*> primary;
  for (const auto& comp : components) {
    auto& slot = primary[comp.mask];
    if (slot == nullptr || comp.cells.size() > slot->cells.size()) slot = &comp;
  }
  const auto ring = radial_anchors(variant, n);
  const double slot_width = radial_slot_width(n);

  for (const auto& [mask, comp] : primary) {
    auto radial = [&, mask = mask] {
      const RadialAnchor a = ring.at(mask);
      LabelEntry e;
      e.anchor = a.point();
      e.rotation_deg = upright_degrees(a.angle * 180.0 / kPi);
      e.strategy = LabelStrategy::Radial;
      e.max_chord = slot_width;
      return e;
    };
    if (config.mode == LabelMode::Radial || comp->touches_frame) {
      plan.entries[mask] = radial();
      continue;
    }
    const VisualCenter vc = visual_center(*comp);
    if (config.mode == LabelMode::VisualCenter) {
      plan.entries[mask] = {vc.point, 0.0, LabelStrategy::VisualCenter, 2.0 * vc.clearance, vc.clearance};
      continue;
    }
    if (vc.clearance < config.min_clearance) {
      plan.entries[mask] = radial();
      continue;
    }
    const RegionComponent eroded = erode_to_fraction(*comp, config.erosion_fraction);
    const VisualCenter core = visual_center(eroded);
    const Chord chord = longest_segment(eroded, core.point, config.directions);
    if (chord.length() < comp->frame.cell_size()) {
      plan.entries[mask] = {vc.point, 0.0, LabelStrategy::VisualCenter, 2.0 * vc.clearance, vc.clearance};
      continue;
    }
    plan.entries[mask] = {chord.midpoint(), chord.angle_deg, LabelStrategy::Segment, chord.length(),
                          vc.clearance};
  }
  return plan;
}

std::string to_json(const LabelPlan& plan) {
  nlohmann::ordered_json j;
  j["n"] = plan.n;
  nlohmann::ordered_json labels = nlohmann::ordered_json::array();
  for (const auto& [mask, e] : plan.entries) {
    labels.push_back({{"mask", mask_to_string(mask, plan.n)},
                      {"anchor", {e.anchor.x, e.anchor.y}},
                      {"rotationDeg", e.rotation_deg},
                      {"strategy", to_string(e.strategy)},
                      {"maxChord", e.max_chord}});
  }
  j["labels"] = std::move(labels);
  return j.dump(2) + "\n";
}

}  // namespace vennfan
