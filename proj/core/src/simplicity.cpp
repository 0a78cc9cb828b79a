#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <unordered_map>
#include <utility>

#include "vennfan/regions.hpp"

namespace vennfan {

namespace {

struct CurveSegment {
  int curve;
  Point a;
  Point b;
};

struct Crossing {
  Point at;
  int c1;
  int c2;
};

// Liang-Barsky clip of segment (a, b) to [-e, e]^2.
bool clip_to_box(Point& a, Point& b, double e) {
  double t0 = 0.0, t1 = 1.0;
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double p[4] = {-dx, dx, -dy, dy};
  const double q[4] = {a.x + e, e - a.x, a.y + e, e - a.y};
  for (int k = 0; k < 4; ++k) {
    if (p[k] == 0.0) {
      if (q[k] < 0.0) return false;
      continue;
    }
    const double t = q[k] / p[k];
    if (p[k] < 0.0)
      t0 = std::max(t0, t);
    else
      t1 = std::min(t1, t);
    if (t0 > t1) return false;
  }
  const Point a0 = a;
  a = a0 + t0 * Point{dx, dy};
  b = a0 + t1 * Point{dx, dy};
  return true;
}

enum class Hit { None, Point, Overlap };

// Closed-segment intersection. On Point, `at` receives the location.
Hit intersect(const CurveSegment& s, const CurveSegment& t, Point& at) {
  const Point r = s.b - s.a;
  const Point q = t.b - t.a;
  const double denom = cross(r, q);
  const Point w = t.a - s.a;
  const double scale = std::max({norm(r), norm(q), 1e-300});
  if (std::fabs(denom) <= 1e-14 * scale * scale) {
    // Parallel: overlap only if collinear and the projections intersect.
    if (std::fabs(cross(w, r)) > 1e-14 * scale * scale) return Hit::None;
    const double rr = dot(r, r);
    if (rr == 0.0) return Hit::None;
    double u0 = dot(w, r) / rr;
    double u1 = dot(t.b - s.a, r) / rr;
    if (u0 > u1) std::swap(u0, u1);
    const double lo = std::max(u0, 0.0);
    const double hi = std::min(u1, 1.0);
    if (hi < lo) return Hit::None;
    if (hi - lo <= 1e-12) {
      at = s.a + lo * r;
      return Hit::Point;
    }
    return Hit::Overlap;
  }
  const double u = cross(w, q) / denom;
  const double v = cross(w, r) / denom;
  constexpr double slack = 1e-12;
  if (u < -slack || u > 1.0 + slack || v < -slack || v > 1.0 + slack) return Hit::None;
  at = s.a + u * r;
  return Hit::Point;
}

std::int64_t bucket_key(std::int64_t bx, std::int64_t by) { return (bx << 32) ^ (by & 0xffffffff); }

int find_root(std::vector<int>& parent, int x) {
  while (parent[static_cast<std::size_t>(x)] != x) {
    parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    x = parent[static_cast<std::size_t>(x)];
  }
  return x;
}

}  // namespace

Tristate check_simple(std::span<const Polyline> curves, double tolerance, double extent) {
  std::vector<CurveSegment> segs;
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const Polyline& poly = curves[c];
    for (std::size_t k = 0; k + 1 < poly.size(); ++k) {
      Point a = poly[k];
      Point b = poly[k + 1];
      if (a == b) continue;
      if (!clip_to_box(a, b, extent)) continue;
      segs.push_back({static_cast<int>(c), a, b});
    }
  }

  // Uniform bucket grid; a segment is registered in every bucket its
  // bounding box touches, and a crossing is reported only by the bucket that
  // contains it so each pair is counted once.
  const double cell = std::max(4.0 * tolerance, 2.0 * extent / 1024.0);
  auto bucket_of = [&](double v) { return static_cast<std::int64_t>(std::floor((v + extent) / cell)); };
  std::unordered_map<std::int64_t, std::vector<int>> buckets;
  buckets.reserve(segs.size());
  for (std::size_t k = 0; k < segs.size(); ++k) {
    const auto& s = segs[k];
    const auto x0 = bucket_of(std::min(s.a.x, s.b.x));
    const auto x1 = bucket_of(std::max(s.a.x, s.b.x));
    const auto y0 = bucket_of(std::min(s.a.y, s.b.y));
    const auto y1 = bucket_of(std::max(s.a.y, s.b.y));
    for (auto bx = x0; bx <= x1; ++bx)
      for (auto by = y0; by <= y1; ++by) buckets[bucket_key(bx, by)].push_back(static_cast<int>(k));
  }

  std::vector<std::int64_t> keys;
  keys.reserve(buckets.size());
  for (const auto& kv : buckets) keys.push_back(kv.first);
  std::sort(keys.begin(), keys.end());

  std::vector<Crossing> crossings;
  bool overlap = false;
  for (std::int64_t key : keys) {
    const auto& list = buckets[key];
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto& s = segs[static_cast<std::size_t>(list[i])];
      for (std::size_t j = i + 1; j < list.size(); ++j) {
        const auto& t = segs[static_cast<std::size_t>(list[j])];
        if (s.curve == t.curve) continue;
        Point at;
        const Hit hit = intersect(s, t, at);
        if (hit == Hit::None) continue;
        if (hit == Hit::Overlap) {
          overlap = true;
          continue;
        }
        if (bucket_key(bucket_of(at.x), bucket_of(at.y)) != key) continue;
        crossings.push_back({at, std::min(s.curve, t.curve), std::max(s.curve, t.curve)});
      }
    }
  }

  // Cluster crossings closer than `tolerance` (single linkage).
  const std::size_t m = crossings.size();
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  std::unordered_map<std::int64_t, std::vector<int>> grid;
  auto gkey = [&](double v) { return static_cast<std::int64_t>(std::floor(v / tolerance)); };
  for (std::size_t k = 0; k < m; ++k)
    grid[bucket_key(gkey(crossings[k].at.x), gkey(crossings[k].at.y))].push_back(static_cast<int>(k));
  for (std::size_t k = 0; k < m; ++k) {
    const auto gx = gkey(crossings[k].at.x);
    const auto gy = gkey(crossings[k].at.y);
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        auto it = grid.find(bucket_key(gx + dx, gy + dy));
        if (it == grid.end()) continue;
        for (int other : it->second) {
          if (distance(crossings[k].at, crossings[static_cast<std::size_t>(other)].at) <= tolerance) {
            const int ra = find_root(parent, static_cast<int>(k));
            const int rb = find_root(parent, other);
            if (ra != rb) parent[static_cast<std::size_t>(std::max(ra, rb))] = std::min(ra, rb);
          }
        }
      }
    }
  }

  std::unordered_map<int, std::set<std::pair<int, int>>> pairs_by_cluster;
  for (std::size_t k = 0; k < m; ++k)
    pairs_by_cluster[find_root(parent, static_cast<int>(k))].insert({crossings[k].c1, crossings[k].c2});

  bool ambiguous = overlap;
  for (const auto& [root, pairs] : pairs_by_cluster) {
    std::set<int> members;
    for (const auto& [a, b] : pairs) {
      members.insert(a);
      members.insert(b);
    }
    if (members.size() < 3) continue;
    // A genuine triple point shows up as all three pairwise crossings.
    for (const auto& [a, b] : pairs) {
      for (int c : members) {
        if (c == a || c == b) continue;
        if (pairs.contains({std::min(a, c), std::max(a, c)}) &&
            pairs.contains({std::min(b, c), std::max(b, c)}))
          return Tristate::False;
      }
    }
    ambiguous = true;
  }
  return ambiguous ? Tristate::Unknown : Tristate::True;
}

}  // namespace vennfan
