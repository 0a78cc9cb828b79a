#include "vennfan/edwards.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vennfan/errors.hpp"

namespace vennfan {

namespace {

bool is_power_of_two(int k) { return k >= 2 && (k & (k - 1)) == 0; }

SphericalArc great_circle(Vec3 normal, Vec3 u) {
  return {normal, kPi / 2.0, u, cross(normal, u), 0.0, 2.0 * kPi};
}

// Closest approach of any circle of the diagram to a point, in the sense of
// |dot(p, axis) - cos(r)| (zero iff p lies on the full circle).
double circle_miss(const CogwheelDiagram& d, Vec3 p) {
  double best = 1e300;
  for (const auto& c : d.curves)
    for (const auto& a : c.arcs) best = std::min(best, std::fabs(dot(p, a.axis) - std::cos(a.angular_radius)));
  return best;
}

}  // namespace

Vec3 SphericalArc::point(double t) const {
  const double cr = std::cos(angular_radius);
  const double sr = std::sin(angular_radius);
  return cr * axis + sr * (std::cos(t) * u + std::sin(t) * v);
}

std::vector<int> default_sides_schedule(int n) {
  std::vector<int> out;
  for (int j = 0; j + 3 < n; ++j) out.push_back(1 << (j + 2));
  return out;
}

CogwheelDiagram build_cogwheel(int n, std::vector<int> sides_schedule, Pole pole) {
  if (n < 3) throw ValidationError("build_cogwheel: n must be at least 3");
  if (n > 16) throw ValidationError("build_cogwheel: n must be at most 16");
  if (sides_schedule.empty()) sides_schedule = default_sides_schedule(n);
  if (static_cast<int>(sides_schedule.size()) != n - 3)
    throw ValidationError("build_cogwheel: sides schedule needs n - 3 = " + std::to_string(n - 3) +
                          " entries");
  for (int k : sides_schedule)
    if (!is_power_of_two(k))
      throw ValidationError("build_cogwheel: schedule entry " + std::to_string(k) + " is not a power of two");

  CogwheelDiagram d;
  d.n = n;
  d.sides_schedule = sides_schedule;
  d.pole = pole;
  d.curves.push_back({0, {great_circle({0, 0, 1}, {1, 0, 0})}});
  d.curves.push_back({1, {great_circle({0, 1, 0}, {0, 0, 1})}});
  d.curves.push_back({2, {great_circle({1, 0, 0}, {0, 1, 0})}});

  for (std::size_t j = 0; j < sides_schedule.size(); ++j) {
    const int sides = sides_schedule[j];
    const double half = kPi / sides;
    SphericalCurve curve;
    curve.index = static_cast<int>(3 + j);
    for (int m = 0; m < sides; ++m) {
      // Face m faces azimuth 2 pi m / K; its circle runs through the equator
      // vertices at azimuths (2m -+ 1) pi / K.
      const double phi = 2.0 * kPi * m / sides;
      SphericalArc arc;
      arc.axis = {std::cos(phi), std::sin(phi), 0.0};
      arc.angular_radius = half;
      arc.u = {-std::sin(phi), std::cos(phi), 0.0};
      arc.v = {0.0, 0.0, 1.0};
      arc.t_start = kPi;
      arc.t_end = m % 2 == 0 ? 0.0 : 2.0 * kPi;  // north, then south
      curve.arcs.push_back(arc);
    }
    d.curves.push_back(std::move(curve));
  }
  return d;
}

std::vector<Vec3> sample_curve(const SphericalCurve& curve, int samples_per_arc) {
  if (samples_per_arc < 2) throw ValidationError("sample_curve: need at least 2 samples per arc");
  std::vector<Vec3> out;
  for (const auto& arc : curve.arcs) {
    for (int k = 0; k < samples_per_arc; ++k) {
      const double t = arc.t_start + (arc.t_end - arc.t_start) * k / samples_per_arc;
      out.push_back(arc.point(t));
    }
  }
  out.push_back(curve.arcs.front().start());
  return out;
}

double chain_gap(const SphericalCurve& curve) {
  double gap = 0.0;
  const std::size_t m = curve.arcs.size();
  for (std::size_t k = 0; k < m; ++k)
    gap = std::max(gap, norm(curve.arcs[k].end() - curve.arcs[(k + 1) % m].start()));
  return gap;
}

std::vector<Polyline> equatorial_project(const CogwheelDiagram& diagram, int samples_per_arc) {
  std::vector<Polyline> out;
  for (const auto& curve : diagram.curves) {
    Polyline poly;
    for (const Vec3& p : sample_curve(curve, samples_per_arc)) poly.push_back({p.x, p.y});
    poly.back() = poly.front();
    out.push_back(std::move(poly));
  }
  return out;
}

StereographicMap::StereographicMap(Vec3 pole, double plane_offset, bool mirror)
    : pole_(normalized(pole)), plane_offset_(plane_offset), mirror_(mirror) {
  // Rodrigues rotation taking pole_ onto +z.
  const Vec3 ez{0, 0, 1};
  Vec3 axis = cross(pole_, ez);
  const double s = norm(axis);
  const double c = dot(pole_, ez);
  if (s < 1e-15) {
    const double sign = c > 0 ? 1.0 : -1.0;
    // Antipodal case: rotate by pi about the x-axis.
    r0_ = {1, 0, 0};
    r1_ = {0, sign, 0};
    r2_ = {0, 0, sign};
    return;
  }
  axis = (1.0 / s) * axis;
  const double t = 1.0 - c;
  const double x = axis.x, y = axis.y, z = axis.z;
  r0_ = {c + x * x * t, x * y * t - z * s, x * z * t + y * s};
  r1_ = {y * x * t + z * s, c + y * y * t, y * z * t - x * s};
  r2_ = {z * x * t - y * s, z * y * t + x * s, c + z * z * t};
}

Point StereographicMap::operator()(Vec3 p) const {
  const Vec3 q{dot(r0_, p), dot(r1_, p), dot(r2_, p)};
  const double k = (1.0 + plane_offset_) / (1.0 - q.z);
  Point out{k * q.x, k * q.y};
  if (mirror_) out.x = -out.x;
  return out;
}

ProjectedCogwheel stereographic_project(const CogwheelDiagram& diagram, int samples_per_arc) {
  ProjectedCogwheel out;
  const double sign = diagram.pole == Pole::North ? 1.0 : -1.0;
  Vec3 pole{0, 0, sign};
  if (circle_miss(diagram, pole) < 1e-9) {
    // Tilt toward azimuth pi/4, between the two longitudes.
    const double t = kPoleTilt;
    pole = {std::sin(t) * std::cos(kPi / 4), std::sin(t) * std::sin(kPi / 4), sign * std::cos(t)};
    out.pole_tilt = t;
    if (circle_miss(diagram, pole) < 1e-9)
      throw ValidationError("stereographic_project: a curve passes through the tilted pole");
  }
  out.pole = pole;
  const StereographicMap map(pole, diagram.plane_offset, diagram.pole == Pole::South);
  for (const auto& curve : diagram.curves) {
    Polyline poly;
    for (const Vec3& p : sample_curve(curve, samples_per_arc)) poly.push_back(map(p));
    poly.back() = poly.front();
    out.curves.push_back(std::move(poly));
  }
  double reach = 0.0;
  for (std::size_t c = 0; c < out.curves.size(); ++c) {
    if (c == 1 || c == 2) continue;
    for (const Point& p : out.curves[c]) reach = std::max(reach, norm(p));
  }
  out.scale = reach > 0.0 ? 2.0 / reach : 1.0;
  for (auto& poly : out.curves)
    for (Point& p : poly) p = out.scale * p;
  return out;
}

}  // namespace vennfan
