#pragma once

#include <vector>

#include "vennfan/geometry.hpp"

namespace vennfan {

/// Arc of the circle where the sphere meets a plane with unit normal `axis`
/// at distance cos(angular_radius) from the center:
/// point(t) = cos(r) axis + sin(r) (cos t u + sin t v), t from t_start to t_end.
struct SphericalArc {
  Vec3 axis;
  double angular_radius = 0.0;
  Vec3 u;
  Vec3 v;
  double t_start = 0.0;
  double t_end = 0.0;

  Vec3 point(double t) const;
  Vec3 start() const { return point(t_start); }
  Vec3 end() const { return point(t_end); }
};

struct SphericalCurve {
  int index = 0;
  std::vector<SphericalArc> arcs;
};

enum class Pole { North, South };

struct CogwheelDiagram {
  int n = 0;
  /// 0: equator, 1: longitude in the xz-plane, 2: longitude in the yz-plane,
  /// 3+: cogwheels in schedule order.
  std::vector<SphericalCurve> curves;
  std::vector<int> sides_schedule;
  Pole pole = Pole::North;
  /// Distance of the projection plane from the sphere center (1 = tangent at
  /// the opposite pole).
  double plane_offset = 1.0;
};

/// [4, 8, 16, ...]: 2^(j+2) sides for cogwheel j.
std::vector<int> default_sides_schedule(int n);

/// Equator, two orthogonal longitudes, then one cogwheel per schedule entry:
/// a regular K-gonal prism inscribed in the equator cuts K circles through
/// adjacent vertices; northern and southern semicircles alternate around the
/// polygon. Throws ValidationError if n < 3, the schedule has the wrong
/// length, or an entry is not a power of two >= 2. Ordering is not enforced
/// so that bad schedules can be examined by the region census.
CogwheelDiagram build_cogwheel(int n, std::vector<int> sides_schedule = {}, Pole pole = Pole::North);

/// Closed chain of points along a curve, `samples_per_arc` intervals per arc.
std::vector<Vec3> sample_curve(const SphericalCurve& curve, int samples_per_arc);

/// Largest chaining gap between consecutive arcs (including last to first).
double chain_gap(const SphericalCurve& curve);

/// Orthogonal projection (x, y, z) -> (x, y).
std::vector<Polyline> equatorial_project(const CogwheelDiagram& diagram, int samples_per_arc);

inline constexpr double kPoleTilt = 1e-3;

/// Stereographic map from a (possibly tilted) pole onto the plane at
/// plane_offset on the far side of the sphere.
class StereographicMap {
 public:
  StereographicMap(Vec3 pole, double plane_offset, bool mirror);

  Point operator()(Vec3 p) const;
  Vec3 pole() const { return pole_; }

 private:
  Vec3 pole_;
  // Rows of the rotation taking pole_ to +z.
  Vec3 r0_, r1_, r2_;
  double plane_offset_;
  bool mirror_;
};

struct ProjectedCogwheel {
  std::vector<Polyline> curves;
  Vec3 pole;
  /// Angle the projection pole was tilted by to avoid the longitudes (0 if
  /// no curve passed through the nominal pole).
  double pole_tilt = 0.0;
  /// Uniform factor applied after projection so that every curve except the
  /// two longitudes lies within radius 2.
  double scale = 1.0;
};

/// North pole projects onto the plane below; South projects onto the plane
/// above and mirrors x so the result reads like the north-pole view turned
/// inside out. Throws ValidationError if a curve still passes through the
/// pole after tilting.
ProjectedCogwheel stereographic_project(const CogwheelDiagram& diagram, int samples_per_arc);

}  // namespace vennfan
