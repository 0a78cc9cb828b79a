#include <doctest.h>

#include <cmath>
#include <map>

#include "vennfan/edwards.hpp"
#include "vennfan/regions.hpp"

using namespace vennfan;
using doctest::Approx;

namespace {

double len(Vec3 v) { return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z); }

// Circle through three points.
std::pair<Point, double> circumcircle(Point a, Point b, Point c) {
  const double d = 2 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
  const double a2 = dot(a, a), b2 = dot(b, b), c2 = dot(c, c);
  const Point o{(a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d,
                (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d};
  return {o, distance(o, a)};
}

}  // namespace

TEST_CASE("cogwheel construction") {
  CHECK(default_sides_schedule(6) == std::vector<int>{4, 8, 16});
  const auto d = build_cogwheel(6);
  REQUIRE(d.curves.size() == 6);
  for (const auto& c : d.curves) {
    CHECK(chain_gap(c) < 1e-12);
    for (const auto& arc : c.arcs)
      for (double s : {0.0, 0.3, 0.7, 1.0}) CHECK(len(arc.point(arc.t_start + s * (arc.t_end - arc.t_start))) == Approx(1.0));
  }
  CHECK(d.curves[3].arcs.size() == 4);
  CHECK(d.curves[5].arcs.size() == 16);
  // Cogwheel arcs alternate hemispheres.
  const auto& wheel = d.curves[4];
  for (std::size_t m = 0; m < wheel.arcs.size(); ++m) {
    const auto& arc = wheel.arcs[m];
    const Vec3 mid = arc.point(0.5 * (arc.t_start + arc.t_end));
    CHECK((mid.z > 0) == (m % 2 == 0));
  }
  CHECK_THROWS_AS(build_cogwheel(2), ValidationError);
  CHECK_THROWS_AS(build_cogwheel(5, {4}), ValidationError);
  CHECK_THROWS_AS(build_cogwheel(5, {4, 6}), ValidationError);
}

TEST_CASE("stereographic map") {
  const StereographicMap north({0, 0, 1}, 1.0, false);
  const Point p = north({1, 0, 0});
  CHECK(p.x == Approx(2.0));
  CHECK(p.y == Approx(0.0));
  const Point south_pole = north({0, 0, -1});
  CHECK(norm(south_pole) == Approx(0.0));
  const Point q = north({0, std::sqrt(0.5), -std::sqrt(0.5)});
  CHECK(q.y == Approx(2 * std::sqrt(0.5) / (1 + std::sqrt(0.5))));
  const StereographicMap mirrored({0, 0, 1}, 1.0, true);
  CHECK(mirrored({1, 0, 0}).x == Approx(-2.0));
}

TEST_CASE("projected arcs are circular") {
  const auto d = build_cogwheel(5);
  const auto proj = stereographic_project(d, 64);
  CHECK(proj.pole_tilt == Approx(kPoleTilt));
  REQUIRE(proj.curves.size() == 5);
  // Curve 3 has 4 arcs of 64 intervals each: every arc lies on one circle.
  const auto& curve = proj.curves[3];
  for (int arc = 0; arc < 4; ++arc) {
    const std::size_t base = static_cast<std::size_t>(arc) * 64;
    const auto [o, r] = circumcircle(curve[base], curve[base + 31], curve[base + 64]);
    for (std::size_t k = base; k <= base + 64; k += 5) CHECK(distance(curve[k], o) == Approx(r).epsilon(1e-7));
  }
  double reach = 0;
  for (std::size_t i = 0; i < proj.curves.size(); ++i) {
    if (i == 1 || i == 2) continue;
    for (const auto& pt : proj.curves[i]) reach = std::max(reach, norm(pt));
  }
  CHECK(reach == Approx(2.0));
}

TEST_CASE("equatorial projection stays in the unit disk") {
  for (const auto& c : equatorial_project(build_cogwheel(5, {}, Pole::South), 32))
    for (const auto& p : c) CHECK(norm(p) <= 1.0 + 1e-12);
}

TEST_CASE("stereographic cogwheel census") {
  for (Pole pole : {Pole::North, Pole::South}) {
    const auto proj = stereographic_project(build_cogwheel(4, {}, pole), 128);
    const auto grid = rasterize_even_odd(proj.curves, 1024);
    const auto comps = label_components(grid, false).components;
    const auto report = verify_arrangement(grid, comps, proj.curves, default_tiny_threshold(grid.frame));
    CHECK(report.is_independent_family);
    CHECK(report.is_venn);
  }
}
