#include <doctest.h>

#include <cmath>

#include "vennfan/curves.hpp"

using namespace vennfan;
using doctest::Approx;

TEST_CASE("decay schemes match hand-computed amplitudes") {
  SUBCASE("smith") {
    for (int i = 0; i < 5; ++i) CHECK(decay_value(SmithExponential{}, i, 5) == std::ldexp(1.0, -i));
  }
  SUBCASE("linear") {
    const double want[] = {0.75, 0.5, 0.25, 0.0};
    for (int i = 0; i < 4; ++i) CHECK(decay_value(Linear{}, i, 4) == Approx(want[i]));
  }
  SUBCASE("modified exponential, eps guard") {
    const ModifiedExponential e{0.5, 0.0};
    CHECK(decay_value(e, 0, 3) == Approx(std::pow(0.5, 1e-3)));
    CHECK(decay_value(e, 1, 3) == Approx(std::pow(0.5, 1.001)));
    CHECK(decay_value(e, 2, 3) == 0.0);
    CHECK(decay_value(e, 0, 3) < 1.0);
    CHECK(decay_value(ModifiedExponential{0.8, 0.5}, 1, 4) == Approx(std::pow(0.8, 1.5)));
  }
  SUBCASE("modified linear") {
    const ModifiedLinear m{0.25, 0.125};
    CHECK(decay_value(m, 0, 4) == Approx(0.875));
    CHECK(decay_value(m, 1, 4) == Approx((0.875 + 0.25) / 2));
    CHECK(decay_value(m, 2, 4) == Approx(0.25));
    CHECK(decay_value(m, 3, 4) == 0.0);
    CHECK(decay_value(m, 0, 2) == Approx(0.875));
    CHECK(decay_value(m, 1, 2) == 0.0);
  }
}

TEST_CASE("decay and spec validation") {
  CHECK_THROWS_AS(validate_decay(ModifiedExponential{0.4, 0.0}, 4), ValidationError);
  CHECK_THROWS_AS(validate_decay(ModifiedExponential{1.0, 0.0}, 4), ValidationError);
  CHECK_THROWS_AS(validate_decay(ModifiedExponential{0.8, -0.1}, 4), ValidationError);
  CHECK_THROWS_AS(validate_decay(ModifiedLinear{0.6, 0.5}, 4), ValidationError);
  CHECK_NOTHROW(validate_decay(ModifiedLinear{0.6, 0.5}, 2));
  CHECK_THROWS_AS(CurveSpec(Variant::Sine, 1, 0.5, Linear{}), ValidationError);
  CHECK_THROWS_AS(CurveSpec(Variant::Sine, 17, 0.5, Linear{}), ValidationError);
  CHECK_THROWS_AS(CurveSpec(Variant::Sine, 4, 0.0, Linear{}), ValidationError);
  const CurveSpec smith(Variant::Sine, 4, 1.0, SmithExponential{});
  CHECK(unprojectable_indices(smith) == std::vector<int>{0});
  CHECK_THROWS_AS(require_projectable(smith), ValidationError);
  CHECK_THROWS_AS(sample_boundary(smith, 0), ValidationError);
}

TEST_CASE("shaped trigonometric terms") {
  const CurveSpec sine(Variant::Sine, 3, 0.5, Linear{});
  CHECK(shaped_trig(sine, 1, kPi / 4) == Approx(sine.amplitude(1)));
  CHECK(shaped_trig(sine, 0, -kPi / 2) == Approx(-sine.amplitude(0)));
  CHECK(shaped_trig(sine, 0, kPi / 6) == Approx(sine.amplitude(0) * std::sqrt(0.5)));
  CHECK(shape(-0.25, 0.5) == Approx(-0.5));

  const CurveSpec cosine(Variant::Cosine, 3, 1.0, Linear{});
  CHECK(trig_term(Variant::Cosine, 0, 2 * kPi) == Approx(std::cos(kPi)));
  CHECK(trig_term(Variant::Cosine, 2, 2 * kPi + kPi / 4) == Approx(std::cos(kPi / 2 + 4 * kPi)).epsilon(1e-9));
  CHECK(theta_of_x(Variant::Cosine, 3 * kPi) == Approx(kPi));
  CHECK(x_of_theta(Variant::Cosine, -kPi / 2) == Approx(3.5 * kPi));
  CHECK(x_of_theta(Variant::Sine, 0.3) == Approx(0.3));
}

TEST_CASE("trig zeros are exact so tiny exponents do not amplify noise") {
  const CurveSpec spec(Variant::Sine, 4, 1e-3, ModifiedExponential{5.0 / 6, 0.0});
  for (int i = 0; i < 3; ++i) {
    CHECK(trig_term(Variant::Sine, i, kPi) == 0.0);
    CHECK(shaped_trig(spec, i, kPi) == 0.0);
    CHECK(shaped_trig(spec, i, 0.0) == 0.0);
  }
  // Away from zeros the shaping pushes values toward +-lambda.
  CHECK(shaped_trig(spec, 0, 0.01) == Approx(spec.amplitude(0)).epsilon(0.01));
}

TEST_CASE("sampled boundaries") {
  const CurveSpec spec(Variant::Cosine, 4, 0.2, ModifiedLinear{0.25, 1.0 / 7});
  CHECK(strip_intervals(spec, 64) == 64 * 16);
  const auto all = sample_boundaries(spec);
  REQUIRE(all.size() == 4);
  for (const auto& b : all) {
    REQUIRE(b.projected.size() > 3);
    CHECK(b.projected.front() == b.projected.back());
    for (const auto& s : b.strip_samples) CHECK(std::fabs(s.f) < 1.0);
  }
  SUBCASE("cosine boundary 0 carries the closure segment") {
    REQUIRE(all[0].closure_segment.has_value());
    const Segment seg = *all[0].closure_segment;
    const double l0 = spec.amplitude(0);
    const double lo = std::min(seg.a.x, seg.b.x), hi = std::max(seg.a.x, seg.b.x);
    CHECK(lo == Approx(1.0 - l0));
    CHECK(hi == Approx(1.0 + l0));
    CHECK(seg.a.y == 0.0);
    CHECK(seg.b.y == 0.0);
    for (std::size_t i = 1; i < all.size(); ++i) CHECK_FALSE(all[i].closure_segment.has_value());
  }
  SUBCASE("projected points follow radius 1 + f") {
    const auto& b = all[2];
    for (std::size_t k = 0; k < b.strip_samples.size(); k += 37) {
      const auto s = b.strip_samples[k];
      const double th = theta_of_x(spec.variant(), s.x);
      const Point want{(1 + s.f) * std::cos(th), (1 + s.f) * std::sin(th)};
      CHECK(distance(b.projected[k], want) < 1e-12);
    }
  }
  SUBCASE("sine boundaries are closed without a segment") {
    const CurveSpec sine(Variant::Sine, 3, 0.2, ModifiedLinear{0.25, 1.0 / 7});
    for (const auto& b : sample_boundaries(sine)) CHECK_FALSE(b.closure_segment.has_value());
  }
  CHECK_THROWS_AS(sample_boundary(spec, 0, 4), ValidationError);
}

TEST_CASE("spec equality and description") {
  const CurveSpec a(Variant::Sine, 5, 0.2, ModifiedLinear{0.25, 1.0 / 7});
  const CurveSpec b(Variant::Sine, 5, 0.2, ModifiedLinear{0.25, 1.0 / 7});
  const CurveSpec c(Variant::Cosine, 5, 0.2, ModifiedLinear{0.25, 1.0 / 7});
  CHECK(a == b);
  CHECK_FALSE(a == c);
  CHECK(a.describe().find("sine") != std::string::npos);
  CHECK(signed_area(Polyline{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}}) == Approx(1.0));
}
