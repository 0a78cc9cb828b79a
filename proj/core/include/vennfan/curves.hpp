#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "vennfan/errors.hpp"
#include "vennfan/geometry.hpp"

namespace vennfan {

enum class Variant { Sine, Cosine };

std::string to_string(Variant v);

// Amplitude decay schemes. lambda(i) scales boundary i.

/// lambda(i) = 2^-i, the unshaped trigonometric baseline. Not projectable:
/// lambda(0) = 1 lets the first boundary touch the origin.
struct SmithExponential {};

/// lambda(i) = (n - 1 - i) / n.
struct Linear {};

/// lambda(i) = base^(i + eps) for i < n - 1, lambda(n - 1) = 0.
/// An eps of exactly zero is replaced by kExponentialEpsGuard so that
/// lambda(0) stays strictly below one.
struct ModifiedExponential {
  double base = 0.8;
  double eps = 0.0;
};

/// Straight line from lambda(0) = 1 - eps down to lambda(n - 2) = delta,
/// then lambda(n - 1) = 0.
struct ModifiedLinear {
  double delta = 0.25;
  double eps = 0.125;
};

using DecayScheme = std::variant<SmithExponential, Linear, ModifiedExponential, ModifiedLinear>;

inline constexpr double kExponentialEpsGuard = 1e-3;
inline constexpr int kDefaultSamplesPerFlip = 64;
inline constexpr int kMaxSets = 16;

std::string describe(const DecayScheme& scheme);

/// Throws ValidationError when the scheme's parameters are outside their
/// legal range for n sets.
void validate_decay(const DecayScheme& scheme, int n);

/// lambda(i) for the scheme; 0 <= i < n.
double decay_value(const DecayScheme& scheme, int i, int n);

/// Full parameterization of one diagram. Parameter ranges are validated on
/// construction; projectability (|f| < 1) is checked separately by
/// require_projectable() because the Smith baseline is a legal strip-only spec.
class CurveSpec {
 public:
  CurveSpec(Variant variant, int n, double p, DecayScheme decay);

  Variant variant() const { return variant_; }
  int n() const { return n_; }
  double p() const { return p_; }
  const DecayScheme& decay() const { return decay_; }

  /// Cached lambda(i).
  double amplitude(int i) const { return amplitudes_.at(static_cast<std::size_t>(i)); }
  const std::vector<double>& amplitudes() const { return amplitudes_; }

  std::string describe() const;

  friend bool operator==(const CurveSpec& a, const CurveSpec& b) {
    return a.variant_ == b.variant_ && a.n_ == b.n_ && a.p_ == b.p_ &&
           a.amplitudes_ == b.amplitudes_;
  }

 private:
  Variant variant_;
  int n_;
  double p_;
  DecayScheme decay_;
  std::vector<double> amplitudes_;
};

/// Closed strip domain of the variant: [-pi, pi] for sine, [2pi, 4pi] for cosine.
std::pair<double, double> strip_domain(Variant variant);

/// Polar angle for a strip abscissa: identity for sine, x - 2pi for cosine.
double theta_of_x(Variant variant, double x);

/// Inverse of theta_of_x for an arbitrary polar angle, wrapped into the
/// variant's half-open domain.
double x_of_theta(Variant variant, double theta);

/// Raw trigonometric term of boundary i: sin(2^i x) or cos(2^(i-1) x),
/// with values within 1e-11 of zero snapped to zero.
double trig_term(Variant variant, int i, double x);

/// sgn(s) |s|^p.
double shape(double s, double p);

/// f_i(x) = lambda(i) * shape(trig_term(i, x), p).
double shaped_trig(const CurveSpec& spec, int i, double x);

/// Indices i with lambda(i) >= 1 (radius 1 + f would reach 0 or 2).
std::vector<int> unprojectable_indices(const CurveSpec& spec);
void require_projectable(const CurveSpec& spec);

struct StripSample {
  double x = 0.0;
  double f = 0.0;
};

struct Segment {
  Point a;
  Point b;
};

struct SampledBoundary {
  int index = 0;
  std::vector<StripSample> strip_samples;
  /// Closed: first point == last point. For cosine i = 0 the closure segment
  /// is already part of the chain.
  Polyline projected;
  std::optional<Segment> closure_segment;
};

/// Number of strip intervals used for every boundary of a spec.
int strip_intervals(const CurveSpec& spec, int samples_per_flip);

SampledBoundary sample_boundary(const CurveSpec& spec, int i,
                                int samples_per_flip = kDefaultSamplesPerFlip);

std::vector<SampledBoundary> sample_boundaries(const CurveSpec& spec,
                                               int samples_per_flip = kDefaultSamplesPerFlip);

/// Projected polylines only, in index order.
std::vector<Polyline> projected_polylines(const std::vector<SampledBoundary>& boundaries);

}  // namespace vennfan
