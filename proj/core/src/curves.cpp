#include "vennfan/curves.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace vennfan {

namespace {

constexpr double kTrigZeroSnap = 1e-11;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

std::string to_string(Variant v) { return v == Variant::Sine ? "sine" : "cosine"; }

std::string describe(const DecayScheme& scheme) {
  return std::visit(
      overloaded{
          [](const SmithExponential&) { return std::string("smith"); },
          [](const Linear&) { return std::string("linear"); },
          [](const ModifiedExponential& s) {
            return "exp(b=" + fmt_double(s.base) + ", eps=" + fmt_double(s.eps) + ")";
          },
          [](const ModifiedLinear& s) {
            return "linear-mod(delta=" + fmt_double(s.delta) + ", eps=" + fmt_double(s.eps) + ")";
          },
      },
      scheme);
}

void validate_decay(const DecayScheme& scheme, int n) {
  if (n < 2) throw ValidationError("decay: n must be at least 2");
  std::visit(overloaded{
                 [](const SmithExponential&) {},
                 [](const Linear&) {},
                 [](const ModifiedExponential& s) {
                   if (!std::isfinite(s.base) || s.base < 0.5 || s.base >= 1.0)
                     throw ValidationError("decay exp: base b must satisfy 1/2 <= b < 1, got " +
                                           fmt_double(s.base));
                   if (!std::isfinite(s.eps) || s.eps < 0.0)
                     throw ValidationError("decay exp: eps must be >= 0, got " + fmt_double(s.eps));
                 },
                 [n](const ModifiedLinear& s) {
                   if (!std::isfinite(s.delta) || s.delta <= 0.0 || s.delta >= 1.0)
                     throw ValidationError("decay linear-mod: delta must lie in (0, 1), got " +
                                           fmt_double(s.delta));
                   if (!std::isfinite(s.eps) || s.eps <= 0.0 || s.eps >= 1.0)
                     throw ValidationError("decay linear-mod: eps must lie in (0, 1), got " +
                                           fmt_double(s.eps));
                   // lambda(0) = 1 - eps must exceed lambda(n - 2) = delta.
                   if (n > 2 && s.delta + s.eps >= 1.0)
                     throw ValidationError(
                         "decay linear-mod: delta + eps must be < 1 for a strictly decreasing "
                         "amplitude sequence");
                 },
             },
             scheme);
}

double decay_value(const DecayScheme& scheme, int i, int n) {
  if (i < 0 || i >= n) throw ContractViolation("decay_value: set index out of range");
  return std::visit(
      overloaded{
          [i](const SmithExponential&) { return std::ldexp(1.0, -i); },
          [i, n](const Linear&) { return static_cast<double>(n - 1 - i) / n; },
          [i, n](const ModifiedExponential& s) {
            if (i == n - 1) return 0.0;
            const double eps = s.eps == 0.0 ? kExponentialEpsGuard : s.eps;
            return std::pow(s.base, i + eps);
          },
          [i, n](const ModifiedLinear& s) {
            if (i == n - 1) return 0.0;
            if (n == 2) return 1.0 - s.eps;
            return (s.delta + s.eps - 1.0) / (n - 2) * i - s.eps + 1.0;
          },
      },
      scheme);
}

CurveSpec::CurveSpec(Variant variant, int n, double p, DecayScheme decay)
    : variant_(variant), n_(n), p_(p), decay_(std::move(decay)) {
  if (n < 2 || n > kMaxSets)
    throw ValidationError("n must lie in [2, " + std::to_string(kMaxSets) + "], got " +
                          std::to_string(n));
  if (!std::isfinite(p) || p <= 0.0)
    throw ValidationError("shape exponent p must be > 0, got " + fmt_double(p));
  validate_decay(decay_, n);
  amplitudes_.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) amplitudes_.push_back(decay_value(decay_, i, n));
}

std::string CurveSpec::describe() const {
  return to_string(variant_) + " n=" + std::to_string(n_) + " p=" + fmt_double(p_) + " " +
         vennfan::describe(decay_);
}

std::pair<double, double> strip_domain(Variant variant) {
  return variant == Variant::Sine ? std::pair{-kPi, kPi} : std::pair{2.0 * kPi, 4.0 * kPi};
}

double theta_of_x(Variant variant, double x) {
  return variant == Variant::Sine ? x : x - 2.0 * kPi;
}

double x_of_theta(Variant variant, double theta) {
  if (variant == Variant::Sine) {
    // atan2 range is already (-pi, pi].
    return theta;
  }
  double t = std::fmod(theta, 2.0 * kPi);
  if (t < 0.0) t += 2.0 * kPi;
  return t + 2.0 * kPi;
}

double trig_term(Variant variant, int i, double x) {
  // Scaling by a power of two is exact, so the argument carries no extra error.
  const double s = variant == Variant::Sine ? std::sin(std::ldexp(x, i))
                                            : std::cos(std::ldexp(x, i - 1));
  return std::fabs(s) < kTrigZeroSnap ? 0.0 : s;
}

double shape(double s, double p) {
  if (s == 0.0) return 0.0;
  if (p == 1.0) return s;
  return std::copysign(std::pow(std::fabs(s), p), s);
}

double shaped_trig(const CurveSpec& spec, int i, double x) {
  const double lambda = spec.amplitude(i);
  if (lambda == 0.0) return 0.0;
  return lambda * shape(trig_term(spec.variant(), i, x), spec.p());
}

std::vector<int> unprojectable_indices(const CurveSpec& spec) {
  std::vector<int> bad;
  for (int i = 0; i < spec.n(); ++i)
    if (!(std::fabs(spec.amplitude(i)) < 1.0)) bad.push_back(i);
  return bad;
}

void require_projectable(const CurveSpec& spec) {
  const auto bad = unprojectable_indices(spec);
  if (bad.empty()) return;
  std::ostringstream msg;
  msg << "decay admits |f_i| >= 1 (boundary would reach the origin) for i =";
  for (int i : bad) msg << ' ' << i;
  throw ValidationError(msg.str());
}

int strip_intervals(const CurveSpec& spec, int samples_per_flip) {
  // The sine family's fastest term has 2^n half-waves on the domain; the
  // cosine family's has 2^(n-1). Using 2^n for both keeps grids identical.
  return samples_per_flip << spec.n();
}

SampledBoundary sample_boundary(const CurveSpec& spec, int i, int samples_per_flip) {
  if (i < 0 || i >= spec.n()) throw ContractViolation("sample_boundary: set index out of range");
  if (samples_per_flip < 8) throw ValidationError("samples_per_flip must be at least 8");
  require_projectable(spec);

  const int intervals = strip_intervals(spec, samples_per_flip);
  const auto [lo, hi] = strip_domain(spec.variant());
  const double step = (hi - lo) / intervals;

  SampledBoundary out;
  out.index = i;
  out.strip_samples.reserve(static_cast<std::size_t>(intervals) + 1);
  out.projected.reserve(static_cast<std::size_t>(intervals) + 2);
  for (int k = 0; k <= intervals; ++k) {
    const double x = k == intervals ? hi : lo + k * step;
    const double f = shaped_trig(spec, i, x);
    out.strip_samples.push_back({x, f});
    const double theta = theta_of_x(spec.variant(), x);
    const double r = 1.0 + f;
    out.projected.push_back({r * std::cos(theta), r * std::sin(theta)});
  }

  if (spec.variant() == Variant::Cosine && i == 0) {
    // cos(x/2) runs half a period: g_0(2pi) and g_0(4pi) sit on the positive
    // x-axis at radii 1 - lambda and 1 + lambda.
    const Point start = out.projected.front();
    const Point end = out.projected.back();
    out.closure_segment = Segment{{start.x, 0.0}, {end.x, 0.0}};
    out.projected.front().y = 0.0;
    out.projected.back().y = 0.0;
    out.projected.push_back(out.projected.front());
  } else {
    out.projected.back() = out.projected.front();
  }
  return out;
}

std::vector<SampledBoundary> sample_boundaries(const CurveSpec& spec, int samples_per_flip) {
  std::vector<SampledBoundary> out;
  out.reserve(static_cast<std::size_t>(spec.n()));
  for (int i = 0; i < spec.n(); ++i) out.push_back(sample_boundary(spec, i, samples_per_flip));
  return out;
}

std::vector<Polyline> projected_polylines(const std::vector<SampledBoundary>& boundaries) {
  std::vector<Polyline> out;
  out.reserve(boundaries.size());
  for (const auto& b : boundaries) out.push_back(b.projected);
  return out;
}

double signed_area(const Polyline& loop) {
  double a = 0.0;
  for (std::size_t k = 0; k + 1 < loop.size(); ++k) a += cross(loop[k], loop[k + 1]);
  if (!loop.empty() && !(loop.front() == loop.back())) a += cross(loop.back(), loop.front());
  return 0.5 * a;
}

}  // namespace vennfan
