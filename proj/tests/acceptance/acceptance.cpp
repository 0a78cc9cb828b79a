// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: vennfan_acceptance [--only K]...

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "vennfan/curves.hpp"
#include "vennfan/edwards.hpp"
#include "vennfan/labels.hpp"
#include "vennfan/membership.hpp"
#include "vennfan/presets.hpp"
#include "vennfan/regions.hpp"
#include "vennfan_cli/cli.hpp"

using namespace vennfan;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string printf_str(const char* fmt, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), fmt, a, b, c);
  return buf;
}

DiagramReport verify_at(const CurveSpec& spec, int resolution) {
  const auto boundaries = sample_boundaries(spec);
  const auto grid = rasterize(spec, resolution);
  return verify(spec, grid, boundaries);
}

// 1. every preset is an independent family at 2048.
Outcome completeness() {
  int ok = 0;
  double slowest = 0.0;
  std::string failed;
  for (const auto& p : presets()) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto report = verify_at(p.spec, 2048);
    slowest = std::max(slowest, seconds_since(t0));
    if (report.is_independent_family) {
      ++ok;
    } else {
      failed += " " + p.id;
    }
  }
  const int total = static_cast<int>(presets().size());
  return {ok == total && slowest < 30.0, std::to_string(ok) + "/" + std::to_string(total) +
                                             " presets independent, slowest " + printf_str("%.1f s", slowest) +
                                             failed};
}

// 2. unmodified cosine (p = 1, b = 1/2) is Venn and simple.
Outcome cosine_simplicity() {
  std::string detail;
  bool pass = true;
  for (int n = 3; n <= 7; ++n) {
    const CurveSpec spec(Variant::Cosine, n, 1.0, ModifiedExponential{0.5, 0.0});
    auto report = verify_at(spec, 2048);
    int res = 2048;
    if (report.is_simple == Tristate::Unknown) {
      res = 4096;
      report = verify_at(spec, res);
    }
    const bool ok = report.is_venn && report.is_simple == Tristate::True;
    pass = pass && ok;
    detail += " n=" + std::to_string(n) + (ok ? ":ok" : ":venn=" + std::string(report.is_venn ? "1" : "0") +
                                                          ",simple=" + to_string(report.is_simple)) +
              (res != 2048 ? "@4096" : "");
  }
  return {pass, "cosine p=1 b=1/2" + detail};
}

// 3. stereographic cogwheel: every mask present once under the even-odd rule.
Outcome edwards_census() {
  std::string detail;
  bool pass = true;
  for (int n = 3; n <= 7; ++n) {
    const auto projected = stereographic_project(build_cogwheel(n), 256);
    const auto grid = rasterize_even_odd(projected.curves, 2048);
    const auto labels = label_components(grid, false);
    std::map<RegionMask, int> significant;
    const double tiny = default_tiny_threshold(grid.frame);
    for (const auto& c : labels.components)
      if (c.area >= tiny) ++significant[c.mask];
    bool ok = significant.size() == (std::size_t{1} << n);
    for (const auto& [mask, count] : significant) ok = ok && count == 1;
    pass = pass && ok;
    detail += " n=" + std::to_string(n) + (ok ? ":ok" : ":masks=" + std::to_string(significant.size()));
  }
  return {pass, "even-odd census at 2048" + detail};
}

// 4. cosine VennFan area spread beats Edwards.
Outcome area_spread() {
  std::string detail;
  bool pass = true;
  for (int n : {6, 7}) {
    const CurveSpec spec(Variant::Cosine, n, 1.0 / 5, ModifiedLinear{1.0 / 3, 1.0 / 9});
    const AreaStats vf = area_stats(verify_at(spec, 1024));
    const auto projected = stereographic_project(build_cogwheel(n), 256);
    const auto grid = rasterize_even_odd(projected.curves, 1024);
    const auto labels = label_components(grid, false);
    const AreaStats ed = area_stats(
        verify_arrangement(grid, labels.components, projected.curves, default_tiny_threshold(grid.frame)));
    const bool ok = vf.min_weight > ed.min_weight && vf.log10_std < ed.log10_std;
    pass = pass && ok;
    detail += " n=" + std::to_string(n) + printf_str(" min %.2e vs %.2e,", vf.min_weight, ed.min_weight) +
              printf_str(" log10 std %.3f vs %.3f;", vf.log10_std, ed.log10_std);
  }
  return {pass, "vennfan vs edwards:" + detail};
}

// 5. Gray order equals the sine family's sign-vector sweep.
Outcome gray_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool pass = true;
  for (int n = 1; n <= 10; ++n) {
    // Sweep x over (-pi, pi) on a grid 64x finer than the finest half-period.
    const long steps = 64L << (n + 1);
    std::vector<RegionMask> seen;
    for (long k = 0; k < steps; ++k) {
      const double x = -kPi + (k + 0.5) * (2.0 * kPi / static_cast<double>(steps));
      RegionMask m = 0;
      for (int i = 0; i < n; ++i)
        if (std::sin(std::ldexp(x, i)) > 0.0) m |= RegionMask{1} << i;
      if (seen.empty() || seen.back() != m) seen.push_back(m);
    }
    const auto gray = gray_order(n).sequence;
    if (seen != gray) {
      pass = false;
      int max_flip = 0;
      for (std::size_t k = 1; k < seen.size(); ++k)
        max_flip = std::max(max_flip, std::popcount(seen[k] ^ seen[k - 1]));
      if (detail.empty())
        detail = " first mismatch n=" + std::to_string(n) + ": sweep flips up to " + std::to_string(max_flip) +
                 " bits at once;";
    }
  }
  const double t = seconds_since(t0);
  return {pass && t < 1.0, "n=1..10" + detail + printf_str(" %.2f s", t)};
}

// Brute-force nearest-outside-cell argmax over a fixture bitmap.
CellIndex brute_visual_center(const GridFrame& frame, const std::vector<CellIndex>& cells) {
  std::vector<char> in(static_cast<std::size_t>(frame.cell_count()), 0);
  for (CellIndex c : cells) in[static_cast<std::size_t>(c)] = 1;
  const int R = frame.resolution;
  long best = -1;
  CellIndex best_cell = -1;
  for (CellIndex c : cells) {
    const int r = c / R, q = c % R;
    long d2 = std::numeric_limits<long>::max();
    for (int rr = -1; rr <= R; ++rr)
      for (int qq = -1; qq <= R; ++qq) {
        const bool outside = rr < 0 || qq < 0 || rr >= R || qq >= R || !in[static_cast<std::size_t>(rr * R + qq)];
        if (!outside) continue;
        const long dr = rr - r, dq = qq - q;
        d2 = std::min(d2, dr * dr + dq * dq);
      }
    if (d2 > best) {  // cells are sorted, so the first maximum is the lowest (row, col)
      best = d2;
      best_cell = c;
    }
  }
  return best_cell;
}

Outcome visual_center_oracle() {
  const GridFrame frame{96, 1.0};
  using Pred = std::function<bool(double, double)>;
  const std::vector<std::pair<std::string, Pred>> fixtures = {
      {"disk", [](double x, double y) { return x * x + y * y < 0.7 * 0.7; }},
      {"rectangle", [](double x, double y) { return std::fabs(x) < 0.8 && std::fabs(y) < 0.35; }},
      {"L", [](double x, double y) { return (x > -0.8 && x < -0.3 && y > -0.8 && y < 0.8) || (x > -0.8 && x < 0.7 && y > -0.8 && y < -0.4); }},
      {"C", [](double x, double y) {
         const double r = std::hypot(x, y);
         return r > 0.45 && r < 0.85 && !(x > 0.2 && std::fabs(y) < 0.25);
       }},
      {"annular-sector", [](double x, double y) {
         const double r = std::hypot(x, y), a = std::atan2(y, x);
         return r > 0.3 && r < 0.9 && a > -0.4 && a < 2.2;
       }},
      {"offset-ellipse", [](double x, double y) { return std::pow((x - 0.2) / 0.6, 2) + std::pow((y + 0.1) / 0.3, 2) < 1.0; }},
  };
  int ok = 0;
  std::string failed;
  for (const auto& [name, inside] : fixtures) {
    std::vector<CellIndex> cells;
    for (int r = 0; r < frame.resolution; ++r)
      for (int c = 0; c < frame.resolution; ++c) {
        const Point p = frame.cell_center(r, c);
        if (inside(p.x, p.y)) cells.push_back(frame.index(r, c));
      }
    const RegionComponent comp = make_component(frame, 1, cells);
    if (visual_center(comp).cell == brute_visual_center(frame, comp.cells)) {
      ++ok;
    } else {
      failed += " " + name;
    }
  }
  return {ok == static_cast<int>(fixtures.size()),
          std::to_string(ok) + "/" + std::to_string(fixtures.size()) + " fixtures match at 96x96" + failed};
}

// 7. segment chords stay in their region; radial anchors sit on the label ring.
Outcome segment_containment() {
  long samples = 0, outside = 0, segments = 0, radial = 0, off_ring = 0;
  std::string failed;
  for (const auto& p : presets()) {
    const auto grid = rasterize(p.spec, 1024);
    const auto labels = label_components(grid, false);
    std::map<RegionMask, std::int32_t> largest;
    for (std::size_t k = 0; k < labels.components.size(); ++k) {
      const auto& c = labels.components[k];
      auto it = largest.find(c.mask);
      if (it == largest.end() || c.cells.size() > labels.components[static_cast<std::size_t>(it->second)].cells.size())
        largest[c.mask] = static_cast<std::int32_t>(k);
    }
    const auto plan = plan_labels(labels.components, p.spec.variant(), p.spec.n());
    const double h = grid.frame.cell_size();
    long bad_here = 0;
    for (const auto& [mask, e] : plan.entries) {
      if (e.strategy == LabelStrategy::Radial) {
        ++radial;
        if (std::fabs(std::hypot(e.anchor.x, e.anchor.y) - 1.06) > 1e-6) ++off_ring;
        continue;
      }
      if (e.strategy != LabelStrategy::Segment) continue;
      ++segments;
      const double a = e.rotation_deg * kPi / 180.0;
      const Point d{std::cos(a), std::sin(a)};
      const Point p1 = e.anchor - (e.max_chord / 2.0) * d;
      const int steps = static_cast<int>(std::ceil(e.max_chord / h));
      for (int s = 0; s <= steps; ++s) {
        const Point q = p1 + (e.max_chord * s / steps) * d;
        const int col = static_cast<int>(std::floor((q.x + grid.frame.extent) / h));
        const int row = static_cast<int>(std::floor((q.y + grid.frame.extent) / h));
        ++samples;
        const bool in = row >= 0 && col >= 0 && row < grid.frame.resolution && col < grid.frame.resolution &&
                        labels.label_of_cell[static_cast<std::size_t>(grid.frame.index(row, col))] == largest[mask];
        if (!in) ++outside, ++bad_here;
      }
    }
    if (bad_here > 0) failed += " " + p.id;
  }
  return {outside == 0 && off_ring == 0 && segments > 0,
          std::to_string(segments) + " segment labels, " + std::to_string(samples) + " chord samples, " +
              std::to_string(outside) + " outside; " + std::to_string(radial) + " radial, " +
              std::to_string(off_ring) + " off ring" + failed};
}

// 8. strip and disc censuses agree.
Outcome topology() {
  int ok = 0;
  std::string failed;
  for (const auto& p : presets()) {
    const auto strip = strip_census(p.spec, 8192, 2048);
    const auto disc = census(rasterize(p.spec, 2048));
    if (strip == disc) {
      ++ok;
    } else {
      failed += " " + p.id + "(" + std::to_string(strip.size()) + " vs " + std::to_string(disc.size()) + ")";
    }
  }
  const int total = static_cast<int>(presets().size());
  return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " presets with identical censuses" + failed};
}

// 9. identical flags, identical bytes.
std::string slurp(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

Outcome determinism() {
  const fs::path dir = fs::temp_directory_path() / "vennfan_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  {
    std::ofstream csv(dir / "members.csv");
    csv << "id,A,B,C\n";
    std::mt19937 rng(7);
    for (int k = 0; k < 200; ++k) csv << "e" << k << ',' << rng() % 2 << ',' << rng() % 2 << ',' << rng() % 2 << '\n';
  }
  const std::string d = dir.string() + "/";
  // {command args, files it writes}; "%" is replaced by the run index.
  const std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> commands = {
      {{"generate", "--preset", "fig-cosine-n7", "--out", d + "g%.svg", "--report", d + "g%.json", "--labels",
        d + "l%.json"},
       {"g%.svg", "g%.json", "l%.json"}},
      {{"generate", "--variant", "sine", "--n", "3", "--p", "1/5", "--data", d + "members.csv", "--out", d + "s%.svg"},
       {"s%.svg"}},
      {{"verify", "--preset", "fig-sine-n8", "--out", d + "v%.json"}, {"v%.json"}},
      {{"areas", "--n", "6", "--p", "1/5", "--delta", "1/3", "--eps", "1/9", "--json", d + "a%.json"}, {"a%.json"}},
      {{"edwards", "--n", "5", "--out", d + "e%.svg", "--report", d + "e%.json"}, {"e%.svg", "e%.json"}},
      {{"edwards", "--n", "5", "--projection", "equatorial", "--variant", "above", "--out", d + "q%.svg"}, {"q%.svg"}},
  };
  auto subst = [](std::string s, int run) {
    const auto at = s.find('%');
    if (at != std::string::npos) s.replace(at, 1, std::to_string(run));
    return s;
  };
  int identical = 0, files = 0;
  std::string failed;
  for (const auto& [args, outputs] : commands) {
    std::string stdout_text[2];
    for (int run = 0; run < 2; ++run) {
      std::vector<std::string> a;
      for (const auto& s : args) a.push_back(subst(s, run));
      std::ostringstream out, err;
      vennfan::cli::run(a, out, err);
      stdout_text[run] = out.str();
    }
    for (const auto& o : outputs) {
      ++files;
      const std::string x = slurp(dir / subst(o, 0)), y = slurp(dir / subst(o, 1));
      if (!x.empty() && x == y) {
        ++identical;
      } else {
        failed += " " + args.front() + ":" + o;
      }
    }
    // stdout mentions the output path, which differs by run index.
    if (args.front() == "areas") {
      ++files;
      if (stdout_text[0] == stdout_text[1]) {
        ++identical;
      } else {
        failed += " areas:stdout";
      }
    }
  }
  fs::remove_all(dir);
  return {identical == files, std::to_string(identical) + "/" + std::to_string(files) + " outputs byte-identical" + failed};
}

// 10. membership ingestion conserves elements.
Outcome ingestion() {
  std::mt19937_64 rng(20240611);
  int ok = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const bool as_json = trial % 2 == 1;
    std::vector<RegionMask> truth(1000);
    std::ostringstream text;
    if (!as_json) {
      text << "id";
      for (int i = 0; i < n; ++i) text << ",set" << i;
      text << "\n";
      for (int e = 0; e < 1000; ++e) {
        truth[static_cast<std::size_t>(e)] = static_cast<RegionMask>(rng() % (1u << n));
        text << "el" << e;
        for (int i = 0; i < n; ++i) text << ',' << ((truth[static_cast<std::size_t>(e)] >> i) & 1u);
        text << "\n";
      }
    } else {
      for (auto& t : truth) t = static_cast<RegionMask>(rng() % (1u << n));
      text << "{\"sets\": {";
      for (int i = 0; i < n; ++i) {
        text << (i ? ", " : "") << "\"set" << i << "\": [";
        bool first = true;
        for (int e = 0; e < 1000; ++e)
          if ((truth[static_cast<std::size_t>(e)] >> i) & 1u) {
            text << (first ? "" : ", ") << "\"el" << e << "\"";
            first = false;
          }
        text << "]";
      }
      text << "}}";
    }
    const MembershipData data = as_json ? parse_membership_json(text.str()) : parse_membership_csv(text.str());
    const RegionCounts counts = count_regions(data);
    std::int64_t sum = 0;
    for (const auto& [m, c] : counts.counts) sum += c;
    // JSON only lists members, so elements in no set are absent from the data.
    std::int64_t expected = 1000;
    if (as_json) expected -= std::count(truth.begin(), truth.end(), RegionMask{0});
    bool good = sum == expected && counts.counts.size() == (std::size_t{1} << n);
    for (int e = 0; e < 1000 && good; ++e) {
      const RegionMask t = truth[static_cast<std::size_t>(e)];
      auto it = data.elements.find("el" + std::to_string(e));
      if (as_json && t == 0) {
        good = it == data.elements.end();
      } else {
        good = it != data.elements.end() && it->second == t;
      }
    }
    if (good) ++ok;
  }
  return {ok == 100, std::to_string(ok) + "/100 randomized trials conserve counts and masks"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"completeness sweep", completeness},
      {"simplicity of unmodified cosine", cosine_simplicity},
      {"edwards census", edwards_census},
      {"area spread vs edwards", area_spread},
      {"gray code equals sine sweep", gray_equivalence},
      {"visual center oracle", visual_center_oracle},
      {"segment containment", segment_containment},
      {"topology preservation", topology},
      {"determinism", determinism},
      {"ingestion conservation", ingestion},
  };
  std::set<int> only;
  for (int k = 1; k < argc; ++k) {
    if (std::strcmp(argv[k], "--only") == 0 && k + 1 < argc) {
      only.insert(std::atoi(argv[++k]));
    } else {
      std::fprintf(stderr, "usage: %s [--only K]...\n", argv[0]);
      return 2;
    }
  }
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (!only.empty() && !only.count(id)) continue;
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, criteria[k].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
