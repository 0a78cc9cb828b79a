#include "vennfan_cli/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>

#include "vennfan/curves.hpp"
#include "vennfan/edwards.hpp"
#include "vennfan/labels.hpp"
#include "vennfan/membership.hpp"
#include "vennfan/presets.hpp"
#include "vennfan/regions.hpp"
#include "vennfan/render.hpp"

namespace vennfan::cli {

namespace {

// Raw spec flags; empty optionals were not given on the command line.
struct SpecFlags {
  std::string preset;
  std::string variant;
  std::optional<int> n;
  std::string p, decay, b, eps, delta;
  int samples_per_flip = kDefaultSamplesPerFlip;
  int resolution = 1024;
};

void add_spec_flags(CLI::App& cmd, SpecFlags& f) {
  cmd.add_option("--preset", f.preset, "Shipped parameter set (see `presets`); other flags override it");
  cmd.add_option("--variant", f.variant, "sine | cosine [default: cosine]");
  cmd.add_option("--n", f.n, "Number of sets, 2..16 [default: 6]");
  cmd.add_option("--p", f.p, "Shape exponent > 0, decimal or a/b [default: 1/5]");
  cmd.add_option("--decay", f.decay, "linear | exp | linear-mod | smith [default: linear-mod]");
  cmd.add_option("--b", f.b, "exp decay base in [1/2, 1) [default: 4/5]");
  cmd.add_option("--eps", f.eps, "exp: exponent offset >= 0 [default: 0]; linear-mod: 1 - lambda(0) [default: 1/7]");
  cmd.add_option("--delta", f.delta, "linear-mod: lambda(n-2) in (0, 1) [default: 1/4]");
  cmd.add_option("--samples", f.samples_per_flip, "Boundary samples per sign flip, >= 8")
      ->default_val(kDefaultSamplesPerFlip);
  cmd.add_option("--resolution", f.resolution, "Raster cells per side, >= 256")->default_val(1024);
}

std::string flag_for_message(const std::string& what) {
  if (what.rfind("n must", 0) == 0 || what.rfind("decay: n", 0) == 0) return "--n";
  if (what.rfind("shape exponent", 0) == 0) return "--p";
  if (what.rfind("decay exp: base", 0) == 0) return "--b";
  if (what.find(": eps") != std::string::npos) return "--eps";
  if (what.rfind("decay linear-mod: delta must", 0) == 0) return "--delta";
  if (what.rfind("decay linear-mod: delta + eps", 0) == 0) return "--delta/--eps";
  if (what.rfind("decay admits", 0) == 0) return "--decay";
  return "--n/--p/--decay";
}

CurveSpec build_spec(const SpecFlags& f) {
  Variant variant = Variant::Cosine;
  int n = 6;
  double p = 1.0 / 5;
  DecayScheme decay = ModifiedLinear{1.0 / 4, 1.0 / 7};
  if (!f.preset.empty()) {
    const auto preset = find_preset(f.preset);
    if (!preset) throw ValidationError("--preset: unknown preset '" + f.preset + "' (see `vennfan presets`)");
    variant = preset->spec.variant();
    n = preset->spec.n();
    p = preset->spec.p();
    decay = preset->spec.decay();
  }
  if (!f.variant.empty()) {
    if (f.variant == "sine") {
      variant = Variant::Sine;
    } else if (f.variant == "cosine") {
      variant = Variant::Cosine;
    } else {
      throw ValidationError("--variant: expected sine or cosine, got '" + f.variant + "'");
    }
  }
  if (f.n) n = *f.n;
  if (!f.p.empty()) p = parse_fraction(f.p, "--p");

  if (!f.decay.empty() || !f.b.empty() || !f.eps.empty() || !f.delta.empty()) {
    std::string kind = f.decay;
    if (kind.empty()) {
      kind = std::holds_alternative<ModifiedExponential>(decay) ? "exp"
             : std::holds_alternative<Linear>(decay)            ? "linear"
             : std::holds_alternative<SmithExponential>(decay)  ? "smith"
                                                                : "linear-mod";
    }
    if (kind == "linear" || kind == "smith") {
      for (const auto& [flag, v] : {std::pair{"--b", &f.b}, {"--eps", &f.eps}, {"--delta", &f.delta}})
        if (!v->empty()) throw ValidationError(std::string(flag) + ": not used by --decay " + kind);
      decay = kind == "linear" ? DecayScheme{Linear{}} : DecayScheme{SmithExponential{}};
    } else if (kind == "exp") {
      if (!f.delta.empty()) throw ValidationError("--delta: not used by --decay exp");
      ModifiedExponential e{4.0 / 5, 0.0};
      if (auto* cur = std::get_if<ModifiedExponential>(&decay)) e = *cur;
      if (!f.b.empty()) e.base = parse_fraction(f.b, "--b");
      if (!f.eps.empty()) e.eps = parse_fraction(f.eps, "--eps");
      decay = e;
    } else if (kind == "linear-mod") {
      if (!f.b.empty()) throw ValidationError("--b: not used by --decay linear-mod");
      ModifiedLinear m{1.0 / 4, 1.0 / 7};
      if (auto* cur = std::get_if<ModifiedLinear>(&decay)) m = *cur;
      if (!f.delta.empty()) m.delta = parse_fraction(f.delta, "--delta");
      if (!f.eps.empty()) m.eps = parse_fraction(f.eps, "--eps");
      decay = m;
    } else {
      throw ValidationError("--decay: expected linear, exp, linear-mod or smith, got '" + kind + "'");
    }
  }

  try {
    CurveSpec spec(variant, n, p, decay);
    require_projectable(spec);
    return spec;
  } catch (const ValidationError& e) {
    throw ValidationError(flag_for_message(e.what()) + ": " + e.what());
  }
}

void check_common(const SpecFlags& f) {
  if (f.resolution < kMinResolution)
    throw ValidationError("--resolution: must be at least " + std::to_string(kMinResolution));
  if (f.samples_per_flip < 8) throw ValidationError("--samples: must be at least 8");
}

void write_file(const std::string& path, const std::string& content, const std::string& flag) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ValidationError(flag + ": cannot write '" + path + "'");
  file << content;
  if (!file) throw ValidationError(flag + ": failed writing '" + path + "'");
}

struct Pipeline {
  CurveSpec spec;
  std::vector<SampledBoundary> boundaries;
  RasterGrid grid;
  DiagramReport report;
};

Pipeline run_pipeline(const SpecFlags& f) {
  check_common(f);
  CurveSpec spec = build_spec(f);
  auto boundaries = sample_boundaries(spec, f.samples_per_flip);
  auto grid = rasterize(spec, f.resolution);
  auto report = verify(spec, grid, boundaries);
  return Pipeline{std::move(spec), std::move(boundaries), std::move(grid), std::move(report)};
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), pattern, v);
  return buf;
}

// ---- generate ---------------------------------------------------------------

struct GenerateFlags {
  SpecFlags spec;
  std::string out, report, labels, data, label_mode = "balanced";
  int canvas = 1024;
  double stroke = 1.5;
  bool no_legend = false;
};

int cmd_generate(const GenerateFlags& g, std::ostream& out, std::ostream& err) {
  LabelConfig label_config;
  if (g.label_mode == "balanced") {
    label_config.mode = LabelMode::Balanced;
  } else if (g.label_mode == "visual-center") {
    label_config.mode = LabelMode::VisualCenter;
  } else if (g.label_mode == "radial") {
    label_config.mode = LabelMode::Radial;
  } else {
    throw ValidationError("--label-mode: expected balanced, visual-center or radial");
  }
  RenderConfig render_config;
  render_config.canvas_px = g.canvas;
  render_config.stroke_width_px = g.stroke;
  render_config.legend = !g.no_legend;
  if (g.canvas < 256) throw ValidationError("--canvas: must be at least 256");
  if (!(g.stroke > 0.0)) throw ValidationError("--stroke: must be positive");

  std::optional<MembershipData> data;
  if (!g.data.empty()) {
    try {
      data = ingest(g.data);
    } catch (const ValidationError& e) {
      throw ValidationError(std::string("--data: ") + e.what());
    }
  }

  const Pipeline pipe = run_pipeline(g.spec);
  const int n = pipe.spec.n();
  if (data && data->n() != n)
    throw ValidationError("--data: file has " + std::to_string(data->n()) + " sets but the diagram has " +
                          std::to_string(n));

  const auto components = extract_components(pipe.grid);
  const LabelPlan plan = plan_labels(components, pipe.spec.variant(), n, label_config);
  const auto curves = projected_polylines(pipe.boundaries);

  RenderInput input;
  input.n = n;
  input.boundaries = curves;
  input.components = components;
  input.plan = &plan;
  if (data) {
    input.set_names = data->set_names;
    for (const auto& [mask, count] : count_regions(*data).counts) input.label_text[mask] = std::to_string(count);
  }
  const RenderResult rendered = render_diagram(input, render_config);

  write_file(g.out, rendered.svg, "--out");
  if (!g.report.empty()) write_file(g.report, to_json(pipe.report), "--report");
  if (!g.labels.empty()) write_file(g.labels, to_json(plan), "--labels");
  if (!rendered.warnings.empty()) {
    std::string text;
    for (const auto& w : rendered.warnings) text += w + "\n";
    write_file(g.out + ".warnings.txt", text, "--out");
    err << rendered.warnings.size() << " label warning(s), see " << g.out << ".warnings.txt\n";
  }
  out << "wrote " << g.out << " (" << pipe.spec.describe() << ")\n";
  return kExitOk;
}

// ---- verify -------------------------------------------------------------------

int cmd_verify(const SpecFlags& f, const std::string& out_path, std::ostream& out) {
  const Pipeline pipe = run_pipeline(f);
  const std::string json = to_json(pipe.report);
  if (out_path.empty()) {
    out << json;
  } else {
    write_file(out_path, json, "--out");
  }
  return pipe.report.is_independent_family ? kExitOk : kExitVerifyFailed;
}

// ---- edwards -------------------------------------------------------------------

struct EdwardsFlags {
  int n = 6;
  std::string projection = "stereo";
  std::string side = "below";
  int samples_per_arc = 256;
  int resolution = 1024;
  std::string out, report;
};

Pole pole_from_flag(const std::string& side) {
  if (side == "below") return Pole::North;
  if (side == "above") return Pole::South;
  throw ValidationError("--variant: expected below or above, got '" + side + "'");
}

struct EdwardsRaster {
  ProjectedCogwheel projected;
  RasterGrid grid;
  std::vector<RegionComponent> components;
  DiagramReport report;
};

EdwardsRaster edwards_raster(int n, Pole pole, int samples_per_arc, int resolution, bool with_contours) {
  if (n < 3 || n > 16) throw ValidationError("--n: Edwards construction needs 3 <= n <= 16");
  if (samples_per_arc < 8) throw ValidationError("--samples-per-arc: must be at least 8");
  if (resolution < kMinResolution)
    throw ValidationError("--resolution: must be at least " + std::to_string(kMinResolution));
  EdwardsRaster r;
  r.projected = stereographic_project(build_cogwheel(n, {}, pole), samples_per_arc);
  r.grid = rasterize_even_odd(r.projected.curves, resolution);
  auto labels = label_components(r.grid, with_contours);
  r.components = std::move(labels.components);
  r.report = verify_arrangement(r.grid, r.components, r.projected.curves, default_tiny_threshold(r.grid.frame));
  return r;
}

int cmd_edwards(const EdwardsFlags& e, std::ostream& out) {
  const Pole pole = pole_from_flag(e.side);
  RenderConfig config;
  if (e.projection == "equatorial") {
    if (e.n < 3 || e.n > 16) throw ValidationError("--n: Edwards construction needs 3 <= n <= 16");
    if (!e.report.empty()) throw ValidationError("--report: only available with --projection stereo");
    const auto curves = equatorial_project(build_cogwheel(e.n, {}, pole), e.samples_per_arc);
    config.extent = 1.05;
    write_file(e.out, render_curves(curves, config), "--out");
  } else if (e.projection == "stereo") {
    const auto r = edwards_raster(e.n, pole, e.samples_per_arc, e.resolution, true);
    RenderInput input;
    input.n = e.n;
    input.boundaries = r.projected.curves;
    input.components = r.components;
    write_file(e.out, render_diagram(input, config).svg, "--out");
    if (!e.report.empty()) write_file(e.report, to_json(r.report), "--report");
  } else {
    throw ValidationError("--projection: expected stereo or equatorial, got '" + e.projection + "'");
  }
  out << "wrote " << e.out << "\n";
  return kExitOk;
}

// ---- areas -------------------------------------------------------------------

struct AreasFlags {
  SpecFlags spec;
  std::string against = "edwards";
  int bins = kHistogramBins;
  int samples_per_arc = 256;
  std::string json;
};

int cmd_areas(const AreasFlags& a, std::ostream& out) {
  if (a.against != "edwards") throw ValidationError("--against: only 'edwards' is supported");
  if (a.bins < 1) throw ValidationError("--bins: must be at least 1");
  const Pipeline pipe = run_pipeline(a.spec);
  const auto ed = edwards_raster(pipe.spec.n(), Pole::North, a.samples_per_arc, a.spec.resolution, false);

  const AreaStats vf0 = area_stats(pipe.report, a.bins);
  const AreaStats ed0 = area_stats(ed.report, a.bins);
  const std::pair range{std::min(vf0.log10_min, ed0.log10_min), std::max(vf0.log10_max, ed0.log10_max)};
  const AreaStats vf = area_stats(pipe.report, a.bins, range);
  const AreaStats edw = area_stats(ed.report, a.bins, range);

  std::ostringstream table;
  table << "area comparison, n = " << pipe.spec.n() << ", resolution " << a.spec.resolution << "\n"
        << "vennfan: " << pipe.spec.describe() << "\n"
        << "edwards: stereographic cogwheel\n\n";
  auto row = [&table](const std::string& name, const std::string& x, const std::string& y) {
    table << std::left << std::setw(14) << name << std::right << std::setw(14) << x << std::setw(14) << y << "\n";
  };
  row("", "vennfan", "edwards");
  row("regions", std::to_string(vf.regions), std::to_string(edw.regions));
  row("min weight", fmt("%.3e", vf.min_weight), fmt("%.3e", edw.min_weight));
  row("max weight", fmt("%.3e", vf.max_weight), fmt("%.3e", edw.max_weight));
  row("log10 mean", fmt("%.4f", vf.log10_mean), fmt("%.4f", edw.log10_mean));
  row("log10 std", fmt("%.4f", vf.log10_std), fmt("%.4f", edw.log10_std));
  table << "\nlog10 weight histogram\n";
  const double width = (range.second - range.first) / a.bins;
  for (int k = 0; k < a.bins; ++k) {
    const double lo = range.first + k * width;
    row("[" + fmt("%.2f", lo) + "," + fmt("%.2f", lo + width) + ")",
        std::to_string(vf.histogram[static_cast<std::size_t>(k)]),
        std::to_string(edw.histogram[static_cast<std::size_t>(k)]));
  }
  out << table.str();

  if (!a.json.empty()) {
    nlohmann::ordered_json doc;
    doc["n"] = pipe.spec.n();
    doc["resolution"] = a.spec.resolution;
    doc["vennfan"] = nlohmann::ordered_json::parse(to_json(vf));
    doc["edwards"] = nlohmann::ordered_json::parse(to_json(edw));
    doc["vennfanMinExceedsEdwards"] = vf.min_weight > edw.min_weight;
    doc["log10StdRatio"] = vf.log10_std / edw.log10_std;
    write_file(a.json, doc.dump(2) + "\n", "--json");
  }
  return kExitOk;
}

int cmd_presets(std::ostream& out) {
  for (const auto& p : presets()) out << std::left << std::setw(26) << p.id << p.spec.describe() << "\n";
  return kExitOk;
}

}  // namespace

double parse_fraction(const std::string& text, const std::string& flag) {
  auto parse_one = [&](const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
      throw ValidationError(flag + ": expected a number or a/b fraction, got '" + text + "'");
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string::npos) return parse_one(text);
  const double num = parse_one(text.substr(0, slash));
  const double den = parse_one(text.substr(slash + 1));
  if (den == 0.0) throw ValidationError(flag + ": zero denominator in '" + text + "'");
  return num / den;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"VennFan: n-set Venn diagrams from shaped trigonometric boundaries", "vennfan"};
  app.require_subcommand(1);

  GenerateFlags gen;
  auto* generate = app.add_subcommand("generate", "Render a diagram to SVG");
  add_spec_flags(*generate, gen.spec);
  generate->add_option("--out", gen.out, "Output SVG")->required();
  generate->add_option("--report", gen.report, "Also write the verification report JSON");
  generate->add_option("--labels", gen.labels, "Also write the label plan JSON");
  generate->add_option("--data", gen.data, "Membership file (.csv or .json); labels show region counts");
  generate->add_option("--label-mode", gen.label_mode, "balanced | visual-center | radial")
      ->default_val("balanced");
  generate->add_option("--canvas", gen.canvas, "Canvas size in px")->default_val(1024);
  generate->add_option("--stroke", gen.stroke, "Boundary stroke width in px")->default_val(1.5);
  generate->add_flag("--no-legend", gen.no_legend, "Omit the set legend");

  SpecFlags ver;
  std::string verify_out;
  auto* verify_cmd = app.add_subcommand("verify", "Print the verification report (exit 1 if a region is missing)");
  add_spec_flags(*verify_cmd, ver);
  verify_cmd->add_option("--out", verify_out, "Write the report here instead of stdout");

  AreasFlags areas;
  auto* areas_cmd = app.add_subcommand("areas", "Compare normalized region areas with another construction");
  add_spec_flags(*areas_cmd, areas.spec);
  areas_cmd->add_option("--against", areas.against, "Reference construction: edwards")->default_val("edwards");
  areas_cmd->add_option("--bins", areas.bins, "Histogram bins")->default_val(kHistogramBins);
  areas_cmd->add_option("--samples-per-arc", areas.samples_per_arc, "Edwards arc samples")->default_val(256);
  areas_cmd->add_option("--json", areas.json, "Also write the statistics as JSON");

  EdwardsFlags edw;
  auto* edwards = app.add_subcommand("edwards", "Render the Edwards cogwheel diagram");
  edwards->add_option("--n", edw.n, "Number of sets, 3..16")->default_val(6);
  edwards->add_option("--projection", edw.projection, "stereo | equatorial")->default_val("stereo");
  edwards->add_option("--variant", edw.side, "below (north pole) | above (south pole)")->default_val("below");
  edwards->add_option("--samples-per-arc", edw.samples_per_arc, "Samples per circular arc")->default_val(256);
  edwards->add_option("--resolution", edw.resolution, "Raster cells per side for fills and --report")
      ->default_val(1024);
  edwards->add_option("--out", edw.out, "Output SVG")->required();
  edwards->add_option("--report", edw.report, "Also write the region report JSON (stereo only)");

  auto* presets_cmd = app.add_subcommand("presets", "List shipped parameter sets");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (generate->parsed()) return cmd_generate(gen, out, err);
    if (verify_cmd->parsed()) return cmd_verify(ver, verify_out, out);
    if (areas_cmd->parsed()) return cmd_areas(areas, out);
    if (edwards->parsed()) return cmd_edwards(edw, out);
    if (presets_cmd->parsed()) return cmd_presets(out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace vennfan::cli
