#include <json.hpp>

#include "vennfan/regions.hpp"

namespace vennfan {

using ordered_json = nlohmann::ordered_json;

std::string to_json(const DiagramReport& report) {
  ordered_json j;
  j["n"] = report.n;
  j["resolution"] = report.resolution;
  j["isIndependentFamily"] = report.is_independent_family;
  j["isVenn"] = report.is_venn;
  if (report.is_simple == Tristate::Unknown)
    j["isSimple"] = "unknown";
  else
    j["isSimple"] = report.is_simple == Tristate::True;

  ordered_json counts = ordered_json::object();
  for (const auto& [mask, count] : report.components_per_mask) counts[mask_to_string(mask, report.n)] = count;
  j["componentsPerMask"] = std::move(counts);

  ordered_json areas = ordered_json::object();
  for (const auto& [mask, area] : report.areas) areas[mask_to_string(mask, report.n)] = area;
  j["areas"] = std::move(areas);

  ordered_json tiny = ordered_json::array();
  for (const auto& t : report.tiny_regions) {
    tiny.push_back({{"mask", mask_to_string(t.mask, report.n)},
                    {"area", t.area},
                    {"cells", t.cells},
                    {"centroid", {t.centroid.x, t.centroid.y}}});
  }
  j["tinyRegions"] = std::move(tiny);

  ordered_json outer = ordered_json::array();
  for (RegionMask m : report.outer_masks) outer.push_back(mask_to_string(m, report.n));
  j["outerMasks"] = std::move(outer);
  j["tinyThreshold"] = report.tiny_threshold;
  return j.dump(2) + "\n";
}

std::string to_json(const AreaStats& stats) {
  ordered_json j;
  j["regions"] = stats.regions;
  j["minWeight"] = stats.min_weight;
  j["maxWeight"] = stats.max_weight;
  j["log10Min"] = stats.log10_min;
  j["log10Max"] = stats.log10_max;
  j["log10Mean"] = stats.log10_mean;
  j["log10Std"] = stats.log10_std;
  j["histogram"] = {{"log10Lo", stats.hist_lo}, {"log10Hi", stats.hist_hi}, {"counts", stats.histogram}};
  return j.dump(2) + "\n";
}

}  // namespace vennfan
