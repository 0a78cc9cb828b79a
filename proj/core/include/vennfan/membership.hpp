#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "vennfan/regions.hpp"

namespace vennfan {

inline constexpr int kMaxMembershipSets = 9;

struct MembershipData {
  std::vector<std::string> set_names;
  /// Element id -> membership bits (bit i = set_names[i]).
  std::map<std::string, RegionMask> elements;

  int n() const { return static_cast<int>(set_names.size()); }
};

struct RegionCounts {
  int n = 0;
  /// Every one of the 2^n masks, zero counts included.
  std::map<RegionMask, std::int64_t> counts;
};

enum class MembershipFormat { Csv, Json };

/// Header `id,<set 1>,...,<set n>` then one row per element with 0/1 cells.
MembershipData parse_membership_csv(std::string_view text);
/// {"sets": {name: [element ids]}}; sets keep their order of appearance.
MembershipData parse_membership_json(std::string_view text);

/// Format from the file extension (.csv / .json), then parse.
MembershipData ingest(const std::filesystem::path& path);
MembershipData ingest(const std::filesystem::path& path, MembershipFormat format);

RegionCounts count_regions(const MembershipData& data);

}  // namespace vennfan
