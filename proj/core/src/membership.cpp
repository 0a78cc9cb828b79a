#include "vennfan/membership.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vennfan/errors.hpp"

namespace vennfan {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && (s[a] == ' ' || s[a] == '\t' || s[a] == '\r')) ++a;
  while (b > a && (s[b - 1] == ' ' || s[b - 1] == '\t' || s[b - 1] == '\r')) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split_row(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.size() - start : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

void check_set_count(std::size_t n) {
  if (n == 0) throw ValidationError("membership: no sets");
  if (n > static_cast<std::size_t>(kMaxMembershipSets))
    throw ValidationError("membership: " + std::to_string(n) + " sets, at most " +
                          std::to_string(kMaxMembershipSets) + " supported");
}

}  // namespace

MembershipData parse_membership_csv(std::string_view text) {
  MembershipData data;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto cells = split_row(line);
    if (header) {
      if (cells.size() < 2 || cells.front() != "id")
        throw ValidationError("membership csv: header must be id,<set 1>,...,<set n>");
      data.set_names.assign(cells.begin() + 1, cells.end());
      check_set_count(data.set_names.size());
      header = false;
      continue;
    }
    const std::string where = "membership csv line " + std::to_string(line_no);
    if (cells.size() != data.set_names.size() + 1)
      throw ValidationError(where + ": expected " + std::to_string(data.set_names.size() + 1) + " cells");
    RegionMask mask = 0;
    for (std::size_t i = 1; i < cells.size(); ++i) {
      if (cells[i] == "1") {
        mask |= RegionMask{1} << (i - 1);
      } else if (cells[i] != "0") {
        throw ValidationError(where + ": non-binary cell '" + cells[i] + "'");
      }
    }
    if (cells.front().empty()) throw ValidationError(where + ": empty id");
    if (!data.elements.emplace(cells.front(), mask).second)
      throw ValidationError(where + ": duplicate id '" + cells.front() + "'");
  }
  if (header) throw ValidationError("membership csv: missing header");
  return data;
}

MembershipData parse_membership_json(std::string_view text) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("membership json: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("sets") || !doc["sets"].is_object())
    throw ValidationError("membership json: expected {\"sets\": {name: [ids]}}");
  const auto& sets = doc["sets"];
  check_set_count(sets.size());
  MembershipData data;
  int i = 0;
  for (const auto& [name, ids] : sets.items()) {
    data.set_names.push_back(name);
    if (!ids.is_array()) throw ValidationError("membership json: set '" + name + "' is not an array");
    std::map<std::string, bool> seen;
    for (const auto& id : ids) {
      const std::string key = id.is_string() ? id.get<std::string>() : id.dump();
      if (!seen.emplace(key, true).second)
        throw ValidationError("membership json: duplicate id '" + key + "' in set '" + name + "'");
      data.elements[key] |= RegionMask{1} << i;
    }
    ++i;
  }
  return data;
}

MembershipData ingest(const std::filesystem::path& path, MembershipFormat format) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ValidationError("membership: cannot read " + path.string());
  std::ostringstream buf;
  buf << file.rdbuf();
  return format == MembershipFormat::Csv ? parse_membership_csv(buf.str()) : parse_membership_json(buf.str());
}

MembershipData ingest(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".csv") return ingest(path, MembershipFormat::Csv);
  if (ext == ".json") return ingest(path, MembershipFormat::Json);
  throw ValidationError("membership: unknown format for " + path.string() + " (use .csv or .json)");
}

RegionCounts count_regions(const MembershipData& data) {
  RegionCounts out;
  out.n = data.n();
  for (RegionMask m = 0; m < (RegionMask{1} << out.n); ++m) out.counts[m] = 0;
  for (const auto& [id, mask] : data.elements) ++out.counts[mask];
  return out;
}

}  // namespace vennfan
