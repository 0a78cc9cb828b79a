#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "vennfan/membership.hpp"

using namespace vennfan;

TEST_CASE("csv ingestion") {
  const auto data = parse_membership_csv("id,A,B\na,1,0\nb,1,1\n");
  CHECK(data.set_names == std::vector<std::string>{"A", "B"});
  const auto counts = count_regions(data);
  CHECK(counts.counts.size() == 4);
  CHECK(counts.counts.at(mask_from_string("10")) == 1);
  CHECK(counts.counts.at(mask_from_string("11")) == 1);
  CHECK(counts.counts.at(0) == 0);
  CHECK(parse_membership_csv("id, A ,B\r\n x ,0, 1\r\n").elements.at("x") == mask_from_string("01"));
}

TEST_CASE("csv errors") {
  CHECK_THROWS_AS(parse_membership_csv("id,A\na,2\n"), ValidationError);
  CHECK_THROWS_AS(parse_membership_csv("id,A\na,1\na,0\n"), ValidationError);
  CHECK_THROWS_AS(parse_membership_csv("name,A\na,1\n"), ValidationError);
  CHECK_THROWS_AS(parse_membership_csv("id,A,B\na,1\n"), ValidationError);
  CHECK_THROWS_AS(parse_membership_csv(""), ValidationError);
  CHECK_THROWS_AS(parse_membership_csv("id,a,b,c,d,e,f,g,h,i,j\n"), ValidationError);
  CHECK_NOTHROW(parse_membership_csv("id,a,b,c,d,e,f,g,h,i\n"));
}

TEST_CASE("json ingestion") {
  const auto data = parse_membership_json(R"({"sets": {"A": ["x"], "B": ["x", "y"]}})");
  CHECK(data.elements.at("x") == 0b11);
  CHECK(data.elements.at("y") == 0b10);
  CHECK(data.set_names == std::vector<std::string>{"A", "B"});
  CHECK_THROWS_AS(parse_membership_json(R"({"sets": {"A": ["x", "x"]}})"), ValidationError);
  CHECK_THROWS_AS(parse_membership_json(R"({"groups": {}})"), ValidationError);
  CHECK_THROWS_AS(parse_membership_json("{not json"), ValidationError);
}

TEST_CASE("count_regions edge cases") {
  MembershipData empty;
  empty.set_names = {"A", "B", "C"};
  const auto zero = count_regions(empty);
  CHECK(zero.counts.size() == 8);
  for (const auto& [m, c] : zero.counts) CHECK(c == 0);
  MembershipData all = empty;
  all.elements["e"] = 0b111;
  CHECK(count_regions(all).counts.at(0b111) == 1);
}

TEST_CASE("ingest from files") {
  const auto dir = std::filesystem::temp_directory_path() / "vennfan_membership_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "m.csv") << "id,A,B\na,1,0\n";
  std::ofstream(dir / "m.json") << R"({"sets": {"A": ["a"], "B": []}})";
  std::ofstream(dir / "m.txt") << "";
  CHECK(ingest(dir / "m.csv").elements == ingest(dir / "m.json").elements);
  CHECK_THROWS_AS(ingest(dir / "m.txt"), ValidationError);
  CHECK_THROWS_AS(ingest(dir / "missing.csv"), ValidationError);
  std::filesystem::remove_all(dir);
}
