#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>

#include "cornerkit/cache.hpp"
#include "cornerkit/io.hpp"

namespace ck = cornerkit;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("cornerkit-test-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

}  // namespace

TEST_CASE("grid set text format round-trips with comments and blanks") {
  const std::string text =
      "# sample set\n"
      "grid n=3 k=2\n"
      "\n"
      "1 2   # diagonal cell\n"
      "2 3\n"
      "1 3\n";
  const ck::GridSet a = ck::grid_set_from_text(text);
  CHECK(a.params.n == 3);
  CHECK(a.params.k == 2);
  CHECK(a.size() == 3);
  const ck::GridSet b = ck::grid_set_from_text(ck::grid_set_to_text(a));
  CHECK(a == b);
  CHECK_THROWS_AS(ck::grid_set_from_text(std::string("points\n1 2\n")), ck::FormatError);
  CHECK_THROWS_AS(ck::grid_set_from_text(std::string("grid n=3 k=2\n1\n")),
                  ck::ArgumentError);
  CHECK_THROWS_AS(ck::grid_set_from_text(std::string("grid n=3 k=2\n1 x\n")),
                  ck::FormatError);
}

TEST_CASE("grid set JSON form round-trips") {
  ck::GridSet a(ck::GridParams(4, 2));
  a.add_point(std::vector<int>{1, 1});
  a.add_point(std::vector<int>{4, 4});
  const ck::GridSet b = ck::grid_set_from_json(ck::grid_set_to_json(a));
  CHECK(a == b);
  const auto j = ck::grid_set_to_json(a);
  CHECK(j["n"] == 4);
  CHECK(j["cells"].size() == 2);
}

TEST_CASE("hypergraph text format round-trips") {
  const ck::Hypergraph h = ck::corner_hypergraph(ck::GridParams(3, 2));
  const ck::Hypergraph b = ck::hypergraph_from_text(ck::hypergraph_to_text(h));
  CHECK(b.r == h.r);
  CHECK(b.vertex_count == h.vertex_count);
  CHECK(b.edges == h.edges);
  CHECK_THROWS_AS(ck::hypergraph_from_text(std::string("3 4\n")), ck::FormatError);
  CHECK_THROWS_AS(ck::hypergraph_from_text(std::string("3 4 1\n0 1 9\n")),
                  ck::FormatError);
}

TEST_CASE("extremal and census records round-trip through JSON") {
  const ck::ExtremalRecord rec = ck::exact_c(ck::GridParams(3, 2));
  const ck::ExtremalRecord back = ck::extremal_record_from_json(
      ck::extremal_record_to_json(rec));
  CHECK(back.k == rec.k);
  CHECK(back.n == rec.n);
  CHECK(back.lower == rec.lower);
  CHECK(back.status == ck::SolveStatus::exact);
  REQUIRE(back.witness.has_value());
  CHECK(*back.witness == *rec.witness);

  const ck::CensusRecord cen = ck::make_census_record(2, 2, ck::BigInt(14), "oracle", true, 3);
  const ck::CensusRecord cback = ck::census_record_from_json(ck::census_record_to_json(cen));
  CHECK(cback.count == 14);
  CHECK(cback.ck == 3);
  CHECK(cback.exact);
}

TEST_CASE("cache: round-trip is byte-stable and exact records win") {
  TempDir tmp;
  ck::ResultCache cache(tmp.path);

  const ck::ExtremalRecord rec = ck::exact_c(ck::GridParams(3, 2));
  cache.upsert_extremal(rec);
  const ck::CacheData d1 = cache.load(2);
  REQUIRE(d1.extremal.size() == 1);
  CHECK(d1.extremal[0].lower == 7);

  // identical record rewrites produce identical record serialization
  const auto j1 = ck::extremal_record_to_json(d1.extremal[0]).dump();
  cache.upsert_extremal(rec);
  const ck::CacheData d2 = cache.load(2);
  CHECK(ck::extremal_record_to_json(d2.extremal[0]).dump() == j1);

  // a bounded record never displaces the exact one
  ck::ExtremalRecord weak;
  weak.k = 2;
  weak.n = 3;
  weak.status = ck::SolveStatus::bounded;
  weak.lower = 2;
  weak.upper = 8;
  cache.upsert_extremal(weak);
  CHECK(cache.load(2).extremal[0].status == ck::SolveStatus::exact);

  cache.upsert_census(ck::make_census_record(2, 2, ck::BigInt(14), "oracle", true, 3));
  const ck::CacheData d3 = cache.load(2);
  REQUIRE(d3.census.size() == 1);
  CHECK(d3.census[0].count == 14);
}

TEST_CASE("cache: corruption is refused before any write") {
  TempDir tmp;
  ck::ResultCache cache(tmp.path);
  cache.upsert_extremal(ck::exact_c(ck::GridParams(2, 2)));
  {
    std::ofstream out(cache.file_for(2));
    out << "{ not json";
  }
  CHECK_THROWS_AS(cache.load(2), ck::CacheError);
  CHECK_THROWS_AS(cache.upsert_extremal(ck::exact_c(ck::GridParams(3, 2))),
                  ck::CacheError);
}
