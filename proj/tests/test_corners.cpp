#include <doctest.h>

#include <random>
#include <set>

#include "cornerkit/corners.hpp"
#include "oracles.hpp"

namespace ck = cornerkit;

namespace {

ck::GridSet from_points(const ck::GridParams& g, const std::vector<std::vector<int>>& pts) {
  ck::GridSet a(g);
  for (const auto& p : pts) a.add_point(p);
  return a;
}

std::set<oracle::PointV> to_oracle_points(const ck::GridSet& a) {
  std::set<oracle::PointV> out;
  a.bits.for_each_set([&](std::size_t idx) { out.insert(a.params.coords_of(idx)); });
  return out;
}

ck::GridSet random_set(const ck::GridParams& g, double density, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(density);
  ck::GridSet a(g);
  for (std::size_t i = 0; i < g.cells; ++i)
    if (coin(rng)) a.add(i);
  return a;
}

}  // namespace

TEST_CASE("corner stream matches the closed form and the spot values") {
  CHECK(ck::enumerated_corner_count_serial(ck::GridParams(1, 2)) == 0);
  CHECK(ck::enumerated_corner_count_serial(ck::GridParams(2, 2)) == 1);
  CHECK(ck::enumerated_corner_count_serial(ck::GridParams(3, 2)) == 5);
  CHECK(ck::enumerated_corner_count_serial(ck::GridParams(2, 3)) == 1);
  for (int k = 1; k <= 4; ++k) {
    for (int n = 1; n <= 12; ++n) {
      const ck::GridParams g(n, k);
      const std::uint64_t closed = ck::corner_count_closed_form(g);
      CHECK(ck::enumerated_corner_count_serial(g) == closed);
      CHECK(ck::enumerated_corner_count(g) == closed);
      CHECK(oracle::all_corners(n, k).size() == closed);
    }
  }
}

TEST_CASE("corner stream order is increasing d then canonical apex") {
  const auto corners = ck::enumerate_corners(ck::GridParams(3, 2));
  REQUIRE(corners.size() == 5);
  CHECK(corners[0] == ck::Corner{ck::Point{{1, 1}}, 1});
  CHECK(corners[1] == ck::Corner{ck::Point{{2, 1}}, 1});
  CHECK(corners[2] == ck::Corner{ck::Point{{1, 2}}, 1});
  CHECK(corners[3] == ck::Corner{ck::Point{{2, 2}}, 1});
  CHECK(corners[4] == ck::Corner{ck::Point{{1, 1}}, 2});
  CHECK_THROWS_AS(ck::enumerate_corners(ck::GridParams(50, 4), 1000), ck::SizeError);
}

TEST_CASE("corner counting matches the oracle and the examples") {
  const ck::GridParams g5(5, 2);
  CHECK(ck::count_corners_serial(ck::GridSet(g5)) == 0);
  CHECK(ck::count_corners_serial(ck::GridSet::full(ck::GridParams(3, 2))) == 5);
  const ck::GridSet tri = from_points(ck::GridParams(2, 2), {{1, 1}, {2, 1}, {1, 2}});
  CHECK(ck::count_corners_serial(tri) == 1);

  std::mt19937_64 rng(7);
  for (int it = 0; it < 60; ++it) {
    const int k = 2 + static_cast<int>(rng() % 2);
    const int n = 2 + static_cast<int>(rng() % (k == 2 ? 5 : 2));
    const ck::GridSet a = random_set(ck::GridParams(n, k), 0.5, rng);
    const std::uint64_t fast = ck::count_corners(a);
    CHECK(fast == ck::count_corners_serial(a));
    CHECK(fast == oracle::gamma(to_oracle_points(a), n, k));
  }
}

TEST_CASE("count agrees with filtering the corner stream") {
  std::mt19937_64 rng(11);
  const ck::GridParams g(4, 2);
  for (int it = 0; it < 20; ++it) {
    const ck::GridSet a = random_set(g, 0.6, rng);
    std::uint64_t filtered = 0;
    ck::for_each_corner(g, [&](int d, std::size_t apex) {
      for (std::size_t c : ck::corner_cell_indices(g, apex, d))
        if (!a.contains(c)) return;
      ++filtered;
    });
    CHECK(filtered == ck::count_corners_serial(a));
  }
}

TEST_CASE("corner-free check short-circuits with the first witness") {
  const ck::GridParams g(2, 2);
  CHECK(ck::is_corner_free(ck::GridSet(g)));
  const auto w = ck::first_corner_in(ck::GridSet::full(g));
  REQUIRE(w.has_value());
  CHECK(w->apex.coords == std::vector<int>{1, 1});
  CHECK(w->d == 1);
  CHECK(ck::is_corner_free(from_points(g, {{1, 2}, {2, 1}, {2, 2}})));
}

TEST_CASE("monotonicity of the corner count") {
  std::mt19937_64 rng(13);
  const ck::GridParams g(5, 2);
  for (int it = 0; it < 30; ++it) {
    ck::GridSet a = random_set(g, 0.4, rng);
    ck::GridSet b = a;
    for (std::size_t i = 0; i < g.cells; ++i)
      if (!b.contains(i) && rng() % 3 == 0) b.add(i);
    CHECK(ck::count_corners_serial(a) <= ck::count_corners_serial(b));
  }
}

TEST_CASE("translation and axis permutation preserve the corner count") {
  std::mt19937_64 rng(17);
  const ck::GridParams g(6, 2);
  for (int it = 0; it < 25; ++it) {
    ck::GridSet a(g);
    // confine to [1, 4]^2 so small translations stay in-grid
    for (int x = 1; x <= 4; ++x)
      for (int y = 1; y <= 4; ++y)
        if (rng() % 2) a.add_point(std::vector<int>{x, y});
    const auto base = ck::count_corners_serial(a);
    CHECK(ck::count_corners_serial(ck::translate(a, std::vector<int>{2, 1})) == base);
    CHECK(ck::count_corners_serial(ck::permute_axes(a, std::vector<int>{1, 0})) == base);
  }
  const ck::GridParams g3(3, 3);
  std::vector<std::vector<int>> perms{{0, 1, 2}, {1, 2, 0}, {2, 1, 0}};
  for (int it = 0; it < 10; ++it) {
    const ck::GridSet a = random_set(g3, 0.5, rng);
    const auto base = ck::count_corners_serial(a);
    for (const auto& p : perms)
      CHECK(ck::count_corners_serial(ck::permute_axes(a, p)) == base);
  }
}

TEST_CASE("incidence index matches the stream") {
  const ck::GridParams g(3, 2);
  const ck::CornerIndex ix(g);
  REQUIRE(ix.corner_count() == 5);
  CHECK(ix.corner(0) == ck::Corner{ck::Point{{1, 1}}, 1});
  CHECK(ix.corner(4) == ck::Corner{ck::Point{{1, 1}}, 2});
  // cell (2,2) lies in 3 corners
  CHECK(ix.corners_at(g.index_of(std::vector<int>{2, 2})).size() == 3);
  std::size_t incidences = 0;
  for (std::size_t c = 0; c < g.cells; ++c) incidences += ix.corners_at(c).size();
  CHECK(incidences == 5 * 3);
}

TEST_CASE("subset corner sums: closed form against exhaustive") {
  const ck::GridParams g(3, 2);
  const ck::GridSet full = ck::GridSet::full(g);
  CHECK(ck::subset_corner_sum(full, 5) == 75);
  CHECK(ck::subset_corner_sum(full, 2) == 0);  // too small for a corner
  CHECK_THROWS_AS(ck::subset_corner_sum(full, 10), ck::ArgumentError);
  CHECK_THROWS_AS(ck::subset_corner_sum(full, -1), ck::ArgumentError);

  const ck::GridSet free = from_points(ck::GridParams(2, 2), {{1, 2}, {2, 1}, {2, 2}});
  for (long long s = 0; s <= 3; ++s) CHECK(ck::subset_corner_sum(free, s) == 0);

  std::mt19937_64 rng(19);
  for (int it = 0; it < 15; ++it) {
    const ck::GridSet a = random_set(g, 0.7, rng);
    for (long long s = 0; s <= static_cast<long long>(a.size()); ++s)
      CHECK(ck::subset_corner_sum(a, s) == ck::subset_corner_sum_exhaustive(a, s));
  }
}
