#include <doctest.h>

#include <algorithm>
#include <limits>

#include "cornerkit/containers.hpp"
#include "oracles.hpp"

namespace ck = cornerkit;

namespace {

// exact rational evaluation of the codegree formula for cross-checking
double codegree_rational(const ck::Hypergraph& h, long long tau_num, long long tau_den) {
  using R = std::pair<ck::BigInt, ck::BigInt>;  // num / den
  auto add = [](R a, R b) { return R{a.first * b.second + b.first * a.second, a.second * b.second}; };
  auto mul = [](R a, R b) { return R{a.first * b.first, a.second * b.second}; };
  const int r = h.r;
  const ck::BigInt e(static_cast<long long>(h.edge_count()));
  R d{ck::BigInt(r) * e, ck::BigInt(static_cast<long long>(h.vertex_count))};
  R sum{0, 1};
  for (int j = 2; j <= r; ++j) {
    const long long expo = static_cast<long long>(j - 1) * (j - 2) / 2;
    R term{ck::BigInt(ck::delta_j(h, j)), ck::BigInt(1)};
    term = mul(term, R{ck::BigInt(1), ck::BigInt(1) << expo});
    // divide by tau^(j-1) and by d
    for (int t = 0; t < j - 1; ++t) term = mul(term, R{tau_den, tau_num});
    term = mul(term, R{d.second, d.first});
    sum = add(sum, term);
  }
  const long long lead_expo = static_cast<long long>(r) * (r - 1) / 2 - 1;
  sum = mul(sum, R{ck::BigInt(1) << lead_expo, ck::BigInt(1)});
  return sum.first.convert_to<double>() / sum.second.convert_to<double>();
}

}  // namespace

TEST_CASE("corner hypergraphs encode the corner structure") {
  const ck::Hypergraph h2 = ck::corner_hypergraph(ck::GridParams(2, 2));
  CHECK(h2.r == 3);
  CHECK(h2.vertex_count == 4);
  REQUIRE(h2.edge_count() == 1);
  CHECK(h2.edges[0] == std::vector<std::uint32_t>{0, 1, 2});

  const ck::Hypergraph h3 = ck::corner_hypergraph(ck::GridParams(3, 2));
  CHECK(h3.vertex_count == 9);
  CHECK(h3.edge_count() == 5);

  const ck::Hypergraph h1 = ck::corner_hypergraph(ck::GridParams(1, 3));
  CHECK(h1.vertex_count == 1);
  CHECK(h1.edge_count() == 0);
}

TEST_CASE("hypergraph constructor validates and deduplicates") {
  CHECK_THROWS_AS(ck::Hypergraph::make(2, 3, {{0, 0}}), ck::ArgumentError);
  CHECK_THROWS_AS(ck::Hypergraph::make(2, 3, {{0, 3}}), ck::ArgumentError);
  CHECK_THROWS_AS(ck::Hypergraph::make(2, 3, {{0}}), ck::ArgumentError);
  const ck::Hypergraph h = ck::Hypergraph::make(2, 3, {{2, 0}, {0, 2}, {0, 1}});
  CHECK(h.edge_count() == 2);
  CHECK(h.edges[0] == std::vector<std::uint32_t>{0, 1});
}

TEST_CASE("independent sets of the corner hypergraph are the corner-free sets") {
  for (int n = 1; n <= 3; ++n) {
    const auto scan = oracle::scan_subsets(n, 2);
    const ck::Hypergraph h = ck::corner_hypergraph(ck::GridParams(n, 2));
    // count independent sets by subset scan over the hypergraph
    std::uint64_t independent = 0;
    for (std::uint32_t mask = 0; mask < (1u << h.vertex_count); ++mask) {
      bool ok = true;
      for (const auto& e : h.edges) {
        bool inside = true;
        for (std::uint32_t v : e)
          if (!(mask & (1u << v))) inside = false;
        if (inside) {
          ok = false;
          break;
        }
      }
      if (ok) ++independent;
    }
    CHECK(independent == scan.corner_free_count);
  }
}

TEST_CASE("degree statistics") {
  const ck::Hypergraph h = ck::corner_hypergraph(ck::GridParams(3, 2));
  CHECK(ck::delta_j(h, 1) == 3);  // cell (2,2)
  CHECK(ck::delta_j(h, 2) == 1);  // no two corners share two cells
  CHECK(ck::delta_j(h, 3) == 1);
  CHECK_THROWS_AS(ck::delta_j(h, 0), ck::ArgumentError);
  CHECK_THROWS_AS(ck::delta_j(h, 4), ck::ArgumentError);

  // degree-sum consistency: sum_v deg(v) = r e(H)
  std::vector<long long> deg(h.vertex_count, 0);
  for (const auto& e : h.edges)
    for (std::uint32_t v : e) ++deg[v];
  long long total = 0;
  for (long long d : deg) total += d;
  CHECK(total == static_cast<long long>(h.r) * static_cast<long long>(h.edge_count()));

  // monotone: Delta_1 >= Delta_2 >= ... >= Delta_r >= 1
  for (int j = 2; j <= h.r; ++j) CHECK(ck::delta_j(h, j - 1) >= ck::delta_j(h, j));
  CHECK(ck::delta_j(h, h.r) == 1);
}

TEST_CASE("codegree formula: hand value, rational cross-check, monotonicity") {
  const ck::Hypergraph h = ck::corner_hypergraph(ck::GridParams(2, 2));
  const ck::CodegreeProfile p = ck::codegree(h, 0.5);
  CHECK(p.value == doctest::Approx(64.0 / 3.0).epsilon(1e-13));
  CHECK(p.avg_degree == doctest::Approx(0.75));
  CHECK(p.deltas == std::vector<long long>{1, 1, 1});

  CHECK(codegree_rational(h, 1, 2) == doctest::Approx(p.value).epsilon(1e-12));
  const ck::Hypergraph h3 = ck::corner_hypergraph(ck::GridParams(3, 2));
  CHECK(codegree_rational(h3, 1, 4) ==
        doctest::Approx(ck::codegree(h3, 0.25).value).epsilon(1e-12));
  CHECK(codegree_rational(h3, 2, 3) ==
        doctest::Approx(ck::codegree(h3, 2.0 / 3.0).value).epsilon(1e-12));

  double prev = ck::codegree(h, 0.05).value;
  for (double tau : {0.1, 0.2, 0.4, 0.8}) {
    const double cur = ck::codegree(h, tau).value;
    CHECK(cur < prev);
    prev = cur;
  }
  CHECK_THROWS_AS(ck::codegree(ck::corner_hypergraph(ck::GridParams(1, 2)), 0.5),
                  ck::ArgumentError);
}

TEST_CASE("hypothesis checks") {
  const ck::Hypergraph h = ck::corner_hypergraph(ck::GridParams(2, 2));
  const ck::HypothesisReport r1 = ck::check_hypotheses(h, 0.5, 0.4);
  CHECK(r1.r == 3);
  CHECK(r1.tau_limit == doctest::Approx(1.0 / 21600.0).epsilon(1e-12));
  CHECK(!r1.tau_ok);  // 0.4 >= 1/21600
  CHECK(r1.c_r_bound == doctest::Approx(648000.0));

  // tau tiny: condition 1 holds but the codegree blows up for fixed epsilon
  const ck::HypothesisReport r2 = ck::check_hypotheses(h, 0.5, 1e-9);
  CHECK(r2.tau_ok);
  CHECK(!r2.codegree_ok);
}

TEST_CASE("container builder: trivial and degenerate cases") {
  const ck::Hypergraph edgeless = ck::corner_hypergraph(ck::GridParams(1, 2));
  const ck::ContainerSet trivial = ck::build_containers(edgeless, 0.5);
  REQUIRE(trivial.containers.size() == 1);
  CHECK(trivial.containers[0] == std::vector<std::uint32_t>{0});

  const ck::Hypergraph h = ck::corner_hypergraph(ck::GridParams(2, 2));
  const ck::ContainerSet all = ck::build_containers(h, 1.0);
  REQUIRE(all.containers.size() == 1);
  CHECK(all.containers[0].size() == 4);  // epsilon = 1: V is a valid family

  const ck::ContainerSet cs = ck::build_containers(h, 0.5);
  REQUIRE(cs.containers.size() == 3);
  for (const auto& c : cs.containers) CHECK(c.size() == 3);
  CHECK_THROWS_AS(ck::build_containers(h, 0.0), ck::ArgumentError);
}

TEST_CASE("container families verify on small corner hypergraphs") {
  for (const auto& [n, k] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {2, 3}, {4, 2}}) {
    const ck::Hypergraph h = ck::corner_hypergraph(ck::GridParams(n, k));
    for (double eps : {0.2, 0.5, 0.9}) {
      const ck::ContainerSet cs = ck::build_containers(h, eps);
      const ck::VerifyReport rep = ck::verify_containers(h, cs, eps);
      CHECK(rep.covering_checked_exhaustively);
      CHECK(rep.covering_ok);
      CHECK(rep.sparsity_ok);
      CHECK(static_cast<double>(rep.max_edges_in_container) <= rep.edge_budget + 1e-12);
      // every independent set was walked: the count matches the census
      CHECK(rep.independent_sets_checked == oracle::scan_subsets(n, k).corner_free_count);
    }
  }
}

TEST_CASE("verification catches a dropped container") {
  const ck::Hypergraph h = ck::corner_hypergraph(ck::GridParams(2, 2));
  ck::ContainerSet cs = ck::build_containers(h, 0.5);
  REQUIRE(cs.containers.size() == 3);
  cs.containers.erase(cs.containers.begin());
  const ck::VerifyReport rep = ck::verify_containers(h, cs, 0.5);
  CHECK(!rep.covering_ok);
  REQUIRE(rep.uncovered.has_value());
  // the reported set really is independent and uncovered
  for (const auto& c : cs.containers)
    CHECK(!std::includes(c.begin(), c.end(), rep.uncovered->begin(), rep.uncovered->end()));
}

TEST_CASE("builder output shrinks as epsilon grows") {
  for (const auto& [n, k] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {2, 3}}) {
    const ck::Hypergraph h = ck::corner_hypergraph(ck::GridParams(n, k));
    std::size_t prev = std::numeric_limits<std::size_t>::max();
    for (double eps : {0.1, 0.3, 0.6, 1.0}) {
      const std::size_t count = ck::build_containers(h, eps).containers.size();
      CHECK(count <= prev);
      prev = count;
    }
  }
}

TEST_CASE("pipeline: desk-scale instances") {
  ck::ExtremalTable table;
  const ck::PipelineReport r22 =
      ck::container_counting_pipeline(ck::GridParams(2, 2), table);
  CHECK(r22.ck == 3);
  CHECK(r22.census == 14);
  CHECK(r22.census_within_sum);
  REQUIRE(r22.hypotheses.has_value());
  CHECK(!r22.hypotheses->tau_ok);  // tau = Psi(2) is far above the limit
  CHECK(r22.tau > 1.0);
  CHECK(r22.verify.covering_ok);
  CHECK(r22.verify.sparsity_ok);

  const ck::PipelineReport r32 =
      ck::container_counting_pipeline(ck::GridParams(3, 2), table);
  CHECK(r32.census_within_sum);
  CHECK(!r32.hypotheses->tau_ok);

  const ck::PipelineReport r23 =
      ck::container_counting_pipeline(ck::GridParams(2, 3), table);
  CHECK(r23.ck == 7);
  CHECK(r23.census == 240);
  CHECK(r23.census_within_sum);
  CHECK(!r23.hypotheses->tau_ok);

  const ck::PipelineReport r1 =
      ck::container_counting_pipeline(ck::GridParams(1, 2), table);
  CHECK(r1.census == 2);
  CHECK(r1.container_count == 1);
  CHECK(r1.sum_two_pow_size == 2);
}
