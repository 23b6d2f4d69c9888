// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <string>

#include "cornerkit/census.hpp"
#include "cornerkit/constructions.hpp"
#include "cornerkit/containers.hpp"
#include "cornerkit/corners.hpp"
#include "cornerkit/extremal.hpp"
#include "cornerkit/supersat.hpp"
#include "oracles.hpp"

namespace ck = cornerkit;

namespace {

int failures = 0;
using clk = std::chrono::steady_clock;

struct Criterion {
  const char* name;
  clk::time_point start = clk::now();
  bool ok = true;
  std::string detail;

  explicit Criterion(const char* n) : name(n) {}
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
  ~Criterion() {
    const double secs = std::chrono::duration<double>(clk::now() - start).count();
    std::printf("[%s] %-14s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", name, secs,
                ok ? "" : " -- ", ok ? "" : detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

ck::GridSet random_set(const ck::GridParams& g, double density, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(density);
  ck::GridSet a(g);
  for (std::size_t i = 0; i < g.cells; ++i)
    if (coin(rng)) a.add(i);
  return a;
}

void criterion1_corner_counts() {
  Criterion c("criterion-1");
  c.require(ck::enumerated_corner_count(ck::GridParams(2, 2)) == 1, "n=2 k=2 spot value");
  c.require(ck::enumerated_corner_count(ck::GridParams(3, 2)) == 5, "n=3 k=2 spot value");
  for (int k = 1; k <= 4 && c.ok; ++k) {
    for (int n = 1; n <= 50 && c.ok; ++n) {
      const ck::GridParams g(n, k);
      c.require(ck::enumerated_corner_count(g) == ck::corner_count_closed_form(g),
                "stream length vs closed form at n=" + std::to_string(n) +
                    " k=" + std::to_string(k));
    }
  }
}

void criterion2_extremal(ck::ExtremalTable& table) {
  Criterion c("criterion-2");
  for (int n = 1; n <= 20 && c.ok; ++n) {
    const ck::ExtremalRecord rec = ck::exact_c(ck::GridParams(n, 1));
    c.require(rec.status == ck::SolveStatus::exact, "k=1 budget");
    c.require(rec.lower == 1, "c_1(n) = 1");
    table.merge(rec);
  }
  struct Instance {
    int n, k;
  };
  for (const auto [n, k] : {Instance{1, 2}, Instance{2, 2}, Instance{3, 2},
                            Instance{4, 2}, Instance{1, 3}, Instance{2, 3},
                            Instance{1, 4}, Instance{2, 4}}) {
    const ck::GridParams g(n, k);
    const ck::ExtremalRecord rec = ck::exact_c(g);
    c.require(rec.status == ck::SolveStatus::exact, "solver budget");
    c.require(rec.lower == oracle::scan_subsets(n, k).max_corner_free,
              "solver vs oracle at n=" + std::to_string(n) + " k=" + std::to_string(k));
    c.require(rec.witness && ck::is_corner_free(*rec.witness) &&
                  static_cast<long long>(rec.witness->size()) == rec.lower,
              "witness validity");
    table.merge(rec);
  }
  c.require(table.exact(2, 2) == 3, "c_2(2) = 3");
  c.require(table.exact(2, 3) == 7, "c_2(3) = 7");
  c.require(table.exact(3, 2) == 7, "c_3(2) = 7");
}

void criterion3_census() {
  Criterion c("criterion-3");
  struct Instance {
    int n, k;
  };
  for (const auto [n, k] :
       {Instance{1, 1}, Instance{5, 1}, Instance{10, 1}, Instance{15, 1},
        Instance{20, 1}, Instance{25, 1}, Instance{2, 2}, Instance{3, 2},
        Instance{4, 2}, Instance{5, 2}, Instance{2, 3}, Instance{2, 4}}) {
    const ck::GridParams g(n, k);
    const ck::BigInt oracle_count = ck::count_corner_free_oracle(g).count;
    const ck::CensusRecord pruned = ck::count_corner_free(g);
    c.require(pruned.exact, "pruned counter exactness");
    c.require(pruned.count == oracle_count,
              "pruned vs oracle at n=" + std::to_string(n) + " k=" + std::to_string(k));
    if (!c.ok) return;
  }
  c.require(ck::count_corner_free(ck::GridParams(2, 2)).count == 14, "census(2,2)=14");
  c.require(ck::count_corner_free(ck::GridParams(2, 3)).count == 240, "census(2,3)=240");
  c.require(ck::count_corner_free(ck::GridParams(3, 1)).count == 4, "census(3,1)=4");
  for (int k = 2; k <= 4; ++k) {
    const ck::GridParams g(2, k);
    const ck::BigInt closed =
        (ck::BigInt(1) << g.cells) - (ck::BigInt(1) << (g.cells - (k + 1)));
    c.require(ck::count_corner_free(g).count == closed, "single-corner closed form");
  }
}

void criterion4_greedy(const ck::ExtremalTable& table) {
  Criterion c("criterion-4");
  // exhaustive over every subset of grids with n^k <= 16
  struct Instance {
    int n, k;
  };
  for (const auto [n, k] : {Instance{2, 2}, Instance{3, 2}, Instance{4, 2},
                            Instance{2, 3}, Instance{2, 4}, Instance{8, 1}}) {
    const ck::GridParams g(n, k);
    const long long ckn = *table.exact(k, n);
    for (std::uint32_t mask = 0; mask < (1u << g.cells) && c.ok; ++mask) {
      ck::GridSet a(g);
      for (std::size_t i = 0; i < g.cells; ++i)
        if (mask & (1u << i)) a.add(i);
      const auto ws = ck::greedy_corner_witnesses(a, ckn);
      c.require(static_cast<long long>(ws.size()) >=
                    static_cast<long long>(a.size()) - ckn,
                "witness count bound");
      std::set<std::pair<std::vector<int>, int>> seen;
      for (const ck::Corner& w : ws) seen.insert({w.apex.coords, w.d});
      c.require(seen.size() == ws.size(), "witness distinctness");
    }
    if (!c.ok) return;
  }
  // 10^4 random sets on [5]^2 with the exact extremal value
  const ck::GridParams g5(5, 2);
  const ck::ExtremalRecord rec5 = ck::exact_c(g5);
  c.require(rec5.status == ck::SolveStatus::exact, "c_2(5) within budget");
  std::mt19937_64 rng(4);
  for (int it = 0; it < 10'000 && c.ok; ++it) {
    const ck::GridSet a = random_set(g5, 0.05 + 0.9 * (it % 100) / 99.0, rng);
    const auto ws = ck::greedy_corner_witnesses(a, rec5.lower);
    c.require(static_cast<long long>(ws.size()) >=
                  static_cast<long long>(a.size()) - rec5.lower,
              "witness count bound on [5]^2");
    std::set<std::pair<std::vector<int>, int>> seen;
    for (const ck::Corner& w : ws) seen.insert({w.apex.coords, w.d});
    c.require(seen.size() == ws.size(), "witness distinctness on [5]^2");
  }
}

void criterion5_subset_sums() {
  Criterion c("criterion-5");
  const ck::GridParams g(3, 2);
  for (std::uint32_t mask = 0; mask < 512 && c.ok; ++mask) {
    ck::GridSet a(g);
    for (std::size_t i = 0; i < 9; ++i)
      if (mask & (1u << i)) a.add(i);
    for (long long s = 0; s <= static_cast<long long>(a.size()); ++s) {
      c.require(ck::subset_corner_sum(a, s) == ck::subset_corner_sum_exhaustive(a, s),
                "identity at mask=" + std::to_string(mask) + " s=" + std::to_string(s));
    }
  }
}

void criterion6_audit(const ck::ExtremalTable& table) {
  Criterion c("criterion-6");
  std::mt19937_64 rng(6);
  int audited = 0;
  for (int n : {6, 9, 12}) {
    const ck::GridParams g(n, 2);
    std::vector<ck::GridSet> sets;
    sets.push_back(ck::GridSet(g));
    sets.push_back(ck::GridSet::full(g));
    // arithmetic-structured adversaries: stripes, sublattices, diagonals
    for (int p : {2, 3}) {
      ck::GridSet lattice(g);
      ck::GridSet stripe(g);
      for (int x = 1; x <= n; ++x)
        for (int y = 1; y <= n; ++y) {
          if ((x - 1) % p == 0 && (y - 1) % p == 0)
            lattice.add_point(std::vector<int>{x, y});
          if ((x - 1) % p == 0) stripe.add_point(std::vector<int>{x, y});
        }
      sets.push_back(lattice);
      sets.push_back(stripe);
    }
    {
      ck::GridSet diag(g);
      for (int x = 1; x <= n; ++x)
        for (int y = x; y <= n; ++y) diag.add_point(std::vector<int>{x, y});
      sets.push_back(diag);
    }
    while (sets.size() < 1000 / 3 + 7)
      sets.push_back(random_set(g, 0.05 + 0.9 * (sets.size() % 19) / 18.0, rng));
    for (const ck::GridSet& a : sets) {
      for (int M : {2, 3}) {
        for (double x : {2.0, 5.0, 7.0}) {
          const ck::AuditReport rep =
              ck::audit_grid_family(a, ck::SupersatConfig{M, x, 2.0}, table);
          ++audited;
          c.require(rep.structural_ok, "structural audit entries");
          for (const ck::AuditEntry& e : rep.entries) {
            if (e.id == "1" || e.id == "mult" || e.id == "zeta")
              c.require(e.holds, "entry " + e.id + " at n=" + std::to_string(a.params.n) +
                                     " M=" + std::to_string(M));
          }
          if (!c.ok) return;
        }
      }
    }
  }
  c.require(audited >= 1000 * 6 / 3, "audit volume");
}

void criterion7_rates(const ck::ExtremalTable& table) {
  Criterion c("criterion-7");
  for (int k = 1; k <= 4; ++k) {
    const ck::RateFunctions rf = ck::RateFunctions::make(k, table);
    for (const ck::ExtremalRecord* rec : table.records_for(k)) {
      if (rec->status != ck::SolveStatus::exact) continue;
      if (std::log(static_cast<double>(rec->n)) <= 1.0) continue;
      const ck::RateValues v = ck::rate_eval(rf, rec->n);
      const double id = v.upsilon * static_cast<double>(rec->n) *
                        std::pow(v.psi, k) / v.log_n;
      c.require(std::abs(id - 1.0) <= 1e-12,
                "rate identity at k=" + std::to_string(k) + " n=" + std::to_string(rec->n));
    }
    const ck::SubadditivityReport rep = ck::check_subadditivity(table, k);
    c.require(rep.all_ok, "subadditivity checks at k=" + std::to_string(k));
  }
}

void criterion8_containers() {
  Criterion c("criterion-8");
  const ck::Hypergraph h22 = ck::corner_hypergraph(ck::GridParams(2, 2));
  c.require(std::abs(ck::codegree(h22, 0.5).value - 64.0 / 3.0) <= 1e-12 * 64.0 / 3.0,
            "codegree hand value 64/3");
  struct Instance {
    int n, k;
  };
  for (const auto [n, k] : {Instance{2, 2}, Instance{3, 2}, Instance{2, 3},
                            Instance{4, 2}, Instance{2, 4}}) {
    const ck::Hypergraph h = ck::corner_hypergraph(ck::GridParams(n, k));
    for (double eps : {0.25, 0.5, 0.9}) {
      const ck::ContainerSet cs = ck::build_containers(h, eps);
      const ck::VerifyReport rep = ck::verify_containers(h, cs, eps);
      c.require(rep.covering_checked_exhaustively && rep.covering_ok,
                "covering at n=" + std::to_string(n) + " k=" + std::to_string(k));
      c.require(rep.sparsity_ok, "sparsity at n=" + std::to_string(n));
    }
  }
  ck::ContainerSet broken = ck::build_containers(h22, 0.5);
  broken.containers.erase(broken.containers.begin());
  const ck::VerifyReport rep = ck::verify_containers(h22, broken, 0.5);
  c.require(!rep.covering_ok && rep.uncovered.has_value(),
            "mutation test: dropped container must be caught");
}

void criterion9_pipeline() {
  Criterion c("criterion-9");
  struct Instance {
    int n, k;
  };
  for (const auto [n, k] : {Instance{2, 2}, Instance{3, 2}, Instance{2, 3}}) {
    ck::ExtremalTable table;
    try {
      const ck::PipelineReport rep =
          ck::container_counting_pipeline(ck::GridParams(n, k), table);
      c.require(rep.census_within_sum,
                "census <= container sum at n=" + std::to_string(n) +
                    " k=" + std::to_string(k));
      c.require(rep.hypotheses.has_value() && !rep.hypotheses->tau_ok,
                "hypothesis flags unmet at n=" + std::to_string(n));
      const double rf = [&] {
        double f = 1;
        for (int i = 2; i <= k + 1; ++i) f *= i;
        return f;
      }();
      c.require(rep.tau >= 1.0 / (200.0 * (k + 1) * rf * rf),
                "tau exceeds the threshold");
      c.require(rep.verify.covering_ok && rep.verify.sparsity_ok, "verified family");
    } catch (const std::exception& e) {
      c.require(false, std::string("pipeline threw: ") + e.what());
    }
  }
}

void criterion10_constructions() {
  Criterion c("criterion-10");
  c.require(ck::behrend_set(10).elems.size() >= 4, "size >= 4 at n = 10");
  for (int n : {1, 2, 3, 4, 5, 6, 8, 10, 13, 17, 25, 50, 100, 250, 640, 1000, 4000, 10000}) {
    const ck::APFreeSet s = ck::behrend_set(n);
    c.require(!oracle::has_three_ap(s.elems), "3-AP oracle at n=" + std::to_string(n));
    c.require(s.elems.empty() || (s.elems.front() >= 1 && s.elems.back() <= n), "range");
    if (!c.ok) return;
  }
  std::mt19937_64 rng(10);
  for (int it = 0; it < 100 && c.ok; ++it) {
    const int n = 2 + static_cast<int>(rng() % 199);
    std::vector<int> elems;
    for (int tries = 0; tries < n; ++tries) {
      const int v = 1 + static_cast<int>(rng() % (n - 1));
      if (std::find(elems.begin(), elems.end(), v) != elems.end()) continue;
      elems.push_back(v);
      std::sort(elems.begin(), elems.end());
      if (oracle::has_three_ap(elems))
        elems.erase(std::find(elems.begin(), elems.end(), v));
    }
    const ck::APFreeSet a = ck::make_ap_free_set(n - 1, elems);
    const ck::GridSet b = ck::diagonal_corner_free_2d(n, a);
    std::size_t expected = 0;
    for (int v : a.elems) expected += static_cast<std::size_t>(n - v);
    c.require(b.size() == expected, "size formula at n=" + std::to_string(n));
    c.require(ck::is_corner_free(b), "corner-freeness at n=" + std::to_string(n));
  }
}

}  // namespace

int main() {
  ck::ExtremalTable table;
  criterion1_corner_counts();
  criterion2_extremal(table);
  criterion3_census();
  criterion4_greedy(table);
  criterion5_subset_sums();
  criterion6_audit(table);
  {
    // include c_2(5) in the rate-function table when the solver reaches it
    const ck::ExtremalRecord rec5 = ck::exact_c(ck::GridParams(5, 2));
    if (rec5.status == ck::SolveStatus::exact) table.merge(rec5);
  }
  criterion7_rates(table);
  criterion8_containers();
  criterion9_pipeline();
  criterion10_constructions();
  if (failures) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
