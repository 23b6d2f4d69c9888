#include "cornerkit/supersat.hpp"

#include <algorithm>
#include <cmath>

namespace cornerkit {

std::vector<int> primes_up_to(double x) {
  if (x < 0) throw ArgumentError("prime cutoff must be nonnegative");
  if (x < 2) return {};
  const auto limit = static_cast<std::size_t>(std::floor(x));
  std::vector<char> composite(limit + 1, 0);
  std::vector<int> out;
  for (std::size_t p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    out.push_back(static_cast<int>(p));
    for (std::size_t q = p * p; q <= limit; q += p) composite[q] = 1;
  }
  return out;
}

PntReport pnt_bounds_check(double x) {
  PntReport rep;
  rep.x = x;
  rep.pi = primes_up_to(x).size();
  if (x > 1.0) {
    const double lx = std::log(x);
    rep.lower = x / lx;
    rep.upper = 2.0 * x / lx;
  }
  rep.lower_holds = static_cast<double>(rep.pi) >= rep.lower;
  rep.upper_holds = static_cast<double>(rep.pi) <= rep.upper;
  rep.in_known_lower_window = x >= 17.0;
  return rep;
}

std::vector<Corner> greedy_corner_witnesses(const GridSet& a, long long ck) {
  if (ck < 0) throw ArgumentError("ck must be nonnegative");
  const CornerIndex ix(a.params);
  const auto width = static_cast<std::uint8_t>(ix.width());
  std::vector<std::uint8_t> inc(ix.corner_count(), 0);
  std::size_t alive = 0;
  Bitmap cur = a.bits;
  cur.for_each_set([&](std::size_t c) {
    for (std::uint32_t cid : ix.corners_at(c))
      if (++inc[cid] == width) ++alive;
  });

  std::vector<Corner> found;
  while (alive > 0) {
    std::size_t first = ix.corner_count();
    for (std::size_t cid = 0; cid < ix.corner_count(); ++cid) {
      if (inc[cid] == width) {
        first = cid;
        break;
      }
    }
    found.push_back(ix.corner(first));
    std::size_t victim = 0, best_kills = 0;
    bool have = false;
    for (std::uint32_t c : ix.cells_of(first)) {
      std::size_t kills = 0;
      for (std::uint32_t cid : ix.corners_at(c))
        if (inc[cid] == width) ++kills;
      if (!have || kills > best_kills) {
        have = true;
        best_kills = kills;
        victim = c;
      }
    }
    cur.reset(victim);
    for (std::uint32_t cid : ix.corners_at(victim))
      if (inc[cid]-- == width) --alive;
  }
  return found;
}

std::pair<int, int> GridFamily::zeta_interval(int d) const {
  const int lo = (cfg.M - 1) * d + 1;
  const int hi = params.n - (cfg.M - 1) * d;
  return {lo, hi};
}

GridFamily build_grid_family(const GridSet& a, const SupersatConfig& cfg,
                             const ExtremalTable& table) {
  if (cfg.M < 2) throw ArgumentError("subgrid side M must be >= 2");
  if (cfg.x < 0) throw ArgumentError("prime cutoff must be nonnegative");
  if (cfg.K < 2) throw ArgumentError("density constant K must be >= 2");
  const GridParams& g = a.params;
  const auto ck_M = table.exact(g.k, cfg.M);
  if (!ck_M)
    throw TableMissError("no exact c_k(M) for k=" + std::to_string(g.k) +
                         ", M=" + std::to_string(cfg.M));
  GridFamily fam;
  fam.params = g;
  fam.cfg = cfg;
  fam.ck_M = *ck_M;
  fam.primes = primes_up_to(cfg.x);
  const double threshold = cfg.K * static_cast<double>(*ck_M);
  for (int d : fam.primes) {
    std::vector<Subgrid> grids;
    std::vector<char> dense_flags;
    const int side = g.n - (cfg.M - 1) * d;
    for_each_apex(g, side, [&](std::size_t base) {
      grids.push_back(Subgrid{base, d});
    });
    const std::uint64_t expected =
        side > 0 ? checked_pow_u64(static_cast<std::uint64_t>(side),
                                   static_cast<unsigned>(g.k))
                 : 0;
    if (grids.size() != expected)
      throw VerificationError("family size does not match (n-(M-1)d)^k");
    dense_flags.resize(grids.size(), 0);
    for (std::size_t i = 0; i < grids.size(); ++i) {
      const std::uint64_t inter = subgrid_intersection_size(a, grids[i], cfg.M);
      if (static_cast<double>(inter) >= threshold) {
        dense_flags[i] = 1;
        ++fam.dense_count;
      }
    }
    fam.total_subgrids += grids.size();
    fam.per_prime.push_back(std::move(grids));
    fam.dense.push_back(std::move(dense_flags));
  }
  return fam;
}

namespace {

// Walks the M^k lattice cells of a subgrid, passing (ambient index,
// compressed index in [M]^k).
template <class F>
void for_each_subgrid_cell(const GridParams& g, const GridParams& gm,
                           const Subgrid& sg, int M, F&& f) {
  std::vector<int> j(static_cast<std::size_t>(g.k), 0);
  std::size_t amb = sg.base_idx;
  std::size_t cmp = 0;
  for (;;) {
    f(amb, cmp);
    int i = 0;
    for (; i < g.k; ++i) {
      const auto ii = static_cast<std::size_t>(i);
      if (++j[ii] < M) {
        amb += static_cast<std::size_t>(sg.d) * g.stride[ii];
        cmp += gm.stride[ii];
        break;
      }
      amb -= static_cast<std::size_t>(M - 1) * static_cast<std::size_t>(sg.d) * g.stride[ii];
      cmp -= static_cast<std::size_t>(M - 1) * gm.stride[ii];
      j[ii] = 0;
    }
    if (i == g.k) return;
  }
}

}  // namespace

std::uint64_t subgrid_corner_count(const GridSet& a, const Subgrid& sg, int M) {
  const GridParams gm(M, a.params.k);
  GridSet sub(gm);
  for_each_subgrid_cell(a.params, gm, sg, M, [&](std::size_t amb, std::size_t cmp) {
    if (a.contains(amb)) sub.add(cmp);
  });
  return count_corners_serial(sub);
}

std::uint64_t subgrid_intersection_size(const GridSet& a, const Subgrid& sg, int M) {
  const GridParams gm(M, a.params.k);
  std::uint64_t count = 0;
  for_each_subgrid_cell(a.params, gm, sg, M, [&](std::size_t amb, std::size_t) {
    if (a.contains(amb)) ++count;
  });
  return count;
}

std::uint64_t family_corner_sum_serial(const GridSet& a, const GridFamily& fam) {
  std::uint64_t total = 0;
  for (const auto& grids : fam.per_prime)
    for (const Subgrid& sg : grids) total += subgrid_corner_count(a, sg, fam.cfg.M);
  return total;
}

std::uint64_t family_corner_sum(const GridSet& a, const GridFamily& fam) {
  std::vector<const Subgrid*> flat;
  flat.reserve(fam.total_subgrids);
  for (const auto& grids : fam.per_prime)
    for (const Subgrid& sg : grids) flat.push_back(&sg);
  std::uint64_t total = 0;
  const auto count = static_cast<std::int64_t>(flat.size());
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : total)
  for (std::int64_t i = 0; i < count; ++i)
    total += subgrid_corner_count(a, *flat[static_cast<std::size_t>(i)], fam.cfg.M);
  return total;
}

std::uint64_t family_intersection_sum(const GridSet& a, const GridFamily& fam) {
  std::uint64_t total = 0;
  for (const auto& grids : fam.per_prime)
    for (const Subgrid& sg : grids)
      total += subgrid_intersection_size(a, sg, fam.cfg.M);
  return total;
}

namespace {

AuditEntry entry(std::string id, std::string label, double lhs, double rhs,
                 std::string relation, bool pre, bool structural, std::string note) {
  AuditEntry e;
  e.id = std::move(id);
  e.label = std::move(label);
  e.lhs = lhs;
  e.rhs = rhs;
  e.relation = std::move(relation);
  e.preconditions_met = pre;
  e.structural = structural;
  constexpr double kSlack = 1e-9;
  e.holds = e.relation == ">=" ? lhs >= rhs - kSlack : lhs <= rhs + kSlack;
  e.note = std::move(note);
  return e;
}

}  // namespace

AuditReport audit_grid_family(const GridSet& a, const SupersatConfig& cfg,
                              const ExtremalTable& table) {
  const GridParams& g = a.params;
  GridFamily fam = build_grid_family(a, cfg, table);

  AuditReport rep;
  rep.params = g;
  rep.cfg = cfg;
  rep.ck_M = fam.ck_M;
  rep.set_size = a.size();
  rep.gamma = count_corners(a);
  rep.family_size = fam.total_subgrids;
  rep.dense_count = fam.dense_count;

  const int k = g.k;
  const int M = cfg.M;
  const double nk = std::pow(static_cast<double>(g.n), k);
  const double size = static_cast<double>(rep.set_size);
  rep.x_canonical = size / (std::pow(2.0, k + 1) * M * std::pow(static_cast<double>(g.n), k - 1));
  rep.density_ok = size / nk >= 8.0 * cfg.K * static_cast<double>(fam.ck_M) /
                                     std::pow(static_cast<double>(M), k);

  const double log2n = std::log2(static_cast<double>(g.n));
  const double mk = std::pow(static_cast<double>(M), k);
  const std::uint64_t sum_gamma = family_corner_sum(a, fam);
  const std::uint64_t sum_inter = family_intersection_sum(a, fam);
  const double gamma = static_cast<double>(rep.gamma);

  const bool x_canonical_ok = cfg.x <= rep.x_canonical + 1e-9;
  const bool pnt_lower_window = cfg.x >= 17.0;
  const bool pnt_upper_usable = cfg.x >= 2.0;
  const double lnx = cfg.x > 1.0 ? std::log(cfg.x) : 0.0;
  const double x_over_lnx = lnx > 0 ? cfg.x / lnx : 0.0;

  // (1) corner dispersion: base-2 divisor logs make this unconditional
  {
    const double rhs = sum_gamma == 0 ? 0.0 : static_cast<double>(sum_gamma) / (mk * log2n);
    rep.entries.push_back(entry("1", "corner count dominates subgrid dispersion",
                                gamma, rhs, ">=", true, true, "divisor logs base 2"));
  }
  // multiplicity: each corner lands in at most (M-1)^k log2(n) subgrids
  {
    const double rhs = gamma * std::pow(static_cast<double>(M - 1), k) * log2n;
    rep.entries.push_back(entry("mult", "subgrid corner sum multiplicity bound",
                                static_cast<double>(sum_gamma), rhs, "<=", true, true,
                                "divisor logs base 2"));
  }
  // (2) dense subgrids carry the double-counting bound
  {
    const bool pre = k >= 2 && fam.dense_count > 0;
    double min_dense = 0;
    if (fam.dense_count > 0) {
      bool first = true;
      for (std::size_t pi = 0; pi < fam.per_prime.size(); ++pi) {
        for (std::size_t i = 0; i < fam.per_prime[pi].size(); ++i) {
          if (!fam.dense[pi][i]) continue;
          const double c = static_cast<double>(
              subgrid_corner_count(a, fam.per_prime[pi][i], M));
          if (first || c < min_dense) min_dense = c;
          first = false;
        }
      }
    }
    const double rhs = std::pow(cfg.K / 2.0, k + 1) * static_cast<double>(fam.ck_M);
    rep.entries.push_back(entry("2", "dense subgrids meet the density bound",
                                min_dense, rhs, ">=", pre, false,
                                pre ? "" : "no dense subgrid or k < 2"));
  }
  // (3) combination of (1) and (2)
  {
    const double rhs = log2n > 0
                           ? static_cast<double>(fam.dense_count) *
                                 std::pow(cfg.K / 2.0, k + 1) *
                                 static_cast<double>(fam.ck_M) / (mk * log2n)
                           : 0.0;
    rep.entries.push_back(entry("3", "corner count dominates dense family bound",
                                gamma, rhs, ">=", k >= 2, false, ""));
  }
  // (4) intersection mass: PNT lower bound times |A|/2
  {
    const double rhs = x_over_lnx > 0 ? mk * x_over_lnx * size / 2.0 : 0.0;
    rep.entries.push_back(entry(
        "4", "subgrid intersection mass lower bound",
        static_cast<double>(sum_inter), rhs, ">=",
        x_canonical_ok && pnt_lower_window, false,
        x_canonical_ok ? "" : "configured x exceeds |A|/(2^(k+1) M n^(k-1))"));
  }
  // (5) family size against the PNT upper bound
  {
    const double rhs = x_over_lnx > 0 ? 2.0 * x_over_lnx * nk : 0.0;
    rep.entries.push_back(entry("5", "family size upper bound",
                                static_cast<double>(rep.family_size), rhs, "<=",
                                pnt_upper_usable, false, ""));
  }
  // (6) intersection mass split over dense and sparse subgrids
  {
    const double rhs = mk * static_cast<double>(fam.dense_count) +
                       cfg.K * static_cast<double>(fam.ck_M) *
                           (x_over_lnx > 0 ? 2.0 * x_over_lnx * nk : 0.0);
    rep.entries.push_back(entry("6", "intersection mass dense/sparse split",
                                static_cast<double>(sum_inter), rhs, "<=",
                                pnt_upper_usable, false, ""));
  }
  // (7) dense family lower bound under the density condition
  {
    const double rhs = x_over_lnx > 0 ? x_over_lnx * size / 4.0 : 0.0;
    rep.entries.push_back(entry(
        "7", "dense family size lower bound",
        static_cast<double>(fam.dense_count), rhs, ">=",
        rep.density_ok && x_canonical_ok && pnt_lower_window, false,
        rep.density_ok ? "" : "density condition |A|/n^k >= 8K c_k(M)/M^k not met"));
  }
  // zeta regions: every central cell lies in exactly M^k subgrids of G_d
  {
    bool all_exact = true;
    std::size_t checked = 0;
    double observed = mk;
    if (g.cells <= 1'000'000) {
      std::vector<std::uint32_t> mult(g.cells);
      for (std::size_t pi = 0; pi < fam.primes.size(); ++pi) {
        std::fill(mult.begin(), mult.end(), 0);
        const GridParams gm(M, k);
        for (const Subgrid& sg : fam.per_prime[pi])
          for_each_subgrid_cell(g, gm, sg, M,
                                [&](std::size_t amb, std::size_t) { ++mult[amb]; });
        const auto [lo, hi] = fam.zeta_interval(fam.primes[pi]);
        if (lo > hi) continue;
        for (std::size_t cell = 0; cell < g.cells; ++cell) {
          const auto coords = g.coords_of(cell);
          const bool central = std::all_of(coords.begin(), coords.end(),
                                           [&](int c) { return c >= lo && c <= hi; });
          if (!central) continue;
          ++checked;
          if (static_cast<double>(mult[cell]) != mk) {
            all_exact = false;
            observed = mult[cell];
          }
        }
      }
    }
    AuditEntry e;
    e.id = "zeta";
    e.label = "central cells lie in exactly M^k subgrids";
    e.lhs = observed;
    e.rhs = mk;
    e.relation = "==";
    e.preconditions_met = true;
    e.structural = true;
    e.holds = all_exact;
    e.note = "cells checked: " + std::to_string(checked);
    rep.entries.push_back(e);
  }
  // final mixed-base form of the chain
  {
    const double lnn = std::log(static_cast<double>(g.n));
    const double rhs =
        (lnn > 0 && log2n > 0)
            ? size * size / std::pow(2.0, 2 * k + 4) *
                  std::pow(cfg.K, k + 1) * static_cast<double>(fam.ck_M) /
                  (std::pow(static_cast<double>(M), k + 1) *
                   std::pow(static_cast<double>(g.n), k - 1) * lnn * log2n)
            : 0.0;
    rep.entries.push_back(entry(
        "final", "quadratic supersaturation form", gamma, rhs, ">=",
        rep.density_ok && x_canonical_ok && pnt_lower_window && k >= 2, false,
        "one natural log from prime counting, one base-2 log from divisors"));
  }

  for (const AuditEntry& e : rep.entries)
    if (e.structural && !e.holds) rep.structural_ok = false;
  return rep;
}

DoubleCountingReport check_double_counting_bound(const GridSet& a, long long ck,
                                                 std::optional<long long> identity_s) {
  if (ck < 0) throw ArgumentError("ck must be nonnegative");
  DoubleCountingReport rep;
  const int k = a.params.k;
  rep.k = k;
  rep.ck = ck;
  rep.set_size = a.size();
  const auto size = static_cast<long long>(rep.set_size);
  rep.preconditions_met = k >= 2 && size >= 2 * ck && ck >= 1;
  rep.gamma = count_corners_serial(a);
  if (rep.preconditions_met) {
    rep.bound = std::pow(static_cast<double>(size) / (2.0 * static_cast<double>(ck)),
                         k + 1) *
                static_cast<double>(ck);
    rep.holds = static_cast<double>(rep.gamma) >= rep.bound - 1e-9;
    // exact binomial form of the same bound
    const BigInt lhs = binomial(size, 2 * ck) * ck;
    const BigInt rhs = BigInt(rep.gamma) * binomial(size - k - 1, 2 * ck - k - 1);
    rep.binom_form_ok = lhs <= rhs;
    if (rep.gamma == 0) rep.holds = false;  // contradicts exactness of ck
  }
  rep.identity_s = identity_s.value_or(std::min<long long>(size, 2 * ck));
  rep.identity_closed = subset_corner_sum(a, rep.identity_s);
  if (size <= 20) {
    rep.identity_exhaustive = subset_corner_sum_exhaustive(a, rep.identity_s);
    rep.identity_checked = true;
    rep.identity_ok = rep.identity_closed == rep.identity_exhaustive;
  }
  return rep;
}

TargetReport supersaturation_target(const GridSet& a, const RateFunctions& rf) {
  const GridParams& g = a.params;
  if (g.k != rf.k) throw ArgumentError("set dimension does not match rate functions");
  const RateValues v = rate_eval(rf, g.n);
  const auto ck = rf.table->exact(rf.k, g.n);
  TargetReport rep;
  rep.k = g.k;
  rep.n = g.n;
  rep.ck = *ck;
  rep.set_size = a.size();
  rep.c_prime = rf.c_prime;
  rep.size_threshold = rf.c_prime * static_cast<double>(*ck);
  rep.threshold_met = static_cast<double>(rep.set_size) >= rep.size_threshold;
  rep.gamma = count_corners(a);
  rep.upsilon = v.upsilon;
  rep.target = v.upsilon * std::pow(static_cast<double>(g.n), g.k);
  rep.identity_ratio = v.upsilon * static_cast<double>(g.n) * std::pow(v.psi, g.k) / v.log_n;
  rep.identity_ok = std::abs(rep.identity_ratio - 1.0) <= 1e-12;
  return rep;
}

}  // namespace cornerkit
