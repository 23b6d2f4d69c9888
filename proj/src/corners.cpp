#include "cornerkit/corners.hpp"

#include <algorithm>

namespace cornerkit {

std::uint64_t corner_count_closed_form(const GridParams& g) {
  std::uint64_t total = 0;
  for (int d = 1; d < g.n; ++d) {
    const std::uint64_t term =
        checked_pow_u64(static_cast<std::uint64_t>(g.n - d), static_cast<unsigned>(g.k));
    total = checked_add_u64(total, term);
  }
  return total;
}

std::uint64_t enumerated_corner_count_serial(const GridParams& g) {
  std::uint64_t total = 0;
  for_each_corner(g, [&](int, std::size_t) { ++total; });
  return total;
}

std::uint64_t enumerated_corner_count(const GridParams& g) {
  std::uint64_t total = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : total)
  for (int d = 1; d < g.n; ++d) {
    std::uint64_t local = 0;
    for_each_apex(g, g.n - d, [&](std::size_t) { ++local; });
    total += local;
  }
  return total;
}

std::vector<Corner> enumerate_corners(const GridParams& g, std::size_t max_corners) {
  const std::uint64_t total = corner_count_closed_form(g);
  if (total > max_corners) throw SizeError("corner stream too large to materialize");
  std::vector<Corner> out;
  out.reserve(total);
  for_each_corner(g, [&](int d, std::size_t apex) {
    out.push_back(Corner{Point{g.coords_of(apex)}, d});
  });
  return out;
}

namespace {

inline std::uint64_t count_for_d(const GridParams& g, const Bitmap& bits, int d) {
  const int k = g.k;
  std::uint64_t local = 0;
  for_each_apex(g, g.n - d, [&](std::size_t apex) {
    if (!bits.test(apex)) return;
    for (int i = 0; i < k; ++i) {
      if (!bits.test(apex + static_cast<std::size_t>(d) * g.stride[static_cast<std::size_t>(i)]))
        return;
    }
    ++local;
  });
  return local;
}

}  // namespace

std::uint64_t count_corners_serial(const GridSet& a) {
  std::uint64_t total = 0;
  for (int d = 1; d < a.params.n; ++d) total += count_for_d(a.params, a.bits, d);
  return total;
}

std::uint64_t count_corners(const GridSet& a) {
  std::uint64_t total = 0;
  const GridParams& g = a.params;
#pragma omp parallel for schedule(dynamic) reduction(+ : total)
  for (int d = 1; d < g.n; ++d) total += count_for_d(g, a.bits, d);
  return total;
}

std::optional<Corner> first_corner_in(const GridSet& a) {
  const GridParams& g = a.params;
  const int k = g.k;
  for (int d = 1; d < g.n; ++d) {
    std::optional<std::size_t> hit;
    for_each_apex(g, g.n - d, [&](std::size_t apex) {
      if (hit) return;
      if (!a.bits.test(apex)) return;
      for (int i = 0; i < k; ++i) {
        if (!a.bits.test(apex + static_cast<std::size_t>(d) * g.stride[static_cast<std::size_t>(i)]))
          return;
      }
      hit = apex;
    });
    if (hit) return Corner{Point{g.coords_of(*hit)}, d};
  }
  return std::nullopt;
}

bool is_corner_free(const GridSet& a) { return !first_corner_in(a).has_value(); }

CornerIndex::CornerIndex(const GridParams& g, std::size_t max_corners)
    : params_(g), width_(g.k + 1) {
  const std::uint64_t total = corner_count_closed_form(g);
  if (total > max_corners) throw SizeError("too many corners to index");
  cells_.reserve(total * static_cast<std::size_t>(width_));
  d_.reserve(total);
  apex_.reserve(total);
  cell_corners_.resize(g.cells);
  for_each_corner(g, [&](int d, std::size_t apex) {
    const auto cid = static_cast<std::uint32_t>(d_.size());
    d_.push_back(d);
    apex_.push_back(apex);
    cells_.push_back(static_cast<std::uint32_t>(apex));
    cell_corners_[apex].push_back(cid);
    for (int i = 0; i < g.k; ++i) {
      const std::size_t c = apex + static_cast<std::size_t>(d) * g.stride[static_cast<std::size_t>(i)];
      cells_.push_back(static_cast<std::uint32_t>(c));
      cell_corners_[c].push_back(cid);
    }
  });
}

Corner CornerIndex::corner(std::size_t cid) const {
  return Corner{Point{params_.coords_of(apex_[cid])}, d_[cid]};
}

BigInt subset_corner_sum(const GridSet& a, long long s) {
  const long long sz = static_cast<long long>(a.size());
  if (s < 0 || s > sz) throw ArgumentError("subset size out of range [0, |A|]");
  const int k = a.params.k;
  if (s < k + 1) return 0;
  const std::uint64_t gamma = count_corners_serial(a);
  if (gamma == 0) return 0;
  return BigInt(gamma) * binomial(sz - (k + 1), s - (k + 1));
}

BigInt subset_corner_sum_exhaustive(const GridSet& a, long long s) {
  const auto cells = a.cell_indices();
  const long long sz = static_cast<long long>(cells.size());
  if (s < 0 || s > sz) throw ArgumentError("subset size out of range [0, |A|]");
  if (sz > 20) throw SizeError("exhaustive subset sum limited to |A| <= 20");
  BigInt total = 0;
  GridSet sub(a.params);
  // all |A|-bit masks with popcount s
  const std::uint32_t m = static_cast<std::uint32_t>(sz);
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    if (std::popcount(mask) != s) continue;
    sub.bits.clear();
    for (std::uint32_t b = 0; b < m; ++b)
      if (mask & (1u << b)) sub.add(cells[b]);
    total += count_corners_serial(sub);
  }
  return total;
}

}  // namespace cornerkit
