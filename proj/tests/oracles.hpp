// Brute-force reference implementations used as oracles. These work on
// coordinate vectors and subset masks directly and stay independent of the
// library's bitmap kernels and cell indexing.
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>
#include <vector>

namespace oracle {

using PointV = std::vector<int>;

inline std::vector<PointV> grid_points(int n, int k) {
  std::vector<PointV> pts;
  PointV cur(static_cast<std::size_t>(k), 1);
  for (;;) {
    pts.push_back(cur);
    int i = k - 1;  // last coordinate slowest, any fixed order works here
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n) {
      cur[static_cast<std::size_t>(i)] = 1;
      --i;
    }
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
  }
  return pts;
}

// Every corner of [n]^k as its k+1 points.
inline std::vector<std::vector<PointV>> all_corners(int n, int k) {
  std::vector<std::vector<PointV>> out;
  for (const PointV& apex : grid_points(n, k)) {
    for (int d = 1; d < n; ++d) {
      bool fits = true;
      for (int c : apex)
        if (c + d > n) fits = false;
      if (!fits) continue;
      std::vector<PointV> corner{apex};
      for (int i = 0; i < k; ++i) {
        PointV p = apex;
        p[static_cast<std::size_t>(i)] += d;
        corner.push_back(p);
      }
      out.push_back(std::move(corner));
    }
  }
  return out;
}

inline std::uint64_t gamma(const std::set<PointV>& pts, int n, int k) {
  std::uint64_t count = 0;
  for (const auto& corner : all_corners(n, k)) {
    bool inside = true;
    for (const PointV& p : corner)
      if (!pts.count(p)) inside = false;
    if (inside) ++count;
  }
  return count;
}

// Exhaustive census and extremal value over all subsets of the grid.
struct SubsetScan {
  std::uint64_t corner_free_count = 0;
  int max_corner_free = 0;
};

inline SubsetScan scan_subsets(int n, int k) {
  const auto pts = grid_points(n, k);
  const auto corners = all_corners(n, k);
  std::vector<std::uint32_t> masks;
  for (const auto& corner : corners) {
    std::uint32_t m = 0;
    for (const auto& p : corner) {
      const auto it = std::find(pts.begin(), pts.end(), p);
      m |= std::uint32_t{1} << (it - pts.begin());
    }
    masks.push_back(m);
  }
  SubsetScan out;
  const std::uint64_t total = std::uint64_t{1} << pts.size();
  for (std::uint64_t s = 0; s < total; ++s) {
    bool free = true;
    for (std::uint32_t m : masks) {
      if ((static_cast<std::uint32_t>(s) & m) == m) {
        free = false;
        break;
      }
    }
    if (!free) continue;
    ++out.corner_free_count;
    out.max_corner_free = std::max(out.max_corner_free, std::popcount(static_cast<std::uint32_t>(s)));
  }
  return out;
}

// Largest 3-AP-free subset of [1, n] by depth-first search.
inline int r3_max(int n) {
  std::vector<int> chosen;
  int best = 0;
  auto rec = [&](auto&& self, int next) -> void {
    best = std::max(best, static_cast<int>(chosen.size()));
    if (next > n) return;
    if (static_cast<int>(chosen.size()) + (n - next + 1) <= best) return;
    // take next if it closes no AP
    bool ok = true;
    for (std::size_t i = 0; i < chosen.size() && ok; ++i)
      for (std::size_t j = i + 1; j < chosen.size() && ok; ++j)
        if (chosen[i] + next == 2 * chosen[j]) ok = false;
    if (ok) {
      chosen.push_back(next);
      self(self, next + 1);
      chosen.pop_back();
    }
    self(self, next + 1);
  };
  rec(rec, 1);
  return best;
}

inline bool has_three_ap(const std::vector<int>& sorted) {
  for (std::size_t i = 0; i < sorted.size(); ++i)
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      const int z = 2 * sorted[j] - sorted[i];
      if (std::binary_search(sorted.begin(), sorted.end(), z) && z != sorted[j])
        return true;
    }
  return false;
}

}  // namespace oracle
