#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cornerkit/grid.hpp"

namespace cornerkit {

// Number of corners of the full grid: sum_{d=1}^{n-1} (n-d)^k.
std::uint64_t corner_count_closed_form(const GridParams&);

// Walks all cells of [1, side]^k in canonical index order, passing the
// 0-based cell index relative to the ambient grid g.
template <class F>
inline void for_each_apex(const GridParams& g, int side, F&& f) {
  if (side <= 0) return;
  const int k = g.k;
  std::vector<int> digit(static_cast<std::size_t>(k), 0);
  std::size_t idx = 0;
  for (;;) {
    f(idx);
    int i = 0;
    for (; i < k; ++i) {
      if (++digit[static_cast<std::size_t>(i)] < side) {
        idx += g.stride[static_cast<std::size_t>(i)];
        break;
      }
      idx -= static_cast<std::size_t>(side - 1) * g.stride[static_cast<std::size_t>(i)];
      digit[static_cast<std::size_t>(i)] = 0;
    }
    if (i == k) return;
  }
}

// Canonical corner order: increasing d, then apex in canonical cell order.
// f receives (d, apex cell index).
template <class F>
inline void for_each_corner(const GridParams& g, F&& f) {
  for (int d = 1; d < g.n; ++d)
    for_each_apex(g, g.n - d, [&](std::size_t apex) { f(d, apex); });
}

// Length of the corner stream obtained by actually walking it.
std::uint64_t enumerated_corner_count_serial(const GridParams&);
std::uint64_t enumerated_corner_count(const GridParams&);  // OpenMP over d

// Materialized stream in canonical order; throws SizeError past the cap.
std::vector<Corner> enumerate_corners(const GridParams&,
                                      std::size_t max_corners = 8'000'000);

// Gamma_k(A): corners whose k+1 points all lie in A.
std::uint64_t count_corners_serial(const GridSet&);
std::uint64_t count_corners(const GridSet&);  // OpenMP over d

// First corner of A in canonical order, if any.
std::optional<Corner> first_corner_in(const GridSet&);
bool is_corner_free(const GridSet&);

// Corner list plus cell -> corner adjacency for solvers that repeatedly
// query incidence. Corner ids follow the canonical corner order.
class CornerIndex {
 public:
  explicit CornerIndex(const GridParams&, std::size_t max_corners = 4'000'000);

  const GridParams& params() const { return params_; }
  std::size_t corner_count() const { return d_.size(); }
  int width() const { return width_; }  // k+1

  std::span<const std::uint32_t> cells_of(std::size_t cid) const {
    return {cells_.data() + cid * static_cast<std::size_t>(width_),
            static_cast<std::size_t>(width_)};
  }
  int difference_of(std::size_t cid) const { return d_[cid]; }
  std::size_t apex_of(std::size_t cid) const { return apex_[cid]; }
  const std::vector<std::uint32_t>& corners_at(std::size_t cell) const {
    return cell_corners_[cell];
  }

  bool inside(std::size_t cid, const Bitmap& bits) const {
    for (std::uint32_t c : cells_of(cid))
      if (!bits.test(c)) return false;
    return true;
  }

  Corner corner(std::size_t cid) const;

 private:
  GridParams params_;
  int width_;
  std::vector<std::uint32_t> cells_;
  std::vector<int> d_;
  std::vector<std::size_t> apex_;
  std::vector<std::vector<std::uint32_t>> cell_corners_;
};

// Sum over all s-subsets S of A of Gamma_k(S), via the identity
//   Gamma_k(A) * binom(|A|-(k+1), s-(k+1)):
// every corner inside A lies in exactly that many s-subsets.
BigInt subset_corner_sum(const GridSet&, long long s);

// Direct evaluation over all s-subsets; cross-check path, |A| <= 20.
BigInt subset_corner_sum_exhaustive(const GridSet&, long long s);

}  // namespace cornerkit
