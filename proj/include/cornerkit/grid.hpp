#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "cornerkit/common.hpp"

namespace cornerkit {

// Fixed-size dynamic bitset backing grid sets and vertex sets.
class Bitmap {
 public:
  Bitmap() = default;
  explicit Bitmap(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void assign(std::size_t i, bool v) { v ? set(i) : reset(i); }
  void clear() { std::fill(w_.begin(), w_.end(), 0); }

  std::size_t count() const {
    std::size_t c = 0;
    for (std::uint64_t w : w_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool is_subset_of(const Bitmap& other) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~other.w_[i]) return false;
    return true;
  }

  template <class F>
  void for_each_set(F&& f) const {
    for (std::size_t wi = 0; wi < w_.size(); ++wi) {
      std::uint64_t w = w_[wi];
      while (w) {
        const int b = std::countr_zero(w);
        f(wi * 64 + static_cast<std::size_t>(b));
        w &= w - 1;
      }
    }
  }

  const std::vector<std::uint64_t>& words() const { return w_; }
  bool operator==(const Bitmap&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

// Side length n and dimension k of the grid [1,n]^k. Cell indices are
// 0-based and follow the canonical cell order: lexicographic on
// coordinates with coordinate 1 varying fastest, i.e.
//   index(x) = sum_i (x_i - 1) * n^(i-1).
struct GridParams {
  int n = 1;
  int k = 1;
  std::size_t cells = 1;
  std::vector<std::size_t> stride;  // stride[i] = n^i

  GridParams() : GridParams(1, 1) {}
  GridParams(int n_, int k_);

  std::size_t index_of(std::span<const int> coords) const;  // 1-based coords
  std::vector<int> coords_of(std::size_t idx) const;        // 1-based coords
  bool in_range(std::span<const int> coords) const;

  bool operator==(const GridParams& o) const { return n == o.n && k == o.k; }
};

struct Point {
  std::vector<int> coords;  // 1-based, length k
  bool operator==(const Point&) const = default;
};

// The k+1 point set {apex} u {apex + d e_i : 1 <= i <= k}.
struct Corner {
  Point apex;
  int d = 1;
  bool operator==(const Corner&) const = default;
};

// Validates apex_i + d <= n for every coordinate.
Corner make_corner(const GridParams&, std::vector<int> apex_coords, int d);

// Cell indices of a corner given its apex cell and difference, apex first
// then the bumped axes in order.
std::vector<std::size_t> corner_cell_indices(const GridParams&,
                                             std::size_t apex, int d);

// A subset of [1,n]^k as a membership bitmap over the canonical cell order.
struct GridSet {
  GridParams params;
  Bitmap bits;

  GridSet() : GridSet(GridParams()) {}
  explicit GridSet(const GridParams& p);
  static GridSet full(const GridParams& p);

  std::size_t size() const { return bits.count(); }
  bool contains(std::size_t idx) const { return bits.test(idx); }
  void add(std::size_t idx) { bits.set(idx); }
  void remove(std::size_t idx) { bits.reset(idx); }
  void add_point(std::span<const int> coords) { bits.set(params.index_of(coords)); }
  std::vector<std::size_t> cell_indices() const;

  bool operator==(const GridSet&) const = default;
};

// Image of A under x -> x + offset; every image point must stay in-grid.
GridSet translate(const GridSet&, std::span<const int> offset);

// Image of A under axis permutation: out_i = in_{perm[i]} (perm of 0..k-1).
GridSet permute_axes(const GridSet&, std::span<const int> perm);

}  // namespace cornerkit
