#include "cornerkit/grid.hpp"

#include <algorithm>
#include <limits>

namespace cornerkit {

namespace {
constexpr std::size_t kMaxGridSetCells = std::size_t{1} << 30;
}

GridParams::GridParams(int n_, int k_) : n(n_), k(k_) {
  if (n < 1) throw ArgumentError("grid side length must be >= 1");
  if (k < 1) throw ArgumentError("grid dimension must be >= 1");
  stride.resize(static_cast<std::size_t>(k));
  cells = 1;
  for (int i = 0; i < k; ++i) {
    stride[static_cast<std::size_t>(i)] = cells;
    if (cells > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(n))
      throw SizeError("cell count n^k overflows");
    cells *= static_cast<std::size_t>(n);
  }
}

std::size_t GridParams::index_of(std::span<const int> coords) const {
  if (coords.size() != static_cast<std::size_t>(k))
    throw ArgumentError("point has wrong dimension");
  std::size_t idx = 0;
  for (int i = 0; i < k; ++i) {
    const int c = coords[static_cast<std::size_t>(i)];
    if (c < 1 || c > n) throw ArgumentError("coordinate out of range [1, n]");
    idx += static_cast<std::size_t>(c - 1) * stride[static_cast<std::size_t>(i)];
  }
  return idx;
}

std::vector<int> GridParams::coords_of(std::size_t idx) const {
  std::vector<int> out(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    out[static_cast<std::size_t>(i)] = static_cast<int>(idx % static_cast<std::size_t>(n)) + 1;
    idx /= static_cast<std::size_t>(n);
  }
  return out;
}

bool GridParams::in_range(std::span<const int> coords) const {
  if (coords.size() != static_cast<std::size_t>(k)) return false;
  return std::all_of(coords.begin(), coords.end(),
                     [this](int c) { return c >= 1 && c <= n; });
}

Corner make_corner(const GridParams& g, std::vector<int> apex_coords, int d) {
  if (d < 1) throw ArgumentError("corner difference must be >= 1");
  if (apex_coords.size() != static_cast<std::size_t>(g.k))
    throw ArgumentError("corner apex has wrong dimension");
  for (int c : apex_coords) {
    if (c < 1 || c > g.n) throw ArgumentError("corner apex out of range");
    if (c + d > g.n) throw ArgumentError("corner leaves the grid: apex_i + d > n");
  }
  return Corner{Point{std::move(apex_coords)}, d};
}

std::vector<std::size_t> corner_cell_indices(const GridParams& g,
                                             std::size_t apex, int d) {
  std::vector<std::size_t> out;
  out.reserve(static_cast<std::size_t>(g.k) + 1);
  out.push_back(apex);
  for (int i = 0; i < g.k; ++i)
    out.push_back(apex + static_cast<std::size_t>(d) * g.stride[static_cast<std::size_t>(i)]);
  return out;
}

GridSet::GridSet(const GridParams& p) : params(p), bits(p.cells) {
  if (p.cells > kMaxGridSetCells)
    throw SizeError("grid too large to materialize a membership bitmap");
}

GridSet GridSet::full(const GridParams& p) {
  GridSet s(p);
  for (std::size_t i = 0; i < p.cells; ++i) s.bits.set(i);
  return s;
}

std::vector<std::size_t> GridSet::cell_indices() const {
  std::vector<std::size_t> out;
  out.reserve(size());
  bits.for_each_set([&](std::size_t i) { out.push_back(i); });
  return out;
}

GridSet translate(const GridSet& a, std::span<const int> offset) {
  const GridParams& g = a.params;
  if (offset.size() != static_cast<std::size_t>(g.k))
    throw ArgumentError("translation vector has wrong dimension");
  GridSet out(g);
  std::vector<int> c;
  bool ok = true;
  a.bits.for_each_set([&](std::size_t idx) {
    c = g.coords_of(idx);
    for (int i = 0; i < g.k; ++i) {
      c[static_cast<std::size_t>(i)] += offset[static_cast<std::size_t>(i)];
      if (c[static_cast<std::size_t>(i)] < 1 || c[static_cast<std::size_t>(i)] > g.n) ok = false;
    }
    if (ok) out.add_point(c);
  });
  if (!ok) throw ArgumentError("translation moves a point outside the grid");
  return out;
}

GridSet permute_axes(const GridSet& a, std::span<const int> perm) {
  const GridParams& g = a.params;
  if (perm.size() != static_cast<std::size_t>(g.k))
    throw ArgumentError("axis permutation has wrong dimension");
  std::vector<char> seen(static_cast<std::size_t>(g.k), 0);
  for (int p : perm) {
    if (p < 0 || p >= g.k || seen[static_cast<std::size_t>(p)])
      throw ArgumentError("invalid axis permutation");
    seen[static_cast<std::size_t>(p)] = 1;
  }
  GridSet out(g);
  std::vector<int> c, img(static_cast<std::size_t>(g.k));
  a.bits.for_each_set([&](std::size_t idx) {
    c = g.coords_of(idx);
    for (int i = 0; i < g.k; ++i)
      img[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
    out.add_point(img);
  });
  return out;
}

}  // namespace cornerkit
