#include "cornerkit/census.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "cornerkit/corners.hpp"

namespace cornerkit {

CensusRecord make_census_record(int k, int n, BigInt count, std::string method,
                                bool exact, std::optional<long long> ck) {
  CensusRecord rec;
  rec.k = k;
  rec.n = n;
  rec.count = std::move(count);
  rec.log2_count = rec.count > 0 ? log2_big(rec.count) : 0.0;
  rec.method = std::move(method);
  rec.exact = exact;
  rec.ck = ck;
  if (ck && *ck > 0) rec.ratio = rec.log2_count / static_cast<double>(*ck);
  return rec;
}

namespace {

std::vector<std::uint32_t> corner_masks_25(const GridParams& g) {
  if (g.cells > 25) throw SizeError("census oracle limited to n^k <= 25");
  std::vector<std::uint32_t> masks;
  for_each_corner(g, [&](int d, std::size_t apex) {
    std::uint32_t m = 0;
    for (std::size_t c : corner_cell_indices(g, apex, d))
      m |= std::uint32_t{1} << c;
    masks.push_back(m);
  });
  return masks;
}

inline bool mask_corner_free(std::uint32_t s, const std::vector<std::uint32_t>& masks) {
  for (std::uint32_t m : masks)
    if ((s & m) == m) return false;
  return true;
}

}  // namespace

std::uint64_t census_oracle_kernel_serial(const GridParams& g) {
  const auto masks = corner_masks_25(g);
  const std::uint64_t total = std::uint64_t{1} << g.cells;
  std::uint64_t count = 0;
  for (std::uint64_t s = 0; s < total; ++s)
    if (mask_corner_free(static_cast<std::uint32_t>(s), masks)) ++count;
  return count;
}

std::uint64_t census_oracle_kernel(const GridParams& g) {
  const auto masks = corner_masks_25(g);
  const std::int64_t total = std::int64_t{1} << g.cells;
  std::uint64_t count = 0;
#pragma omp parallel for schedule(static) reduction(+ : count)
  for (std::int64_t s = 0; s < total; ++s)
    if (mask_corner_free(static_cast<std::uint32_t>(s), masks)) ++count;
  return count;
}

CensusRecord count_corner_free_oracle(const GridParams& g) {
  return make_census_record(g.k, g.n, census_oracle_kernel(g), "oracle", true,
                            std::nullopt);
}

namespace {

struct PrunedCounter {
  const CornerIndex& ix;
  int width;
  std::size_t cells;
  std::vector<std::uint8_t> inc, exc;
  std::size_t alive;  // corners with no excluded cell
  std::uint64_t nodes = 0, max_nodes;
  bool truncated = false;

  PrunedCounter(const CornerIndex& index, std::uint64_t budget)
      : ix(index),
        width(index.width()),
        cells(index.params().cells),
        inc(index.corner_count(), 0),
        exc(index.corner_count(), 0),
        alive(index.corner_count()),
        max_nodes(budget) {}

  std::uint64_t run(std::size_t pos) {
    if (truncated) return 0;
    if (++nodes > max_nodes) {
      truncated = true;
      return 0;
    }
    // every live corner still has an undecided cell, so alive == 0 frees
    // the remaining cells entirely
    if (alive == 0) return std::uint64_t{1} << (cells - pos);
    if (pos == cells) return 1;
    std::uint64_t total = 0;
    // exclude pos
    for (std::uint32_t cid : ix.corners_at(pos))
      if (exc[cid]++ == 0) --alive;
    total += run(pos + 1);
    for (std::uint32_t cid : ix.corners_at(pos))
      if (--exc[cid] == 0) ++alive;
    // include pos unless it would complete a corner
    bool allowed = true;
    for (std::uint32_t cid : ix.corners_at(pos)) {
      if (exc[cid] == 0 && inc[cid] + 1 == width) {
        allowed = false;
        break;
      }
    }
    if (allowed) {
      for (std::uint32_t cid : ix.corners_at(pos)) ++inc[cid];
      total += run(pos + 1);
      for (std::uint32_t cid : ix.corners_at(pos)) --inc[cid];
    }
    return total;
  }

  void apply_prefix(std::span<const std::int8_t> prefix) {
    for (std::size_t i = 0; i < prefix.size(); ++i) {
      if (prefix[i] == 1) {
        for (std::uint32_t cid : ix.corners_at(i)) ++inc[cid];
      } else {
        for (std::uint32_t cid : ix.corners_at(i))
          if (exc[cid]++ == 0) --alive;
      }
    }
  }
};

struct Task {
  std::vector<std::int8_t> prefix;
};

// Expands the recursion to a frontier of independent subproblems.
void split_tasks(PrunedCounter& pc, std::size_t pos, std::size_t depth,
                 std::vector<std::int8_t>& prefix, std::vector<Task>& tasks,
                 std::uint64_t& base) {
  if (pc.alive == 0) {
    base += std::uint64_t{1} << (pc.cells - pos);
    return;
  }
  if (pos == pc.cells) {
    base += 1;
    return;
  }
  if (pos == depth) {
    tasks.push_back(Task{prefix});
    return;
  }
  // exclude
  for (std::uint32_t cid : pc.ix.corners_at(pos))
    if (pc.exc[cid]++ == 0) --pc.alive;
  prefix.push_back(0);
  split_tasks(pc, pos + 1, depth, prefix, tasks, base);
  prefix.pop_back();
  for (std::uint32_t cid : pc.ix.corners_at(pos))
    if (--pc.exc[cid] == 0) ++pc.alive;
  // include
  bool allowed = true;
  for (std::uint32_t cid : pc.ix.corners_at(pos)) {
    if (pc.exc[cid] == 0 && pc.inc[cid] + 1 == pc.width) {
      allowed = false;
      break;
    }
  }
  if (!allowed) return;
  for (std::uint32_t cid : pc.ix.corners_at(pos)) ++pc.inc[cid];
  prefix.push_back(1);
  split_tasks(pc, pos + 1, depth, prefix, tasks, base);
  prefix.pop_back();
  for (std::uint32_t cid : pc.ix.corners_at(pos)) --pc.inc[cid];
}

}  // namespace

CensusRecord count_corner_free_serial(const GridParams& g, const CensusLimits& limits) {
  if (static_cast<int>(g.cells) > limits.max_cells)
    throw SizeError("pruned census limited to n^k <= " + std::to_string(limits.max_cells));
  const CornerIndex ix(g);
  PrunedCounter pc(ix, limits.max_nodes);
  const std::uint64_t count = pc.run(0);
  return make_census_record(g.k, g.n, BigInt(count), "pruned", !pc.truncated,
                            std::nullopt);
}

CensusRecord count_corner_free(const GridParams& g, const CensusLimits& limits) {
  if (static_cast<int>(g.cells) > limits.max_cells)
    throw SizeError("pruned census limited to n^k <= " + std::to_string(limits.max_cells));
  const CornerIndex ix(g);
  const std::size_t depth = std::min<std::size_t>(g.cells, 12);
  PrunedCounter seed(ix, limits.max_nodes);
  std::vector<Task> tasks;
  std::vector<std::int8_t> prefix;
  std::uint64_t base = 0;
  split_tasks(seed, 0, depth, prefix, tasks, base);

  std::uint64_t sum = 0;
  int truncated = 0;
  const auto ntasks = static_cast<std::int64_t>(tasks.size());
#pragma omp parallel for schedule(dynamic) reduction(+ : sum) reduction(| : truncated)
  for (std::int64_t t = 0; t < ntasks; ++t) {
    PrunedCounter pc(ix, limits.max_nodes);
    pc.apply_prefix(tasks[static_cast<std::size_t>(t)].prefix);
    sum += pc.run(depth);
    truncated |= pc.truncated ? 1 : 0;
  }
  return make_census_record(g.k, g.n, BigInt(base + sum), "pruned", truncated == 0,
                            std::nullopt);
}

std::vector<CensusRow> census_ratio_series(
    int k, std::span<const int> ns, const ExtremalTable& table,
    const std::function<CensusRecord(const GridParams&)>& counter) {
  std::vector<CensusRow> out;
  for (int n : ns) {
    const GridParams g(n, k);
    CensusRecord rec = counter(g);
    if (!rec.exact)
      throw BudgetExhaustedError("census for n=" + std::to_string(n) + " is not exact");
    CensusRow row;
    row.n = n;
    row.count = rec.count;
    row.log2_count = rec.log2_count;
    row.method = rec.method;
    if (auto ck = table.exact(k, n)) {
      row.ck = *ck;
      if (*ck > 0) row.ratio = row.log2_count / static_cast<double>(*ck);
    }
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace cornerkit
