#include "cornerkit/extremal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

namespace cornerkit {

namespace {

// Shared machinery for the branch-and-bound searches. Cells are decided
// in a fixed static order; per-corner include/exclude counters drive
// feasibility, forcing and the pruning bound.
struct BBContext {
  const CornerIndex& ix;
  int width;  // k+1
  std::size_t cells;
  std::vector<std::int8_t> decision;  // -1 undecided, 0 out, 1 in
  std::vector<std::uint8_t> inc, exc;
  std::vector<std::uint8_t> used;  // scratch for the matching bound
  std::size_t included = 0;
  std::size_t undecided;
  std::uint64_t nodes = 0;
  std::uint64_t max_nodes;
  bool truncated = false;

  BBContext(const CornerIndex& index, std::uint64_t budget)
      : ix(index),
        width(index.width()),
        cells(index.params().cells),
        decision(cells, -1),
        inc(index.corner_count(), 0),
        exc(index.corner_count(), 0),
        used(cells, 0),
        undecided(cells),
        max_nodes(budget) {}

  bool can_include(std::size_t c) const {
    for (std::uint32_t cid : ix.corners_at(c))
      if (exc[cid] == 0 && inc[cid] + 1 == width) return false;
    return true;
  }

  void include(std::size_t c) {
    decision[c] = 1;
    ++included;
    --undecided;
    for (std::uint32_t cid : ix.corners_at(c)) ++inc[cid];
  }
  void undo_include(std::size_t c) {
    decision[c] = -1;
    --included;
    ++undecided;
    for (std::uint32_t cid : ix.corners_at(c)) --inc[cid];
  }
  void exclude(std::size_t c) {
    decision[c] = 0;
    --undecided;
    for (std::uint32_t cid : ix.corners_at(c)) ++exc[cid];
  }
  void undo_exclude(std::size_t c) {
    decision[c] = -1;
    ++undecided;
    for (std::uint32_t cid : ix.corners_at(c)) --exc[cid];
  }

  // Including c may leave corners with all other cells included; their
  // single undecided cell is then forced out. Exclusions cascade nothing.
  void force_after_include(std::size_t c, std::vector<std::size_t>& forced) {
    for (std::uint32_t cid : ix.corners_at(c)) {
      if (exc[cid] != 0 || inc[cid] != width - 1) continue;
      for (std::uint32_t u : ix.cells_of(cid)) {
        if (decision[u] == -1) {
          exclude(u);
          forced.push_back(u);
          break;
        }
      }
    }
  }

  // Optimistic size: included + undecided minus a greedy packing of live
  // corners with pairwise-disjoint undecided cells, each of which forces
  // at least one exclusion.
  std::size_t bound() {
    std::size_t matches = 0;
    std::vector<std::size_t> touched;
    for (std::size_t cid = 0; cid < ix.corner_count(); ++cid) {
      if (exc[cid] != 0) continue;
      const auto cs = ix.cells_of(cid);
      bool usable = false;
      for (std::uint32_t u : cs)
        if (decision[u] == -1) usable = true;
      if (!usable) continue;
      bool free = true;
      for (std::uint32_t u : cs)
        if (decision[u] == -1 && used[u]) free = false;
      if (!free) continue;
      for (std::uint32_t u : cs)
        if (decision[u] == -1) {
          used[u] = 1;
          touched.push_back(u);
        }
      ++matches;
    }
    for (std::size_t u : touched) used[u] = 0;
    return included + undecided - matches;
  }
};

struct MaxSolver {
  BBContext ctx;
  std::vector<std::uint32_t> order;
  std::size_t best = 0;
  Bitmap best_bits;
  std::size_t open_bound = 0;

  MaxSolver(const CornerIndex& ix, std::uint64_t budget)
      : ctx(ix, budget), best_bits(ix.params().cells) {
    const std::size_t cells = ix.params().cells;
    order.resize(cells);
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t a, std::uint32_t b) {
                       return ix.corners_at(a).size() > ix.corners_at(b).size();
                     });
  }

  void snapshot() {
    best = ctx.included;
    for (std::size_t i = 0; i < ctx.cells; ++i)
      best_bits.assign(i, ctx.decision[i] == 1);
  }

  void greedy_seed() {
    std::vector<std::size_t> forced;
    std::vector<std::size_t> taken;
    for (std::uint32_t c : order) {
      if (ctx.decision[c] != -1) continue;
      if (ctx.can_include(c)) {
        ctx.include(c);
        ctx.force_after_include(c, forced);
        taken.push_back(c);
      }
    }
    snapshot();
    for (auto it = forced.rbegin(); it != forced.rend(); ++it) ctx.undo_exclude(*it);
    for (auto it = taken.rbegin(); it != taken.rend(); ++it) ctx.undo_include(*it);
  }

  void dfs(std::size_t order_pos) {
    if (ctx.truncated) {
      open_bound = std::max(open_bound, ctx.bound());
      return;
    }
    if (++ctx.nodes > ctx.max_nodes) {
      ctx.truncated = true;
      open_bound = std::max(open_bound, ctx.bound());
      return;
    }
    while (order_pos < ctx.cells && ctx.decision[order[order_pos]] != -1) ++order_pos;
    if (order_pos == ctx.cells) {
      if (ctx.included > best) snapshot();
      return;
    }
    if (ctx.bound() <= best) return;
    const std::size_t c = order[order_pos];
    if (ctx.can_include(c)) {
      std::vector<std::size_t> forced;
      ctx.include(c);
      ctx.force_after_include(c, forced);
      dfs(order_pos + 1);
      for (auto it = forced.rbegin(); it != forced.rend(); ++it) ctx.undo_exclude(*it);
      ctx.undo_include(c);
    }
    ctx.exclude(c);
    dfs(order_pos + 1);
    ctx.undo_exclude(c);
  }
};

}  // namespace

ExtremalRecord exact_c(const GridParams& g, const SearchLimits& limits) {
  const CornerIndex ix(g);
  MaxSolver solver(ix, limits.max_nodes);
  solver.greedy_seed();
  solver.dfs(0);

  ExtremalRecord rec;
  rec.k = g.k;
  rec.n = g.n;
  rec.lower = static_cast<long long>(solver.best);
  GridSet witness(g);
  witness.bits = solver.best_bits;
  if (!is_corner_free(witness))
    throw VerificationError("solver witness contains a corner");
  rec.witness = std::move(witness);
  if (solver.ctx.truncated) {
    rec.status = SolveStatus::bounded;
    rec.upper = static_cast<long long>(std::max(solver.best, solver.open_bound));
    rec.method = "branch-and-bound budget=" + std::to_string(limits.max_nodes) +
                 " (exhausted)";
  } else {
    rec.status = SolveStatus::exact;
    rec.upper = rec.lower;
    rec.method = "branch-and-bound nodes=" + std::to_string(solver.ctx.nodes);
  }
  return rec;
}

namespace {

std::vector<std::uint32_t> corner_masks(const GridParams& g) {
  if (g.cells > 25) throw SizeError("subset scan limited to n^k <= 25");
  std::vector<std::uint32_t> masks;
  for_each_corner(g, [&](int d, std::size_t apex) {
    std::uint32_t m = 0;
    for (std::size_t c : corner_cell_indices(g, apex, d))
      m |= std::uint32_t{1} << c;
    masks.push_back(m);
  });
  return masks;
}

ExtremalRecord record_from_mask(const GridParams& g, std::uint32_t mask,
                                std::size_t best) {
  ExtremalRecord rec;
  rec.k = g.k;
  rec.n = g.n;
  rec.status = SolveStatus::exact;
  rec.lower = rec.upper = static_cast<long long>(best);
  GridSet w(g);
  for (std::size_t i = 0; i < g.cells; ++i)
    if (mask & (std::uint32_t{1} << i)) w.add(i);
  rec.witness = std::move(w);
  rec.method = "exhaustive-scan";
  return rec;
}

}  // namespace

ExtremalRecord exact_c_exhaustive_serial(const GridParams& g) {
  const auto masks = corner_masks(g);
  const std::uint64_t total = std::uint64_t{1} << g.cells;
  std::size_t best = 0;
  std::uint32_t best_mask = 0;
  for (std::uint64_t s = 0; s < total; ++s) {
    const auto mask = static_cast<std::uint32_t>(s);
    bool free = true;
    for (std::uint32_t m : masks) {
      if ((mask & m) == m) {
        free = false;
        break;
      }
    }
    if (!free) continue;
    const auto sz = static_cast<std::size_t>(std::popcount(mask));
    if (sz > best) {
      best = sz;
      best_mask = mask;
    }
  }
  return record_from_mask(g, best_mask, best);
}

ExtremalRecord exact_c_exhaustive(const GridParams& g) {
  const auto masks = corner_masks(g);
  const std::int64_t total = std::int64_t{1} << g.cells;
  std::size_t best = 0;
  std::uint32_t best_mask = 0;
#pragma omp parallel
  {
    std::size_t lbest = 0;
    std::uint32_t lmask = 0;
#pragma omp for schedule(static)
    for (std::int64_t s = 0; s < total; ++s) {
      const auto mask = static_cast<std::uint32_t>(s);
      bool free = true;
      for (std::uint32_t m : masks) {
        if ((mask & m) == m) {
          free = false;
          break;
        }
      }
      if (!free) continue;
      const auto sz = static_cast<std::size_t>(std::popcount(mask));
      if (sz > lbest || (sz == lbest && mask < lmask)) {
        lbest = sz;
        lmask = mask;
      }
    }
#pragma omp critical
    {
      if (lbest > best || (lbest == best && lmask < best_mask)) {
        best = lbest;
        best_mask = lmask;
      }
    }
  }
  return record_from_mask(g, best_mask, best);
}

namespace {

struct MinSolver {
  const CornerIndex& ix;
  int width;
  std::size_t cells;
  long long target;
  std::vector<std::uint8_t> inc;
  std::size_t chosen = 0;
  std::uint64_t completed = 0;
  std::uint64_t best_val;
  Bitmap cur, best_bits;
  std::uint64_t nodes = 0, max_nodes;
  bool truncated = false;
  bool found = false;

  MinSolver(const CornerIndex& index, long long s, std::uint64_t budget)
      : ix(index),
        width(index.width()),
        cells(index.params().cells),
        target(s),
        inc(index.corner_count(), 0),
        best_val(~std::uint64_t{0}),
        cur(cells),
        best_bits(cells),
        max_nodes(budget) {}

  void dfs(std::size_t pos) {
    if (truncated) return;
    if (++nodes > max_nodes) {
      truncated = true;
      return;
    }
    if (found && completed >= best_val) return;
    if (static_cast<long long>(chosen) == target) {
      if (!found || completed < best_val) {
        best_val = completed;
        best_bits = cur;
        found = true;
      }
      return;
    }
    if (static_cast<long long>(chosen) + static_cast<long long>(cells - pos) < target)
      return;
    // include pos
    std::uint64_t delta = 0;
    for (std::uint32_t cid : ix.corners_at(pos))
      if (++inc[cid] == width) ++delta;
    completed += delta;
    cur.set(pos);
    dfs(pos + 1);
    cur.reset(pos);
    completed -= delta;
    for (std::uint32_t cid : ix.corners_at(pos)) --inc[cid];
    // exclude pos
    dfs(pos + 1);
  }
};

}  // namespace

MinCornersResult min_corners_at_size(const GridParams& g, long long s,
                                     const SearchLimits& limits) {
  if (s < 0 || s > static_cast<long long>(g.cells))
    throw ArgumentError("target size out of range [0, n^k]");
  const CornerIndex ix(g);
  MinSolver solver(ix, s, limits.max_nodes);
  solver.dfs(0);
  if (!solver.found)
    throw BudgetExhaustedError("minimum-corner search found no candidate in budget");
  MinCornersResult out{s, solver.best_val, GridSet(g), !solver.truncated};
  out.witness.bits = solver.best_bits;
  return out;
}

std::uint64_t subadditive_upper(int k, long long n, long long m, long long ck_m) {
  if (k < 1) throw ArgumentError("dimension must be >= 1");
  if (m < 1 || m >= n) throw ArgumentError("requires 1 <= m < n");
  if (ck_m < 0) throw ArgumentError("c_k(m) must be nonnegative");
  const auto blocks = static_cast<std::uint64_t>((n + m - 1) / m);
  const std::uint64_t factor = checked_pow_u64(blocks, static_cast<unsigned>(k));
  if (ck_m != 0 &&
      factor > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(ck_m))
    throw SizeError("subadditive bound overflows");
  return factor * static_cast<std::uint64_t>(ck_m);
}

void ExtremalTable::merge(const ExtremalRecord& rec) {
  if (rec.lower > rec.upper)
    throw ArgumentError("record has lower > upper");
  if (rec.status == SolveStatus::exact) {
    if (rec.lower != rec.upper || !rec.witness)
      throw ArgumentError("exact record needs lower == upper and a witness");
    if (static_cast<long long>(rec.witness->size()) != rec.lower ||
        !is_corner_free(*rec.witness))
      throw VerificationError("exact record witness invalid");
  }
  const auto key = std::make_pair(rec.k, rec.n);
  auto it = m_.find(key);
  if (it == m_.end()) {
    m_.emplace(key, rec);
    return;
  }
  ExtremalRecord& cur = it->second;
  if (cur.status == SolveStatus::exact) {
    if (rec.status == SolveStatus::exact && rec.lower != cur.lower)
      throw VerificationError("conflicting exact values for c_k(n)");
    return;  // exact records are never overwritten
  }
  if (rec.status == SolveStatus::exact) {
    cur = rec;
    return;
  }
  if (rec.lower > cur.lower) {
    cur.lower = rec.lower;
    cur.witness = rec.witness;
    cur.method = rec.method;
  }
  cur.upper = std::min(cur.upper, rec.upper);
}

const ExtremalRecord* ExtremalTable::find(int k, int n) const {
  auto it = m_.find(std::make_pair(k, n));
  return it == m_.end() ? nullptr : &it->second;
}

std::optional<long long> ExtremalTable::exact(int k, int n) const {
  const ExtremalRecord* r = find(k, n);
  if (r && r->status == SolveStatus::exact) return r->lower;
  return std::nullopt;
}

long long ExtremalTable::best_upper(int k, int n) const {
  const GridParams g(n, k);
  auto upper = static_cast<long long>(g.cells);
  if (const ExtremalRecord* r = find(k, n)) upper = std::min(upper, r->upper);
  for (const auto& [key, rec] : m_) {
    if (key.first != k || key.second >= n) continue;
    if (rec.status != SolveStatus::exact) continue;
    const auto bound = static_cast<long long>(
        subadditive_upper(k, n, key.second, rec.lower));
    upper = std::min(upper, bound);
  }
  return upper;
}

std::vector<const ExtremalRecord*> ExtremalTable::records() const {
  std::vector<const ExtremalRecord*> out;
  out.reserve(m_.size());
  for (const auto& [key, rec] : m_) out.push_back(&rec);
  return out;
}

std::vector<const ExtremalRecord*> ExtremalTable::records_for(int k) const {
  std::vector<const ExtremalRecord*> out;
  for (const auto& [key, rec] : m_)
    if (key.first == k) out.push_back(&rec);
  return out;
}

RateFunctions RateFunctions::make(int k, const ExtremalTable& table, double log_base) {
  if (k < 1) throw ArgumentError("dimension must be >= 1");
  if (log_base <= 1.0) throw ArgumentError("log base must exceed 1");
  RateFunctions rf;
  rf.k = k;
  rf.table = &table;
  rf.log_base = log_base;
  rf.b_k = std::pow(2.0, 2 * k) + 1;
  rf.c_prime = 8.0 * 2.0 * rf.b_k;
  rf.alpha_k = 0;
  if (k >= 2) {
    // smallest alpha making f(n) > 2^(-alpha (log2 n)^(1/ceil(log2 k)))
    // hold with slack on every exact table entry
    const double beta = 1.0 / std::ceil(std::log2(static_cast<double>(k)));
    double alpha = 0;
    for (const ExtremalRecord* r : table.records_for(k)) {
      if (r->status != SolveStatus::exact || r->n < 2) continue;
      const double f = static_cast<double>(r->lower) /
                       std::pow(static_cast<double>(r->n), k);
      const double need = -std::log2(f) / std::pow(std::log2(static_cast<double>(r->n)), beta);
      alpha = std::max(alpha, need);
    }
    rf.alpha_k = alpha > 0 ? std::nextafter(alpha, 2 * alpha + 1) : 1.0;
  }
  return rf;
}

RateValues rate_eval(const RateFunctions& rf, int n) {
  if (!rf.table) throw ArgumentError("rate functions need a table");
  const auto ck = rf.table->exact(rf.k, n);
  if (!ck) throw TableMissError("no exact c_k(n) for k=" + std::to_string(rf.k) +
                                ", n=" + std::to_string(n));
  const double log_n = std::log(static_cast<double>(n)) / std::log(rf.log_base);
  if (log_n <= 0) throw ArgumentError("log n <= 0: rate functions undefined");
  if (log_n <= 1)
    throw ArgumentError("log n <= 1 under the configured base; refusing to evaluate");
  const int k = rf.k;
  const double nk = std::pow(static_cast<double>(n), k);
  RateValues v;
  v.log_n = log_n;
  v.f = static_cast<double>(*ck) / nk;
  v.lambda = static_cast<double>(n) / std::pow(log_n, 3 * k + 3) * std::pow(v.f, k + 3);
  v.upsilon = std::pow(log_n, 3 * k + 1) / static_cast<double>(n) *
              std::pow(nk / static_cast<double>(*ck), k);
  v.psi = v.f / std::pow(log_n, 3);
  return v;
}

SubadditivityReport check_subadditivity(const ExtremalTable& table, int k) {
  SubadditivityReport rep;
  rep.k = k;
  std::vector<const ExtremalRecord*> exact;
  for (const ExtremalRecord* r : table.records_for(k))
    if (r->status == SolveStatus::exact) exact.push_back(r);
  std::sort(exact.begin(), exact.end(),
            [](const ExtremalRecord* a, const ExtremalRecord* b) { return a->n < b->n; });
  for (std::size_t i = 0; i < exact.size(); ++i) {
    for (std::size_t j = i + 1; j < exact.size(); ++j) {
      const ExtremalRecord* rm = exact[i];
      const ExtremalRecord* rn = exact[j];
      SubadditivityPair p;
      p.m = rm->n;
      p.n = rn->n;
      p.f_m = static_cast<double>(rm->lower) / std::pow(static_cast<double>(rm->n), k);
      p.f_n = static_cast<double>(rn->lower) / std::pow(static_cast<double>(rn->n), k);
      p.ratio_ok = p.f_n < std::pow(2.0, k) * p.f_m;
      p.subadd_rhs = subadditive_upper(k, rn->n, rm->n, rm->lower);
      p.subadd_ok = static_cast<std::uint64_t>(rn->lower) <= p.subadd_rhs;
      rep.all_ok = rep.all_ok && p.ratio_ok && p.subadd_ok;
      rep.pairs.push_back(p);
    }
  }
  return rep;
}

}  // namespace cornerkit
