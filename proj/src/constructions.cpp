#include "cornerkit/constructions.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <string>

#include "cornerkit/corners.hpp"

namespace cornerkit {

std::optional<std::array<int, 3>> find_three_ap(const std::vector<int>& elems) {
  if (elems.size() < 3) return std::nullopt;
  std::vector<char> in(static_cast<std::size_t>(elems.back()) + 1, 0);
  for (int e : elems) in[static_cast<std::size_t>(e)] = 1;
  for (std::size_t i = 0; i + 1 < elems.size(); ++i) {
    for (std::size_t j = i + 1; j < elems.size(); ++j) {
      const long long z = 2LL * elems[j] - elems[i];
      if (z <= elems[j]) continue;
      if (z <= elems.back() && in[static_cast<std::size_t>(z)])
        return std::array<int, 3>{elems[i], elems[j], static_cast<int>(z)};
    }
  }
  return std::nullopt;
}

APFreeSet make_ap_free_set(int n, std::vector<int> elems) {
  if (n < 1) throw ArgumentError("range bound must be >= 1");
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  if (!elems.empty() && (elems.front() < 1 || elems.back() > n))
    throw ArgumentError("element out of range [1, n]");
  if (auto t = find_three_ap(elems)) {
    throw ArgumentError("set contains the 3-AP " + std::to_string((*t)[0]) + ", " +
                        std::to_string((*t)[1]) + ", " + std::to_string((*t)[2]));
  }
  return APFreeSet{n, std::move(elems)};
}

namespace {

// Greedy scan 1..n; a new maximum x only closes an AP (a, b, x) with
// a = 2b - x, so one membership probe per existing element suffices.
std::vector<int> greedy_ap_free(int n) {
  std::vector<int> out;
  std::vector<char> in(static_cast<std::size_t>(n) + 1, 0);
  for (int x = 1; x <= n; ++x) {
    bool ok = true;
    for (int b : out) {
      const int a = 2 * b - x;
      if (a >= 1 && in[static_cast<std::size_t>(a)]) {
        ok = false;
        break;
      }
    }
    if (ok) {
      out.push_back(x);
      in[static_cast<std::size_t>(x)] = 1;
    }
  }
  return out;
}

void collect_shell(int pos, int ndigits, long long value, int norm, int dmax,
                   const std::vector<long long>& power, long long vmax,
                   std::vector<std::pair<int, int>>& shell_value) {
  if (pos == ndigits) {
    shell_value.emplace_back(norm, static_cast<int>(value));
    return;
  }
  for (int dig = 0; dig < dmax; ++dig) {
    const long long v = value + dig * power[static_cast<std::size_t>(pos)];
    if (v > vmax) break;
    collect_shell(pos + 1, ndigits, v, norm + dig * dig, dmax, power, vmax, shell_value);
  }
}

std::vector<int> best_shell(int n, int base, int ndigits) {
  const int dmax = base / 2;
  if (dmax < 1) return {};
  std::vector<long long> power(static_cast<std::size_t>(ndigits));
  power[0] = 1;
  for (int i = 1; i < ndigits; ++i)
    power[static_cast<std::size_t>(i)] = power[static_cast<std::size_t>(i - 1)] * base;
  std::vector<std::pair<int, int>> shell_value;
  collect_shell(0, ndigits, 0, 0, dmax, power, n - 1, shell_value);
  std::map<int, std::vector<int>> by_shell;
  for (auto [shell, v] : shell_value) by_shell[shell].push_back(v + 1);
  std::vector<int> best;
  for (auto& [shell, vals] : by_shell)
    if (vals.size() > best.size()) best = vals;
  std::sort(best.begin(), best.end());
  return best;
}

}  // namespace

APFreeSet behrend_set(int n) {
  if (n < 1) throw ArgumentError("range bound must be >= 1");
  std::vector<int> best = greedy_ap_free(n);
  for (int base = 4; base <= 40; ++base) {
    long long reach = base;
    for (int ndigits = 2; ndigits <= 24 && reach <= n - 1; ++ndigits) {
      std::vector<int> cand = best_shell(n, base, ndigits);
      if (cand.size() > best.size()) best = std::move(cand);
      if (reach > (n - 1) / base + 1) break;
      reach *= base;
    }
  }
  if (auto t = find_three_ap(best)) {
    throw VerificationError("construction produced the 3-AP " +
                            std::to_string((*t)[0]) + ", " + std::to_string((*t)[1]) +
                            ", " + std::to_string((*t)[2]));
  }
  return APFreeSet{n, std::move(best)};
}

GridSet diagonal_corner_free_2d(int n, const APFreeSet& a, std::vector<int>* dropped) {
  if (n < 1) throw ArgumentError("grid side must be >= 1");
  if (auto t = find_three_ap(a.elems)) {
    throw ArgumentError("input is not 3-AP-free: " + std::to_string((*t)[0]) + ", " +
                        std::to_string((*t)[1]) + ", " + std::to_string((*t)[2]));
  }
  const GridParams g(n, 2);
  GridSet out(g);
  std::size_t expected = 0;
  std::vector<int> point(2);
  for (int v : a.elems) {
    if (v >= n) {
      if (dropped) dropped->push_back(v);
      continue;
    }
    expected += static_cast<std::size_t>(n - v);
    for (int x = 1; x + v <= n; ++x) {
      point[0] = x;
      point[1] = x + v;
      out.add_point(point);
    }
  }
  if (out.size() != expected)
    throw VerificationError("diagonal set size does not match sum of line lengths");
  if (auto c = first_corner_in(out)) {
    throw VerificationError("diagonal set contains a corner at d=" + std::to_string(c->d));
  }
  return out;
}

GridSet heuristic_corner_free(const GridParams& g, std::uint64_t budget,
                              std::uint64_t seed) {
  const CornerIndex ix(g);
  GridSet cur(g);
  GridSet best(g);
  std::mt19937_64 rng(seed);

  std::vector<std::uint8_t> inc(ix.corner_count(), 0);
  std::size_t alive = 0;  // corners fully inside cur
  const auto width = static_cast<std::uint8_t>(ix.width());

  auto add_cell = [&](std::size_t c) {
    cur.add(c);
    for (std::uint32_t cid : ix.corners_at(c))
      if (++inc[cid] == width) ++alive;
  };
  auto remove_cell = [&](std::size_t c) {
    cur.remove(c);
    for (std::uint32_t cid : ix.corners_at(c))
      if (inc[cid]-- == width) --alive;
  };

  std::vector<std::size_t> absent;
  for (std::uint64_t step = 0; step < budget; ++step) {
    absent.clear();
    for (std::size_t i = 0; i < g.cells; ++i)
      if (!cur.contains(i)) absent.push_back(i);
    if (absent.empty()) break;
    add_cell(absent[rng() % absent.size()]);

    while (alive > 0) {
      std::size_t first = ix.corner_count();
      for (std::size_t cid = 0; cid < ix.corner_count(); ++cid) {
        if (inc[cid] == width) {
          first = cid;
          break;
        }
      }
      // remove the cell of this corner that kills the most live corners
      std::size_t victim = 0;
      std::size_t best_kills = 0;
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
      remove_cell(victim);
    }
    if (cur.size() > best.size()) best = cur;
  }
  if (!is_corner_free(best))
    throw VerificationError("local search returned a set with a corner");
  return best;
}

}  // namespace cornerkit
