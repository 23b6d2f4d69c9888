#include "cornerkit/containers.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "cornerkit/corners.hpp"

namespace cornerkit {

Hypergraph Hypergraph::make(int r, std::uint32_t vertex_count,
                            std::vector<std::vector<std::uint32_t>> edges) {
  if (r < 1) throw ArgumentError("uniformity must be >= 1");
  Hypergraph h;
  h.r = r;
  h.vertex_count = vertex_count;
  for (auto& e : edges) {
    std::sort(e.begin(), e.end());
    if (e.size() != static_cast<std::size_t>(r))
      throw ArgumentError("edge size does not match uniformity");
    if (std::adjacent_find(e.begin(), e.end()) != e.end())
      throw ArgumentError("edge has repeated vertices");
    if (e.back() >= vertex_count) throw ArgumentError("edge vertex out of range");
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  h.edges = std::move(edges);
  return h;
}

Hypergraph corner_hypergraph(const GridParams& g, std::size_t max_edges) {
  if (corner_count_closed_form(g) > max_edges)
    throw SizeError("corner hypergraph too large");
  std::vector<std::vector<std::uint32_t>> edges;
  for_each_corner(g, [&](int d, std::size_t apex) {
    std::vector<std::uint32_t> e;
    e.reserve(static_cast<std::size_t>(g.k) + 1);
    for (std::size_t c : corner_cell_indices(g, apex, d))
      e.push_back(static_cast<std::uint32_t>(c));
    edges.push_back(std::move(e));
  });
  return Hypergraph::make(g.k + 1, static_cast<std::uint32_t>(g.cells),
                          std::move(edges));
}

long long delta_j(const Hypergraph& h, int j) {
  if (j < 1 || j > h.r) throw ArgumentError("j out of range [1, r]");
  if (h.edges.empty()) return 0;
  if (j == 1) {
    std::vector<long long> deg(h.vertex_count, 0);
    long long best = 0;
    for (const auto& e : h.edges)
      for (std::uint32_t v : e) best = std::max(best, ++deg[v]);
    return best;
  }
  std::map<std::vector<std::uint32_t>, long long> counts;
  long long best = 0;
  std::vector<std::uint32_t> subset(static_cast<std::size_t>(j));
  for (const auto& e : h.edges) {
    // all j-subsets of the r-element edge
    std::vector<int> pick(static_cast<std::size_t>(j));
    for (int i = 0; i < j; ++i) pick[static_cast<std::size_t>(i)] = i;
    for (;;) {
      for (int i = 0; i < j; ++i)
        subset[static_cast<std::size_t>(i)] = e[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])];
      best = std::max(best, ++counts[subset]);
      int i = j - 1;
      while (i >= 0 && pick[static_cast<std::size_t>(i)] == h.r - j + i) --i;
      if (i < 0) break;
      ++pick[static_cast<std::size_t>(i)];
      for (int t = i + 1; t < j; ++t)
        pick[static_cast<std::size_t>(t)] = pick[static_cast<std::size_t>(t - 1)] + 1;
    }
  }
  return best;
}

CodegreeProfile codegree(const Hypergraph& h, double tau) {
  if (h.edges.empty()) throw ArgumentError("codegree undefined for an edgeless hypergraph");
  if (tau <= 0) throw ArgumentError("tau must be positive");
  CodegreeProfile p;
  p.r = h.r;
  p.tau = tau;
  p.avg_degree = h.avg_degree();
  p.deltas.resize(static_cast<std::size_t>(h.r));
  for (int j = 1; j <= h.r; ++j)
    p.deltas[static_cast<std::size_t>(j - 1)] = delta_j(h, j);
  const double lead = std::pow(2.0, static_cast<double>(h.r) * (h.r - 1) / 2.0 - 1.0);
  double sum = 0;
  for (int j = 2; j <= h.r; ++j) {
    const double expo = static_cast<double>(j - 1) * (j - 2) / 2.0;
    sum += std::pow(2.0, -expo) *
           static_cast<double>(p.deltas[static_cast<std::size_t>(j - 1)]) /
           (std::pow(tau, j - 1) * p.avg_degree);
  }
  p.value = lead * sum;
  return p;
}

namespace {

double factorial(int r) {
  double f = 1;
  for (int i = 2; i <= r; ++i) f *= i;
  return f;
}

}  // namespace

HypothesisReport check_hypotheses(const Hypergraph& h, double epsilon, double tau) {
  HypothesisReport rep;
  rep.r = h.r;
  rep.tau = tau;
  rep.epsilon = epsilon;
  const double rf = factorial(h.r);
  rep.tau_limit = 1.0 / (200.0 * h.r * rf * rf);
  rep.tau_ok = tau < rep.tau_limit;
  rep.codegree_value = h.edges.empty() ? 0.0 : codegree(h, tau).value;
  rep.codegree_limit = epsilon / (12.0 * rf);
  rep.codegree_ok = rep.codegree_value <= rep.codegree_limit;
  rep.c_r_bound = 1000.0 * h.r * rf * rf * rf;
  rep.all_ok = rep.tau_ok && rep.codegree_ok;
  return rep;
}

namespace {

struct Builder {
  const Hypergraph& h;
  double edge_budget;
  const BuildLimits& limits;
  std::size_t nodes = 0;
  std::set<std::vector<std::uint32_t>> out;
  std::vector<char> in_s;
  std::vector<std::uint32_t> edge_alive;  // edges fully inside S

  Builder(const Hypergraph& hg, double eps, const BuildLimits& lim)
      : h(hg), edge_budget(eps * static_cast<double>(hg.edges.size())), limits(lim),
        in_s(hg.vertex_count, 1) {}

  std::vector<std::uint32_t> edges_inside() const {
    std::vector<std::uint32_t> ids;
    for (std::uint32_t i = 0; i < h.edges.size(); ++i) {
      bool inside = true;
      for (std::uint32_t v : h.edges[i])
        if (!in_s[v]) {
          inside = false;
          break;
        }
      if (inside) ids.push_back(i);
    }
    return ids;
  }

  void emit() {
    std::vector<std::uint32_t> s;
    for (std::uint32_t v = 0; v < h.vertex_count; ++v)
      if (in_s[v]) s.push_back(v);
    out.insert(std::move(s));
    if (out.size() > limits.max_containers)
      throw SizeError("container family exceeds the configured cap");
  }

  void rec() {
    if (++nodes > limits.max_nodes)
      throw SizeError("container construction exceeded its node guard");
    const auto inside = edges_inside();
    if (static_cast<double>(inside.size()) <= edge_budget + 1e-12) {
      emit();
      return;
    }
    // maximum-degree vertex of H[S], ties toward the lowest id
    std::vector<std::uint32_t> deg(h.vertex_count, 0);
    for (std::uint32_t ei : inside)
      for (std::uint32_t v : h.edges[ei]) ++deg[v];
    std::uint32_t vmax = 0;
    for (std::uint32_t v = 1; v < h.vertex_count; ++v)
      if (deg[v] > deg[vmax]) vmax = v;
    // the edge through vmax with the largest total degree, ties canonical
    std::uint32_t best_edge = 0;
    long long best_score = -1;
    for (std::uint32_t ei : inside) {
      const auto& e = h.edges[ei];
      if (std::find(e.begin(), e.end(), vmax) == e.end()) continue;
      long long score = 0;
      for (std::uint32_t v : e) score += deg[v];
      if (score > best_score) {
        best_score = score;
        best_edge = ei;
      }
    }
    // every independent set inside S misses vmax or some other vertex of
    // the chosen edge
    in_s[vmax] = 0;
    rec();
    in_s[vmax] = 1;
    for (std::uint32_t u : h.edges[best_edge]) {
      if (u == vmax) continue;
      in_s[u] = 0;
      rec();
      in_s[u] = 1;
    }
  }
};

}  // namespace

ContainerSet build_containers(const Hypergraph& h, double epsilon,
                              const BuildLimits& limits) {
  if (epsilon <= 0) throw ArgumentError("epsilon must be positive");
  ContainerSet cs;
  cs.epsilon = epsilon;
  cs.vertex_count = h.vertex_count;
  Builder b(h, epsilon, limits);
  b.rec();
  cs.containers.assign(b.out.begin(), b.out.end());
  return cs;
}

namespace {

std::size_t edges_in_subset(const Hypergraph& h, const Bitmap& s) {
  std::size_t count = 0;
  for (const auto& e : h.edges) {
    bool inside = true;
    for (std::uint32_t v : e)
      if (!s.test(v)) {
        inside = false;
        break;
      }
    if (inside) ++count;
  }
  return count;
}

struct CoverWalker {
  const Hypergraph& h;
  const std::vector<Bitmap>& containers;
  std::vector<std::vector<std::uint32_t>> edges_at;  // per-vertex edge ids
  std::vector<std::uint8_t> inc;
  Bitmap included;
  std::size_t leaves = 0;
  std::optional<std::vector<std::uint32_t>> uncovered;

  CoverWalker(const Hypergraph& hg, const std::vector<Bitmap>& cs)
      : h(hg), containers(cs), edges_at(hg.vertex_count),
        inc(hg.edges.size(), 0), included(hg.vertex_count) {
    for (std::uint32_t ei = 0; ei < h.edges.size(); ++ei)
      for (std::uint32_t v : h.edges[ei]) edges_at[v].push_back(ei);
  }

  std::vector<std::uint32_t> included_ids() const {
    std::vector<std::uint32_t> ids;
    included.for_each_set([&](std::size_t v) { ids.push_back(static_cast<std::uint32_t>(v)); });
    return ids;
  }

  // cand: containers still containing the current included set. An empty
  // cand means the included set itself is an uncovered independent set.
  bool walk(std::uint32_t pos, const std::vector<std::uint32_t>& cand) {
    if (cand.empty()) {
      uncovered = included_ids();
      return false;
    }
    if (pos == h.vertex_count) {
      ++leaves;
      return true;
    }
    if (!walk(pos + 1, cand)) return false;  // exclude pos
    bool can_take = true;
    for (std::uint32_t ei : edges_at[pos]) {
      if (inc[ei] + 1 == static_cast<std::uint8_t>(h.r)) {
        can_take = false;
        break;
      }
    }
    if (!can_take) return true;
    std::vector<std::uint32_t> next;
    for (std::uint32_t ci : cand)
      if (containers[ci].test(pos)) next.push_back(ci);
    included.set(pos);
    for (std::uint32_t ei : edges_at[pos]) ++inc[ei];
    const bool ok = walk(pos + 1, next);
    for (std::uint32_t ei : edges_at[pos]) --inc[ei];
    included.reset(pos);
    return ok;
  }
};

}  // namespace

VerifyReport verify_containers(const Hypergraph& h, const ContainerSet& cs,
                               double epsilon, std::optional<double> tau,
                               std::uint64_t sample, std::uint64_t seed) {
  VerifyReport rep;
  rep.edge_budget = epsilon * static_cast<double>(h.edges.size());

  std::vector<Bitmap> masks;
  masks.reserve(cs.containers.size());
  for (const auto& c : cs.containers) {
    Bitmap b(h.vertex_count);
    for (std::uint32_t v : c) b.set(v);
    masks.push_back(std::move(b));
  }

  // property (iii): every container spans at most epsilon e(H) edges
  rep.sparsity_ok = true;
  for (const Bitmap& b : masks) {
    const std::size_t inside = edges_in_subset(h, b);
    rep.max_edges_in_container = std::max(rep.max_edges_in_container, inside);
    if (static_cast<double>(inside) > rep.edge_budget + 1e-12) rep.sparsity_ok = false;
  }
  for (const auto& c : cs.containers)
    rep.max_container_size = std::max(rep.max_container_size, c.size());

  // property (i): every independent set lies inside some container
  if (h.vertex_count <= 30) {
    CoverWalker walker(h, masks);
    std::vector<std::uint32_t> all(masks.size());
    for (std::uint32_t i = 0; i < masks.size(); ++i) all[i] = i;
    rep.covering_ok = walker.walk(0, all);
    rep.covering_checked_exhaustively = true;
    rep.independent_sets_checked = walker.leaves;
    if (!rep.covering_ok) rep.uncovered = walker.uncovered;
  } else {
    // sampled fallback: random greedy independent sets
    std::mt19937_64 rng(seed);
    rep.covering_ok = true;
    std::vector<std::uint32_t> perm(h.vertex_count);
    for (std::uint32_t i = 0; i < h.vertex_count; ++i) perm[i] = i;
    std::vector<std::uint8_t> inc(h.edges.size(), 0);
    std::vector<std::vector<std::uint32_t>> edges_at(h.vertex_count);
    for (std::uint32_t ei = 0; ei < h.edges.size(); ++ei)
      for (std::uint32_t v : h.edges[ei]) edges_at[v].push_back(ei);
    for (std::uint64_t it = 0; it < sample && rep.covering_ok; ++it) {
      std::shuffle(perm.begin(), perm.end(), rng);
      std::fill(inc.begin(), inc.end(), 0);
      Bitmap s(h.vertex_count);
      for (std::uint32_t v : perm) {
        bool ok = true;
        for (std::uint32_t ei : edges_at[v])
          if (inc[ei] + 1 == static_cast<std::uint8_t>(h.r)) {
            ok = false;
            break;
          }
        if (!ok) continue;
        s.set(v);
        for (std::uint32_t ei : edges_at[v]) ++inc[ei];
      }
      bool covered = false;
      for (const Bitmap& c : masks)
        if (s.is_subset_of(c)) {
          covered = true;
          break;
        }
      if (!covered) {
        rep.covering_ok = false;
        std::vector<std::uint32_t> ids;
        s.for_each_set([&](std::size_t v) { ids.push_back(static_cast<std::uint32_t>(v)); });
        rep.uncovered = ids;
      }
      ++rep.independent_sets_checked;
    }
    rep.covering_checked_exhaustively = false;
  }

  rep.log2_containers =
      cs.containers.empty() ? 0.0 : std::log2(static_cast<double>(cs.containers.size()));
  if (tau && *tau > 0 && *tau < 1 && epsilon > 0 && epsilon < 1) {
    const double rf = factorial(h.r);
    const double c_r = 1000.0 * h.r * rf * rf * rf;
    rep.theorem_budget = c_r * static_cast<double>(h.vertex_count) * *tau *
                         std::log2(1.0 / epsilon) * std::log2(1.0 / *tau);
    rep.budget_within = rep.log2_containers <= *rep.theorem_budget;
  }
  return rep;
}

PipelineReport container_counting_pipeline(const GridParams& g, ExtremalTable& table,
                                           double log_base,
                                           const SearchLimits& search_limits,
                                           const CensusLimits& census_limits) {
  PipelineReport rep;
  rep.k = g.k;
  rep.n = g.n;

  if (!table.exact(g.k, g.n)) {
    ExtremalRecord rec = exact_c(g, search_limits);
    if (rec.status != SolveStatus::exact)
      throw BudgetExhaustedError("pipeline needs an exact c_k(n)");
    table.merge(rec);
  }
  rep.ck = *table.exact(g.k, g.n);

  CensusRecord census = g.cells <= 25 ? count_corner_free_oracle(g)
                                      : count_corner_free(g, census_limits);
  if (!census.exact) throw BudgetExhaustedError("pipeline needs an exact census");
  rep.census = census.count;
  rep.census_method = census.method;

  const Hypergraph h = corner_hypergraph(g);

  if (g.n >= 2) {
    const double log_n = std::log(static_cast<double>(g.n)) / std::log(log_base);
    const double nk = std::pow(static_cast<double>(g.n), g.k);
    const double f = static_cast<double>(rep.ck) / nk;
    rep.epsilon = std::pow(log_n, 3 * g.k + 1) / static_cast<double>(g.n) *
                  std::pow(nk / static_cast<double>(rep.ck), g.k);
    rep.tau = f / std::pow(log_n, 3);
    if (h.edge_count() >= 1)
      rep.hypotheses = check_hypotheses(h, rep.epsilon, rep.tau);
  } else {
    rep.epsilon = 1.0;
    rep.tau = 0.0;
  }

  double eps_eff = rep.epsilon;
  if (eps_eff > 1.0) {
    eps_eff = 1.0;
    rep.epsilon_clamped = true;
  }

  const ContainerSet cs = build_containers(h, eps_eff);
  rep.container_count = cs.containers.size();
  rep.log2_containers =
      cs.containers.empty() ? 0.0 : std::log2(static_cast<double>(cs.containers.size()));

  rep.verify = verify_containers(h, cs, eps_eff,
                                 rep.tau > 0 ? std::optional<double>(rep.tau) : std::nullopt);
  if (!rep.verify.sparsity_ok)
    throw VerificationError("container property (iii) failed: a container spans too many corners");
  if (!rep.verify.covering_ok) {
    throw VerificationError("container property (i) failed: an independent set is uncovered");
  }

  rep.sum_two_pow_size = 0;
  for (const auto& c : cs.containers) {
    rep.max_container_size = std::max(rep.max_container_size, c.size());
    rep.sum_two_pow_size += BigInt(1) << c.size();
  }
  rep.census_within_sum = rep.census <= rep.sum_two_pow_size;
  if (rep.verify.covering_checked_exhaustively && !rep.census_within_sum)
    throw VerificationError("count bound failed: census exceeds the container sum");

  const RateFunctions rf = RateFunctions::make(g.k, table, log_base);
  rep.c_prime = rf.c_prime;
  rep.max_size_within_cprime =
      static_cast<double>(rep.max_container_size) <
      rf.c_prime * static_cast<double>(rep.ck);
  rep.log_budget = rep.verify.theorem_budget;
  return rep;
}

}  // namespace cornerkit
