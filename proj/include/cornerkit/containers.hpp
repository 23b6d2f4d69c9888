#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cornerkit/census.hpp"
#include "cornerkit/extremal.hpp"
#include "cornerkit/grid.hpp"

namespace cornerkit {

// r-uniform hypergraph with sorted, deduplicated edges in canonical order.
struct Hypergraph {
  int r = 2;
  std::uint32_t vertex_count = 0;
  std::vector<std::vector<std::uint32_t>> edges;

  static Hypergraph make(int r, std::uint32_t vertex_count,
                         std::vector<std::vector<std::uint32_t>> edges);

  std::size_t edge_count() const { return edges.size(); }
  double avg_degree() const {
    return vertex_count == 0 ? 0.0
                             : static_cast<double>(r) * static_cast<double>(edges.size()) /
                                   static_cast<double>(vertex_count);
  }
};

// (k+1)-uniform hypergraph on the grid cells whose edges are the corners;
// its independent sets are exactly the corner-free sets.
Hypergraph corner_hypergraph(const GridParams&, std::size_t max_edges = 2'000'000);

// Max number of edges containing a common j-set, aggregated over the
// edges' own j-subsets (never over all j-subsets of V).
long long delta_j(const Hypergraph&, int j);

struct CodegreeProfile {
  int r = 0;
  std::vector<long long> deltas;  // deltas[j-1] = Delta_j, j = 1..r
  double avg_degree = 0;
  double tau = 0;
  double value = 0;  // Delta(H, tau)
};

// Delta(H, tau) = 2^(binom(r,2)-1) sum_{j=2}^r 2^(-binom(j-1,2))
//                 Delta_j / (tau^(j-1) d). Requires e(H) >= 1.
CodegreeProfile codegree(const Hypergraph&, double tau);

struct HypothesisReport {
  int r = 0;
  double tau = 0, epsilon = 0;
  double tau_limit = 0;        // 1 / (200 r r!^2)
  bool tau_ok = false;
  double codegree_value = 0;
  double codegree_limit = 0;   // epsilon / (12 r!)
  bool codegree_ok = false;
  double c_r_bound = 0;        // 1000 r r!^3
  bool all_ok = false;
};

HypothesisReport check_hypotheses(const Hypergraph&, double epsilon, double tau);

struct BuildLimits {
  std::size_t max_nodes = 4'000'000;
  std::size_t max_containers = 1'000'000;
};

struct ContainerSet {
  double epsilon = 1;
  std::uint32_t vertex_count = 0;
  std::vector<std::vector<std::uint32_t>> containers;  // sorted ids, sorted list
};

// Deterministic container family: a vertex set S is emitted once
// e(H[S]) <= epsilon e(H); otherwise the recursion branches on a maximum-
// degree vertex v of H[S] (ties lowest id) with one branch dropping v and,
// for v's highest-degree edge e*, one branch per u in e* \ {v} dropping u.
// Every independent set avoids v or some u in e* \ {v}, so the family
// covers all of them, and each branch strictly reduces e(H[S]).
ContainerSet build_containers(const Hypergraph&, double epsilon,
                              const BuildLimits& = {});

struct VerifyReport {
  bool covering_checked_exhaustively = false;
  std::size_t independent_sets_checked = 0;
  bool covering_ok = false;                              // property (i)
  std::optional<std::vector<std::uint32_t>> uncovered;
  bool sparsity_ok = false;                              // property (iii)
  std::size_t max_edges_in_container = 0;
  double edge_budget = 0;  // epsilon * e(H)
  std::size_t max_container_size = 0;
  double log2_containers = 0;
  std::optional<double> theorem_budget;  // c(r) |V| tau log(1/eps) log(1/tau)
  bool budget_within = false;            // data, not asserted
};

// Property (i) by walking every independent set (vertex_count <= 30),
// pruning branches already covered; falls back to sampling beyond that.
// Property (iii) by direct edge counting.
VerifyReport verify_containers(const Hypergraph&, const ContainerSet&,
                               double epsilon, std::optional<double> tau = {},
                               std::uint64_t sample = 20'000,
                               std::uint64_t seed = 0);

struct PipelineReport {
  int k = 0;
  int n = 0;
  long long ck = 0;
  BigInt census = 0;
  std::string census_method;
  double epsilon = 0;  // Upsilon(n)
  double tau = 0;      // Psi(n)
  bool epsilon_clamped = false;
  std::optional<HypothesisReport> hypotheses;
  std::size_t container_count = 0;
  std::size_t max_container_size = 0;
  double log2_containers = 0;
  BigInt sum_two_pow_size = 0;
  bool census_within_sum = false;     // must hold on verified families
  double c_prime = 0;
  bool max_size_within_cprime = false;  // data
  std::optional<double> log_budget;     // data
  VerifyReport verify;
};

// End-to-end count bound at desk scale: epsilon = Upsilon(n), tau = Psi(n)
// under the given log base, hypothesis check reported honestly, containers
// built constructively regardless, and exact census compared against
// sum_S 2^|S|. Any verification failure throws with the property named.
PipelineReport container_counting_pipeline(const GridParams&, ExtremalTable&,
                                           double log_base = 2.718281828459045235360287471352662498,
                                           const SearchLimits& = {},
                                           const CensusLimits& = {});

}  // namespace cornerkit
