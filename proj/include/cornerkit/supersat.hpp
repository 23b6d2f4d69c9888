#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cornerkit/corners.hpp"
#include "cornerkit/extremal.hpp"
#include "cornerkit/grid.hpp"

namespace cornerkit {

std::vector<int> primes_up_to(double x);

struct PntReport {
  double x = 0;
  std::size_t pi = 0;      // number of primes <= x
  double lower = 0;        // x / ln x
  double upper = 0;        // 2x / ln x
  bool lower_holds = false;
  bool upper_holds = false;
  bool in_known_lower_window = false;  // the lower form is known to need x >= 17
};

PntReport pnt_bounds_check(double x);

// Repeatedly takes the first corner of the current set in canonical order,
// removes the member cell lying in the most still-present corners (ties by
// canonical order) and records the corner. The list certifies
// Gamma_k(A) >= |A| - ck: the corners are pairwise distinct because each
// contains the cell removed at its step.
std::vector<Corner> greedy_corner_witnesses(const GridSet&, long long ck);

// Parameters of the prime-spaced subgrid decomposition.
struct SupersatConfig {
  int M = 2;       // subgrid side
  double x = 2;    // prime cutoff
  double K = 2;    // density constant
};

// An M x ... x M subgrid with layer spacing d, anchored at base_idx.
struct Subgrid {
  std::size_t base_idx = 0;
  int d = 1;
};

struct GridFamily {
  GridParams params;
  SupersatConfig cfg;
  long long ck_M = 0;
  std::vector<int> primes;                        // primes <= x
  std::vector<std::vector<Subgrid>> per_prime;    // G_d, aligned with primes
  std::vector<std::vector<char>> dense;           // |A cap G| >= K c_k(M)
  std::size_t total_subgrids = 0;
  std::size_t dense_count = 0;

  // central region [(M-1)d+1, n-(M-1)d]^k; empty when the interval is
  std::pair<int, int> zeta_interval(int d) const;
};

// Materializes G_d for each prime d <= x and the dense family R, using the
// exact c_k(M) from the table.
GridFamily build_grid_family(const GridSet&, const SupersatConfig&,
                             const ExtremalTable&);

// Corners of the ambient grid lying entirely inside the subgrid and A;
// they have difference h*d with 1 <= h <= M-1 and reduce to corners of a
// compressed [M]^k set.
std::uint64_t subgrid_corner_count(const GridSet&, const Subgrid&, int M);
std::uint64_t subgrid_intersection_size(const GridSet&, const Subgrid&, int M);

std::uint64_t family_corner_sum_serial(const GridSet&, const GridFamily&);
std::uint64_t family_corner_sum(const GridSet&, const GridFamily&);  // OpenMP
std::uint64_t family_intersection_sum(const GridSet&, const GridFamily&);

struct AuditEntry {
  std::string id;        // "1".."7", "mult", "zeta", "final"
  std::string label;
  double lhs = 0;
  double rhs = 0;
  std::string relation;  // ">=" or "<="
  bool preconditions_met = true;
  bool structural = false;  // must hold regardless of preconditions
  bool holds = false;
  std::string note;
};

struct AuditReport {
  GridParams params;
  SupersatConfig cfg;
  long long ck_M = 0;
  std::size_t set_size = 0;
  std::uint64_t gamma = 0;
  std::size_t family_size = 0;
  std::size_t dense_count = 0;
  double x_canonical = 0;  // |A| / (2^(k+1) M n^(k-1))
  bool density_ok = false; // |A|/n^k >= 8K c_k(M)/M^k
  std::vector<AuditEntry> entries;
  bool structural_ok = true;  // every structural entry holds
};

// Evaluates the audit chain for the decomposition. Divisor-counting logs
// are base 2, which makes the dispersion inequality and the multiplicity
// bound theorems at every scale; prime-counting logs are natural.
AuditReport audit_grid_family(const GridSet&, const SupersatConfig&,
                              const ExtremalTable&);

// Density bound via double counting: Gamma_k(A) >= (|A|/(2 ck))^(k+1) ck
// when |A| >= 2 ck, plus the exact identity behind it.
struct DoubleCountingReport {
  int k = 0;
  long long ck = 0;
  std::size_t set_size = 0;
  bool preconditions_met = false;  // k >= 2 and |A| >= 2 ck
  std::uint64_t gamma = 0;
  double bound = 0;
  bool holds = true;
  bool binom_form_ok = true;  // binom(|A|,2ck) ck <= Gamma binom(|A|-k-1,2ck-k-1)
  long long identity_s = 0;
  BigInt identity_closed = 0;
  bool identity_checked = false;  // exhaustive side needs |A| <= 20
  BigInt identity_exhaustive = 0;
  bool identity_ok = true;
};

DoubleCountingReport check_double_counting_bound(
    const GridSet&, long long ck, std::optional<long long> identity_s = {});

// Compares Gamma_k(A) with the supersaturation target Upsilon(n) * n^k.
// The target is asymptotic; margins here are data, not refutations.
struct TargetReport {
  int k = 0;
  int n = 0;
  long long ck = 0;
  std::size_t set_size = 0;
  double c_prime = 0;
  double size_threshold = 0;  // C' * c_k(n)
  bool threshold_met = false;
  std::uint64_t gamma = 0;
  double upsilon = 0;
  double target = 0;  // Upsilon(n) * n^k
  double identity_ratio = 0;  // Upsilon * n * Psi^k / log n
  bool identity_ok = false;
};

TargetReport supersaturation_target(const GridSet&, const RateFunctions&);

}  // namespace cornerkit
