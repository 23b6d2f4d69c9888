#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cornerkit/corners.hpp"
#include "cornerkit/grid.hpp"

namespace cornerkit {

enum class SolveStatus { exact, bounded };

// c_k(n) facts: exact value or a [lower, upper] window, with a witness for
// the lower bound and a provenance string.
struct ExtremalRecord {
  int k = 1;
  int n = 1;
  SolveStatus status = SolveStatus::bounded;
  long long lower = 0;
  long long upper = 0;
  std::optional<GridSet> witness;
  std::string method;
};

struct SearchLimits {
  std::uint64_t max_nodes = 50'000'000;
};

// Maximum corner-free set by branch and bound over cells ordered by
// descending corner-incidence degree. Deterministic for a fixed budget.
ExtremalRecord exact_c(const GridParams&, const SearchLimits& = {});

// Full subset scan, n^k <= 25. Oracle path for testing the solver.
ExtremalRecord exact_c_exhaustive(const GridParams&);         // OpenMP
ExtremalRecord exact_c_exhaustive_serial(const GridParams&);

struct MinCornersResult {
  long long s = 0;
  std::uint64_t value = 0;
  GridSet witness;
  bool exact = true;
};

// Exact minimum of Gamma_k(A) over |A| = s.
MinCornersResult min_corners_at_size(const GridParams&, long long s,
                                     const SearchLimits& = {});

// ceil(n/m)^k * ck_m; upper bound for c_k(n) from a value at scale m.
std::uint64_t subadditive_upper(int k, long long n, long long m, long long ck_m);

// Keyed store of extremal facts. Exact records are never downgraded;
// conflicting exact values indicate a solver bug and are rejected.
class ExtremalTable {
 public:
  void merge(const ExtremalRecord&);
  const ExtremalRecord* find(int k, int n) const;
  std::optional<long long> exact(int k, int n) const;
  // min over the record's upper and subadditive bounds from exact entries
  long long best_upper(int k, int n) const;
  std::vector<const ExtremalRecord*> records() const;
  std::vector<const ExtremalRecord*> records_for(int k) const;

 private:
  std::map<std::pair<int, int>, ExtremalRecord> m_;
};

// Rate-function bundle around an extremal table. Logs use `log_base`
// (natural by default). alpha_k, b_k and c_prime have no ground-truth
// values; the defaults below are desk-scale surrogates.
struct RateFunctions {
  int k = 2;
  const ExtremalTable* table = nullptr;
  double log_base = 2.718281828459045235360287471352662498;  // e
  double alpha_k = 0;  // fitted from the table when possible
  double b_k = 0;      // 2^(2k) + 1
  double c_prime = 0;  // 8 * K * b_k with K = 2

  static RateFunctions make(int k, const ExtremalTable& table,
                            double log_base = 2.718281828459045235360287471352662498);
};

struct RateValues {
  double f = 0;        // c_k(n) / n^k
  double lambda = 0;   // n / log^(3k+3) n * f^(k+3)
  double upsilon = 0;  // log^(3k+1) n / n * (n^k / c_k(n))^k
  double psi = 0;      // f / log^3 n
  double log_n = 0;
};

// Requires an exact c_k(n) and log n > 1 under the configured base;
// refuses to extrapolate otherwise.
RateValues rate_eval(const RateFunctions&, int n);

struct SubadditivityPair {
  int m = 0;
  int n = 0;
  double f_m = 0;
  double f_n = 0;
  bool ratio_ok = false;   // f(n) < 2^k f(m)
  std::uint64_t subadd_rhs = 0;
  bool subadd_ok = false;  // c_k(n) <= ceil(n/m)^k c_k(m)
};

struct SubadditivityReport {
  int k = 0;
  bool all_ok = true;
  std::vector<SubadditivityPair> pairs;
};

// Checks f(n) < 2^k f(m) and the subadditive bound over every exact pair
// m < n; a violation means a solver bug, not new mathematics.
SubadditivityReport check_subadditivity(const ExtremalTable&, int k);

}  // namespace cornerkit
