#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cornerkit/extremal.hpp"
#include "cornerkit/grid.hpp"

namespace cornerkit {

// Exact number of corner-free subsets of [n]^k.
struct CensusRecord {
  int k = 1;
  int n = 1;
  BigInt count = 0;       // exact, or a completed-branch lower bound
  double log2_count = 0;  // of the reported count
  std::optional<long long> ck;
  std::optional<double> ratio;  // log2(count) / c_k(n)
  std::string method;           // "oracle" or "pruned"
  bool exact = true;
};

struct CensusLimits {
  std::uint64_t max_nodes = 400'000'000;  // per task in parallel mode
  int max_cells = 62;
};

CensusRecord make_census_record(int k, int n, BigInt count, std::string method,
                                bool exact, std::optional<long long> ck);

// Scans all 2^(n^k) subsets, n^k <= 25.
std::uint64_t census_oracle_kernel_serial(const GridParams&);
std::uint64_t census_oracle_kernel(const GridParams&);  // OpenMP
CensusRecord count_corner_free_oracle(const GridParams&);

// Recursive counter branching on the first undecided cell. A cell can be
// taken only if no corner would have all k+1 cells in; once every corner
// has an excluded cell the remaining cells are free and the subtree
// contributes a power of two without being walked.
CensusRecord count_corner_free_serial(const GridParams&, const CensusLimits& = {});
CensusRecord count_corner_free(const GridParams&, const CensusLimits& = {});  // OpenMP

struct CensusRow {
  int n = 0;
  BigInt count = 0;
  double log2_count = 0;
  std::optional<long long> ck;
  std::optional<double> ratio;
  std::string method;
};

// Desk-scale table of (n, log2 count, c_k, ratio); rows with a missing
// exact c_k(n) are emitted as gaps, never extrapolated.
std::vector<CensusRow> census_ratio_series(
    int k, std::span<const int> ns, const ExtremalTable&,
    const std::function<CensusRecord(const GridParams&)>& counter);

}  // namespace cornerkit
