#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "cornerkit/grid.hpp"

namespace cornerkit {

// A 3-AP-free subset of [1, n], kept sorted.
struct APFreeSet {
  int n = 1;
  std::vector<int> elems;
};

// First triple x < y < z with x + z = 2y, if any (elems must be sorted).
std::optional<std::array<int, 3>> find_three_ap(const std::vector<int>& elems);

// Sorts, deduplicates and validates range and 3-AP-freeness.
APFreeSet make_ap_free_set(int n, std::vector<int> elems);

// Digit-sphere construction: integers written in base `base` with digits
// in [0, base/2) never carry when two of them are added, so the values on
// a fixed squared-norm shell of digit vectors are 3-AP-free. Scans a small
// (base, digits) grid plus a greedy baseline and returns the largest
// result, verified against the pairwise oracle.
APFreeSet behrend_set(int n);

// B = {(x, y) in [n]^2 : y - x in A}. Values a >= n have no in-grid line
// and are reported in `dropped` instead of failing.
GridSet diagonal_corner_free_2d(int n, const APFreeSet& a,
                                std::vector<int>* dropped = nullptr);

// Randomized local search: add a random absent cell, then while a corner
// exists remove the cell of the first corner that minimizes the resulting
// corner count (ties by canonical order). Returns the largest corner-free
// set seen. Deterministic for a fixed seed.
GridSet heuristic_corner_free(const GridParams&, std::uint64_t budget,
                              std::uint64_t seed);

}  // namespace cornerkit
