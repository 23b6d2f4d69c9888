#include "cornerkit/common.hpp"

#include <cmath>
#include <limits>

namespace cornerkit {

BigInt binomial(long long n, long long r) {
  if (r < 0 || r > n) return 0;
  if (r > n - r) r = n - r;
  BigInt out = 1;
  for (long long i = 1; i <= r; ++i) {
    out *= (n - r + i);
    out /= i;  // exact: out is binom(n-r+i, i) after this step
  }
  return out;
}

double log2_big(const BigInt& v) {
  if (v <= 0) throw ArgumentError("log2_big: argument must be positive");
  const std::size_t bits = boost::multiprecision::msb(v);
  if (bits <= 52) return std::log2(v.convert_to<double>());
  const BigInt top = v >> (bits - 52);
  return static_cast<double>(bits - 52) + std::log2(top.convert_to<double>());
}

std::uint64_t checked_pow_u64(std::uint64_t x, unsigned e) {
  std::uint64_t out = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (x != 0 && out > std::numeric_limits<std::uint64_t>::max() / x)
      throw SizeError("integer overflow in pow");
    out *= x;
  }
  return out;
}

std::uint64_t checked_add_u64(std::uint64_t a, std::uint64_t b) {
  if (a > std::numeric_limits<std::uint64_t>::max() - b)
    throw SizeError("integer overflow in add");
  return a + b;
}

}  // namespace cornerkit
