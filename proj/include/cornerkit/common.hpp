#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace cornerkit {

using BigInt = boost::multiprecision::cpp_int;

// Error taxonomy shared across the library. The CLI maps each type to a
// distinct exit code.
struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct SizeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BudgetExhaustedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct VerificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TableMissError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CacheError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FormatError : ArgumentError {
  using ArgumentError::ArgumentError;
};

// Exact binomial coefficient; 0 when r < 0 or r > n.
BigInt binomial(long long n, long long r);

// log2 of a positive big integer, accurate to double precision.
double log2_big(const BigInt& v);

// x^e with overflow detection.
std::uint64_t checked_pow_u64(std::uint64_t x, unsigned e);

// a + b with overflow detection.
std::uint64_t checked_add_u64(std::uint64_t a, std::uint64_t b);

}  // namespace cornerkit
