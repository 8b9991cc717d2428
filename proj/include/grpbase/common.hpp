#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace grpbase {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input or violated precondition.
struct InputError : Error {
  using Error::Error;
};

// Enumeration would exceed the configured cap.
struct CapExceeded : Error {
  using Error::Error;
};

// detect_structure could not match the group against the expected shape;
// callers fall back to exhaustive search.
struct StructureError : Error {
  using Error::Error;
};

// A construction the theory guarantees produced a nontrivial certificate.
struct ConstructionBug : Error {
  using Error::Error;
};

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// (prime, exponent) pairs, primes ascending.
inline std::vector<std::pair<std::uint64_t, std::uint32_t>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, std::uint32_t>> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      std::uint32_t e = 0;
      while (n % d == 0) { n /= d; ++e; }
      out.emplace_back(d, e);
    }
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

inline bool is_power_of(std::uint64_t n, std::uint64_t b) {
  if (n == 0) return false;
  while (n % b == 0) n /= b;
  return n == 1;
}

}  // namespace grpbase
