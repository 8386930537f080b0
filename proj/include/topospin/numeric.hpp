#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace topospin {

inline long long mod(long long x, long long m) {
  long long r = x % m;
  return r < 0 ? r + m : r;
}

// exp(2*pi*i*num/den), exact at quarter turns.
inline std::complex<double> unit_root(long long num, long long den) {
  long long n = mod(num, den);
  if (n == 0) return {1.0, 0.0};
  if (4 * n == den) return {0.0, 1.0};
  if (2 * n == den) return {-1.0, 0.0};
  if (4 * n == 3 * den) return {0.0, -1.0};
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(n) / static_cast<double>(den));
}

inline std::complex<double> unit_power(std::complex<double> z, int r) {
  std::complex<double> out{1.0, 0.0};
  std::complex<double> base = z;
  for (unsigned e = static_cast<unsigned>(r); e; e >>= 1) {
    if (e & 1u) out *= base;
    base *= base;
  }
  return out;
}

// Saturating product used for enumeration-size estimates.
inline std::uint64_t sat_pow(std::uint64_t base, int exp) {
  std::uint64_t out = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && out > UINT64_MAX / base) return UINT64_MAX;
    out *= base;
  }
  return out;
}

}  // namespace topospin
