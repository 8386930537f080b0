#pragma once

#include <chrono>
#include <complex>
#include <cstdint>
#include <optional>
#include <string_view>

namespace topospin {

enum class Route { modular, brute, analytic_zn, analytic_stringnet };

inline std::string_view to_string(Route route) {
  switch (route) {
    case Route::modular: return "modular";
    case Route::brute: return "brute";
    case Route::analytic_zn: return "analytic_zn";
    case Route::analytic_stringnet: return "analytic_stringnet";
  }
  return "?";
}

struct PhiReport {
  std::complex<double> value;
  Route route = Route::brute;
  std::uint64_t terms_enumerated = 0;
  std::uint64_t terms_surviving = 0;
  // e in value = Phi(r) * N^{-e}; measured by the brute route, pinned elsewhere.
  std::optional<int> normalization_exponent;
  std::chrono::duration<double, std::milli> elapsed{};
};

struct EnumerationOptions {
  std::uint64_t budget = std::uint64_t{1} << 30;
  unsigned jobs = 0;  // 0: all available cores
};

unsigned resolve_jobs(unsigned jobs);

}  // namespace topospin
