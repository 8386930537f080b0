#pragma once

#include <array>
#include <complex>
#include <span>
#include <string>
#include <string_view>

#include "topospin/category.hpp"
#include "topospin/modular.hpp"
#include "topospin/replica.hpp"
#include "topospin/report.hpp"

namespace topospin {

// Rung counts per region boundary. The boundary between regions X and Y is
// the edge separating them: AΛ = a, AB = b, BC = c, AC = ab, BΛ = bc, CΛ = abc.
class LadderSpec {
 public:
  static LadderSpec uniform(int n);
  static LadderSpec unit() { return uniform(1); }
  // "AΛ=1,AB=2,..." ("L" or "Lambda" may stand for Λ); unlisted boundaries are 1.
  static LadderSpec parse(std::string_view text);

  int length(Edge e) const { return lengths_[static_cast<int>(e)]; }
  void set(Edge e, int n);
  std::string to_string() const;
  bool operator==(const LadderSpec&) const = default;

 private:
  std::array<int, 6> lengths_{1, 1, 1, 1, 1, 1};
};

// The prefactor exponent of the abelian route: value = Phi(r) N^{-(6r-3)}.
constexpr int pinned_zn_exponent(int r) { return 6 * r - 3; }

// Twisted Z_N value of the permutation expectation. The canonical triple uses
// the closed (A,B,C,delta) parametrization; other triples go through the
// orbit-labeling sum.
PhiReport phi_zn_constrained(int N, int p, int r, const PermTriple& triple, const EnumerationOptions& opts = {});

// prod_c S_{R_c}^n (D^2 / d_{q0})^{R_c - 1}
double theta_ladder(const FusionCategory& cat, std::span<const int> cycle_lengths, Label q0, int n);

struct StringNetReport {
  PhiReport raw;            // value includes all ladder and dimension prefactors
  std::complex<double> phi; // labeling_sum / D^6
  std::complex<double> labeling_sum;
  double area_factor;       // prod over edges and orbits of S_{R_c}^{n_e}
  double prefactor;         // raw.value / phi
  std::uint64_t dfs_nodes;
};

StringNetReport phi_stringnet(const FusionCategory& cat, int r, const PermTriple& triple, const LadderSpec& ladders,
                              const EnumerationOptions& opts = {});

struct AnalyticRatioReport {
  double ratio;
  std::complex<double> raw_ratio;
  std::array<StringNetReport, 8> terms;  // in ratio_triples order
};

AnalyticRatioReport extract_phi_ratio(const FusionCategory& cat, int r, const LadderSpec& ladders,
                                      const EnumerationOptions& opts = {});
AnalyticRatioReport extract_phi_ratio(const TwistedZnTheory& theory, int r, const LadderSpec& ladders,
                                      const EnumerationOptions& opts = {});

}  // namespace topospin
