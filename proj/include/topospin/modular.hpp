#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "topospin/category.hpp"

namespace topospin {

struct Anyon {
  std::string label;
  double dim;
  cplx spin;
};

class ModularData {
 public:
  // The first anyon is the vacuum. Throws ValidationError.
  static ModularData create(std::vector<Anyon> anyons);

  const std::vector<Anyon>& anyons() const { return anyons_; }
  double total_dim() const { return total_dim_; }
  double total_dim_sq() const { return total_dim_ * total_dim_; }

 private:
  std::vector<Anyon> anyons_;
  double total_dim_ = 1;
};

class TwistedZnTheory {
 public:
  static TwistedZnTheory create(int N, int p);
  int N() const { return N_; }
  int p() const { return p_; }
  // [[0, N], [N, -2p]]
  std::array<std::array<int, 2>, 2> k_matrix() const { return {{{0, N_}, {N_, -2 * p_}}}; }

 private:
  TwistedZnTheory(int N, int p) : N_(N), p_(p) {}
  int N_, p_;
};

// N^2 anyons (s,m), theta = exp(2 pi i (p s^2 / N^2 + m s / N)), d = 1.
ModularData modular_data(const TwistedZnTheory& theory);
// Anyons (a, bbar) with d = d_a d_b and theta = theta_a conj(theta_b).
ModularData modular_data_doubled(const FusionCategory& cat);

// (1/D) sum_a d_a^2 theta_a^r
cplx phi_invariant(const ModularData& md, int r);
// sum_{q=0}^{g-1} exp(2 pi i r p q^2 / g^2), g = gcd(N, r)
cplx phi_closed_form_zn(int N, int p, int r);
// Phi(r) / |Phi(r)|; throws ZeroPhi when |Phi(r)| < 1e-12.
cplx higher_central_charge(const ModularData& md, int r);

struct LensPartition {
  cplx z;          // (S^dag T^r S)_00 = (1/D^2) sum_a d_a^2 theta_a^r
  cplx tqft_phi;   // D^{2r} z
};
LensPartition lens_partition(const ModularData& md, int r);

}  // namespace topospin
