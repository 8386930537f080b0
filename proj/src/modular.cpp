#include "topospin/modular.hpp"

#include <cmath>
#include <numeric>

#include "topospin/error.hpp"
#include "topospin/numeric.hpp"

namespace topospin {

ModularData ModularData::create(std::vector<Anyon> anyons) {
  std::vector<std::string> problems;
  if (anyons.empty()) throw ValidationError("modular data: no anyons");
  if (anyons[0].dim != 1.0 || std::abs(anyons[0].spin - cplx{1, 0}) > 1e-12)
    problems.push_back("modular data: vacuum must have d = 1 and theta = 1");
  double d2 = 0;
  for (const auto& a : anyons) {
    if (!(a.dim > 0)) problems.push_back("modular data: dimension of '" + a.label + "' must be positive");
    if (std::abs(std::abs(a.spin) - 1.0) > 1e-12)
      problems.push_back("modular data: spin of '" + a.label + "' is not unit modulus");
    d2 += a.dim * a.dim;
  }
  if (!problems.empty()) throw ValidationError(std::move(problems));
  ModularData md;
  md.anyons_ = std::move(anyons);
  md.total_dim_ = std::sqrt(d2);
  return md;
}

TwistedZnTheory TwistedZnTheory::create(int N, int p) {
  if (N < 1) throw ValidationError("twisted Z_N: N must be positive");
  if (p < 0 || p >= N) throw ValidationError("twisted Z_N: p must lie in 0..N-1");
  return TwistedZnTheory(N, p);
}

ModularData modular_data(const TwistedZnTheory& theory) {
  const long long N = theory.N(), p = theory.p();
  std::vector<Anyon> anyons;
  for (long long s = 0; s < N; ++s)
    for (long long m = 0; m < N; ++m)
      anyons.push_back({"(" + std::to_string(s) + "," + std::to_string(m) + ")", 1.0,
                        unit_root(p * s * s + m * s * N, N * N)});
  return ModularData::create(std::move(anyons));
}

ModularData modular_data_doubled(const FusionCategory& cat) {
  if (!cat.has_twists()) throw ValidationError("doubled modular data needs a category with twists");
  std::vector<Anyon> anyons;
  for (int a = 0; a < cat.rank(); ++a)
    for (int b = 0; b < cat.rank(); ++b)
      anyons.push_back({cat.name(a) + "x" + cat.name(b) + "bar", cat.dim(a) * cat.dim(b),
                        cat.twist(a) * std::conj(cat.twist(b))});
  return ModularData::create(std::move(anyons));
}

namespace {

cplx weighted_spin_sum(const ModularData& md, int r) {
  cplx sum = 0;
  for (const auto& a : md.anyons()) sum += a.dim * a.dim * unit_power(a.spin, r);
  return sum;
}

}  // namespace

cplx phi_invariant(const ModularData& md, int r) {
  return weighted_spin_sum(md, r) / md.total_dim();
}

cplx phi_closed_form_zn(int N, int p, int r) {
  if (N < 2 || p < 0 || p >= N || r < 1) throw ValidationError("phi_closed_form_zn: need N >= 2, 0 <= p < N, r >= 1");
  const long long g = std::gcd(N, r);
  cplx sum = 0;
  for (long long q = 0; q < g; ++q) sum += unit_root(static_cast<long long>(r) * p * q * q, g * g);
  return sum;
}

cplx higher_central_charge(const ModularData& md, int r) {
  cplx phi = phi_invariant(md, r);
  if (std::abs(phi) < 1e-12) throw ZeroPhi("Phi(" + std::to_string(r) + ") vanishes; zeta_r is undefined");
  return phi / std::abs(phi);
}

LensPartition lens_partition(const ModularData& md, int r) {
  cplx z = weighted_spin_sum(md, r) / md.total_dim_sq();
  return {z, std::pow(md.total_dim(), 2 * r) * z};
}

}  // namespace topospin
