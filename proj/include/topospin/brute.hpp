#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "topospin/replica.hpp"
#include "topospin/report.hpp"
#include "topospin/tetrahedron.hpp"

namespace topospin {

class VertexPhaseCircuit {
 public:
  // All phases zero.
  explicit VertexPhaseCircuit(int N, std::uint64_t seed = 0);

  int N() const { return N_; }
  std::uint64_t seed() const { return seed_; }
  double phase(Vertex v, int x, int y) const { return tables_[static_cast<int>(v)][x * N_ + y]; }
  double& phase(Vertex v, int x, int y) { return tables_[static_cast<int>(v)][x * N_ + y]; }
  // Sum of the four vertex phases seen by cfg.
  double total_phase(const StringConfig& cfg) const;

 private:
  int N_;
  std::uint64_t seed_;
  std::array<std::vector<double>, 4> tables_;
};

// Four N x N tables drawn uniformly from [0, 2 pi) with std::mt19937_64.
VertexPhaseCircuit random_vertex_circuit(int N, std::uint64_t seed);

// N^{-3/2} F(a,b,c) times the circuit's vertex phases.
std::complex<double> amplitude(int N, int p, const StringConfig& cfg, const VertexPhaseCircuit* circuit = nullptr);

// <psi^{2r}| pi_A pi_B pi_C |psi^{2r}> by enumeration of every ket tuple.
PhiReport phi_brute(int N, int p, int r, const PermTriple& triple, const VertexPhaseCircuit* circuit = nullptr,
                    const EnumerationOptions& opts = {});

// One enumeration pass shared by several circuits.
std::vector<PhiReport> phi_brute_batch(int N, int p, int r, const PermTriple& triple,
                                       std::span<const VertexPhaseCircuit> circuits,
                                       const EnumerationOptions& opts = {});

struct RatioReport {
  double ratio;
  std::complex<double> raw_ratio;  // before taking the real part
  std::array<PhiReport, 8> terms;  // in ratio_triples order
};

// Eight-term ratio; equals |Phi(r)|^2 / N^r. Throws DivisionByZero.
RatioReport phi_ratio_brute(int N, int p, int r, const EnumerationOptions& opts = {});

}  // namespace topospin
