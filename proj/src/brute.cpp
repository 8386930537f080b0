#include "topospin/brute.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "topospin/error.hpp"
#include "topospin/modular.hpp"
#include "topospin/numeric.hpp"
#include "topospin/summation.hpp"

namespace topospin {

unsigned resolve_jobs(unsigned jobs) {
  if (jobs) return jobs;
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

VertexPhaseCircuit::VertexPhaseCircuit(int N, std::uint64_t seed) : N_(N), seed_(seed) {
  for (auto& t : tables_) t.assign(static_cast<size_t>(N) * N, 0.0);
}

double VertexPhaseCircuit::total_phase(const StringConfig& cfg) const {
  double sum = 0;
  for (Vertex v : kVertices) {
    auto [x, y] = vertex_pair(v, cfg, N_);
    sum += phase(v, x, y);
  }
  return sum;
}

VertexPhaseCircuit random_vertex_circuit(int N, std::uint64_t seed) {
  VertexPhaseCircuit circuit(N, seed);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 2.0 * std::numbers::pi);
  for (Vertex v : kVertices)
    for (int x = 0; x < N; ++x)
      for (int y = 0; y < N; ++y) circuit.phase(v, x, y) = dist(rng);
  return circuit;
}

namespace {

// Unit-modulus part of the amplitude; the N^{-3/2} magnitude is applied once
// to the whole sum.
std::complex<double> unit_amplitude(int N, int p, const StringConfig& cfg, const VertexPhaseCircuit* circuit) {
  std::complex<double> f = cocycle(N, p, cfg);
  if (circuit) f *= std::polar(1.0, circuit->total_phase(cfg));
  return f;
}

void check_inputs(int N, int p, int r) {
  if (N < 2) throw ValidationError("N must be at least 2");
  if (p < 0 || p >= N) throw ValidationError("p must lie in 0..N-1");
  if (r < 1) throw ValidationError("r must be at least 1");
}

struct Check {
  int u, v, edge;
};

// Exhaustive sum over all (N^3)^{2r} ket tuples. For each tuple the bra of
// replica rho takes, on every edge, the ket label of replica pi_X(rho) for the
// edge's regions X; the tuple contributes only if both regions route the
// same label and the routed labels form a valid configuration.
class Enumerator {
 public:
  Enumerator(int N, int p, int r, const PermTriple& triple, const std::vector<const VertexPhaseCircuit*>& circuits)
      : N_(N), R_(2 * r), C_(N * N * N), K_(static_cast<int>(circuits.size())) {
    for (int ci = 0; ci < C_; ++ci) labels_.push_back(edge_labels({ci / (N * N), (ci / N) % N, ci % N}, N));
    pair_.resize(static_cast<size_t>(K_) * C_ * C_);
    for (int k = 0; k < K_; ++k) {
      const VertexPhaseCircuit* circ = circuits[k];
      std::vector<std::complex<double>> u(C_);
      for (int ci = 0; ci < C_; ++ci) u[ci] = unit_amplitude(N, p, {ci / (N * N), (ci / N) % N, ci % N}, circ);
      for (int x = 0; x < C_; ++x)
        for (int y = 0; y < C_; ++y) pair_[(static_cast<size_t>(k) * C_ + x) * C_ + y] = x == y ? 1.0 : u[x] * std::conj(u[y]);
    }
    checks_.resize(R_);
    route_.assign(R_, {});
    for (Edge e : kEdges) {
      auto [I, J] = regions_of(e);
      auto pi = triple.on(I), pj = triple.on(J);
      for (int rho = 0; rho < R_; ++rho) {
        int u = pi(rho), v = pj(rho);
        route_[rho][static_cast<int>(e)] = u;
        if (u != v) checks_[std::max(u, v)].push_back({u, v, static_cast<int>(e)});
      }
    }
  }

  struct Chunk {
    std::vector<CompensatedSum> sums;
    std::uint64_t surviving = 0;
  };

  Chunk run_chunk(int first) const {
    Chunk out;
    out.sums.resize(K_);
    std::vector<int> ket(R_, 0);
    ket[0] = first;
    if (passes(0, ket)) descend(1, ket, out);
    return out;
  }

  int chunks() const { return C_; }
  int circuits() const { return K_; }

 private:
  bool passes(int depth, const std::vector<int>& ket) const {
    for (const auto& ch : checks_[depth])
      if (labels_[ket[ch.u]][ch.edge] != labels_[ket[ch.v]][ch.edge]) return false;
    return true;
  }

  void descend(int depth, std::vector<int>& ket, Chunk& out) const {
    if (depth == R_) {
      leaf(ket, out);
      return;
    }
    for (int ci = 0; ci < C_; ++ci) {
      ket[depth] = ci;
      if (passes(depth, ket)) descend(depth + 1, ket, out);
    }
  }

  void leaf(const std::vector<int>& ket, Chunk& out) const {
    int bra[64];
    for (int rho = 0; rho < R_; ++rho) {
      EdgeLabels l;
      for (int e = 0; e < 6; ++e) l[e] = labels_[ket[route_[rho][e]]][e];
      if (l[3] != (l[0] + l[1]) % N_ || l[4] != (l[1] + l[2]) % N_ || l[5] != (l[0] + l[1] + l[2]) % N_) return;
      bra[rho] = (l[0] * N_ + l[1]) * N_ + l[2];
    }
    ++out.surviving;
    for (int k = 0; k < K_; ++k) {
      const std::complex<double>* P = &pair_[static_cast<size_t>(k) * C_ * C_];
      std::complex<double> term = 1.0;
      for (int rho = 0; rho < R_; ++rho) term *= P[ket[rho] * C_ + bra[rho]];
      out.sums[k].add(term);
    }
  }

  int N_, R_, C_, K_;
  std::vector<EdgeLabels> labels_;
  std::vector<std::complex<double>> pair_;
  std::vector<std::vector<Check>> checks_;
  std::vector<std::array<int, 6>> route_;
};

std::optional<int> measure_exponent(int N, int p, int r, std::complex<double> value) {
  std::complex<double> phi = phi_closed_form_zn(N, p, r);
  if (std::abs(phi) <= 1e-9 || std::abs(value) == 0) return std::nullopt;
  double e = std::log(std::abs(phi) / std::abs(value)) / std::log(static_cast<double>(N));
  double rounded = std::round(e);
  if (std::abs(e - rounded) > 1e-6) return std::nullopt;
  return static_cast<int>(rounded);
}

}  // namespace

std::complex<double> amplitude(int N, int p, const StringConfig& cfg, const VertexPhaseCircuit* circuit) {
  return std::pow(static_cast<double>(N), -1.5) * unit_amplitude(N, p, cfg, circuit);
}

std::vector<PhiReport> phi_brute_batch(int N, int p, int r, const PermTriple& triple,
                                       std::span<const VertexPhaseCircuit> circuits, const EnumerationOptions& opts) {
  auto start = std::chrono::steady_clock::now();
  check_inputs(N, p, r);
  if (triple.r() != r) throw ValidationError("triple acts on a different r");
  for (const auto& c : circuits)
    if (c.N() != N) throw ValidationError("vertex circuit built for a different N");
  const std::uint64_t total = sat_pow(static_cast<std::uint64_t>(N) * N * N, 2 * r);
  if (total > opts.budget)
    throw BudgetExceeded("brute force needs " + std::to_string(total) + " tuples, budget is " +
                         std::to_string(opts.budget) + "; use the analytic route");

  std::vector<const VertexPhaseCircuit*> all;
  for (const auto& c : circuits) all.push_back(&c);
  if (all.empty()) all.push_back(nullptr);
  Enumerator en(N, p, r, triple, all);

  std::vector<Enumerator::Chunk> chunks(en.chunks());
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int c; (c = next.fetch_add(1)) < en.chunks();) chunks[c] = en.run_chunk(c);
  };
  unsigned jobs = std::min<unsigned>(resolve_jobs(opts.jobs), en.chunks());
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  const double scale = std::pow(static_cast<double>(N), 6 * r);
  const bool canonical = triple == PermTriple::canonical(r);
  std::vector<PhiReport> out;
  for (int k = 0; k < en.circuits(); ++k) {
    CompensatedSum total_sum;
    std::uint64_t surviving = 0;
    for (const auto& ch : chunks) {
      total_sum.add(ch.sums[k].value());
      surviving += ch.surviving;
    }
    PhiReport rep;
    rep.value = total_sum.value() / scale;
    rep.route = Route::brute;
    rep.terms_enumerated = total;
    rep.terms_surviving = surviving;
    if (canonical) rep.normalization_exponent = measure_exponent(N, p, r, rep.value);
    out.push_back(rep);
  }
  auto elapsed = std::chrono::steady_clock::now() - start;
  for (auto& rep : out) rep.elapsed = elapsed;
  return out;
}

PhiReport phi_brute(int N, int p, int r, const PermTriple& triple, const VertexPhaseCircuit* circuit,
                    const EnumerationOptions& opts) {
  if (circuit) return phi_brute_batch(N, p, r, triple, std::span(circuit, 1), opts).front();
  return phi_brute_batch(N, p, r, triple, {}, opts).front();
}

RatioReport phi_ratio_brute(int N, int p, int r, const EnumerationOptions& opts) {
  auto triples = ratio_triples(r);
  RatioReport out{};
  const double scale = std::pow(static_cast<double>(N), 6 * r);
  std::complex<double> ratio = 1.0;
  for (int q = 0; q < 8; ++q) out.terms[q] = phi_brute(N, p, r, triples[q], nullptr, opts);
  for (int q = 0; q < 4; ++q) {
    std::complex<double> den = out.terms[q + 4].value * scale;
    if (std::abs(den) < 1e-9)
      throw DivisionByZero("denominator term " + std::to_string(q + 1) + " of the eight-term ratio vanishes");
    ratio *= out.terms[q].value * scale / den;
  }
  out.raw_ratio = ratio;
  out.ratio = ratio.real();
  return out;
}

}  // namespace topospin
