#include "topospin/analytic.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numeric>
#include <thread>

#include "topospin/error.hpp"
#include "topospin/numeric.hpp"
#include "topospin/summation.hpp"
#include "topospin/tetrahedron.hpp"

namespace topospin {

// ---- LadderSpec ----

LadderSpec LadderSpec::uniform(int n) {
  LadderSpec s;
  for (Edge e : kEdges) s.set(e, n);
  return s;
}

void LadderSpec::set(Edge e, int n) {
  if (n < 1) throw ValidationError("ladder lengths must be at least 1");
  lengths_[static_cast<int>(e)] = n;
}

namespace {

// Consumes one region name from the front of `s`.
bool take_region(std::string_view& s, Region& out) {
  for (auto [name, region] : {std::pair<std::string_view, Region>{"Lambda", Region::Lambda},
                              {"\xCE\x9B", Region::Lambda},
                              {"L", Region::Lambda},
                              {"A", Region::A},
                              {"B", Region::B},
                              {"C", Region::C}}) {
    if (s.substr(0, name.size()) == name) {
      s.remove_prefix(name.size());
      out = region;
      return true;
    }
  }
  return false;
}

std::string_view boundary_name(Edge e) {
  switch (e) {
    case Edge::a: return "A\xCE\x9B";
    case Edge::b: return "AB";
    case Edge::c: return "BC";
    case Edge::ab: return "AC";
    case Edge::bc: return "B\xCE\x9B";
    case Edge::abc: return "C\xCE\x9B";
  }
  return "?";
}

}  // namespace

LadderSpec LadderSpec::parse(std::string_view text) {
  LadderSpec spec;
  while (!text.empty()) {
    size_t comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    if (item.empty()) continue;
    size_t eq = item.find('=');
    if (eq == std::string_view::npos) throw ValidationError("ladder entry '" + std::string(item) + "' needs '='");
    std::string_view key = item.substr(0, eq);
    Region x, y;
    if (!take_region(key, x) || !take_region(key, y) || !key.empty() || x == y)
      throw ValidationError("unknown ladder boundary '" + std::string(item.substr(0, eq)) + "'");
    bool found = false;
    for (Edge e : kEdges) {
      auto [I, J] = regions_of(e);
      if ((I == x && J == y) || (I == y && J == x)) {
        int n = 0;
        try {
          n = std::stoi(std::string(item.substr(eq + 1)));
        } catch (const std::exception&) {
          throw ValidationError("ladder length in '" + std::string(item) + "' is not an integer");
        }
        spec.set(e, n);
        found = true;
      }
    }
    if (!found) throw ValidationError("regions in '" + std::string(item) + "' share no boundary");
  }
  return spec;
}

std::string LadderSpec::to_string() const {
  std::string out;
  for (Edge e : kEdges) {
    if (!out.empty()) out += ',';
    out += std::string(boundary_name(e)) + "=" + std::to_string(length(e));
  }
  return out;
}

// ---- ladder factor ----

double theta_ladder(const FusionCategory& cat, std::span<const int> cycle_lengths, Label q0, int n) {
  if (n < 1) throw ValidationError("theta_ladder: n must be at least 1");
  double out = 1;
  const double base = cat.total_dim_sq() / cat.dim(q0);
  for (int R : cycle_lengths) out *= std::pow(s_factor(cat, R), n) * std::pow(base, R - 1);
  return out;
}

// ---- orbit-labeling sum ----

namespace {

// Sum over bra labelings constant on every edge orbit:
//   prod_rho conj(G(bra_rho)) G(ket_rho) prod_orbits d_q^{1 - R_c},
// where ket^X_u = bra^X_{pi_X^{-1}(u)}. The ket side is admissible whenever
// the bra side is, so only bra vertices are checked.
class OrbitLabelingSum {
 public:
  OrbitLabelingSum(const FusionCategory& cat, const PermTriple& triple) : cat_(cat), R_(2 * triple.r()) {
    const int L = cat.rank();
    std::array<std::vector<int>, 6> slot_of;
    for (Edge e : {Edge::a, Edge::b, Edge::ab, Edge::c, Edge::bc, Edge::abc}) {
      int ei = static_cast<int>(e);
      slot_of[ei].assign(R_, -1);
      for (const auto& orbit : edge_orbits(triple, e).orbits) {
        for (int rho : orbit) slot_of[ei][rho] = static_cast<int>(slots_.size());
        slots_.push_back({ei, orbit, {}});
        orbit_sizes_[ei].push_back(static_cast<int>(orbit.size()));
      }
    }
    const int S = static_cast<int>(slots_.size());
    for (auto& s : slots_) {
      s.weight.resize(L);
      for (int q = 0; q < L; ++q) s.weight[q] = std::pow(cat.dim(q), 1 - static_cast<int>(s.replicas.size()));
    }

    levels_.resize(S);
    // Bra vertices, in the (i,j,m),(m,k,l),(j,k,n),(i,n,l) orientation.
    static constexpr int kVertexEdges[4][3] = {{0, 1, 3}, {3, 2, 5}, {1, 2, 4}, {0, 4, 5}};
    for (int rho = 0; rho < R_; ++rho) {
      for (const auto& v : kVertexEdges) {
        int lvl = std::max({slot_of[v[0]][rho], slot_of[v[1]][rho], slot_of[v[2]][rho]});
        levels_[lvl].vertex_checks.push_back(
            {slot_of[v[0]][rho], slot_of[v[1]][rho], slot_of[v[2]][rho]});
      }
      std::array<int, 6> src;
      for (int e = 0; e < 6; ++e) src[e] = slot_of[e][rho];
      levels_[*std::max_element(src.begin(), src.end())].bras.push_back(src);
    }
    std::array<ReplicaPermutation, 6> inv_route = {
        triple.on(regions_of(Edge::a).first).inverse(),  triple.on(regions_of(Edge::b).first).inverse(),
        triple.on(regions_of(Edge::c).first).inverse(),  triple.on(regions_of(Edge::ab).first).inverse(),
        triple.on(regions_of(Edge::bc).first).inverse(), triple.on(regions_of(Edge::abc).first).inverse()};
    for (int u = 0; u < R_; ++u) {
      std::array<int, 6> src;
      for (int e = 0; e < 6; ++e) src[e] = slot_of[e][inv_route[e](u)];
      levels_[*std::max_element(src.begin(), src.end())].kets.push_back(src);
    }
    label_space_ = sat_pow(static_cast<std::uint64_t>(L), S);
  }

  struct Result {
    std::complex<double> sum;
    std::uint64_t leaves = 0;
    std::uint64_t nodes = 0;
  };

  Result run(const EnumerationOptions& opts) const {
    const int L = cat_.rank();
    std::vector<CompensatedSum> sums(L);
    std::vector<std::uint64_t> leaves(L, 0);
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<int> next{0};
    std::atomic<bool> over_budget{false};
    auto worker = [&] {
      std::vector<int> labels(slots_.size(), 0);
      for (int q; (q = next.fetch_add(1)) < L;) {
        Walk w{labels, sums[q], leaves[q], nodes, over_budget, opts.budget};
        visit(0, q, 1.0, w);
      }
    };
    unsigned jobs = std::min<unsigned>(resolve_jobs(opts.jobs), L);
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (over_budget)
      throw BudgetExceeded("orbit-labeling search exceeded " + std::to_string(opts.budget) +
                           " nodes (label space " + std::to_string(label_space_) + ")");
    Result out;
    CompensatedSum total;
    for (int q = 0; q < L; ++q) {
      total.add(sums[q].value());
      out.leaves += leaves[q];
    }
    out.sum = total.value();
    out.nodes = nodes;
    return out;
  }

  std::uint64_t label_space() const { return label_space_; }
  const std::array<std::vector<int>, 6>& orbit_sizes() const { return orbit_sizes_; }

 private:
  struct Slot {
    int edge;
    std::vector<int> replicas;
    std::vector<double> weight;
  };
  struct Level {
    std::vector<std::array<int, 3>> vertex_checks;
    std::vector<std::array<int, 6>> bras, kets;
  };
  struct Walk {
    std::vector<int>& labels;
    CompensatedSum& sum;
    std::uint64_t& leaves;
    std::atomic<std::uint64_t>& nodes;
    std::atomic<bool>& over_budget;
    std::uint64_t budget;
  };

  std::complex<double> g_of(const std::vector<int>& labels, const std::array<int, 6>& src) const {
    // src is indexed by Edge: a, b, c, ab, bc, abc -> (i, j, m, k, l, n) = (a, b, ab, c, abc, bc)
    return g_symbol(cat_, labels[src[0]], labels[src[1]], labels[src[3]], labels[src[2]], labels[src[5]],
                    labels[src[4]]);
  }

  void visit(int level, int q, std::complex<double> acc, Walk& w) const {
    if (w.over_budget.load(std::memory_order_relaxed)) return;
    if (w.nodes.fetch_add(1, std::memory_order_relaxed) >= w.budget) {
      w.over_budget = true;
      return;
    }
    w.labels[level] = q;
    const Level& lv = levels_[level];
    for (const auto& v : lv.vertex_checks)
      if (!cat_.fusion(w.labels[v[0]], w.labels[v[1]], w.labels[v[2]])) return;
    acc *= slots_[level].weight[q];
    for (const auto& src : lv.bras) acc *= std::conj(g_of(w.labels, src));
    for (const auto& src : lv.kets) acc *= g_of(w.labels, src);
    if (acc == 0.0) return;
    if (level + 1 == static_cast<int>(slots_.size())) {
      w.sum.add(acc);
      ++w.leaves;
      return;
    }
    for (int next = 0; next < cat_.rank(); ++next) visit(level + 1, next, acc, w);
  }

  const FusionCategory& cat_;
  int R_;
  std::vector<Slot> slots_;
  std::vector<Level> levels_;
  std::array<std::vector<int>, 6> orbit_sizes_;
  std::uint64_t label_space_ = 0;
};

void check_zn(int N, int p, int r) {
  if (N < 2) throw ValidationError("N must be at least 2");
  if (p < 0 || p >= N) throw ValidationError("p must lie in 0..N-1");
  if (r < 1) throw ValidationError("r must be at least 1");
}

}  // namespace

StringNetReport phi_stringnet(const FusionCategory& cat, int r, const PermTriple& triple, const LadderSpec& ladders,
                              const EnumerationOptions& opts) {
  auto start = std::chrono::steady_clock::now();
  if (r < 1) throw ValidationError("r must be at least 1");
  if (triple.r() != r) throw ValidationError("triple acts on a different r");
  OrbitLabelingSum engine(cat, triple);
  auto res = engine.run(opts);

  const double D2 = cat.total_dim_sq();
  double area = 1, log_dim = 0;
  for (Edge e : kEdges)
    for (int R : engine.orbit_sizes()[static_cast<int>(e)]) {
      area *= std::pow(s_factor(cat, R), ladders.length(e));
      log_dim += (R - 1) * std::log(D2);
    }
  log_dim -= 6.0 * r * std::log(D2);

  StringNetReport out;
  out.labeling_sum = res.sum;
  out.phi = res.sum / (D2 * D2 * D2);
  out.area_factor = area;
  out.prefactor = area * std::exp(log_dim + 3.0 * std::log(D2));
  out.raw.value = res.sum * area * std::exp(log_dim);
  out.raw.route = Route::analytic_stringnet;
  out.raw.terms_enumerated = engine.label_space();
  out.raw.terms_surviving = res.leaves;
  out.dfs_nodes = res.nodes;
  out.raw.elapsed = std::chrono::steady_clock::now() - start;
  return out;
}

PhiReport phi_zn_constrained(int N, int p, int r, const PermTriple& triple, const EnumerationOptions& opts) {
  auto start = std::chrono::steady_clock::now();
  check_zn(N, p, r);
  if (triple.r() != r) throw ValidationError("triple acts on a different r");
  if (!(triple == PermTriple::canonical(r))) {
    auto sn = phi_stringnet(zn_strings(N, p), r, triple, LadderSpec::unit(), opts);
    PhiReport out = sn.raw;
    out.route = Route::analytic_zn;
    out.normalization_exponent = pinned_zn_exponent(r);
    out.elapsed = std::chrono::steady_clock::now() - start;
    return out;
  }

  // Surviving labelings of the canonical triple, with dt = (N/g) delta:
  //   bra(1,t) = (A, B + t dt, C)     bra(2,t) = (A + dt, B + (t+1) dt, C - dt)
  //   ket(1,t) = (A, B + (t+1) dt, C - dt)   ket(2,t) = (A + dt, B + t dt, C)
  const int g = std::gcd(N, r);
  auto w = [N](int a, int b, int c) {
    a = static_cast<int>(mod(a, N)), b = static_cast<int>(mod(b, N)), c = static_cast<int>(mod(c, N));
    return cocycle_exponent({a, b, c}, N);
  };
  CompensatedSum sum;
  for (int A = 0; A < N; ++A)
    for (int B = 0; B < N; ++B)
      for (int C = 0; C < N; ++C)
        for (int delta = 0; delta < g; ++delta) {
          const int dt = (N / g) * delta;
          long long exponent = 0;
          for (int t = 0; t < r; ++t) {
            const int Bt = B + t * dt, Bt1 = B + (t + 1) * dt;
            exponent += w(A, Bt1, C - dt) + w(A + dt, Bt, C);
            exponent -= w(A, Bt, C) + w(A + dt, Bt1, C - dt);
          }
          sum.add(unit_root(static_cast<long long>(p) * exponent, N));
        }
  PhiReport out;
  out.value = sum.value() / std::pow(static_cast<double>(N), 6 * r);
  out.route = Route::analytic_zn;
  out.terms_enumerated = static_cast<std::uint64_t>(N) * N * N * g;
  out.terms_surviving = out.terms_enumerated;
  out.normalization_exponent = pinned_zn_exponent(r);
  out.elapsed = std::chrono::steady_clock::now() - start;
  return out;
}

AnalyticRatioReport extract_phi_ratio(const FusionCategory& cat, int r, const LadderSpec& ladders,
                                      const EnumerationOptions& opts) {
  auto triples = ratio_triples(r);
  AnalyticRatioReport out{};
  for (int q = 0; q < 8; ++q) out.terms[q] = phi_stringnet(cat, r, triples[q], ladders, opts);
  std::complex<double> ratio = 1.0;
  for (int q = 0; q < 4; ++q) {
    const auto& den = out.terms[q + 4];
    if (std::abs(den.labeling_sum) < 1e-9)
      throw DivisionByZero("denominator term " + std::to_string(q + 1) + " of the eight-term ratio vanishes");
    ratio *= out.terms[q].raw.value / den.raw.value;
  }
  out.raw_ratio = ratio;
  out.ratio = ratio.real();
  return out;
}

AnalyticRatioReport extract_phi_ratio(const TwistedZnTheory& theory, int r, const LadderSpec& ladders,
                                      const EnumerationOptions& opts) {
  return extract_phi_ratio(zn_strings(theory.N(), theory.p()), r, ladders, opts);
}

}  // namespace topospin
