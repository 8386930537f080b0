#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "topospin/analytic.hpp"
#include "topospin/brute.hpp"
#include "topospin/cli.hpp"
#include "topospin/error.hpp"
#include "topospin/modular.hpp"

namespace topospin::cli {

using nlohmann::json;

namespace {

using Sink = std::vector<Assertion>;

void expect_close(Sink& out, const std::string& name, std::complex<double> lhs, std::complex<double> rhs, double tol,
                  double scale = 0) {
  out.push_back({name, close_rel(lhs, rhs, tol, scale), to_json(lhs), to_json(rhs), tol});
}

std::string tag(int N, int p, int r) {
  return "N=" + std::to_string(N) + ",p=" + std::to_string(p) + ",r=" + std::to_string(r);
}

void abelian_cross(Sink& out, const EnumerationOptions& opts) {
  for (int N : {2, 3})
    for (int p = 0; p < N; ++p)
      for (int r : {2, 3}) {
        auto triple = PermTriple::canonical(r);
        const double scale = std::pow(static_cast<double>(N), -pinned_zn_exponent(r));
        auto brute = phi_brute(N, p, r, triple, nullptr, opts);
        auto analytic = phi_zn_constrained(N, p, r, triple, opts);
        auto phi = phi_invariant(modular_data(TwistedZnTheory::create(N, p)), r);
        expect_close(out, "brute = analytic (" + tag(N, p, r) + ")", brute.value, analytic.value, 1e-12, scale);
        expect_close(out, "brute = Phi N^-(6r-3) (" + tag(N, p, r) + ")", brute.value, phi * scale, 1e-12, scale);
        expect_close(out, "closed form = modular (" + tag(N, p, r) + ")", phi_closed_form_zn(N, p, r), phi, 1e-12, 1);
      }
}

void nonabelian(Sink& out, const EnumerationOptions& opts) {
  struct Case {
    const char* name;
    FusionCategory cat;
    int r_max;
  };
  for (const auto& c : {Case{"fibonacci", fibonacci(), 6}, Case{"ising", ising(), 3}}) {
    auto md = modular_data_doubled(c.cat);
    for (int r = 2; r <= c.r_max; ++r) {
      auto sn = phi_stringnet(c.cat, r, PermTriple::canonical(r), LadderSpec::unit(), opts);
      expect_close(out, std::string(c.name) + " string-net Phi = modular (r=" + std::to_string(r) + ")", sn.phi,
                   phi_invariant(md, r), 1e-10, 1);
    }
  }
}

void gauss(Sink& out) {
  for (int N : {3, 5, 7})
    for (int p = 1; p < N; ++p) {
      double mag = std::abs(phi_invariant(modular_data(TwistedZnTheory::create(N, p)), N));
      out.push_back({"|Phi(N)| = sqrt(N) (" + tag(N, p, N) + ")", std::abs(mag - std::sqrt(N)) <= 1e-12, mag,
                     std::sqrt(N), 1e-12});
    }
  // N = 2 is the even prime: 1 + e^{i pi p} vanishes for p = 1.
  double semion = std::abs(phi_invariant(modular_data(TwistedZnTheory::create(2, 1)), 2));
  out.push_back({"Phi(2) = 0 (" + tag(2, 1, 2) + ")", semion <= 1e-12, semion, 0.0, 1e-12});
  for (int N = 2; N <= 12; ++N)
    for (int p = 0; p < N; ++p)
      for (int k = 1; k < N; ++k) {
        if (std::gcd(k, N) != 1) continue;
        const int q = p * k * k % N;
        if (q == p) continue;
        for (int r = 1; r <= 12; ++r) {
          auto a = phi_invariant(modular_data(TwistedZnTheory::create(N, p)), r);
          auto b = phi_invariant(modular_data(TwistedZnTheory::create(N, q)), r);
          if (std::abs(a - b) > 1e-12)
            out.push_back({"relabeling p -> p k^2 (" + tag(N, p, r) + ",k=" + std::to_string(k) + ")", false,
                           to_json(a), to_json(b), 1e-12});
        }
      }
  out.push_back({"relabeling p -> p k^2 (all N <= 12, r <= 12)", true, nullptr, nullptr, 1e-12});
}

void invariance(Sink& out, const EnumerationOptions& opts) {
  for (int N : {2, 3})
    for (int r : {2, 3}) {
      const int p = 1;
      auto triple = PermTriple::canonical(r);
      std::vector<VertexPhaseCircuit> circuits;
      for (std::uint64_t seed = 1; seed <= 10; ++seed) circuits.push_back(random_vertex_circuit(N, seed));
      auto plain = phi_brute(N, p, r, triple, nullptr, opts);
      auto with = phi_brute_batch(N, p, r, triple, circuits, opts);
      const double scale = std::pow(static_cast<double>(N), -pinned_zn_exponent(r));
      bool ok = true;
      for (const auto& rep : with) ok = ok && close_rel(rep.value, plain.value, 1e-12, scale);
      out.push_back({"vertex circuits leave phi unchanged (" + tag(N, p, r) + ", 10 seeds)", ok, to_json(plain.value),
                     to_json(plain.value), 1e-12});

      // (alpha^-1, gamma, beta) relabels the replicas of (alpha, beta, gamma); the
      // mirror image of the state (p -> N - p) then carries the conjugate value.
      auto c = canonical_perms(r);
      auto swapped = PermTriple::make(c.alpha.inverse(), c.gamma, c.beta);
      auto same = phi_brute(N, p, r, swapped, nullptr, opts);
      expect_close(out, "swapped triple leaves phi unchanged (" + tag(N, p, r) + ")", same.value, plain.value, 1e-12,
                   scale);
      auto mirrored = phi_brute(N, N - p, r, swapped, nullptr, opts);
      expect_close(out, "mirrored state conjugates phi (" + tag(N, p, r) + ")", mirrored.value, std::conj(plain.value),
                   1e-12, scale);
    }
  std::mt19937_64 rng(7);
  const int N = 3, p = 1, r = 2;
  auto base = phi_brute(N, p, r, PermTriple::canonical(r), nullptr, opts);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<int> image(2 * r);
    std::iota(image.begin(), image.end(), 0);
    std::shuffle(image.begin(), image.end(), rng);
    auto sigma = ReplicaPermutation::from_map(r, image);
    auto rep = phi_brute(N, p, r, conjugate_triple(PermTriple::canonical(r), sigma), nullptr, opts);
    expect_close(out, "conjugation invariance (trial " + std::to_string(trial) + ")", rep.value, base.value, 1e-12,
                 std::pow(3.0, -pinned_zn_exponent(r)));
  }
  for (const auto& [name, cat] : {std::pair{"zn:2:1", zn_strings(2, 1)}, {"zn:3:1", zn_strings(3, 1)},
                                  {"fibonacci", fibonacci()}}) {
    const int rr = 2;
    std::optional<double> first;
    for (int n = 1; n <= 6; ++n) {
      double ratio = extract_phi_ratio(cat, rr, LadderSpec::uniform(n), opts).ratio;
      if (!first) first = ratio;
      out.push_back({std::string(name) + " ratio independent of ladders (n=" + std::to_string(n) + ")",
                     std::abs(ratio - *first) <= 1e-10 * std::max(1.0, *first), ratio, *first, 1e-10});
    }
  }
}

void structural(Sink& out, const EnumerationOptions& opts) {
  std::vector<std::pair<std::string, FusionCategory>> cats = {{"fibonacci", fibonacci()}, {"ising", ising()}};
  for (int N = 2; N <= 6; ++N)
    for (int p = 0; p < N; ++p) cats.emplace_back("zn_strings(" + std::to_string(N) + "," + std::to_string(p) + ")", zn_strings(N, p));
  for (const auto& [name, cat] : cats) {
    double res = check_pentagon(cat);
    out.push_back({"pentagon " + name, res < 1e-12, res, 0.0, 1e-12});
  }
  std::vector<std::pair<std::string, ModularData>> theories = {{"doubled fibonacci", modular_data_doubled(fibonacci())},
                                                               {"doubled ising", modular_data_doubled(ising())}};
  for (int N = 2; N <= 6; ++N)
    for (int p = 0; p < N; ++p)
      theories.emplace_back("zn:" + std::to_string(N) + ":" + std::to_string(p),
                            modular_data(TwistedZnTheory::create(N, p)));
  for (const auto& [name, md] : theories) {
    bool ok = true;
    for (int r = 1; r <= 8; ++r)
      ok = ok && close_rel(lens_partition(md, r).z * md.total_dim(), phi_invariant(md, r), 1e-12, 1);
    out.push_back({"lens * D = Phi, r <= 8 (" + name + ")", ok, ok, true, 1e-12});
  }
  for (int N : {2, 3})
    for (int p = 0; p < N; ++p) {
      auto id = ReplicaPermutation::identity(2);
      auto rep = phi_brute(N, p, 2, PermTriple::make(id, id, id), nullptr, opts);
      out.push_back({"identity triple gives 1 (" + tag(N, p, 2) + ")", rep.value == std::complex<double>(1.0, 0.0),
                     to_json(rep.value), to_json(1.0), 0});
    }
}

void ratio(Sink& out, const EnumerationOptions& opts) {
  struct Case {
    int N, p, r;
    double want;
  };
  for (const auto& c : {Case{2, 0, 2, 1.0}, Case{2, 1, 2, 0.0}, Case{3, 1, 3, 1.0 / 9.0}}) {
    double got = phi_ratio_brute(c.N, c.p, c.r, opts).ratio;
    out.push_back({"eight-term ratio (" + tag(c.N, c.p, c.r) + ")", std::abs(got - c.want) <= 1e-12, got, c.want, 1e-12});
  }
}

}  // namespace

json run_suite(const std::string& suite, const EnumerationOptions& opts, std::vector<Assertion>& out) {
  static const std::vector<std::string> kSuites = {"abelian-cross", "nonabelian", "gauss", "invariance", "structural",
                                                   "ratio"};
  std::vector<std::string> chosen;
  if (suite == "all")
    chosen = kSuites;
  else if (std::find(kSuites.begin(), kSuites.end(), suite) != kSuites.end())
    chosen = {suite};
  else
    throw ValidationError("unknown suite '" + suite + "' (all | abelian-cross | nonabelian | gauss | invariance | structural | ratio)");
  json summary = json::object();
  for (const auto& s : chosen) {
    size_t before = out.size();
    if (s == "abelian-cross") abelian_cross(out, opts);
    if (s == "nonabelian") nonabelian(out, opts);
    if (s == "gauss") gauss(out);
    if (s == "invariance") invariance(out, opts);
    if (s == "structural") structural(out, opts);
    if (s == "ratio") ratio(out, opts);
    int passed = 0;
    for (size_t q = before; q < out.size(); ++q) passed += out[q].pass;
    summary[s] = {{"checks", out.size() - before}, {"passed", passed}};
  }
  return summary;
}

}  // namespace topospin::cli
