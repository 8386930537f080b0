#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "topospin/brute.hpp"
#include "topospin/error.hpp"
#include "topospin/modular.hpp"

using namespace topospin;

namespace {

const double pi = std::numbers::pi;

struct Labels {
  int a, b, c, ab, bc, abc;
};

// Every ket tuple is visited; no pruning, no pair table.
cplx naive_expectation(int N, int p, const PermTriple& triple, const VertexPhaseCircuit* circuit = nullptr) {
  const int r = triple.r(), R = 2 * r;
  auto wave = [&](int a, int b, int c) {
    double ph = 2 * pi * p * a * ((b + c) >= N ? 1 : 0) / N;
    if (circuit) {
      ph += circuit->phase(Vertex::alpha, a, b) + circuit->phase(Vertex::beta, c, (a + b) % N) +
            circuit->phase(Vertex::gamma, b, c) + circuit->phase(Vertex::delta, a, (b + c) % N);
    }
    return std::polar(std::pow(N, -1.5), ph);
  };
  auto img = [&](Region x) { return triple.on(x).image(); };
  const std::array<std::vector<int>, 4> pi_of = {img(Region::A), img(Region::B), img(Region::C), img(Region::Lambda)};
  auto side = [](Region x) { return static_cast<int>(x); };

  std::vector<Labels> kets(R);
  std::vector<int> digits(3 * R, 0);
  cplx sum = 0;
  while (true) {
    for (int q = 0; q < R; ++q) {
      int a = digits[3 * q], b = digits[3 * q + 1], c = digits[3 * q + 2];
      kets[q] = {a, b, c, (a + b) % N, (b + c) % N, (a + b + c) % N};
    }
    bool ok = true;
    cplx term = 1;
    for (int q = 0; q < R && ok; ++q) {
      auto label = [&](int Labels::*field, Region I, Region J) {
        int u = kets[pi_of[side(I)][q]].*field, v = kets[pi_of[side(J)][q]].*field;
        if (u != v) ok = false;
        return u;
      };
      Labels bra{label(&Labels::a, Region::A, Region::Lambda), label(&Labels::b, Region::A, Region::B),
                 label(&Labels::c, Region::B, Region::C),      label(&Labels::ab, Region::A, Region::C),
                 label(&Labels::bc, Region::B, Region::Lambda), label(&Labels::abc, Region::C, Region::Lambda)};
      if (!ok) break;
      if (bra.ab != (bra.a + bra.b) % N || bra.bc != (bra.b + bra.c) % N || bra.abc != (bra.a + bra.b + bra.c) % N) {
        ok = false;
        break;
      }
      term *= wave(kets[q].a, kets[q].b, kets[q].c) * std::conj(wave(bra.a, bra.b, bra.c));
    }
    if (ok) sum += term;
    int pos = 0;
    while (pos < 3 * R && ++digits[pos] == N) digits[pos++] = 0;
    if (pos == 3 * R) break;
  }
  return sum;
}

ReplicaPermutation random_perm(int r, std::mt19937_64& rng) {
  std::vector<int> image(2 * r);
  std::iota(image.begin(), image.end(), 0);
  std::shuffle(image.begin(), image.end(), rng);
  return ReplicaPermutation::from_map(r, image);
}

bool near(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("small examples") {
  auto tc = phi_brute(2, 0, 2, PermTriple::canonical(2));
  CHECK(near(tc.value, std::pow(2.0, -8), 1e-15));
  CHECK(tc.terms_enumerated == 4096);
  CHECK(tc.terms_surviving == 16);
  REQUIRE(tc.normalization_exponent.has_value());
  CHECK(*tc.normalization_exponent == 9);
  CHECK(tc.route == Route::brute);

  CHECK(near(phi_brute(2, 1, 2, PermTriple::canonical(2)).value, 0, 1e-15));

  auto z3 = phi_brute(3, 1, 3, PermTriple::canonical(3));
  CHECK(near(z3.value * std::pow(3.0, 15), cplx(0, std::sqrt(3.0)), 1e-11));
  CHECK(*z3.normalization_exponent == 15);
}

TEST_CASE("identity triple") {
  auto id = ReplicaPermutation::identity(2);
  for (int p = 0; p < 3; ++p) CHECK(phi_brute(3, p, 2, PermTriple::make(id, id, id)).value == cplx(1, 0));
}

TEST_CASE("agrees with a naive enumerator on all eight ratio triples") {
  for (int p = 0; p < 2; ++p)
    for (const auto& t : ratio_triples(2)) {
      auto want = naive_expectation(2, p, t);
      CHECK(near(phi_brute(2, p, 2, t).value, want, 1e-14));
    }
  for (const auto& t : ratio_triples(2)) {
    auto want = naive_expectation(3, 1, t);
    CHECK(near(phi_brute(3, 1, 2, t).value, want, 1e-14));
  }
}

TEST_CASE("agrees with a naive enumerator under random conjugation") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 12; ++trial) {
    auto sigma = random_perm(2, rng);
    auto t = conjugate_triple(ratio_triples(2)[trial % 8], sigma);
    const int p = trial % 2;
    CHECK(near(phi_brute(2, p, 2, t).value, naive_expectation(2, p, t), 1e-14));
  }
}

TEST_CASE("agrees with a naive enumerator with a vertex circuit") {
  auto circuit = random_vertex_circuit(2, 5);
  for (const auto& t : ratio_triples(2))
    CHECK(near(phi_brute(2, 1, 2, t, &circuit).value, naive_expectation(2, 1, t, &circuit), 1e-14));
}

TEST_CASE("vertex circuits") {
  auto a = random_vertex_circuit(4, 11), b = random_vertex_circuit(4, 11), c = random_vertex_circuit(4, 12);
  bool same = true, differ = false;
  for (Vertex v : kVertices)
    for (int x = 0; x < 4; ++x)
      for (int y = 0; y < 4; ++y) {
        same = same && a.phase(v, x, y) == b.phase(v, x, y);
        differ = differ || a.phase(v, x, y) != c.phase(v, x, y);
        CHECK(a.phase(v, x, y) >= 0);
        CHECK(a.phase(v, x, y) < 2 * pi);
      }
  CHECK(same);
  CHECK(differ);
  CHECK(a.seed() == 11);

  auto big = random_vertex_circuit(16, 3);
  double mean = 0;
  for (Vertex v : kVertices)
    for (int x = 0; x < 16; ++x)
      for (int y = 0; y < 16; ++y) mean += big.phase(v, x, y);
  mean /= 4 * 256;
  CHECK(mean == doctest::Approx(pi).epsilon(0.1));

  VertexPhaseCircuit zero(3);
  CHECK(zero.total_phase({1, 2, 0}) == 0.0);
  zero.phase(Vertex::gamma, 2, 0) = 0.5;
  CHECK(zero.total_phase({1, 2, 0}) == 0.5);
  CHECK(zero.total_phase({0, 2, 1}) == 0.0);
}

TEST_CASE("amplitude") {
  CHECK(near(amplitude(2, 1, {1, 1, 1}), -std::pow(2.0, -1.5), 1e-15));
  CHECK(near(amplitude(3, 1, {2, 1, 2}), std::polar(std::pow(3.0, -1.5), 4 * pi / 3), 1e-15));
  VertexPhaseCircuit c(2);
  c.phase(Vertex::delta, 1, 0) = 0.25;  // a = 1, b + c = 0
  CHECK(near(amplitude(2, 0, {1, 1, 1}, &c), std::polar(std::pow(2.0, -1.5), 0.25), 1e-15));
}

TEST_CASE("circuit batch matches single runs") {
  std::vector<VertexPhaseCircuit> circuits;
  for (std::uint64_t s = 1; s <= 4; ++s) circuits.push_back(random_vertex_circuit(3, s));
  auto t = PermTriple::canonical(2);
  auto batch = phi_brute_batch(3, 1, 2, t, circuits);
  REQUIRE(batch.size() == 4);
  auto plain = phi_brute(3, 1, 2, t).value;
  for (size_t q = 0; q < circuits.size(); ++q) {
    CHECK(batch[q].value == phi_brute(3, 1, 2, t, &circuits[q]).value);
    CHECK(near(batch[q].value, plain, 1e-12 * std::pow(3.0, -9)));
  }
}

TEST_CASE("thread count does not change the bits") {
  auto t = PermTriple::canonical(2);
  auto one = phi_brute(3, 2, 2, t, nullptr, {.jobs = 1});
  auto four = phi_brute(3, 2, 2, t, nullptr, {.jobs = 4});
  CHECK(one.value == four.value);
  CHECK(one.terms_surviving == four.terms_surviving);
}

TEST_CASE("budget") {
  CHECK_THROWS_AS(phi_brute(2, 0, 2, PermTriple::canonical(2), nullptr, {.budget = 4095}), BudgetExceeded);
  CHECK_NOTHROW(phi_brute(2, 0, 2, PermTriple::canonical(2), nullptr, {.budget = 4096}));
  CHECK_THROWS_AS(phi_brute(5, 1, 3, PermTriple::canonical(3)), BudgetExceeded);
}

TEST_CASE("eight-term ratio") {
  auto r202 = phi_ratio_brute(2, 0, 2);
  CHECK(r202.ratio == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(phi_ratio_brute(2, 1, 2).ratio) < 1e-12);
  CHECK(phi_ratio_brute(3, 1, 3).ratio == doctest::Approx(1.0 / 9).epsilon(1e-12));
  // |Phi(r)|^2 / N^r
  for (int p = 0; p < 3; ++p) {
    double want = std::norm(phi_closed_form_zn(3, p, 2)) / 9;
    CHECK(phi_ratio_brute(3, p, 2).ratio == doctest::Approx(want).epsilon(1e-12));
  }
}
