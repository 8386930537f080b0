#include <doctest.h>

#include <array>
#include <map>
#include <vector>

#include "topospin/error.hpp"
#include "topospin/optimality.hpp"

using namespace topospin;

namespace {

std::vector<StringConfig> all_configs(int N) {
  std::vector<StringConfig> out;
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int c = 0; c < N; ++c) out.push_back({a, b, c});
  return out;
}

// Histograms of the four vertex pairs, keyed independently of the library.
using Histograms = std::array<std::map<std::pair<int, int>, int>, 4>;

Histograms histograms(int N, const std::vector<StringConfig>& cfgs) {
  Histograms h;
  for (const auto& s : cfgs) {
    ++h[0][{s.a, s.b}];
    ++h[1][{s.c, (s.a + s.b) % N}];
    ++h[2][{s.b, s.c}];
    ++h[3][{s.a, (s.b + s.c) % N}];
  }
  return h;
}

int phase(int N, const std::vector<StringConfig>& cfgs) {
  int s = 0;
  for (const auto& c : cfgs) s += c.a * (c.b + c.c >= N ? 1 : 0);
  return s;
}

// Every multiset of size k, as a sorted vector of indices into all_configs.
void multisets(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    multisets(n, k, i, cur, out);
    cur.pop_back();
  }
}

// True when some pair of size-k multisets balances all four vertices with a
// nonzero phase. Kets and bras are compared through their full histograms.
bool naive_witness_exists(int N, int k) {
  auto cfgs = all_configs(N);
  std::vector<std::vector<int>> sets;
  std::vector<int> cur;
  multisets(static_cast<int>(cfgs.size()), k, 0, cur, sets);
  std::map<Histograms, std::vector<int>> phases_by_hist;
  for (const auto& s : sets) {
    std::vector<StringConfig> v;
    for (int i : s) v.push_back(cfgs[i]);
    auto& ph = phases_by_hist[histograms(N, v)];
    int p = phase(N, v) % N;
    for (int q : ph)
      if (q != p) return true;
    ph.push_back(p);
  }
  return false;
}

std::vector<StringConfig> expand(const ConfigMultiset& m) {
  std::vector<StringConfig> out;
  for (const auto& [cfg, count] : m.entries())
    for (int i = 0; i < count; ++i) out.push_back(cfg);
  return out;
}

}  // namespace

TEST_CASE("vertex projections") {
  const int N = 5;
  auto v = vertex_projections(N);
  for (const auto& cfg : all_configs(N)) {
    for (int s = 0; s < N; ++s) {
      CHECK(v[3](cfg) == v[3]({cfg.a, (cfg.b + s) % N, (cfg.c - s + N) % N}));
      CHECK(v[2](cfg) == v[2]({(cfg.a + s) % N, cfg.b, cfg.c}));
    }
    CHECK(v[0](cfg) == std::pair{cfg.a, cfg.b});
    CHECK(v[1](cfg) == std::pair{cfg.c, (cfg.a + cfg.b) % N});
  }
  // the four pairs jointly determine the configuration
  auto cfgs = all_configs(3);
  auto w = vertex_projections(3);
  for (const auto& x : cfgs)
    for (const auto& y : cfgs) {
      bool all = true;
      for (const auto& f : w) all = all && f(x) == f(y);
      CHECK(all == (x == y));
    }
}

TEST_CASE("phase sums") {
  CHECK(phase_sum(3, WitnessPair{}) == 0);
  auto w = canonical_witness(2, {1, 1, 1}, 1);
  CHECK(w.kets.size() == 4);
  CHECK(phase_sum(2, w) == 1);
  CHECK(w.phase_sum == 1);
  WitnessPair same{w.kets, w.kets, 0};
  CHECK(phase_sum(2, same) == 0);
  CHECK_FALSE(verify_witness(2, 1, same));
}

TEST_CASE("verification") {
  auto w = canonical_witness(2, {1, 1, 1}, 1);
  CHECK(verify_witness(2, 1, w));
  CHECK_FALSE(verify_witness(2, 0, w));
  auto broken = w;
  broken.kets.remove(*expand(w.kets).begin());
  CHECK_FALSE(verify_witness(2, 1, broken));
}

TEST_CASE("canonical family") {
  for (int N : {2, 3, 5}) {
    for (const auto& base : all_configs(N))
      for (int q = 1; q < N; ++q) {
        CAPTURE(N);
        CAPTURE(q);
        auto w = canonical_witness(N, base, q);
        CHECK(w.kets.size() == 2 * N);
        CHECK(histograms(N, expand(w.kets)) == histograms(N, expand(w.bras)));
        CHECK((phase(N, expand(w.kets)) - phase(N, expand(w.bras)) - w.phase_sum) % N == 0);
        for (int p = 1; p < N; ++p) CHECK(verify_witness(N, p, w));
      }
  }
}

TEST_CASE("naive exhaustion finds no smaller witness") {
  for (int k = 1; k <= 3; ++k) CHECK_FALSE(naive_witness_exists(2, k));
  CHECK(naive_witness_exists(2, 4));
  for (int k = 1; k <= 5; ++k) CHECK_FALSE(naive_witness_exists(3, k));
  CHECK(naive_witness_exists(3, 6));
}

TEST_CASE("minimal replica search") {
  auto n2 = min_replica_search(2, 4);
  REQUIRE(n2.k_min.has_value());
  CHECK(*n2.k_min == 4);
  REQUIRE(n2.levels.size() == 4);
  for (int k = 0; k < 3; ++k) CHECK_FALSE(n2.levels[k].found);
  CHECK(verify_witness(2, 1, *n2.witness));

  auto n3 = min_replica_search(3, 6);
  REQUIRE(n3.k_min.has_value());
  CHECK(*n3.k_min == 6);
  CHECK(verify_witness(3, 1, *n3.witness));
  CHECK(histograms(3, expand(n3.witness->kets)) == histograms(3, expand(n3.witness->bras)));

  auto n4 = min_replica_search(4, 4);
  REQUIRE(n4.k_min.has_value());
  CHECK(*n4.k_min == 4);
  CHECK(verify_witness(4, 1, *n4.witness));

  auto none = min_replica_search(3, 5);
  CHECK_FALSE(none.k_min.has_value());
  CHECK_FALSE(none.witness.has_value());
  CHECK(none.levels.size() == 5);
}

TEST_CASE("witness json") {
  auto w = min_replica_search(3, 6).witness.value();
  auto back = witness_from_json(3, witness_to_json(w));
  CHECK(back.kets == w.kets);
  CHECK(back.bras == w.bras);
  CHECK(back.phase_sum == w.phase_sum);
  CHECK_THROWS_AS(witness_from_json(3, "{\"kets\": [[0,0,7,1]], \"bras\": []}"), ValidationError);
  CHECK_THROWS_AS(witness_from_json(3, "not json"), ValidationError);
}

TEST_CASE("multiset bookkeeping") {
  ConfigMultiset m{{0, 1, 1}, {0, 1, 1}, {1, 0, 0}};
  CHECK(m.size() == 3);
  CHECK(m.entries().at({0, 1, 1}) == 2);
  CHECK(m.remove({0, 1, 1}));
  CHECK(m.remove({0, 1, 1}));
  CHECK_FALSE(m.remove({0, 1, 1}));
  CHECK(m.size() == 1);
  m.add({2, 2, 2}, 3);
  CHECK(m.size() == 4);
}
