#include "topospin/optimality.hpp"

#include <cstdlib>

#include <json.hpp>

#include "topospin/error.hpp"
#include "topospin/numeric.hpp"

namespace topospin {

ConfigMultiset::ConfigMultiset(std::initializer_list<StringConfig> configs) {
  for (const auto& c : configs) add(c);
}

void ConfigMultiset::add(const StringConfig& cfg, int count) {
  if (count <= 0) return;
  entries_[cfg] += count;
  size_ += count;
}

bool ConfigMultiset::remove(const StringConfig& cfg) {
  auto it = entries_.find(cfg);
  if (it == entries_.end()) return false;
  if (--it->second == 0) entries_.erase(it);
  --size_;
  return true;
}

std::array<VertexProjection, 4> vertex_projections(int N) {
  std::array<VertexProjection, 4> out;
  for (Vertex v : kVertices)
    out[static_cast<int>(v)] = [v, N](const StringConfig& cfg) { return vertex_pair(v, cfg, N); };
  return out;
}

int phase_sum(int N, const WitnessPair& pair) {
  long long s = 0;
  for (const auto& [cfg, m] : pair.kets.entries()) s += static_cast<long long>(m) * cocycle_exponent(cfg, N);
  for (const auto& [cfg, m] : pair.bras.entries()) s -= static_cast<long long>(m) * cocycle_exponent(cfg, N);
  return static_cast<int>(mod(s, N));
}

bool verify_witness(int N, int p, const WitnessPair& pair) {
  for (const auto& proj : vertex_projections(N)) {
    std::map<std::pair<int, int>, int> hist;
    for (const auto& [cfg, m] : pair.kets.entries()) hist[proj(cfg)] += m;
    for (const auto& [cfg, m] : pair.bras.entries()) hist[proj(cfg)] -= m;
    for (const auto& [key, count] : hist)
      if (count != 0) return false;
  }
  return mod(static_cast<long long>(p) * phase_sum(N, pair), N) != 0;
}

WitnessPair canonical_witness(int N, StringConfig base, int step) {
  auto m = [N](long long x) { return static_cast<int>(mod(x, N)); };
  const auto [a, b, c] = base;
  const int q = step;
  WitnessPair w;
  for (int t = 1; t <= N; ++t) {
    w.kets.add({m(a), m(b + t * q), m(c)});
    w.kets.add({m(a + q), m(b + (t - 1) * q), m(c + q)});
    w.bras.add({m(a), m(b + t * q), m(c + q)});
    w.bras.add({m(a + q), m(b + (t - 1) * q), m(c)});
  }
  w.phase_sum = phase_sum(N, w);
  return w;
}

// ---- search ----
//
// A witness is an integer vector x on (a,b,c) (kets minus bras) with every
// vertex histogram balanced, |x|_1 = 2k and w.x != 0 mod N for w = a{b,c}.
// Fixing a, the slab X_a(b,c) must have zero row sums (v_alpha) and zero
// anti-diagonal sums (v_delta), so slabs are drawn from one precomputed list.
// v_gamma forces the last slab to minus the sum of the others, and v_beta is
// checked on the assembled vector. Translations in a and b and the overall
// sign preserve both conditions, so slab 0 is taken with a nonzero row 0
// whose first nonzero entry is positive.

namespace {

struct Slab {
  std::vector<int> x;  // N*N, row-major (b, c)
  int l1;
  int weight;          // sum {b,c} x(b,c)
  bool leading;        // eligible as slab 0
};

class SlabEnumerator {
 public:
  SlabEnumerator(int N, int max_l1) : N_(N), max_l1_(max_l1), x_(N * N, 0), anti_(N, 0) {}

  std::vector<Slab> run() {
    cell(0, 0, 0);
    return std::move(out_);
  }

 private:
  void place(int b, int c, int v) {
    x_[b * N_ + c] = v;
    anti_[(b + c) % N_] += v;
  }
  void unplace(int b, int c) {
    anti_[(b + c) % N_] -= x_[b * N_ + c];
    x_[b * N_ + c] = 0;
  }

  int anti_imbalance() const {
    int s = 0;
    for (int h : anti_) s += std::abs(h);
    return s;
  }

  // Cells are visited row-major; the last cell of each row closes the row.
  void cell(int idx, int used, int row_sum) {
    const int b = idx / N_, c = idx % N_;
    if (idx == N_ * N_) {
      if (anti_imbalance() != 0) return;
      emit(used);
      return;
    }
    if (c == N_ - 1) {
      int v = -row_sum;
      if (used + std::abs(v) > max_l1_) return;
      place(b, c, v);
      if (used + std::abs(v) + anti_imbalance() <= max_l1_) cell(idx + 1, used + std::abs(v), 0);
      unplace(b, c);
      return;
    }
    const int room = max_l1_ - used;
    for (int v = -room; v <= room; ++v) {
      place(b, c, v);
      int u = used + std::abs(v);
      int bound = std::max(anti_imbalance(), std::abs(row_sum + v));
      if (u + bound <= max_l1_) cell(idx + 1, u, row_sum + v);
      unplace(b, c);
    }
  }

  void emit(int used) {
    Slab s{x_, used, 0, false};
    for (int b = 0; b < N_; ++b)
      for (int c = 0; c < N_; ++c) s.weight += (b + c >= N_ ? 1 : 0) * x_[b * N_ + c];
    for (int c = 0; c < N_; ++c)
      if (x_[c] != 0) {
        s.leading = x_[c] > 0;
        break;
      }
    out_.push_back(std::move(s));
  }

  int N_, max_l1_;
  std::vector<int> x_, anti_;
  std::vector<Slab> out_;
};

class WitnessSearch {
 public:
  WitnessSearch(int N, const std::vector<Slab>& slabs, int max_l1)
      : N_(N), slabs_(slabs), max_l1_(max_l1), sum_(N * N, 0), beta_(N * N, 0), chosen_(N, -1) {}

  std::optional<WitnessPair> run() {
    for (int s = 0; s < static_cast<int>(slabs_.size()); ++s) {
      if (!slabs_[s].leading || slabs_[s].l1 > max_l1_) continue;
      if (try_slab(0, s, 0, 0)) return build();
    }
    return std::nullopt;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  // beta bin of (a, b, c) is (c, a+b)
  void apply(int a, const Slab& s, int sign) {
    for (int b = 0; b < N_; ++b)
      for (int c = 0; c < N_; ++c) {
        int v = sign * s.x[b * N_ + c];
        sum_[b * N_ + c] += v;
        beta_[c * N_ + (a + b) % N_] += v;
      }
  }

  int imbalance(const std::vector<int>& h) const {
    int s = 0;
    for (int v : h) s += std::abs(v);
    return s;
  }

  bool try_slab(int a, int s, int used, long long phase) {
    ++nodes_;
    const Slab& slab = slabs_[s];
    used += slab.l1;
    phase += static_cast<long long>(a) * slab.weight;
    apply(a, slab, +1);
    chosen_[a] = s;
    bool ok = false;
    if (used + std::max(imbalance(sum_), imbalance(beta_)) <= max_l1_) {
      if (a + 2 == N_)
        ok = close(used, phase);
      else
        for (int t = 0; t < static_cast<int>(slabs_.size()) && !ok; ++t)
          if (used + slabs_[t].l1 <= max_l1_) ok = try_slab(a + 1, t, used, phase);
    }
    if (!ok) {
      apply(a, slab, -1);
      chosen_[a] = -1;
    }
    return ok;
  }

  // The last slab is -sum_, which keeps its rows and anti-diagonals balanced.
  bool close(int used, long long phase) {
    const int a = N_ - 1;
    int l1 = 0, weight = 0;
    std::vector<int> beta = beta_;
    for (int b = 0; b < N_; ++b)
      for (int c = 0; c < N_; ++c) {
        int v = -sum_[b * N_ + c];
        l1 += std::abs(v);
        weight += (b + c >= N_ ? 1 : 0) * v;
        beta[c * N_ + (a + b) % N_] += v;
      }
    if (used + l1 > max_l1_) return false;
    for (int v : beta)
      if (v != 0) return false;
    phase += static_cast<long long>(a) * weight;
    return mod(phase, N_) != 0;
  }

  WitnessPair build() const {
    WitnessPair w;
    for (int a = 0; a < N_; ++a)
      for (int b = 0; b < N_; ++b)
        for (int c = 0; c < N_; ++c) {
          int v = a + 1 < N_ ? slabs_[chosen_[a]].x[b * N_ + c] : -sum_[b * N_ + c];
          if (v > 0) w.kets.add({a, b, c}, v);
          if (v < 0) w.bras.add({a, b, c}, -v);
        }
    w.phase_sum = phase_sum(N_, w);
    return w;
  }

  int N_;
  const std::vector<Slab>& slabs_;
  int max_l1_;
  std::vector<int> sum_, beta_, chosen_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

SearchResult min_replica_search(int N, int k_max) {
  if (N < 2) throw ValidationError("min_replica_search: N must be at least 2");
  if (k_max < 1) throw ValidationError("min_replica_search: k_max must be positive");
  auto slabs = SlabEnumerator(N, 2 * k_max).run();
  SearchResult out;
  for (int k = 1; k <= k_max; ++k) {
    WitnessSearch search(N, slabs, 2 * k);
    auto w = search.run();
    out.levels.push_back({k, w.has_value(), search.nodes()});
    if (w) {
      out.k_min = k;
      out.witness = std::move(w);
      break;
    }
  }
  return out;
}

std::string witness_to_json(const WitnessPair& pair) {
  auto side = [](const ConfigMultiset& m) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [cfg, count] : m.entries()) arr.push_back({cfg.a, cfg.b, cfg.c, count});
    return arr;
  };
  return nlohmann::json{{"kets", side(pair.kets)}, {"bras", side(pair.bras)}, {"phase_sum", pair.phase_sum}}.dump();
}

WitnessPair witness_from_json(int N, const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("witness parse error: ") + e.what());
  }
  WitnessPair w;
  auto read = [&](const char* key, ConfigMultiset& into) {
    if (!doc.contains(key) || !doc[key].is_array()) throw ValidationError(std::string("witness: missing '") + key + "'");
    for (const auto& e : doc[key]) {
      if (!e.is_array() || e.size() != 4) throw ValidationError("witness entries are [a,b,c,multiplicity]");
      StringConfig cfg{e[0].get<int>(), e[1].get<int>(), e[2].get<int>()};
      for (int v : {cfg.a, cfg.b, cfg.c})
        if (v < 0 || v >= N) throw ValidationError("witness label out of range");
      into.add(cfg, e[3].get<int>());
    }
  };
  read("kets", w.kets);
  read("bras", w.bras);
  w.phase_sum = phase_sum(N, w);
  return w;
}

}  // namespace topospin
