#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "topospin/tetrahedron.hpp"

namespace topospin {

class ConfigMultiset {
 public:
  ConfigMultiset() = default;
  ConfigMultiset(std::initializer_list<StringConfig> configs);

  void add(const StringConfig& cfg, int count = 1);
  // Removes one copy; returns false when absent.
  bool remove(const StringConfig& cfg);
  int size() const { return size_; }
  const std::map<StringConfig, int>& entries() const { return entries_; }
  bool operator==(const ConfigMultiset&) const = default;

 private:
  std::map<StringConfig, int> entries_;
  int size_ = 0;
};

struct WitnessPair {
  ConfigMultiset kets, bras;
  int phase_sum = 0;  // mod N
};

using VertexProjection = std::function<std::pair<int, int>(const StringConfig&)>;
// v_alpha: (a,b), v_beta: (c, a+b), v_gamma: (b,c), v_delta: (a, b+c), all mod N.
std::array<VertexProjection, 4> vertex_projections(int N);

// sum_kets a{b,c} - sum_bras a{b,c} mod N; the F-product is exp(2 pi i p/N * this).
int phase_sum(int N, const WitnessPair& pair);

// All four vertex histograms agree and p * phase_sum != 0 mod N.
bool verify_witness(int N, int p, const WitnessPair& pair);

// kets {(a, b+tq, c), (a+q, b+(t-1)q, c+q)}, bras {(a, b+tq, c+q), (a+q, b+(t-1)q, c)}, t = 1..N.
WitnessPair canonical_witness(int N, StringConfig base, int step);

struct SearchLevel {
  int k;
  bool found;
  std::uint64_t nodes;
};

struct SearchResult {
  std::optional<int> k_min;
  std::optional<WitnessPair> witness;
  std::vector<SearchLevel> levels;  // one per k searched, ascending
};

// Smallest k <= k_max admitting a witness of size k (p fixed to 1).
SearchResult min_replica_search(int N, int k_max);

// [[a,b,c,multiplicity], ...]
std::string witness_to_json(const WitnessPair& pair);
WitnessPair witness_from_json(int N, const std::string& text);

}  // namespace topospin
