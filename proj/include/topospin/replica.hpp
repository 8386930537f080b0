#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace topospin {

// (s, t) with s in {1,2} and t in 1..r. Flattened as (s-1)*r + (t-1).
struct ReplicaIndex {
  int s, t;
  bool operator==(const ReplicaIndex&) const = default;
};

class ReplicaPermutation {
 public:
  static ReplicaPermutation identity(int r);
  // `image[x]` is the image of flat index x; throws ValidationError unless bijective.
  static ReplicaPermutation from_map(int r, std::vector<int> image);

  int r() const { return r_; }
  int size() const { return 2 * r_; }
  int operator()(int flat) const { return map_[flat]; }
  ReplicaIndex operator()(ReplicaIndex x) const { return unflatten(map_[flatten(x)]); }
  const std::vector<int>& image() const { return map_; }

  ReplicaPermutation inverse() const;
  std::vector<int> cycle_lengths() const;
  int cycle_count() const { return static_cast<int>(cycle_lengths().size()); }

  int flatten(ReplicaIndex x) const;
  ReplicaIndex unflatten(int flat) const { return {flat / r_ + 1, flat % r_ + 1}; }

  bool operator==(const ReplicaPermutation&) const = default;

 private:
  int r_ = 1;
  std::vector<int> map_;
};

// f o g: apply g first.
ReplicaPermutation compose(const ReplicaPermutation& f, const ReplicaPermutation& g);

struct CanonicalPerms {
  ReplicaPermutation alpha, beta, gamma, identity;
};
// alpha: (1,t)->(1,t-1), (2,t)->(2,t+1); beta: (s,t)->(3-s,t);
// gamma: (1,t)->(2,t-1), (2,t)->(1,t+1).
CanonicalPerms canonical_perms(int r);

// "alpha" | "beta" | "gamma" | "id"
ReplicaPermutation perm_from_token(std::string_view token, int r);

enum class Region { A, B, C, Lambda };
std::string_view to_string(Region region);

struct PermTriple {
  ReplicaPermutation on_A, on_B, on_C;

  static PermTriple make(ReplicaPermutation a, ReplicaPermutation b, ReplicaPermutation c);
  static PermTriple canonical(int r);
  // "alpha,beta,gamma" style selector
  static PermTriple parse(std::string_view selector, int r);

  int r() const { return on_A.r(); }
  // Lambda carries the identity.
  ReplicaPermutation on(Region region) const;
  bool operator==(const PermTriple&) const = default;
};

enum class Edge { a, b, c, ab, bc, abc };
inline constexpr std::array<Edge, 6> kEdges{Edge::a, Edge::b, Edge::c, Edge::ab, Edge::bc, Edge::abc};
std::string_view to_string(Edge edge);

struct EdgeRegions {
  Region first, second;
};
// a:(A,L) b:(A,B) c:(B,C) ab:(A,C) bc:(B,L) abc:(C,L)
constexpr EdgeRegions regions_of(Edge e) {
  switch (e) {
    case Edge::a: return {Region::A, Region::Lambda};
    case Edge::b: return {Region::A, Region::B};
    case Edge::c: return {Region::B, Region::C};
    case Edge::ab: return {Region::A, Region::C};
    case Edge::bc: return {Region::B, Region::Lambda};
    case Edge::abc: return {Region::C, Region::Lambda};
  }
  return {Region::Lambda, Region::Lambda};
}

struct OrbitStructure {
  // Each orbit starts at its smallest flat index and follows the generating
  // permutation; orbits are ordered by their first element.
  std::vector<std::vector<int>> orbits;
  int cycle_count = 0;
};

// Orbits of pi_J^{-1} o pi_I for an edge between regions (I, J). The bra-side
// label of the edge is constant on each orbit.
OrbitStructure edge_orbits(const PermTriple& triple, Edge edge);
OrbitStructure orbits_of(const ReplicaPermutation& perm);

// Each permutation pi becomes sigma^{-1} o pi o sigma.
PermTriple conjugate_triple(const PermTriple& triple, const ReplicaPermutation& sigma);

// The eight triples of the universal ratio: numerator first, then denominator.
std::array<PermTriple, 8> ratio_triples(int r);

}  // namespace topospin
