#include "topospin/replica.hpp"

#include <algorithm>

#include "topospin/error.hpp"

namespace topospin {

ReplicaPermutation ReplicaPermutation::identity(int r) {
  std::vector<int> m(2 * r);
  for (int x = 0; x < 2 * r; ++x) m[x] = x;
  return from_map(r, std::move(m));
}

ReplicaPermutation ReplicaPermutation::from_map(int r, std::vector<int> image) {
  if (r < 1) throw ValidationError("replica permutation: r must be at least 1");
  if (static_cast<int>(image.size()) != 2 * r)
    throw ValidationError("replica permutation: expected 2r images");
  std::vector<char> hit(2 * r, 0);
  for (int y : image) {
    if (y < 0 || y >= 2 * r || hit[y]) throw ValidationError("replica permutation: map is not a bijection");
    hit[y] = 1;
  }
  ReplicaPermutation p;
  p.r_ = r;
  p.map_ = std::move(image);
  return p;
}

int ReplicaPermutation::flatten(ReplicaIndex x) const {
  if ((x.s != 1 && x.s != 2) || x.t < 1 || x.t > r_) throw ValidationError("replica index out of range");
  return (x.s - 1) * r_ + (x.t - 1);
}

ReplicaPermutation ReplicaPermutation::inverse() const {
  std::vector<int> inv(map_.size());
  for (size_t x = 0; x < map_.size(); ++x) inv[map_[x]] = static_cast<int>(x);
  return from_map(r_, std::move(inv));
}

std::vector<int> ReplicaPermutation::cycle_lengths() const {
  std::vector<int> out;
  for (const auto& orbit : orbits_of(*this).orbits) out.push_back(static_cast<int>(orbit.size()));
  return out;
}

ReplicaPermutation compose(const ReplicaPermutation& f, const ReplicaPermutation& g) {
  if (f.r() != g.r()) throw ValidationError("compose: permutations act on different r");
  std::vector<int> m(f.size());
  for (int x = 0; x < f.size(); ++x) m[x] = f(g(x));
  return ReplicaPermutation::from_map(f.r(), std::move(m));
}

CanonicalPerms canonical_perms(int r) {
  if (r < 1) throw ValidationError("canonical_perms: r must be at least 1");
  auto at = [r](int s, int t) { return (s - 1) * r + ((t % r) + r) % r; };  // t is 0-based here
  std::vector<int> alpha(2 * r), beta(2 * r), gamma(2 * r);
  for (int t = 0; t < r; ++t) {
    alpha[at(1, t)] = at(1, t - 1);
    alpha[at(2, t)] = at(2, t + 1);
    beta[at(1, t)] = at(2, t);
    beta[at(2, t)] = at(1, t);
    gamma[at(1, t)] = at(2, t - 1);
    gamma[at(2, t)] = at(1, t + 1);
  }
  return {ReplicaPermutation::from_map(r, alpha), ReplicaPermutation::from_map(r, beta),
          ReplicaPermutation::from_map(r, gamma), ReplicaPermutation::identity(r)};
}

ReplicaPermutation perm_from_token(std::string_view token, int r) {
  auto c = canonical_perms(r);
  if (token == "alpha") return c.alpha;
  if (token == "beta") return c.beta;
  if (token == "gamma") return c.gamma;
  if (token == "id") return c.identity;
  throw ValidationError("unknown permutation token '" + std::string(token) + "' (expected alpha|beta|gamma|id)");
}

std::string_view to_string(Region region) {
  switch (region) {
    case Region::A: return "A";
    case Region::B: return "B";
    case Region::C: return "C";
    case Region::Lambda: return "Lambda";
  }
  return "?";
}

std::string_view to_string(Edge edge) {
  switch (edge) {
    case Edge::a: return "a";
    case Edge::b: return "b";
    case Edge::c: return "c";
    case Edge::ab: return "ab";
    case Edge::bc: return "bc";
    case Edge::abc: return "abc";
  }
  return "?";
}

PermTriple PermTriple::make(ReplicaPermutation a, ReplicaPermutation b, ReplicaPermutation c) {
  if (a.r() != b.r() || b.r() != c.r()) throw ValidationError("perm triple: permutations act on different r");
  return {std::move(a), std::move(b), std::move(c)};
}

PermTriple PermTriple::canonical(int r) {
  auto c = canonical_perms(r);
  return make(c.alpha, c.beta, c.gamma);
}

PermTriple PermTriple::parse(std::string_view selector, int r) {
  std::vector<std::string_view> tokens;
  size_t start = 0;
  while (true) {
    size_t comma = selector.find(',', start);
    tokens.push_back(selector.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (tokens.size() != 3) throw ValidationError("triple selector needs three comma-separated tokens");
  return make(perm_from_token(tokens[0], r), perm_from_token(tokens[1], r), perm_from_token(tokens[2], r));
}

ReplicaPermutation PermTriple::on(Region region) const {
  switch (region) {
    case Region::A: return on_A;
    case Region::B: return on_B;
    case Region::C: return on_C;
    case Region::Lambda: break;
  }
  return ReplicaPermutation::identity(r());
}

OrbitStructure orbits_of(const ReplicaPermutation& perm) {
  OrbitStructure out;
  std::vector<char> seen(perm.size(), 0);
  for (int x = 0; x < perm.size(); ++x) {
    if (seen[x]) continue;
    std::vector<int> orbit;
    for (int y = x; !seen[y]; y = perm(y)) {
      seen[y] = 1;
      orbit.push_back(y);
    }
    out.orbits.push_back(std::move(orbit));
  }
  out.cycle_count = static_cast<int>(out.orbits.size());
  return out;
}

OrbitStructure edge_orbits(const PermTriple& triple, Edge edge) {
  auto [I, J] = regions_of(edge);
  return orbits_of(compose(triple.on(J).inverse(), triple.on(I)));
}

PermTriple conjugate_triple(const PermTriple& triple, const ReplicaPermutation& sigma) {
  auto inv = sigma.inverse();
  auto conj = [&](const ReplicaPermutation& p) { return compose(inv, compose(p, sigma)); };
  return PermTriple::make(conj(triple.on_A), conj(triple.on_B), conj(triple.on_C));
}

std::array<PermTriple, 8> ratio_triples(int r) {
  auto c = canonical_perms(r);
  const auto &a = c.alpha, &b = c.beta, &g = c.gamma, &id = c.identity;
  return {PermTriple::make(a, b, g), PermTriple::make(g, b, a), PermTriple::make(a, id, a),
          PermTriple::make(g, id, g), PermTriple::make(a, id, g), PermTriple::make(g, id, a),
          PermTriple::make(g, b, g), PermTriple::make(a, b, a)};
}

}  // namespace topospin
