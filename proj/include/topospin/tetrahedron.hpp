#pragma once

#include <array>
#include <compare>
#include <complex>
#include <utility>

#include "topospin/replica.hpp"

namespace topospin {

// The three free edges of the reduced tetrahedron; the others carry
// a+b, b+c and a+b+c (mod N).
struct StringConfig {
  int a = 0, b = 0, c = 0;
  auto operator<=>(const StringConfig&) const = default;
};

// Labels indexed by Edge: a, b, c, ab, bc, abc.
using EdgeLabels = std::array<int, 6>;
EdgeLabels edge_labels(const StringConfig& cfg, int N);

// Trivalent vertices and the region each one sits in:
//   alpha (A) sees (a, b), beta (C) sees (c, a+b),
//   gamma (B) sees (b, c), delta (Lambda) sees (a, b+c).
enum class Vertex { alpha, beta, gamma, delta };
inline constexpr std::array<Vertex, 4> kVertices{Vertex::alpha, Vertex::beta, Vertex::gamma, Vertex::delta};
Region vertex_region(Vertex v);
std::array<Edge, 3> vertex_edges(Vertex v);
std::pair<int, int> vertex_pair(Vertex v, const StringConfig& cfg, int N);

// a * {b,c}, the integer exponent of the Z_N cocycle (not reduced).
inline int cocycle_exponent(const StringConfig& cfg, int N) { return cfg.a * (cfg.b + cfg.c >= N ? 1 : 0); }
// F(a,b,c) = exp(2 pi i p a {b,c} / N)
std::complex<double> cocycle(int N, int p, const StringConfig& cfg);

}  // namespace topospin
