#include "topospin/tetrahedron.hpp"

#include "topospin/numeric.hpp"

namespace topospin {

EdgeLabels edge_labels(const StringConfig& cfg, int N) {
  return {cfg.a, cfg.b, cfg.c, (cfg.a + cfg.b) % N, (cfg.b + cfg.c) % N, (cfg.a + cfg.b + cfg.c) % N};
}

Region vertex_region(Vertex v) {
  switch (v) {
    case Vertex::alpha: return Region::A;
    case Vertex::beta: return Region::C;
    case Vertex::gamma: return Region::B;
    case Vertex::delta: return Region::Lambda;
  }
  return Region::Lambda;
}

std::array<Edge, 3> vertex_edges(Vertex v) {
  switch (v) {
    case Vertex::alpha: return {Edge::a, Edge::b, Edge::ab};
    case Vertex::beta: return {Edge::c, Edge::ab, Edge::abc};
    case Vertex::gamma: return {Edge::b, Edge::c, Edge::bc};
    case Vertex::delta: return {Edge::a, Edge::bc, Edge::abc};
  }
  return {};
}

std::pair<int, int> vertex_pair(Vertex v, const StringConfig& cfg, int N) {
  switch (v) {
    case Vertex::alpha: return {cfg.a, cfg.b};
    case Vertex::beta: return {cfg.c, (cfg.a + cfg.b) % N};
    case Vertex::gamma: return {cfg.b, cfg.c};
    case Vertex::delta: return {cfg.a, (cfg.b + cfg.c) % N};
  }
  return {};
}

std::complex<double> cocycle(int N, int p, const StringConfig& cfg) {
  return unit_root(static_cast<long long>(p) * cocycle_exponent(cfg, N), N);
}

}  // namespace topospin
