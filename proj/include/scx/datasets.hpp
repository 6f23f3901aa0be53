#pragma once

// Unit-weight benchmark complexes.

#include <cmath>
#include <string>
#include <vector>

#include "scx/complex.hpp"

namespace scx::datasets {

namespace detail {

inline void add_complete(std::vector<WeightedSimplex>& out, Vertex first, Vertex n, int max_dim) {
  for (Vertex a = first; a < first + n; ++a) {
    out.push_back({{a}, 1.0});
    for (Vertex b = a + 1; b < first + n; ++b) {
      out.push_back({{a, b}, 1.0});
      if (max_dim >= 2)
        for (Vertex c = b + 1; c < first + n; ++c) out.push_back({{a, b, c}, 1.0});
    }
  }
}

}  // namespace detail

/// K_n: n vertices, n(n-1)/2 edges.
inline SimplicialComplex complete_graph(int n) {
  if (n < 2) throw Error(ErrorCode::InvalidParams, "complete_graph needs n >= 2");
  std::vector<WeightedSimplex> s;
  detail::add_complete(s, 0, n, 1);
  return build_complex(s);
}

/// All vertices, edges and triangles on n vertices.
inline SimplicialComplex complete_complex2(int n) {
  if (n < 3) throw Error(ErrorCode::InvalidParams, "complete_complex2 needs n >= 3");
  std::vector<WeightedSimplex> s;
  detail::add_complete(s, 0, n, 2);
  return build_complex(s);
}

/// Two copies of K_bell (vertices [0, bell) and [bell, 2 bell)) joined by the
/// complete bipartite graph between the first `cross` vertices of each bell.
inline SimplicialComplex dumbbell_graph(int bell, int cross) {
  if (bell < 2 || cross < 1 || cross > bell)
    throw Error(ErrorCode::InvalidParams, "dumbbell_graph needs bell >= 2 and 1 <= cross <= bell");
  std::vector<WeightedSimplex> s;
  detail::add_complete(s, 0, bell, 1);
  detail::add_complete(s, bell, bell, 1);
  for (Vertex a = 0; a < cross; ++a)
    for (Vertex b = bell; b < bell + cross; ++b) s.push_back({{a, b}, 1.0});
  return build_complex(s);
}

/// Two complete 2-complexes on `bell` vertices each. The bridge uses the first
/// s = sqrt(cross_edges) vertices of each bell: all s^2 edges between them, and
/// the first `cross_triangles` (lexicographic) triangles spanned by the bridge
/// that have vertices in both bells. At most 2 s C(s,2) such triangles exist.
inline SimplicialComplex dumbbell_complex(int bell, int cross_edges, int cross_triangles) {
  const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(cross_edges))));
  if (bell < 3 || cross_edges < 1 || side * side != cross_edges || side > bell)
    throw Error(ErrorCode::InvalidParams, "dumbbell_complex needs bell >= 3 and cross_edges a square s^2 with s <= bell");
  const int available = 2 * side * side * (side - 1) / 2;
  if (cross_triangles < 0 || cross_triangles > available)
    throw Error(ErrorCode::InvalidParams,
                "cross_triangles must lie in [0, " + std::to_string(available) + "] for " + std::to_string(cross_edges) +
                    " cross edges");
  std::vector<WeightedSimplex> s;
  detail::add_complete(s, 0, bell, 2);
  detail::add_complete(s, bell, bell, 2);
  for (Vertex a = 0; a < side; ++a)
    for (Vertex b = bell; b < bell + side; ++b) s.push_back({{a, b}, 1.0});

  std::vector<std::vector<Vertex>> bridge;
  std::vector<Vertex> bridge_vertices;
  for (Vertex a = 0; a < side; ++a) bridge_vertices.push_back(a);
  for (Vertex b = bell; b < bell + side; ++b) bridge_vertices.push_back(b);
  for (std::size_t x = 0; x < bridge_vertices.size(); ++x)
    for (std::size_t y = x + 1; y < bridge_vertices.size(); ++y)
      for (std::size_t z = y + 1; z < bridge_vertices.size(); ++z) {
        const Vertex a = bridge_vertices[x], b = bridge_vertices[y], c = bridge_vertices[z];
        const int left = (a < bell) + (b < bell) + (c < bell);
        if (left == 1 || left == 2) bridge.push_back({a, b, c});
      }
  for (int t = 0; t < cross_triangles; ++t) s.push_back({bridge[static_cast<std::size_t>(t)], 1.0});
  return build_complex(s);
}

/// Dispatch by name with integer parameters, as used by the CLI and configs.
inline SimplicialComplex generate(const std::string& kind, const std::vector<int>& params) {
  auto need = [&](std::size_t count) {
    if (params.size() != count)
      throw Error(ErrorCode::InvalidParams,
                  kind + " takes " + std::to_string(count) + " parameter(s), got " + std::to_string(params.size()));
  };
  if (kind == "complete_graph") {
    need(1);
    return complete_graph(params[0]);
  }
  if (kind == "complete_complex2") {
    need(1);
    return complete_complex2(params[0]);
  }
  if (kind == "dumbbell_graph") {
    need(2);
    return dumbbell_graph(params[0], params[1]);
  }
  if (kind == "dumbbell_complex") {
    need(3);
    return dumbbell_complex(params[0], params[1], params[2]);
  }
  throw Error(ErrorCode::InvalidParams, "unknown dataset kind '" + kind + "'");
}

}  // namespace scx::datasets
