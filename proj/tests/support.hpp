#pragma once

// Random complexes and dense reference computations shared by the tests.

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "scx/scx.hpp"

namespace scx::test_support {

struct RandomComplexOptions {
  int vertices = 8;
  double edge_probability = 0.6;
  double triangle_probability = 0.5;  ///< among vertex triples whose edges are all present
  bool weighted_edges = true;         ///< random edge weights (else 1)
  bool weighted_triangles = true;     ///< random triangle weights (else 1)
  bool include_tetrahedra = false;
};

inline double random_weight(Rng& rng) { return 0.25 + 3.75 * uniform01(rng); }

/// Every vertex is kept even when isolated.
inline SimplicialComplex random_complex(const RandomComplexOptions& o, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<WeightedSimplex> s;
  const int n = o.vertices;
  std::vector<std::vector<bool>> edge(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
  for (Vertex v = 0; v < n; ++v) s.push_back({{v}, 1.0});
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (uniform01(rng) < o.edge_probability) {
        edge[a][b] = edge[b][a] = true;
        s.push_back({{a, b}, o.weighted_edges ? random_weight(rng) : 1.0});
      }
  std::vector<std::vector<Vertex>> triangles;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        if (edge[a][b] && edge[a][c] && edge[b][c] && uniform01(rng) < o.triangle_probability) {
          triangles.push_back({a, b, c});
          s.push_back({{a, b, c}, o.weighted_triangles ? random_weight(rng) : 1.0});
        }
  if (o.include_tetrahedra) {
    auto has = [&](Vertex a, Vertex b, Vertex c) {
      for (const auto& t : triangles)
        if (t[0] == a && t[1] == b && t[2] == c) return true;
      return false;
    };
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int c = b + 1; c < n; ++c)
          for (int d = c + 1; d < n; ++d)
            if (has(a, b, c) && has(a, b, d) && has(a, c, d) && has(b, c, d) && uniform01(rng) < 0.7)
              s.push_back({{a, b, c, d}, 1.0});
  }
  return build_complex(s);
}

/// Dense Moore-Penrose pseudoinverse by complete orthogonal decomposition,
/// independent of the eigendecomposition path under test.
inline RealMatrix reference_pinv(const RealMatrix& m) {
  Eigen::CompleteOrthogonalDecomposition<RealMatrix> cod(m);
  cod.setThreshold(1e-10);
  return cod.pseudoInverse();
}

/// diag(D (D^T W D)^+ D^T) computed densely for edges (i = 1) over vertices.
inline RealVector reference_edge_resistance(const SimplicialComplex& k) {
  const RealMatrix d(incidence_matrix(k, 0));
  RealVector w(static_cast<Eigen::Index>(k.count(1)));
  for (std::size_t e = 0; e < k.count(1); ++e) w(static_cast<Eigen::Index>(e)) = k.weights(1)[e];
  const RealMatrix l = d.transpose() * w.asDiagonal() * d;
  return (d * reference_pinv(l) * d.transpose()).diagonal();
}

}  // namespace scx::test_support
