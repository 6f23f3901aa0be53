#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "support.hpp"

using namespace scx;

namespace {

/// Unweighted constant by plain enumeration of every surjective labelling
/// V -> {0..k}, counting k-simplices of K and of the completion directly.
double unweighted_constant_oracle(const SimplicialComplex& k_complex, int k) {
  const std::size_t n = k_complex.vertex_count();
  const auto blocks = static_cast<std::size_t>(k + 1);
  std::vector<std::vector<Vertex>> subsets;
  std::vector<bool> in_k;
  // every (k+1)-subset of labels
  std::vector<std::size_t> pick(blocks);
  for (std::size_t a = 0; a < blocks; ++a) pick[a] = a;
  while (true) {
    std::vector<Vertex> v;
    for (const auto a : pick) v.push_back(k_complex.vertex_label(a));
    const Simplex s(v);
    bool closed = true;
    for (std::size_t j = 0; j < blocks; ++j) closed = closed && k_complex.contains(s.facet(j));
    if (closed) {
      subsets.push_back(v);
      in_k.push_back(k_complex.contains(s));
    }
    std::size_t a = blocks;
    bool done = true;
    while (a-- > 0)
      if (pick[a] < n - blocks + a) {
        done = false;
        break;
      }
    if (done) break;
    ++pick[a];
    for (std::size_t b = a + 1; b < blocks; ++b) pick[b] = pick[b - 1] + 1;
  }

  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> label(n, 0);
  const auto total = static_cast<std::size_t>(std::pow(static_cast<double>(blocks), static_cast<double>(n)));
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    std::vector<bool> used(blocks, false);
    for (std::size_t v = 0; v < n; ++v) {
      label[v] = c % blocks;
      used[label[v]] = true;
      c /= blocks;
    }
    if (std::find(used.begin(), used.end(), false) != used.end()) continue;
    std::size_t f = 0, fstar = 0;
    for (std::size_t s = 0; s < subsets.size(); ++s) {
      std::vector<bool> hit(blocks, false);
      for (const Vertex v : subsets[s]) hit[label[*k_complex.vertex_index(v)]] = true;
      if (std::find(hit.begin(), hit.end(), false) != hit.end()) continue;
      ++fstar;
      if (in_k[s]) ++f;
    }
    if (fstar > 0) best = std::min(best, static_cast<double>(n) * static_cast<double>(f) / static_cast<double>(fstar));
  }
  return best;
}

}  // namespace

TEST(CrossFaces, CompleteGraphCut) {
  const auto k = datasets::complete_graph(4);
  const Partition p{{{0}, {1, 2, 3}}};
  EXPECT_DOUBLE_EQ(cross_face_weight(k, p), 3.0);
  EXPECT_EQ(completion_cross_count(k, p), 3u);
}

TEST(CrossFaces, SingleTriangle) {
  const auto k = build_complex({{{0, 1, 2}, 1.0}});
  const Partition p{{{0}, {1}, {2}}};
  EXPECT_DOUBLE_EQ(cross_face_weight(k, p), 1.0);
  EXPECT_EQ(completion_cross_count(k, p), 1u);
}

TEST(CrossFaces, TwoDisjointTriangles) {
  const auto k = build_complex({{{0, 1, 2}, 1.0}, {{3, 4, 5}, 1.0}});
  const Partition p{{{0, 3}, {1, 4}, {2, 5}}};
  EXPECT_DOUBLE_EQ(cross_face_weight(k, p), 2.0);
  EXPECT_EQ(completion_cross_count(k, p), 2u);
}

TEST(CrossFaces, CompletionAddsHollowTriangle) {
  const auto k = skeleton(build_complex({{{0, 1, 2}, 1.0}}), 1);
  const Partition p{{{0}, {1}, {2}}};
  EXPECT_DOUBLE_EQ(cross_face_weight(k, p), 0.0);
  EXPECT_EQ(completion_cross_count(k, p), 1u);
}

TEST(CrossFaces, InvalidPartitions) {
  const auto k = datasets::complete_graph(4);
  for (const Partition& p : {Partition{{{0}, {1, 2}}}, Partition{{{0, 1}, {1, 2, 3}}}, Partition{{{0}, {}, {1, 2, 3}}},
                             Partition{{{0, 9}, {1, 2, 3}}}, Partition{{{0, 1, 2, 3}}}}) {
    try {
      cross_face_weight(k, p);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidPartition);
    }
  }
}

TEST(Cheeger, CompleteGraph) {
  for (const int n : {3, 4, 6}) {
    const auto h = weighted_cheeger_constant(datasets::complete_graph(n), 1);
    EXPECT_NEAR(h.value, n, 1e-12);
    EXPECT_EQ(h.partition.blocks.size(), 2u);
  }
}

TEST(Cheeger, DisconnectedGraphIsZero) {
  const auto k = build_complex({{{0, 1}, 1.0}, {{2, 3}, 1.0}});
  EXPECT_EQ(weighted_cheeger_constant(k, 1).value, 0.0);
}

TEST(Cheeger, ArgminPartitionAttainsValue) {
  const auto k = test_support::random_complex({}, 3);
  const auto h = weighted_cheeger_constant(k, 1);
  const double n = static_cast<double>(k.vertex_count());
  EXPECT_NEAR(n * cross_face_weight(k, h.partition) / static_cast<double>(completion_cross_count(k, h.partition)),
              h.value, 1e-12);
}

TEST(Cheeger, UnitWeightsMatchUnweightedEnumeration) {
  test_support::RandomComplexOptions o;
  o.vertices = 7;
  o.weighted_edges = false;
  o.weighted_triangles = false;
  o.edge_probability = 0.75;
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto k = test_support::random_complex(o, 400 + seed);
    for (int order = 1; order <= 2; ++order) {
      const double oracle = unweighted_constant_oracle(k, order);
      if (std::isinf(oracle)) {
        EXPECT_THROW(weighted_cheeger_constant(k, order), Error);
        continue;
      }
      EXPECT_NEAR(weighted_cheeger_constant(k, order).value, oracle, 1e-12);
      ++checked;
    }
  }
  EXPECT_GT(checked, 20);
}

TEST(Cheeger, Guards) {
  try {
    weighted_cheeger_constant(datasets::complete_graph(15), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooLargeForBruteForce);
  }
  EXPECT_THROW(weighted_cheeger_constant(datasets::complete_complex2(10), 2), Error);
  BruteForceLimits wider;
  wider.max_vertices_k2 = 10;
  EXPECT_NO_THROW(weighted_cheeger_constant(datasets::complete_complex2(10), 2, wider));
  try {
    weighted_cheeger_constant(build_complex({{{0, 1}, 1.0}}), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoValidPartition);
  }
}

TEST(Cheeger, AllCutsEmptyIsAnError) {
  // four isolated vertices: the completion has no triangles at all
  const auto k = build_complex({{{0}, 1.0}, {{1}, 1.0}, {{2}, 1.0}, {{3}, 1.0}});
  try {
    weighted_cheeger_constant(k, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoValidPartition);
  }
}

TEST(CheegerBound, CompleteGraphEdgeForm) {
  const auto k = datasets::complete_graph(4);
  EXPECT_EQ(max_coface_count(k, 1), 3u);
  EXPECT_NEAR(cheeger_lower_bound(k, 1), 8.0 / 3.0, 1e-10);
  EXPECT_LE(cheeger_lower_bound(k, 1), weighted_cheeger_constant(k, 1).value);
}

TEST(CheegerBound, SingleTriangleIsTight) {
  const auto k = build_complex({{{0, 1, 2}, 1.0}});
  EXPECT_EQ(max_coface_count(k, 2), 1u);
  EXPECT_NEAR(cheeger_lower_bound(k, 2), 3.0, 1e-10);
  EXPECT_NEAR(weighted_cheeger_constant(k, 2).value, 3.0, 1e-12);
}

TEST(CheegerBound, GraphFormOnRandomWeightedGraphs) {
  test_support::RandomComplexOptions o;
  o.triangle_probability = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    o.vertices = 3 + static_cast<int>(seed % 8);
    const auto g = test_support::random_complex(o, 500 + seed);
    if (g.count(1) == 0) continue;
    EXPECT_LE(graph_cheeger_lower_bound(g), weighted_cheeger_constant(g, 1).value + 1e-12) << "seed " << seed;
  }
}

TEST(CheegerBound, TriangleFormOnRandomComplexes) {
  test_support::RandomComplexOptions o;
  o.weighted_edges = false;
  o.edge_probability = 1.0;
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    o.vertices = 4 + static_cast<int>(seed % 5);
    const auto k = test_support::random_complex(o, 600 + seed);
    if (k.count(2) == 0) continue;
    EXPECT_LE(cheeger_lower_bound(k, 2), weighted_cheeger_constant(k, 2).value + 1e-10) << "seed " << seed;
  }
}

TEST(CheegerBound, EdgeFormCanExceedConstantOnCycles) {
  // The |V| lambda_1 / ((k+1) C*) form is not a valid bound at k = 1 in general:
  // on the 8-cycle it exceeds h, while the classical lambda_1 / 2 form holds.
  std::vector<WeightedSimplex> s;
  for (Vertex v = 0; v < 8; ++v) s.push_back({{v, (v + 1) % 8}, 1.0});
  const auto c8 = build_complex(s);
  const double h = weighted_cheeger_constant(c8, 1).value;
  EXPECT_NEAR(h, 1.0, 1e-12);
  EXPECT_NEAR(cheeger_lower_bound(c8, 1), 8.0 * (2.0 - std::sqrt(2.0)) / 4.0, 1e-10);
  EXPECT_GT(cheeger_lower_bound(c8, 1), h);
  EXPECT_LE(graph_cheeger_lower_bound(c8), h);
}

TEST(CheegerBound, NoTopSimplicesGivesZero) {
  EXPECT_EQ(cheeger_lower_bound(datasets::complete_graph(4), 2), 0.0);
}
