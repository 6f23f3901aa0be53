#pragma once

// Brute-force weighted Cheeger constants.
//
// For a partition V = A_0 u ... u A_k into non-empty blocks, F is the set of
// k-simplices of K with one vertex in every block, and F* the same set taken
// over the k-dimensional completion of K (every (k+1)-subset whose k-subsets
// all lie in K). The constant is
//
//     h(K) = min |V| * sum_{X in F} w(X) / |F*|
//
// over partitions with |F*| > 0. Both quantities are symmetric in the block
// labels, so partitions are enumerated once each as restricted growth strings.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "scx/complex.hpp"
#include "scx/spectral.hpp"

namespace scx {

struct Partition {
  std::vector<std::vector<Vertex>> blocks;
};

struct CheegerResult {
  double value = std::numeric_limits<double>::infinity();
  Partition partition;
};

/// Largest vertex count accepted by the exhaustive search.
struct BruteForceLimits {
  std::size_t max_vertices_k1 = 14;
  std::size_t max_vertices_k2 = 9;
  std::size_t max_partitions_other = 20000;  ///< bound on (k+1)^|V| for k >= 3
};

namespace detail {

/// Block label per dense vertex index; validates the partition.
inline std::vector<int> block_labels(const SimplicialComplex& complex, const Partition& partition) {
  const std::size_t n = complex.vertex_count();
  std::vector<int> label(n, -1);
  for (std::size_t b = 0; b < partition.blocks.size(); ++b) {
    if (partition.blocks[b].empty()) throw Error(ErrorCode::InvalidPartition, "block " + std::to_string(b) + " is empty");
    for (const Vertex v : partition.blocks[b]) {
      const auto idx = complex.vertex_index(v);
      if (!idx) throw Error(ErrorCode::InvalidPartition, "vertex " + std::to_string(v) + " is not in the complex");
      if (label[*idx] != -1) throw Error(ErrorCode::InvalidPartition, "vertex " + std::to_string(v) + " appears twice");
      label[*idx] = static_cast<int>(b);
    }
  }
  for (std::size_t v = 0; v < n; ++v)
    if (label[v] == -1)
      throw Error(ErrorCode::InvalidPartition, "vertex " + std::to_string(complex.vertex_label(v)) + " is not covered");
  if (partition.blocks.size() < 2) throw Error(ErrorCode::InvalidPartition, "need at least two blocks");
  return label;
}

/// Dense vertex indices of each simplex of dimension k.
inline std::vector<std::vector<std::size_t>> dense_simplices(const SimplicialComplex& complex, int k) {
  std::vector<std::vector<std::size_t>> out;
  for (const Simplex& s : complex.simplices(k)) {
    std::vector<std::size_t> idx;
    for (const Vertex v : s.vertices()) idx.push_back(*complex.vertex_index(v));
    out.push_back(std::move(idx));
  }
  return out;
}

/// k-simplices of the completion: (k+1)-subsets of V whose facets are all in K.
inline std::vector<std::vector<std::size_t>> completion_simplices(const SimplicialComplex& complex, int k) {
  std::vector<std::vector<std::size_t>> out;
  const std::size_t n = complex.vertex_count();
  const auto size = static_cast<std::size_t>(k + 1);
  if (size > n) return out;
  std::vector<std::size_t> pick(size);
  for (std::size_t a = 0; a < size; ++a) pick[a] = a;
  while (true) {
    std::vector<Vertex> labels;
    for (const std::size_t a : pick) labels.push_back(complex.vertex_label(a));
    const Simplex candidate(labels);
    bool ok = true;
    for (std::size_t j = 0; j < size && ok && k >= 1; ++j) ok = complex.contains(candidate.facet(j));
    if (ok) out.push_back(pick);
    std::size_t a = size;
    while (a-- > 0) {
      if (pick[a] < n - size + a) break;
      if (a == 0) return out;
    }
    ++pick[a];
    for (std::size_t b = a + 1; b < size; ++b) pick[b] = pick[b - 1] + 1;
  }
}

inline bool rainbow(const std::vector<std::size_t>& simplex, const std::vector<int>& label, std::size_t blocks) {
  std::uint64_t seen = 0;
  for (const std::size_t v : simplex) seen |= std::uint64_t{1} << label[v];
  return static_cast<std::size_t>(std::popcount(seen)) == blocks && simplex.size() == blocks;
}

inline int partition_order(const Partition& p) { return static_cast<int>(p.blocks.size()) - 1; }

}  // namespace detail

/// sum of w_k(X) over k-simplices X with one vertex in each block (k = #blocks - 1).
inline double cross_face_weight(const SimplicialComplex& complex, const Partition& partition) {
  const auto label = detail::block_labels(complex, partition);
  const int k = detail::partition_order(partition);
  const auto simplices = detail::dense_simplices(complex, k);
  const auto w = complex.weights(k);
  double total = 0.0;
  for (std::size_t j = 0; j < simplices.size(); ++j)
    if (detail::rainbow(simplices[j], label, partition.blocks.size())) total += w[j];
  return total;
}

/// |F*|: completion k-simplices with one vertex in each block.
inline std::size_t completion_cross_count(const SimplicialComplex& complex, const Partition& partition) {
  const auto label = detail::block_labels(complex, partition);
  const int k = detail::partition_order(partition);
  std::size_t count = 0;
  for (const auto& s : detail::completion_simplices(complex, k))
    if (detail::rainbow(s, label, partition.blocks.size())) ++count;
  return count;
}

/// C*: the largest number of k-simplices sharing one (k-1)-face.
inline std::size_t max_coface_count(const SimplicialComplex& complex, int k) {
  if (k < 1) throw Error(ErrorCode::DimensionOutOfRange, "k must be at least 1");
  std::vector<std::size_t> count(complex.count(k - 1), 0);
  for (const Simplex& s : complex.simplices(k))
    for (std::size_t j = 0; j <= static_cast<std::size_t>(k); ++j) ++count[*complex.index_of(s.facet(j))];
  std::size_t best = 0;
  for (const std::size_t c : count) best = std::max(best, c);
  return best;
}

inline CheegerResult weighted_cheeger_constant(const SimplicialComplex& complex, int k,
                                               const BruteForceLimits& limits = {}) {
  if (k < 1) throw Error(ErrorCode::DimensionOutOfRange, "k must be at least 1");
  const std::size_t n = complex.vertex_count();
  const auto blocks = static_cast<std::size_t>(k + 1);
  bool too_large = false;
  if (k == 1) too_large = n > limits.max_vertices_k1;
  else if (k == 2) too_large = n > limits.max_vertices_k2;
  else too_large = std::pow(static_cast<double>(blocks), static_cast<double>(n)) >
                   static_cast<double>(limits.max_partitions_other);
  if (too_large)
    throw Error(ErrorCode::TooLargeForBruteForce,
                std::to_string(n) + " vertices is too many for k = " + std::to_string(k));
  if (n < blocks) throw Error(ErrorCode::NoValidPartition, "fewer vertices than blocks");

  const auto simplices = detail::dense_simplices(complex, k);
  const auto weights = complex.weights(k);
  const auto completion = detail::completion_simplices(complex, k);

  CheegerResult best;
  std::vector<int> best_label;
  // Restricted growth string: label[0] = 0, label[v] <= 1 + max(label[0..v-1]).
  std::vector<int> label(n, 0);
  std::vector<int> prefix_max(n, 0);
  while (true) {
    if (static_cast<std::size_t>(prefix_max[n - 1]) + 1 == blocks) {
      std::size_t fstar = 0;
      for (const auto& s : completion)
        if (detail::rainbow(s, label, blocks)) ++fstar;
      if (fstar > 0) {
        double cross = 0.0;
        for (std::size_t j = 0; j < simplices.size(); ++j)
          if (detail::rainbow(simplices[j], label, blocks)) cross += weights[j];
        const double value = static_cast<double>(n) * cross / static_cast<double>(fstar);
        if (value < best.value) {
          best.value = value;
          best_label = label;
        }
      }
    }
    // advance
    std::size_t v = n;
    while (--v > 0) {
      const int cap = std::min(prefix_max[v - 1] + 1, static_cast<int>(blocks) - 1);
      if (label[v] < cap) break;
    }
    if (v == 0) break;
    ++label[v];
    prefix_max[v] = std::max(prefix_max[v - 1], label[v]);
    for (std::size_t u = v + 1; u < n; ++u) {
      label[u] = 0;
      prefix_max[u] = prefix_max[u - 1];
    }
  }

  if (best_label.empty()) throw Error(ErrorCode::NoValidPartition, "every partition has an empty completion cut");
  best.partition.blocks.assign(blocks, {});
  for (std::size_t v = 0; v < n; ++v)
    best.partition.blocks[static_cast<std::size_t>(best_label[v])].push_back(complex.vertex_label(v));
  return best;
}

/// |V| lambda_1 / ((k+1) C*), with lambda_1 the first non-trivial eigenvalue of
/// L_{K,k-1}. Zero when K has no k-simplices.
inline double cheeger_lower_bound(const SimplicialComplex& complex, int k) {
  const std::size_t cstar = max_coface_count(complex, k);
  if (cstar == 0) return 0.0;
  const double lambda1 = lambda1_nontrivial(complex, k - 1);
  return static_cast<double>(complex.vertex_count()) * lambda1 / (static_cast<double>(k + 1) * static_cast<double>(cstar));
}

/// lambda_1(L_G) / 2, the classical lower bound for the weighted graph constant.
inline double graph_cheeger_lower_bound(const SimplicialComplex& graph) {
  return 0.5 * lambda1_nontrivial(graph, 0);
}

}  // namespace scx
