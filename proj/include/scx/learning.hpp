#pragma once

// Spectral clustering (Ng-Jordan-Weiss) and label propagation over vertex or
// edge affinities. Edges of a 2-complex are adjacent when they are faces of a
// common triangle; the affinity is that triangle's weight.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "scx/complex.hpp"
#include "scx/random.hpp"
#include "scx/spectral.hpp"

namespace scx {

/// Symmetric non-negative matrix with zero diagonal.
class AffinityMatrix {
 public:
  AffinityMatrix() = default;

  explicit AffinityMatrix(RealMatrix values) : values_(std::move(values)) {
    if (values_.rows() != values_.cols()) throw Error(ErrorCode::ShapeMismatch, "affinity matrix must be square");
    for (Eigen::Index r = 0; r < values_.rows(); ++r) {
      if (values_(r, r) != 0.0) throw Error(ErrorCode::InvalidParams, "affinity diagonal must be zero");
      for (Eigen::Index c = 0; c < r; ++c) {
        if (values_(r, c) != values_(c, r)) throw Error(ErrorCode::NonSymmetricInput, "affinity must be symmetric");
        if (values_(r, c) < 0.0) throw Error(ErrorCode::InvalidParams, "affinity entries must be non-negative");
      }
    }
  }

  const RealMatrix& matrix() const noexcept { return values_; }
  Eigen::Index size() const noexcept { return values_.rows(); }

  /// Delta: row sums.
  RealVector degrees() const { return values_.rowwise().sum(); }

  AffinityMatrix scaled(double c) const { return AffinityMatrix(c * values_); }

 private:
  RealMatrix values_;
};

namespace detail {

inline void require_edges(const SimplicialComplex& complex) {
  if (complex.dimension() < 1) throw Error(ErrorCode::DimensionTooLow, "complex has no edges");
}

/// Calls fn(f, e_a, e_b, sign_a, sign_b) for every ordered pair of distinct
/// edges of each triangle f.
template <typename Fn>
void for_each_triangle_edge_pair(const SimplicialComplex& complex, Fn&& fn) {
  const auto triangles = complex.simplices(2);
  for (std::size_t f = 0; f < triangles.size(); ++f) {
    std::size_t edge[3];
    double sign[3];
    for (std::size_t j = 0; j < 3; ++j) {
      edge[j] = *complex.index_of(triangles[f].facet(j));
      sign[j] = (j % 2 == 0) ? 1.0 : -1.0;
    }
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b)
        if (a != b) fn(f, edge[a], edge[b], sign[a], sign[b]);
  }
}

}  // namespace detail

/// Vertex-vertex affinity of the 1-skeleton: A_uv = w(uv).
inline AffinityMatrix vertex_affinity(const SimplicialComplex& complex) {
  const auto n = static_cast<Eigen::Index>(complex.vertex_count());
  RealMatrix a = RealMatrix::Zero(n, n);
  const auto edges = complex.simplices(1);
  const auto w = complex.weights(1);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto u = static_cast<Eigen::Index>(*complex.vertex_index(edges[e].vertices()[0]));
    const auto v = static_cast<Eigen::Index>(*complex.vertex_index(edges[e].vertices()[1]));
    a(u, v) = a(v, u) = w[e];
  }
  return AffinityMatrix(std::move(a));
}

/// Edge-edge affinity: A_ij = w_f when e_i and e_j are faces of triangle f.
/// Two edges share at most one triangle.
inline AffinityMatrix edge_affinity(const SimplicialComplex& complex) {
  detail::require_edges(complex);
  const auto n = static_cast<Eigen::Index>(complex.count(1));
  RealMatrix a = RealMatrix::Zero(n, n);
  const auto w = complex.weights(2);
  detail::for_each_triangle_edge_pair(complex, [&](std::size_t f, std::size_t i, std::size_t j, double, double) {
    a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = w[f];
  });
  return AffinityMatrix(std::move(a));
}

/// Signed edge-edge affinity A*: -w_f when both edges agree (or both disagree)
/// with the orientation of f, +w_f otherwise. L_{K,1} = Delta/2 - A*.
inline RealMatrix oriented_edge_affinity(const SimplicialComplex& complex) {
  detail::require_edges(complex);
  const auto n = static_cast<Eigen::Index>(complex.count(1));
  RealMatrix a = RealMatrix::Zero(n, n);
  const auto w = complex.weights(2);
  detail::for_each_triangle_edge_pair(complex, [&](std::size_t f, std::size_t i, std::size_t j, double si, double sj) {
    a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = -si * sj * w[f];
  });
  return a;
}

/// One vertex per edge (labelled by edge index); dual vertices are joined when
/// their edges share a triangle, with that triangle's weight.
inline SimplicialComplex dual_graph(const SimplicialComplex& complex) {
  detail::require_edges(complex);
  const std::size_t n = complex.count(1);
  std::vector<std::vector<Simplex>> levels(1);
  std::vector<std::vector<double>> weights(1);
  for (std::size_t e = 0; e < n; ++e) {
    levels[0].push_back(Simplex{static_cast<Vertex>(e)});
    weights[0].push_back(1.0);
  }
  std::vector<std::pair<Simplex, double>> dual_edges;
  const auto w = complex.weights(2);
  detail::for_each_triangle_edge_pair(complex, [&](std::size_t f, std::size_t i, std::size_t j, double, double) {
    if (i < j) dual_edges.emplace_back(Simplex{static_cast<Vertex>(i), static_cast<Vertex>(j)}, w[f]);
  });
  std::sort(dual_edges.begin(), dual_edges.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  if (!dual_edges.empty()) {
    levels.emplace_back();
    weights.emplace_back();
    for (auto& [s, wt] : dual_edges) {
      levels[1].push_back(std::move(s));
      weights[1].push_back(wt);
    }
  }
  return SimplicialComplex(std::move(levels), std::move(weights));
}

struct KMeansResult {
  std::vector<int> assignment;
  RealMatrix centroids;  ///< k x dim
  int iterations = 0;
};

/// k-means++ seeding followed by Lloyd iterations (at most `max_rounds`).
/// Ties go to the lowest-index centroid; an emptied cluster keeps its centroid.
inline KMeansResult kmeans(const RealMatrix& points, int k, std::uint64_t seed, int max_rounds = 300) {
  const Eigen::Index n = points.rows();
  if (k < 1) throw Error(ErrorCode::InvalidParams, "k must be at least 1");
  if (k > n) throw Error(ErrorCode::KTooLarge, "k = " + std::to_string(k) + " exceeds " + std::to_string(n) + " points");

  Rng rng(seed);
  KMeansResult result;
  result.centroids.resize(k, points.cols());
  result.centroids.row(0) = points.row(static_cast<Eigen::Index>(uniform_index(rng, static_cast<std::uint64_t>(n))));
  RealVector d2 = (points.rowwise() - result.centroids.row(0)).rowwise().squaredNorm();
  for (int c = 1; c < k; ++c) {
    const double total = d2.sum();
    Eigen::Index pick = 0;
    if (total > 0.0) {
      const double target = uniform01(rng) * total;
      double running = 0.0;
      pick = n - 1;
      for (Eigen::Index p = 0; p < n; ++p) {
        running += d2(p);
        if (running > target && d2(p) > 0.0) {
          pick = p;
          break;
        }
      }
    } else {
      pick = static_cast<Eigen::Index>(uniform_index(rng, static_cast<std::uint64_t>(n)));
    }
    result.centroids.row(c) = points.row(pick);
    d2 = d2.cwiseMin((points.rowwise() - result.centroids.row(c)).rowwise().squaredNorm());
  }

  result.assignment.assign(static_cast<std::size_t>(n), -1);
  for (int round = 0; round < max_rounds; ++round) {
    bool changed = false;
    for (Eigen::Index p = 0; p < n; ++p) {
      int best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (int c = 0; c < k; ++c) {
        const double d = (points.row(p) - result.centroids.row(c)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (result.assignment[static_cast<std::size_t>(p)] != best) {
        result.assignment[static_cast<std::size_t>(p)] = best;
        changed = true;
      }
    }
    result.iterations = round + 1;
    if (!changed) break;
    RealMatrix sums = RealMatrix::Zero(k, points.cols());
    std::vector<Eigen::Index> sizes(static_cast<std::size_t>(k), 0);
    for (Eigen::Index p = 0; p < n; ++p) {
      const int c = result.assignment[static_cast<std::size_t>(p)];
      sums.row(c) += points.row(p);
      ++sizes[static_cast<std::size_t>(c)];
    }
    for (int c = 0; c < k; ++c)
      if (sizes[static_cast<std::size_t>(c)] > 0)
        result.centroids.row(c) = sums.row(c) / static_cast<double>(sizes[static_cast<std::size_t>(c)]);
  }
  return result;
}

/// Ng-Jordan-Weiss spectral clustering. Returns a cluster index in [0, k) per item.
inline std::vector<int> njw_cluster(const AffinityMatrix& affinity, int k, std::uint64_t seed) {
  const Eigen::Index n = affinity.size();
  if (k < 1) throw Error(ErrorCode::InvalidParams, "k must be at least 1");
  if (k > n) throw Error(ErrorCode::KTooLarge, "k = " + std::to_string(k) + " exceeds " + std::to_string(n) + " items");
  const RealVector delta = affinity.degrees();
  for (Eigen::Index r = 0; r < n; ++r)
    if (!(delta(r) > 0.0)) throw Error(ErrorCode::IsolatedItem, "item " + std::to_string(r) + " has no affinity");
  if (k == 1) return std::vector<int>(static_cast<std::size_t>(n), 0);

  const RealVector inv_sqrt = delta.cwiseSqrt().cwiseInverse();
  const RealMatrix m = inv_sqrt.asDiagonal() * affinity.matrix() * inv_sqrt.asDiagonal();
  const auto solver = detail::eigen_solve(0.5 * (m + m.transpose()), Eigen::ComputeEigenvectors);
  // Eigenvalues ascend; the solver returns an orthonormal basis of each tied eigenspace.
  RealMatrix x(n, k);
  for (int c = 0; c < k; ++c) x.col(c) = solver.eigenvectors().col(n - 1 - c);
  RealMatrix y = x;
  for (Eigen::Index r = 0; r < n; ++r) {
    const double norm = x.row(r).norm();
    if (norm > 0.0) y.row(r) /= norm;
  }
  return kmeans(y, k, seed).assignment;
}

enum class Label : std::int8_t { Negative = -1, Unlabeled = 0, Positive = 1 };
using LabelVector = std::vector<Label>;

enum class PropagationMode { Direct, Iterative };

struct PropagationOptions {
  double tolerance = 1e-8;
  int max_iterations = 100000;
};

struct PropagationResult {
  LabelVector labels;  ///< sgn of the scores, sgn(0) = +1; seeds unchanged
  RealVector scores;   ///< values before taking the sign
  int iterations = 0;  ///< 0 for the direct solve
};

/// Items that can reach a labelled item through positive affinities.
inline std::vector<bool> label_reachable(const AffinityMatrix& affinity, const LabelVector& labels) {
  const Eigen::Index n = affinity.size();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::queue<Eigen::Index> frontier;
  for (Eigen::Index v = 0; v < n; ++v)
    if (labels[static_cast<std::size_t>(v)] != Label::Unlabeled) {
      seen[static_cast<std::size_t>(v)] = true;
      frontier.push(v);
    }
  while (!frontier.empty()) {
    const Eigen::Index v = frontier.front();
    frontier.pop();
    for (Eigen::Index u = 0; u < n; ++u)
      if (!seen[static_cast<std::size_t>(u)] && affinity.matrix()(v, u) > 0.0) {
        seen[static_cast<std::size_t>(u)] = true;
        frontier.push(u);
      }
  }
  return seen;
}

/// Label propagation with the random-walk matrix P = Delta^{-1} A and clamped
/// seeds. Direct mode solves (I - P_uu) y_u = P_ul y_l; iterative mode repeats
/// y <- P y until the largest change drops below the tolerance.
inline PropagationResult label_propagation(const AffinityMatrix& affinity, const LabelVector& labels,
                                           PropagationMode mode, const PropagationOptions& options = {}) {
  const Eigen::Index n = affinity.size();
  if (static_cast<Eigen::Index>(labels.size()) != n) throw Error(ErrorCode::ShapeMismatch, "label vector length mismatch");

  std::vector<Eigen::Index> labelled, unlabelled;
  for (Eigen::Index v = 0; v < n; ++v)
    (labels[static_cast<std::size_t>(v)] == Label::Unlabeled ? unlabelled : labelled).push_back(v);
  if (labelled.empty()) throw Error(ErrorCode::NoLabels, "no labelled items");

  PropagationResult result;
  result.labels = labels;
  result.scores = RealVector::Zero(n);
  for (const Eigen::Index v : labelled) result.scores(v) = static_cast<double>(labels[static_cast<std::size_t>(v)]);
  if (unlabelled.empty()) return result;

  const RealVector delta = affinity.degrees();
  for (const Eigen::Index v : unlabelled)
    if (!(delta(v) > 0.0)) throw Error(ErrorCode::IsolatedItem, "item " + std::to_string(v) + " has no affinity");
  const auto reach = label_reachable(affinity, labels);
  for (const Eigen::Index v : unlabelled)
    if (!reach[static_cast<std::size_t>(v)])
      throw Error(ErrorCode::NotLabelConnected, "item " + std::to_string(v) + " cannot reach a labelled item");

  const auto nu = static_cast<Eigen::Index>(unlabelled.size());
  const auto nl = static_cast<Eigen::Index>(labelled.size());
  const RealMatrix& a = affinity.matrix();
  RealMatrix puu(nu, nu);
  RealMatrix pul(nu, nl);
  for (Eigen::Index r = 0; r < nu; ++r) {
    const Eigen::Index v = unlabelled[static_cast<std::size_t>(r)];
    for (Eigen::Index c = 0; c < nu; ++c) puu(r, c) = a(v, unlabelled[static_cast<std::size_t>(c)]) / delta(v);
    for (Eigen::Index c = 0; c < nl; ++c) pul(r, c) = a(v, labelled[static_cast<std::size_t>(c)]) / delta(v);
  }
  RealVector yl(nl);
  for (Eigen::Index c = 0; c < nl; ++c) yl(c) = result.scores(labelled[static_cast<std::size_t>(c)]);
  const RealVector rhs = pul * yl;

  RealVector yu;
  if (mode == PropagationMode::Direct) {
    const RealMatrix system = RealMatrix::Identity(nu, nu) - puu;
    Eigen::PartialPivLU<RealMatrix> lu(system);
    yu = lu.solve(rhs);
    if (!yu.allFinite()) throw Error(ErrorCode::NumericalFailure, "label system is singular");
  } else {
    const SparseRealMatrix sparse_puu = puu.sparseView();
    yu = RealVector::Zero(nu);
    for (int t = 0; t < options.max_iterations; ++t) {
      RealVector next = sparse_puu * yu + rhs;
      const double change = (next - yu).cwiseAbs().maxCoeff();
      yu = std::move(next);
      result.iterations = t + 1;
      if (change < options.tolerance) break;
    }
  }

  for (Eigen::Index r = 0; r < nu; ++r) {
    const Eigen::Index v = unlabelled[static_cast<std::size_t>(r)];
    result.scores(v) = yu(r);
    result.labels[static_cast<std::size_t>(v)] = yu(r) >= 0.0 ? Label::Positive : Label::Negative;
  }
  return result;
}

/// Fraction of items with equal assignments after the best relabelling of
/// `after` (exhaustive over permutations of k labels). Negative entries mean
/// "unassigned" and never agree.
inline double cluster_agreement(const std::vector<int>& before, const std::vector<int>& after, int k,
                                std::vector<int>* aligned = nullptr) {
  if (before.size() != after.size()) throw Error(ErrorCode::ShapeMismatch, "assignment lengths differ");
  if (k < 1 || k > 8) throw Error(ErrorCode::InvalidParams, "agreement supports 1 <= k <= 8");
  std::vector<int> perm(static_cast<std::size_t>(k));
  for (int c = 0; c < k; ++c) perm[static_cast<std::size_t>(c)] = c;
  std::size_t best = 0;
  std::vector<int> best_perm = perm;
  do {
    std::size_t hits = 0;
    for (std::size_t v = 0; v < before.size(); ++v)
      if (after[v] >= 0 && before[v] == perm[static_cast<std::size_t>(after[v])]) ++hits;
    if (hits > best) {
      best = hits;
      best_perm = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (aligned) {
    aligned->resize(after.size());
    for (std::size_t v = 0; v < after.size(); ++v)
      (*aligned)[v] = after[v] >= 0 ? best_perm[static_cast<std::size_t>(after[v])] : after[v];
  }
  return before.empty() ? 1.0 : static_cast<double>(best) / static_cast<double>(before.size());
}

}  // namespace scx
