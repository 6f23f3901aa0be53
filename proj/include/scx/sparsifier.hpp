#pragma once

// Sampling i-simplices by generalized effective resistance.
//
// sparsify(K, i, q, seed) keeps the (i-1)-skeleton of K and draws q
// i-simplices with replacement from p_f = w(f) R_i(f,f) / sum_g w(g) R_i(g,g).
// Every draw of f adds w(f) / (q p_f) to its weight in the output.
//
// Draws come from std::mt19937_64 seeded with `seed`; one uniform deviate per
// draw (top 53 bits) is mapped through the cumulative distribution.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "scx/complex.hpp"
#include "scx/random.hpp"
#include "scx/spectral.hpp"

namespace scx {

struct SamplingPlan {
  int dimension = 0;
  std::vector<double> resistance;     ///< R_i(f,f)
  std::vector<double> probabilities;  ///< p_f, sums to 1
  std::vector<double> cumulative;     ///< running sum of p, last entry == 1
};

struct SparsifyResult {
  SimplicialComplex complex;
  int dimension = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<std::size_t> draws;    ///< index of each drawn i-simplex, in draw order
  std::vector<double> weight_ratio;  ///< w~_f / w_f per i-simplex of the source; 0 when never drawn

  std::size_t distinct_count() const { return complex.count(dimension); }
};

inline SamplingPlan sampling_plan(const SimplicialComplex& complex, int i) {
  if (i < 1 || i > complex.dimension())
    throw Error(ErrorCode::DimensionOutOfRange,
                "sampling dimension " + std::to_string(i) + " outside [1, " + std::to_string(complex.dimension()) + "]");
  if (complex.count(i) == 0) throw Error(ErrorCode::EmptyDimension, "no simplices of dimension " + std::to_string(i));

  SamplingPlan plan;
  plan.dimension = i;
  const RealVector r = generalized_resistance(complex, i);
  const auto w = complex.weights(i);
  const std::size_t n = w.size();
  plan.resistance.assign(r.data(), r.data() + r.size());

  std::vector<double> score(n);
  for (std::size_t f = 0; f < n; ++f) score[f] = std::max(0.0, w[f] * plan.resistance[f]);
  const double total = std::accumulate(score.begin(), score.end(), 0.0);
  if (!(total > 0.0)) throw Error(ErrorCode::NumericalFailure, "all leverage scores vanish");

  plan.probabilities.resize(n);
  plan.cumulative.resize(n);
  double running = 0.0;
  for (std::size_t f = 0; f < n; ++f) {
    plan.probabilities[f] = score[f] / total;
    running += plan.probabilities[f];
    plan.cumulative[f] = running;
  }
  for (std::size_t f = n; f-- > 0;) {
    if (plan.probabilities[f] > 0.0) {
      // clamp the last reachable bucket
      std::fill(plan.cumulative.begin() + static_cast<std::ptrdiff_t>(f), plan.cumulative.end(), 1.0);
      break;
    }
  }
  return plan;
}

/// One draw from the plan: first bucket whose cumulative mass exceeds u.
/// Zero-probability buckets have zero width and are never returned.
inline std::size_t draw_simplex(const SamplingPlan& plan, Rng& rng) {
  const double u = uniform01(rng);
  const auto it = std::upper_bound(plan.cumulative.begin(), plan.cumulative.end(), u);
  return static_cast<std::size_t>(it - plan.cumulative.begin());
}

inline SparsifyResult sparsify(const SimplicialComplex& complex, const SamplingPlan& plan, std::size_t q,
                               std::uint64_t seed) {
  if (q < 1) throw Error(ErrorCode::InvalidSampleCount, "q must be at least 1");
  const int i = plan.dimension;
  if (plan.probabilities.size() != complex.count(i))
    throw Error(ErrorCode::ShapeMismatch, "sampling plan does not match the complex");

  SparsifyResult result;
  result.dimension = i;
  result.samples = q;
  result.seed = seed;
  result.draws.reserve(q);

  Rng rng(seed);
  std::vector<std::size_t> hits(plan.probabilities.size(), 0);
  for (std::size_t t = 0; t < q; ++t) {
    const std::size_t f = draw_simplex(plan, rng);
    result.draws.push_back(f);
    ++hits[f];
  }

  const auto source = complex.simplices(i);
  const auto source_w = complex.weights(i);
  result.weight_ratio.assign(hits.size(), 0.0);
  std::vector<Simplex> top;
  std::vector<double> top_w;
  for (std::size_t f = 0; f < hits.size(); ++f) {
    if (hits[f] == 0) continue;
    const double ratio = static_cast<double>(hits[f]) / (static_cast<double>(q) * plan.probabilities[f]);
    result.weight_ratio[f] = ratio;
    top.push_back(source[f]);
    top_w.push_back(static_cast<double>(hits[f]) * source_w[f] /
                    (static_cast<double>(q) * plan.probabilities[f]));
  }

  std::vector<std::vector<Simplex>> levels;
  std::vector<std::vector<double>> weights;
  for (int d = 0; d < i; ++d) {
    const auto s = complex.simplices(d);
    const auto w = complex.weights(d);
    levels.emplace_back(s.begin(), s.end());
    weights.emplace_back(w.begin(), w.end());
  }
  levels.push_back(std::move(top));
  weights.push_back(std::move(top_w));
  result.complex = SimplicialComplex(std::move(levels), std::move(weights));
  return result;
}

inline SparsifyResult sparsify(const SimplicialComplex& complex, int i, std::size_t q, std::uint64_t seed) {
  if (q < 1) throw Error(ErrorCode::InvalidSampleCount, "q must be at least 1");
  return sparsify(complex, sampling_plan(complex, i), q, seed);
}

/// epsilon = sqrt(n ln n / q), the accuracy implied by q samples when the
/// constant in the sample bound is taken as 1.
inline double epsilon_for_samples(std::size_t n_prev, std::size_t q) {
  if (n_prev < 2) throw Error(ErrorCode::DomainError, "epsilon needs at least 2 simplices in dimension i-1");
  if (q < 1) throw Error(ErrorCode::InvalidSampleCount, "q must be at least 1");
  const double n = static_cast<double>(n_prev);
  return std::sqrt(n * std::log(n) / static_cast<double>(q));
}

/// ceil(n ln n / eps^2), the inverse of epsilon_for_samples.
inline std::size_t samples_for_epsilon(std::size_t n_prev, double epsilon) {
  if (n_prev < 2) throw Error(ErrorCode::DomainError, "need at least 2 simplices in dimension i-1");
  if (!(epsilon > 0.0)) throw Error(ErrorCode::DomainError, "epsilon must be positive");
  const double n = static_cast<double>(n_prev);
  return static_cast<std::size_t>(std::ceil(n * std::log(n) / (epsilon * epsilon)));
}

/// Uniform point on the unit sphere: a normalized standard Gaussian vector.
inline RealVector random_unit_vector(Eigen::Index n, Rng& rng) {
  RealVector x(n);
  do {
    for (Eigen::Index k = 0; k < n; ++k) x(k) = standard_normal(rng);
  } while (x.norm() == 0.0);
  return x / x.norm();
}

struct ProbeCheck {
  double quadform_original = 0.0;  ///< x^T L_K x
  double quadform_sparse = 0.0;    ///< x^T L_J x
  bool within_bounds = false;      ///< (1-eps) x^T L_K x <= x^T L_J x <= (1+eps) x^T L_K x
};

struct SpectralBoundReport {
  double epsilon = 0.0;
  std::vector<ProbeCheck> probes;
  double lambda_max_original = 0.0;  ///< lambda_max(L_K)
  double lambda_max_diff = 0.0;      ///< lambda_max(L_J - L_K)
  double lower_gap = 0.0;            ///< lambda_min(L_J - (1-eps) L_K), >= 0 when the lower ordering holds
  double upper_gap = 0.0;            ///< lambda_max(L_J - (1+eps) L_K), <= 0 when the upper ordering holds
  double tolerance = 0.0;            ///< absolute slack applied to every verdict

  bool probes_pass = false;
  bool eigen_pass = false;        ///< 0 <= lambda_max(L_J - L_K) <= eps lambda_max(L_K)
  bool semidefinite_pass = false; ///< (1-eps) L_K <= L_J <= (1+eps) L_K in the Loewner order
};

inline constexpr double kBoundRelTolerance = 1e-10;

/// Compares the (i-1)-th up Laplacians of K and a sparsifier J.
inline SpectralBoundReport spectral_bound_report(const SimplicialComplex& original, const SimplicialComplex& sparse,
                                                 int i, double epsilon, std::span<const RealVector> probe_vectors) {
  if (i < 1) throw Error(ErrorCode::DimensionOutOfRange, "dimension must be at least 1");
  const auto ko = original.simplices(i - 1);
  const auto js = sparse.simplices(i - 1);
  if (!std::equal(ko.begin(), ko.end(), js.begin(), js.end()))
    throw Error(ErrorCode::ShapeMismatch, "complexes do not share their (i-1)-simplices");

  const RealMatrix lk = up_laplacian(original, i - 1);
  const RealMatrix lj = sparse.dimension() >= i ? up_laplacian(sparse, i - 1)
                                                : RealMatrix(RealMatrix::Zero(lk.rows(), lk.cols()));

  SpectralBoundReport report;
  report.epsilon = epsilon;
  report.lambda_max_original = lambda_max(lk);
  report.tolerance = kBoundRelTolerance * std::max(1.0, report.lambda_max_original);
  const double tol = report.tolerance;

  report.probes_pass = true;
  for (const RealVector& x : probe_vectors) {
    if (x.size() != lk.rows()) throw Error(ErrorCode::ShapeMismatch, "probe vector has the wrong length");
    ProbeCheck c;
    c.quadform_original = x.dot(lk * x);
    c.quadform_sparse = x.dot(lj * x);
    c.within_bounds = (1.0 - epsilon) * c.quadform_original <= c.quadform_sparse + tol &&
                      c.quadform_sparse <= (1.0 + epsilon) * c.quadform_original + tol;
    report.probes_pass = report.probes_pass && c.within_bounds;
    report.probes.push_back(c);
  }

  report.lambda_max_diff = lambda_max(lj - lk);
  report.eigen_pass = report.lambda_max_diff >= -tol && report.lambda_max_diff <= epsilon * report.lambda_max_original + tol;
  report.lower_gap = lambda_min(lj - (1.0 - epsilon) * lk);
  report.upper_gap = lambda_max(lj - (1.0 + epsilon) * lk);
  report.semidefinite_pass = report.lower_gap >= -tol && report.upper_gap <= tol;
  return report;
}

}  // namespace scx
