#pragma once

// Experiment drivers. Each run is a pure function of its configuration: every
// sparsification draws from derive_seed(seed, {simulation, instance, q}), so
// the output does not depend on the number of worker threads.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "scx/config.hpp"
#include "scx/datasets.hpp"
#include "scx/io.hpp"
#include "scx/learning.hpp"
#include "scx/sparsifier.hpp"
#include "scx/spectral.hpp"

namespace scx {

inline constexpr std::uint64_t kProbeStream = 0x70726f6265ULL;
inline constexpr std::uint64_t kClusterStream = 0x6b6d65616e73ULL;

inline SimplicialComplex load_dataset(const DatasetSpec& spec) {
  if (spec.kind == "file") return load_complex(spec.path);
  return datasets::generate(spec.kind, spec.params);
}

/// Explicit schedule, or log-spaced integers in [schedule_min, schedule_max]
/// (default max 2 n_i), rounded and deduplicated.
inline std::vector<std::size_t> resolve_schedule(const ExperimentConfig& config, std::size_t n_top) {
  if (!config.schedule.empty()) return config.schedule;
  const std::size_t lo = std::max<std::size_t>(1, config.schedule_min);
  const std::size_t hi = config.schedule_max ? config.schedule_max : 2 * n_top;
  if (hi < lo) throw Error(ErrorCode::InvalidConfig, "schedule_max is below schedule_min");
  std::vector<std::size_t> out;
  const std::size_t points = config.schedule_points;
  for (std::size_t j = 0; j < points; ++j) {
    const double t = points == 1 ? 1.0 : static_cast<double>(j) / static_cast<double>(points - 1);
    const double q = std::exp(std::log(static_cast<double>(lo)) * (1.0 - t) + std::log(static_cast<double>(hi)) * t);
    const auto rounded = static_cast<std::size_t>(std::llround(q));
    if (out.empty() || rounded > out.back()) out.push_back(rounded);
  }
  return out;
}

/// Runs fn(task) for task in [0, count) on up to `threads` workers.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t t = 0; t < count; ++t) fn(t);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t t = next++; t < count; t = next++) fn(t);
    });
  for (auto& th : pool) th.join();
}

namespace detail {

inline std::string csv_number(double x) {
  if (std::isnan(x)) return "";
  return format_double(x);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Spectrum preservation

struct SpectrumRow {
  int simulation = 0;
  std::size_t q = 0;
  double epsilon = 0.0;
  double quadform_original = 0.0;        ///< x^T L_K x for this simulation's probe
  double mean_quadform_sparse = 0.0;     ///< mean over instances of x^T L_J x
  double lower_bound = 0.0;              ///< (1 - eps) x^T L_K x
  double upper_bound = 0.0;              ///< (1 + eps) x^T L_K x
  double mean_lambda_max_diff = NAN;     ///< mean lambda_max(L_J - L_K); NaN when not computed
  double eigen_upper = 0.0;              ///< eps lambda_max(L_K)
  std::uint64_t seed = 0;                ///< simulation seed
};

inline std::vector<SpectrumRow> run_spectrum(const ExperimentConfig& config, const SimplicialComplex& complex) {
  validate(config);
  const int i = config.dimension;
  const RealMatrix lk = up_laplacian(complex, i - 1);
  const double lk_max = lambda_max(lk);
  const std::size_t n_prev = complex.count(i - 1);
  const auto schedule = resolve_schedule(config, complex.count(i));
  const SamplingPlan plan = sampling_plan(complex, i);

  const auto sims = static_cast<std::size_t>(config.simulations);
  const auto inst = static_cast<std::size_t>(config.instances);
  const std::size_t eig_sims =
      config.eigen_simulations < 0 ? sims : std::min<std::size_t>(sims, static_cast<std::size_t>(config.eigen_simulations));

  std::vector<RealVector> probes(sims);
  for (std::size_t s = 0; s < sims; ++s) {
    Rng rng(derive_seed(config.seed, {kProbeStream, s}));
    probes[s] = random_unit_vector(lk.rows(), rng);
  }

  // quad[s][q][t], diff[s][q][t]
  const std::size_t nq = schedule.size();
  std::vector<double> quad(sims * nq * inst, 0.0);
  std::vector<double> diff(sims * nq * inst, NAN);
  parallel_for(sims * inst, config.threads, [&](std::size_t task) {
    const std::size_t s = task / inst;
    const std::size_t t = task % inst;
    for (std::size_t qi = 0; qi < nq; ++qi) {
      const std::size_t q = schedule[qi];
      const auto result = sparsify(complex, plan, q, derive_seed(config.seed, {s, t, q}));
      const RealMatrix lj = up_laplacian(result.complex, i - 1);
      const std::size_t slot = (s * nq + qi) * inst + t;
      quad[slot] = probes[s].dot(lj * probes[s]);
      if (s < eig_sims) diff[slot] = lambda_max(lj - lk);
    }
  });

  std::vector<SpectrumRow> rows;
  for (std::size_t s = 0; s < sims; ++s) {
    const double xlx = probes[s].dot(lk * probes[s]);
    for (std::size_t qi = 0; qi < nq; ++qi) {
      SpectrumRow row;
      row.simulation = static_cast<int>(s);
      row.q = schedule[qi];
      row.epsilon = epsilon_for_samples(n_prev, row.q);
      row.quadform_original = xlx;
      double qsum = 0.0, dsum = 0.0;
      for (std::size_t t = 0; t < inst; ++t) {
        qsum += quad[(s * nq + qi) * inst + t];
        dsum += diff[(s * nq + qi) * inst + t];
      }
      row.mean_quadform_sparse = qsum / static_cast<double>(inst);
      row.mean_lambda_max_diff = s < eig_sims ? dsum / static_cast<double>(inst) : NAN;
      row.lower_bound = (1.0 - row.epsilon) * xlx;
      row.upper_bound = (1.0 + row.epsilon) * xlx;
      row.eigen_upper = row.epsilon * lk_max;
      row.seed = derive_seed(config.seed, {s});
      rows.push_back(row);
    }
  }
  return rows;
}

inline void write_spectrum_csv(std::ostream& out, const std::vector<SpectrumRow>& rows) {
  out << "simulation,q,epsilon,quadform_K,mean_quadform_J,lower_bound,upper_bound,mean_lambda_max_diff,eigen_upper,seed\n";
  for (const auto& r : rows)
    out << r.simulation << ',' << r.q << ',' << detail::csv_number(r.epsilon) << ','
        << detail::csv_number(r.quadform_original) << ',' << detail::csv_number(r.mean_quadform_sparse) << ','
        << detail::csv_number(r.lower_bound) << ',' << detail::csv_number(r.upper_bound) << ','
        << detail::csv_number(r.mean_lambda_max_diff) << ',' << detail::csv_number(r.eigen_upper) << ',' << r.seed
        << '\n';
}

// ---------------------------------------------------------------------------
// Sparsity scaling

struct ScalingRow {
  std::size_t q = 0;
  int instance = 0;
  std::size_t distinct = 0;
};

inline std::vector<ScalingRow> run_scaling(const ExperimentConfig& config, const SimplicialComplex& complex) {
  validate(config);
  const int i = config.dimension;
  const auto schedule = resolve_schedule(config, complex.count(i));
  const SamplingPlan plan = sampling_plan(complex, i);
  const auto inst = static_cast<std::size_t>(config.instances);
  std::vector<ScalingRow> rows(schedule.size() * inst);
  parallel_for(rows.size(), config.threads, [&](std::size_t task) {
    const std::size_t qi = task / inst;
    const std::size_t t = task % inst;
    const std::size_t q = schedule[qi];
    const auto result = sparsify(complex, plan, q, derive_seed(config.seed, {std::size_t{0}, t, q}));
    rows[task] = ScalingRow{q, static_cast<int>(t), result.distinct_count()};
  });
  return rows;
}

inline void write_scaling_csv(std::ostream& out, const std::vector<ScalingRow>& rows) {
  out << "q,instance,distinct_simplices_in_J\n";
  for (const auto& r : rows) out << r.q << ',' << r.instance << ',' << r.distinct << '\n';
}

// ---------------------------------------------------------------------------
// Learning before and after sparsification

/// Vertex affinity when sparsifying edges, edge affinity when sparsifying triangles.
inline AffinityMatrix affinity_for_dimension(const SimplicialComplex& complex, int i) {
  if (i == 1) return vertex_affinity(complex);
  if (i == 2) return edge_affinity(complex);
  throw Error(ErrorCode::InvalidConfig, "learning experiments support dimension 1 or 2");
}

inline std::size_t resolve_samples(const ExperimentConfig& config, std::size_t n_top) {
  if (config.samples > 0) return config.samples;
  if (config.sample_fraction > 0.0)
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(config.sample_fraction * static_cast<double>(n_top))));
  throw Error(ErrorCode::InvalidConfig, "set samples or sample_fraction");
}

struct ComparisonResult {
  std::vector<int> before;
  std::vector<int> after;  ///< relabelled to match `before` for clustering
  std::vector<bool> agree;
  double agreement = 0.0;
  std::size_t samples = 0;
};

namespace detail {

inline AffinityMatrix restrict_affinity(const AffinityMatrix& a, const std::vector<Eigen::Index>& keep) {
  const auto n = static_cast<Eigen::Index>(keep.size());
  RealMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = a.matrix()(keep[static_cast<std::size_t>(r)], keep[static_cast<std::size_t>(c)]);
  return AffinityMatrix(std::move(m));
}

/// NJW over the non-isolated items; isolated items get -1.
inline std::vector<int> cluster_filtered(const AffinityMatrix& a, int k, std::uint64_t seed) {
  const RealVector delta = a.degrees();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index v = 0; v < a.size(); ++v)
    if (delta(v) > 0.0) keep.push_back(v);
  std::vector<int> out(static_cast<std::size_t>(a.size()), -1);
  const auto inner = njw_cluster(restrict_affinity(a, keep), k, seed);
  for (std::size_t j = 0; j < keep.size(); ++j) out[static_cast<std::size_t>(keep[j])] = inner[j];
  return out;
}

/// Propagation over the items that reach a seed; the rest get 0.
inline std::vector<int> propagate_filtered(const AffinityMatrix& a, const LabelVector& labels, PropagationMode mode) {
  const auto reach = label_reachable(a, labels);
  std::vector<Eigen::Index> keep;
  LabelVector inner_labels;
  for (Eigen::Index v = 0; v < a.size(); ++v)
    if (reach[static_cast<std::size_t>(v)]) {
      keep.push_back(v);
      inner_labels.push_back(labels[static_cast<std::size_t>(v)]);
    }
  std::vector<int> out(static_cast<std::size_t>(a.size()), 0);
  const auto result = label_propagation(restrict_affinity(a, keep), inner_labels, mode);
  for (std::size_t j = 0; j < keep.size(); ++j) out[static_cast<std::size_t>(keep[j])] = static_cast<int>(result.labels[j]);
  return out;
}

}  // namespace detail

inline ComparisonResult compare_clustering(const SimplicialComplex& complex, int i, int k, std::size_t q,
                                           std::uint64_t seed) {
  const std::uint64_t cluster_seed = derive_seed(seed, {kClusterStream});
  ComparisonResult out;
  out.samples = q;
  out.before = detail::cluster_filtered(affinity_for_dimension(complex, i), k, cluster_seed);
  const auto sparse = sparsify(complex, i, q, seed);
  const auto raw_after = detail::cluster_filtered(affinity_for_dimension(sparse.complex, i), k, cluster_seed);
  out.agreement = cluster_agreement(out.before, raw_after, k, &out.after);
  for (std::size_t v = 0; v < out.before.size(); ++v) out.agree.push_back(out.after[v] >= 0 && out.before[v] == out.after[v]);
  return out;
}

inline LabelVector make_labels(std::size_t n, const std::vector<std::pair<std::size_t, Label>>& seeds) {
  if (seeds.empty()) throw Error(ErrorCode::NoLabels, "no labelled items configured");
  LabelVector labels(n, Label::Unlabeled);
  for (const auto& [index, label] : seeds) {
    if (index >= n) throw Error(ErrorCode::InvalidConfig, "labelled item " + std::to_string(index) + " out of range");
    labels[index] = label;
  }
  return labels;
}

inline ComparisonResult compare_labels(const SimplicialComplex& complex, int i,
                                       const std::vector<std::pair<std::size_t, Label>>& seeds, std::size_t q,
                                       std::uint64_t seed, PropagationMode mode) {
  const AffinityMatrix before = affinity_for_dimension(complex, i);
  const LabelVector labels = make_labels(static_cast<std::size_t>(before.size()), seeds);
  ComparisonResult out;
  out.samples = q;
  out.before = detail::propagate_filtered(before, labels, mode);
  const auto sparse = sparsify(complex, i, q, seed);
  out.after = detail::propagate_filtered(affinity_for_dimension(sparse.complex, i), labels, mode);
  std::size_t hits = 0;
  for (std::size_t v = 0; v < out.before.size(); ++v) {
    out.agree.push_back(out.after[v] != 0 && out.before[v] == out.after[v]);
    hits += out.agree.back() ? 1 : 0;
  }
  out.agreement = out.before.empty() ? 1.0 : static_cast<double>(hits) / static_cast<double>(out.before.size());
  return out;
}

inline ComparisonResult run_clustering(const ExperimentConfig& config, const SimplicialComplex& complex) {
  validate(config);
  return compare_clustering(complex, config.dimension, config.clusters,
                            resolve_samples(config, complex.count(config.dimension)), config.seed);
}

inline ComparisonResult run_labels(const ExperimentConfig& config, const SimplicialComplex& complex) {
  validate(config);
  return compare_labels(complex, config.dimension, config.labeled,
                        resolve_samples(config, complex.count(config.dimension)), config.seed, config.mode);
}

inline void write_comparison_csv(std::ostream& out, const ComparisonResult& r) {
  out << "item_index,assignment_before,assignment_after,agree\n";
  for (std::size_t v = 0; v < r.before.size(); ++v)
    out << v << ',' << r.before[v] << ',' << r.after[v] << ',' << (r.agree[v] ? 1 : 0) << '\n';
  out << "agreement,,," << detail::format_double(r.agreement) << '\n';
}

}  // namespace scx
