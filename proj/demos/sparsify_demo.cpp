// Sparsify the triangles of a complete 2-complex and check the spectral band.
//
//   sparsify_demo [n] [epsilon] [seed]

#include <cstdio>
#include <cstdlib>

#include "scx/scx.hpp"

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 10;
  const double eps = argc > 2 ? std::atof(argv[2]) : 0.9;
  const std::uint64_t seed = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 1;

  const auto k = scx::datasets::complete_complex2(n);
  const std::size_t q = scx::samples_for_epsilon(k.count(1), eps);
  const auto j = scx::sparsify(k, 2, q, seed);

  scx::Rng rng(seed);
  std::vector<scx::RealVector> probes;
  for (int t = 0; t < 5; ++t) probes.push_back(scx::random_unit_vector(static_cast<Eigen::Index>(k.count(1)), rng));
  const auto report = scx::spectral_bound_report(k, j.complex, 2, eps, probes);

  std::printf("n_1 = %zu, n_2 = %zu, q = %zu, kept %zu triangles\n", k.count(1), k.count(2), q, j.distinct_count());
  std::printf("lambda_max(L_K) = %.6f, lambda_max(L_J - L_K) = %.6f, eps * lambda_max = %.6f\n",
              report.lambda_max_original, report.lambda_max_diff, eps * report.lambda_max_original);
  std::printf("probes %s, semidefinite band %s\n", report.probes_pass ? "inside" : "outside",
              report.semidefinite_pass ? "holds" : "fails");
  return 0;
}
