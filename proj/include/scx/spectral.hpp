#pragma once

// Up Laplacians, the symmetric pseudoinverse, generalized effective resistance
// and the leverage projection.
//
// The weight of the domain dimension is always the identity: up_laplacian(K, i)
// is D_i^T W_{i+1} D_i and refuses complexes whose i-simplices carry weights
// other than 1.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "scx/complex.hpp"

namespace scx {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

namespace detail {

inline void require_unit_weights(const SimplicialComplex& complex, int p) {
  for (const double w : complex.weights(p))
    if (w != 1.0)
      throw Error(ErrorCode::NonUnitInnerWeight,
                  "dimension " + std::to_string(p) + " must carry unit weights (found " + std::to_string(w) + ")");
}

inline SparseRealMatrix diagonal_weights(const SimplicialComplex& complex, int p) {
  const auto w = complex.weights(p);
  SparseRealMatrix m(static_cast<Eigen::Index>(w.size()), static_cast<Eigen::Index>(w.size()));
  m.reserve(Eigen::VectorXi::Constant(static_cast<Eigen::Index>(w.size()), 1));
  for (std::size_t j = 0; j < w.size(); ++j)
    m.insert(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = w[j];
  m.makeCompressed();
  return m;
}

inline Eigen::SelfAdjointEigenSolver<RealMatrix> eigen_solve(const RealMatrix& m, int options) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(m, options);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::NumericalFailure, "eigendecomposition did not converge");
  return solver;
}

}  // namespace detail

/// Symmetric to 1e-12 relative to the largest entry.
inline bool is_symmetric(const RealMatrix& m, double rel_tol = 1e-12) {
  if (m.rows() != m.cols()) return false;
  if (m.size() == 0) return true;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

inline void require_symmetric(const RealMatrix& m) {
  if (!is_symmetric(m))
    throw Error(ErrorCode::NonSymmetricInput,
                std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " matrix is not symmetric");
}

inline SparseRealMatrix up_laplacian_sparse(const SimplicialComplex& complex, int i) {
  if (i < 0 || i >= complex.dimension())
    throw Error(ErrorCode::DimensionOutOfRange,
                "up Laplacian dimension " + std::to_string(i) + " outside [0, " +
                    std::to_string(complex.dimension() - 1) + "]");
  detail::require_unit_weights(complex, i);
  const SparseRealMatrix d = incidence_matrix(complex, i);
  const SparseRealMatrix w = detail::diagonal_weights(complex, i + 1);
  SparseRealMatrix l = SparseRealMatrix(d.transpose()) * w * d;
  l.makeCompressed();
  return l;
}

/// L_{K,i} = D_i^T W_{i+1} D_i, an n_i x n_i symmetric PSD matrix.
inline RealMatrix up_laplacian(const SimplicialComplex& complex, int i) {
  return RealMatrix(up_laplacian_sparse(complex, i));
}

/// Moore-Penrose pseudoinverse of a symmetric matrix through its
/// eigendecomposition. Eigenvalues with |lambda| <= n * eps * max|lambda| are
/// treated as zero.
inline RealMatrix pseudoinverse(const RealMatrix& m) {
  require_symmetric(m);
  if (m.size() == 0) return m;
  const RealMatrix sym = 0.5 * (m + m.transpose());
  const auto solver = detail::eigen_solve(sym, Eigen::ComputeEigenvectors);
  const RealVector& lambda = solver.eigenvalues();
  const double sigma_max = lambda.cwiseAbs().maxCoeff();
  const double cutoff =
      static_cast<double>(std::max(m.rows(), m.cols())) * std::numeric_limits<double>::epsilon() * sigma_max;
  RealVector inv = RealVector::Zero(lambda.size());
  for (Eigen::Index k = 0; k < lambda.size(); ++k)
    if (std::abs(lambda(k)) > cutoff) inv(k) = 1.0 / lambda(k);
  const RealMatrix& v = solver.eigenvectors();
  return v * inv.asDiagonal() * v.transpose();
}

/// Rank by the same cutoff rule the pseudoinverse uses, applied to singular values.
inline Eigen::Index numerical_rank(const RealMatrix& m) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<RealMatrix> svd(m);
  const RealVector& s = svd.singularValues();
  const double cutoff = static_cast<double>(std::max(m.rows(), m.cols())) *
                        std::numeric_limits<double>::epsilon() * s(0);
  return (s.array() > cutoff).count();
}

inline double lambda_max(const RealMatrix& m) {
  require_symmetric(m);
  if (m.size() == 0) return 0.0;
  return detail::eigen_solve(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
}

inline double lambda_min(const RealMatrix& m) {
  require_symmetric(m);
  if (m.size() == 0) return 0.0;
  return detail::eigen_solve(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
}

/// Orthonormal basis of the orthogonal complement of the trivial eigenspace of
/// L_{K,i}: the constants for i = 0, image(D_{i-1}) for i >= 1.
inline RealMatrix nontrivial_subspace(const SimplicialComplex& complex, int i) {
  const auto n = static_cast<Eigen::Index>(complex.count(i));
  RealMatrix trivial = (i == 0) ? RealMatrix(RealMatrix::Ones(n, 1)) : RealMatrix(incidence_matrix(complex, i - 1));
  const RealMatrix gram = trivial * trivial.transpose();
  const auto solver = detail::eigen_solve(gram, Eigen::ComputeEigenvectors);
  const RealVector& lambda = solver.eigenvalues();
  const double cutoff = static_cast<double>(n) * std::numeric_limits<double>::epsilon() *
                        std::max(1.0, lambda.cwiseAbs().maxCoeff()) * 16.0;
  Eigen::Index keep = 0;
  while (keep < n && lambda(keep) <= cutoff) ++keep;  // ascending order
  return solver.eigenvectors().leftCols(keep);
}

/// Smallest eigenvalue of L_{K,i} restricted to nontrivial_subspace(K, i).
inline double lambda1_nontrivial(const SimplicialComplex& complex, int i) {
  const RealMatrix l = up_laplacian(complex, i);
  const RealMatrix q = nontrivial_subspace(complex, i);
  if (q.cols() == 0)
    throw Error(ErrorCode::DomainError, "dimension " + std::to_string(i) + " has no non-trivial eigenvalue");
  const RealMatrix restricted = q.transpose() * l * q;
  return detail::eigen_solve(0.5 * (restricted + restricted.transpose()), Eigen::EigenvaluesOnly)
      .eigenvalues()
      .minCoeff();
}

/// diag(R_i) with R_i = D_{i-1} (L_{K,i-1})^+ D_{i-1}^T.
inline RealVector generalized_resistance(const SimplicialComplex& complex, int i) {
  if (i < 1 || i > complex.dimension())
    throw Error(ErrorCode::DimensionOutOfRange,
                "resistance dimension " + std::to_string(i) + " outside [1, " + std::to_string(complex.dimension()) + "]");
  const RealMatrix lplus = pseudoinverse(up_laplacian(complex, i - 1));
  const Eigen::SparseMatrix<double, Eigen::RowMajor> d = incidence_matrix(complex, i - 1);
  RealVector r(d.rows());
  for (Eigen::Index f = 0; f < d.rows(); ++f) {
    double acc = 0.0;
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator a(d, f); a; ++a)
      for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator b(d, f); b; ++b)
        acc += a.value() * b.value() * lplus(a.col(), b.col());
    r(f) = acc;
  }
  return r;
}

/// Pi = W_i^{1/2} R_i W_i^{1/2}, the orthogonal projection onto the range of
/// W_i^{1/2} D_{i-1}. Its diagonal holds the leverage scores w(f) R_i(f,f).
inline RealMatrix leverage_projection(const SimplicialComplex& complex, int i) {
  if (i < 1 || i > complex.dimension())
    throw Error(ErrorCode::DimensionOutOfRange,
                "projection dimension " + std::to_string(i) + " outside [1, " + std::to_string(complex.dimension()) + "]");
  const RealMatrix lplus = pseudoinverse(up_laplacian(complex, i - 1));
  const RealMatrix d(incidence_matrix(complex, i - 1));
  const auto w = complex.weights(i);
  RealVector sqrt_w(static_cast<Eigen::Index>(w.size()));
  for (std::size_t j = 0; j < w.size(); ++j) sqrt_w(static_cast<Eigen::Index>(j)) = std::sqrt(w[j]);
  const RealMatrix phi = sqrt_w.asDiagonal() * d;
  return phi * lplus * phi.transpose();
}

}  // namespace scx
