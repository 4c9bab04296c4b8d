#include "evpos/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "evpos/errors.hpp"

namespace evpos {

namespace {

Matrix shifted(const Matrix& A, Complex lambda) {
  Matrix M = -A;
  M.diagonal().array() += lambda;
  return M;  // lambda*I - A
}

}  // namespace

Matrix resolvent(const Matrix& A, Complex lambda, const Tolerances& tol) {
  validate_matrix(A);
  const Matrix M = shifted(A, lambda);
  Eigen::PartialPivLU<Matrix> lu(M);
  const double rcond = lu.rcond();
  if (!(rcond > tol.solve_rtol * 1e-2)) {
    throw SingularResolvent("lambda is numerically in the spectrum (rcond = " +
                            std::to_string(rcond) + ")");
  }
  Matrix X = lu.solve(Matrix::Identity(A.rows(), A.cols()));
  if (!X.allFinite()) {
    throw SingularResolvent("resolvent solve produced non-finite entries");
  }
  return X;
}

double operator_norm(const Matrix& M) {
  if (M.size() == 0) return 0.0;
  return M.jacobiSvd().singularValues()(0);
}

double operator_norm(const RealMatrix& M) {
  if (M.size() == 0) return 0.0;
  return M.jacobiSvd().singularValues()(0);
}

// ---------------------------------------------------------------------------
// Matrix exponential: Pade-13 with scaling and squaring.
// ---------------------------------------------------------------------------

namespace {

constexpr double kPade13Theta = 5.371920351148152;

constexpr double kPade13Coeffs[] = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};

Matrix expm_pade13(const Matrix& M) {
  const auto n = M.rows();
  const auto& b = kPade13Coeffs;
  const Matrix I = Matrix::Identity(n, n);
  const Matrix M2 = M * M;
  const Matrix M4 = M2 * M2;
  const Matrix M6 = M4 * M2;
  const Matrix U =
      M * (M6 * (b[13] * M6 + b[11] * M4 + b[9] * M2) + b[7] * M6 + b[5] * M4 + b[3] * M2 + b[1] * I);
  const Matrix V =
      M6 * (b[12] * M6 + b[10] * M4 + b[8] * M2) + b[6] * M6 + b[4] * M4 + b[2] * M2 + b[0] * I;
  Eigen::PartialPivLU<Matrix> lu(V - U);
  return lu.solve(V + U);
}

}  // namespace

Matrix expm(const Matrix& A, double t, const Tolerances& tol) {
  validate_matrix(A);
  if (!std::isfinite(t) || t < 0.0) {
    throw PreconditionFailed("expm requires a finite time t >= 0");
  }
  Matrix M = t * A;
  const double norm1 = M.cwiseAbs().colwise().sum().maxCoeff();
  if (norm1 > tol.expm_norm_cap) {
    throw Overflow("||tA||_1 = " + std::to_string(norm1) + " exceeds the cap " +
                   std::to_string(tol.expm_norm_cap));
  }
  int squarings = 0;
  if (norm1 > kPade13Theta) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / kPade13Theta)));
    M /= std::pow(2.0, squarings);
  }
  Matrix F = expm_pade13(M);
  for (int k = 0; k < squarings; ++k) F = F * F;
  if (!F.allFinite()) {
    throw Overflow("matrix exponential left the representable range");
  }
  return F;
}

Matrix expm_via_eigensystem(const Matrix& A, double t, const Tolerances& tol) {
  validate_matrix(A);
  if (!std::isfinite(t) || t < 0.0) {
    throw PreconditionFailed("expm requires a finite time t >= 0");
  }
  const EigenSystem es = eigensystem(A, tol);
  for (const auto& f : es.flags) {
    if (f.pairing < 1e-8) {
      throw ConvergenceFailure("eigenbasis too ill-conditioned for the exponential route");
    }
  }
  Eigen::PartialPivLU<Matrix> lu(es.right_vectors);
  Vector scale = (t * es.eigenvalues.array()).exp();
  Matrix F = es.right_vectors * scale.asDiagonal() * lu.solve(Matrix::Identity(A.rows(), A.cols()));
  if (!F.allFinite()) {
    throw Overflow("matrix exponential left the representable range");
  }
  return F;
}

// ---------------------------------------------------------------------------
// Eigensystem with matched left/right vectors.
// ---------------------------------------------------------------------------

double EigenSystem::dominance_gap() const {
  if (dim() < 2) return std::numeric_limits<double>::infinity();
  return eigenvalues(0).real() - eigenvalues(1).real();
}

Matrix EigenSystem::projection(int i) const {
  if (!is_simple(i)) {
    throw NotSimple("eigenvalue " + std::to_string(i) + " lies inside a cluster");
  }
  const Vector v = right_vectors.col(i);
  const Vector w = left_vectors.col(i);
  const Complex pairing = w.adjoint() * v;
  if (std::abs(pairing) < 1e-14) {
    throw ConvergenceFailure("defective eigenpair: left/right pairing vanishes");
  }
  return (v * w.adjoint()) / pairing;
}

int EigenSystem::index_near(Complex z, double dist_tol) const {
  int best = -1;
  double best_dist = std::numeric_limits<double>::infinity();
  for (int i = 0; i < dim(); ++i) {
    const double d = std::abs(eigenvalues(i) - z);
    if (d < best_dist) {
      best_dist = d;
      best = i;
    }
  }
  if (best < 0 || best_dist > dist_tol) {
    throw NotSimple("no eigenvalue within tolerance of the requested value");
  }
  return best;
}

Matrix EigenSystem::reduced_resolvent(const Matrix& A, int i) const {
  // (lambda_i I - A + theta P)^{-1} (I - P) agrees with the holomorphic part
  // for any theta != 0 because the shift acts only on the range of P.
  const Matrix P = projection(i);
  const double theta = matrix_norm > 1.0 ? matrix_norm : 1.0;
  Matrix M = -A;
  M.diagonal().array() += eigenvalues(i);
  M += theta * P;
  Eigen::PartialPivLU<Matrix> lu(M);
  return lu.solve(Matrix::Identity(A.rows(), A.cols()) - P);
}

EigenSystem eigensystem(const Matrix& A, const Tolerances& tol) {
  validate_matrix(A);
  const auto n = A.rows();
  Eigen::ComplexEigenSolver<Matrix> solver(A, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("complex eigensolver did not converge");
  }

  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  const Vector& raw = solver.eigenvalues();
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (raw(a).real() != raw(b).real()) return raw(a).real() > raw(b).real();
    return raw(a).imag() > raw(b).imag();
  });

  EigenSystem es;
  es.matrix_norm = operator_norm(A);
  es.eigenvalues.resize(n);
  es.right_vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    es.eigenvalues(i) = raw(order[static_cast<size_t>(i)]);
    es.right_vectors.col(i) = solver.eigenvectors().col(order[static_cast<size_t>(i)]).normalized();
  }

  // Left vectors from the inverse of the right-vector matrix: the rows of
  // V^{-1} satisfy row_i A = lambda_i row_i, so w_i = conj(row_i) pairs with
  // v_i and is biorthogonal to the others by construction.
  Eigen::FullPivLU<Matrix> lu(es.right_vectors);
  es.left_vectors.resize(n, n);
  if (lu.isInvertible()) {
    Matrix Vinv = lu.inverse();
    for (Eigen::Index i = 0; i < n; ++i) {
      es.left_vectors.col(i) = Vinv.row(i).conjugate().transpose().normalized();
    }
  } else {
    // Defective basis; fall back to eigenvectors of the adjoint matched by
    // eigenvalue. The pairing flags expose the defect.
    Eigen::ComplexEigenSolver<Matrix> adj(A.adjoint(), true);
    if (adj.info() != Eigen::Success) {
      throw ConvergenceFailure("adjoint eigensolver did not converge");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      int best = 0;
      double bd = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < n; ++j) {
        const double d = std::abs(std::conj(adj.eigenvalues()(j)) - es.eigenvalues(i));
        if (d < bd) {
          bd = d;
          best = static_cast<int>(j);
        }
      }
      es.left_vectors.col(i) = adj.eigenvectors().col(best).normalized();
    }
  }

  // Cluster detection: union of eigenvalue pairs closer than the clustering
  // tolerance (transitive closure over the sorted list).
  const double cluster_tol = tol.cluster_abs(es.matrix_norm);
  es.flags.assign(static_cast<size_t>(n), EigenPairFlags{});
  std::vector<int> cluster_of(static_cast<size_t>(n), -1);
  int next_cluster = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (cluster_of[static_cast<size_t>(i)] < 0) cluster_of[static_cast<size_t>(i)] = next_cluster++;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (std::abs(es.eigenvalues(i) - es.eigenvalues(j)) <= cluster_tol) {
        cluster_of[static_cast<size_t>(j)] = cluster_of[static_cast<size_t>(i)];
      }
    }
  }
  std::vector<int> sizes(static_cast<size_t>(next_cluster), 0);
  for (int c : cluster_of) sizes[static_cast<size_t>(c)]++;
  for (Eigen::Index i = 0; i < n; ++i) {
    auto& f = es.flags[static_cast<size_t>(i)];
    f.cluster_id = cluster_of[static_cast<size_t>(i)];
    f.clustered = sizes[static_cast<size_t>(f.cluster_id)] > 1;
    f.pairing = std::abs(Complex(es.left_vectors.col(i).adjoint() * es.right_vectors.col(i)));
  }
  return es;
}

Matrix spectral_projection(const Matrix& A, Complex center, double radius, int n_nodes,
                           const Tolerances& tol) {
  validate_matrix(A);
  if (radius <= 0.0) throw PreconditionFailed("contour radius must be positive");
  if (n_nodes < 8) throw PreconditionFailed("contour needs at least 8 nodes");

  const EigenSystem es = eigensystem(A, tol);
  const double guard = tol.cluster_abs(es.matrix_norm > radius ? es.matrix_norm : radius);
  for (int i = 0; i < es.dim(); ++i) {
    const double d = std::abs(std::abs(es.eigenvalues(i) - center) - radius);
    if (d < guard) {
      throw ContourTooClose("eigenvalue within " + std::to_string(d) + " of the contour");
    }
  }

  Matrix P = Matrix::Zero(A.rows(), A.cols());
  for (int k = 0; k < n_nodes; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / n_nodes;
    const Complex offset = radius * Complex(std::cos(theta), std::sin(theta));
    P += resolvent(A, center + offset, tol) * offset;
  }
  return P / static_cast<double>(n_nodes);
}

}  // namespace evpos
