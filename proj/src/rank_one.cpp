#include "evpos/rank_one.hpp"

#include <cmath>
#include <string>

#include "evpos/errors.hpp"
#include "evpos/linalg.hpp"

namespace evpos {

Matrix Rank1::matrix() const {
  if (phi.size() != v.size()) throw PreconditionFailed("rank-one factors must share a dimension");
  return alpha * (v * phi.transpose());
}

namespace {

void check_eigenvector(const Matrix& A, const Vector& v, Complex lambda0, const Tolerances& tol,
                       double matrix_norm) {
  const double scale = (matrix_norm + std::abs(lambda0)) * v.norm();
  const double residual = (A * v - lambda0 * v).norm();
  if (residual > tol.spectral * (scale > 1.0 ? scale : 1.0)) {
    throw NotAnEigenvector("residual " + std::to_string(residual) +
                           " too large for an eigenpair");
  }
}

}  // namespace

Matrix resolvent_rank1(const Matrix& A, Complex lambda, const Rank1& p, const Tolerances& tol) {
  validate_matrix(A);
  if (p.dim() != A.rows()) throw PreconditionFailed("rank-one dimension mismatch");
  const Matrix R = resolvent(A, lambda, tol);
  const Vector w = p.alpha * p.v;
  const Vector Rw = R * w;
  const Complex g = dual_pairing(p.phi, Rw);
  // lambda sits in the perturbed spectrum exactly when g = 1.
  if (std::abs(1.0 - g) < tol.spectral * (1.0 + std::abs(g))) {
    throw PerturbedSpectrum("lambda lies in the spectrum of the perturbed operator");
  }
  const Vector phiR = (p.phi.transpose() * R).transpose();
  return R + (Rw * phiR.transpose()) / (1.0 - g);
}

Matrix resolvent_rank1_eigen(const Matrix& A, Complex lambda, const Vector& phi, const Vector& v,
                             Complex lambda0, const Tolerances& tol) {
  validate_matrix(A);
  if (phi.size() != A.rows() || v.size() != A.rows()) {
    throw PreconditionFailed("rank-one dimension mismatch");
  }
  const double matrix_norm = operator_norm(A);
  check_eigenvector(A, v, lambda0, tol, matrix_norm);
  const Complex den = (lambda - lambda0) - dual_pairing(phi, v);
  if (std::abs(den) < tol.spectral * (1.0 + std::abs(lambda - lambda0))) {
    throw PerturbedSpectrum("lambda - lambda0 equals <phi, v>: perturbed spectrum hit");
  }
  const Matrix R = resolvent(A, lambda, tol);
  const Vector phiR = (phi.transpose() * R).transpose();
  return R + (v * phiR.transpose()) / den;
}

Matrix semigroup_rank1(const Matrix& A, double t, const Vector& phi, const Vector& v,
                       Complex lambda0, const Tolerances& tol) {
  validate_matrix(A);
  if (!(t >= 0.0) || !std::isfinite(t)) throw PreconditionFailed("requires finite t >= 0");
  if (phi.size() != A.rows() || v.size() != A.rows()) {
    throw PreconditionFailed("rank-one dimension mismatch");
  }
  const double matrix_norm = operator_norm(A);
  check_eigenvector(A, v, lambda0, tol, matrix_norm);
  const Complex mu = dual_pairing(phi, v) + lambda0;

  const EigenSystem es = eigensystem(A, tol);
  double dist = std::numeric_limits<double>::infinity();
  for (int i = 0; i < es.dim(); ++i) dist = std::min(dist, std::abs(es.eigenvalues(i) - mu));
  if (dist < tol.spectral_abs(matrix_norm)) {
    throw SpectralCollision("<phi, v> + lambda0 lies in the spectrum of A");
  }

  const Matrix E = expm(A, t, tol);
  const Matrix R = resolvent(A, mu, tol);
  Matrix shifted_exp = -E;
  shifted_exp.diagonal().array() += std::exp(t * mu);
  return E + (v * phi.transpose()) * shifted_exp * R;
}

namespace {

struct DominantVector {
  Vector v;         // sup-norm normalised, entrywise positive
  double s = 0.0;   // spectral bound
};

DominantVector dominant_positive_vector(const Matrix& A, const Tolerances& tol) {
  const PositivityReport rep = classify_semigroup(A, tol);
  if (rep.verdict != Verdict::EventuallyStronglyPositive &&
      rep.verdict != Verdict::Positive) {
    throw NotEventuallyStronglyPositive(
        "destroyer construction requires an eventually strongly positive semigroup");
  }
  const EigenSystem es = eigensystem(A, tol);
  if (es.flags[0].clustered) throw NotSimple("dominant eigenvalue lies in a cluster");
  // Dividing by the largest-magnitude component removes the phase and
  // normalises to unit sup norm in one step.
  Vector v = es.right_vectors.col(0);
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  v /= v(imax);
  const RealVector real_v = real_part_checked(v, tol.spectral_abs(1.0));
  if (real_v.minCoeff() <= tol.positivity) {
    throw NotEventuallyStronglyPositive("dominant eigenvector is not entrywise positive");
  }
  return {to_complex(real_v), es.spectral_bound()};
}

}  // namespace

Rank1 build_destroyer(const Matrix& A, double mu, const Vector& phi, const Tolerances& tol) {
  validate_matrix(A);
  if (phi.size() != A.rows()) throw PreconditionFailed("functional dimension mismatch");
  if (!is_nonneg(phi, tol.positivity) || phi.norm() == 0.0) {
    throw PreconditionFailed("requires a nonnegative, nonzero functional");
  }
  const DominantVector dom = dominant_positive_vector(A, tol);
  if (!(mu > dom.s)) throw PreconditionFailed("requires mu > s(A)");
  const Complex pairing = dual_pairing(phi, dom.v);
  if (!(pairing.real() > tol.positivity)) {
    throw ZeroPairing("functional annihilates the dominant eigenvector");
  }
  Rank1 b;
  b.phi = phi;
  b.v = dom.v;
  b.alpha = (mu - dom.s) / pairing;
  return b;
}

Vector destroyer_left_factor(const Matrix& A, double mu, const Vector& phi,
                             const Tolerances& tol) {
  const DominantVector dom = dominant_positive_vector(A, tol);
  // Shift so the spectral bound is zero, evaluate there, shift back: the
  // projection of A + B at mu equals that of the shifted pair.
  Matrix shifted_A = A;
  shifted_A.diagonal().array() -= dom.s;
  const Matrix R = resolvent(shifted_A, Complex(mu - dom.s, 0.0), tol);
  return (phi.transpose() * R).transpose();  // R^T phi
}

DestroyerScanReport destroyer_scan(const Matrix& A, std::span<const double> mu_grid,
                                   const Tolerances& tol) {
  validate_matrix(A);
  const DominantVector dom = dominant_positive_vector(A, tol);
  Matrix shifted_A = A;
  shifted_A.diagonal().array() -= dom.s;

  DestroyerScanReport report;
  const double tau = tol.positivity;
  for (double mu : mu_grid) {
    if (!(mu > 0.0)) throw PreconditionFailed("scan offsets must be positive");
    const Matrix R = resolvent(shifted_A, Complex(mu, 0.0), tol);
    const RealMatrix Rr = real_part_checked(R, tol.spectral_abs(operator_norm(R)));
    for (int j = 0; j < A.rows(); ++j) {
      DestroyerScanEntry entry;
      entry.mu = mu;
      entry.phi_index = j;
      entry.min_entry = Rr.row(j).minCoeff();  // R^T e_j is the j-th row
      entry.max_entry = Rr.row(j).maxCoeff();
      entry.mixed = entry.min_entry < -tau && entry.max_entry > tau;
      report.entries.push_back(entry);
      if (entry.mixed && !report.found) {
        report.found = true;
        report.mu = mu;
        report.phi_index = j;
      }
    }
  }
  if (report.found) {
    Vector phi = Vector::Zero(A.rows());
    phi(report.phi_index) = 1.0;
    report.destroyer = build_destroyer(A, dom.s + report.mu, phi, tol);
    report.perturbed_report = classify_semigroup(A + report.destroyer->matrix(), tol);
  }
  return report;
}

}  // namespace evpos
