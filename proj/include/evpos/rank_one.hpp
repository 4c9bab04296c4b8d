#pragma once

#include <optional>
#include <span>
#include <vector>

#include "evpos/config.hpp"
#include "evpos/positivity.hpp"
#include "evpos/types.hpp"

namespace evpos {

/// Rank-one operator x |-> alpha * <phi, x> * v with the bilinear pairing
/// <phi, x> = sum_i phi_i x_i. As a matrix: alpha * v * phi^T. Its operator
/// norm is |alpha| * ||phi|| * ||v||.
struct Rank1 {
  Vector phi;   // functional (row) factor
  Vector v;     // vector (column) factor
  Complex alpha = Complex(1.0, 0.0);

  Matrix matrix() const;
  double norm() const { return std::abs(alpha) * phi.norm() * v.norm(); }
  int dim() const { return static_cast<int>(v.size()); }
};

/// Resolvent of A + v*phi^T from the resolvent of A:
///   R + (1 - <phi, R w>)^{-1} R (w phi^T) R,     w = alpha*v.
/// lambda belongs to the perturbed spectrum exactly when <phi, R w> = 1;
/// that case throws PerturbedSpectrum (relative margin tol.spectral).
Matrix resolvent_rank1(const Matrix& A, Complex lambda, const Rank1& p,
                       const Tolerances& tol = {});

/// Special case with v an eigenvector of A (A v = lambda0 v):
///   R + ((lambda - lambda0) - <phi, v>)^{-1} (v phi^T) R.
/// Throws NotAnEigenvector on residual failure and PerturbedSpectrum when
/// lambda - lambda0 = <phi, v> up to margin.
Matrix resolvent_rank1_eigen(const Matrix& A, Complex lambda, const Vector& phi,
                             const Vector& v, Complex lambda0, const Tolerances& tol = {});

/// Closed-form semigroup of the eigenvector-adapted perturbation:
///   e^{t(A + v phi^T)} = e^{tA} + (v phi^T)(e^{t mu} I - e^{tA}) R(mu, A),
/// with mu = <phi, v> + lambda0. Throws SpectralCollision when mu lies in
/// the spectrum of A.
Matrix semigroup_rank1(const Matrix& A, double t, const Vector& phi, const Vector& v,
                       Complex lambda0, const Tolerances& tol = {});

/// Positive rank-one perturbation B = alpha * v * phi^T moving the spectral
/// bound of A to mu: v is the dominant eigenvector (entrywise positive,
/// normalised to unit sup-norm), alpha = (mu - s(A)) / <phi, v>. The
/// perturbed dominant projection is
///   Q = alpha * v * (R(mu - s(A), A - s(A)I)^T phi)^T ;
/// a mixed-sign Q certifies that A + B generates no eventually positive
/// semigroup. Requires classify_semigroup(A) = EventuallyStronglyPositive
/// and phi > 0, phi != 0.
Rank1 build_destroyer(const Matrix& A, double mu, const Vector& phi,
                      const Tolerances& tol = {});

/// Left factor q of the projection Q = alpha * v q^T above (in unshifted
/// coordinates). Q >= 0 iff q >= 0 since v >> 0 and alpha > 0.
Vector destroyer_left_factor(const Matrix& A, double mu, const Vector& phi,
                             const Tolerances& tol = {});

struct DestroyerScanEntry {
  double mu = 0.0;
  int phi_index = -1;
  double min_entry = 0.0;  // of R(mu - s(A), A - s(A)I)^T phi
  double max_entry = 0.0;
  bool mixed = false;
};

struct DestroyerScanReport {
  std::vector<DestroyerScanEntry> entries;
  bool found = false;
  double mu = 0.0;
  int phi_index = -1;
  std::optional<Rank1> destroyer;                      // built from the first hit
  std::optional<PositivityReport> perturbed_report;    // classify(A + B)
};

/// Scans coordinate functionals phi = e_i and the given mu grid (values
/// relative to s(A) = 0 after the internal shift) for a positivity-destroying
/// rank-one perturbation. A Metzler A admits none; a non-Metzler A with an
/// eventually strongly positive semigroup admits one for suitable mu.
DestroyerScanReport destroyer_scan(const Matrix& A, std::span<const double> mu_grid,
                                   const Tolerances& tol = {});

}  // namespace evpos
