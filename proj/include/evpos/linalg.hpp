#pragma once

#include <vector>

#include "evpos/config.hpp"
#include "evpos/types.hpp"

namespace evpos {

/// R(lambda, A) = (lambda*I - A)^{-1} by LU with partial pivoting.
/// Throws SingularResolvent when lambda is numerically in the spectrum.
Matrix resolvent(const Matrix& A, Complex lambda, const Tolerances& tol = {});

/// e^{tA} by Pade-13 approximation with scaling and squaring.
/// Throws Overflow when ||tA||_1 exceeds tol.expm_norm_cap or the result
/// leaves the representable range.
Matrix expm(const Matrix& A, double t, const Tolerances& tol = {});

/// Second, independent route: V diag(e^{t lambda_i}) V^{-1}. Used to
/// cross-check the squaring route; refuses defective eigenbases.
Matrix expm_via_eigensystem(const Matrix& A, double t, const Tolerances& tol = {});

/// Largest singular value.
double operator_norm(const Matrix& M);
double operator_norm(const RealMatrix& M);

struct EigenPairFlags {
  int cluster_id = 0;      // eigenvalues closer than cluster tolerance share an id
  bool clustered = false;
  double pairing = 0.0;    // |<w_i, v_i>| for unit left/right vectors; small => defective
};

/// Full eigendecomposition with matched left and right eigenvectors.
///
/// Eigenvalues are sorted by descending real part (ties by descending
/// imaginary part). Right vectors are unit columns of V; left vectors are
/// the conjugated rows of V^{-1}, normalised, so that pairs satisfy
/// A^H w_i = conj(lambda_i) w_i and biorthogonality comes out exactly.
struct EigenSystem {
  Vector eigenvalues;
  Matrix right_vectors;
  Matrix left_vectors;
  std::vector<EigenPairFlags> flags;
  double matrix_norm = 0.0;

  int dim() const { return static_cast<int>(eigenvalues.size()); }
  double spectral_bound() const { return eigenvalues(0).real(); }

  /// s(A) - max Re over the rest of the spectrum; +inf in dimension 1.
  double dominance_gap() const;

  /// Algebraically simple up to the clustering tolerance?
  bool is_simple(int i) const { return !flags[static_cast<size_t>(i)].clustered; }

  /// Rank-one spectral projection v_i w_i^H / <w_i, v_i>. Requires a simple
  /// eigenvalue (throws NotSimple inside a cluster).
  Matrix projection(int i) const;

  /// Index of the eigenvalue nearest to z; throws NotSimple if none lies
  /// within dist_tol.
  int index_near(Complex z, double dist_tol) const;

  /// Holomorphic part of the resolvent at the simple eigenvalue lambda_i:
  /// H = lim_{lambda->lambda_i} [R(lambda,A) - P_i/(lambda-lambda_i)].
  Matrix reduced_resolvent(const Matrix& A, int i) const;
};

EigenSystem eigensystem(const Matrix& A, const Tolerances& tol = {});

/// Spectral projection (2*pi*i)^{-1} * contour integral of R(., A) over the
/// circle |lambda - center| = radius, by the trapezoid rule on n_nodes
/// equispaced points (spectrally accurate for this analytic integrand).
/// Throws ContourTooClose when an eigenvalue sits near the contour.
Matrix spectral_projection(const Matrix& A, Complex center, double radius,
                           int n_nodes = 128, const Tolerances& tol = {});

}  // namespace evpos
