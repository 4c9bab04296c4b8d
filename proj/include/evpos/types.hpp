#pragma once

#include <Eigen/Dense>
#include <complex>

namespace evpos {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Throws PreconditionFailed unless M is square with all entries finite.
void validate_matrix(const Matrix& M);

/// Largest absolute imaginary part over all entries.
double max_imag(const Matrix& M);
double max_imag(const Vector& v);

/// Real part of M; throws NotReal if imaginary content exceeds tau.
RealMatrix real_part_checked(const Matrix& M, double tau);
RealVector real_part_checked(const Vector& v, double tau);

inline Matrix to_complex(const RealMatrix& M) { return M.cast<Complex>(); }
inline Vector to_complex(const RealVector& v) { return v.cast<Complex>(); }

/// Bilinear dual pairing <phi, x> = sum_i phi_i x_i (no conjugation).
inline Complex dual_pairing(const Vector& phi, const Vector& x) {
  return phi.transpose() * x;
}

}  // namespace evpos
