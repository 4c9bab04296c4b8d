#include "evpos/types.hpp"

#include <cmath>

#include "evpos/errors.hpp"

namespace evpos {

void validate_matrix(const Matrix& M) {
  if (M.rows() != M.cols() || M.rows() == 0) {
    throw PreconditionFailed("matrix must be square and non-empty");
  }
  if (!M.allFinite()) {
    throw PreconditionFailed("matrix has non-finite entries");
  }
}

double max_imag(const Matrix& M) { return M.imag().cwiseAbs().maxCoeff(); }
double max_imag(const Vector& v) { return v.imag().cwiseAbs().maxCoeff(); }

RealMatrix real_part_checked(const Matrix& M, double tau) {
  if (M.size() > 0 && max_imag(M) > tau) {
    throw NotReal("imaginary content " + std::to_string(max_imag(M)) +
                  " exceeds tolerance " + std::to_string(tau));
  }
  return M.real();
}

RealVector real_part_checked(const Vector& v, double tau) {
  if (v.size() > 0 && max_imag(v) > tau) {
    throw NotReal("imaginary content " + std::to_string(max_imag(v)) +
                  " exceeds tolerance " + std::to_string(tau));
  }
  return v.real();
}

}  // namespace evpos
