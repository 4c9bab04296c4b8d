#include "evpos/config.hpp"

#include <Eigen/SVD>

#include "evpos/errors.hpp"

namespace evpos {

Eigen::MatrixXd random_real_matrix(Rng& rng, int dim) {
  Eigen::MatrixXd M(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) M(i, j) = rng.uniform(-1.0, 1.0);
  return M;
}

Eigen::MatrixXd random_nonneg_matrix(Rng& rng, int dim) {
  Eigen::MatrixXd M(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) M(i, j) = rng.uniform();
  return M;
}

Eigen::MatrixXd random_symmetric_nonneg_matrix(Rng& rng, int dim) {
  Eigen::MatrixXd M = random_nonneg_matrix(rng, dim);
  return (M + M.transpose()) / 2.0;  // average keeps entries nonnegative
}

Eigen::MatrixXd rescale_to_spectral_norm(const Eigen::MatrixXd& M, double target) {
  const double nrm = M.jacobiSvd().singularValues()(0);
  if (nrm == 0.0) {
    if (target == 0.0) return M;
    throw PreconditionFailed("cannot rescale the zero matrix to a nonzero norm");
  }
  return M * (target / nrm);
}

}  // namespace evpos
