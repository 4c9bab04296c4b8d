#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace evpos {

/// Numeric tolerance hierarchy shared by all modules.
///
/// Scale-free quantities (`spectral`, `cluster`) are relative and get
/// multiplied by the operator norm at the point of use; `positivity` is the
/// absolute entrywise margin for cone predicates.
struct Tolerances {
  double solve_rtol = 1e-12;    // linear solve residual
  double spectral = 1e-8;       // spectral equality, relative to ||A||
  double positivity = 1e-10;    // entrywise positivity margin (tau_pos)
  double cluster = 1e-7;        // eigenvalue clustering threshold, relative
  double expm_norm_cap = 1e8;   // cap on ||tA||_1 before e^{tA} is refused
  int contour_nodes = 128;      // trapezoid nodes on spectral contours
  int lambda_points_per_decade = 64;  // geometric resolvent-scan mesh
  int lambda_decades = 3;             // decades scanned below the mesh top
  int time_mesh_points = 256;         // log-spaced positivity-time mesh

  double spectral_abs(double scale) const { return spectral * (scale > 1.0 ? scale : 1.0); }
  double cluster_abs(double scale) const { return cluster * (scale > 1.0 ? scale : 1.0); }
};

/// Seeded generator for perturbation ensembles: mt19937_64 with a portable
/// uniform-double conversion, so identical seeds give identical ensembles
/// everywhere (std::uniform_real_distribution would not guarantee that).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 engine_;
};

// Perturbation ensembles. Entries i.i.d. uniform [-1,1] (or [0,1] for the
// nonnegative variants), rescaled afterwards to a target spectral norm.
Eigen::MatrixXd random_real_matrix(Rng& rng, int dim);
Eigen::MatrixXd random_nonneg_matrix(Rng& rng, int dim);
Eigen::MatrixXd random_symmetric_nonneg_matrix(Rng& rng, int dim);
Eigen::MatrixXd rescale_to_spectral_norm(const Eigen::MatrixXd& M, double target);

}  // namespace evpos
