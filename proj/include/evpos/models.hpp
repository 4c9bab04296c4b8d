#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "evpos/config.hpp"
#include "evpos/positivity.hpp"
#include "evpos/rank_one.hpp"
#include "evpos/types.hpp"

namespace evpos {

/// Finite-difference model of an operator on an interval, together with an
/// independent closed-form evaluator used as the oracle in tests.
struct DiscretizedModel {
  int n = 0;
  RealVector grid;
  Matrix generator;               // the semigroup generator
  RealVector cone_u;              // reference strictly positive vector
  RealVector quadrature_weights;  // trapezoid weights on the grid

  // Exactly one of these is set, depending on the model.
  std::function<Matrix(Complex)> resolvent_oracle;
  std::function<RealVector(const std::function<double(double)>&)> kernel_oracle;
};

/// The symmetric 3x3 generator with spectrum {0,-1,-9} whose semigroup is
/// eventually strongly positive but not positive, together with the diagonal
/// rank-one direction B = e2 e2^T whose multiples destroy that property.
std::pair<Matrix, Matrix> example_counterexample_3d();

/// 3x3 matrix with `s` in the centre entry and `a` elsewhere; Metzler for
/// a, s >= 0 (strictly positive semigroup for a, s > 0). Negative
/// parameters throw NonPositiveParameters.
Matrix example_positive_family(double a, double s);

/// Rank-one coupling used with the reflection model: f |-> f(-1) * ones,
/// i.e. phi = point evaluation at the left endpoint, v = ones.
Rank1 reflection_point_coupling(const DiscretizedModel& model);

/// Discretisation of the reflection operator model on [-1,1] on n equispaced
/// nodes (n odd, >= 3, so the reflection is a grid permutation): the
/// generator acts as 0 on the constants and as -2I - S on the kernel of the
/// trapezoid functional. The construction is exact: the discrete resolvent
/// equals the closed form
///   (1/lambda) Pi + ((lambda+2)I - S)(I - Pi) / ((lambda+2)^2 - 1).
DiscretizedModel example_reflection_interval(int n);

/// Ramp supported on [1-2*eps, 1], peaking at 1 at the right endpoint:
/// f(1) = sup f = 1, integral = eps, f(-1) = 0 (exactly in the continuum,
/// to quadrature accuracy on the grid). Requires 0 < eps < 1.
RealVector build_f_epsilon(const DiscretizedModel& model, double eps);

struct SmallPerturbationReport {
  double alpha = 0.0;
  double eps = 0.0;
  double boundary_value = 0.0;       // (R(alpha, A) f_eps)(-1)
  double limit_value = 0.0;          // alpha * boundary_value
  double terminal_error = 0.0;       // || g(t_max) - limit * ones ||_inf
  double perturbed_spectral_bound = 0.0;
  bool positivity_lost = false;
  std::optional<double> unperturbed_positivity_time;  // alpha = 0 only
  std::vector<double> times;
  std::vector<double> min_entries;   // min entry of e^{-t alpha} e^{t(A+alpha K)} f_eps
};

/// Follows e^{-t alpha} e^{t(A + alpha K)} f_eps over t_grid via the
/// closed-form rank-one semigroup formula and checks convergence to the
/// strictly negative limit alpha * (R(alpha,A) f_eps)(-1) * ones. With
/// alpha = 0 it instead reports the finite positivity time of the
/// unperturbed trajectory.
SmallPerturbationReport demo_small_perturbation(const DiscretizedModel& model, double alpha,
                                                double eps, std::span<const double> t_grid,
                                                const Tolerances& tol = {});

/// d x d generator (d >= 3) with last row and column 1/sqrt(d-1) and zero
/// block: generates a strongly positive semigroup, with odd powers equal to
/// the matrix itself and even powers constant. For d = 3 the second matrix
/// is the antidiagonal direction with entries -1/sqrt(2) whose small
/// multiples break positivity but keep eventual strong positivity; for
/// other d it is empty.
std::pair<Matrix, Matrix> example_cyclic(int d);

/// Second-order finite differences for the negative second derivative on
/// [0,1] with the non-local boundary conditions u'(0) = -u'(1) = u(0)+u(1),
/// imposed through ghost nodes (dense coupling in both boundary rows). The
/// generator field holds the semigroup generator (the negative of the
/// discretised form operator); its kernel oracle evaluates
///   (R(0, generator) f)(x) = 1/2 int_0^x int_y^1 f + 1/2 int_x^1 int_0^y f
/// by composite trapezoid on a refined grid. Requires n >= 8.
DiscretizedModel example_nonlocal_laplacian(int n);

struct HilbertQuantReport {
  double lambda1 = 0.0;
  double spectral_gap = 0.0;        // lambda1 - s(A)
  double B_norm = 0.0;
  PositivityReport classification;  // of A + B
  double projection_min_entry = 0.0;
  std::optional<double> probe_positivity_time;
};

/// Checks the quantitative Hilbert-space criterion on a discretised model:
/// a symmetric nonnegative B with ||B|| < lambda1 - s(A) preserves eventual
/// strong positivity. Validates lambda1 by sampling R(lambda, A) >> 0 on
/// (s(A), lambda1) and reports the classification of A + B plus a
/// positivity time on a probe vector.
HilbertQuantReport demo_hilbert_quantitative(const DiscretizedModel& model, const Matrix& B,
                                             double lambda1, const Tolerances& tol = {});

}  // namespace evpos
