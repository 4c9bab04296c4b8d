#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "evpos/config.hpp"
#include "evpos/positivity.hpp"
#include "evpos/types.hpp"

namespace evpos {

/// Admissible perturbation norm for the disk B(lambda0, r):
///   eps = min over the contour |lambda - lambda0| = r of ||R(lambda,A)||^{-1},
/// sampled at n_nodes points. Every real B with ||B|| < eps leaves exactly
/// one spectral value in the disk, and it stays real and simple.
/// Requires lambda0 to be a simple real eigenvalue and the contour to
/// separate it from the rest of the spectrum.
double eigenvalue_radius(const Matrix& A, double lambda0, double r, int n_nodes = 128,
                         const Tolerances& tol = {});

/// Truncated Neumann series R(lambda,A) * sum_{k<=k_max} (B R(lambda,A))^k
/// together with the geometric tail bound ||R|| q^{k_max+1} / (1-q),
/// q = ||B R(lambda,A)||. Throws SeriesDiverges when q >= 1.
std::pair<Matrix, double> neumann_resolvent(const Matrix& A, const Matrix& B,
                                            Complex lambda, int k_max,
                                            const Tolerances& tol = {});

struct PerturbationCertificate {
  double lambda0 = 0.0;
  double radius_r = 0.0;
  double epsilon = 0.0;                  // admissible perturbation norm
  double lambda_B = 0.0;                 // located perturbed eigenvalue
  bool simple = false;
  Matrix projection_PB;
  double projection_drift = 0.0;         // ||P_B - P_0||
  double resolvent_positive_up_to = 0.0; // certified lambda_1
};

/// Certifies that a nonnegative perturbation B with ||B|| < eigenvalue_radius
/// preserves eventual strong positivity of the resolvent at lambda0:
/// locates lambda_B (real, simple), checks the entrywise monotonicity
/// R(lambda0+r, A+B) >= R(lambda0+r, A) >> 0, and certifies strong
/// positivity of R(., A+B) on (lambda_B, lambda0+r] by the Neumann
/// extension check.
PerturbationCertificate certify_resolvent_perturbation(const Matrix& A, double lambda0,
                                                       double r, const Matrix& B,
                                                       const RealVector& u,
                                                       const Tolerances& tol = {});

/// Same certificate for a real diagonal (multiplication) perturbation, via
/// the shift B + ||B||I >= 0; requires ||B|| < min(r/3, eps~/2) where eps~
/// is the admissible norm of the nonnegative certifier at radius r/3.
/// For diagonal matrices ||B|| = max_i |b_ii| exactly.
PerturbationCertificate certify_multiplication_perturbation(const Matrix& A, double lambda0,
                                                            double r, const Matrix& B,
                                                            const RealVector& u,
                                                            const Tolerances& tol = {});

enum class SupNormStrategy { Symmetric, Sampled };

struct HalfplaneSup {
  double value = 0.0;
  bool exact = false;        // closed form 1/(lambda1 - s(A)) used
  double arg_imag = 0.0;     // boundary point Im where the max was found
  bool decay_ok = false;     // sampled norm decayed below value/10 at the grid ends
};

/// M = sup of ||R(lambda,A)|| over the half plane Re lambda >= lambda1.
/// Strategy Symmetric requires A real symmetric and returns the exact value
/// 1/(lambda1 - s(A)); Sampled maximises over a truncated grid on the
/// boundary line Re lambda = lambda1 (a lower estimate; decay_ok reports the
/// truncation heuristic).
HalfplaneSup halfplane_sup_norm(const Matrix& A, double lambda1, SupNormStrategy strategy,
                                const Tolerances& tol = {});

struct QuantitativeReport {
  double s_A = 0.0;
  double s_perturbed = 0.0;       // real spectral bound of A + K
  double lambda1 = 0.0;
  double M = 0.0;
  double K_norm = 0.0;
  bool spectral_bound_below_lambda1 = false;  // (i)
  bool resolvent_strongly_positive = false;   // (ii) on the sampled mesh
  bool bound_not_decreased = false;           // (iii)
  bool bound_strictly_increased = false;      // (iv), for K != 0
};

/// Numerically verifies the four conclusions of the small-perturbation
/// theorem for nonnegative K with ||K|| < 1/M, sampling (s(A+K), lambda1)
/// on a 32-point mesh for the strong positivity of R(., A+K).
QuantitativeReport check_quantitative_theorem(const Matrix& A, const Matrix& K,
                                              double lambda1, const RealVector& u,
                                              const Tolerances& tol = {});

struct EigenCurvePoint {
  double s = 0.0;
  double lambda = 0.0;
  double dlambda = 0.0;   // Rayleigh quotient <B u, u> / ||u||^2
  RealVector u;           // gauge-fixed: u[gauge] = 1 exactly
  RealVector du;          // solution of (A + sB - lambda I) du = (dlambda I - B) u, du[gauge] = 0
};

/// Tracks one eigenvalue curve of the symmetric pencil A + sB over s_grid,
/// starting from the dominant eigenvalue at the first grid point and
/// matching by maximal eigenvector overlap. gauge_index < 0 picks the
/// largest-magnitude component of the starting eigenvector (ties towards the
/// highest index). Aborts with EigenvalueCollision when the tracked
/// eigenvalue approaches another one.
std::vector<EigenCurvePoint> eigencurve(const Matrix& A, const Matrix& B,
                                        std::span<const double> s_grid, int gauge_index = -1,
                                        const Tolerances& tol = {});

/// Perturbation norm below which the EventuallyStronglyPositive verdict is
/// guaranteed to survive: combines the disk bound min ||R||^{-1} on the
/// region {Re lambda >= s(A) - r} \ B(s(A), r), r = gap/2, with the bound
/// keeping the projection drift below the smallest entry of P_0.
double certified_openness_radius(const Matrix& A, const Tolerances& tol = {});

struct OpennessProbeResult {
  int trials = 0;
  int preserved = 0;
  double fraction = 0.0;
  double epsilon = 0.0;     // certified radius used as the scale reference
  double scale = 0.0;
  std::uint64_t seed = 0;
};

/// Draws n_trials random real perturbations of spectral norm scale*epsilon
/// and reports the fraction that keeps classify_semigroup at
/// EventuallyStronglyPositive. For scale <= 1 the fraction must be 1.
OpennessProbeResult openness_probe(const Matrix& A, int n_trials, double scale,
                                   std::uint64_t seed, const Tolerances& tol = {});

struct ProjectionDriftPoint {
  double b_norm = 0.0;
  double lambda_drift = 0.0;      // |lambda_B - lambda_0|
  double projection_drift = 0.0;  // ||P_B - P_0||
};

/// Dominant eigenvalue and projection drift along the ray A + c*B_direction
/// for the given spectral norms c; both drifts decrease to 0 as c -> 0.
std::vector<ProjectionDriftPoint> projection_continuity(const Matrix& A,
                                                        const Matrix& B_direction,
                                                        std::span<const double> scales,
                                                        const Tolerances& tol = {});

}  // namespace evpos
