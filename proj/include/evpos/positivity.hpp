#pragma once

#include <optional>
#include <string>

#include "evpos/config.hpp"
#include "evpos/linalg.hpp"
#include "evpos/types.hpp"

namespace evpos {

// Entrywise cone predicates. All of them read the real part and throw
// NotReal when the imaginary content exceeds tau.
bool is_nonneg(const Vector& x, double tau);
bool is_nonneg(const Matrix& M, double tau);
bool is_strictly_positive(const Matrix& M, double tau);

/// f >= eps*u for some eps > tau, i.e. min_i f_i/u_i > tau. The reference u
/// must be entrywise strictly positive.
bool is_strongly_positive(const Vector& x, const RealVector& u, double tau);

/// Nonnegative off-diagonal entries up to tau. In finite dimension this is
/// equivalent to positivity of the generated semigroup.
bool is_metzler(const Matrix& A, double tau);

/// Smallest off-diagonal entry (the margin behind is_metzler).
double metzler_margin(const Matrix& A, double tau);

enum class Verdict {
  Positive,
  EventuallyStronglyPositive,
  NotEventuallyPositive,
  Inconclusive,
};

const char* to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

struct PositivityReport {
  Verdict verdict = Verdict::Inconclusive;
  double dominant_eigenvalue = 0.0;   // s(A)
  double dominance_gap = 0.0;         // s(A) - max Re of the rest
  double projection_min_entry = 0.0;  // min entry of the dominant projection
  double metzler_margin = 0.0;
  double certified_lambda1 = 0.0;     // resolvent classification only
  std::string evidence_notes;
};

/// Classifies the semigroup generated by a real matrix A:
///   Positive                    iff A is Metzler;
///   EventuallyStronglyPositive  iff s(A) is real, simple, strictly dominant
///                               and its spectral projection is entrywise
///                               strictly positive;
///   NotEventuallyPositive       when the dominant eigendata certifies
///                               failure (mixed-sign projection, or a
///                               non-real dominant eigenvalue);
///   Inconclusive                otherwise (degenerate dominance, or a
///                               nonnegative projection with zero entries).
PositivityReport classify_semigroup(const Matrix& A, const Tolerances& tol = {});

/// Classifies eventual positivity of R(., A) in a right neighbourhood of the
/// real eigenvalue lambda0. Samples a geometric mesh on (lambda0, lambda0 +
/// delta] and certifies the sampled interval with neumann_extension_check;
/// delta <= 0 picks half the distance to the nearest real eigenvalue above
/// lambda0 (or 1). The certified right endpoint is reported in
/// certified_lambda1.
PositivityReport classify_resolvent_at(const Matrix& A, double lambda0,
                                       const Tolerances& tol = {}, double delta = 0.0);

/// Certifies R(lambda, A) >>_u 0 for all lambda in (lambda0, lambda1) from
/// data at the right endpoint only: R(lambda1, A) >= 0 entrywise and some
/// power R(lambda1, A)^n, n <= dim, entrywise positive. Requires (lambda0,
/// lambda1] to be free of real spectrum.
bool neumann_extension_check(const Matrix& A, double lambda0, double lambda1,
                             const RealVector& u, const Tolerances& tol = {});

/// Smallest mesh time t0 such that e^{tA}f stays entrywise >= -tau_pos for
/// all sampled t in [t0, t_max], refined by bisection across the last sign
/// change; nullopt when the trajectory is still negative at t_max.
std::optional<double> positivity_time(const Matrix& A, const Vector& f, double t_max,
                                      int mesh_points = 0, const Tolerances& tol = {});

}  // namespace evpos
