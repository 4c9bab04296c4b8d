#include "evpos/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/LU>

#include "evpos/errors.hpp"
#include "evpos/linalg.hpp"

namespace evpos {

namespace {

Complex circle_point(double lambda0, double r, int k, int n) {
  const double theta = 2.0 * std::numbers::pi * k / n;
  return Complex(lambda0 + r * std::cos(theta), r * std::sin(theta));
}

// Simple real eigenvalue of A near lambda0, with every other eigenvalue
// strictly outside the circle of radius r.
void check_disk_isolation(const EigenSystem& es, double lambda0, double r,
                          const Tolerances& tol) {
  const double guard = tol.cluster_abs(es.matrix_norm);
  const int idx = es.index_near(Complex(lambda0, 0.0), guard > r / 2 ? guard : r / 2);
  if (std::abs(es.eigenvalues(idx).imag()) > tol.spectral_abs(es.matrix_norm)) {
    throw NotSimple("target eigenvalue is not real");
  }
  if (!es.is_simple(idx)) throw NotSimple("target eigenvalue lies in a cluster");
  for (int i = 0; i < es.dim(); ++i) {
    if (i == idx) continue;
    const double d = std::abs(es.eigenvalues(i) - Complex(lambda0, 0.0));
    if (d <= r + guard) {
      throw ContourTooClose("eigenvalue at distance " + std::to_string(d) +
                            " does not clear the contour radius " + std::to_string(r));
    }
  }
}

}  // namespace

double eigenvalue_radius(const Matrix& A, double lambda0, double r, int n_nodes,
                         const Tolerances& tol) {
  validate_matrix(A);
  if (!(r > 0.0)) throw PreconditionFailed("radius must be positive");
  if (n_nodes < 16) throw PreconditionFailed("need at least 16 contour nodes");
  const EigenSystem es = eigensystem(A, tol);
  check_disk_isolation(es, lambda0, r, tol);

  double eps = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n_nodes; ++k) {
    const Matrix R = resolvent(A, circle_point(lambda0, r, k, n_nodes), tol);
    eps = std::min(eps, 1.0 / operator_norm(R));
  }
  return eps;
}

std::pair<Matrix, double> neumann_resolvent(const Matrix& A, const Matrix& B, Complex lambda,
                                            int k_max, const Tolerances& tol) {
  validate_matrix(A);
  validate_matrix(B);
  if (A.rows() != B.rows()) throw PreconditionFailed("dimension mismatch");
  if (k_max < 0) throw PreconditionFailed("k_max must be nonnegative");
  const Matrix R = resolvent(A, lambda, tol);
  const Matrix BR = B * R;
  const double q = operator_norm(BR);
  if (q >= 1.0) {
    throw SeriesDiverges("||B R(lambda,A)|| = " + std::to_string(q) + " >= 1");
  }
  Matrix term = R;
  Matrix sum = R;
  for (int k = 1; k <= k_max; ++k) {
    term = term * BR;  // R (BR)^k
    sum += term;
  }
  const double tail = operator_norm(R) * std::pow(q, k_max + 1) / (1.0 - q);
  return {sum, tail};
}

PerturbationCertificate certify_resolvent_perturbation(const Matrix& A, double lambda0, double r,
                                                       const Matrix& B, const RealVector& u,
                                                       const Tolerances& tol) {
  validate_matrix(A);
  validate_matrix(B);
  if (A.rows() != B.rows()) throw PreconditionFailed("dimension mismatch");
  if (!is_nonneg(B, tol.positivity)) {
    throw PreconditionFailed("perturbation must be entrywise nonnegative");
  }

  const PositivityReport base = classify_resolvent_at(A, lambda0, tol);
  if (base.verdict != Verdict::EventuallyStronglyPositive) {
    throw PreconditionFailed(
        "resolvent of A is not certified eventually strongly positive at lambda0");
  }
  const Matrix R_right = resolvent(A, Complex(lambda0 + r, 0.0), tol);
  if (!is_strictly_positive(R_right, tol.positivity)) {
    throw PreconditionFailed("R(lambda0 + r, A) is not entrywise positive; shrink r");
  }

  PerturbationCertificate cert;
  cert.lambda0 = lambda0;
  cert.radius_r = r;
  cert.epsilon = eigenvalue_radius(A, lambda0, r, tol.contour_nodes, tol);
  const double b_norm = operator_norm(B);
  if (!(b_norm < cert.epsilon)) {
    throw NormTooLarge("||B|| = " + std::to_string(b_norm) +
                       " is not below the admissible radius " + std::to_string(cert.epsilon));
  }

  // Locate the unique perturbed eigenvalue in the disk.
  const Matrix AB = A + B;
  const EigenSystem es_b = eigensystem(AB, tol);
  int found = -1;
  for (int i = 0; i < es_b.dim(); ++i) {
    if (std::abs(es_b.eigenvalues(i) - Complex(lambda0, 0.0)) < r) {
      if (found >= 0) throw ConvergenceFailure("two eigenvalues inside the certified disk");
      found = i;
    }
  }
  if (found < 0) throw ConvergenceFailure("no eigenvalue inside the certified disk");
  if (std::abs(es_b.eigenvalues(found).imag()) > tol.spectral_abs(es_b.matrix_norm)) {
    throw ConvergenceFailure("located eigenvalue is not numerically real");
  }
  cert.lambda_B = es_b.eigenvalues(found).real();
  cert.simple = es_b.is_simple(found);

  cert.projection_PB = spectral_projection(AB, Complex(lambda0, 0.0), r, tol.contour_nodes, tol);
  const Matrix P0 = spectral_projection(A, Complex(lambda0, 0.0), r, tol.contour_nodes, tol);
  cert.projection_drift = operator_norm(Matrix(cert.projection_PB - P0));

  // Entrywise monotonicity at the right edge of the disk.
  const Matrix R_right_B = resolvent(AB, Complex(lambda0 + r, 0.0), tol);
  if (Matrix(R_right_B - R_right).real().minCoeff() < -tol.positivity) {
    throw ConvergenceFailure("perturbed resolvent lost entrywise monotonicity");
  }

  if (!neumann_extension_check(AB, cert.lambda_B, lambda0 + r, u, tol)) {
    throw ConvergenceFailure("Neumann extension check failed for the perturbed resolvent");
  }
  cert.resolvent_positive_up_to = lambda0 + r;
  return cert;
}

PerturbationCertificate certify_multiplication_perturbation(const Matrix& A, double lambda0,
                                                            double r, const Matrix& B,
                                                            const RealVector& u,
                                                            const Tolerances& tol) {
  validate_matrix(B);
  const RealMatrix Br = real_part_checked(B, tol.spectral_abs(1.0));
  for (Eigen::Index i = 0; i < Br.rows(); ++i) {
    for (Eigen::Index j = 0; j < Br.cols(); ++j) {
      if (i != j && std::abs(Br(i, j)) > tol.positivity) {
        throw NotDiagonal("multiplication operator must be a real diagonal matrix");
      }
    }
  }
  // For diagonal matrices the operator norm is exactly the largest |b_ii|.
  const double b_norm = Br.diagonal().cwiseAbs().maxCoeff();

  const double r_inner = r / 3.0;
  const double eps_inner = eigenvalue_radius(A, lambda0, r_inner, tol.contour_nodes, tol);
  const double eps_outer = eigenvalue_radius(A, lambda0, r, tol.contour_nodes, tol);
  const double eps_tilde = std::min(eps_inner, eps_outer);
  const double admissible = std::min(r / 3.0, eps_tilde / 2.0);
  if (!(b_norm < admissible)) {
    throw NormTooLarge("||B|| = " + std::to_string(b_norm) + " is not below " +
                       std::to_string(admissible));
  }

  // Shift to a nonnegative perturbation, certify, then undo the commuting
  // shift of the spectrum.
  Matrix B_shifted = Br.cast<Complex>();
  B_shifted.diagonal().array() += b_norm;
  PerturbationCertificate cert =
      certify_resolvent_perturbation(A, lambda0, r_inner, B_shifted, u, tol);
  cert.lambda_B -= b_norm;
  cert.radius_r = r;
  cert.epsilon = admissible;
  cert.resolvent_positive_up_to -= b_norm;
  return cert;
}

HalfplaneSup halfplane_sup_norm(const Matrix& A, double lambda1, SupNormStrategy strategy,
                                const Tolerances& tol) {
  validate_matrix(A);
  const EigenSystem es = eigensystem(A, tol);
  const double s = es.spectral_bound();
  if (!(lambda1 > s)) {
    throw SpectralBoundViolation("lambda1 = " + std::to_string(lambda1) +
                                 " does not exceed s(A) = " + std::to_string(s));
  }
  HalfplaneSup result;
  if (strategy == SupNormStrategy::Symmetric) {
    const double asym = operator_norm(Matrix(A - A.transpose()));
    const double imag = max_imag(A);
    if (asym > tol.spectral_abs(es.matrix_norm) || imag > tol.spectral_abs(es.matrix_norm)) {
      throw PreconditionFailed("closed form requires a real symmetric matrix");
    }
    result.value = 1.0 / (lambda1 - s);
    result.exact = true;
    result.decay_ok = true;
    return result;
  }

  // Boundary-line maximisation: the sup over the half plane is attained on
  // Re lambda = lambda1 (the norm decays at infinity), so a truncated grid
  // gives a lower estimate.
  const double span = 4.0 * (es.matrix_norm + std::abs(lambda1) + 1.0);
  std::vector<double> ys{0.0};
  const int half_points = 200;
  for (int k = 0; k <= half_points; ++k) {
    const double y = 1e-3 * std::pow(span / 1e-3, static_cast<double>(k) / half_points);
    ys.push_back(y);
    ys.push_back(-y);
  }
  double best = 0.0;
  double best_y = 0.0;
  for (double y : ys) {
    const double nrm = operator_norm(resolvent(A, Complex(lambda1, y), tol));
    if (nrm > best) {
      best = nrm;
      best_y = y;
    }
  }
  const double edge = operator_norm(resolvent(A, Complex(lambda1, span), tol));
  result.value = best;
  result.arg_imag = best_y;
  result.exact = false;
  result.decay_ok = edge < best / 10.0;
  return result;
}

QuantitativeReport check_quantitative_theorem(const Matrix& A, const Matrix& K, double lambda1,
                                              const RealVector& u, const Tolerances& tol) {
  validate_matrix(A);
  validate_matrix(K);
  if (A.rows() != K.rows()) throw PreconditionFailed("dimension mismatch");
  if (!is_nonneg(K, tol.positivity)) throw PreconditionFailed("K must be nonnegative");

  QuantitativeReport rep;
  const EigenSystem es = eigensystem(A, tol);
  rep.s_A = es.spectral_bound();
  rep.lambda1 = lambda1;

  const bool symmetric =
      operator_norm(Matrix(A - A.transpose())) <= tol.spectral_abs(es.matrix_norm) &&
      max_imag(A) <= tol.spectral_abs(es.matrix_norm);
  rep.M = halfplane_sup_norm(A, lambda1,
                             symmetric ? SupNormStrategy::Symmetric : SupNormStrategy::Sampled, tol)
              .value;
  rep.K_norm = operator_norm(K);
  if (!(rep.K_norm < 1.0 / rep.M)) {
    throw NormTooLarge("||K|| must stay below 1/M = " + std::to_string(1.0 / rep.M));
  }

  // Hypothesis: strong positivity of the unperturbed resolvent on (s(A), lambda1).
  for (int k = 1; k <= 16; ++k) {
    const double lam = rep.s_A + (lambda1 - rep.s_A) * k / 17.0;
    const Matrix R = resolvent(A, Complex(lam, 0.0), tol);
    if (!is_strictly_positive(R, tol.positivity)) {
      throw PreconditionFailed("R(lambda, A) is not strongly positive on (s(A), lambda1)");
    }
  }

  const Matrix AK = A + K;
  const EigenSystem es_k = eigensystem(AK, tol);
  const double imag_tol = tol.spectral_abs(es_k.matrix_norm);
  rep.s_perturbed = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < es_k.dim(); ++i) {
    if (std::abs(es_k.eigenvalues(i).imag()) <= imag_tol) {
      rep.s_perturbed = std::max(rep.s_perturbed, es_k.eigenvalues(i).real());
    }
  }
  rep.spectral_bound_below_lambda1 = es_k.spectral_bound() < lambda1;

  rep.resolvent_strongly_positive = true;
  const int mesh = 32;
  for (int k = 1; k < mesh; ++k) {
    const double lam = rep.s_perturbed + (lambda1 - rep.s_perturbed) * k / mesh;
    const Matrix R = resolvent(AK, Complex(lam, 0.0), tol);
    RealVector uu = u.size() == A.rows() ? u : RealVector::Ones(A.rows());
    bool strong = true;
    for (Eigen::Index j = 0; j < R.cols() && strong; ++j) {
      strong = is_strongly_positive(R.col(j), uu, tol.positivity);
    }
    if (!strong) {
      rep.resolvent_strongly_positive = false;
      break;
    }
  }

  rep.bound_not_decreased = rep.s_perturbed >= rep.s_A - tol.spectral_abs(es.matrix_norm);
  const bool K_nonzero = operator_norm(K) > tol.positivity;
  rep.bound_strictly_increased =
      !K_nonzero || rep.s_perturbed > rep.s_A + tol.positivity;
  return rep;
}

std::vector<EigenCurvePoint> eigencurve(const Matrix& A, const Matrix& B,
                                        std::span<const double> s_grid, int gauge_index,
                                        const Tolerances& tol) {
  validate_matrix(A);
  validate_matrix(B);
  if (A.rows() != B.rows()) throw PreconditionFailed("dimension mismatch");
  if (s_grid.empty()) throw PreconditionFailed("empty parameter grid");
  const double sym_tol = tol.spectral_abs(operator_norm(A) + operator_norm(B));
  if (operator_norm(Matrix(A - A.transpose())) > sym_tol ||
      operator_norm(Matrix(B - B.transpose())) > sym_tol || max_imag(A) > sym_tol ||
      max_imag(B) > sym_tol) {
    throw PreconditionFailed("eigencurve continuation requires symmetric real matrices");
  }
  const auto n = A.rows();

  std::vector<EigenCurvePoint> points;
  RealVector u_prev;
  for (double s : s_grid) {
    const Matrix M = A + s * B;
    const EigenSystem es = eigensystem(M, tol);

    int idx = 0;
    if (points.empty()) {
      idx = 0;  // start the curve at the dominant eigenvalue
    } else {
      double best = -1.0;
      for (int i = 0; i < es.dim(); ++i) {
        const double overlap =
            std::abs(Complex(es.right_vectors.col(i).adjoint() * to_complex(u_prev)));
        if (overlap > best) {
          best = overlap;
          idx = i;
        }
      }
    }
    // Cluster abort: continuation through a collision is ill-defined.
    double min_gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < es.dim(); ++i) {
      if (i != idx) min_gap = std::min(min_gap, std::abs(es.eigenvalues(i) - es.eigenvalues(idx)));
    }
    if (min_gap < 1e-6 * (es.matrix_norm > 1.0 ? es.matrix_norm : 1.0)) {
      throw EigenvalueCollision("eigenvalue gap " + std::to_string(min_gap) +
                                " below the continuation threshold at s = " + std::to_string(s));
    }

    const double lambda = es.eigenvalues(idx).real();
    RealVector v = real_part_checked(Vector(es.right_vectors.col(idx)), sym_tol);
    if (points.empty() && gauge_index < 0) {
      // Largest-magnitude component, ties towards the highest index.
      double best = -1.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (std::abs(v(i)) >= best - 1e-12) {
          best = std::abs(v(i));
          gauge_index = static_cast<int>(i);
        }
      }
    }
    if (gauge_index < 0 || gauge_index >= n) throw PreconditionFailed("gauge index out of range");
    if (std::abs(v(gauge_index)) < 1e-10) {
      throw PreconditionFailed("gauge component of the eigenvector vanishes");
    }
    v /= v(gauge_index);  // gauge: the chosen component is held at 1

    EigenCurvePoint pt;
    pt.s = s;
    pt.lambda = lambda;
    pt.u = v;
    pt.dlambda = (v.transpose() * B.real() * v).value() / v.squaredNorm();

    // du solves (A + sB - lambda I) du = (dlambda I - B) u inside the gauge
    // complement; the bordered system pins du[gauge] = 0 and absorbs the
    // kernel direction.
    RealMatrix bordered = RealMatrix::Zero(n + 1, n + 1);
    bordered.topLeftCorner(n, n) = M.real() - lambda * RealMatrix::Identity(n, n);
    bordered.topRightCorner(n, 1) = v;
    bordered(n, gauge_index) = 1.0;
    RealVector rhs = RealVector::Zero(n + 1);
    rhs.head(n) = pt.dlambda * v - B.real() * v;
    const RealVector sol = bordered.partialPivLu().solve(rhs);
    pt.du = sol.head(n);

    u_prev = v;
    points.push_back(std::move(pt));
  }
  return points;
}

double certified_openness_radius(const Matrix& A, const Tolerances& tol) {
  validate_matrix(A);
  const PositivityReport rep = classify_semigroup(A, tol);
  if (rep.verdict != Verdict::EventuallyStronglyPositive) {
    throw NotEventuallyStronglyPositive("openness radius requires the certified verdict");
  }
  const EigenSystem es = eigensystem(A, tol);
  const double s = es.spectral_bound();
  const double gap = es.dominance_gap();
  const double r = gap / 2.0;
  const double m = rep.projection_min_entry;

  // Bound C on ||R(., A)|| over {Re >= s - r} \ B(s, r): by the maximum
  // principle the sup sits on the circle or on the vertical line. The line
  // is truncated where the crude bound 1/(|lambda| - ||A||) takes over.
  double C = 0.0;
  for (int k = 0; k < tol.contour_nodes; ++k) {
    C = std::max(C, operator_norm(resolvent(A, circle_point(s, r, k, tol.contour_nodes), tol)));
  }
  const double y_max = std::abs(s - r) + 2.0 * es.matrix_norm + 1.0;
  const int line_points = 128;
  for (int k = 0; k <= line_points; ++k) {
    const double y = y_max * static_cast<double>(k) / line_points;
    C = std::max(C, operator_norm(resolvent(A, Complex(s - r, y), tol)));
  }

  const double eps_disk = 1.0 / C;
  const double eps_projection = m / (r * C * C + C * m);
  return std::min(eps_disk, eps_projection);
}

OpennessProbeResult openness_probe(const Matrix& A, int n_trials, double scale,
                                   std::uint64_t seed, const Tolerances& tol) {
  if (n_trials <= 0) throw PreconditionFailed("need a positive number of trials");
  if (scale < 0.0) throw PreconditionFailed("scale must be nonnegative");
  OpennessProbeResult result;
  result.trials = n_trials;
  result.scale = scale;
  result.seed = seed;
  result.epsilon = certified_openness_radius(A, tol);

  Rng rng(seed);
  const int dim = static_cast<int>(A.rows());
  for (int k = 0; k < n_trials; ++k) {
    Matrix B = Matrix::Zero(dim, dim);
    if (scale > 0.0) {
      const RealMatrix raw = random_real_matrix(rng, dim);
      B = rescale_to_spectral_norm(raw, scale * result.epsilon).cast<Complex>();
    }
    const PositivityReport rep = classify_semigroup(A + B, tol);
    if (rep.verdict == Verdict::EventuallyStronglyPositive) result.preserved += 1;
  }
  result.fraction = static_cast<double>(result.preserved) / n_trials;
  return result;
}

std::vector<ProjectionDriftPoint> projection_continuity(const Matrix& A,
                                                        const Matrix& B_direction,
                                                        std::span<const double> scales,
                                                        const Tolerances& tol) {
  validate_matrix(A);
  validate_matrix(B_direction);
  const EigenSystem es = eigensystem(A, tol);
  if (es.flags[0].clustered) throw NotSimple("dominant eigenvalue lies in a cluster");
  if (std::abs(es.eigenvalues(0).imag()) > tol.spectral_abs(es.matrix_norm)) {
    throw NotSimple("dominant eigenvalue is not real");
  }
  if (es.dominance_gap() <= tol.spectral_abs(es.matrix_norm)) {
    throw NotSimple("dominant eigenvalue is not strictly dominant");
  }
  const double lambda0 = es.eigenvalues(0).real();
  const Matrix P0 = es.projection(0);
  const double dir_norm = operator_norm(B_direction);

  std::vector<ProjectionDriftPoint> out;
  for (double c : scales) {
    ProjectionDriftPoint p;
    p.b_norm = c;
    if (c == 0.0 || dir_norm == 0.0) {
      out.push_back(p);
      continue;
    }
    const Matrix M = A + (c / dir_norm) * B_direction;
    const EigenSystem es_c = eigensystem(M, tol);
    p.lambda_drift = std::abs(es_c.eigenvalues(0) - Complex(lambda0, 0.0));
    p.projection_drift = operator_norm(Matrix(es_c.projection(0) - P0));
    out.push_back(p);
  }
  return out;
}

}  // namespace evpos
