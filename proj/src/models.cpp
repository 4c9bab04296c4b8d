#include "evpos/models.hpp"

#include <cmath>

#include "evpos/errors.hpp"
#include "evpos/linalg.hpp"

namespace evpos {

std::pair<Matrix, Matrix> example_counterexample_3d() {
  RealMatrix A(3, 3);
  A << -2, -1, 3,
       -1, -2, 3,
        3,  3, -6;
  RealMatrix B = RealMatrix::Zero(3, 3);
  B(1, 1) = 1.0;
  return {A.cast<Complex>(), B.cast<Complex>()};
}

Matrix example_positive_family(double a, double s) {
  if (a < 0.0 || s < 0.0) {
    throw NonPositiveParameters("the family is defined for a, s >= 0");
  }
  RealMatrix C = RealMatrix::Constant(3, 3, a);
  C(1, 1) = s;
  return C.cast<Complex>();
}

DiscretizedModel example_reflection_interval(int n) {
  if (n < 3 || n % 2 == 0) {
    throw BadGridSize("reflection model needs an odd grid size n >= 3");
  }
  DiscretizedModel model;
  model.n = n;
  const double h = 2.0 / (n - 1);
  model.grid.resize(n);
  for (int i = 0; i < n; ++i) model.grid(i) = -1.0 + h * i;

  model.quadrature_weights = RealVector::Constant(n, h);
  model.quadrature_weights(0) = h / 2.0;
  model.quadrature_weights(n - 1) = h / 2.0;  // trapezoid; sums to 2 exactly

  model.cone_u = RealVector::Ones(n);

  // Projection onto the constants along the kernel of the trapezoid
  // functional phi (phi(1) = 2), and the grid reflection x -> -x.
  const RealMatrix Pi = RealVector::Ones(n) * model.quadrature_weights.transpose() / 2.0;
  RealMatrix S = RealMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) S(i, n - 1 - i) = 1.0;
  const RealMatrix I = RealMatrix::Identity(n, n);

  const RealMatrix A = (-2.0 * I - S) * (I - Pi);
  model.generator = A.cast<Complex>();

  // The construction is exact, so the closed form below *is* the resolvent
  // of the discrete generator, not an approximation.
  model.resolvent_oracle = [Pi, S, I, n](Complex lambda) -> Matrix {
    const Complex mu = lambda + 2.0;
    const Complex det = mu * mu - 1.0;
    Matrix R = (Pi.cast<Complex>()) / lambda;
    R += (mu * I.cast<Complex>() - S.cast<Complex>()) * ((I - Pi).cast<Complex>()) / det;
    return R;
  };
  return model;
}

Rank1 reflection_point_coupling(const DiscretizedModel& model) {
  Rank1 k;
  k.phi = Vector::Zero(model.n);
  k.phi(0) = 1.0;  // point evaluation at the left endpoint
  k.v = Vector::Ones(model.n);
  k.alpha = 1.0;
  return k;
}

RealVector build_f_epsilon(const DiscretizedModel& model, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw EpsilonOutOfRange("requires 0 < eps < 1");
  }
  RealVector f(model.n);
  for (int i = 0; i < model.n; ++i) {
    const double x = model.grid(i);
    f(i) = std::max(0.0, (x - (1.0 - 2.0 * eps)) / (2.0 * eps));
  }
  return f;
}

SmallPerturbationReport demo_small_perturbation(const DiscretizedModel& model, double alpha,
                                                double eps, std::span<const double> t_grid,
                                                const Tolerances& tol) {
  if (alpha < 0.0) throw PreconditionFailed("requires alpha >= 0");
  if (t_grid.empty()) throw PreconditionFailed("empty time grid");
  const RealVector f = build_f_epsilon(model, eps);
  const Vector fc = to_complex(f);
  const Matrix& A = model.generator;

  SmallPerturbationReport rep;
  rep.alpha = alpha;
  rep.eps = eps;

  if (alpha == 0.0) {
    const double t_max = t_grid.back();
    rep.unperturbed_positivity_time = positivity_time(A, fc, t_max, 0, tol);
    for (double t : t_grid) {
      rep.times.push_back(t);
      rep.min_entries.push_back((expm(A, t, tol) * fc).real().minCoeff());
    }
    rep.positivity_lost = !rep.unperturbed_positivity_time.has_value();
    return rep;
  }

  const Rank1 K = reflection_point_coupling(model);
  const Vector phi = alpha * K.phi;

  // Boundary value (R(alpha, A) f_eps)(-1); its negativity is the input
  // that makes the perturbed trajectory leave the cone.
  const Matrix R_alpha = resolvent(A, Complex(alpha, 0.0), tol);
  rep.boundary_value = (R_alpha * fc)(0).real();
  if (!(rep.boundary_value < 0.0)) {
    throw PreconditionFailed("eps is too large: (R(alpha,A) f_eps)(-1) is not negative");
  }
  rep.limit_value = alpha * rep.boundary_value;

  // Spectral bound of the perturbed generator: the rank-one formula has its
  // pole exactly at <phi, v> + 0 = alpha, and the eigensystem agrees.
  const Matrix AK = A + K.matrix() * alpha;
  rep.perturbed_spectral_bound = eigensystem(AK, tol).spectral_bound();

  RealVector limit_vec = RealVector::Constant(model.n, rep.limit_value);
  for (double t : t_grid) {
    const Matrix F = semigroup_rank1(A, t, phi, K.v, Complex(0.0, 0.0), tol);
    const RealVector g = (F * fc).real() * std::exp(-t * alpha);
    rep.times.push_back(t);
    rep.min_entries.push_back(g.minCoeff());
    rep.terminal_error = (g - limit_vec).cwiseAbs().maxCoeff();
  }
  rep.positivity_lost = rep.min_entries.back() < -tol.positivity;
  return rep;
}

std::pair<Matrix, Matrix> example_cyclic(int d) {
  if (d < 3) throw DimensionTooSmall("the bordered generator needs d >= 3");
  const double c = 1.0 / std::sqrt(static_cast<double>(d - 1));
  RealMatrix A = RealMatrix::Zero(d, d);
  for (int i = 0; i + 1 < d; ++i) {
    A(i, d - 1) = c;
    A(d - 1, i) = c;
  }
  Matrix B;
  if (d == 3) {
    RealMatrix Bd = RealMatrix::Zero(3, 3);
    Bd(0, 1) = Bd(1, 0) = -1.0 / std::sqrt(2.0);
    B = Bd.cast<Complex>();
  }
  return {A.cast<Complex>(), B};
}

DiscretizedModel example_nonlocal_laplacian(int n) {
  if (n < 8) throw BadGridSize("non-local Laplacian needs n >= 8");
  DiscretizedModel model;
  model.n = n;
  const double h = 1.0 / (n - 1);
  model.grid.resize(n);
  for (int i = 0; i < n; ++i) model.grid(i) = h * i;

  model.quadrature_weights = RealVector::Constant(n, h);
  model.quadrature_weights(0) = h / 2.0;
  model.quadrature_weights(n - 1) = h / 2.0;
  model.cone_u = RealVector::Ones(n);

  // L approximates the form operator u -> -u''. Ghost nodes at both ends are
  // eliminated through the coupled conditions u'(0) = -u'(1) = u(0) + u(1),
  // which places the non-local terms in the corners of the boundary rows.
  RealMatrix L = RealMatrix::Zero(n, n);
  const double ih2 = 1.0 / (h * h);
  for (int i = 1; i + 1 < n; ++i) {
    L(i, i - 1) = -ih2;
    L(i, i) = 2.0 * ih2;
    L(i, i + 1) = -ih2;
  }
  L(0, 0) = 2.0 * ih2 + 2.0 / h;
  L(0, 1) = -2.0 * ih2;
  L(0, n - 1) += 2.0 / h;
  L(n - 1, n - 1) = 2.0 * ih2 + 2.0 / h;
  L(n - 1, n - 2) = -2.0 * ih2;
  L(n - 1, 0) += 2.0 / h;

  model.generator = (-L).cast<Complex>();  // semigroup generator

  // Kernel oracle for R(0, generator) = L^{-1}:
  //   u(x) = 1/2 int_0^x (F(1) - F(y)) dy + 1/2 int_x^1 F(y) dy,
  // F the antiderivative of f, all integrals by composite trapezoid on a
  // refined grid so the oracle error stays subdominant.
  const RealVector grid = model.grid;
  model.kernel_oracle = [grid, n](const std::function<double(double)>& f) -> RealVector {
    const int oversample = 4;
    const int m = (n - 1) * oversample + 1;
    const double hf = 1.0 / (m - 1);
    RealVector fv(m);
    for (int i = 0; i < m; ++i) fv(i) = f(hf * i);
    RealVector F = RealVector::Zero(m);       // cumulative integral of f
    for (int i = 1; i < m; ++i) F(i) = F(i - 1) + 0.5 * (fv(i) + fv(i - 1)) * hf;
    RealVector C1 = RealVector::Zero(m);      // integral of F(1) - F(y)
    RealVector C2 = RealVector::Zero(m);      // integral of F(y)
    const double Ftot = F(m - 1);
    for (int i = 1; i < m; ++i) {
      C1(i) = C1(i - 1) + 0.5 * ((Ftot - F(i)) + (Ftot - F(i - 1))) * hf;
      C2(i) = C2(i - 1) + 0.5 * (F(i) + F(i - 1)) * hf;
    }
    const double C2tot = C2(m - 1);
    RealVector out(n);
    for (int i = 0; i < n; ++i) {
      const int j = i * oversample;
      out(i) = 0.5 * C1(j) + 0.5 * (C2tot - C2(j));
    }
    return out;
  };
  return model;
}

HilbertQuantReport demo_hilbert_quantitative(const DiscretizedModel& model, const Matrix& B,
                                             double lambda1, const Tolerances& tol) {
  validate_matrix(B);
  if (B.rows() != model.generator.rows()) throw PreconditionFailed("dimension mismatch");
  if (!is_nonneg(B, tol.positivity)) throw PreconditionFailed("B must be nonnegative");

  HilbertQuantReport rep;
  rep.lambda1 = lambda1;
  const Matrix& A = model.generator;
  const EigenSystem es = eigensystem(A, tol);
  rep.spectral_gap = lambda1 - es.spectral_bound();
  rep.B_norm = operator_norm(B);
  if (!(rep.B_norm < rep.spectral_gap)) {
    throw NormTooLarge("||B|| must stay below lambda1 - s(A) = " +
                       std::to_string(rep.spectral_gap));
  }
  // Validate lambda1: strong positivity of R(lambda, A) on a sampled mesh.
  for (int k = 1; k <= 12; ++k) {
    const double lam = es.spectral_bound() + rep.spectral_gap * k / 13.0;
    if (!is_strictly_positive(resolvent(A, Complex(lam, 0.0), tol), tol.positivity)) {
      throw PreconditionFailed("R(lambda, A) is not entrywise positive below lambda1");
    }
  }

  rep.classification = classify_semigroup(A + B, tol);
  rep.projection_min_entry = rep.classification.projection_min_entry;

  // Probe trajectory: positivity time of a one-sided bump.
  Vector probe = Vector::Zero(model.n);
  probe(model.n / 4) = 1.0;
  const double gap = eigensystem(A + B, tol).dominance_gap();
  const double t_max = gap > 0 ? 50.0 / gap : 50.0;
  rep.probe_positivity_time = positivity_time(A + B, probe, t_max, 0, tol);
  return rep;
}

}  // namespace evpos
