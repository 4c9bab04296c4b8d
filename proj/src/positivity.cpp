#include "evpos/positivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "evpos/errors.hpp"

namespace evpos {

bool is_nonneg(const Vector& x, double tau) {
  const RealVector r = real_part_checked(x, tau);
  return r.minCoeff() >= -tau;
}

bool is_nonneg(const Matrix& M, double tau) {
  const RealMatrix r = real_part_checked(M, tau);
  return r.minCoeff() >= -tau;
}

bool is_strictly_positive(const Matrix& M, double tau) {
  const RealMatrix r = real_part_checked(M, tau);
  return r.minCoeff() > tau;
}

bool is_strongly_positive(const Vector& x, const RealVector& u, double tau) {
  if (u.size() != x.size()) throw PreconditionFailed("reference vector dimension mismatch");
  if (u.minCoeff() <= 0.0) throw PreconditionFailed("reference vector must be entrywise positive");
  const RealVector r = real_part_checked(x, tau);
  return (r.array() / u.array()).minCoeff() > tau;
}

double metzler_margin(const Matrix& A, double tau) {
  validate_matrix(A);
  const RealMatrix R = real_part_checked(A, tau);
  double margin = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < R.rows(); ++i)
    for (Eigen::Index j = 0; j < R.cols(); ++j)
      if (i != j) margin = std::min(margin, R(i, j));
  return margin;
}

bool is_metzler(const Matrix& A, double tau) { return metzler_margin(A, tau) >= -tau; }

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Positive: return "Positive";
    case Verdict::EventuallyStronglyPositive: return "EventuallyStronglyPositive";
    case Verdict::NotEventuallyPositive: return "NotEventuallyPositive";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "Positive") return Verdict::Positive;
  if (s == "EventuallyStronglyPositive") return Verdict::EventuallyStronglyPositive;
  if (s == "NotEventuallyPositive") return Verdict::NotEventuallyPositive;
  if (s == "Inconclusive") return Verdict::Inconclusive;
  throw ParseError("unknown verdict: " + s);
}

namespace {

struct DominantData {
  bool real_and_simple = false;
  bool nonreal = false;
  bool clustered = false;
  double value = 0.0;
  double gap = 0.0;
  RealMatrix projection;  // valid only when real_and_simple
  int index = 0;
};

DominantData analyse_dominant(const EigenSystem& es, const Tolerances& tol) {
  DominantData d;
  const double imag_tol = tol.spectral_abs(es.matrix_norm);
  d.value = es.eigenvalues(0).real();
  d.gap = es.dominance_gap();
  if (es.flags[0].clustered) {
    d.clustered = true;
    return d;
  }
  if (std::abs(es.eigenvalues(0).imag()) > imag_tol) {
    d.nonreal = true;
    return d;
  }
  d.real_and_simple = true;
  const Matrix P = es.projection(0);
  // The dominant projection of a real matrix with a real simple dominant
  // eigenvalue is real; tolerate solver roundoff at spectral tolerance.
  d.projection = real_part_checked(P, tol.spectral_abs(operator_norm(P)));
  return d;
}

std::string sampled_evidence(const Matrix& A, double gap, const Tolerances& tol) {
  std::ostringstream note;
  note << "sampled min entries of e^{tA}:";
  const double t_scale = gap > 0 ? 1.0 / gap : 1.0;
  for (double t : {0.1 * t_scale, t_scale, 10.0 * t_scale}) {
    try {
      const Matrix E = expm(A, t, tol);
      note << " t=" << t << ": " << E.real().minCoeff() << ";";
    } catch (const Error&) {
      note << " t=" << t << ": overflow;";
    }
  }
  return note.str();
}

}  // namespace

PositivityReport classify_semigroup(const Matrix& A, const Tolerances& tol) {
  validate_matrix(A);
  const double tau = tol.positivity;
  PositivityReport rep;
  rep.metzler_margin = metzler_margin(A, tol.spectral_abs(1.0));

  const EigenSystem es = eigensystem(A, tol);
  rep.dominant_eigenvalue = es.spectral_bound();
  rep.dominance_gap = es.dominance_gap();

  if (rep.metzler_margin >= -tau) {
    rep.verdict = Verdict::Positive;
    rep.evidence_notes = "generator is Metzler";
    if (es.dim() >= 2 && !es.flags[0].clustered &&
        std::abs(es.eigenvalues(0).imag()) <= tol.spectral_abs(es.matrix_norm)) {
      try {
        rep.projection_min_entry = analyse_dominant(es, tol).projection.minCoeff();
      } catch (const Error&) {
        // diagnostics only
      }
    }
    return rep;
  }

  const DominantData dom = analyse_dominant(es, tol);
  if (dom.clustered) {
    rep.verdict = Verdict::Inconclusive;
    rep.evidence_notes = "dominant eigenvalue lies in a cluster; refusing to certify. " +
                         sampled_evidence(A, rep.dominance_gap, tol);
    return rep;
  }
  if (dom.nonreal) {
    rep.verdict = Verdict::NotEventuallyPositive;
    rep.evidence_notes = "dominant eigenvalue is non-real";
    return rep;
  }

  const double pmin = dom.projection.minCoeff();
  const double pmax = dom.projection.maxCoeff();
  rep.projection_min_entry = pmin;

  const double gap_tol = tol.spectral_abs(es.matrix_norm);
  if (rep.dominance_gap <= gap_tol) {
    rep.verdict = Verdict::Inconclusive;
    rep.evidence_notes = "dominant eigenvalue is not strictly dominant. " +
                         sampled_evidence(A, rep.dominance_gap, tol);
    return rep;
  }

  if (pmin > tau) {
    rep.verdict = Verdict::EventuallyStronglyPositive;
    rep.evidence_notes = "dominant projection entrywise positive";
    return rep;
  }
  if (pmin < -tau && pmax > tau) {
    rep.verdict = Verdict::NotEventuallyPositive;
    rep.evidence_notes = "dominant projection has entries of both signs";
    return rep;
  }
  rep.verdict = Verdict::Inconclusive;
  rep.evidence_notes =
      "dominant projection is nonnegative with zero entries; plain eventual "
      "positivity is not decidable from the projection alone. " +
      sampled_evidence(A, rep.dominance_gap, tol);
  return rep;
}

bool neumann_extension_check(const Matrix& A, double lambda0, double lambda1,
                             const RealVector& u, const Tolerances& tol) {
  validate_matrix(A);
  if (!(lambda1 > lambda0)) throw PreconditionFailed("requires lambda1 > lambda0");
  if (u.size() != A.rows() || u.minCoeff() <= 0.0) {
    throw PreconditionFailed("reference vector must be entrywise positive");
  }
  // (lambda0, lambda1] must avoid the real spectrum; complex spectrum does
  // not obstruct a real interval.
  const EigenSystem es = eigensystem(A, tol);
  const double imag_tol = tol.spectral_abs(es.matrix_norm);
  for (int i = 0; i < es.dim(); ++i) {
    const Complex z = es.eigenvalues(i);
    if (std::abs(z.imag()) <= imag_tol && z.real() > lambda0 + imag_tol &&
        z.real() <= lambda1 + imag_tol) {
      throw SingularResolvent("real eigenvalue inside (lambda0, lambda1]");
    }
  }
  const Matrix R1 = resolvent(A, Complex(lambda1, 0.0), tol);
  if (!is_nonneg(R1, tol.positivity)) return false;

  Matrix power = R1;
  for (int k = 1; k <= es.dim(); ++k) {
    if (is_strictly_positive(power, tol.positivity)) return true;
    power = power * R1;
  }
  return false;
}

PositivityReport classify_resolvent_at(const Matrix& A, double lambda0,
                                       const Tolerances& tol, double delta) {
  validate_matrix(A);
  const double tau = tol.positivity;
  const EigenSystem es = eigensystem(A, tol);
  const double dist_tol = tol.spectral_abs(es.matrix_norm);
  const int idx = es.index_near(Complex(lambda0, 0.0), dist_tol);
  if (std::abs(es.eigenvalues(idx).imag()) > dist_tol) {
    throw PreconditionFailed("lambda0 does not match a real eigenvalue");
  }

  PositivityReport rep;
  rep.metzler_margin = metzler_margin(A, dist_tol);
  rep.dominant_eigenvalue = es.eigenvalues(idx).real();
  rep.dominance_gap = es.dominance_gap();

  if (es.flags[static_cast<size_t>(idx)].clustered) {
    rep.verdict = Verdict::Inconclusive;
    rep.evidence_notes = "eigenvalue lies in a cluster; refusing to certify";
    return rep;
  }

  if (delta <= 0.0) {
    double next_real = std::numeric_limits<double>::infinity();
    for (int i = 0; i < es.dim(); ++i) {
      const Complex z = es.eigenvalues(i);
      if (i != idx && std::abs(z.imag()) <= dist_tol && z.real() > lambda0 + dist_tol) {
        next_real = std::min(next_real, z.real());
      }
    }
    delta = std::isfinite(next_real) ? (next_real - lambda0) / 2.0 : 1.0;
  }

  const Matrix P = es.projection(idx);
  const RealMatrix Pr = real_part_checked(P, tol.spectral_abs(operator_norm(P)));
  rep.projection_min_entry = Pr.minCoeff();

  if (Pr.minCoeff() < -tau && Pr.maxCoeff() > tau) {
    rep.verdict = Verdict::NotEventuallyPositive;
    rep.evidence_notes = "spectral projection at lambda0 has entries of both signs";
    return rep;
  }

  // Geometric sampling mesh on (lambda0, lambda0 + delta].
  std::vector<double> mesh;
  const int per_decade = tol.lambda_points_per_decade;
  const int total = per_decade * tol.lambda_decades;
  for (int k = 0; k <= total; ++k) {
    mesh.push_back(lambda0 + delta * std::pow(10.0, -static_cast<double>(k) / per_decade));
  }

  bool all_strong = true;
  bool all_nonneg = true;
  double min_entry_closest = 0.0;
  for (double lam : mesh) {
    const Matrix R = resolvent(A, Complex(lam, 0.0), tol);
    const double mn = R.real().minCoeff();
    if (max_imag(R) > dist_tol) throw NotReal("resolvent of a real matrix came out complex");
    all_strong = all_strong && mn > tau;
    all_nonneg = all_nonneg && mn >= -tau;
    min_entry_closest = mn;  // mesh descends towards lambda0
  }

  const RealVector u = RealVector::Ones(A.rows());
  if (all_strong && neumann_extension_check(A, lambda0, lambda0 + delta, u, tol)) {
    rep.verdict = Verdict::EventuallyStronglyPositive;
    rep.certified_lambda1 = lambda0 + delta;
    rep.evidence_notes = "sampled resolvent entrywise positive; Neumann check certifies the interval";
    return rep;
  }
  if (all_nonneg) {
    rep.verdict = Verdict::Positive;
    rep.certified_lambda1 = lambda0 + delta;
    rep.evidence_notes = "resolvent nonnegative on the sampled interval but not strongly positive";
    return rep;
  }

  // Persistent negativity next to lambda0: where the projection entry
  // vanishes, the sign near lambda0 is the sign of the holomorphic part.
  const Matrix H = es.reduced_resolvent(A, idx);
  const RealMatrix Hr = real_part_checked(H, tol.spectral_abs(operator_norm(H)));
  bool certified_negative = false;
  for (Eigen::Index i = 0; i < Pr.rows() && !certified_negative; ++i) {
    for (Eigen::Index j = 0; j < Pr.cols() && !certified_negative; ++j) {
      if (std::abs(Pr(i, j)) <= tau && Hr(i, j) < -tau) certified_negative = true;
    }
  }
  if (certified_negative && min_entry_closest < -tau) {
    rep.verdict = Verdict::NotEventuallyPositive;
    rep.evidence_notes =
        "projection has a vanishing entry whose holomorphic resolvent part is "
        "negative; sampled resolvent stays negative arbitrarily close to lambda0";
    return rep;
  }
  rep.verdict = Verdict::Inconclusive;
  rep.evidence_notes = "sampled resolvent changes sign on the mesh without a certificate";
  return rep;
}

std::optional<double> positivity_time(const Matrix& A, const Vector& f, double t_max,
                                      int mesh_points, const Tolerances& tol) {
  validate_matrix(A);
  if (f.size() != A.rows()) throw PreconditionFailed("vector dimension mismatch");
  if (f.norm() == 0.0) throw PreconditionFailed("requires f != 0");
  if (!(t_max > 0.0)) throw PreconditionFailed("requires t_max > 0");
  if (mesh_points <= 0) mesh_points = tol.time_mesh_points;

  const double tau = tol.positivity;
  auto min_entry_at = [&](double t) {
    return (expm(A, t, tol) * f).real().minCoeff();
  };

  std::vector<double> ts{0.0};
  const double t_lo = 1e-3;
  for (int k = 0; k < mesh_points; ++k) {
    ts.push_back(t_lo * std::pow(t_max / t_lo, static_cast<double>(k) / (mesh_points - 1)));
  }
  std::vector<bool> ok;
  ok.reserve(ts.size());
  for (double t : ts) ok.push_back(min_entry_at(t) >= -tau);

  // Smallest index from which the trajectory stays nonnegative at all
  // remaining samples.
  int first = -1;
  for (int i = static_cast<int>(ts.size()) - 1; i >= 0; --i) {
    if (!ok[static_cast<size_t>(i)]) break;
    first = i;
  }
  if (first < 0) return std::nullopt;
  if (first == 0) return 0.0;

  // Refine the last sign change by bisection.
  double lo = ts[static_cast<size_t>(first - 1)];
  double hi = ts[static_cast<size_t>(first)];
  for (int it = 0; it < 60 && (hi - lo) > 1e-12 * (1.0 + hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (min_entry_at(mid) >= -tau) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace evpos
