// Command-line front end: load matrices and models, run the classifiers,
// perturbation radii, rank-one formulas, scans and demos; emit JSON reports
// and CSV plot data.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "evpos/errors.hpp"
#include "evpos/json_io.hpp"
#include "evpos/linalg.hpp"
#include "evpos/models.hpp"
#include "evpos/perturbation.hpp"
#include "evpos/positivity.hpp"
#include "evpos/rank_one.hpp"

namespace {

using namespace evpos;

struct GlobalOpts {
  std::string out_path;     // empty = stdout
  std::string format = "json";
  std::string csv_out;      // optional extra CSV artifact
  double tol_pos = -1.0;    // overrides when >= 0
  double tol_spec = -1.0;
  std::uint64_t seed = 42;
};

Tolerances make_tolerances(const GlobalOpts& g) {
  Tolerances tol;
  if (g.tol_pos >= 0.0) tol.positivity = g.tol_pos;
  if (g.tol_spec >= 0.0) tol.spectral = g.tol_spec;
  return tol;
}

void write_output(const GlobalOpts& g, const std::string& text) {
  if (g.out_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(g.out_path);
  if (!out) throw ParseError("cannot open output file: " + g.out_path);
  out << text << "\n";
}

void write_csv_artifact(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open output file: " + path);
  out << text;
}

Complex parse_lambda(const std::string& s) {
  std::istringstream in(s);
  double re = 0.0, im = 0.0;
  char comma = 0;
  if (!(in >> re)) throw ParseError("cannot parse --lambda value: " + s);
  if (in >> comma) {
    if (comma != ',' || !(in >> im)) throw ParseError("cannot parse --lambda value: " + s);
  }
  return {re, im};
}

std::vector<double> parse_range(const std::string& s) {
  double a = 0.0, b = 0.0, step = 0.0;
  char c1 = 0, c2 = 0;
  std::istringstream in(s);
  if (!(in >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0.0) {
    throw ParseError("cannot parse --s-range, expected a:b:step with step > 0: " + s);
  }
  if (b < a) throw ParseError("empty --s-range: " + s);
  std::vector<double> grid;
  const int count = static_cast<int>(std::floor((b - a) / step + 0.5));
  for (int k = 0; k <= count; ++k) grid.push_back(a + k * step);
  return grid;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> vals;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      vals.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ParseError("cannot parse list entry: " + item);
    }
  }
  if (vals.empty()) throw ParseError("empty list: " + s);
  return vals;
}

std::vector<double> log_time_grid(double t_max, int points) {
  std::vector<double> ts;
  const double t_lo = 0.1;
  for (int k = 0; k < points; ++k) {
    ts.push_back(t_lo * std::pow(t_max / t_lo, static_cast<double>(k) / (points - 1)));
  }
  return ts;
}

// ---------------------------------------------------------------------------
// demos
// ---------------------------------------------------------------------------

const std::vector<std::pair<std::string, std::string>> kDemos = {
    {"counterexample-3d",
     "3x3 symmetric generator: eventual strong positivity destroyed at s > 4"},
    {"positive-family",
     "strongly positive family C_{a,s} whose sum with the 3x3 generator loses positivity"},
    {"reflection-interval",
     "reflection operator on [-1,1]: small rank-one coupling destroys eventual positivity"},
    {"cyclic-d", "bordered generator with strongly positive semigroup, fragile under tilts"},
    {"nonlocal-laplacian",
     "second-difference Laplacian on (0,1) with non-local boundary coupling"},
    {"hilbert-quantitative",
     "quantitative perturbation bound ||B|| < lambda1 - s(A) on the discretised Laplacian"}};

Json demo_counterexample(double s, const GlobalOpts& g, const Tolerances& tol) {
  auto [A, B] = example_counterexample_3d();
  Json out;
  out["demo"] = "counterexample-3d";
  out["s"] = s;
  out["classification_A"] = report_to_json(classify_semigroup(A, tol));
  out["classification_A_plus_sB"] = report_to_json(classify_semigroup(A + s * B, tol));

  std::vector<double> grid;
  for (int k = 0; k <= 16; ++k) grid.push_back(3.6 + 0.05 * k);  // hits s = 4 exactly
  const auto curve = eigencurve(A, B, grid, /*gauge_index=*/2, tol);
  for (const auto& p : curve) {
    if (std::abs(p.s - 4.0) < 1e-12) {
      out["lambda_prime_at_4"] = p.dlambda;
      Json du = Json::array();
      for (Eigen::Index i = 0; i < p.du.size(); ++i) du.push_back(p.du(i));
      out["u_prime_at_4"] = du;
    }
  }
  out["eigencurve_points"] = curve.size();
  if (!g.csv_out.empty() || g.format == "csv") {
    const std::string csv = eigencurve_to_csv(curve);
    if (!g.csv_out.empty()) write_csv_artifact(g.csv_out, csv);
    if (g.format == "csv") out["csv"] = csv;
  }
  return out;
}

Json demo_positive_family(double a, double s, const GlobalOpts&, const Tolerances& tol) {
  auto [A, B] = example_counterexample_3d();
  (void)B;
  Json out;
  out["demo"] = "positive-family";
  out["a"] = a;
  out["s"] = s;
  out["classification_C"] = report_to_json(classify_semigroup(example_positive_family(a, s), tol));
  out["classification_A_plus_C"] =
      report_to_json(classify_semigroup(A + example_positive_family(a, s), tol));

  // Largest a (by bisection) keeping the combined generator certified
  // not eventually positive at this s.
  double lo = 0.0, hi = 1.0;
  if (classify_semigroup(A + example_positive_family(0.0, s), tol).verdict ==
      Verdict::NotEventuallyPositive) {
    for (int it = 0; it < 40; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (classify_semigroup(A + example_positive_family(mid, s), tol).verdict ==
          Verdict::NotEventuallyPositive) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    out["nep_persists_up_to_a"] = lo;
    out["witness_a"] = lo / 2.0;
    out["classification_at_witness_a"] = report_to_json(
        classify_semigroup(A + example_positive_family(lo / 2.0, s), tol));
  }
  return out;
}

Json demo_reflection(int n, double alpha, double eps, double t_max, const GlobalOpts& g,
                     const Tolerances& tol) {
  const DiscretizedModel model = example_reflection_interval(n);
  Json out;
  out["demo"] = "reflection-interval";
  out["n"] = n;
  out["alpha"] = alpha;
  out["eps"] = eps;

  const EigenSystem es = eigensystem(model.generator, tol);
  Json distinct = Json::array();
  double last = std::numeric_limits<double>::quiet_NaN();
  for (int i = 0; i < es.dim(); ++i) {
    const double v = es.eigenvalues(i).real();
    if (std::isnan(last) || std::abs(v - last) > 1e-6) distinct.push_back(v);
    last = v;
  }
  out["distinct_eigenvalues"] = distinct;

  const Complex probe(0.37, 0.0);
  out["oracle_agreement"] = operator_norm(
      Matrix(resolvent(model.generator, probe, tol) - model.resolvent_oracle(probe)));

  const auto t_grid = log_time_grid(t_max, 48);
  const auto rep = demo_small_perturbation(model, alpha, eps, t_grid, tol);
  out["boundary_value"] = rep.boundary_value;
  out["limit_value"] = rep.limit_value;
  out["terminal_error"] = rep.terminal_error;
  out["perturbed_spectral_bound"] = rep.perturbed_spectral_bound;
  out["positivity_lost"] = rep.positivity_lost;

  const auto rep0 = demo_small_perturbation(model, 0.0, eps, t_grid, tol);
  out["unperturbed_positivity_time"] =
      rep0.unperturbed_positivity_time ? Json(*rep0.unperturbed_positivity_time) : Json();

  // Uniformity degradation: the largest lambda1 with R(lambda) f >= 0 on
  // (0, lambda1] for the sharpest grid ramp shrinks as the grid refines.
  Json trend = Json::array();
  for (int nn : {n / 4 * 2 + 1, n / 2 * 2 + 1, n}) {
    if (nn < 5) continue;
    const DiscretizedModel mm = example_reflection_interval(nn);
    const RealVector f = build_f_epsilon(mm, 4.0 / (nn - 1));
    double lo = 1e-4, hi = 2.0;
    for (int it = 0; it < 60; ++it) {
      const double mid = std::sqrt(lo * hi);
      const double val = (resolvent(mm.generator, Complex(mid, 0.0), tol) * to_complex(f))(0).real();
      (val >= 0.0 ? lo : hi) = mid;
    }
    trend.push_back(Json{{"n", nn}, {"eps", 4.0 / (nn - 1)}, {"lambda_threshold", hi}});
  }
  out["uniformity_degradation"] = trend;

  if (!g.csv_out.empty() || g.format == "csv") {
    std::ostringstream csv;
    csv.precision(17);
    csv << "t,min_entry\n";
    for (size_t i = 0; i < rep.times.size(); ++i) {
      csv << rep.times[i] << "," << rep.min_entries[i] << "\n";
    }
    if (!g.csv_out.empty()) write_csv_artifact(g.csv_out, csv.str());
    if (g.format == "csv") out["csv"] = csv.str();
  }
  return out;
}

Json demo_cyclic(int d, double eps, const GlobalOpts&, const Tolerances& tol) {
  auto [A, B] = example_cyclic(d);
  Json out;
  out["demo"] = "cyclic-d";
  out["d"] = d;
  out["eps"] = eps;

  // Power pattern: even powers repeat, odd powers collapse to A itself.
  const Matrix A2 = A * A;
  double even_err = 0.0, odd_err = 0.0;
  Matrix P = A2;
  for (int k = 1; k <= 3; ++k) {
    P = P * A2;  // A^{2k+2}
    even_err = std::max(even_err, operator_norm(Matrix(P - A2)));
    odd_err = std::max(odd_err, operator_norm(Matrix(P * A - A)));
  }
  out["even_power_error"] = even_err;
  out["odd_power_error"] = odd_err;

  Json evs = Json::array();
  const EigenSystem es = eigensystem(A, tol);
  for (int i = 0; i < es.dim(); ++i) evs.push_back(es.eigenvalues(i).real());
  out["eigenvalues"] = evs;

  Json mins = Json::array();
  for (double t : {0.1, 1.0, 10.0}) {
    mins.push_back(Json{{"t", t}, {"min_entry", expm(A, t, tol).real().minCoeff()}});
  }
  out["semigroup_min_entries"] = mins;
  out["classification_A"] = report_to_json(classify_semigroup(A, tol));
  if (B.size() > 0) {
    const Matrix M = A + eps * B;
    out["tilted_metzler_margin"] = metzler_margin(M, tol.spectral_abs(1.0));
    out["classification_tilted"] = report_to_json(classify_semigroup(M, tol));
  }
  return out;
}

Json demo_laplacian(int n, const GlobalOpts&, const Tolerances& tol) {
  const DiscretizedModel model = example_nonlocal_laplacian(n);
  Json out;
  out["demo"] = "nonlocal-laplacian";
  out["n"] = n;
  const EigenSystem es = eigensystem(model.generator, tol);
  out["spectral_bound"] = es.spectral_bound();
  out["resolvent_norm_at_0"] = operator_norm(resolvent(model.generator, Complex(0, 0), tol));
  out["metzler_margin"] = metzler_margin(model.generator, tol.spectral_abs(1.0));
  out["classification"] = report_to_json(classify_semigroup(model.generator, tol));

  const auto f = [](double x) { return std::cos(3.0 * x) + 2.0; };
  auto interior_error = [&](const DiscretizedModel& m) {
    RealVector fg(m.n);
    for (int i = 0; i < m.n; ++i) fg(i) = f(m.grid(i));
    const RealVector u = (resolvent(m.generator, Complex(0, 0), tol) * to_complex(fg)).real();
    const RealVector uo = m.kernel_oracle(f);
    double err = 0.0;
    for (int i = 0; i < m.n; ++i) {
      if (m.grid(i) >= 0.25 && m.grid(i) <= 0.75) err = std::max(err, std::abs(u(i) - uo(i)));
    }
    return err;
  };
  const double err_n = interior_error(model);
  const double err_half = interior_error(example_nonlocal_laplacian(n / 2));
  out["kernel_interior_error"] = err_n;
  out["kernel_observed_order"] = std::log2(err_half / err_n);
  return out;
}

Json demo_hilbert(int n, double b_norm, std::uint64_t seed, const GlobalOpts&,
                  const Tolerances& tol) {
  const DiscretizedModel model = example_nonlocal_laplacian(n);
  Rng rng(seed);
  const Matrix B =
      rescale_to_spectral_norm(random_symmetric_nonneg_matrix(rng, n), b_norm).cast<Complex>();
  const auto rep = demo_hilbert_quantitative(model, B, /*lambda1=*/0.0, tol);
  Json out;
  out["demo"] = "hilbert-quantitative";
  out["n"] = n;
  out["seed"] = seed;
  out["lambda1"] = rep.lambda1;
  out["spectral_gap"] = rep.spectral_gap;
  out["B_norm"] = rep.B_norm;
  out["classification"] = report_to_json(rep.classification);
  out["probe_positivity_time"] =
      rep.probe_positivity_time ? Json(*rep.probe_positivity_time) : Json();
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"eventual-positivity toolkit: classifiers, perturbation radii and "
               "rank-one calculus for matrix semigroups"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--out", g.out_path, "output file (default: stdout)");
  app.add_option("--format", g.format, "output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--csv-out", g.csv_out, "extra CSV artifact for curve/trajectory data");
  app.add_option("--tol-pos", g.tol_pos, "positivity margin override");
  app.add_option("--tol-spec", g.tol_spec, "spectral tolerance override");
  app.add_option("--seed", g.seed, "seed for randomised probes");

  std::string input, pert_path, rank1_path, lambda_str = "0", s_range, mu_list = "0.5,1,2,4,8";
  double radius = 0.5, t_time = 1.0, delta = 0.0, scale = 0.5, s_param = 4.05;
  double alpha = 0.1, eps_param = 0.05, t_max = 200.0, b_norm = 0.5, a_param = 0.05;
  int nodes = 128, trials = 200, grid_n = 65, d_param = 3, gauge = -1, kmax = -1;
  bool list_flag = false;
  std::string demo_id;

  auto* c_classify = app.add_subcommand("classify", "semigroup positivity classification");
  c_classify->add_option("--input", input, "matrix JSON")->required();

  auto* c_rscan = app.add_subcommand("resolvent-scan",
                                     "eventual positivity of the resolvent at an eigenvalue");
  c_rscan->add_option("--input", input)->required();
  c_rscan->add_option("--lambda", lambda_str, "real eigenvalue lambda0")->required();
  c_rscan->add_option("--delta", delta, "scan interval length (default: automatic)");

  auto* c_r1r = app.add_subcommand("rank1-resolvent", "closed-form rank-one resolvent update");
  c_r1r->add_option("--input", input)->required();
  c_r1r->add_option("--rank1", rank1_path, "rank-one JSON {phi, v, alpha}")->required();
  c_r1r->add_option("--lambda", lambda_str, "resolvent point re[,im]")->required();

  auto* c_r1s = app.add_subcommand("rank1-semigroup",
                                   "closed-form semigroup of an eigenvector-adapted update");
  c_r1s->add_option("--input", input)->required();
  c_r1s->add_option("--rank1", rank1_path)->required();
  c_r1s->add_option("--t", t_time, "time")->required();

  auto* c_radius = app.add_subcommand("radius", "admissible perturbation norm for a disk");
  c_radius->add_option("--input", input)->required();
  c_radius->add_option("--lambda", lambda_str, "simple real eigenvalue")->required();
  c_radius->add_option("--radius", radius, "disk radius")->required();
  c_radius->add_option("--nodes", nodes, "contour nodes");

  auto* c_certify = app.add_subcommand("certify", "perturbation certificate for the resolvent");
  c_certify->add_option("--input", input)->required();
  c_certify->add_option("--pert", pert_path, "perturbation matrix JSON")->required();
  c_certify->add_option("--lambda", lambda_str)->required();
  c_certify->add_option("--radius", radius)->required();

  auto* c_curve = app.add_subcommand("scan-eigencurve", "eigenvalue curve continuation");
  c_curve->add_option("--input", input)->required();
  c_curve->add_option("--pert", pert_path, "direction matrix JSON")->required();
  c_curve->add_option("--s-range", s_range, "a:b:step")->required();
  c_curve->add_option("--gauge", gauge, "gauge component index (default: automatic)");

  auto* c_destroyer = app.add_subcommand("destroyer",
                                         "scan for a positivity-destroying rank-one update");
  c_destroyer->add_option("--input", input)->required();
  c_destroyer->add_option("--mu-grid", mu_list, "comma-separated offsets above s(A)");

  auto* c_probe = app.add_subcommand("probe-openness", "random perturbations of the verdict");
  c_probe->add_option("--input", input)->required();
  c_probe->add_option("--trials", trials, "number of random perturbations");
  c_probe->add_option("--scale", scale, "fraction of the certified radius");

  auto* c_neumann = app.add_subcommand("neumann", "truncated Neumann resolvent with tail bound");
  c_neumann->add_option("--input", input)->required();
  c_neumann->add_option("--pert", pert_path)->required();
  c_neumann->add_option("--lambda", lambda_str)->required();
  c_neumann->add_option("--k-max", kmax, "truncation order")->required();

  auto* c_demo = app.add_subcommand("demo", "run a bundled example");
  c_demo->add_option("id", demo_id, "demo id (see --list)");
  c_demo->add_flag("--list", list_flag, "list demo ids");
  c_demo->add_option("--s", s_param, "perturbation strength (counterexample-3d)");
  c_demo->add_option("--a", a_param, "family parameter a (positive-family)");
  c_demo->add_option("--alpha", alpha, "coupling strength (reflection-interval)");
  c_demo->add_option("--epsilon", eps_param, "ramp mass (reflection-interval) / tilt (cyclic-d)");
  c_demo->add_option("--t-max", t_max, "trajectory horizon");
  c_demo->add_option("--grid-n", grid_n, "grid size for discretised models");
  c_demo->add_option("--d", d_param, "dimension (cyclic-d)");
  c_demo->add_option("--b-norm", b_norm, "perturbation norm (hilbert-quantitative)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg;
    msg << e.get_name() << ": " << e.what();
    std::cerr << error_to_json(ParseError(msg.str())).dump(2) << "\n";
    return 1;
  }

  const Tolerances tol = make_tolerances(g);
  try {
    Json out;
    if (*c_classify) {
      out = report_to_json(classify_semigroup(load_matrix_file(input), tol));
    } else if (*c_rscan) {
      const Complex l = parse_lambda(lambda_str);
      out = report_to_json(classify_resolvent_at(load_matrix_file(input), l.real(), tol, delta));
    } else if (*c_r1r) {
      const Matrix R = resolvent_rank1(load_matrix_file(input), parse_lambda(lambda_str),
                                       load_rank1_file(rank1_path), tol);
      out = matrix_to_json(R);
    } else if (*c_r1s) {
      const Matrix A = load_matrix_file(input);
      const Rank1 p = load_rank1_file(rank1_path);
      const Complex lambda0 =
          dual_pairing(p.v.conjugate(), A * p.v) / dual_pairing(p.v.conjugate(), p.v);
      const Matrix F = semigroup_rank1(A, t_time, Vector(p.alpha * p.phi), p.v, lambda0, tol);
      out = matrix_to_json(F);
    } else if (*c_radius) {
      const Matrix A = load_matrix_file(input);
      const double eps = eigenvalue_radius(A, parse_lambda(lambda_str).real(), radius, nodes, tol);
      out = Json{{"lambda0", parse_lambda(lambda_str).real()},
                 {"radius", radius},
                 {"epsilon", eps},
                 {"nodes", nodes}};
    } else if (*c_certify) {
      const Matrix A = load_matrix_file(input);
      const Matrix B = load_matrix_file(pert_path);
      const RealVector u = RealVector::Ones(A.rows());
      const double l0 = parse_lambda(lambda_str).real();
      bool diagonal = true;
      for (Eigen::Index i = 0; i < B.rows() && diagonal; ++i)
        for (Eigen::Index j = 0; j < B.cols() && diagonal; ++j)
          if (i != j && std::abs(B(i, j)) > tol.positivity) diagonal = false;
      const PerturbationCertificate cert =
          diagonal ? certify_multiplication_perturbation(A, l0, radius, B, u, tol)
                   : certify_resolvent_perturbation(A, l0, radius, B, u, tol);
      out = certificate_to_json(cert);
    } else if (*c_curve) {
      const auto grid = parse_range(s_range);
      const auto curve =
          eigencurve(load_matrix_file(input), load_matrix_file(pert_path), grid, gauge, tol);
      if (g.format == "csv") {
        write_output(g, eigencurve_to_csv(curve));
        return 0;
      }
      out = eigencurve_to_json(curve);
    } else if (*c_destroyer) {
      const auto mu_grid = parse_list(mu_list);
      const auto rep = destroyer_scan(load_matrix_file(input), mu_grid, tol);
      Json entries = Json::array();
      for (const auto& e : rep.entries) {
        entries.push_back(Json{{"mu", e.mu},
                               {"phi_index", e.phi_index},
                               {"min_entry", e.min_entry},
                               {"max_entry", e.max_entry},
                               {"mixed", e.mixed}});
      }
      out = Json{{"found", rep.found}, {"entries", entries}};
      if (rep.found) {
        out["mu"] = rep.mu;
        out["phi_index"] = rep.phi_index;
        out["destroyer"] = rank1_to_json(*rep.destroyer);
        out["perturbed_classification"] = report_to_json(*rep.perturbed_report);
      }
    } else if (*c_probe) {
      const auto res = openness_probe(load_matrix_file(input), trials, scale, g.seed, tol);
      out = Json{{"trials", res.trials},   {"preserved", res.preserved},
                 {"fraction", res.fraction}, {"epsilon", res.epsilon},
                 {"scale", res.scale},     {"seed", res.seed}};
    } else if (*c_neumann) {
      if (kmax < 0) throw ParseError("--k-max must be nonnegative");
      const auto [S, tail] = neumann_resolvent(load_matrix_file(input),
                                               load_matrix_file(pert_path),
                                               parse_lambda(lambda_str), kmax, tol);
      out = Json{{"partial_sum", matrix_to_json(S)}, {"tail_bound", tail}};
    } else if (*c_demo) {
      if (list_flag) {
        Json demos = Json::array();
        for (const auto& [id, descr] : kDemos) demos.push_back(Json{{"id", id}, {"about", descr}});
        out = Json{{"demos", demos}};
      } else if (demo_id == "counterexample-3d") {
        out = demo_counterexample(s_param, g, tol);
      } else if (demo_id == "positive-family") {
        out = demo_positive_family(a_param, s_param, g, tol);
      } else if (demo_id == "reflection-interval") {
        out = demo_reflection(grid_n, alpha, eps_param, t_max, g, tol);
      } else if (demo_id == "cyclic-d") {
        out = demo_cyclic(d_param, eps_param == 0.05 ? 0.01 : eps_param, g, tol);
      } else if (demo_id == "nonlocal-laplacian") {
        out = demo_laplacian(grid_n == 65 ? 64 : grid_n, g, tol);
      } else if (demo_id == "hilbert-quantitative") {
        out = demo_hilbert(grid_n == 65 ? 64 : grid_n, b_norm, g.seed, g, tol);
      } else {
        throw ParseError("unknown demo id: " + demo_id);
      }
    }
    write_output(g, out.dump(2));
    return 0;
  } catch (const Error& e) {
    std::cerr << error_to_json(e).dump(2) << "\n";
    return e.exit_code();
  } catch (const Json::exception& e) {
    std::cerr << error_to_json(ParseError(e.what())).dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << error_to_json(NumericalError("InternalError", e.what())).dump(2) << "\n";
    return 3;
  }
}
