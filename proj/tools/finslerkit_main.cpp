// finslerkit command-line front end: averaged metrics, conformal field
// classification, sphere-case demonstrations, and similarity/inversion
// checks, all emitting machine-readable JSON (and CSV trajectory dumps).
//
// Exit codes: 0 success, 2 invalid spec/config, 3 positive-definiteness
// failure, 4 flow escaped the chart, 5 a demo invariant failed,
// 1 unexpected error.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "finslerkit/averaged_metric.hpp"
#include "finslerkit/catalog.hpp"
#include "finslerkit/conformal.hpp"
#include "finslerkit/errors.hpp"
#include "finslerkit/json_io.hpp"
#include "finslerkit/liouville.hpp"
#include "finslerkit/sphere.hpp"

using namespace finsler;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidSpec = 2;
constexpr int kExitNotPositiveDefinite = 3;
constexpr int kExitFlowEscape = 4;
constexpr int kExitSuiteFailure = 5;

struct CommonOptions {
  std::string norm_arg = "euclid-identity";
  int dim = 2;
  int p = 4;
  int resolution = 0;  // 0 -> per-dimension default
  std::string hessian = "analytic";
  double fd_step = 1e-5;
  double tol = 1e-4;
  std::uint64_t seed = 0;
  std::string out;
};

Norm resolve_norm(const std::string& arg, int dim, int p) {
  if (!arg.empty() && arg.front() == '{') return parse_norm_spec(arg);
  if (!arg.empty() && arg.front() == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw InvalidSpecError("cannot open norm spec file '" + arg.substr(1) + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_norm_spec(buffer.str());
  }
  return catalog_norm(arg, dim, p);
}

HessianStrategy resolve_strategy(const std::string& mode, double fd_step,
                                 const Norm& norm) {
  if (mode == "analytic") {
    if (!norm.has_analytic_hessian())
      throw InvalidSpecError("norm family has no analytic Hessian; use --hessian fd");
    return HessianStrategy::analytic();
  }
  if (mode == "fd") return HessianStrategy::finite_difference(fd_step);
  throw InvalidSpecError("--hessian must be 'analytic' or 'fd'");
}

int quad_resolution(const CommonOptions& opt) {
  return opt.resolution > 0 ? opt.resolution : default_resolution(opt.dim);
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw InvalidSpecError("cannot open output file '" + out_path + "'");
  out << text;
}

void emit(Json report, const std::string& out_path) {
  write_output(report.dump(2) + "\n", out_path);
}

Json config_echo(const CommonOptions& opt, const Norm& norm) {
  Json config;
  config["norm"] = norm_to_json(norm);
  config["resolution"] = quad_resolution(opt);
  config["hessian"] = opt.hessian;
  if (opt.hessian == "fd") config["fd_step"] = opt.fd_step;
  return config;
}

// ---------------------------------------------------------------- validate

int run_validate(const CommonOptions& opt, int samples, double axiom_tol) {
  Norm norm = resolve_norm(opt.norm_arg, opt.dim, opt.p);
  NormValidation v = validate_norm(norm, samples, opt.seed, axiom_tol);
  Json report;
  report["schema"] = 1;
  report["command"] = "validate-norm";
  report["config"]["norm"] = norm_to_json(norm);
  report["config"]["samples"] = samples;
  report["config"]["seed"] = opt.seed;
  report["max_homogeneity_residual"] = v.max_homogeneity_residual;
  report["max_triangle_violation"] = v.max_triangle_violation;
  report["min_on_unit_sphere"] = v.min_on_unit_sphere;
  report["tolerance"] = v.tolerance;
  report["homogeneous"] = v.homogeneous();
  report["subadditive"] = v.subadditive();
  report["positive"] = v.positive();
  report["ok"] = v.ok();
  emit(report, opt.out);
  return kExitOk;
}

// -------------------------------------------------------------- avg-metric

struct AvgMetricOptions {
  int grid = 0;  // > 0: also export the metric field on a grid
  double box_half = 1.0;
  std::string factor = "constant";
  double factor_value = 1.0;
  std::vector<double> factor_a;
};

int run_avg_metric(const CommonOptions& opt, const AvgMetricOptions& aopt) {
  Norm norm = resolve_norm(opt.norm_arg, opt.dim, opt.p);
  SphereQuadrature quad = build_sphere_quadrature(norm.dim(), quad_resolution(opt));
  HessianStrategy strategy = resolve_strategy(opt.hessian, opt.fd_step, norm);
  SymBilinearForm g = averaged_form(norm, quad, strategy);
  auto one = [](const Vector&) { return 1.0; };

  Json report;
  report["schema"] = 1;
  report["command"] = "avg-metric";
  report["config"] = config_echo(opt, norm);
  report["g"] = matrix_to_json(g.matrix());
  report["min_eig"] = g.min_eigenvalue();
  report["definiteness"] = to_string(g.definiteness());
  report["V"] = unit_ball_volume(norm, quad);
  report["integral_omega"] = indicatrix_integral(norm, one, quad);
  report["anisotropy"] = radial_anisotropy(norm, quad);

  if (aopt.grid > 0) {
    Box box = Box::centered(norm.dim(), aopt.box_half);
    FinslerField field = [&] {
      if (aopt.factor == "constant")
        return FinslerField::conformal(
            box, norm, [c = aopt.factor_value](const Vector&) { return c; });
      if (aopt.factor == "exp-linear") {
        Vector a = Vector::Zero(norm.dim());
        for (size_t i = 0; i < aopt.factor_a.size() && i < size_t(norm.dim()); ++i)
          a[i] = aopt.factor_a[i];
        return FinslerField::conformal(
            box, norm, [a](const Vector& x) { return std::exp(a.dot(x)); });
      }
      throw InvalidSpecError("--factor must be 'constant' or 'exp-linear'");
    }();
    report["config"]["grid"] = aopt.grid;
    report["config"]["box_half"] = aopt.box_half;
    report["config"]["factor"] = aopt.factor;
    report["field"] =
        metric_field_to_json(averaged_metric_field(field, aopt.grid, quad, strategy));
  }

  emit(report, opt.out);
  return kExitOk;
}

// ---------------------------------------------------------------- classify

struct ClassifyOptions {
  std::string field = "radial";
  std::string factor = "constant";
  double factor_value = 1.0;
  std::vector<double> factor_a;
  double box_half = 2.0;
  int points = 8;
  int dirs = 16;
  bool transfer = true;
  double flow_horizon = 0.05;
};

int run_classify(const CommonOptions& opt, const ClassifyOptions& copt) {
  Norm norm = resolve_norm(opt.norm_arg, opt.dim, opt.p);
  Box box = Box::centered(norm.dim(), copt.box_half);

  FinslerField field = [&] {
    if (copt.factor == "constant")
      return copt.factor_value == 1.0
                 ? FinslerField::minkowski(box, norm)
                 : FinslerField::conformal(box, norm, [c = copt.factor_value](
                                                          const Vector&) { return c; });
    if (copt.factor == "exp-linear") {
      Vector a = Vector::Zero(norm.dim());
      for (size_t i = 0; i < copt.factor_a.size() && i < size_t(norm.dim()); ++i)
        a[i] = copt.factor_a[i];
      return FinslerField::conformal(
          box, norm, [a](const Vector& x) { return std::exp(a.dot(x)); });
    }
    throw InvalidSpecError("--factor must be 'constant' or 'exp-linear'");
  }();

  VectorField v = catalog_field(copt.field, norm.dim());
  ConformalReport report =
      classify_field(field, v, copt.points, copt.dirs, opt.seed, opt.tol);

  // Secondary finite-time check for flows claimed homothetic/isometric: the
  // scaling along a short real flow must match e^{ct}, and the trajectory
  // must stay in the chart (escape surfaces as exit code 4).
  double finite_time_residual = 0.0;
  if (report.verdict == ConformalVerdict::Homothetic ||
      report.verdict == ConformalVerdict::Killing) {
    double c = report.verdict == ConformalVerdict::Killing ? 0.0
                                                           : report.homothety_constant;
    Vector xi0 = Vector::Zero(norm.dim());
    xi0[0] = 1.0;
    int checks = std::min<int>(4, report.points.size());
    for (int i = 0; i < checks; ++i) {
      const Vector& x = report.points[i];
      double f0 = field.value(x, xi0);
      for (double sign : {1.0, -1.0}) {
        double t = sign * copt.flow_horizon;
        FlowState moved = flow_step(v, x, xi0, t, 64, &field.chart());
        double ratio = field.value(moved.point, moved.frame_vector) / f0;
        finite_time_residual =
            std::max(finite_time_residual, std::abs(std::log(ratio) - c * t));
      }
    }
  }

  Json out;
  out["schema"] = 1;
  out["command"] = "classify";
  out["config"] = config_echo(opt, norm);
  out["config"]["field"] = copt.field;
  out["config"]["factor"] = copt.factor;
  out["config"]["box_half"] = copt.box_half;
  out["config"]["points"] = copt.points;
  out["config"]["dirs"] = copt.dirs;
  out["config"]["tol"] = opt.tol;
  out["config"]["seed"] = opt.seed;
  out["verdict"] = to_string(report.verdict);
  if (report.verdict == ConformalVerdict::Homothetic)
    out["c"] = report.homothety_constant;
  out["alpha_stats"]["min"] = report.stats.min;
  out["alpha_stats"]["max"] = report.stats.max;
  out["alpha_stats"]["mean"] = report.stats.mean;
  out["residual"] = report.residual;
  out["finite_time_residual"] = finite_time_residual;

  if (copt.transfer && report.verdict != ConformalVerdict::NotConformal) {
    SphereQuadrature quad = build_sphere_quadrature(norm.dim(), quad_resolution(opt));
    HessianStrategy strategy = resolve_strategy(opt.hessian, opt.fd_step, norm);
    TransferReport transfer = transfer_consistency(
        field, v, quad, strategy, copt.points, copt.dirs, opt.seed, opt.tol);
    out["transfer"]["riemann_verdict"] = to_string(transfer.riemann_verdict);
    out["transfer"]["max_factor_mismatch"] = transfer.max_factor_mismatch;
  }

  emit(out, opt.out);
  return kExitOk;
}

// ------------------------------------------------------------- sphere-demo

struct DemoOptions {
  std::string which_case = "2b";
  std::string config_path;
  std::string traj_out;
  double b_magnitude = 100.0;
  int starts = 20;
  double horizon = 30.0;
};

struct InvariantRow {
  std::string name;
  double value;
  double tolerance;
  bool pass;
};

void push_invariant(std::vector<InvariantRow>& rows, const std::string& name,
                    double value, double tolerance) {
  rows.push_back({name, value, tolerance, value <= tolerance});
}

// Dichotomy rows assert a LOWER bound (the quantity must exceed the
// threshold for the non-euclidean member of the pair).
void push_lower_bound(std::vector<InvariantRow>& rows, const std::string& name,
                      double value, double threshold) {
  rows.push_back({name, value, threshold, value >= threshold});
}

int finish_demo(const CommonOptions& opt, const std::string& which_case,
                std::vector<InvariantRow> rows) {
  Json out;
  out["schema"] = 1;
  out["command"] = "sphere-demo";
  out["case"] = which_case;
  out["config"]["seed"] = opt.seed;
  Json list = Json::array();
  std::string first_failure;
  for (const auto& row : rows) {
    Json entry;
    entry["name"] = row.name;
    entry["value"] = row.value;
    entry["tolerance"] = row.tolerance;
    entry["pass"] = row.pass;
    list.push_back(std::move(entry));
    if (!row.pass && first_failure.empty()) first_failure = row.name;
  }
  out["invariants"] = std::move(list);
  if (first_failure.empty())
    out["first_failure"] = nullptr;
  else
    out["first_failure"] = first_failure;
  emit(out, opt.out);
  if (!first_failure.empty()) {
    std::cerr << "sphere-demo: first failing invariant: " << first_failure << "\n";
    return kExitSuiteFailure;
  }
  return kExitOk;
}

int run_demo_2a(const CommonOptions& opt) {
  using Pole = StereographicChart::Pole;
  Rng rng(opt.seed);
  std::vector<InvariantRow> rows;

  // Conformality of the projection on tangent pairs.
  {
    StereographicChart north(2, Pole::North);
    double residual = 0.0;
    for (int k = 0; k < 50; ++k) {
      Vector q = rng.unit_vector(3);
      if (1.0 - q[2] < 1e-2) continue;
      Vector xi = rng.gaussian_vector(3);
      xi -= xi.dot(q) * q;
      Vector eta = rng.gaussian_vector(3);
      eta -= eta.dot(q) * q;
      double sigma = north.factor(q);
      residual = std::max(residual,
                          std::abs(north.push_tangent(q, xi).dot(north.push_tangent(q, eta)) -
                                   sigma * sigma * xi.dot(eta)));
    }
    push_invariant(rows, "stereo-conformality", residual, 1e-9);
  }

  // The two charts compose to the inversion.
  {
    StereographicChart north(2, Pole::North), south(2, Pole::South);
    double residual = 0.0;
    for (int k = 0; k < 100; ++k) {
      Vector z = rng.gaussian_vector(2);
      if (z.norm() < 0.05) continue;
      residual = std::max(
          residual, (south.project(north.unproject(z)) - invert_point(z)).norm());
    }
    push_invariant(rows, "chart-transition-inversion", residual, 1e-10);
  }

  // dI_q equals the reflection R_q at unit points.
  {
    double residual = 0.0;
    for (int k = 0; k < 20; ++k) {
      Vector q = rng.unit_vector(2);
      Matrix reflection = Matrix::Identity(2, 2) - 2.0 * q * q.transpose();
      residual = std::max(
          residual, (inversion_jacobian(q) - reflection).cwiseAbs().maxCoeff());
    }
    push_invariant(rows, "inversion-differential-reflection", residual, 1e-8);
  }

  // Products of the reflections are orthogonal.
  {
    double residual = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      Matrix product = Matrix::Identity(2, 2);
      for (int k = 0; k < 6; ++k) product = inversion_jacobian(rng.unit_vector(2)) * product;
      residual = std::max(residual,
                          (product.transpose() * product - Matrix::Identity(2, 2))
                              .cwiseAbs()
                              .maxCoeff());
    }
    push_invariant(rows, "reflection-products-orthogonal", residual, 1e-8);
  }

  // Reflection dichotomy: invariance of the norm under all the reflections
  // R_q forces euclidean; the quartic norm visibly fails it.
  {
    double euclid_spread = 0.0, quartic_spread = std::numeric_limits<double>::infinity();
    Norm euclid = Norm::euclidean_identity(2);
    Norm quartic = Norm::even_p(2, 4);
    for (int k = 0; k < 5; ++k) {
      Vector q = rng.unit_vector(2);
      Matrix reflection = Matrix::Identity(2, 2) - 2.0 * q * q.transpose();
      DifferentiableMap map = similarity_map(1.0, reflection, Vector::Zero(2));
      euclid_spread = std::max(
          euclid_spread, directional_stretch_spread(euclid, map, Vector::Zero(2) , 128,
                                                    opt.seed + k));
      quartic_spread = std::min(
          quartic_spread, directional_stretch_spread(quartic, map, Vector::Zero(2), 128,
                                                     opt.seed + k));
    }
    push_invariant(rows, "reflection-dichotomy-euclid", euclid_spread, 1e-7);
    push_lower_bound(rows, "reflection-dichotomy-quartic", quartic_spread, 1e-2);
  }

  // h_A limit probe (three-dimensional so a genuine rotation can fix b).
  {
    int depth = 40;
    Matrix a = plane_rotation(3, 0, 1, 2.0 * M_PI / depth);
    Vector b(3);
    b << 0.0, 0.0, 1.0;
    MobiusMap fbar(a, b);
    Vector z0(3), xi0(3);
    z0 << 0.8, -0.3, 0.4;
    xi0 << 0.3, 0.9, -0.2;
    HaProbe euclid = ha_isometry_probe(Norm::euclidean_identity(3), fbar, z0, xi0, depth);
    HaProbe quartic = ha_isometry_probe(Norm::even_p(3, 4), fbar, z0, xi0, depth);
    push_invariant(rows, "ha-isometry-euclid", euclid.drift, 1e-9);
    push_lower_bound(rows, "ha-isometry-quartic", quartic.drift, 1e-2);
  }

  return finish_demo(opt, "2a", std::move(rows));
}

int run_demo_2b(const CommonOptions& opt, const DemoOptions& dopt) {
  using Pole = StereographicChart::Pole;
  Rng rng(opt.seed);
  std::vector<InvariantRow> rows;
  StereographicChart north(2, Pole::North);
  Vector b_unit(2);
  b_unit << 1.0, 0.0;
  MobiusMap fbar(Matrix::Identity(2, 2), b_unit);

  // psi(0) = 1 straight from the formula, and dfbar at 0 is the rotation part.
  push_invariant(rows, "psi-at-origin", std::abs(fbar.factor(Vector::Zero(2)) - 1.0),
                 0.0);
  {
    Matrix fd(2, 2);
    const double h = 1e-6;
    for (int col = 0; col < 2; ++col) {
      Vector probe = Vector::Zero(2);
      probe[col] = h;
      Vector fp = fbar.apply(probe);
      probe[col] = -h;
      Vector fm = fbar.apply(probe);
      fd.col(col) = (fp - fm) / (2.0 * h);
    }
    push_invariant(rows, "dfbar-at-origin",
                   (fd - fbar.rotation()).cwiseAbs().maxCoeff(), 1e-8);
  }

  // Conjugation identity I . f . I = fbar.
  {
    double residual = 0.0;
    for (int k = 0; k < 100; ++k) {
      Vector q = rng.gaussian_vector(2);
      if (q.norm() < 0.1) continue;
      Vector affine = invert_point(q) + b_unit;
      if (affine.norm() < 0.1) continue;
      residual = std::max(residual, (invert_point(affine) - fbar.apply(q)).norm());
    }
    push_invariant(rows, "inversion-conjugation", residual, 1e-10);
  }

  // v1 vanishes exactly at the pole.
  {
    Vector pole(3);
    pole << 0.0, 0.0, 1.0;
    push_invariant(rows, "v1-zero-at-pole", v1_field(north, b_unit)(pole).norm(), 0.0);
  }

  // Long-horizon convergence to the pole.
  {
    Vector b = dopt.b_magnitude * b_unit;
    Vector pole(3);
    pole << 0.0, 0.0, 1.0;
    double worst = 0.0;
    int tested = 0;
    while (tested < dopt.starts) {
      Vector q = rng.unit_vector(3);
      if (north.factor(q) > 5.0) continue;
      ++tested;
      for (double sign : {1.0, -1.0})
        worst = std::max(worst,
                         (v1_flow(north, b, q, sign * dopt.horizon) - pole).norm());
    }
    push_invariant(rows, "flow-convergence", worst, 1e-3);
  }

  // m is flow-invariant for the quartic pushforward, M vanishes for round F.
  {
    SphereQuadrature quad = build_sphere_quadrature(2, 192);
    HessianStrategy strategy = HessianStrategy::analytic();
    SphereFinsler quartic = SphereFinsler::pushforward(north, Norm::even_p(2, 4));
    SphereMetric g = averaged_sphere_metric(quartic, quad, strategy);
    double m_residual = 0.0;
    int tested = 0;
    while (tested < 5) {
      Vector q = rng.unit_vector(3);
      if (north.factor(q) > 3.0) continue;
      ++tested;
      double reference = m_function(quartic, g, north, b_unit, q);
      for (double t : {1.0, 2.0, 5.0}) {
        Vector moved = v1_flow(north, b_unit, q, t);
        m_residual = std::max(
            m_residual, std::abs(m_function(quartic, g, north, b_unit, moved) - reference));
      }
    }
    push_invariant(rows, "m-flow-invariance", m_residual, 1e-5);

    SphereFinsler round3 = SphereFinsler::round(2, 3.0);
    SphereMetric g_round = averaged_sphere_metric(round3, quad, strategy);
    double m_max = 0.0;
    tested = 0;
    while (tested < 10) {
      Vector q = rng.unit_vector(3);
      if (std::abs(q[2]) > 0.95) continue;
      ++tested;
      m_max = std::max(m_max, big_m_function(round3, g_round, q, 128, opt.seed + tested));
    }
    push_invariant(rows, "M-vanishes-for-round", m_max, 1e-6);
  }

  // Trajectory dump: integral curves through a ring of starts (unit b).
  if (!dopt.traj_out.empty()) {
    std::ostringstream csv;
    csv << std::setprecision(17);
    csv << "trajectory,t,q_0,q_1,q_2\n";
    int n_traj = 12;
    for (int i = 0; i < n_traj; ++i) {
      double phi = 2.0 * M_PI * i / n_traj;
      Vector q(3);
      q << 0.2 * std::cos(phi), 0.2 * std::sin(phi), 0.0;
      q[2] = -std::sqrt(1.0 - q.head(2).squaredNorm());
      for (double t = -6.0; t <= 6.0 + 1e-9; t += 0.05) {
        Vector moved = v1_flow(north, b_unit, q, t);
        csv << i << "," << t << "," << moved[0] << "," << moved[1] << ","
            << moved[2] << "\n";
      }
    }
    write_output(csv.str(), dopt.traj_out);
  }

  return finish_demo(opt, "2b", std::move(rows));
}

int run_demo(const CommonOptions& opt, DemoOptions dopt) {
  if (!dopt.config_path.empty()) {
    std::ifstream in(dopt.config_path);
    if (!in)
      throw InvalidSpecError("cannot open config file '" + dopt.config_path + "'");
    Json config = Json::parse(in, nullptr, false);
    if (config.is_discarded()) throw InvalidSpecError("sphere-demo config: malformed JSON");
    if (config.contains("case")) dopt.which_case = config["case"].get<std::string>();
    if (config.contains("b_magnitude"))
      dopt.b_magnitude = config["b_magnitude"].get<double>();
    if (config.contains("starts")) dopt.starts = config["starts"].get<int>();
    if (config.contains("horizon")) dopt.horizon = config["horizon"].get<double>();
  }
  if (dopt.which_case == "2a") return run_demo_2a(opt);
  if (dopt.which_case == "2b") return run_demo_2b(opt, dopt);
  throw InvalidSpecError("--case must be '2a' or '2b'");
}

// ---------------------------------------------------------- liouville-check

struct LiouvilleOptions {
  std::string map = "inversion";
  double mu = 2.0;
  double angle = 0.8;
  int points = 5;
  int dirs = 128;
};

int run_liouville(const CommonOptions& opt, const LiouvilleOptions& lopt) {
  Norm norm = resolve_norm(opt.norm_arg, opt.dim, opt.p);
  const int dim = norm.dim();
  Rng rng(opt.seed);

  DifferentiableMap map = [&]() -> DifferentiableMap {
    if (lopt.map == "inversion") return inversion_map(dim);
    if (lopt.map == "similarity") {
      Vector shift = Vector::Zero(dim);
      shift[0] = 1.0;
      return similarity_map(lopt.mu, plane_rotation(dim, 0, 1, lopt.angle), shift);
    }
    if (lopt.map == "mobius") {
      Vector b = Vector::Zero(dim);
      b[0] = 1.0;
      return mobius_plane_map(Matrix::Identity(dim, dim), b);
    }
    throw InvalidSpecError("--map must be inversion, similarity, or mobius");
  }();

  // Stretch spread at generic base points (away from the inversion center).
  Json spread_rows = Json::array();
  for (int k = 0; k < lopt.points; ++k) {
    Vector x = rng.gaussian_vector(dim);
    while (x.norm() < 0.3) x = rng.gaussian_vector(dim);
    double spread = directional_stretch_spread(norm, map, x, lopt.dirs, opt.seed + k);
    Json row;
    row["x"] = vector_to_json(x);
    row["spread"] = spread;
    spread_rows.push_back(std::move(row));
  }

  // Global similarity fit on an annulus sample.
  std::vector<Vector> xs, ys;
  while (static_cast<int>(xs.size()) < 16) {
    Vector x = rng.gaussian_vector(dim);
    double len = x.norm();
    if (len < 0.5 || len > 2.0) continue;
    xs.push_back(x);
    ys.push_back(map.apply(x));
  }
  SimilarityFit fit = fit_similarity(xs, ys);

  Json out;
  out["schema"] = 1;
  out["command"] = "liouville-check";
  out["config"]["norm"] = norm_to_json(norm);
  out["config"]["map"] = lopt.map;
  out["config"]["points"] = lopt.points;
  out["config"]["dirs"] = lopt.dirs;
  out["config"]["seed"] = opt.seed;
  out["spread_per_point"] = std::move(spread_rows);
  out["similarity_fit"]["mu"] = fit.mu;
  out["similarity_fit"]["rotation"] = matrix_to_json(fit.rotation);
  out["similarity_fit"]["translation"] = vector_to_json(fit.translation);
  out["similarity_fit"]["residual"] = fit.residual;
  emit(out, opt.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finslerkit: averaged Riemannian metrics of Finsler norms, "
               "conformal vector field classification, and sphere geometry demos"};
  app.require_subcommand(1);

  CommonOptions opt;
  ClassifyOptions copt;
  DemoOptions dopt;
  LiouvilleOptions lopt;
  int validate_samples = 1000;
  double axiom_tol = 1e-9;

  auto add_common = [&](CLI::App* sub, bool needs_seed) {
    sub->add_option("--norm", opt.norm_arg,
                    "catalog name, inline JSON spec, or @file.json");
    sub->add_option("--dim", opt.dim, "dimension for catalog norms")
        ->check(CLI::Range(2, 6));
    sub->add_option("--p", opt.p, "exponent for --norm even-p");
    sub->add_option("--resolution", opt.resolution, "sphere quadrature resolution");
    sub->add_option("--hessian", opt.hessian, "analytic | fd");
    sub->add_option("--fd-step", opt.fd_step, "relative finite-difference step");
    sub->add_option("--tol", opt.tol, "classification tolerance");
    auto* seed = sub->add_option("--seed", opt.seed, "random seed");
    if (needs_seed) seed->required();
    sub->add_option("--out", opt.out, "output path (stdout when omitted)");
  };

  CLI::App* validate = app.add_subcommand("validate-norm", "sample the norm axioms");
  add_common(validate, true);
  validate->add_option("--samples", validate_samples, "sample count");
  validate->add_option("--axiom-tol", axiom_tol, "residual tolerance for the verdict");

  AvgMetricOptions aopt;
  CLI::App* avg = app.add_subcommand("avg-metric", "averaged Riemannian metric of a norm");
  add_common(avg, false);
  avg->add_option("--grid", aopt.grid,
                  "also export the metric field on an N^dim chart grid");
  avg->add_option("--box-half", aopt.box_half, "chart half-width for --grid");
  avg->add_option("--factor", aopt.factor, "constant | exp-linear (with --grid)");
  avg->add_option("--factor-value", aopt.factor_value, "constant factor value");
  avg->add_option("--factor-a", aopt.factor_a,
                  "coefficients of the exp-linear factor");

  CLI::App* classify = app.add_subcommand("classify", "classify a vector field");
  add_common(classify, true);
  classify->add_option("--field", copt.field,
                       "radial | rotation | translation | shear | mobius");
  classify->add_option("--factor", copt.factor, "constant | exp-linear");
  classify->add_option("--factor-value", copt.factor_value, "constant factor value");
  classify->add_option("--factor-a", copt.factor_a,
                       "coefficients of the exp-linear factor");
  classify->add_option("--box-half", copt.box_half, "chart half-width");
  classify->add_option("--points", copt.points, "sample points");
  classify->add_option("--dirs", copt.dirs, "directions per point");
  classify->add_option("--flow-horizon", copt.flow_horizon,
                       "finite-time verification horizon");
  classify->add_flag("!--no-transfer", copt.transfer,
                     "skip the averaged-metric transfer check");

  CLI::App* demo = app.add_subcommand("sphere-demo", "run a sphere case suite");
  add_common(demo, true);
  demo->add_option("--case", dopt.which_case, "2a | 2b");
  demo->add_option("--config", dopt.config_path, "scenario config JSON");
  demo->add_option("--traj-out", dopt.traj_out, "trajectory CSV path");
  demo->add_option("--b-magnitude", dopt.b_magnitude,
                   "translation speed for the convergence check");
  demo->add_option("--starts", dopt.starts, "number of flow starts");
  demo->add_option("--horizon", dopt.horizon, "flow horizon");

  CLI::App* liouville = app.add_subcommand("liouville-check",
                                           "similarity fit and stretch spread");
  add_common(liouville, true);
  liouville->add_option("--map", lopt.map, "inversion | similarity | mobius");
  liouville->add_option("--mu", lopt.mu, "similarity scale");
  liouville->add_option("--angle", lopt.angle, "similarity rotation angle");
  liouville->add_option("--points", lopt.points, "base points");
  liouville->add_option("--dirs", lopt.dirs, "directions per point");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return run_validate(opt, validate_samples, axiom_tol);
    if (avg->parsed()) return run_avg_metric(opt, aopt);
    if (classify->parsed()) return run_classify(opt, copt);
    if (demo->parsed()) return run_demo(opt, dopt);
    if (liouville->parsed()) return run_liouville(opt, lopt);
  } catch (const DefinitenessError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitNotPositiveDefinite;
  } catch (const FlowEscapeError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitFlowEscape;
  } catch (const InvalidSpecError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitInvalidSpec;
  } catch (const std::exception& err) {
    std::cerr << "unexpected error: " << err.what() << "\n";
    return 1;
  }
  return kExitOk;
}
