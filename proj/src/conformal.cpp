#include "finslerkit/conformal.hpp"

#include <cmath>
#include <map>

#include "finslerkit/errors.hpp"

namespace finsler {

const char* to_string(ConformalVerdict v) {
  switch (v) {
    case ConformalVerdict::NotConformal: return "not_conformal";
    case ConformalVerdict::Conformal: return "conformal";
    case ConformalVerdict::Homothetic: return "homothetic";
    default: return "killing";
  }
}

namespace {

using MetricEvaluator = std::function<double(const Vector&, const Vector&)>;

double log_derivative_along_flow(const MetricEvaluator& metric, const VectorField& v,
                                 const Vector& x, const Vector& xi,
                                 const ConformalProbe& probe, const Box* domain) {
  FlowState fwd = flow_step(v, x, xi, probe.tau, probe.ode_steps, domain);
  FlowState bwd = flow_step(v, x, xi, -probe.tau, probe.ode_steps, domain);
  double fp = metric(fwd.point, fwd.frame_vector);
  double fm = metric(bwd.point, bwd.frame_vector);
  if (!(fp > 0.0) || !(fm > 0.0) || !std::isfinite(fp) || !std::isfinite(fm))
    throw NumericalError("conformal factor probe: metric not positive along the flow");
  return (std::log(fp) - std::log(fm)) / (2.0 * probe.tau);
}

struct AlphaSamples {
  std::vector<Vector> points;
  std::vector<std::vector<double>> alphas;  // [point][direction]
  double max_direction_spread = 0.0;
};

AlphaSamples sample_alphas(const MetricEvaluator& metric, const VectorField& v,
                           const Box& box, int n_points, int n_directions,
                           std::uint64_t seed, const ConformalProbe& probe) {
  const int n = box.dim();
  for (int i = 0; i < n; ++i)
    if (!(box.hi[i] - box.lo[i] > 1e-9))
      throw InvalidSpecError("degenerate sampling: chart has no volume");
  Rng rng(seed);
  AlphaSamples out;
  out.points.reserve(n_points);
  // Interior margin keeps the +-tau probes inside the chart.
  for (int i = 0; i < n_points; ++i) {
    Vector x(n);
    for (int k = 0; k < n; ++k) {
      double margin = 0.05 * (box.hi[k] - box.lo[k]);
      x[k] = rng.uniform(box.lo[k] + margin, box.hi[k] - margin);
    }
    out.points.push_back(std::move(x));
  }
  out.alphas.resize(n_points);
  for (int i = 0; i < n_points; ++i) {
    const Vector& x = out.points[i];
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int d = 0; d < n_directions; ++d) {
      Vector u = rng.gaussian_vector(n);
      while (u.norm() < 1e-12) u = rng.gaussian_vector(n);
      for (double sign : {1.0, -1.0}) {
        Vector w = sign * u;
        double f = metric(x, w);
        if (!(f > 0.0)) throw NumericalError("metric not positive at a sample direction");
        double alpha = log_derivative_along_flow(metric, v, x, w / f, probe, &box);
        out.alphas[i].push_back(alpha);
        lo = std::min(lo, alpha);
        hi = std::max(hi, alpha);
      }
    }
    out.max_direction_spread = std::max(out.max_direction_spread, hi - lo);
  }
  return out;
}

ConformalReport classify_from_samples(AlphaSamples samples, double tol) {
  ConformalReport report;
  report.tolerance = tol;
  report.residual = samples.max_direction_spread;
  report.points = std::move(samples.points);

  double all_min = std::numeric_limits<double>::infinity(), all_max = -all_min;
  double all_sum = 0.0;
  long all_count = 0;
  double mean_min = all_min, mean_max = all_max, mean_sum = 0.0;
  for (const auto& per_point : samples.alphas) {
    double sum = 0.0;
    for (double a : per_point) {
      all_min = std::min(all_min, a);
      all_max = std::max(all_max, a);
      all_sum += a;
      ++all_count;
      sum += a;
    }
    double mean = sum / per_point.size();
    report.point_factors.push_back(mean);
    mean_min = std::min(mean_min, mean);
    mean_max = std::max(mean_max, mean);
    mean_sum += mean;
  }
  report.stats = AlphaStats{all_min, all_max, all_sum / all_count};
  report.homothety_constant = mean_sum / report.point_factors.size();

  if (report.residual > tol) {
    report.verdict = ConformalVerdict::NotConformal;
  } else if (std::max(std::abs(all_min), std::abs(all_max)) < tol) {
    report.verdict = ConformalVerdict::Killing;
  } else if (mean_max - mean_min < tol) {
    report.verdict = ConformalVerdict::Homothetic;
  } else {
    report.verdict = ConformalVerdict::Conformal;
  }
  return report;
}

std::vector<double> vector_key(const Vector& x) {
  return std::vector<double>(x.data(), x.data() + x.size());
}

}  // namespace

double conformal_factor(const FinslerField& field, const VectorField& v,
                        const Vector& x, const Vector& xi, const ConformalProbe& probe) {
  if (xi.norm() == 0.0) throw InvalidSpecError("conformal_factor: direction must be nonzero");
  auto metric = [&field](const Vector& p, const Vector& w) { return field.value(p, w); };
  return log_derivative_along_flow(metric, v, x, xi, probe, &field.chart());
}

ConformalReport classify_field(const FinslerField& field, const VectorField& v,
                               int n_points, int n_directions, std::uint64_t seed,
                               double tol, const ConformalProbe& probe) {
  if (n_points < 8) throw InvalidSpecError("classify_field: need at least 8 sample points");
  if (n_directions < 16)
    throw InvalidSpecError("classify_field: need at least 16 directions per point");
  auto metric = [&field](const Vector& p, const Vector& w) { return field.value(p, w); };
  return classify_from_samples(
      sample_alphas(metric, v, field.chart(), n_points, n_directions, seed, probe), tol);
}

TransferReport transfer_consistency(const FinslerField& field, const VectorField& v,
                                    const SphereQuadrature& quad,
                                    const HessianStrategy& strategy, int n_points,
                                    int n_directions, std::uint64_t seed, double tol,
                                    const ConformalProbe& probe) {
  ConformalReport finsler_side =
      classify_field(field, v, n_points, n_directions, seed, tol, probe);
  if (finsler_side.verdict == ConformalVerdict::NotConformal)
    throw InvalidSpecError("transfer_consistency: field is not conformal for F");

  // Riemannian side: the norm sqrt(g(F)_x(xi, xi)) with g memoized per point
  // (the probe revisits each flowed point once per direction).
  auto cache = std::make_shared<std::map<std::vector<double>, Matrix>>();
  auto g_matrix = [cache, &field, &quad, &strategy](const Vector& x) -> const Matrix& {
    auto key = vector_key(x);
    auto it = cache->find(key);
    if (it == cache->end())
      it = cache->emplace(std::move(key),
                          averaged_form(field.norm_at(x), quad, strategy).matrix())
               .first;
    return it->second;
  };
  auto sqrt_g = [&g_matrix](const Vector& x, const Vector& w) {
    return std::sqrt(w.dot(g_matrix(x) * w));
  };

  // Same seed: identical points and direction draws, so samples pair up
  // (alpha is invariant under the per-metric normalization of directions).
  AlphaSamples f_samples = sample_alphas(
      [&field](const Vector& p, const Vector& w) { return field.value(p, w); }, v,
      field.chart(), n_points, n_directions, seed, probe);
  AlphaSamples g_samples = sample_alphas(sqrt_g, v, field.chart(), n_points,
                                         n_directions, seed, probe);

  double mismatch = 0.0;
  for (size_t i = 0; i < f_samples.alphas.size(); ++i)
    for (size_t j = 0; j < f_samples.alphas[i].size(); ++j) {
      // g scales with the square of the norm factor, so the g-level
      // log-derivative is exactly twice the sqrt(g)-level one.
      double alpha_g = 2.0 * g_samples.alphas[i][j];
      double alpha_f = f_samples.alphas[i][j];
      mismatch = std::max(mismatch, std::abs(alpha_g - 2.0 * alpha_f));
    }

  TransferReport report;
  report.finsler_verdict = finsler_side.verdict;
  report.riemann_verdict = classify_from_samples(std::move(g_samples), tol).verdict;
  report.max_factor_mismatch = mismatch;
  return report;
}

HomothetyOrbit homothety_orbit_drift(const Norm& norm, const Matrix& a, double mu,
                                     const Vector& x0, const Vector& xi0,
                                     int iterations) {
  if (!(mu > 0.0) || !(mu < 1.0))
    throw InvalidSpecError("homothety iteration requires 0 < mu < 1");
  if (iterations < 1) throw InvalidSpecError("homothety iteration count must be >= 1");
  const double reference = norm(xi0);
  Vector x = x0, xi = xi0;
  double drift = 0.0;
  for (int k = 0; k < iterations; ++k) {
    x = mu * (a * x);
    xi = a * xi;
    drift = std::max(drift, std::abs(norm(xi) - reference));
  }
  return HomothetyOrbit{drift, x.norm()};
}

}  // namespace finsler
