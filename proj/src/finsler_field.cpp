#include "finslerkit/finsler_field.hpp"

#include "finslerkit/errors.hpp"

namespace finsler {

bool Box::contains(const Vector& x) const {
  if (x.size() != lo.size()) return false;
  for (int i = 0; i < x.size(); ++i)
    if (x[i] < lo[i] || x[i] > hi[i]) return false;
  return true;
}

Box Box::centered(int dim, double half_width) {
  if (dim < 1 || !(half_width > 0.0))
    throw InvalidSpecError("box: dimension >= 1 and positive half width required");
  Box box;
  box.lo = Vector::Constant(dim, -half_width);
  box.hi = Vector::Constant(dim, half_width);
  return box;
}

namespace {

void check_chart(const Box& chart, int norm_dim) {
  if (chart.lo.size() != chart.hi.size())
    throw InvalidSpecError("finsler field: box bounds have mismatched dimensions");
  if (chart.dim() != norm_dim)
    throw InvalidSpecError("finsler field: chart and norm dimensions differ");
  for (int i = 0; i < chart.dim(); ++i)
    if (!(chart.lo[i] < chart.hi[i]))
      throw InvalidSpecError("finsler field: box is empty or degenerate");
}

}  // namespace

FinslerField FinslerField::minkowski(Box chart, Norm norm) {
  check_chart(chart, norm.dim());
  return conformal(std::move(chart), std::move(norm),
                   [](const Vector&) { return 1.0; });
}

FinslerField FinslerField::conformal(Box chart, Norm base, ScalarField lambda) {
  check_chart(chart, base.dim());
  if (!lambda) throw InvalidSpecError("finsler field: missing conformal factor");
  auto norms = [base, lambda](const Vector& x) {
    double lam = lambda(x);
    if (!(lam > 0.0) || !std::isfinite(lam))
      throw NumericalError("finsler field: conformal factor not positive");
    return Norm::scaled(base, lam);
  };
  return FinslerField(std::move(chart), norms, std::move(lambda));
}

FinslerField FinslerField::from_norm_map(Box chart,
                                         std::function<Norm(const Vector&)> norms) {
  if (!norms) throw InvalidSpecError("finsler field: missing norm map");
  if (chart.lo.size() != chart.hi.size() || chart.dim() < 2)
    throw InvalidSpecError("finsler field: bad chart");
  return FinslerField(std::move(chart), std::move(norms), nullptr);
}

Norm FinslerField::norm_at(const Vector& x) const { return norms_(x); }

double FinslerField::factor_at(const Vector& x) const {
  if (!lambda_) throw InvalidSpecError("finsler field has no conformal structure");
  return lambda_(x);
}

}  // namespace finsler
