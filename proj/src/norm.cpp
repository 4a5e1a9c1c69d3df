#include "finslerkit/norm.hpp"

#include <cmath>
#include <utility>

#include "finslerkit/errors.hpp"

namespace finsler {

class NormImpl {
 public:
  virtual ~NormImpl() = default;
  virtual int dim() const = 0;
  virtual double eval(const Vector& xi) const = 0;
  virtual bool has_hessian() const { return false; }
  virtual Matrix hessian_sq(const Vector&) const {
    throw InvalidSpecError("norm family '" + std::string(family()) +
                           "' has no analytic Hessian");
  }
  virtual const char* family() const = 0;
  virtual NormDescription describe() const {
    NormDescription d;
    d.family = family();
    d.dim = dim();
    return d;
  }
};

namespace {

void require_dim(int dim) {
  if (dim < 2) throw InvalidSpecError("norm dimension must be >= 2");
}

Matrix checked_spd(Matrix m, const char* what) {
  if (m.rows() != m.cols()) throw InvalidSpecError(std::string(what) + ": matrix not square");
  if (!all_finite(m)) throw InvalidSpecError(std::string(what) + ": non-finite entries");
  double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw InvalidSpecError(std::string(what) + ": matrix not symmetric");
  m = symmetrized(m);
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= 1e-12 * scale)
    throw InvalidSpecError(std::string(what) + ": matrix not positive definite");
  return m;
}

double int_pow(double t, int p) {
  double r = 1.0;
  for (int k = 0; k < p; ++k) r *= t;
  return r;
}

class EuclideanNorm final : public NormImpl {
 public:
  explicit EuclideanNorm(Matrix b) : b_(std::move(b)) {}
  int dim() const override { return static_cast<int>(b_.rows()); }
  double eval(const Vector& xi) const override {
    return std::sqrt(xi.dot(b_ * xi));
  }
  bool has_hessian() const override { return true; }
  Matrix hessian_sq(const Vector&) const override { return 2.0 * b_; }
  const char* family() const override { return "euclidean"; }
  NormDescription describe() const override {
    NormDescription d = NormImpl::describe();
    d.matrix = b_;
    return d;
  }
  const Matrix& form() const { return b_; }

 private:
  Matrix b_;
};

class EvenPNorm final : public NormImpl {
 public:
  EvenPNorm(int dim, int p) : dim_(dim), p_(p) {}
  int dim() const override { return dim_; }
  double eval(const Vector& xi) const override {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) s += int_pow(xi[i], p_);
    return std::pow(s, 1.0 / p_);
  }
  bool has_hessian() const override { return true; }
  Matrix hessian_sq(const Vector& xi) const override {
    // p^2 = S^{2/p} with S = sum xi_i^p:
    //   d_i d_j p^2 = 2(2-p) S^{2/p-2} xi_i^{p-1} xi_j^{p-1}
    //               + 2(p-1) S^{2/p-1} xi_i^{p-2} delta_ij
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) s += int_pow(xi[i], p_);
    Vector grad_term(dim_);
    for (int i = 0; i < dim_; ++i) grad_term[i] = int_pow(xi[i], p_ - 1);
    Matrix h = 2.0 * (2.0 - p_) * std::pow(s, 2.0 / p_ - 2.0) * grad_term *
               grad_term.transpose();
    double diag_factor = 2.0 * (p_ - 1) * std::pow(s, 2.0 / p_ - 1.0);
    for (int i = 0; i < dim_; ++i) h(i, i) += diag_factor * int_pow(xi[i], p_ - 2);
    return h;
  }
  const char* family() const override { return "even_p"; }
  NormDescription describe() const override {
    NormDescription d = NormImpl::describe();
    d.p = p_;
    return d;
  }
  int exponent() const { return p_; }

 private:
  int dim_;
  int p_;
};

class RandersNorm final : public NormImpl {
 public:
  RandersNorm(Matrix a, Vector beta) : a_(std::move(a)), beta_(std::move(beta)) {}
  int dim() const override { return static_cast<int>(a_.rows()); }
  double eval(const Vector& xi) const override {
    return std::sqrt(xi.dot(a_ * xi)) + beta_.dot(xi);
  }
  bool has_hessian() const override { return true; }
  Matrix hessian_sq(const Vector& xi) const override {
    // p = q + l, q = sqrt(xi' a xi), l = beta . xi. Then
    // Hess p^2 = 2a + 2 beta beta' + (2l/q) a - (2l/q^3)(a xi)(a xi)'
    //          + (2/q)(a xi beta' + beta (a xi)').
    Vector axi = a_ * xi;
    double q = std::sqrt(xi.dot(axi));
    double l = beta_.dot(xi);
    Matrix h = 2.0 * a_ + 2.0 * beta_ * beta_.transpose();
    h += (2.0 * l / q) * a_;
    h -= (2.0 * l / (q * q * q)) * axi * axi.transpose();
    Matrix cross = axi * beta_.transpose();
    h += (2.0 / q) * (cross + cross.transpose());
    return h;
  }
  const char* family() const override { return "randers"; }
  NormDescription describe() const override {
    NormDescription d = NormImpl::describe();
    d.matrix = a_;
    d.vector = beta_;
    return d;
  }
  const Matrix& quadratic() const { return a_; }
  const Vector& one_form() const { return beta_; }

 private:
  Matrix a_;
  Vector beta_;
};

class ScaledNorm final : public NormImpl {
 public:
  ScaledNorm(Norm base, double lambda) : base_(std::move(base)), lambda_(lambda) {}
  int dim() const override { return base_.dim(); }
  double eval(const Vector& xi) const override { return lambda_ * base_(xi); }
  bool has_hessian() const override { return base_.has_analytic_hessian(); }
  Matrix hessian_sq(const Vector& xi) const override {
    return lambda_ * lambda_ * base_.analytic_hessian_sq(xi);
  }
  const char* family() const override { return "scaled"; }
  NormDescription describe() const override {
    NormDescription d = NormImpl::describe();
    d.scalar = lambda_;
    d.base = std::make_shared<NormDescription>(base_.describe());
    return d;
  }
  const Norm& base() const { return base_; }
  double factor() const { return lambda_; }

 private:
  Norm base_;
  double lambda_;
};

class PullbackNorm final : public NormImpl {
 public:
  PullbackNorm(Norm base, Matrix a) : base_(std::move(base)), a_(std::move(a)) {}
  int dim() const override { return base_.dim(); }
  double eval(const Vector& xi) const override { return base_(a_ * xi); }
  bool has_hessian() const override { return base_.has_analytic_hessian(); }
  Matrix hessian_sq(const Vector& xi) const override {
    return a_.transpose() * base_.analytic_hessian_sq(a_ * xi) * a_;
  }
  const char* family() const override { return "pullback"; }
  NormDescription describe() const override {
    NormDescription d = NormImpl::describe();
    d.matrix = a_;
    d.base = std::make_shared<NormDescription>(base_.describe());
    return d;
  }
  const Norm& base() const { return base_; }
  const Matrix& matrix() const { return a_; }

 private:
  Norm base_;
  Matrix a_;
};

class CallbackNorm final : public NormImpl {
 public:
  CallbackNorm(int dim, Norm::Evaluator eval, Norm::HessianFn hess)
      : dim_(dim), eval_(std::move(eval)), hess_(std::move(hess)) {}
  int dim() const override { return dim_; }
  double eval(const Vector& xi) const override { return eval_(xi); }
  bool has_hessian() const override { return static_cast<bool>(hess_); }
  Matrix hessian_sq(const Vector& xi) const override {
    if (!hess_) return NormImpl::hessian_sq(xi);
    return hess_(xi);
  }
  const char* family() const override { return "callback"; }

 private:
  int dim_;
  Norm::Evaluator eval_;
  Norm::HessianFn hess_;
};

Matrix checked_invertible(const Matrix& a, int dim) {
  if (a.rows() != dim || a.cols() != dim)
    throw InvalidSpecError("pullback matrix has wrong shape");
  if (!all_finite(a)) throw InvalidSpecError("pullback matrix has non-finite entries");
  Eigen::FullPivLU<Matrix> lu(a);
  if (!lu.isInvertible()) throw InvalidSpecError("pullback matrix is singular");
  return a;
}

}  // namespace

Norm Norm::euclidean(const Matrix& b1) {
  return Norm(std::make_shared<EuclideanNorm>(checked_spd(b1, "euclidean norm")));
}

Norm Norm::euclidean_identity(int dim) {
  require_dim(dim);
  return euclidean(Matrix::Identity(dim, dim));
}

Norm Norm::even_p(int dim, int p) {
  require_dim(dim);
  if (p < 2 || p % 2 != 0)
    throw InvalidSpecError("even_p norm requires an even integer p >= 2");
  return Norm(std::make_shared<EvenPNorm>(dim, p));
}

Norm Norm::randers(const Matrix& a, const Vector& beta) {
  Matrix checked = checked_spd(a, "randers norm");
  if (beta.size() != checked.rows())
    throw InvalidSpecError("randers norm: beta has wrong dimension");
  // Positivity of sqrt(a(xi,xi)) + beta(xi) on xi != 0 needs |beta|_a < 1.
  double beta_norm = std::sqrt(beta.dot(checked.ldlt().solve(beta)));
  if (!(beta_norm < 1.0))
    throw InvalidSpecError("randers norm requires |beta|_a < 1");
  return Norm(std::make_shared<RandersNorm>(checked, beta));
}

Norm Norm::scaled(const Norm& base, double lambda) {
  if (!(lambda > 0.0)) throw InvalidSpecError("scale factor must be positive");
  return Norm(std::make_shared<ScaledNorm>(base, lambda));
}

Norm Norm::pullback(const Norm& base, const Matrix& a) {
  Matrix checked = checked_invertible(a, base.dim());
  if (auto* eucl = dynamic_cast<const EuclideanNorm*>(&base.impl()))
    return euclidean(symmetrized(checked.transpose() * eucl->form() * checked));
  if (auto* pb = dynamic_cast<const PullbackNorm*>(&base.impl()))
    return Norm(std::make_shared<PullbackNorm>(pb->base(), Matrix(pb->matrix() * checked)));
  return Norm(std::make_shared<PullbackNorm>(base, checked));
}

Norm Norm::callback(int dim, Evaluator eval, HessianFn hessian_sq) {
  require_dim(dim);
  if (!eval) throw InvalidSpecError("callback norm requires an evaluator");
  return Norm(std::make_shared<CallbackNorm>(dim, std::move(eval), std::move(hessian_sq)));
}

int Norm::dim() const { return impl_->dim(); }

double Norm::operator()(const Vector& xi) const { return impl_->eval(xi); }

double Norm::squared(const Vector& xi) const {
  double p = impl_->eval(xi);
  return p * p;
}

bool Norm::has_analytic_hessian() const { return impl_->has_hessian(); }

Matrix Norm::analytic_hessian_sq(const Vector& xi) const {
  return impl_->hessian_sq(xi);
}

std::string Norm::family() const { return impl_->family(); }

NormDescription Norm::describe() const { return impl_->describe(); }

NormValidation validate_norm(const Norm& norm, int sample_count,
                             std::uint64_t seed, double tolerance) {
  if (sample_count < 1) throw InvalidSpecError("sample_count must be >= 1");
  Rng rng(seed);
  NormValidation report;
  report.tolerance = tolerance;
  report.samples = sample_count;
  report.min_on_unit_sphere = std::numeric_limits<double>::infinity();
  int n = norm.dim();
  for (int k = 0; k < sample_count; ++k) {
    Vector xi = rng.gaussian_vector(n);
    Vector eta = rng.gaussian_vector(n);
    double t = rng.uniform(0.0, 4.0);
    double h_res = std::abs(norm(t * xi) - t * norm(xi));
    double tri = norm(xi + eta) - norm(xi) - norm(eta);
    report.max_homogeneity_residual = std::max(report.max_homogeneity_residual, h_res);
    report.max_triangle_violation = std::max(report.max_triangle_violation, tri);
    report.min_on_unit_sphere =
        std::min(report.min_on_unit_sphere, norm(rng.unit_vector(n)));
  }
  report.max_triangle_violation = std::max(report.max_triangle_violation, 0.0);
  return report;
}

}  // namespace finsler
