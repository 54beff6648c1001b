#include "piranha/linear_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace piranha {

namespace {

void require_unit_interval(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream os;
    os << what << " = " << v << " is outside [0, 1]";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
}

void require_correlations(std::span<const double> corr_xy, const CorrelationMatrix& cross) {
  if (corr_xy.size() != cross.dim()) {
    std::ostringstream os;
    os << corr_xy.size() << " outcome correlations against a " << cross.dim() << "x" << cross.dim()
       << " predictor matrix";
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  for (double r : corr_xy)
    if (!(std::abs(r) <= 1.0 + 1e-12)) {
      std::ostringstream os;
      os << "correlation " << r << " has magnitude above 1";
      throw Error(ErrorCode::InvalidArgument, os.str());
    }
}

// Q diag(weight(lambda)) Q^T x; pairs with zero weight are skipped.
template <class Weight>
std::vector<double> spectral_apply(const EigenDecomposition& eig, std::span<const double> x, Weight weight) {
  const std::size_t n = x.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double w = weight(eig.values[k]);
    if (w == 0.0) continue;
    double proj = 0.0;
    for (std::size_t i = 0; i < n; ++i) proj += eig.vectors(i, k) * x[i];
    proj *= w;
    for (std::size_t i = 0; i < n; ++i) out[i] += proj * eig.vectors(i, k);
  }
  return out;
}

double squared_norm(std::span<const double> v) {
  return std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
}

}  // namespace

std::string_view to_string(Theorem t) noexcept {
  switch (t) {
    case Theorem::VanDerCorput: return "vdc";
    case Theorem::Eigenvalue: return "eigen";
    case Theorem::Regression: return "regression";
    case Theorem::MultiOutcome: return "multi_outcome";
  }
  return "unknown";
}

Theorem theorem_from_string(std::string_view s) {
  for (Theorem t : {Theorem::VanDerCorput, Theorem::Eigenvalue, Theorem::Regression, Theorem::MultiOutcome})
    if (to_string(t) == s) return t;
  throw Error(ErrorCode::ParseError, "unknown theorem tag '" + std::string(s) + "'");
}

BoundReport BoundReport::make(Theorem theorem, double lhs, double rhs) {
  return BoundReport{theorem, lhs, rhs, lhs <= rhs + kFeasibilityTolerance, rhs - lhs};
}

// ---------------------------------------------------------------------------

ClaimSet::ClaimSet(std::vector<double> tau, std::optional<CorrelationMatrix> cross)
    : tau_(std::move(tau)), cross_(std::move(cross)) {
  if (tau_.empty()) throw Error(ErrorCode::InvalidArgument, "a claim set needs at least one claim");
  for (double t : tau_) require_unit_interval(t, "claimed tau");
  if (cross_ && cross_->dim() != tau_.size()) {
    std::ostringstream os;
    os << tau_.size() << " claims but a " << cross_->dim() << "x" << cross_->dim() << " cross matrix";
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

double ClaimSet::min_tau() const noexcept { return *std::min_element(tau_.begin(), tau_.end()); }

// ---------------------------------------------------------------------------

BoundReport vdc_check(std::span<const double> corr_xy, const CorrelationMatrix& cross) {
  require_correlations(corr_xy, cross);
  double lhs = 0.0;
  for (double r : corr_xy) lhs += std::abs(r);
  double off = 0.0;
  for (std::size_t i = 0; i < cross.dim(); ++i)
    for (std::size_t j = i + 1; j < cross.dim(); ++j) off += std::abs(cross(i, j));
  const double rhs = std::sqrt(static_cast<double>(cross.dim()) + 2.0 * off);
  return BoundReport::make(Theorem::VanDerCorput, lhs, rhs);
}

BoundReport eigen_bound_check(std::span<const double> corr_xy, const CorrelationMatrix& cross) {
  require_correlations(corr_xy, cross);
  return BoundReport::make(Theorem::Eigenvalue, squared_norm(corr_xy), sym_eigen(cross.matrix()).max());
}

double min_cross_mass(std::size_t p, double tau) {
  require_unit_interval(tau, "tau");
  const double pd = static_cast<double>(p);
  return pd * (tau * tau * pd - 1.0);
}

MultiOutcomeMass multi_outcome_min_mass(std::size_t p, double tau, double eps) {
  require_unit_interval(tau, "tau");
  if (!(eps >= 0.0 && eps <= 2.0)) throw Error(ErrorCode::InvalidArgument, "eps must lie in [0, 2]");
  const double margin = tau - std::sqrt(2.0 * eps);
  const double pd = static_cast<double>(p);
  return {pd * (margin * margin * pd - 1.0), margin < 0.0};
}

bool lemma1_check(std::span<const double> a) { return std::sqrt(squared_norm(a)) <= 1.0 + 1e-9; }

// ---------------------------------------------------------------------------

RegressionSolution fit_least_squares(const SecondMomentMatrix& m, std::span<const double> c,
                                     double rank_tolerance) {
  if (c.size() != m.dim()) throw Error(ErrorCode::DimensionMismatch, "cross-moment length differs from matrix dim");
  const auto& eig = m.spectrum();
  if (eig.min() <= rank_tolerance) {
    std::ostringstream os;
    os << "second-moment matrix is singular (lambda_min = " << eig.min() << ")";
    throw Error(ErrorCode::SingularMatrix, os.str());
  }
  const auto inverse = [](double l) { return 1.0 / l; };
  auto beta = spectral_apply(eig, c, inverse);

  const auto mb = multiply(m.matrix().dense(), beta);
  std::vector<double> residual(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) residual[i] = c[i] - mb[i];
  const auto correction = spectral_apply(eig, residual, inverse);
  for (std::size_t i = 0; i < beta.size(); ++i) beta[i] += correction[i];

  const double norm_sq = squared_norm(beta);
  return {std::move(beta), norm_sq, 1.0 / eig.min()};
}

RegressionSolution fit_least_squares_min_norm(const SecondMomentMatrix& m, std::span<const double> c,
                                              double rank_tolerance) {
  if (c.size() != m.dim()) throw Error(ErrorCode::DimensionMismatch, "cross-moment length differs from matrix dim");
  const auto& eig = m.spectrum();
  auto beta = spectral_apply(eig, c, [&](double l) { return l > rank_tolerance ? 1.0 / l : 0.0; });
  const double norm_sq = squared_norm(beta);
  const double bound = eig.min() > rank_tolerance ? 1.0 / eig.min() : std::numeric_limits<double>::infinity();
  return {std::move(beta), norm_sq, bound};
}

BoundReport regression_bound_check(const RegressionSolution& solution) {
  return BoundReport::make(Theorem::Regression, solution.norm_sq, solution.bound);
}

std::size_t max_large_coefficients(double lambda_min, double tau) {
  if (!(lambda_min > 0.0) || !(tau > 0.0))
    throw Error(ErrorCode::InvalidArgument, "lambda_min and tau must be positive");
  // Relative nudge so 1/(1 * 0.1^2) counts 100 rather than 99.
  const double count = 1.0 / (lambda_min * tau * tau) * (1.0 + 1e-12);
  return static_cast<std::size_t>(std::floor(count));
}

// ---------------------------------------------------------------------------

double Equicorrelation::lambda_max() const noexcept {
  return std::max(1.0 + static_cast<double>(p - 1) * rho, p > 1 ? 1.0 - rho : 1.0);
}

double Equicorrelation::lambda_min() const noexcept {
  return std::min(1.0 + static_cast<double>(p - 1) * rho, p > 1 ? 1.0 - rho : 1.0);
}

std::vector<double> Equicorrelation::apply(std::span<const double> x) const {
  if (x.size() != p) throw Error(ErrorCode::DimensionMismatch, "vector length differs from p");
  const double total = std::accumulate(x.begin(), x.end(), 0.0);
  std::vector<double> y(p);
  for (std::size_t i = 0; i < p; ++i) y[i] = (1.0 - rho) * x[i] + rho * total;
  return y;
}

double Equicorrelation::lambda_max_numeric(int iterations) const {
  std::vector<double> x(p);
  for (std::size_t i = 0; i < p; ++i) x[i] = 1.0 + 0.5 * std::sin(static_cast<double>(i + 1));
  double rayleigh = 0.0;
  for (int it = 0; it < iterations; ++it) {
    const double norm = std::sqrt(squared_norm(x));
    for (double& v : x) v /= norm;
    auto y = apply(x);
    const double next = std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
    x = std::move(y);
    if (it > 0 && std::abs(next - rayleigh) <= 1e-15 * std::abs(next)) return next;
    rayleigh = next;
  }
  return rayleigh;
}

TightnessInstance tightness_instance(std::size_t p, double tau) {
  if (p == 0) throw Error(ErrorCode::InvalidArgument, "p must be positive");
  require_unit_interval(tau, "tau");
  const double pd = static_cast<double>(p);
  const double t2 = tau * tau;
  const double implied = (1.0 + (pd - 1.0) * t2) / std::sqrt(pd + pd * (pd - 1.0) * t2);
  return {p, tau, Equicorrelation{p, t2}, std::min(1.0, implied)};
}

}  // namespace piranha
