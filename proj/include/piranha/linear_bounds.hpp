#pragma once

// Feasibility checks for claimed predictor-outcome correlations and the
// closed-form limits they imply.
//
//   vdc_check          sum_i |corr(X_i, y)| <= sqrt(p + sum_{i!=j} |corr(X_i, X_j)|)
//   eigen_bound_check  sum_i corr(X_i, y)^2 <= lambda_max(corr(X))
//   regression         ||beta||^2 <= 1 / lambda_min(E[X X^T])
//
// Every check reports both sides and the slack rather than a bare verdict,
// since tight instances land exactly on the boundary.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "piranha/matrix.hpp"

namespace piranha {

inline constexpr double kFeasibilityTolerance = 1e-9;

enum class Theorem { VanDerCorput, Eigenvalue, Regression, MultiOutcome };

std::string_view to_string(Theorem t) noexcept;
Theorem theorem_from_string(std::string_view s);

struct BoundReport {
  Theorem theorem = Theorem::VanDerCorput;
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = true;
  double slack = 0.0;

  /// satisfied = lhs <= rhs + kFeasibilityTolerance, slack = rhs - lhs.
  static BoundReport make(Theorem theorem, double lhs, double rhs);

  bool operator==(const BoundReport&) const = default;
};

/// Claimed |corr(X_i, y)| magnitudes, optionally with the predictors' own
/// correlation matrix.
class ClaimSet {
 public:
  explicit ClaimSet(std::vector<double> tau, std::optional<CorrelationMatrix> cross = std::nullopt);

  std::size_t p() const noexcept { return tau_.size(); }
  const std::vector<double>& tau() const noexcept { return tau_; }
  const std::optional<CorrelationMatrix>& cross() const noexcept { return cross_; }
  double min_tau() const noexcept;

 private:
  std::vector<double> tau_;
  std::optional<CorrelationMatrix> cross_;
};

BoundReport vdc_check(std::span<const double> corr_xy, const CorrelationMatrix& cross);
BoundReport eigen_bound_check(std::span<const double> corr_xy, const CorrelationMatrix& cross);

/// p (tau^2 p - 1): the least total |cross-correlation| mass that p
/// predictors each correlated at least tau with one outcome must carry.
/// Not clipped; a value <= 0 means no requirement.
double min_cross_mass(std::size_t p, double tau);

struct MultiOutcomeMass {
  double value = 0.0;
  bool degenerate = false;  // tau < sqrt(2 eps): the bound says nothing

  bool operator==(const MultiOutcomeMass&) const = default;
};

/// Same requirement when each predictor is tied to its own outcome and the
/// outcomes are pairwise correlated at least 1 - eps.
MultiOutcomeMass multi_outcome_min_mass(std::size_t p, double tau, double eps);

/// ||a|| <= 1 for the cross-moments of an orthonormal family with a
/// unit-variance variable.
bool lemma1_check(std::span<const double> a);

struct RegressionSolution {
  std::vector<double> beta;
  double norm_sq = 0.0;
  double bound = 0.0;  // 1 / lambda_min, +inf for a singular system

  bool operator==(const RegressionSolution&) const = default;
};

/// Solves m beta = c through the eigendecomposition of m, with one round of
/// iterative refinement. Throws SingularMatrix when lambda_min <= rank_tolerance.
RegressionSolution fit_least_squares(const SecondMomentMatrix& m, std::span<const double> c,
                                     double rank_tolerance = kDefaultRankTolerance);

/// Minimum-norm solution through the pseudo-inverse, for systems that
/// fit_least_squares rejects. The bound is +inf whenever the system is
/// singular to rank_tolerance.
RegressionSolution fit_least_squares_min_norm(const SecondMomentMatrix& m, std::span<const double> c,
                                              double rank_tolerance = kDefaultRankTolerance);

BoundReport regression_bound_check(const RegressionSolution& solution);

/// floor(1 / (lambda_min tau^2)): how many coefficients can exceed tau in
/// magnitude.
std::size_t max_large_coefficients(double lambda_min, double tau);

/// Structured equicorrelation operator. Never materializes the p x p matrix
/// unless asked, so very large p stays cheap.
struct Equicorrelation {
  std::size_t p = 1;
  double rho = 0.0;

  double lambda_max() const noexcept;
  double lambda_min() const noexcept;
  std::vector<double> apply(std::span<const double> x) const;
  /// Power iteration on apply(); independent of the closed form above.
  double lambda_max_numeric(int iterations = 500) const;
  CorrelationMatrix dense() const { return equicorrelation(p, rho); }
};

/// X_1..X_p equicorrelated at tau^2 and y = sum_j X_j: every corr(X_i, y)
/// equals implied_corr, which tends to tau as p grows.
struct TightnessInstance {
  std::size_t p = 1;
  double tau = 0.0;
  Equicorrelation sigma;
  double implied_corr = 1.0;

  double sum_sq_corr() const noexcept { return static_cast<double>(p) * implied_corr * implied_corr; }
  double sum_abs_corr() const noexcept { return static_cast<double>(p) * implied_corr; }
};

TightnessInstance tightness_instance(std::size_t p, double tau);

}  // namespace piranha
