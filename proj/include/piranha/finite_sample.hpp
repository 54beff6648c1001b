#pragma once

// Sample correlations of an n x p data matrix with standardized columns:
// the worst case over all responses (sigma_1^2, reached at the top left
// singular vector) and the average under a uniformly random response on
// the unit sphere, p / (n - 1).

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "piranha/matrix.hpp"
#include "piranha/rng.hpp"
#include "piranha/stats.hpp"

namespace piranha {

/// Centered, unit-norm vector. Orthogonal to the all-ones vector.
class StandardizedVector {
 public:
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

 private:
  explicit StandardizedVector(std::vector<double> v) : values_(std::move(v)) {}
  friend StandardizedVector standardize(std::span<const double>);

  std::vector<double> values_;
};

/// (x - mean) / ||x - mean||. Throws ConstantVector when x lies (to within
/// 1e-14 relative) in the span of the all-ones vector.
StandardizedVector standardize(std::span<const double> x);

/// Pearson correlation computed from centered sums.
double sample_corr(std::span<const double> x, std::span<const double> y);

/// n x p data with every column centered and of unit l2 norm, n > p.
class SampleMatrix {
 public:
  /// Validates the column conditions to 1e-10; throws InvalidShape otherwise.
  static SampleMatrix from_columns(std::vector<std::vector<double>> columns);
  /// Standardizes each column first.
  static SampleMatrix standardized(const std::vector<std::vector<double>>& columns);

  std::size_t n() const noexcept { return n_; }
  std::size_t p() const noexcept { return columns_.size(); }
  std::span<const double> column(std::size_t k) const noexcept { return columns_[k]; }

  /// X^T X, exactly symmetric.
  SymMatrix gram() const;
  /// X^T v.
  std::vector<double> project(std::span<const double> v) const;

 private:
  SampleMatrix(std::size_t n, std::vector<std::vector<double>> columns)
      : n_(n), columns_(std::move(columns)) {}

  std::size_t n_ = 0;
  std::vector<std::vector<double>> columns_;
};

/// n x p matrix of independent normals with columns standardized.
SampleMatrix random_sample_matrix(std::size_t n, std::size_t p, Rng& rng);

struct SvdFactorization {
  std::vector<double> singular_values;          // descending
  std::vector<std::vector<double>> left_vectors;  // U_k in R^n
  Matrix right_vectors;                         // column k is V_k in R^p

  /// sum_k sigma_k U_k V_k^T as an n x p matrix.
  Matrix reconstruct() const;
};

/// Thin SVD from the eigendecomposition of the p x p Gram matrix. Left
/// vectors come from X V_k / sigma_k, re-orthogonalized. Gram eigenvalues
/// at or below 1e-13 lambda_1 count as zero; their left vectors are
/// completed to an orthonormal set orthogonal to the all-ones vector.
SvdFactorization svd(const SampleMatrix& x);

/// sum_i corr(X_i, y)^2 computed column by column.
double sum_sq_corr(const SampleMatrix& x, std::span<const double> y);

/// The same quantity as sum_k sigma_k^2 (U_k^T y*)^2.
double sum_sq_corr_spectral(const SvdFactorization& f, std::span<const double> y);

/// Uniform draw from the unit sphere in R^n by normalizing iid normals.
std::vector<double> sample_sphere(std::size_t n, Rng& rng);

/// p / (n - 1). Throws InvalidShape unless n > p >= 1.
double expected_sum_sq_analytic(std::size_t n, std::size_t p);

/// Per-trial sum_i corr(X_i, y)^2 for sphere-uniform y, in shard order.
std::vector<double> sum_sq_corr_draws(const SampleMatrix& x, const MonteCarloOptions& opts);

/// Mean and standard error of sum_i corr(X_i, y)^2 over sphere-uniform y.
MonteCarloEstimate expected_sum_sq_mc(const SampleMatrix& x, const MonteCarloOptions& opts);

struct MixtureComparison {
  double ks_distance = 0.0;
  double sample_variance = 0.0;  // of the simulated sum of squared correlations

  bool operator==(const MixtureComparison&) const = default;
};

/// Two-sample KS distance between simulated sums of squared correlations
/// and draws of (1 / (n - 1)) sum_k sigma_k^2 xi_k, xi_k ~ chi^2_1.
/// Needs at least 1000 trials.
MixtureComparison chisq_mixture_compare(const SampleMatrix& x, const MonteCarloOptions& opts);

}  // namespace piranha
