#pragma once

// Shared generators and oracles for the unit tests. Eigen is used only here,
// as an implementation independent of the library's own linear algebra.

#include <cmath>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "piranha/matrix.hpp"
#include "piranha/rng.hpp"

namespace support {

inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

inline Eigen::MatrixXd to_eigen(const piranha::Matrix& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

/// Eigenvalues sorted descending, from Eigen's self-adjoint solver.
inline std::vector<double> oracle_eigenvalues(const piranha::Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(to_eigen(m), Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  return {out.rbegin(), out.rend()};
}

/// Entries uniform in [-1, 1], mirrored to exact symmetry.
inline piranha::Matrix random_symmetric(std::size_t p, piranha::Rng& rng) {
  piranha::Matrix m(p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i; j < p; ++j) m(i, j) = m(j, i) = 2.0 * rng.uniform() - 1.0;
  return m;
}

/// B^T B for a rows x p normal B, rescaled to unit diagonal.
inline piranha::Matrix random_gram_correlation(std::size_t p, piranha::Rng& rng, std::size_t rows = 0) {
  if (rows == 0) rows = p + 2;
  std::vector<std::vector<double>> b(rows, std::vector<double>(p));
  for (auto& r : b)
    for (double& x : r) x = rng.normal();
  piranha::Matrix g(p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i; j < p; ++j) {
      double s = 0.0;
      for (const auto& r : b) s += r[i] * r[j];
      g(i, j) = g(j, i) = s;
    }
  piranha::Matrix c(p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) c(i, j) = i == j ? 1.0 : g(i, j) / std::sqrt(g(i, i) * g(j, j));
  return c;
}

/// Columns of an n x p Gaussian sample with a random covariance (mixing
/// matrix with normal entries), followed by an outcome that is a random
/// linear combination plus noise. Returns p + 1 raw columns.
inline std::vector<std::vector<double>> random_dataset(std::size_t n, std::size_t p, piranha::Rng& rng) {
  std::vector<std::vector<double>> mix(p, std::vector<double>(p));
  for (auto& r : mix)
    for (double& x : r) x = rng.normal();
  std::vector<double> weights(p);
  for (double& w : weights) w = rng.normal();
  std::vector<std::vector<double>> cols(p + 1, std::vector<double>(n));
  std::vector<double> z(p);
  for (std::size_t i = 0; i < n; ++i) {
    for (double& v : z) v = rng.normal();
    double y = rng.normal();
    for (std::size_t k = 0; k < p; ++k) {
      double x = 0.0;
      for (std::size_t j = 0; j < p; ++j) x += mix[k][j] * z[j];
      cols[k][i] = x;
      y += weights[k] * x;
    }
    cols[p][i] = y;
  }
  return cols;
}

}  // namespace support
