#include "piranha/finite_sample.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace piranha {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

void axpy(double alpha, std::span<const double> x, std::vector<double>& y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

// Orthogonalizes v against `basis` (two passes of modified Gram-Schmidt)
// and returns its remaining norm.
double orthogonalize(std::vector<double>& v, const std::vector<std::vector<double>>& basis) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& b : basis) axpy(-dot(b, v), b, v);
  return std::sqrt(dot(v, v));
}

}  // namespace

StandardizedVector standardize(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 2) throw Error(ErrorCode::ConstantVector, "a vector of length < 2 is constant");
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  std::vector<double> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = x[i] - mean;
  const double norm = std::sqrt(dot(c, c));
  const double scale = std::sqrt(dot(x, x));
  if (!(norm > 1e-14 * scale)) throw Error(ErrorCode::ConstantVector, "vector is constant");
  for (double& v : c) v /= norm;
  return StandardizedVector(std::move(c));
}

double sample_corr(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::DimensionMismatch, "correlation of vectors of different length");
  const std::size_t n = x.size();
  if (n < 2) throw Error(ErrorCode::ConstantVector, "a vector of length < 2 is constant");
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (!(std::sqrt(sxx) > 1e-14 * std::sqrt(dot(x, x))) || !(std::sqrt(syy) > 1e-14 * std::sqrt(dot(y, y))))
    throw Error(ErrorCode::ConstantVector, "correlation with a constant vector is undefined");
  return sxy / std::sqrt(sxx * syy);
}

// ---------------------------------------------------------------------------

SampleMatrix SampleMatrix::from_columns(std::vector<std::vector<double>> columns) {
  if (columns.empty()) throw Error(ErrorCode::InvalidShape, "sample matrix needs at least one column");
  const std::size_t n = columns.front().size();
  if (n <= columns.size()) {
    std::ostringstream os;
    os << "sample matrix needs n > p, got n = " << n << ", p = " << columns.size();
    throw Error(ErrorCode::InvalidShape, os.str());
  }
  for (std::size_t k = 0; k < columns.size(); ++k) {
    const auto& c = columns[k];
    if (c.size() != n) throw Error(ErrorCode::InvalidShape, "columns differ in length");
    const double mean = std::accumulate(c.begin(), c.end(), 0.0) / static_cast<double>(n);
    const double norm = std::sqrt(dot(c, c));
    if (!(std::abs(mean) <= 1e-10) || !(std::abs(norm - 1.0) <= 1e-10)) {
      std::ostringstream os;
      os << "column " << k << " is not standardized (mean " << mean << ", norm " << norm << ")";
      throw Error(ErrorCode::InvalidShape, os.str());
    }
  }
  return SampleMatrix(n, std::move(columns));
}

SampleMatrix SampleMatrix::standardized(const std::vector<std::vector<double>>& columns) {
  std::vector<std::vector<double>> out;
  out.reserve(columns.size());
  for (const auto& c : columns) {
    const auto s = standardize(c);
    out.emplace_back(s.values().begin(), s.values().end());
  }
  return from_columns(std::move(out));
}

SymMatrix SampleMatrix::gram() const {
  Matrix g(p(), p());
  for (std::size_t i = 0; i < p(); ++i)
    for (std::size_t j = i; j < p(); ++j) g(i, j) = g(j, i) = dot(columns_[i], columns_[j]);
  return SymMatrix(std::move(g));
}

std::vector<double> SampleMatrix::project(std::span<const double> v) const {
  if (v.size() != n_) throw Error(ErrorCode::DimensionMismatch, "vector length differs from n");
  std::vector<double> out(p());
  for (std::size_t k = 0; k < p(); ++k) out[k] = dot(columns_[k], v);
  return out;
}

SampleMatrix random_sample_matrix(std::size_t n, std::size_t p, Rng& rng) {
  std::vector<std::vector<double>> cols(p, std::vector<double>(n));
  for (auto& c : cols)
    for (double& v : c) v = rng.normal();
  return SampleMatrix::standardized(cols);
}

// ---------------------------------------------------------------------------

Matrix SvdFactorization::reconstruct() const {
  const std::size_t p = singular_values.size();
  const std::size_t n = p == 0 ? 0 : left_vectors.front().size();
  Matrix x(n, p);
  for (std::size_t k = 0; k < p; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < p; ++j) x(i, j) += singular_values[k] * left_vectors[k][i] * right_vectors(j, k);
  return x;
}

SvdFactorization svd(const SampleMatrix& x) {
  const std::size_t n = x.n();
  const std::size_t p = x.p();
  const auto eig = sym_eigen(x.gram());

  // An eigenvalue of X^T X below this is rounding noise: the Gram route
  // cannot resolve sigma below about sqrt(eps) sigma_1.
  const double rank_floor = std::max(1e-24, 1e-13 * eig.values.front());

  SvdFactorization f;
  f.right_vectors = eig.vectors;
  f.singular_values.assign(p, 0.0);
  f.left_vectors.assign(p, std::vector<double>(n, 0.0));
  // The range of X is orthogonal to 1, so every U_k is kept orthogonal to it.
  std::vector<std::vector<double>> basis;
  basis.emplace_back(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<std::size_t> deficient;
  for (std::size_t k = 0; k < p; ++k) {
    if (eig.values[k] <= rank_floor) {
      deficient.push_back(k);
      continue;
    }
    const double sigma = std::sqrt(eig.values[k]);
    std::vector<double> u(n, 0.0);
    for (std::size_t j = 0; j < p; ++j) axpy(eig.vectors(j, k), x.column(j), u);
    for (double& v : u) v /= sigma;
    const double norm = orthogonalize(u, basis);
    for (double& v : u) v /= norm;
    f.singular_values[k] = sigma;
    basis.push_back(u);
    f.left_vectors[k] = std::move(u);
  }

  if (!deficient.empty()) {
    // Complete with unit vectors orthogonal to 1 and to every accepted U_k.
    std::size_t candidate = 0;
    for (std::size_t k : deficient) {
      for (;; ++candidate) {
        if (candidate >= n) throw Error(ErrorCode::ConvergenceFailure, "could not complete left singular basis");
        std::vector<double> e(n, 0.0);
        e[candidate] = 1.0;
        const double norm = orthogonalize(e, basis);
        if (norm > 0.1) {
          for (double& v : e) v /= norm;
          basis.push_back(e);
          f.left_vectors[k] = std::move(e);
          ++candidate;
          break;
        }
      }
    }
  }
  return f;
}

double sum_sq_corr(const SampleMatrix& x, std::span<const double> y) {
  const auto ys = standardize(y);
  double total = 0.0;
  for (std::size_t k = 0; k < x.p(); ++k) {
    const double r = dot(x.column(k), ys.values());
    total += r * r;
  }
  return total;
}

double sum_sq_corr_spectral(const SvdFactorization& f, std::span<const double> y) {
  const auto ys = standardize(y);
  double total = 0.0;
  for (std::size_t k = 0; k < f.singular_values.size(); ++k) {
    const double s = f.singular_values[k];
    const double a = dot(f.left_vectors[k], ys.values());
    total += s * s * a * a;
  }
  return total;
}

std::vector<double> sample_sphere(std::size_t n, Rng& rng) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "sphere sampling needs n >= 2");
  std::vector<double> y(n);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (double& v : y) {
      v = rng.normal();
      norm2 += v * v;
    }
  } while (norm2 == 0.0);
  const double norm = std::sqrt(norm2);
  for (double& v : y) v /= norm;
  return y;
}

double expected_sum_sq_analytic(std::size_t n, std::size_t p) {
  if (p < 1 || n <= p) {
    std::ostringstream os;
    os << "need n > p >= 1, got n = " << n << ", p = " << p;
    throw Error(ErrorCode::InvalidShape, os.str());
  }
  return static_cast<double>(p) / static_cast<double>(n - 1);
}

std::vector<double> sum_sq_corr_draws(const SampleMatrix& x, const MonteCarloOptions& opts) {
  auto shards = run_shards<std::vector<double>>(opts, [&](Rng& rng, std::size_t count) {
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t t = 0; t < count; ++t) out.push_back(sum_sq_corr(x, sample_sphere(x.n(), rng)));
    return out;
  });
  std::vector<double> all;
  all.reserve(opts.trials);
  for (const auto& s : shards) all.insert(all.end(), s.begin(), s.end());
  return all;
}

MonteCarloEstimate expected_sum_sq_mc(const SampleMatrix& x, const MonteCarloOptions& opts) {
  if (opts.trials < 2) throw Error(ErrorCode::InvalidArgument, "Monte Carlo needs at least 2 trials");
  const auto shards = run_shards<RunningStats>(opts, [&](Rng& rng, std::size_t count) {
    RunningStats s;
    for (std::size_t t = 0; t < count; ++t) s.add(sum_sq_corr(x, sample_sphere(x.n(), rng)));
    return s;
  });
  RunningStats total;
  for (const auto& s : shards) total.merge(s);
  return {total.mean(), total.standard_error(), total.count(), opts.seed};
}

MixtureComparison chisq_mixture_compare(const SampleMatrix& x, const MonteCarloOptions& opts) {
  if (opts.trials < 1000) throw Error(ErrorCode::InvalidArgument, "mixture comparison needs at least 1000 trials");
  const auto simulated = sum_sq_corr_draws(x, opts);

  const auto f = svd(x);
  const double scale = 1.0 / static_cast<double>(x.n() - 1);
  MonteCarloOptions mixture_opts = opts;
  std::uint64_t sm = opts.seed ^ 0x6A09E667F3BCC909ULL;
  mixture_opts.seed = splitmix64(sm);
  auto shards = run_shards<std::vector<double>>(mixture_opts, [&](Rng& rng, std::size_t count) {
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t t = 0; t < count; ++t) {
      double v = 0.0;
      for (double s : f.singular_values) {
        const double z = rng.normal();
        v += s * s * z * z;
      }
      out.push_back(scale * v);
    }
    return out;
  });
  std::vector<double> mixture;
  mixture.reserve(opts.trials);
  for (const auto& s : shards) mixture.insert(mixture.end(), s.begin(), s.end());

  RunningStats stats;
  for (double v : simulated) stats.add(v);
  return {ks_two_sample(simulated, mixture), stats.variance()};
}

}  // namespace piranha
