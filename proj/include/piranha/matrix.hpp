#pragma once

// Dense symmetric-matrix types and spectral primitives shared by every bound.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "piranha/error.hpp"

namespace piranha {

inline constexpr double kDefaultPsdTolerance = 1e-8;
inline constexpr double kDefaultRankTolerance = 1e-12;

/// Dense row-major real matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const double> data() const noexcept { return data_; }

  std::vector<double> column(std::size_t j) const;
  Matrix transpose() const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
std::vector<double> multiply(const Matrix& a, std::span<const double> x);

double max_abs(const Matrix& a) noexcept;
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Square matrix whose entries satisfy a(i,j) == a(j,i) bit for bit.
class SymMatrix {
 public:
  /// Throws NotSymmetric unless `m` is exactly symmetric, InvalidShape if it
  /// is empty or not square.
  explicit SymMatrix(Matrix m);

  /// Averages `m` with its transpose.
  static SymMatrix symmetrize(const Matrix& m);
  static SymMatrix identity(std::size_t n);
  static SymMatrix diagonal(std::span<const double> d);

  std::size_t dim() const noexcept { return m_.rows(); }
  double operator()(std::size_t i, std::size_t j) const noexcept { return m_(i, j); }
  const Matrix& dense() const noexcept { return m_; }
  double trace() const noexcept;

  bool operator==(const SymMatrix&) const = default;

 private:
  struct Trusted {};
  SymMatrix(Matrix m, Trusted) : m_(std::move(m)) {}

  Matrix m_;
};

struct EigenDecomposition {
  std::vector<double> values;  // descending
  Matrix vectors;              // column k pairs with values[k]

  double max() const { return values.front(); }
  double min() const { return values.back(); }
};

/// Full eigendecomposition by cyclic Jacobi rotations. Output is a pure
/// function of the input bits; eigenvector signs are normalized so the
/// largest-magnitude component of each column is positive.
EigenDecomposition sym_eigen(const SymMatrix& m, int max_sweeps = 100);

/// A validated correlation matrix: unit diagonal, entries in [-1, 1] and
/// minimum eigenvalue no lower than the tolerance it was checked against.
class CorrelationMatrix {
 public:
  static CorrelationMatrix identity(std::size_t p);

  std::size_t dim() const noexcept { return m_.dim(); }
  double operator()(std::size_t i, std::size_t j) const noexcept { return m_(i, j); }
  const SymMatrix& matrix() const noexcept { return m_; }

  bool operator==(const CorrelationMatrix&) const = default;

 private:
  explicit CorrelationMatrix(SymMatrix m) : m_(std::move(m)) {}

  friend CorrelationMatrix validate_correlation(const SymMatrix&, double);
  friend CorrelationMatrix equicorrelation(std::size_t, double);

  SymMatrix m_;
};

struct CorrelationViolation {
  ErrorCode kind;      // DiagonalNotUnit, EntryOutOfRange or NotPositiveSemiDefinite
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0.0;  // the offending entry, or lambda_min for PSD failures
};

class CorrelationError : public Error {
 public:
  explicit CorrelationError(std::vector<CorrelationViolation> violations);

  const std::vector<CorrelationViolation>& violations() const noexcept { return violations_; }
  bool has(ErrorCode kind) const noexcept;

 private:
  std::vector<CorrelationViolation> violations_;
};

/// Checks every correlation invariant and reports all of them at once.
CorrelationMatrix validate_correlation(const SymMatrix& m,
                                       double psd_tolerance = kDefaultPsdTolerance);

/// Unit diagonal with every off-diagonal equal to rho. Valid (PSD) exactly
/// when rho lies in [-1/(p-1), 1]; otherwise throws RhoOutOfRange.
CorrelationMatrix equicorrelation(std::size_t p, double rho);

class SecondMomentMatrix {
 public:
  /// Throws NotPositiveSemiDefinite when lambda_min < -psd_tolerance.
  explicit SecondMomentMatrix(SymMatrix m, double psd_tolerance = kDefaultPsdTolerance);
  static SecondMomentMatrix from(const CorrelationMatrix& c);

  std::size_t dim() const noexcept { return m_.dim(); }
  const SymMatrix& matrix() const noexcept { return m_; }
  const EigenDecomposition& spectrum() const noexcept { return eig_; }

 private:
  SymMatrix m_;
  EigenDecomposition eig_;
};

/// Inverse through the eigendecomposition. Throws SingularMatrix when
/// lambda_min <= rank_tolerance.
SymMatrix invert_psd(const SecondMomentMatrix& m, double rank_tolerance = kDefaultRankTolerance);

}  // namespace piranha
