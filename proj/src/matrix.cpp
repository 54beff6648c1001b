#include "piranha/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace piranha {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  Matrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw Error(ErrorCode::InvalidShape, "ragged matrix literal");
    std::size_t j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

std::vector<double> Matrix::column(std::size_t j) const {
  std::vector<double> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

std::vector<double> multiply(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw Error(ErrorCode::DimensionMismatch, "matrix-vector shape mismatch");
  std::vector<double> y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto r = a.row(i);
    y[i] = std::inner_product(r.begin(), r.end(), x.begin(), 0.0);
  }
  return y;
}

double max_abs(const Matrix& a) noexcept {
  double m = 0.0;
  for (double v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::DimensionMismatch, "matrix difference shape mismatch");
  double m = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

// ---------------------------------------------------------------------------

SymMatrix::SymMatrix(Matrix m) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols())
    throw Error(ErrorCode::InvalidShape, "symmetric matrix must be square with dim >= 1");
  for (std::size_t i = 0; i < m_.rows(); ++i)
    for (std::size_t j = i + 1; j < m_.cols(); ++j)
      if (m_(i, j) != m_(j, i)) {
        std::ostringstream os;
        os << "matrix is not symmetric at (" << i << ", " << j << ")";
        throw Error(ErrorCode::NotSymmetric, os.str());
      }
}

SymMatrix SymMatrix::symmetrize(const Matrix& m) {
  if (m.rows() == 0 || m.rows() != m.cols())
    throw Error(ErrorCode::InvalidShape, "symmetric matrix must be square with dim >= 1");
  Matrix s(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s(i, i) = m(i, i);
    for (std::size_t j = i + 1; j < m.cols(); ++j) s(i, j) = s(j, i) = 0.5 * (m(i, j) + m(j, i));
  }
  return SymMatrix(std::move(s), Trusted{});
}

SymMatrix SymMatrix::identity(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidShape, "dimension must be >= 1");
  return SymMatrix(Matrix::identity(n), Trusted{});
}

SymMatrix SymMatrix::diagonal(std::span<const double> d) {
  if (d.empty()) throw Error(ErrorCode::InvalidShape, "dimension must be >= 1");
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return SymMatrix(std::move(m), Trusted{});
}

double SymMatrix::trace() const noexcept {
  double t = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) t += m_(i, i);
  return t;
}

// ---------------------------------------------------------------------------

EigenDecomposition sym_eigen(const SymMatrix& m, int max_sweeps) {
  const std::size_t n = m.dim();
  Matrix a = m.dense();
  Matrix v = Matrix::identity(n);
  constexpr double eps = std::numeric_limits<double>::epsilon();

  double frob = 0.0;
  for (double x : a.data()) frob += x * x;
  frob = std::sqrt(frob);
  // Absolute floor so exactly-scaled zero diagonals still terminate.
  const double floor = eps * eps * frob;

  bool converged = n == 1;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        const double app = a(p, p);
        const double aqq = a(q, q);
        if (std::abs(apq) <= std::max(eps * std::sqrt(std::abs(app * aqq)), floor)) continue;
        rotated = true;

        const double theta = (aqq - app) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a(k, p);
          const double akq = a(k, q);
          const double np = c * akp - s * akq;
          const double nq = s * akp + c * akq;
          a(k, p) = a(p, k) = np;
          a(k, q) = a(q, k) = nq;
        }
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = a(q, p) = 0.0;

        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
    converged = !rotated;
  }
  if (!converged)
    throw Error(ErrorCode::ConvergenceFailure,
                "Jacobi eigensolver exceeded " + std::to_string(max_sweeps) + " sweeps");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  EigenDecomposition out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.values[k] = a(src, src);
    std::size_t argmax = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (std::abs(v(i, src)) > std::abs(v(argmax, src))) argmax = i;
    const double sign = v(argmax, src) < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = sign * v(i, src);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kUnitTolerance = 1e-12;

std::string describe(const std::vector<CorrelationViolation>& vs) {
  std::ostringstream os;
  os << "invalid correlation matrix:";
  for (const auto& v : vs) {
    os << "\n  " << to_string(v.kind);
    if (v.kind == ErrorCode::NotPositiveSemiDefinite)
      os << " (lambda_min = " << v.value << ")";
    else
      os << " at (" << v.row << ", " << v.col << ") = " << v.value;
  }
  return os.str();
}

}  // namespace

CorrelationError::CorrelationError(std::vector<CorrelationViolation> violations)
    : Error(violations.empty() ? ErrorCode::InvalidArgument : violations.front().kind,
            describe(violations)),
      violations_(std::move(violations)) {}

bool CorrelationError::has(ErrorCode kind) const noexcept {
  return std::any_of(violations_.begin(), violations_.end(),
                     [&](const CorrelationViolation& v) { return v.kind == kind; });
}

CorrelationMatrix CorrelationMatrix::identity(std::size_t p) {
  return CorrelationMatrix(SymMatrix::identity(p));
}

CorrelationMatrix validate_correlation(const SymMatrix& m, double psd_tolerance) {
  if (!(psd_tolerance >= 0.0))
    throw Error(ErrorCode::InvalidArgument, "psd_tolerance must be nonnegative");
  std::vector<CorrelationViolation> violations;
  const std::size_t p = m.dim();
  for (std::size_t i = 0; i < p; ++i)
    if (!(std::abs(m(i, i) - 1.0) <= kUnitTolerance))
      violations.push_back({ErrorCode::DiagonalNotUnit, i, i, m(i, i)});
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j)
      if (!(std::abs(m(i, j)) <= 1.0 + kUnitTolerance))
        violations.push_back({ErrorCode::EntryOutOfRange, i, j, m(i, j)});

  bool finite = true;
  for (double x : m.dense().data()) finite = finite && std::isfinite(x);
  if (finite) {
    const double lmin = sym_eigen(m).min();
    if (lmin < -psd_tolerance) violations.push_back({ErrorCode::NotPositiveSemiDefinite, 0, 0, lmin});
  }
  if (!violations.empty()) throw CorrelationError(std::move(violations));
  return CorrelationMatrix(m);
}

CorrelationMatrix equicorrelation(std::size_t p, double rho) {
  if (p == 0) throw Error(ErrorCode::InvalidShape, "equicorrelation needs p >= 1");
  const double lower = p == 1 ? -1.0 : -1.0 / static_cast<double>(p - 1);
  if (!(rho >= lower - kUnitTolerance && rho <= 1.0 + kUnitTolerance)) {
    std::ostringstream os;
    os << "rho = " << rho << " outside [" << lower << ", 1] for p = " << p;
    throw Error(ErrorCode::RhoOutOfRange, os.str());
  }
  Matrix m(p, p, rho);
  for (std::size_t i = 0; i < p; ++i) m(i, i) = 1.0;
  return CorrelationMatrix(SymMatrix(std::move(m)));
}

// ---------------------------------------------------------------------------

SecondMomentMatrix::SecondMomentMatrix(SymMatrix m, double psd_tolerance)
    : m_(std::move(m)), eig_(sym_eigen(m_)) {
  if (eig_.min() < -psd_tolerance) {
    std::ostringstream os;
    os << "second-moment matrix is not PSD (lambda_min = " << eig_.min() << ")";
    throw Error(ErrorCode::NotPositiveSemiDefinite, os.str());
  }
}

SecondMomentMatrix SecondMomentMatrix::from(const CorrelationMatrix& c) {
  return SecondMomentMatrix(c.matrix(), std::numeric_limits<double>::infinity());
}

SymMatrix invert_psd(const SecondMomentMatrix& m, double rank_tolerance) {
  const auto& eig = m.spectrum();
  if (eig.min() <= rank_tolerance) {
    std::ostringstream os;
    os << "matrix is singular to tolerance " << rank_tolerance << " (lambda_min = " << eig.min() << ")";
    throw Error(ErrorCode::SingularMatrix, os.str());
  }
  const std::size_t n = m.dim();
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += eig.vectors(i, k) * eig.vectors(j, k) / eig.values[k];
      inv(i, j) = inv(j, i) = s;
    }
  return SymMatrix(std::move(inv));
}

}  // namespace piranha
