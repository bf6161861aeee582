#include "pdk/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "pdk/error.hpp"

namespace pdk {

namespace {

constexpr int kMaxSweeps = 100;

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::domain, std::string("matrix shape mismatch in ") + op);
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols)
    throw Error(ErrorCode::invalid_argument, "matrix data length does not match shape");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_)
      throw Error(ErrorCode::invalid_argument, "ragged matrix initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Vector Matrix::column(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Matrix::set_column(std::size_t j, std::span<const double> v) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Matrix::trace() const {
  double s = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
  return s;
}

double Matrix::frobenius() const {
  double s = 0.0;
  for (double x : data_) s += x * x;
  return std::sqrt(s);
}

double Matrix::max_abs() const {
  double s = 0.0;
  for (double x : data_) s = std::max(s, std::abs(x));
  return s;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::domain, "matrix product shape mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ci = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      auto bk = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "addition");
  Matrix c = a;
  for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] += b.data()[i];
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "subtraction");
  Matrix c = a;
  for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] -= b.data()[i];
  return c;
}

Matrix operator*(double s, const Matrix& a) {
  Matrix c = a;
  for (double& x : c.data()) x *= s;
  return c;
}

Vector operator*(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw Error(ErrorCode::domain, "matrix-vector shape mismatch");
  Vector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
  return y;
}

Matrix transpose_times(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorCode::domain, "aᵀb shape mismatch");
  Matrix c(a.cols(), b.cols());
  for (std::size_t k = 0; k < a.rows(); ++k) {
    auto ak = a.row(k);
    auto bk = b.row(k);
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const double aki = ak[i];
      if (aki == 0.0) continue;
      auto ci = c.row(i);
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aki * bk[j];
    }
  }
  return c;
}

Vector transpose_times(const Matrix& a, std::span<const double> x) {
  if (a.rows() != x.size()) throw Error(ErrorCode::domain, "aᵀx shape mismatch");
  Vector y(a.cols(), 0.0);
  for (std::size_t k = 0; k < a.rows(); ++k) {
    auto ak = a.row(k);
    for (std::size_t i = 0; i < a.cols(); ++i) y[i] += ak[i] * x[k];
  }
  return y;
}

Matrix outer(std::span<const double> u, std::span<const double> v) {
  Matrix m(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * v[j];
  return m;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::domain, "dot product length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double norm_inf(std::span<const double> a) {
  double s = 0.0;
  for (double x : a) s = std::max(s, std::abs(x));
  return s;
}

Vector axpy(double alpha, std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::domain, "axpy length mismatch");
  Vector r(y.begin(), y.end());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += alpha * x[i];
  return r;
}

Vector subtract(std::span<const double> a, std::span<const double> b) {
  return axpy(-1.0, b, a);
}

// ---------------------------------------------------------------------------

SymMatrix::SymMatrix(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw Error(ErrorCode::domain, "symmetric matrix must be square");
  for (std::size_t i = 0; i < m_.rows(); ++i)
    for (std::size_t j = i + 1; j < m_.cols(); ++j)
      if (m_(i, j) != m_(j, i))
        throw Error(ErrorCode::domain, "matrix is not symmetric at (" + std::to_string(i) +
                                           "," + std::to_string(j) + ")");
}

SymMatrix SymMatrix::symmetrize(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::domain, "symmetric matrix must be square");
  Matrix s = m;
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = i + 1; j < s.cols(); ++j) {
      const double v = 0.5 * (m(i, j) + m(j, i));
      s(i, j) = v;
      s(j, i) = v;
    }
  return SymMatrix(std::move(s));
}

// ---------------------------------------------------------------------------

namespace {

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

EigenDecomposition sym_eigen(const SymMatrix& m, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::invalid_argument, "sym_eigen tolerance must be positive");
  const std::size_t n = m.size();
  Matrix a = m.matrix();
  // Rows of vt are the eigenvectors; rotating rows keeps memory access contiguous.
  Matrix vt = Matrix::identity(n);
  const double target = tol * m.matrix().frobenius();

  EigenDecomposition out;
  double off = off_diagonal_norm(a);
  int sweep = 0;
  while (off > target) {
    if (sweep == kMaxSweeps)
      throw ConvergenceError("Jacobi eigensolver did not converge in " +
                                 std::to_string(kMaxSweeps) + " sweeps (residual " +
                                 std::to_string(off) + ")",
                             off);
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        const double g = 100.0 * std::abs(apq);
        if (sweep > 3 && std::abs(app) + g == std::abs(app) &&
            std::abs(aqq) + g == std::abs(aqq)) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a(p, k);
          const double akq = a(q, k);
          const double np = c * akp - s * akq;
          const double nq = s * akp + c * akq;
          a(p, k) = np;
          a(k, p) = np;
          a(q, k) = nq;
          a(k, q) = nq;
        }
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        auto vp = vt.row(p);
        auto vq = vt.row(q);
        for (std::size_t k = 0; k < n; ++k) {
          const double x = vp[k];
          const double y = vq[k];
          vp[k] = c * x - s * y;
          vq[k] = s * x + c * y;
        }
      }
    }
    ++sweep;
    off = off_diagonal_norm(a);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.values[k] = a(src, src);
    auto v = vt.row(src);
    double sign = 1.0;
    for (double x : v) {
      if (std::abs(x) > 1e-12) {
        sign = x > 0.0 ? 1.0 : -1.0;
        break;
      }
    }
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = sign * v[i];
  }
  out.sweeps = sweep;
  out.off_norm = off;
  return out;
}

Matrix reconstruct(const EigenDecomposition& e) {
  const std::size_t n = e.vectors.rows();
  Matrix scaled = e.vectors;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < e.values.size(); ++k) scaled(i, k) *= e.values[k];
  return scaled * e.vectors.transpose();
}

// ---------------------------------------------------------------------------

PsdFactor psd_factor(const SymMatrix& m, std::optional<double> jitter) {
  const double rel = jitter.value_or(1e-10);
  if (!(rel >= 0.0)) throw Error(ErrorCode::invalid_argument, "jitter must be nonnegative");
  const std::size_t n = m.size();

  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(m(i, i)));
  const double threshold = rel * scale;

  Vector d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = m(i, i);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Matrix l(n, n);

  std::size_t rank = 0;
  for (; rank < n; ++rank) {
    std::size_t best = rank;
    for (std::size_t j = rank + 1; j < n; ++j)
      if (d[perm[j]] > d[perm[best]]) best = j;
    if (d[perm[best]] <= threshold) break;
    std::swap(perm[rank], perm[best]);
    const std::size_t piv = perm[rank];
    const double lpp = std::sqrt(d[piv]);
    l(piv, rank) = lpp;
    for (std::size_t j = rank + 1; j < n; ++j) {
      const std::size_t i = perm[j];
      double s = m(i, piv);
      for (std::size_t k = 0; k < rank; ++k) s -= l(i, k) * l(piv, k);
      l(i, rank) = s / lpp;
      d[i] -= l(i, rank) * l(i, rank);
    }
  }
  for (std::size_t j = rank; j < n; ++j) {
    const double v = d[perm[j]];
    if (v < -threshold || std::isnan(v))
      throw NotPsdError("matrix is not positive semidefinite (residual pivot " +
                            std::to_string(v) + " at index " + std::to_string(perm[j]) + ")",
                        v);
  }

  PsdFactor out;
  out.rank = rank;
  out.permutation = std::move(perm);
  out.factor = Matrix(n, rank);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < rank; ++k) out.factor(i, k) = l(i, k);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

Matrix cholesky(const SymMatrix& m) {
  const std::size_t n = m.size();
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(m(i, i)));
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * scale;
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = m(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > floor))
      throw SingularError("matrix is singular or indefinite at pivot " + std::to_string(j) +
                              " (pivot value " + std::to_string(d) + ")",
                          j);
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }
  return l;
}

Vector cholesky_solve(const Matrix& l, std::span<const double> b) {
  const std::size_t n = l.rows();
  Vector y(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) y[i] -= l(i, k) * y[k];
    y[i] /= l(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t k = i + 1; k < n; ++k) y[i] -= l(k, i) * y[k];
    y[i] /= l(i, i);
  }
  return y;
}

}  // namespace

Vector solve_spd(const SymMatrix& m, std::span<const double> rhs) {
  if (rhs.size() != m.size()) throw Error(ErrorCode::domain, "right-hand side length mismatch");
  const Matrix l = cholesky(m);
  Vector x = cholesky_solve(l, rhs);
  const Vector r = subtract(rhs, m.matrix() * x);
  const Vector dx = cholesky_solve(l, r);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += dx[i];
  return x;
}

}  // namespace pdk
