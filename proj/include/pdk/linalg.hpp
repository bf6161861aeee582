#pragma once
//
// Dense real linear algebra used throughout the library: a row-major matrix,
// a symmetric wrapper, cyclic Jacobi eigensolver, pivoted PSD factorization
// and SPD solves.
//

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace pdk {

using Vector = std::vector<double>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  Vector column(std::size_t j) const;
  void set_column(std::size_t j, std::span<const double> v);

  const std::vector<double>& data() const noexcept { return data_; }
  std::vector<double>& data() noexcept { return data_; }

  Matrix transpose() const;
  double trace() const;
  double frobenius() const;
  double max_abs() const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);
Vector operator*(const Matrix& a, std::span<const double> x);

/// aᵀ·b without forming the transpose.
Matrix transpose_times(const Matrix& a, const Matrix& b);
/// aᵀ·x
Vector transpose_times(const Matrix& a, std::span<const double> x);
/// Outer product u·vᵀ.
Matrix outer(std::span<const double> u, std::span<const double> v);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
double norm_inf(std::span<const double> a);
Vector axpy(double alpha, std::span<const double> x, std::span<const double> y);
Vector subtract(std::span<const double> a, std::span<const double> b);

/// Symmetric matrix. Construction rejects anything that is not symmetric
/// bit-for-bit as stored.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(Matrix m);

  /// Builds (m + mᵀ)/2; for inputs that are symmetric up to rounding.
  static SymMatrix symmetrize(const Matrix& m);
  static SymMatrix identity(std::size_t n) { return SymMatrix(Matrix::identity(n)); }

  std::size_t size() const noexcept { return m_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const Matrix& matrix() const noexcept { return m_; }
  double trace() const { return m_.trace(); }

  bool operator==(const SymMatrix&) const = default;

 private:
  Matrix m_;
};

struct EigenDecomposition {
  Vector values;       ///< non-increasing
  Matrix vectors;      ///< column k pairs with values[k]
  int sweeps = 0;
  double off_norm = 0.0;  ///< off-diagonal Frobenius norm at exit
};

/// Cyclic Jacobi. Stops once the off-diagonal Frobenius norm of the rotated
/// matrix is ≤ tol·‖m‖_F; throws ConvergenceError after 100 sweeps.
/// Eigenvectors are sign-normalized so that their first component with
/// magnitude above 1e-12 is positive.
EigenDecomposition sym_eigen(const SymMatrix& m, double tol = 1e-12);

/// Rebuilds Σ λₖ vₖvₖᵀ.
Matrix reconstruct(const EigenDecomposition& e);

struct PsdFactor {
  std::size_t rank = 0;
  Matrix factor;                        ///< n×rank, rows in input order, L·Lᵀ ≈ m
  std::vector<std::size_t> permutation; ///< pivot order; first `rank` entries were pivots
};

/// Diagonally pivoted Cholesky. Pivots at or below jitter·max(diag) terminate
/// the factorization; a remaining diagonal below −jitter·max(diag) means the
/// input is not PSD and raises NotPsdError. jitter defaults to 1e-10.
PsdFactor psd_factor(const SymMatrix& m, std::optional<double> jitter = std::nullopt);

/// Cholesky solve with one step of iterative refinement. Throws
/// SingularError naming the first non-positive pivot.
Vector solve_spd(const SymMatrix& m, std::span<const double> rhs);

}  // namespace pdk
