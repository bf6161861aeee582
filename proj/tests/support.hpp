#pragma once
//
// Test-side oracles and random generators. Nothing here calls the library's
// eigensolver or factorizations, so results checked against these helpers
// are checked against independent arithmetic.
//

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include "pdk/linalg.hpp"

namespace testing {

using pdk::Matrix;
using pdk::Vector;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(eng_);
  }
  double normal() { return std::normal_distribution<double>()(eng_); }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(eng_); }

  Vector vector(std::size_t n) {
    Vector v(n);
    for (double& x : v) x = normal();
    return v;
  }
  Vector unit(std::size_t n) {
    Vector v;
    double s = 0.0;
    do {
      v = vector(n);
      s = std::sqrt(pdk::dot(v, v));
    } while (s < 1e-6);
    for (double& x : v) x /= s;
    return v;
  }
  Matrix matrix(std::size_t r, std::size_t c) {
    Matrix m(r, c);
    for (double& x : m.data()) x = normal();
    return m;
  }
  /// Orthonormal columns by modified Gram–Schmidt with reorthogonalization.
  Matrix onb(std::size_t n) { return gram_schmidt(matrix(n, n)); }

  static Matrix gram_schmidt(const Matrix& a) {
    Matrix q = a;
    for (std::size_t j = 0; j < q.cols(); ++j) {
      Vector v = q.column(j);
      for (int pass = 0; pass < 2; ++pass)
        for (std::size_t k = 0; k < j; ++k) {
          const Vector u = q.column(k);
          const double c = pdk::dot(u, v);
          for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * u[i];
        }
      const double n = std::sqrt(pdk::dot(v, v));
      if (n < 1e-10) throw std::runtime_error("gram_schmidt: dependent columns");
      for (double& x : v) x /= n;
      q.set_column(j, v);
    }
    return q;
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

/// Number of eigenvalues of the symmetric matrix a that are < s, by
/// Sylvester's law of inertia on an unpivoted LDLᵀ of a − sI. A zero pivot is
/// nudged, which only moves s by a negligible amount.
inline std::size_t count_below(const Matrix& a, double s) {
  const std::size_t n = a.rows();
  Matrix w = a;
  for (std::size_t i = 0; i < n; ++i) w(i, i) -= s;
  std::size_t neg = 0;
  const double tiny = 1e-300 + 1e-14 * std::max(1.0, a.max_abs());
  for (std::size_t k = 0; k < n; ++k) {
    double d = w(k, k);
    if (d == 0.0) d = -tiny;
    if (d < 0.0) ++neg;
    for (std::size_t i = k + 1; i < n; ++i) {
      const double l = w(i, k) / d;
      for (std::size_t j = k + 1; j <= i; ++j) w(i, j) -= l * w(j, k);
    }
  }
  return neg;
}

/// All eigenvalues, descending, by bisection on the inertia count. With
/// tol = 0 the bisection runs until the bracket cannot shrink further.
inline Vector bisection_eigenvalues(const Matrix& a, double tol = 0.0) {
  const std::size_t n = a.rows();
  double r = 0.0;  // Gershgorin radius bound
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += std::abs(a(i, j));
    r = std::max(r, s);
  }
  Vector out;
  for (std::size_t k = 0; k < n; ++k) {
    // k-th smallest: smallest s with count_below(s) > k.
    double lo = -r - 1.0, hi = r + 1.0;
    const double scale = std::max(1.0, r);
    while (hi - lo > tol * scale) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (count_below(a, mid) > k) hi = mid;
      else lo = mid;
    }
    out.push_back(0.5 * (lo + hi));
  }
  std::reverse(out.begin(), out.end());
  return out;
}

/// Gaussian elimination with partial pivoting on a square system.
inline Vector gauss_solve(Matrix a, Vector b) {
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    if (a(p, k) == 0.0) throw std::runtime_error("gauss_solve: singular");
    for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
    std::swap(b[k], b[p]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double l = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= l * a(k, j);
      b[i] -= l * b[k];
    }
  }
  Vector x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
    x[i] = s / a(i, i);
  }
  return x;
}

/// Minimum-norm solution of a consistent system: x = Aᵀ(AAᵀ)⁻¹b when A has
/// full row rank, otherwise (AᵀA)⁻¹Aᵀb for full column rank.
inline Vector min_norm_solution(const Matrix& a, const Vector& b) {
  if (a.rows() <= a.cols()) {
    const Vector y = gauss_solve(a * a.transpose(), b);
    return pdk::transpose_times(a, y);
  }
  return gauss_solve(pdk::transpose_times(a, a), pdk::transpose_times(a, b));
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  return max_abs_diff(a.data(), b.data());
}

/// Singular values, descending, by one-sided (Hestenes) Jacobi on the
/// columns of m. Accurate to roughly eps·‖m‖ in absolute terms, which is what
/// a numerical-rank test needs.
inline Vector singular_values(Matrix m) {
  const std::size_t r = m.rows(), c = m.cols();
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < c; ++p)
      for (std::size_t q = p + 1; q < c; ++q) {
        double a = 0.0, b = 0.0, g = 0.0;
        for (std::size_t i = 0; i < r; ++i) {
          a += m(i, p) * m(i, p);
          b += m(i, q) * m(i, q);
          g += m(i, p) * m(i, q);
        }
        if (std::abs(g) <= 1e-15 * std::sqrt(a * b) || g == 0.0) continue;
        rotated = true;
        const double zeta = (b - a) / (2.0 * g);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double cs = 1.0 / std::sqrt(1.0 + t * t), sn = cs * t;
        for (std::size_t i = 0; i < r; ++i) {
          const double x = m(i, p), y = m(i, q);
          m(i, p) = cs * x - sn * y;
          m(i, q) = sn * x + cs * y;
        }
      }
    if (!rotated) break;
  }
  Vector s(c);
  for (std::size_t j = 0; j < c; ++j) {
    double n = 0.0;
    for (std::size_t i = 0; i < r; ++i) n += m(i, j) * m(i, j);
    s[j] = std::sqrt(n);
  }
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

inline double third_singular_value(const Matrix& m) {
  const Vector s = singular_values(m);
  return s.size() < 3 ? 0.0 : s[2];
}

}  // namespace testing
