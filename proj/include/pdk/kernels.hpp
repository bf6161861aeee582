#pragma once
//
// Positive definite kernel families, Gram matrices, the kernel-induced metric
// and bounds for kernels restricted to finite point sets.
//

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "pdk/linalg.hpp"

namespace pdk {

using Point = std::vector<double>;

/// Ordered points of a common dimension. For the intersection kernel a point
/// is the 0/1 indicator vector of a subset of the ground set; for explicit
/// Gram kernels it is a one-element vector holding the index.
class PointSet {
 public:
  PointSet() = default;
  PointSet(std::size_t dim, std::vector<Point> points);

  /// One-dimensional points.
  static PointSet line(std::span<const double> xs);
  /// Rows of a matrix as points.
  static PointSet from_rows(const Matrix& m);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Point>& points() const noexcept { return points_; }

  /// True when two points coincide (their Gram is then singular).
  bool has_duplicates() const;

  bool operator==(const PointSet&) const = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Point> points_;
};

/// Finite ground set {0,…,n−1} with nonnegative weights ν.
struct FiniteMeasureSpace {
  std::vector<double> weights;

  explicit FiniteMeasureSpace(std::vector<double> w);
  static FiniteMeasureSpace counting(std::size_t n) {
    return FiniteMeasureSpace(std::vector<double>(n, 1.0));
  }
  std::size_t size() const noexcept { return weights.size(); }
  /// Indicator vector of a subset given by element indices.
  Point indicator(std::span<const std::size_t> elements) const;
  double measure(std::span<const double> indicator) const;

  bool operator==(const FiniteMeasureSpace&) const = default;
};

namespace kernel {

/// exp(−‖x−y‖²/(2σ²))
struct Gaussian {
  double sigma = 1.0;
  bool operator==(const Gaussian&) const = default;
};

/// ∏ᵢ sin(π tᵢ)/(π tᵢ) with t = x−y.
struct Sinc {
  bool operator==(const Sinc&) const = default;
};

/// Reproducing kernel of the Paley-Wiener space over the box ∏[−aᵢ,aᵢ].
/// Unnormalized: ∏ 2 sin(aᵢtᵢ)/tᵢ, the Fourier transform of the indicator.
/// Normalized: divided by (2π)^d, i.e. ∏ sin(aᵢtᵢ)/(π tᵢ), which equals the
/// sinc kernel when every aᵢ = π.
struct PaleyWienerBox {
  std::vector<double> half_width;
  bool normalized = true;
  bool operator==(const PaleyWienerBox&) const = default;
};

/// K(A,B) = ν(A∩B) on indicator vectors.
struct Intersection {
  FiniteMeasureSpace space;
  bool operator==(const Intersection&) const = default;
};

/// K(i,j) = G[i][j] on integer indices.
struct ExplicitGram {
  SymMatrix gram;
  bool operator==(const ExplicitGram&) const = default;
};

}  // namespace kernel

class Kernel {
 public:
  using Family = std::variant<kernel::Gaussian, kernel::Sinc, kernel::PaleyWienerBox,
                              kernel::Intersection, kernel::ExplicitGram>;

  Kernel(Family f);  // NOLINT(google-explicit-constructor)

  static Kernel gaussian(double sigma) { return Kernel(kernel::Gaussian{sigma}); }
  static Kernel sinc() { return Kernel(kernel::Sinc{}); }
  static Kernel paley_wiener(std::vector<double> half_width, bool normalized = true) {
    return Kernel(kernel::PaleyWienerBox{std::move(half_width), normalized});
  }
  static Kernel intersection(FiniteMeasureSpace space) {
    return Kernel(kernel::Intersection{std::move(space)});
  }
  static Kernel explicit_gram(SymMatrix g) { return Kernel(kernel::ExplicitGram{std::move(g)}); }

  const Family& family() const noexcept { return family_; }
  std::string name() const;

  /// Depends on x−y only.
  bool is_stationary() const noexcept;

  /// Throws Error(domain) when x or y do not conform to the family's domain.
  double operator()(std::span<const double> x, std::span<const double> y) const;

  /// Checks that p belongs to the kernel's domain.
  void validate(std::span<const double> p) const;
  void validate(const PointSet& pts) const;

  bool operator==(const Kernel&) const = default;

 private:
  Family family_;
};

/// sin(π·t), exact zero at every integer t.
double sin_pi(double t);

double eval_kernel(const Kernel& k, std::span<const double> x, std::span<const double> y);

struct GramMatrix {
  Kernel kernel;
  PointSet points;
  SymMatrix matrix;
};

/// Gram over pts. Upper triangle evaluated, lower triangle mirrored.
GramMatrix gram_matrix(const Kernel& k, const PointSet& pts);
/// Cross matrix K(aᵢ, bⱼ).
Matrix cross_gram(const Kernel& k, const PointSet& a, const PointSet& b);

/// d_K(x,y) = ‖K_x − K_y‖. Radicands down to −1e-12 are clamped to zero.
double induced_metric(const Kernel& k, std::span<const double> x, std::span<const double> y);

struct PsdCheck {
  bool is_psd = false;
  double min_eigenvalue = 0.0;
};

PsdCheck psd_check(const SymMatrix& m, double tol = 1e-9);

/// Σ_{x∈V} |K(x,y)|², the finite truncation of the row-summability constant.
double row_l2_sum(const Kernel& k, const PointSet& v, std::span<const double> y);

struct RestrictionBounds {
  double sampling_a = 0.0;  ///< λ_min(K_V)
  double sampling_b = 0.0;  ///< λ_max(K_V)
  double operator_a = 0.0;  ///< λ_min(K_V)², lower bound of ‖K_V c‖²/‖c‖²
  double operator_b = 0.0;  ///< λ_max(K_V)²
  bool near_singular = false;
};

RestrictionBounds restriction_bounds(const Kernel& k, const PointSet& v);

}  // namespace pdk
