#include "pdk/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pdk/error.hpp"

namespace pdk {

PointSet::PointSet(std::size_t dim, std::vector<Point> points)
    : dim_(dim), points_(std::move(points)) {
  for (std::size_t i = 0; i < points_.size(); ++i)
    if (points_[i].size() != dim_)
      throw Error(ErrorCode::domain, "point " + std::to_string(i) + " has dimension " +
                                         std::to_string(points_[i].size()) + ", expected " +
                                         std::to_string(dim_));
}

PointSet PointSet::line(std::span<const double> xs) {
  std::vector<Point> pts;
  pts.reserve(xs.size());
  for (double x : xs) pts.push_back({x});
  return PointSet(1, std::move(pts));
}

PointSet PointSet::from_rows(const Matrix& m) {
  std::vector<Point> pts;
  pts.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) pts.emplace_back(m.row(i).begin(), m.row(i).end());
  return PointSet(m.cols(), std::move(pts));
}

bool PointSet::has_duplicates() const {
  std::vector<Point> sorted = points_;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

FiniteMeasureSpace::FiniteMeasureSpace(std::vector<double> w) : weights(std::move(w)) {
  for (double x : weights)
    if (!(x >= 0.0) || !std::isfinite(x))
      throw Error(ErrorCode::invalid_argument, "measure weights must be finite and nonnegative");
}

Point FiniteMeasureSpace::indicator(std::span<const std::size_t> elements) const {
  Point p(weights.size(), 0.0);
  for (std::size_t e : elements) {
    if (e >= weights.size())
      throw Error(ErrorCode::domain, "subset element " + std::to_string(e) +
                                         " outside ground set of size " +
                                         std::to_string(weights.size()));
    p[e] = 1.0;
  }
  return p;
}

double FiniteMeasureSpace::measure(std::span<const double> indicator) const {
  double s = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i)
    if (indicator[i] != 0.0) s += weights[i];
  return s;
}

// ---------------------------------------------------------------------------

double sin_pi(double t) {
  double sign = 1.0;
  if (t < 0.0) {
    t = -t;
    sign = -1.0;
  }
  double r = std::fmod(t, 2.0);
  if (r >= 1.0) {
    r -= 1.0;
    sign = -sign;
  }
  if (r == 0.0) return 0.0;
  if (r > 0.5) r = 1.0 - r;
  return sign * std::sin(std::numbers::pi * r);
}

namespace {

double sinc1(double t) {
  t = std::abs(t);
  if (t == 0.0) return 1.0;
  return sin_pi(t) / (std::numbers::pi * t);
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_dim(std::span<const double> p, std::size_t dim, const char* family) {
  if (p.size() != dim)
    throw Error(ErrorCode::domain, std::string(family) + " kernel expects points of dimension " +
                                       std::to_string(dim) + ", got " +
                                       std::to_string(p.size()));
}

std::size_t gram_index(std::span<const double> p, std::size_t n) {
  const double v = p[0];
  if (!(v >= 0.0) || v != std::floor(v) || v >= static_cast<double>(n))
    throw Error(ErrorCode::domain, "explicit Gram kernel index " + std::to_string(v) +
                                       " is not an integer in [0," + std::to_string(n) + ")");
  return static_cast<std::size_t>(v);
}

}  // namespace

Kernel::Kernel(Family f) : family_(std::move(f)) {
  std::visit(overloaded{
                 [](const kernel::Gaussian& g) {
                   if (!(g.sigma > 0.0) || !std::isfinite(g.sigma))
                     throw Error(ErrorCode::invalid_argument, "gaussian width must be positive");
                 },
                 [](const kernel::Sinc&) {},
                 [](const kernel::PaleyWienerBox& b) {
                   if (b.half_width.empty())
                     throw Error(ErrorCode::invalid_argument, "Paley-Wiener box needs a half-width");
                   for (double a : b.half_width)
                     if (!(a > 0.0) || !std::isfinite(a))
                       throw Error(ErrorCode::invalid_argument,
                                   "Paley-Wiener half-widths must be positive");
                 },
                 [](const kernel::Intersection&) {},
                 [](const kernel::ExplicitGram&) {},
             },
             family_);
}

std::string Kernel::name() const {
  return std::visit(overloaded{
                        [](const kernel::Gaussian&) { return std::string("gaussian"); },
                        [](const kernel::Sinc&) { return std::string("sinc"); },
                        [](const kernel::PaleyWienerBox&) { return std::string("pw"); },
                        [](const kernel::Intersection&) { return std::string("intersection"); },
                        [](const kernel::ExplicitGram&) { return std::string("explicit"); },
                    },
                    family_);
}

bool Kernel::is_stationary() const noexcept {
  return std::holds_alternative<kernel::Gaussian>(family_) ||
         std::holds_alternative<kernel::Sinc>(family_) ||
         std::holds_alternative<kernel::PaleyWienerBox>(family_);
}

void Kernel::validate(std::span<const double> p) const {
  std::visit(overloaded{
                 [&](const kernel::Gaussian&) {
                   if (p.empty()) throw Error(ErrorCode::domain, "gaussian kernel needs dim ≥ 1");
                 },
                 [&](const kernel::Sinc&) {
                   if (p.empty()) throw Error(ErrorCode::domain, "sinc kernel needs dim ≥ 1");
                 },
                 [&](const kernel::PaleyWienerBox& b) { require_dim(p, b.half_width.size(), "pw"); },
                 [&](const kernel::Intersection& s) {
                   require_dim(p, s.space.size(), "intersection");
                   for (double v : p)
                     if (v != 0.0 && v != 1.0)
                       throw Error(ErrorCode::domain,
                                   "intersection kernel points must be 0/1 indicator vectors");
                 },
                 [&](const kernel::ExplicitGram& g) {
                   require_dim(p, 1, "explicit");
                   gram_index(p, g.gram.size());
                 },
             },
             family_);
}

void Kernel::validate(const PointSet& pts) const {
  for (const auto& p : pts.points()) validate(p);
}

double Kernel::operator()(std::span<const double> x, std::span<const double> y) const {
  if (x.size() != y.size())
    throw Error(ErrorCode::domain, "kernel arguments have different dimensions");
  return std::visit(
      overloaded{
          [&](const kernel::Gaussian& g) {
            validate(x);
            double r2 = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
              const double d = x[i] - y[i];
              r2 += d * d;
            }
            return std::exp(-r2 / (2.0 * g.sigma * g.sigma));
          },
          [&](const kernel::Sinc&) {
            validate(x);
            double v = 1.0;
            for (std::size_t i = 0; i < x.size(); ++i) v *= sinc1(x[i] - y[i]);
            return v;
          },
          [&](const kernel::PaleyWienerBox& b) {
            require_dim(x, b.half_width.size(), "pw");
            double v = 1.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
              const double a = b.half_width[i];
              const double t = std::abs(x[i] - y[i]);
              // sin(a t)/(π t) = (a/π)·sinc((a/π) t)
              const double s = a / std::numbers::pi;
              double f = s * sinc1(s * t);
              if (!b.normalized) f *= 2.0 * std::numbers::pi;
              v *= f;
            }
            return v;
          },
          [&](const kernel::Intersection& s) {
            validate(x);
            validate(y);
            double v = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i)
              if (x[i] != 0.0 && y[i] != 0.0) v += s.space.weights[i];
            return v;
          },
          [&](const kernel::ExplicitGram& g) {
            require_dim(x, 1, "explicit");
            const std::size_t n = g.gram.size();
            return g.gram(gram_index(x, n), gram_index(y, n));
          },
      },
      family_);
}

double eval_kernel(const Kernel& k, std::span<const double> x, std::span<const double> y) {
  return k(x, y);
}

GramMatrix gram_matrix(const Kernel& k, const PointSet& pts) {
  if (pts.empty()) throw Error(ErrorCode::invalid_argument, "Gram matrix over an empty point set");
  k.validate(pts);
  const std::size_t n = pts.size();
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double v = k(pts[i], pts[j]);
      g(i, j) = v;
      g(j, i) = v;
    }
  return GramMatrix{k, pts, SymMatrix(std::move(g))};
}

Matrix cross_gram(const Kernel& k, const PointSet& a, const PointSet& b) {
  Matrix g(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) g(i, j) = k(a[i], b[j]);
  return g;
}

double induced_metric(const Kernel& k, std::span<const double> x, std::span<const double> y) {
  const double r = k(x, x) + k(y, y) - 2.0 * k(x, y);
  if (r < -1e-12)
    throw NotPsdError("negative squared distance " + std::to_string(r) +
                          ": kernel is not positive definite",
                      r);
  return std::sqrt(std::max(r, 0.0));
}

PsdCheck psd_check(const SymMatrix& m, double tol) {
  const auto e = sym_eigen(m);
  const double lmin = e.values.empty() ? 0.0 : e.values.back();
  return {lmin >= -tol, lmin};
}

double row_l2_sum(const Kernel& k, const PointSet& v, std::span<const double> y) {
  double s = 0.0;
  for (const auto& x : v.points()) {
    const double kv = k(x, y);
    s += kv * kv;
  }
  return s;
}

RestrictionBounds restriction_bounds(const Kernel& k, const PointSet& v) {
  const auto g = gram_matrix(k, v);
  const auto e = sym_eigen(g.matrix);
  RestrictionBounds r;
  r.sampling_b = e.values.front();
  r.sampling_a = e.values.back();
  double amin = std::abs(e.values.front());
  double amax = 0.0;
  for (double l : e.values) {
    amin = std::min(amin, std::abs(l));
    amax = std::max(amax, std::abs(l));
  }
  r.operator_a = amin * amin;
  r.operator_b = amax * amax;
  r.near_singular = r.sampling_a < 1e-12 * r.sampling_b;
  return r;
}

}  // namespace pdk
