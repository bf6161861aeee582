#include "pdk/rkhs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pdk/error.hpp"

namespace pdk {

RkhsElement::RkhsElement(Kernel k, PointSet c, Vector coeffs)
    : kernel(std::move(k)), centers(std::move(c)), coefficients(std::move(coeffs)) {
  if (centers.size() != coefficients.size())
    throw Error(ErrorCode::invalid_argument, "RKHS element needs one coefficient per center");
  kernel.validate(centers);
}

RkhsElement RkhsElement::section(const Kernel& k, const Point& x) {
  return RkhsElement(k, PointSet(x.size(), {x}), Vector{1.0});
}

double RkhsElement::operator()(std::span<const double> x) const {
  double s = 0.0;
  for (std::size_t j = 0; j < centers.size(); ++j) s += coefficients[j] * kernel(x, centers[j]);
  return s;
}

Vector RkhsElement::restrict_to(const PointSet& pts) const {
  Vector v(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) v[i] = (*this)(pts[i]);
  return v;
}

double RkhsElement::norm() const { return std::sqrt(std::max(inner_product(*this, *this), 0.0)); }

double evaluate_element(const RkhsElement& f, std::span<const double> x) { return f(x); }

double inner_product(const RkhsElement& f, const RkhsElement& g) {
  if (!(f.kernel == g.kernel))
    throw Error(ErrorCode::domain, "inner product of elements from different kernels");
  double s = 0.0;
  for (std::size_t i = 0; i < f.centers.size(); ++i) {
    if (f.coefficients[i] == 0.0) continue;
    double row = 0.0;
    for (std::size_t j = 0; j < g.centers.size(); ++j)
      row += g.coefficients[j] * f.kernel(f.centers[i], g.centers[j]);
    s += f.coefficients[i] * row;
  }
  return s;
}

RkhsElement project_onto_points(const RkhsElement& f, const PointSet& F) {
  const auto g = gram_matrix(f.kernel, F);
  const auto e = sym_eigen(g.matrix);
  if (e.values.back() <= 1e-12 * e.values.front())
    throw SingularError("K_F is singular: the kernel sections over F are not linearly "
                        "independent (lambda_min = " +
                            std::to_string(e.values.back()) + ")",
                        F.size());
  Vector c = solve_spd(g.matrix, f.restrict_to(F));
  return RkhsElement(f.kernel, F, std::move(c));
}

RkhsElement singleton_chain(const RkhsElement& f, const PointSet& chain) {
  if (chain.empty()) throw Error(ErrorCode::invalid_argument, "singleton chain is empty");
  const Kernel& k = f.kernel;
  double coeff = f(chain[0]);
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const double kii = k(chain[i], chain[i]);
    if (kii == 0.0)
      throw Error(ErrorCode::domain,
                  "K(x,x) = 0 at chain point " + std::to_string(i) + ": projection undefined");
    coeff /= kii;
    if (i + 1 < chain.size()) coeff *= k(chain[i], chain[i + 1]);
  }
  const Point& last = chain[chain.size() - 1];
  return RkhsElement(k, PointSet(last.size(), {last}), Vector{coeff});
}

// ---------------------------------------------------------------------------

DiscreteMeasure::DiscreteMeasure(PointSet a, Vector w) : atoms(std::move(a)), weights(std::move(w)) {
  if (atoms.size() != weights.size())
    throw Error(ErrorCode::invalid_argument, "measure needs one weight per atom");
  for (double x : weights)
    if (!(x > 0.0) || !std::isfinite(x))
      throw Error(ErrorCode::invalid_argument, "measure weights must be positive");
}

DiscreteMeasure DiscreteMeasure::counting(PointSet a) {
  Vector w(a.size(), 1.0);
  return DiscreteMeasure(std::move(a), std::move(w));
}

namespace {

/// W^{1/2}·G·W^{1/2}
SymMatrix weighted_gram(const SymMatrix& g, const Vector& w) {
  const std::size_t n = g.size();
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double v = std::sqrt(w[i]) * g(i, j) * std::sqrt(w[j]);
      m(i, j) = v;
      m(j, i) = v;
    }
  return SymMatrix(std::move(m));
}

}  // namespace

RkhsElement ridge_fit(const Kernel& k, const DiscreteMeasure& mu, std::span<const double> phi,
                      double alpha) {
  const std::size_t n = mu.atoms.size();
  if (phi.size() != n) throw Error(ErrorCode::domain, "ridge samples must match the atoms");
  if (!(alpha >= 0.0) || !std::isfinite(alpha))
    throw Error(ErrorCode::invalid_argument, "ridge penalty must be nonnegative");

  const auto g = gram_matrix(k, mu.atoms);
  // With c = W^{1/2}d the system becomes (αI + W^{1/2}GW^{1/2})d = W^{1/2}φ.
  const SymMatrix wg = weighted_gram(g.matrix, mu.weights);
  Matrix sys = wg.matrix();
  for (std::size_t i = 0; i < n; ++i) sys(i, i) += alpha;
  Vector rhs(n);
  for (std::size_t i = 0; i < n; ++i) rhs[i] = std::sqrt(mu.weights[i]) * phi[i];
  Vector d = solve_spd(SymMatrix(std::move(sys)), rhs);
  Vector c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = std::sqrt(mu.weights[i]) * d[i];
  return RkhsElement(k, mu.atoms, std::move(c));
}

double ridge_objective(const RkhsElement& f, const DiscreteMeasure& mu,
                       std::span<const double> phi, double alpha) {
  const Vector fx = f.restrict_to(mu.atoms);
  double fit = 0.0;
  for (std::size_t i = 0; i < fx.size(); ++i) {
    const double r = phi[i] - fx[i];
    fit += mu.weights[i] * r * r;
  }
  return fit + alpha * inner_product(f, f);
}

Vector discrete_operator_spectrum(const Kernel& k, const DiscreteMeasure& mu) {
  const auto g = gram_matrix(k, mu.atoms);
  return sym_eigen(weighted_gram(g.matrix, mu.weights)).values;
}

MercerFactorization mercer_factorize(const Kernel& k, const DiscreteMeasure& mu) {
  const auto g = gram_matrix(k, mu.atoms);
  const auto e = sym_eigen(weighted_gram(g.matrix, mu.weights));
  const std::size_t n = mu.atoms.size();
  // Eigenvalues below n·ε·λ_max are indistinguishable from rounding in the
  // eigensolver; anything above is kept so the rebuild error stays at that level.
  const double cutoff = static_cast<double>(n) * std::numeric_limits<double>::epsilon() *
                        std::max(e.values.front(), 0.0);
  std::size_t r = 0;
  while (r < n && e.values[r] > cutoff) ++r;

  MercerFactorization out{k, mu, Vector(e.values.begin(), e.values.begin() + r), Matrix(n, r)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < r; ++t)
      out.functions(i, t) = e.vectors(i, t) / std::sqrt(mu.weights[i]);
  return out;
}

Matrix MercerFactorization::reconstruct_gram() const {
  const Matrix f = parseval_functions();
  return f * f.transpose();
}

Matrix MercerFactorization::parseval_functions() const {
  Matrix f = functions;
  for (std::size_t i = 0; i < f.rows(); ++i)
    for (std::size_t t = 0; t < f.cols(); ++t) f(i, t) *= std::sqrt(eigenvalues[t]);
  return f;
}

Vector MercerFactorization::features(std::span<const double> x) const {
  const std::size_t n = measure.atoms.size();
  Vector kx(n);
  for (std::size_t j = 0; j < n; ++j) kx[j] = measure.weights[j] * kernel(x, measure.atoms[j]);
  Vector out(rank());
  for (std::size_t t = 0; t < rank(); ++t) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += functions(j, t) * kx[j];
    out[t] = s / std::sqrt(eigenvalues[t]);
  }
  return out;
}

}  // namespace pdk
