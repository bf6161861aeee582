#include "pdk/frames.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pdk/error.hpp"

namespace pdk {

VectorFrame::VectorFrame(std::size_t d, std::vector<Vector> v, std::optional<Vector> w)
    : dim(d), vectors(std::move(v)), weights(w ? std::move(*w) : Vector(vectors.size(), 1.0)) {
  if (dim == 0) throw Error(ErrorCode::invalid_argument, "frame dimension must be positive");
  for (std::size_t j = 0; j < vectors.size(); ++j)
    if (vectors[j].size() != dim)
      throw Error(ErrorCode::domain, "frame vector " + std::to_string(j) + " has wrong dimension");
  if (weights.size() != vectors.size())
    throw Error(ErrorCode::invalid_argument, "frame needs one weight per vector");
  for (double x : weights)
    if (!(x > 0.0) || !std::isfinite(x))
      throw Error(ErrorCode::invalid_argument, "frame weights must be positive");
}

VectorFrame VectorFrame::from_rows(const Matrix& m, std::optional<Vector> weights) {
  std::vector<Vector> v;
  v.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) v.emplace_back(m.row(i).begin(), m.row(i).end());
  return VectorFrame(m.cols(), std::move(v), std::move(weights));
}

VectorFrame VectorFrame::normalized(std::size_t dim, const std::vector<Vector>& raw) {
  std::vector<Vector> unit;
  Vector w;
  for (const auto& h : raw) {
    const double n = norm2(h);
    if (n == 0.0) throw Error(ErrorCode::domain, "cannot normalize a zero frame vector");
    Vector f(h);
    for (double& x : f) x /= n;
    unit.push_back(std::move(f));
    w.push_back(n * n);
  }
  return VectorFrame(dim, std::move(unit), std::move(w));
}

std::size_t VectorFrame::rank() const {
  Matrix g(dim, dim);
  for (const auto& v : vectors) g = g + outer(v, v);
  const auto e = sym_eigen(SymMatrix::symmetrize(g));
  std::size_t r = 0;
  for (double l : e.values)
    if (l > 1e-12 * std::max(e.values.front(), 0.0)) ++r;
  return r;
}

bool VectorFrame::has_zero_vector() const {
  return std::any_of(vectors.begin(), vectors.end(),
                     [](const Vector& v) { return norm_inf(v) == 0.0; });
}

Vector analysis(const VectorFrame& fr, std::span<const double> u) {
  if (u.size() != fr.dim) throw Error(ErrorCode::domain, "analysis: dimension mismatch");
  Vector c(fr.size());
  for (std::size_t j = 0; j < fr.size(); ++j) c[j] = std::sqrt(fr.weights[j]) * dot(fr.vectors[j], u);
  return c;
}

Vector synthesis(const VectorFrame& fr, std::span<const double> coeffs) {
  if (coeffs.size() != fr.size()) throw Error(ErrorCode::domain, "synthesis: length mismatch");
  Vector u(fr.dim, 0.0);
  for (std::size_t j = 0; j < fr.size(); ++j) {
    const double s = std::sqrt(fr.weights[j]) * coeffs[j];
    for (std::size_t i = 0; i < fr.dim; ++i) u[i] += s * fr.vectors[j][i];
  }
  return u;
}

FrameOperator frame_operator(const VectorFrame& fr) {
  Matrix g(fr.dim, fr.dim);
  for (std::size_t j = 0; j < fr.size(); ++j) {
    const auto& f = fr.vectors[j];
    const double w = fr.weights[j];
    for (std::size_t r = 0; r < fr.dim; ++r)
      for (std::size_t c = r; c < fr.dim; ++c) g(r, c) += w * f[r] * f[c];
  }
  for (std::size_t r = 0; r < fr.dim; ++r)
    for (std::size_t c = 0; c < r; ++c) g(r, c) = g(c, r);
  FrameOperator op{SymMatrix(std::move(g)), 0.0};
  op.trace = op.matrix.trace();
  return op;
}

FrameBounds frame_bounds(const VectorFrame& fr) {
  const auto e = sym_eigen(frame_operator(fr).matrix);
  FrameBounds b;
  b.b = e.values.front();
  const double lmin = e.values.back();
  b.is_frame = b.b > 0.0 && lmin > 1e-12 * b.b;
  b.a = b.is_frame ? lmin : 0.0;
  return b;
}

double orthonormality_defect(const Matrix& onb) {
  const Matrix gram = transpose_times(onb, onb);
  return (gram - Matrix::identity(onb.cols())).max_abs();
}

namespace {

void check_onb(const Matrix& onb, std::size_t dim, std::size_t n) {
  if (onb.rows() != dim) throw Error(ErrorCode::domain, "basis vectors have wrong dimension");
  if (n > onb.cols())
    throw Error(ErrorCode::invalid_argument, "truncation level exceeds the number of basis vectors");
  const double defect = orthonormality_defect(onb);
  if (defect > 1e-10)
    throw Error(ErrorCode::domain, "basis is not orthonormal (defect " + std::to_string(defect) + ")");
}

}  // namespace

double residual_error(const FrameOperator& g, const Matrix& onb, std::size_t n) {
  const std::size_t dim = g.matrix.size();
  check_onb(onb, dim, n);
  auto captured = [&](std::size_t i) {
    const Vector psi = onb.column(i);
    return dot(psi, g.matrix.matrix() * psi);
  };
  double e = 0.0;
  if (onb.cols() == dim) {
    for (std::size_t i = n; i < dim; ++i) e += captured(i);
  } else {
    e = g.trace;
    for (std::size_t i = 0; i < n; ++i) e -= captured(i);
  }
  return e;
}

double residual_error_direct(const VectorFrame& fr, const Matrix& onb, std::size_t n) {
  check_onb(onb, fr.dim, n);
  double e = 0.0;
  for (std::size_t a = 0; a < fr.size(); ++a) {
    Vector r = fr.vectors[a];
    for (std::size_t i = 0; i < n; ++i) {
      const Vector psi = onb.column(i);
      const double c = dot(psi, fr.vectors[a]);
      for (std::size_t k = 0; k < fr.dim; ++k) r[k] -= c * psi[k];
    }
    e += fr.weights[a] * dot(r, r);
  }
  return e;
}

}  // namespace pdk
