#include "pdk/pca.hpp"

#include <algorithm>
#include <string>

#include "pdk/error.hpp"

namespace pdk {

namespace {

Vector column_means(const Matrix& x) {
  Vector mean(x.cols(), 0.0);
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) mean[j] += x(i, j);
  for (double& v : mean) v /= static_cast<double>(x.rows());
  return mean;
}

Matrix centered(const Matrix& x, const Vector& mean) {
  Matrix c = x;
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) c(i, j) -= mean[j];
  return c;
}

void check_data(const Matrix& x) {
  if (x.rows() < 2)
    throw Error(ErrorCode::invalid_argument, "covariance needs at least two observations, got " +
                                                 std::to_string(x.rows()));
  if (x.cols() == 0) throw Error(ErrorCode::invalid_argument, "data matrix has no columns");
}

}  // namespace

SymMatrix covariance(const Matrix& x, bool population) {
  check_data(x);
  const Matrix c = centered(x, column_means(x));
  const std::size_t n = x.cols();
  const double denom = static_cast<double>(population ? x.rows() : x.rows() - 1);
  Matrix s(n, n);
  for (std::size_t i = 0; i < c.rows(); ++i) {
    const auto r = c.row(i);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a; b < n; ++b) s(a, b) += r[a] * r[b];
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      s(a, b) /= denom;
      s(b, a) = s(a, b);
    }
  return SymMatrix(std::move(s));
}

PcaModel fit(const Matrix& x, bool population) {
  check_data(x);
  PcaModel m;
  m.mean = column_means(x);
  m.observations = x.rows();
  m.population = population;
  auto e = sym_eigen(covariance(x, population));
  for (double& l : e.values) l = std::max(l, 0.0);
  m.eigenvalues = std::move(e.values);
  m.features = std::move(e.vectors);
  return m;
}

Matrix transform(const PcaModel& model, const Matrix& x) {
  if (x.cols() != model.mean.size())
    throw Error(ErrorCode::domain, "data has " + std::to_string(x.cols()) +
                                       " columns, model expects " +
                                       std::to_string(model.mean.size()));
  return centered(x, model.mean) * model.features;
}

Matrix reconstruct(const PcaModel& model, const Matrix& y, std::size_t k) {
  const std::size_t n = model.mean.size();
  if (k < 1 || k > n)
    throw Error(ErrorCode::invalid_argument,
                "component count " + std::to_string(k) + " outside 1.." + std::to_string(n));
  if (y.cols() < k) throw Error(ErrorCode::domain, "scores have fewer than k columns");
  Matrix out(y.rows(), n);
  for (std::size_t i = 0; i < y.rows(); ++i) {
    auto o = out.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      double s = model.mean[j];
      for (std::size_t c = 0; c < k; ++c) s += y(i, c) * model.features(j, c);
      o[j] = s;
    }
  }
  return out;
}

double compression_ratio(std::size_t m, std::size_t n, std::size_t k) {
  return static_cast<double>(m * n) / static_cast<double>(k * (m + n) + n);
}

CompressionReport report(const PcaModel& model, const Matrix& x, std::size_t k) {
  const Matrix rec = reconstruct(model, transform(model, x), k);
  CompressionReport r;
  r.components = k;
  const double entries = static_cast<double>(x.rows() * x.cols());
  const auto& d = x.data();
  const auto& e = rec.data();
  for (std::size_t i = 0; i < d.size(); ++i) r.mse += (d[i] - e[i]) * (d[i] - e[i]);
  r.mse /= entries;
  r.compression_ratio = compression_ratio(x.rows(), x.cols(), k);
  r.eigenvalues = model.eigenvalues;
  double tail = 0.0;
  for (std::size_t j = k; j < model.eigenvalues.size(); ++j) tail += model.eigenvalues[j];
  const double denom = static_cast<double>(model.population ? model.observations
                                                            : model.observations - 1);
  r.predicted_mse = tail * denom / entries;
  return r;
}

}  // namespace pdk
