#pragma once
//
// Karhunen-Loève transform on data matrices whose rows are observations and
// whose columns are variables.
//

#include <cstddef>

#include "pdk/linalg.hpp"

namespace pdk {

/// Column covariance. The sample estimator divides by m−1; population mode
/// divides by m. Needs at least two observations.
SymMatrix covariance(const Matrix& x, bool population = false);

struct PcaModel {
  Vector mean;          ///< column means
  Vector eigenvalues;   ///< descending, negatives from rounding clamped to 0
  Matrix features;      ///< n×n orthonormal, column k pairs with eigenvalues[k]
  std::size_t observations = 0;
  bool population = false;
};

PcaModel fit(const Matrix& x, bool population = false);

/// Y = (X − mean)·A
Matrix transform(const PcaModel& model, const Matrix& x);

/// Y[:, :k]·A[:, :k]ᵀ + mean. Y may have k or more columns.
Matrix reconstruct(const PcaModel& model, const Matrix& y, std::size_t k);

struct CompressionReport {
  std::size_t components = 0;
  double mse = 0.0;                ///< mean over all entries of (X − X')²
  double compression_ratio = 0.0;  ///< m·n / (k·(m+n) + n)
  Vector eigenvalues;
  /// Σ_{j>k} λⱼ · d/(m·n) with d the covariance denominator.
  double predicted_mse = 0.0;
};

CompressionReport report(const PcaModel& model, const Matrix& x, std::size_t k);

/// Stored values per the storage model: k scores per row, k loadings per
/// column and the n column means.
double compression_ratio(std::size_t m, std::size_t n, std::size_t k);

}  // namespace pdk
