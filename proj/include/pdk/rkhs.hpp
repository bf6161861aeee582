#pragma once
//
// Finite elements of a reproducing kernel Hilbert space, projections onto
// spans of kernel sections, kernel ridge regression and spectral
// factorization of kernels against finitely supported measures.
//

#include <cstddef>

#include "pdk/kernels.hpp"

namespace pdk {

/// f = Σⱼ cⱼ K(·, xⱼ)
struct RkhsElement {
  Kernel kernel;
  PointSet centers;
  Vector coefficients;

  RkhsElement(Kernel k, PointSet c, Vector coeffs);

  /// The kernel section K(·, x).
  static RkhsElement section(const Kernel& k, const Point& x);

  double operator()(std::span<const double> x) const;
  /// Values at every point of pts, the vector f|_pts.
  Vector restrict_to(const PointSet& pts) const;
  double norm() const;
};

double evaluate_element(const RkhsElement& f, std::span<const double> x);

/// Σᵢⱼ cᵢ dⱼ K(xᵢ, yⱼ). Throws when the kernels differ.
double inner_product(const RkhsElement& f, const RkhsElement& g);

/// Orthogonal projection onto span{K(·,x) : x ∈ F}, coefficients K_F⁻¹ f|_F.
/// Refuses (SingularError) when λ_min(K_F) ≤ 1e-12·λ_max(K_F).
RkhsElement project_onto_points(const RkhsElement& f, const PointSet& F);

/// Pₙ⋯P₁P₀ f for singleton projections Pᵢ onto K(·,xᵢ), in closed form:
/// f(x₀)·∏K(xᵢ,xᵢ₊₁)/∏K(xᵢ,xᵢ)·K(·,xₙ).
RkhsElement singleton_chain(const RkhsElement& f, const PointSet& chain);

/// Finitely supported measure Σ wᵢ δ_{xᵢ}.
struct DiscreteMeasure {
  PointSet atoms;
  Vector weights;

  DiscreteMeasure(PointSet a, Vector w);
  static DiscreteMeasure counting(PointSet a);
};

/// argmin ‖φ − f|_atoms‖²_{L²(μ)} + α‖f‖²_H, solved in the span of the
/// sections at the atoms via (αI + W·G)c = W·φ. α = 0 requires an invertible
/// Gram.
RkhsElement ridge_fit(const Kernel& k, const DiscreteMeasure& mu, std::span<const double> phi,
                      double alpha);

/// Objective value of the ridge problem at f.
double ridge_objective(const RkhsElement& f, const DiscreteMeasure& mu,
                       std::span<const double> phi, double alpha);

/// Spectrum of TμTμ* on L²(μ): eigenvalues of W^{1/2}·G·W^{1/2}, descending.
Vector discrete_operator_spectrum(const Kernel& k, const DiscreteMeasure& mu);

/// Eigensystem of TμTμ*. functions(:, i) holds uᵢ at the atoms, normalized
/// in L²(μ), so that G = Σ λᵢ uᵢuᵢᵀ.
struct MercerFactorization {
  Kernel kernel;
  DiscreteMeasure measure;
  Vector eigenvalues;
  Matrix functions;

  std::size_t rank() const noexcept { return eigenvalues.size(); }
  /// Σ λᵢ uᵢuᵢᵀ at the atoms.
  Matrix reconstruct_gram() const;
  /// fᵢ = √λᵢ·uᵢ at the atoms; Σᵢ fᵢ(x)fᵢ(y) reproduces K on the atoms.
  Matrix parseval_functions() const;
  /// fᵢ(x) = λᵢ^{-1/2} Σⱼ wⱼ uᵢ(xⱼ) K(x, xⱼ) at an arbitrary point.
  Vector features(std::span<const double> x) const;
};

/// Terms with λ ≤ n·ε·λ_max (n atoms, ε machine epsilon) are dropped, so the
/// rank follows the Gram's numerical rank.
MercerFactorization mercer_factorize(const Kernel& k, const DiscreteMeasure& mu);

}  // namespace pdk
