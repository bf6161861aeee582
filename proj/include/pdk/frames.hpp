#pragma once
//
// Finite frames: analysis and synthesis operators, frame bounds, weighted
// frame operators and the truncation residual of an orthonormal basis.
//

#include <cstddef>
#include <optional>

#include "pdk/linalg.hpp"

namespace pdk {

/// Vectors fⱼ with weights wⱼ. The analysis operator is u ↦ (√wⱼ⟨fⱼ,u⟩)ⱼ,
/// so the frame operator Σ wⱼ fⱼfⱼᵀ equals synthesis∘analysis.
struct VectorFrame {
  std::size_t dim = 0;
  std::vector<Vector> vectors;
  Vector weights;

  VectorFrame(std::size_t dim, std::vector<Vector> vectors, std::optional<Vector> weights = {});
  /// One vector per row; weights default to 1.
  static VectorFrame from_rows(const Matrix& m, std::optional<Vector> weights = {});
  /// Splits raw vectors hⱼ into unit vectors fⱼ and weights ‖hⱼ‖². Zero
  /// vectors are rejected.
  static VectorFrame normalized(std::size_t dim, const std::vector<Vector>& raw);

  std::size_t size() const noexcept { return vectors.size(); }
  /// Rank of the span of the vectors.
  std::size_t rank() const;
  bool has_zero_vector() const;
};

Vector analysis(const VectorFrame& fr, std::span<const double> u);
Vector synthesis(const VectorFrame& fr, std::span<const double> coeffs);

struct FrameBounds {
  double a = 0.0;
  double b = 0.0;
  bool is_frame = false;  ///< false when the vectors do not span; a is then 0
};

FrameBounds frame_bounds(const VectorFrame& fr);

struct FrameOperator {
  SymMatrix matrix;
  double trace = 0.0;
};

FrameOperator frame_operator(const VectorFrame& fr);

/// Eₙ = tr(G·Qₙ⊥), Qₙ the projection onto the first n columns of onb.
/// For a complete basis the sum Σ_{i>n} ψᵢᵀGψᵢ is used (exactly 0 at n = dim),
/// otherwise tr(G) − Σ_{i≤n} ψᵢᵀGψᵢ. Throws unless onb is orthonormal to 1e-10.
double residual_error(const FrameOperator& g, const Matrix& onb, std::size_t n);

/// Σ_α w_α ‖f_α − Σ_{i≤n}⟨ψᵢ,f_α⟩ψᵢ‖², evaluated term by term.
double residual_error_direct(const VectorFrame& fr, const Matrix& onb, std::size_t n);

/// Max-abs deviation of onbᵀ·onb from the identity.
double orthonormality_defect(const Matrix& onb);

}  // namespace pdk
