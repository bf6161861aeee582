#pragma once
//
// Kaczmarz iteration in three forms: the classical row-projection solver for
// A·x = b, the Hilbert-space recursion over a sequence of unit vectors, and
// the projection-valued form with its defect operators
//
//   Tₙ = (1−Pₙ)⋯(1−P₀),   Qₙ = Pₙ(1−Pₙ₋₁)⋯(1−P₀),
//
// which satisfy ‖x‖² = ‖Tₙx‖² + Σ_{k≤n} ‖Qₖx‖².
//

#include <cstddef>
#include <cstdint>
#include <optional>

#include "pdk/kernels.hpp"
#include "pdk/linalg.hpp"

namespace pdk {

struct LinearSystem {
  Matrix a;
  Vector b;

  /// Rejects zero rows and mismatched shapes.
  LinearSystem(Matrix a, Vector b);
};

enum class RowSelection {
  cyclic,      ///< row k mod m
  randomized,  ///< row j with probability ∝ ‖aⱼ‖²
  uniform,     ///< row j uniformly at random
};

struct KaczmarzOptions {
  double tol = 1e-10;
  std::size_t max_sweeps = 10000;
  RowSelection mode = RowSelection::cyclic;
  std::uint64_t seed = 0;
  Vector x0;  ///< empty means the zero vector
};

struct RunReport {
  std::size_t iterations = 0;  ///< row projections performed
  std::size_t sweeps = 0;
  Vector residual_history;     ///< ‖Ax−b‖₂ after each sweep
  Vector solution;
  bool converged = false;
  double final_residual = 0.0;  ///< ‖Ax−b‖₂ at exit
};

/// Projects x onto the hyperplane ⟨aⱼ,x⟩ = bⱼ.
void project_onto_row(const LinearSystem& sys, std::size_t j, Vector& x);

/// Sweeps of m row projections each; stops when ‖Ax−b‖∞ ≤ tol, checked
/// before the first sweep and after every sweep.
RunReport solve_classical(const LinearSystem& sys, const KaczmarzOptions& opts = {});

/// Unit vectors e₀, e₁, … of a common dimension. A periodic sequence repeats
/// its listed vectors indefinitely.
class UnitSequence {
 public:
  UnitSequence(std::vector<Vector> vectors, bool periodic = false);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t period() const noexcept { return vectors_.size(); }
  bool periodic() const noexcept { return periodic_; }
  /// Number of available terms, unbounded for periodic sequences.
  std::optional<std::size_t> length() const;
  const Vector& operator[](std::size_t k) const;

 private:
  std::size_t dim_ = 0;
  std::vector<Vector> vectors_;
  bool periodic_ = false;
};

struct SequenceRun {
  Vector approximation;
  Vector error_history;  ///< ‖x − xₖ‖, starting with the initial guess
};

/// xₖ₊₁ = xₖ + eₖ⟨eₖ, x − xₖ⟩ for k = 0 … sweeps·period−1, starting at
/// `start` (zero by default).
SequenceRun run_sequence(const UnitSequence& seq, std::span<const double> x, std::size_t sweeps,
                         std::optional<Vector> start = {});

/// Ordered orthogonal projections on ℝⁿ.
class ProjectionSystem {
 public:
  /// Each matrix must be symmetric and idempotent to 1e-10 (max-abs).
  explicit ProjectionSystem(std::vector<Matrix> projections);

  /// Pⱼ = eⱼeⱼᵀ for the first `count` terms of seq.
  static ProjectionSystem rank_one(const UnitSequence& seq, std::size_t count);
  /// Pⱼ = 1 − uⱼuⱼᵀ/‖uⱼ‖².
  static ProjectionSystem rank_one_complements(const std::vector<Vector>& u);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return projections_.size(); }
  const Matrix& operator[](std::size_t j) const { return projections_[j]; }

 private:
  std::size_t dim_ = 0;
  std::vector<Matrix> projections_;
};

/// Pⱼ = 1 − |K_{xⱼ}⟩⟨K_{xⱼ}|/K(xⱼ,xⱼ) acting on span{K_x : x ∈ points}. The
/// span is coordinatized isometrically by the PSD factor L of the Gram
/// (‖Σcᵢ K_{xᵢ}‖ = ‖Lᵀc‖), so K_{xⱼ} has coordinates L[j,:].
struct KernelProjectionSystem {
  ProjectionSystem system;
  Matrix coordinates;  ///< row j: coordinates of K(·, xⱼ)
};

KernelProjectionSystem kernel_complement_system(const Kernel& k, const PointSet& points);

struct ProbeLedger {
  double norm_sq = 0.0;
  Vector captured;   ///< ‖Qₖx‖², k = 0…n
  Vector remaining;  ///< ‖Tₖx‖², k = 0…n
  double identity_defect = 0.0;  ///< max over k of |‖x‖² − ‖Tₖx‖² − Σ_{i≤k}‖Qᵢx‖²|
};

struct DefectDecomposition {
  std::vector<Matrix> t;
  std::vector<Matrix> q;
  std::vector<ProbeLedger> probes;
  double max_identity_defect = 0.0;
};

DefectDecomposition defect_decomposition(const ProjectionSystem& ps,
                                         const std::vector<Vector>& probes);

/// Qₙ only, without the probe ledger.
std::vector<Matrix> defect_operators(const ProjectionSystem& ps);

struct CertificateReport {
  double c = 0.0;
  /// Exact constants: step_constants[j−1] = min over unit y in the range of
  /// 1−Pⱼ₋₁ of ‖Pⱼy‖², for j = 1…n. A step whose range is {0} reports 1.
  Vector step_constants;
  double min_constant = 1.0;
  bool holds = false;  ///< min_constant ≥ c
  std::size_t condition_failures = 0;  ///< (probe, step) pairs violating the condition
  std::size_t decay_violations = 0;    ///< (probe, n) pairs violating the decay bound
  std::vector<bool> probe_passed;
  double worst_decay_ratio = 0.0;  ///< max ‖Tₙx‖² / ((1−c)ⁿ‖(1−P₀)x‖²)
};

/// Checks ‖Pⱼ(1−Pⱼ₋₁)y‖² ≥ c‖(1−Pⱼ₋₁)y‖² exactly (through step_constants)
/// and on every probe, and the consequence ‖Tₙx‖² ≤ (1−c)ⁿ‖(1−P₀)x‖².
CertificateReport effectiveness_certificate(const ProjectionSystem& ps, double c,
                                            const std::vector<Vector>& probes);

/// For Pⱼ = 1 − |K_{xⱼ}⟩⟨K_{xⱼ}| with K stationary, K(0) = 1: true iff
/// K(xⱼ − xⱼ₋₁)² ≤ 1 − c for all consecutive points.
bool stationary_effectiveness(const Kernel& k, const PointSet& points, double c);

/// g₀ = e₀, gₙ = eₙ − Σ_{j<n}⟨eⱼ,eₙ⟩gⱼ for n = 0…count.
std::vector<Vector> dual_sequence(const UnitSequence& seq, std::size_t count);

/// ‖x‖² − Σⱼ|⟨gⱼ,x⟩|²
double parseval_defect(const std::vector<Vector>& g, std::span<const double> x);

}  // namespace pdk
