#pragma once
//
// Mean-zero Gaussian processes with prescribed covariance: kernel-indexed
// samples, the operator-valued process W = Σ Qₙ·Zₙ over a family of
// operators, and the set-indexed Wiener process of a finite measure space.
//

#include <cstddef>
#include <cstdint>
#include <utility>

#include "pdk/kaczmarz.hpp"
#include "pdk/kernels.hpp"
#include "pdk/linalg.hpp"

namespace pdk {

struct SamplerConfig {
  std::uint64_t seed = 0;
  std::size_t n_samples = 100000;
};

struct ProcessSample {
  PointSet atoms;
  Matrix draws;  ///< n_samples × |atoms|, one realization per row
};

/// Each realization is L·z with L the PSD factor of the Gram over pts and z
/// i.i.d. standard normal. Throws NotPsdError for an indefinite Gram.
ProcessSample sample_gp(const Kernel& k, const PointSet& pts, const SamplerConfig& cfg);

/// (1/N)·Σ drawsᵢ drawsᵢᵀ without centering.
SymMatrix empirical_covariance(const ProcessSample& s);

struct ProbePair {
  Vector u;
  Vector v;
};

struct PairReport {
  double inner = 0.0;      ///< ⟨u,v⟩
  double captured = 0.0;   ///< Σₙ⟨Qₙu,Qₙv⟩
  double empirical = 0.0;  ///< (1/N) Σ ⟨Wu,Wv⟩ over the draws
  double deviation = 0.0;  ///< |empirical − inner|
  double tail_u = 0.0;     ///< ‖u‖² − Σ‖Qₙu‖², the truncation tail
  double tail_v = 0.0;
  double tolerance = 0.0;  ///< 5‖u‖‖v‖/√N + √(tail_u·tail_v)
  bool passed = false;
};

struct OperatorProcessReport {
  std::vector<PairReport> pairs;
  double max_isometry_defect = 0.0;  ///< max |⟨u,v⟩ − captured| beyond the tail allowance
  bool passed = false;
};

/// Verifies Σ⟨Qₙu,Qₙv⟩ = ⟨u,v⟩ on every probe pair first, to 1e-8 plus the
/// Cauchy–Schwarz allowance √(tail_u·tail_v) of a finite family, and throws
/// an Error coded `precondition` otherwise. Then draws W = Σ Qₙ·Zₙ with
/// scalar Zₙ ~ N(0,1) and compares E⟨Wu,Wv⟩ against ⟨u,v⟩.
OperatorProcessReport operator_process_check(const std::vector<Matrix>& q,
                                             const std::vector<ProbePair>& probes,
                                             const SamplerConfig& cfg);

/// Same check on the defect operators of a projection system.
OperatorProcessReport operator_process_check(const ProjectionSystem& ps,
                                             const std::vector<ProbePair>& probes,
                                             const SamplerConfig& cfg);

/// W_A = Σ_{i∈A} √νᵢ·ξᵢ with one shared ξ per draw. Each increment √νᵢ·ξᵢ
/// is rounded to a multiple of 2⁻³², which makes set sums exact, so
/// W_{A∪B} == W_A + W_B holds bitwise for disjoint A, B while |W| < 2²¹.
/// Atoms are the indicator vectors of the sets.
ProcessSample wiener_set_process(const FiniteMeasureSpace& space,
                                 const std::vector<std::vector<std::size_t>>& sets,
                                 const SamplerConfig& cfg);

}  // namespace pdk
