#include "pdk/kaczmarz.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pdk/error.hpp"
#include "pdk/random.hpp"

namespace pdk {

LinearSystem::LinearSystem(Matrix a_, Vector b_) : a(std::move(a_)), b(std::move(b_)) {
  if (a.rows() == 0 || a.cols() == 0) throw Error(ErrorCode::invalid_argument, "empty system");
  if (b.size() != a.rows())
    throw Error(ErrorCode::domain, "right-hand side has " + std::to_string(b.size()) +
                                       " entries for " + std::to_string(a.rows()) + " rows");
  for (std::size_t j = 0; j < a.rows(); ++j)
    if (norm_inf(a.row(j)) == 0.0)
      throw Error(ErrorCode::invalid_argument, "row " + std::to_string(j) + " of A is zero");
}

void project_onto_row(const LinearSystem& sys, std::size_t j, Vector& x) {
  const auto aj = sys.a.row(j);
  const double scale = (sys.b[j] - dot(aj, x)) / dot(aj, aj);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += scale * aj[i];
}

namespace {

double residual_inf(const LinearSystem& sys, const Vector& x) {
  return norm_inf(subtract(sys.a * x, sys.b));
}

double residual_2(const LinearSystem& sys, const Vector& x) {
  return norm2(subtract(sys.a * x, sys.b));
}

class RowPicker {
 public:
  RowPicker(const LinearSystem& sys, RowSelection mode, std::uint64_t seed)
      : mode_(mode), rows_(sys.a.rows()), rng_(seed) {
    if (mode_ == RowSelection::randomized) {
      cumulative_.reserve(rows_);
      double acc = 0.0;
      for (std::size_t j = 0; j < rows_; ++j) {
        acc += dot(sys.a.row(j), sys.a.row(j));
        cumulative_.push_back(acc);
      }
    }
  }

  std::size_t next(std::size_t k) {
    switch (mode_) {
      case RowSelection::cyclic:
        return k % rows_;
      case RowSelection::uniform:
        return std::min(static_cast<std::size_t>(rng_.uniform() * static_cast<double>(rows_)),
                        rows_ - 1);
      case RowSelection::randomized: {
        const double target = rng_.uniform() * cumulative_.back();
        const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
        return std::min(static_cast<std::size_t>(it - cumulative_.begin()), rows_ - 1);
      }
    }
    return 0;
  }

 private:
  RowSelection mode_;
  std::size_t rows_;
  RandomStream rng_;
  std::vector<double> cumulative_;
};

}  // namespace

RunReport solve_classical(const LinearSystem& sys, const KaczmarzOptions& opts) {
  if (!(opts.tol > 0.0)) throw Error(ErrorCode::invalid_argument, "tolerance must be positive");
  const std::size_t m = sys.a.rows();
  const std::size_t n = sys.a.cols();

  RunReport rep;
  rep.solution = opts.x0.empty() ? Vector(n, 0.0) : opts.x0;
  if (rep.solution.size() != n)
    throw Error(ErrorCode::domain, "initial guess has wrong dimension");

  RowPicker picker(sys, opts.mode, opts.seed);
  rep.converged = residual_inf(sys, rep.solution) <= opts.tol;
  while (!rep.converged && rep.sweeps < opts.max_sweeps) {
    for (std::size_t i = 0; i < m; ++i) project_onto_row(sys, picker.next(rep.iterations++), rep.solution);
    ++rep.sweeps;
    rep.residual_history.push_back(residual_2(sys, rep.solution));
    rep.converged = residual_inf(sys, rep.solution) <= opts.tol;
  }
  rep.final_residual = residual_2(sys, rep.solution);
  return rep;
}

// ---------------------------------------------------------------------------

UnitSequence::UnitSequence(std::vector<Vector> vectors, bool periodic)
    : vectors_(std::move(vectors)), periodic_(periodic) {
  if (vectors_.empty()) throw Error(ErrorCode::invalid_argument, "unit sequence is empty");
  dim_ = vectors_.front().size();
  for (std::size_t j = 0; j < vectors_.size(); ++j) {
    if (vectors_[j].size() != dim_)
      throw Error(ErrorCode::domain, "sequence vector " + std::to_string(j) + " has wrong dimension");
    if (std::abs(norm2(vectors_[j]) - 1.0) > 1e-12)
      throw Error(ErrorCode::domain, "sequence vector " + std::to_string(j) + " is not a unit vector");
  }
}

std::optional<std::size_t> UnitSequence::length() const {
  if (periodic_) return std::nullopt;
  return vectors_.size();
}

const Vector& UnitSequence::operator[](std::size_t k) const {
  if (periodic_) return vectors_[k % vectors_.size()];
  if (k >= vectors_.size())
    throw Error(ErrorCode::invalid_argument, "index " + std::to_string(k) +
                                                 " beyond the end of a finite sequence");
  return vectors_[k];
}

SequenceRun run_sequence(const UnitSequence& seq, std::span<const double> x, std::size_t sweeps,
                         std::optional<Vector> start) {
  if (x.size() != seq.dim()) throw Error(ErrorCode::domain, "target has wrong dimension");
  SequenceRun run;
  run.approximation = start ? std::move(*start) : Vector(seq.dim(), 0.0);
  if (run.approximation.size() != seq.dim())
    throw Error(ErrorCode::domain, "start vector has wrong dimension");
  const std::size_t steps = sweeps * seq.period();
  run.error_history.reserve(steps + 1);
  run.error_history.push_back(norm2(subtract(x, run.approximation)));
  for (std::size_t k = 0; k < steps; ++k) {
    const Vector& e = seq[k];
    const double c = dot(e, subtract(x, run.approximation));
    for (std::size_t i = 0; i < e.size(); ++i) run.approximation[i] += c * e[i];
    run.error_history.push_back(norm2(subtract(x, run.approximation)));
  }
  return run;
}

// ---------------------------------------------------------------------------

ProjectionSystem::ProjectionSystem(std::vector<Matrix> projections)
    : projections_(std::move(projections)) {
  if (projections_.empty()) throw Error(ErrorCode::invalid_argument, "projection system is empty");
  dim_ = projections_.front().rows();
  for (std::size_t j = 0; j < projections_.size(); ++j) {
    const Matrix& p = projections_[j];
    if (p.rows() != dim_ || p.cols() != dim_)
      throw Error(ErrorCode::domain, "projection " + std::to_string(j) + " has wrong shape");
    const double asym = (p - p.transpose()).max_abs();
    const double idem = (p * p - p).max_abs();
    if (asym > 1e-10 || idem > 1e-10)
      throw Error(ErrorCode::domain, "matrix " + std::to_string(j) +
                                         " is not an orthogonal projection (asymmetry " +
                                         std::to_string(asym) + ", idempotence defect " +
                                         std::to_string(idem) + ")");
  }
}

ProjectionSystem ProjectionSystem::rank_one(const UnitSequence& seq, std::size_t count) {
  std::vector<Matrix> ps;
  ps.reserve(count);
  for (std::size_t j = 0; j < count; ++j) ps.push_back(outer(seq[j], seq[j]));
  return ProjectionSystem(std::move(ps));
}

ProjectionSystem ProjectionSystem::rank_one_complements(const std::vector<Vector>& u) {
  std::vector<Matrix> ps;
  ps.reserve(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double n2 = dot(u[j], u[j]);
    if (n2 == 0.0)
      throw Error(ErrorCode::domain, "complement of a zero vector at index " + std::to_string(j));
    ps.push_back(Matrix::identity(u[j].size()) - (1.0 / n2) * outer(u[j], u[j]));
  }
  return ProjectionSystem(std::move(ps));
}

KernelProjectionSystem kernel_complement_system(const Kernel& k, const PointSet& points) {
  const auto g = gram_matrix(k, points);
  auto f = psd_factor(g.matrix);
  std::vector<Vector> coords;
  coords.reserve(points.size());
  for (std::size_t j = 0; j < points.size(); ++j)
    coords.emplace_back(f.factor.row(j).begin(), f.factor.row(j).end());
  return {ProjectionSystem::rank_one_complements(coords), std::move(f.factor)};
}

// ---------------------------------------------------------------------------

std::vector<Matrix> defect_operators(const ProjectionSystem& ps) {
  std::vector<Matrix> q;
  q.reserve(ps.size());
  Matrix t = Matrix::identity(ps.dim());
  for (std::size_t j = 0; j < ps.size(); ++j) {
    q.push_back(ps[j] * t);
    t = t - q.back();
  }
  return q;
}

DefectDecomposition defect_decomposition(const ProjectionSystem& ps,
                                         const std::vector<Vector>& probes) {
  DefectDecomposition out;
  out.t.reserve(ps.size());
  out.q.reserve(ps.size());
  Matrix t = Matrix::identity(ps.dim());
  for (std::size_t j = 0; j < ps.size(); ++j) {
    out.q.push_back(ps[j] * t);
    t = t - out.q.back();
    out.t.push_back(t);
  }

  for (const auto& x : probes) {
    if (x.size() != ps.dim()) throw Error(ErrorCode::domain, "probe has wrong dimension");
    ProbeLedger led;
    led.norm_sq = dot(x, x);
    Vector tx = x;  // T_{j-1} x
    double captured = 0.0;
    for (std::size_t j = 0; j < ps.size(); ++j) {
      const Vector qx = ps[j] * tx;
      for (std::size_t i = 0; i < tx.size(); ++i) tx[i] -= qx[i];
      const double qn = dot(qx, qx);
      const double tn = dot(tx, tx);
      captured += qn;
      led.captured.push_back(qn);
      led.remaining.push_back(tn);
      led.identity_defect = std::max(led.identity_defect, std::abs(led.norm_sq - tn - captured));
    }
    out.max_identity_defect = std::max(out.max_identity_defect, led.identity_defect);
    out.probes.push_back(std::move(led));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

/// min over unit y ∈ range(1 − prev) of ‖next·y‖².
double step_constant(const Matrix& prev, const Matrix& next) {
  const std::size_t n = prev.rows();
  const Matrix comp = Matrix::identity(n) - prev;
  const auto e = sym_eigen(SymMatrix::symmetrize(comp));
  std::vector<Vector> basis;
  for (std::size_t k = 0; k < n; ++k)
    if (e.values[k] > 0.5) basis.push_back(e.vectors.column(k));
  if (basis.empty()) return 1.0;
  const std::size_t r = basis.size();
  Matrix b(n, r);
  for (std::size_t k = 0; k < r; ++k) b.set_column(k, basis[k]);
  // ‖P y‖² = yᵀPy for an orthogonal projection.
  const Matrix m = transpose_times(b, next * b);
  return sym_eigen(SymMatrix::symmetrize(m)).values.back();
}

}  // namespace

CertificateReport effectiveness_certificate(const ProjectionSystem& ps, double c,
                                            const std::vector<Vector>& probes) {
  if (!(c > 0.0 && c < 1.0)) throw Error(ErrorCode::invalid_argument, "certificate needs 0 < c < 1");
  CertificateReport rep;
  rep.c = c;
  for (std::size_t j = 1; j < ps.size(); ++j) {
    const double s = step_constant(ps[j - 1], ps[j]);
    rep.step_constants.push_back(s);
    rep.min_constant = std::min(rep.min_constant, s);
  }
  rep.holds = rep.min_constant >= c;

  const Matrix id = Matrix::identity(ps.dim());
  for (const auto& x : probes) {
    if (x.size() != ps.dim()) throw Error(ErrorCode::domain, "probe has wrong dimension");
    bool ok = true;
    const double slack = 1e-12 * dot(x, x);

    for (std::size_t j = 1; j < ps.size(); ++j) {
      const Vector ry = (id - ps[j - 1]) * x;
      const Vector pry = ps[j] * ry;
      if (dot(pry, pry) < c * dot(ry, ry) - slack) {
        ++rep.condition_failures;
        ok = false;
      }
    }

    Vector tx = (id - ps[0]) * x;
    const double base = dot(tx, tx);
    double bound = base;
    for (std::size_t n = 1; n < ps.size(); ++n) {
      tx = (id - ps[n]) * tx;
      bound *= 1.0 - c;
      const double tn = dot(tx, tx);
      if (bound > 0.0) rep.worst_decay_ratio = std::max(rep.worst_decay_ratio, tn / bound);
      if (tn > bound + slack) {
        ++rep.decay_violations;
        ok = false;
      }
    }
    rep.probe_passed.push_back(ok);
  }
  return rep;
}

bool stationary_effectiveness(const Kernel& k, const PointSet& points, double c) {
  if (!k.is_stationary())
    throw Error(ErrorCode::domain, "stationary effectiveness needs a stationary kernel, got " + k.name());
  if (!(c > 0.0 && c < 1.0)) throw Error(ErrorCode::invalid_argument, "criterion needs 0 < c < 1");
  for (std::size_t j = 0; j < points.size(); ++j)
    if (std::abs(k(points[j], points[j]) - 1.0) > 1e-12)
      throw Error(ErrorCode::domain, "stationary effectiveness needs K(0) = 1");
  for (std::size_t j = 1; j < points.size(); ++j) {
    const double kv = k(points[j], points[j - 1]);
    if (kv * kv > 1.0 - c) return false;
  }
  return true;
}

std::vector<Vector> dual_sequence(const UnitSequence& seq, std::size_t count) {
  if (auto len = seq.length(); len && count >= *len)
    throw Error(ErrorCode::invalid_argument, "dual sequence needs " + std::to_string(count + 1) +
                                                 " terms but the sequence has " +
                                                 std::to_string(*len));
  std::vector<Vector> g;
  g.reserve(count + 1);
  for (std::size_t n = 0; n <= count; ++n) {
    const Vector& en = seq[n];
    Vector gn = en;
    for (std::size_t j = 0; j < n; ++j) {
      const double c = dot(seq[j], en);
      if (c == 0.0) continue;
      for (std::size_t i = 0; i < gn.size(); ++i) gn[i] -= c * g[j][i];
    }
    g.push_back(std::move(gn));
  }
  return g;
}

double parseval_defect(const std::vector<Vector>& g, std::span<const double> x) {
  double s = dot(x, x);
  for (const auto& gj : g) {
    const double c = dot(gj, x);
    s -= c * c;
  }
  return s;
}

}  // namespace pdk
