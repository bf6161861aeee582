#include "pdk/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pdk/error.hpp"
#include "pdk/random.hpp"

namespace pdk {

namespace {

void check_config(const SamplerConfig& cfg) {
  if (cfg.n_samples == 0) throw Error(ErrorCode::invalid_argument, "sample count must be positive");
}

}  // namespace

ProcessSample sample_gp(const Kernel& k, const PointSet& pts, const SamplerConfig& cfg) {
  check_config(cfg);
  const auto g = gram_matrix(k, pts);
  const auto f = psd_factor(g.matrix);
  const std::size_t n = pts.size();
  const std::size_t r = f.rank;

  ProcessSample s{pts, Matrix(cfg.n_samples, n)};
  RandomStream rng(cfg.seed);
  Vector z(r);
  for (std::size_t d = 0; d < cfg.n_samples; ++d) {
    for (double& v : z) v = rng.normal();
    auto row = s.draws.row(d);
    for (std::size_t i = 0; i < n; ++i) {
      const auto li = f.factor.row(i);
      double acc = 0.0;
      for (std::size_t c = 0; c < r; ++c) acc += li[c] * z[c];
      row[i] = acc;
    }
  }
  return s;
}

SymMatrix empirical_covariance(const ProcessSample& s) {
  const std::size_t n = s.draws.cols();
  const std::size_t m = s.draws.rows();
  if (m < 2) throw Error(ErrorCode::invalid_argument, "empirical covariance needs at least two draws");
  Matrix c(n, n);
  for (std::size_t d = 0; d < m; ++d) {
    const auto r = s.draws.row(d);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a; b < n; ++b) c(a, b) += r[a] * r[b];
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      c(a, b) /= static_cast<double>(m);
      c(b, a) = c(a, b);
    }
  return SymMatrix(std::move(c));
}

OperatorProcessReport operator_process_check(const std::vector<Matrix>& q,
                                             const std::vector<ProbePair>& probes,
                                             const SamplerConfig& cfg) {
  check_config(cfg);
  if (q.empty()) throw Error(ErrorCode::invalid_argument, "operator family is empty");
  const std::size_t dim = q.front().rows();
  for (const auto& m : q)
    if (m.rows() != dim || m.cols() != dim)
      throw Error(ErrorCode::domain, "operators must share one square shape");

  OperatorProcessReport rep;
  // qu[p][n] = Qₙu for pair p, likewise qv.
  std::vector<std::vector<Vector>> qu(probes.size()), qv(probes.size());
  for (std::size_t p = 0; p < probes.size(); ++p) {
    const auto& [u, v] = probes[p];
    if (u.size() != dim || v.size() != dim)
      throw Error(ErrorCode::domain, "probe " + std::to_string(p) + " has wrong dimension");
    PairReport pr;
    pr.inner = dot(u, v);
    double cu = 0.0, cv = 0.0;
    for (const auto& m : q) {
      qu[p].push_back(m * u);
      qv[p].push_back(m * v);
      pr.captured += dot(qu[p].back(), qv[p].back());
      cu += dot(qu[p].back(), qu[p].back());
      cv += dot(qv[p].back(), qv[p].back());
    }
    pr.tail_u = dot(u, u) - cu;
    pr.tail_v = dot(v, v) - cv;
    const double allowance =
        std::sqrt(std::max(pr.tail_u, 0.0) * std::max(pr.tail_v, 0.0));
    const double defect = std::max({std::abs(pr.inner - pr.captured) - allowance,
                                    -pr.tail_u, -pr.tail_v, 0.0});
    rep.max_isometry_defect = std::max(rep.max_isometry_defect, defect);
    pr.tail_u = std::max(pr.tail_u, 0.0);
    pr.tail_v = std::max(pr.tail_v, 0.0);
    pr.tolerance = 5.0 * norm2(u) * norm2(v) / std::sqrt(static_cast<double>(cfg.n_samples)) +
                   std::sqrt(pr.tail_u * pr.tail_v);
    rep.pairs.push_back(pr);
  }
  if (rep.max_isometry_defect > 1e-8)
    throw Error(ErrorCode::precondition,
                "operator family is not isometric on the probes (defect " +
                    std::to_string(rep.max_isometry_defect) + ")");

  RandomStream rng(cfg.seed);
  Vector z(q.size());
  Vector wu(dim), wv(dim);
  std::vector<double> acc(probes.size(), 0.0);
  for (std::size_t d = 0; d < cfg.n_samples; ++d) {
    for (double& x : z) x = rng.normal();
    for (std::size_t p = 0; p < probes.size(); ++p) {
      std::fill(wu.begin(), wu.end(), 0.0);
      std::fill(wv.begin(), wv.end(), 0.0);
      for (std::size_t n = 0; n < q.size(); ++n)
        for (std::size_t i = 0; i < dim; ++i) {
          wu[i] += z[n] * qu[p][n][i];
          wv[i] += z[n] * qv[p][n][i];
        }
      acc[p] += dot(wu, wv);
    }
  }

  rep.passed = true;
  for (std::size_t p = 0; p < probes.size(); ++p) {
    auto& pr = rep.pairs[p];
    pr.empirical = acc[p] / static_cast<double>(cfg.n_samples);
    pr.deviation = std::abs(pr.empirical - pr.inner);
    pr.passed = pr.deviation <= pr.tolerance;
    rep.passed = rep.passed && pr.passed;
  }
  return rep;
}

OperatorProcessReport operator_process_check(const ProjectionSystem& ps,
                                             const std::vector<ProbePair>& probes,
                                             const SamplerConfig& cfg) {
  return operator_process_check(defect_operators(ps), probes, cfg);
}

namespace {

// Increments live on the grid 2⁻³²ℤ. Any sum of them below 2²¹ in magnitude
// is then exact in double precision, independent of summation order, so
// W over a disjoint union equals the sum of the parts bit for bit.
double on_grid(double x) {
  constexpr double scale = 0x1.0p32;
  return std::nearbyint(x * scale) / scale;
}

}  // namespace

ProcessSample wiener_set_process(const FiniteMeasureSpace& space,
                                 const std::vector<std::vector<std::size_t>>& sets,
                                 const SamplerConfig& cfg) {
  check_config(cfg);
  if (sets.empty()) throw Error(ErrorCode::invalid_argument, "no sets given");
  const std::size_t g = space.size();
  std::vector<Point> atoms;
  for (std::size_t s = 0; s < sets.size(); ++s) {
    std::vector<bool> seen(g, false);
    for (std::size_t i : sets[s]) {
      if (i >= g)
        throw Error(ErrorCode::invalid_argument, "set " + std::to_string(s) + " contains index " +
                                                     std::to_string(i) + " outside the ground set of " +
                                                     std::to_string(g));
      if (seen[i])
        throw Error(ErrorCode::invalid_argument,
                    "set " + std::to_string(s) + " lists index " + std::to_string(i) + " twice");
      seen[i] = true;
    }
    atoms.push_back(space.indicator(sets[s]));
  }

  Vector root(g);
  for (std::size_t i = 0; i < g; ++i) root[i] = std::sqrt(space.weights[i]);

  ProcessSample out{PointSet(g, std::move(atoms)), Matrix(cfg.n_samples, sets.size())};
  RandomStream rng(cfg.seed);
  Vector xi(g);
  for (std::size_t d = 0; d < cfg.n_samples; ++d) {
    for (std::size_t i = 0; i < g; ++i) xi[i] = on_grid(root[i] * rng.normal());
    auto row = out.draws.row(d);
    for (std::size_t s = 0; s < sets.size(); ++s) {
      double w = 0.0;
      for (std::size_t i : sets[s]) w += xi[i];
      row[s] = w;
    }
  }
  return out;
}

}  // namespace pdk
