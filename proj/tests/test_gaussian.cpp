#include <doctest.h>

#include <cmath>
#include <limits>

#include "pdk/error.hpp"
#include "pdk/gaussian.hpp"
#include "support.hpp"

using namespace pdk;
using testing::Gen;

namespace {

constexpr std::size_t kN = 100000;
const double kTol = 5.0 / std::sqrt(static_cast<double>(kN));

}  // namespace

TEST_CASE("sample_gp reproduces the kernel covariance") {
  SUBCASE("gaussian kernel at three points") {
    const auto k = Kernel::gaussian(1.0);
    const PointSet pts = PointSet::line(Vector{0.0, 0.7, 2.0});
    const auto s = sample_gp(k, pts, {7, kN});
    CHECK(s.draws.rows() == kN);
    CHECK(s.draws.cols() == 3);
    const auto c = empirical_covariance(s);
    CHECK(testing::max_abs_diff(c.matrix(), gram_matrix(k, pts).matrix.matrix()) <= kTol);
    for (std::size_t j = 0; j < 3; ++j) {
      double mean = 0.0;
      for (std::size_t d = 0; d < kN; ++d) mean += s.draws(d, j);
      CHECK(std::abs(mean / kN) <= 3.0 / std::sqrt(static_cast<double>(kN)) * 1.7);
    }
  }
  SUBCASE("identity Gram gives uncorrelated coordinates") {
    const auto s = sample_gp(Kernel::sinc(), PointSet::line(Vector{0, 1, 2, 3}), {11, kN});
    CHECK(testing::max_abs_diff(empirical_covariance(s).matrix(), Matrix::identity(4)) <= kTol);
  }
  SUBCASE("single point with variance 4") {
    const auto s = sample_gp(Kernel::explicit_gram(SymMatrix(Matrix{{4}})), PointSet::line(Vector{0}), {3, kN});
    CHECK(std::abs(empirical_covariance(s)(0, 0) - 4.0) <= 0.1);
  }
  SUBCASE("zero kernel gives zero draws") {
    const auto s = sample_gp(Kernel::explicit_gram(SymMatrix(Matrix(2, 2))), PointSet::line(Vector{0, 1}), {1, 50});
    CHECK(s.draws.max_abs() == 0.0);
    CHECK(empirical_covariance(s).matrix() == Matrix(2, 2));
  }
  SUBCASE("reproducible from the seed") {
    const PointSet pts = PointSet::line(Vector{0, 0.5});
    const auto a = sample_gp(Kernel::gaussian(1), pts, {99, 1000});
    const auto b = sample_gp(Kernel::gaussian(1), pts, {99, 1000});
    const auto c = sample_gp(Kernel::gaussian(1), pts, {100, 1000});
    CHECK(a.draws == b.draws);
    CHECK_FALSE(a.draws == c.draws);
  }
  SUBCASE("quadratic forms are consistent") {
    Gen g(4);
    const auto k = Kernel::gaussian(0.8);
    const PointSet pts = PointSet::line(Vector{-1, -0.3, 0.4, 1.2, 2.0});
    const auto s = sample_gp(k, pts, {5, kN});
    const Matrix G = gram_matrix(k, pts).matrix.matrix();
    const Matrix C = empirical_covariance(s).matrix();
    for (int t = 0; t < 10; ++t) {
      const Vector c = g.vector(5);
      const double q = dot(c, G * c);
      const double qe = dot(c, C * c);
      CHECK(qe >= 0.0);
      CHECK(std::abs(qe - q) <= 5.0 * dot(c, c) * G.max_abs() * std::sqrt(static_cast<double>(G.rows())) / std::sqrt(static_cast<double>(kN)));
    }
  }
  SUBCASE("indefinite Gram is refused") {
    CHECK_THROWS_AS(sample_gp(Kernel::explicit_gram(SymMatrix(Matrix{{1, 2}, {2, 1}})),
                              PointSet::line(Vector{0, 1}), {1, 10}),
                    NotPsdError);
  }
  CHECK_THROWS_AS(sample_gp(Kernel::sinc(), PointSet::line(Vector{0}), {1, 0}), Error);
  CHECK_THROWS_AS(empirical_covariance(ProcessSample{PointSet::line(Vector{0}), Matrix(1, 1)}), Error);
}

TEST_CASE("empirical covariance follows relabeling") {
  const auto s = sample_gp(Kernel::gaussian(1.0), PointSet::line(Vector{0, 1, 3}), {8, 2000});
  ProcessSample p = s;
  for (std::size_t d = 0; d < 2000; ++d) std::swap(p.draws(d, 0), p.draws(d, 2));
  const auto a = empirical_covariance(s), b = empirical_covariance(p);
  CHECK(a(0, 1) == b(2, 1));
  CHECK(a(0, 0) == b(2, 2));
}

TEST_CASE("operator-valued process") {
  Gen g(12);
  SUBCASE("rank-one ONB projections") {
    const Matrix q = g.onb(3);
    std::vector<Matrix> qs;
    for (std::size_t j = 0; j < 3; ++j) qs.push_back(outer(q.column(j), q.column(j)));
    const Vector u = g.unit(3), v = g.unit(3);
    const auto rep = operator_process_check(qs, {{u, u}, {u, v}, {Vector(3, 0.0), v}}, {21, kN});
    CHECK(rep.passed);
    CHECK(rep.max_isometry_defect <= 1e-12);
    CHECK(rep.pairs[0].deviation <= kTol);
    CHECK(rep.pairs[2].empirical == 0.0);
    CHECK(rep.pairs[0].tail_u == doctest::Approx(0.0).scale(1.0));
  }
  SUBCASE("Kaczmarz defects of an effective rank-one system") {
    const UnitSequence pair({{1, 0}, {0.6, 0.8}}, true);
    const auto ps = ProjectionSystem::rank_one(pair, 10);
    const Vector u{0.3, 0.9}, v{-1.0, 0.2};
    const auto rep = operator_process_check(ps, {{u, u}, {u, v}}, {2, kN});
    CHECK(rep.passed);
    for (const auto& p : rep.pairs) {
      CHECK(p.deviation <= p.tolerance);
      CHECK(p.tail_u > 0.0);
    }
  }
  SUBCASE("a non-isometric family is refused") {
    try {
      operator_process_check({2.0 * Matrix::identity(2)}, {{{1, 0}, {1, 0}}}, {1, 10});
      FAIL("expected a precondition error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::precondition);
    }
  }
  CHECK_THROWS_AS(operator_process_check(std::vector<Matrix>{}, {}, {1, 10}), Error);
}

TEST_CASE("set-indexed Wiener process") {
  const FiniteMeasureSpace space({0.5, 1.0, 2.0, 0.25, 1.5});
  const std::vector<std::vector<std::size_t>> sets{{0, 1}, {2, 3}, {0, 1, 2, 3}, {1}, {4}};
  const auto s = wiener_set_process(space, sets, {31, kN});
  const auto c = empirical_covariance(s);
  const auto k = Kernel::intersection(space);
  for (std::size_t a = 0; a < sets.size(); ++a)
    for (std::size_t b = 0; b < sets.size(); ++b) {
      const double expect = k(s.atoms[a], s.atoms[b]);
      const double scale = std::sqrt(space.measure(s.atoms[a]) * space.measure(s.atoms[b]));
      CHECK(std::abs(c(a, b) - expect) <= 5.0 * scale / std::sqrt(static_cast<double>(kN)));
    }
  // Additivity over the disjoint sets {0,1} and {2,3}, draw by draw.
  std::size_t additivity_failures = 0;
  for (std::size_t d = 0; d < kN; ++d)
    if (s.draws(d, 2) != s.draws(d, 0) + s.draws(d, 1)) ++additivity_failures;
  CHECK(additivity_failures == 0);
  // Simple-function isometry: f = 2·χ_A − χ_B.
  double ef = 0.0;
  for (std::size_t d = 0; d < kN; ++d) {
    const double w = 2.0 * s.draws(d, 0) - s.draws(d, 3);
    ef += w * w;
  }
  ef /= kN;
  const double exact = 4 * 1.5 - 4 * 1.0 + 1.0;
  CHECK(std::abs(ef - exact) <= 5.0 * (4 * 1.5 + 4 * 1.0 + 1.0) / std::sqrt(static_cast<double>(kN)));

  CHECK_THROWS_AS(wiener_set_process(space, {{5}}, {1, 10}), Error);
  CHECK_THROWS_AS(wiener_set_process(space, {{1, 1}}, {1, 10}), Error);
  CHECK_THROWS_AS(wiener_set_process(space, {}, {1, 10}), Error);
}
