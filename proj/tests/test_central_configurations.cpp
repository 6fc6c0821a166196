#include "doctest.h"

#include "oracles.hpp"
#include "symorbit/central_configurations.hpp"

using namespace symorbit;

namespace {

MassVector masses(std::initializer_list<double> m) {
  MassVector v(static_cast<Eigen::Index>(m.size()));
  int i = 0;
  for (double x : m) v[i++] = x;
  return v;
}

double size_of(const Configuration<double>& c, const MassVector& m) {
  return std::sqrt(moment_of_inertia(c, m) / m.sum());
}

}  // namespace

TEST_CASE("central configurations are balanced") {
  struct Case {
    BaselineKind kind;
    MassVector m;
  };
  const Case cases[] = {
      {BaselineKind::lagrange_triangle, masses({1, 1, 1})},
      {BaselineKind::lagrange_triangle, masses({1, 2, 3})},
      {BaselineKind::euler_collinear, masses({1, 1, 1})},
      {BaselineKind::euler_collinear, masses({1, 1, 2})},
      {BaselineKind::euler_collinear, masses({1, 3, 0.5})},
      {BaselineKind::euler_collinear, masses({1, 1, 2, 2})},
      {BaselineKind::square, masses({1, 1, 1, 1})},
      {BaselineKind::regular_ngon, masses({1, 1, 1, 1, 1})},
      {BaselineKind::regular_ngon, masses({2, 2})},
      {BaselineKind::parallelogram, masses({1, 1, 2, 2})},
      {BaselineKind::parallelogram, masses({1, 1, 1, 1})},
  };
  for (const Case& c : cases) {
    CAPTURE(to_string(c.kind));
    CAPTURE(c.m.transpose());
    for (double exponent : {1.0, 1.3}) {
      PotentialSpec spec;
      spec.exponent = exponent;
      const Configuration<double> x = central_configuration(c.kind, c.m, spec, 0.8);
      CHECK(has_zero_center_of_mass(x, c.m, 1e-12));
      CHECK(size_of(x, c.m) == doctest::Approx(0.8).epsilon(1e-12));
      CHECK(central_residual(x, c.m, spec) < 1e-10);
      CHECK(central_multiplier(x, c.m, spec) > 0);
    }
  }
}

TEST_CASE("shapes") {
  const Configuration<double> tri = central_configuration(BaselineKind::lagrange_triangle, masses({1, 2, 3}), {}, 1);
  const double a = (tri.col(0) - tri.col(1)).norm();
  CHECK((tri.col(1) - tri.col(2)).norm() == doctest::Approx(a).epsilon(1e-12));
  CHECK((tri.col(0) - tri.col(2)).norm() == doctest::Approx(a).epsilon(1e-12));

  const Configuration<double> line = central_configuration(BaselineKind::euler_collinear, masses({1, 1, 2}), {}, 1);
  const Eigen::Vector2d d = line.col(1) - line.col(0);
  CHECK(std::abs(d.x() * (line(1, 2) - line(1, 0)) - d.y() * (line(0, 2) - line(0, 0))) < 1e-12);
  CHECK((line.col(2) - line.col(0)).dot(line.col(2) - line.col(1)) < 0);  // body 3 between
  // equal end masses put body 3 at the center of mass
  CHECK(line.col(2).norm() < 1e-12);

  const Configuration<double> sq = central_configuration(BaselineKind::square, masses({1, 1, 1, 1}), {}, 1);
  for (int i = 0; i < 4; ++i) CHECK(sq.col(i).norm() == doctest::Approx(1).epsilon(1e-12));
}

TEST_CASE("mismatched masses") {
  CHECK_THROWS_AS(central_configuration(BaselineKind::square, masses({1, 1, 1, 2}), {}, 1), ShapeMassMismatch);
  CHECK_THROWS_AS(central_configuration(BaselineKind::lagrange_triangle, masses({1, 1}), {}, 1), ShapeMassMismatch);
  CHECK_THROWS_AS(central_configuration(BaselineKind::regular_ngon, masses({1, 2, 1}), {}, 1), ShapeMassMismatch);
  CHECK_THROWS_AS(central_configuration(BaselineKind::parallelogram, masses({1, 2, 3, 4}), {}, 1), ShapeMassMismatch);
  CHECK_THROWS_AS(central_configuration(BaselineKind::euler_collinear, masses({1, 2, 1, 2}), {}, 1), ShapeMassMismatch);
  CHECK_THROWS_AS(homographic_baseline(BaselineKind::square, masses({1, 2, 1, 2}), {}), ShapeMassMismatch);
  CHECK_THROWS_AS(parse_baseline_kind("hexagon"), InvalidArgument);
  CHECK(parse_baseline_kind("euler_collinear") == BaselineKind::euler_collinear);
}

TEST_CASE("two-body baseline against the Kepler closed form") {
  const HomographicBaseline b = homographic_baseline(BaselineKind::regular_ngon, masses({1, 1}), {});
  const double radius = std::cbrt(0.25);
  CHECK(b.angular_speed == doctest::Approx(1).epsilon(1e-14));
  CHECK(b.size == doctest::Approx(radius).epsilon(1e-12));
  CHECK(b.continuous_action == doctest::Approx(oracle::circle_action_exact(radius, 2 * oracle::kPi)).epsilon(1e-12));
  CHECK(b.action == doctest::Approx(oracle::circle_action_pl(radius, 2 * oracle::kPi, 240)).epsilon(1e-12));
}

TEST_CASE("Lagrange baseline forces") {
  const HomographicBaseline b = homographic_baseline(BaselineKind::lagrange_triangle, masses({1, 1, 1}), {});
  const Configuration<double> f = force(b.shape, masses({1, 1, 1}), {});
  for (int i = 0; i < 3; ++i) {
    CHECK(f.col(i).norm() == doctest::Approx(b.angular_speed * b.angular_speed * b.shape.col(i).norm()).epsilon(1e-10));
    CHECK((f.col(i).normalized() + b.shape.col(i).normalized()).norm() < 1e-10);
  }
}

TEST_CASE("baseline options") {
  BaselineOptions opt;
  opt.angular_speed = 2.0;
  opt.period = oracle::kPi;
  const HomographicBaseline b = homographic_baseline(BaselineKind::square, masses({1, 1, 1, 1}), {}, opt);
  CHECK(b.angular_speed == 2.0);
  CHECK(b.loop.period() == oracle::kPi);
  // omega^2 x = -grad U / m at the solved size
  const Configuration<double> f = force(b.shape, masses({1, 1, 1, 1}), {});
  CHECK(f.col(0).norm() == doctest::Approx(4 * b.shape.col(0).norm()).epsilon(1e-10));

  BaselineOptions discrete;
  discrete.discrete_balance = true;
  discrete.lattice_size = 60;
  const HomographicBaseline d = homographic_baseline(BaselineKind::lagrange_triangle, masses({1, 1, 1}), {}, discrete);
  const double dt = 2 * oracle::kPi / 60;
  const Configuration<double> fd = force(d.shape, masses({1, 1, 1}), {});
  CHECK(fd.col(0).norm() == doctest::Approx((2 - 2 * std::cos(dt)) / (dt * dt) * d.shape.col(0).norm()).epsilon(1e-10));
}

TEST_CASE("n-gon baseline action is invariant under node rotation") {
  const HomographicBaseline b = homographic_baseline(BaselineKind::regular_ngon, MassVector::Ones(5), {});
  Eigen::MatrixXd rotated(b.loop.coords().rows(), b.loop.size());
  for (int j = 0; j < b.loop.size(); ++j) rotated.col(j) = b.loop.coords().col((j + 17) % b.loop.size());
  CHECK(discrete_action(DiscreteLoop(rotated, b.loop.period()), MassVector::Ones(5), {}) ==
        doctest::Approx(b.action).epsilon(1e-13));
  CHECK(b.action == doctest::Approx(b.continuous_action).epsilon(1e-3));
}
