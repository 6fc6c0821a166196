#include "doctest.h"

#include <random>

#include <Eigen/Core>
#include <unsupported/Eigen/AutoDiff>

#include "symorbit/lagrangian.hpp"

using namespace symorbit;

namespace {

Configuration<double> cfg(std::initializer_list<double> xy) {
  Configuration<double> c(2, static_cast<Eigen::Index>(xy.size() / 2));
  int k = 0;
  for (double v : xy) c(k % 2, k / 2) = v, ++k;
  return c;
}

Configuration<double> random_config(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  Configuration<double> c(2, n);
  for (int i = 0; i < n; ++i) c.col(i) << 2 * i + u(rng) * 0.5, u(rng);
  return c;
}

}  // namespace

TEST_CASE("potential of simple configurations") {
  CHECK(potential(cfg({-1, 0, 1, 0}), MassVector::Ones(2), {}) == doctest::Approx(0.5).epsilon(1e-15));

  const double h = std::sqrt(3.0) / 2;
  CHECK(potential(cfg({0, 0, 1, 0, 0.5, h}), MassVector::Ones(3), {}) == doctest::Approx(3.0).epsilon(1e-14));

  PotentialSpec sf;
  sf.strong_force_epsilon = 0.05;
  CHECK(potential(cfg({0, 0, 1, 0}), MassVector::Ones(2), sf) == doctest::Approx(1.05).epsilon(1e-15));
}

TEST_CASE("potential weights and exponent") {
  MassVector m(2);
  m << 2, 3;
  const auto c = cfg({0, 0, 2, 0});
  CHECK(potential(c, m, {}) == doctest::Approx(3.0));
  PotentialSpec unweighted;
  unweighted.use_mass_products = false;
  CHECK(potential(c, m, unweighted) == doctest::Approx(0.5));
  PotentialSpec power;
  power.exponent = 2;
  CHECK(potential(c, m, power) == doctest::Approx(1.5));
}

TEST_CASE("potential rejects collisions") {
  CHECK_THROWS_AS(potential(cfg({1, 1, 1, 1}), MassVector::Ones(2), {}), CollisionSingularity);
  CHECK_THROWS_AS(force(cfg({1, 1, 1, 1}), MassVector::Ones(2), {}), CollisionSingularity);
}

TEST_CASE("potential is rotation and permutation invariant") {
  std::mt19937_64 rng(3);
  MassVector m(4);
  m << 1, 1, 2, 2;
  PotentialSpec spec;
  spec.exponent = 1.3;
  spec.strong_force_epsilon = 0.01;
  for (int trial = 0; trial < 20; ++trial) {
    Configuration<double> c = random_config(4, rng);
    const double u = potential(c, m, spec);
    const double a = 0.1 + trial;
    Eigen::Matrix2d r;
    r << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
    CHECK(potential(r * c, m, spec) == doctest::Approx(u).epsilon(1e-12));
    Configuration<double> swapped = c;
    swapped.col(0).swap(swapped.col(1));
    swapped.col(2).swap(swapped.col(3));
    CHECK(potential(swapped, m, spec) == doctest::Approx(u).epsilon(1e-12));
  }
}

TEST_CASE("potential homogeneity") {
  std::mt19937_64 rng(5);
  const Configuration<double> c = random_config(3, rng);
  const MassVector m = MassVector::Ones(3);
  PotentialSpec newton;
  newton.exponent = 1.5;
  PotentialSpec strong;
  strong.exponent = 1.5;
  strong.strong_force_epsilon = 0.2;
  const double lambda = 1.7;
  const double ua = potential(c, m, newton);
  const double ue = potential(c, m, strong) - ua;
  const double scaled = potential(Configuration<double>(lambda * c), m, strong);
  CHECK(scaled == doctest::Approx(ua * std::pow(lambda, -1.5) + ue * std::pow(lambda, -2.0)).epsilon(1e-10));
}

TEST_CASE("kinetic energy") {
  CHECK(kinetic(Configuration<double>::Zero(2, 3), MassVector::Ones(3)) == 0.0);
  MassVector m(1);
  m << 2;
  CHECK(kinetic(cfg({3, 4}), m) == doctest::Approx(25));
  std::mt19937_64 rng(7);
  const Configuration<double> v = random_config(4, rng);
  const double k = kinetic(v, MassVector::Ones(4));
  CHECK(kinetic(Configuration<double>(2 * v), MassVector::Ones(4)) == doctest::Approx(4 * k));
}

TEST_CASE("moment of inertia") {
  CHECK(moment_of_inertia(Configuration<double>::Zero(2, 3), MassVector::Ones(3)) == 0.0);
  CHECK(moment_of_inertia(cfg({-1, 0, 1, 0}), MassVector::Ones(2)) == doctest::Approx(2));
  std::mt19937_64 rng(11);
  const Configuration<double> c = random_config(3, rng);
  CHECK(moment_of_inertia(Configuration<double>(3 * c), MassVector::Ones(3)) ==
        doctest::Approx(9 * moment_of_inertia(c, MassVector::Ones(3))));
}

TEST_CASE("two-body force") {
  const Configuration<double> f = force(cfg({-0.5, 0, 0.5, 0}), MassVector::Ones(2), {});
  CHECK(f(0, 0) == doctest::Approx(1));
  CHECK(f(0, 1) == doctest::Approx(-1));
  CHECK(std::abs(f(1, 0)) < 1e-15);
}

TEST_CASE("equilateral forces point at the centroid") {
  const double h = std::sqrt(3.0) / 2;
  Configuration<double> c = cfg({0, 0, 1, 0, 0.5, h});
  remove_center_of_mass(c, MassVector::Ones(3));
  const Configuration<double> f = force(c, MassVector::Ones(3), {});
  for (int i = 0; i < 3; ++i) {
    const double cross = f(0, i) * c(1, i) - f(1, i) * c(0, i);
    CHECK(std::abs(cross) < 1e-12);
    CHECK(f.col(i).dot(c.col(i)) < 0);
  }
}

TEST_CASE("force is the gradient of the potential") {
  std::mt19937_64 rng(13);
  MassVector m(4);
  m << 1, 2, 1.5, 0.7;
  for (double exponent : {1.0, 1.3, 2.0})
    for (double eps : {0.0, 0.05}) {
      PotentialSpec spec;
      spec.exponent = exponent;
      spec.strong_force_epsilon = eps;
      const Configuration<double> c = random_config(4, rng);
      const Configuration<double> f = force(c, m, spec);
      CHECK(f.rowwise().sum().norm() < 1e-12 * f.norm());
      Configuration<double> fd(2, 4);
      for (int i = 0; i < 4; ++i)
        for (int d = 0; d < 2; ++d) {
          const double h = 1e-6;
          Configuration<double> p = c, q = c;
          p(d, i) += h;
          q(d, i) -= h;
          fd(d, i) = (potential(p, m, spec) - potential(q, m, spec)) / (2 * h);
        }
      CHECK((fd - f).norm() / f.norm() < 1e-6);
    }
}

TEST_CASE("potential instantiates on automatic differentiation scalars") {
  using AD = Eigen::AutoDiffScalar<Eigen::VectorXd>;
  std::mt19937_64 rng(17);
  const Configuration<double> c = random_config(3, rng);
  const MassVector m = MassVector::Ones(3);
  PotentialSpec spec;
  spec.strong_force_epsilon = 0.1;
  Configuration<AD> ad(2, 3);
  for (int i = 0; i < 3; ++i)
    for (int d = 0; d < 2; ++d) ad(d, i) = AD(c(d, i), 6, 2 * i + d);
  const AD u = potential(ad, m, spec);
  const Configuration<double> f = force(c, m, spec);
  CHECK(u.value() == doctest::Approx(potential(c, m, spec)));
  for (int i = 0; i < 3; ++i)
    for (int d = 0; d < 2; ++d) CHECK(u.derivatives()[2 * i + d] == doctest::Approx(f(d, i)).epsilon(1e-12));
}

TEST_CASE("long double instantiation agrees") {
  std::mt19937_64 rng(19);
  const Configuration<double> c = random_config(3, rng);
  const Configuration<long double> cl = c.cast<long double>();
  CHECK(double(potential(cl, MassVector::Ones(3), {})) ==
        doctest::Approx(potential(c, MassVector::Ones(3), {})).epsilon(1e-14));
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(validate(MassVector::Ones(1)), InvalidArgument);
  MassVector bad(2);
  bad << 1, 0;
  CHECK_THROWS_AS(validate(bad), InvalidArgument);
  PotentialSpec spec;
  spec.exponent = 0.5;
  CHECK_THROWS_AS(validate(spec), InvalidArgument);
}
