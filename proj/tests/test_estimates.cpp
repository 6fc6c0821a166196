#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "symorbit/estimates.hpp"

using namespace symorbit;

namespace {

const double kPi = oracle::kPi;
const TestPathParams kPoint{2, kPi / 8, 1, 0.4, 0.3};

TestPathParams random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.05, 0.95);
  TestPathParams p;
  p.m = 0.2 + 4 * u(rng);
  p.theta = u(rng) * kPi / 2;
  p.ell = 0.1 + 3 * u(rng);
  p.r0 = u(rng) * p.ell;
  p.c = u(rng) * p.ell;
  return p;
}

}  // namespace

TEST_CASE("kinetic terms") {
  const KineticTerms k = kinetic_terms(kPoint);
  CHECK(k.k3 == doctest::Approx(kPi / 8).epsilon(1e-15));
  CHECK(k.k12 == doctest::Approx(0.6744656356270105).epsilon(1e-13));

  TestPathParams p{1.5, 0.7, 1.3, 1e-9, 1e-9};
  CHECK(kinetic_terms(p).k12 == doctest::Approx(p.ell * p.ell * p.theta * p.theta).epsilon(1e-8));
}

TEST_CASE("potential terms") {
  const PotentialTerms u = potential_terms(kPoint);
  CHECK(u.u3 == doctest::Approx(std::log(1.75) / 0.6).epsilon(1e-14));
  CHECK(u.u3 == doctest::Approx(0.9326929799).epsilon(1e-10));
  CHECK(u.u1 == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(u.u2 == doctest::Approx(2 / std::sqrt(0.49 + 4)).epsilon(1e-15));

  // the closed form tends to 1 / (2 r0) as c -> 0
  TestPathParams p = kPoint;
  p.c = 1e-9;
  CHECK(potential_terms(p).u3 == doctest::Approx(1 / (2 * p.r0)).epsilon(1e-8));
}

TEST_CASE("Euler action") {
  CHECK(euler_action(2, kPi / 8) == doctest::Approx(4.318106158524404).epsilon(1e-14));
  CHECK(euler_action(2, kPi / 8) == doctest::Approx(1.5 * std::cbrt(4.5 * 4.5 * 3 * kPi / 8)).epsilon(1e-14));
  CHECK(euler_action(2, kPi / 2 - 1e-12) < 1e-3);
  for (double m = 0.1; m < 5; m += 0.3) CHECK(euler_action(m + 0.1, 0.4) > euler_action(m, 0.4));
  CHECK_THROWS_AS(euler_action(2, kPi / 2), DomainError);
  CHECK_THROWS_AS(euler_action(0, 0.3), DomainError);
}

TEST_CASE("difference at the reference point") {
  CHECK(std::abs(difference(kPoint) - (-0.124390105)) < 1e-6);
  CHECK(difference(kPoint) == doctest::Approx(-0.12439010494028047).epsilon(1e-13));
  CHECK(difference_simplified(kPoint) == doctest::Approx(-0.3628766178719838).epsilon(1e-13));

  const LevelEstimate e = level_estimate(kPoint);
  CHECK(e.path_action == doctest::Approx(e.k12 + e.k3 + e.u1 + e.u2 + e.u3).epsilon(1e-15));
  CHECK(e.difference == doctest::Approx(e.path_action - e.euler_action).epsilon(1e-15));
}

TEST_CASE("the simplified form carries theta^2 in the body-3 kinetic term") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const TestPathParams p = random_point(rng);
    const LevelEstimate e = level_estimate(p);
    CHECK(e.difference == doctest::Approx(difference(p)).epsilon(1e-15));
    const double swapped = e.difference - e.k3 + 2 * p.ell * p.ell * p.theta * p.theta / p.m;
    CHECK(std::abs(difference_simplified(p) - swapped) < 1e-9 * std::max(1.0, std::abs(swapped)));
  }
}

TEST_CASE("quadrature of the comparison path") {
  const DifferenceDiscrepancy d = difference_discrepancy(kPoint);
  CHECK(d.assembled == doctest::Approx(difference(kPoint)));
  CHECK(d.simplified == doctest::Approx(difference_simplified(kPoint)));
  CHECK(d.k12_quadrature == doctest::Approx(d.k12_stated).epsilon(1e-8));
  CHECK(d.k3_quadrature == doctest::Approx(2 * kPi * kPi / 64 / 2).epsilon(1e-8));
  CHECK(d.rederived == doctest::Approx(d.simplified).epsilon(1e-8));
}

TEST_CASE("difference is continuous") {
  const double base = difference(kPoint);
  for (double h : {1e-4, 1e-6}) {
    for (int k = 0; k < 5; ++k) {
      TestPathParams p = kPoint;
      double* fields[] = {&p.m, &p.theta, &p.ell, &p.r0, &p.c};
      *fields[k] += h;
      CHECK(std::abs(difference(p) - base) < 1e3 * h);
    }
  }
}

TEST_CASE("parameter validation") {
  CHECK(kPoint.admissible());
  TestPathParams p = kPoint;
  p.r0 = 1.2;
  CHECK_FALSE(p.admissible());
  CHECK_THROWS_AS(p.validate(), DomainError);
}

TEST_CASE("domain D") {
  const DomainResult r = in_domain_D(2, kPi / 8);
  REQUIRE(r.member);
  REQUIRE(r.witness.has_value());
  CHECK(r.inf_value <= -0.12);
  CHECK(r.inf_value <= difference(kPoint));
  CHECK(difference(*r.witness) == doctest::Approx(r.inf_value));
  CHECK(r.witness->admissible());

  for (int i = -2; i <= 2; ++i)
    for (int k = -2; k <= 2; ++k) CHECK(in_domain_D(2 + 0.025 * i, kPi / 8 + 0.025 * k).member);

  CHECK_FALSE(in_domain_D(2, kPi / 2 - 1e-3).member);

  DomainScan small;
  small.ell_max = 2;
  if (in_domain_D(1, 1.0, small).member) CHECK(in_domain_D(1, 1.0).member);
  CHECK(in_domain_D(2, 0.3, small).member);
  CHECK(in_domain_D(2, 0.3).member);
}

TEST_CASE("comparison path samples") {
  SUBCASE("body 3 runs on the circle of radius 2l/m") {
    const BolzaPath path = test_path_loop(kPoint, 50);
    // body 3 in the center-of-mass frame: the shift is common to every body
    for (int k = 0; k <= 50; ++k) {
      const double t = k / 50.0;
      const Eigen::Vector2d x3 = path.node(k).col(2);
      const Eigen::Vector2d expected = -(2 * kPoint.ell / kPoint.m) * Eigen::Vector2d(std::cos(kPoint.theta * t), std::sin(kPoint.theta * t));
      const Eigen::Vector2d shift = path.node(k).col(0) - (kPoint.ell * Eigen::Vector2d(std::cos(kPoint.theta * t), std::sin(kPoint.theta * t)) +
                                                        (kPoint.r0 + kPoint.c * t) * Eigen::Vector2d(std::cos((kPoint.theta - kPi / 2) * t), std::sin((kPoint.theta - kPi / 2) * t)));
      CHECK((x3 - expected - shift).norm() < 1e-12);
    }
  }
  SUBCASE("constant separation when c = 0") {
    TestPathParams p = kPoint;
    p.c = 1e-300;
    const BolzaPath path = test_path_loop(p, 40);
    for (int k = 0; k <= 40; ++k)
      CHECK((path.node(k).col(0) - path.node(k).col(1)).norm() == doctest::Approx(2 * p.r0).epsilon(1e-12));
  }
  SUBCASE("endpoints lie in the reflection subspaces") {
    CHECK(test_path_loop(kPoint, 64).endpoint_defect() < 1e-12);
  }
  SUBCASE("the closed-form terms bound the sampled action") {
    MassVector m(3);
    m << 1, 1, kPoint.m;
    const BolzaPath path = test_path_loop(kPoint, 10000);
    const double sampled = path_action(path, m, {});
    const LevelEstimate e = level_estimate(kPoint);
    CHECK(sampled <= e.path_action + 1e-6);
    // with the re-derived body-3 term the bound is still above the sampled action
    const DifferenceDiscrepancy d = difference_discrepancy(kPoint);
    CHECK(sampled <= d.k12_quadrature + d.k3_quadrature + e.u1 + e.u2 + e.u3 + 1e-6);
  }
}
