#include "symorbit/estimates.hpp"

#include <array>
#include <cmath>
#include <complex>

#include <Eigen/SVD>

namespace symorbit {

namespace {

constexpr double kPi = 3.14159265358979323846;

using Complex = std::complex<double>;

std::array<Complex, 3> path_positions(const TestPathParams& p, double t) {
  const Complex outer = p.ell * std::polar(1.0, p.theta * t);
  const Complex inner = (p.r0 + p.c * t) * std::polar(1.0, (p.theta - kPi / 2) * t);
  return {outer + inner, outer - inner, -(2 * p.ell / p.m) * std::polar(1.0, p.theta * t)};
}

}  // namespace

bool TestPathParams::admissible() const {
  return m > 0 && theta > 0 && theta < kPi / 2 && ell > r0 && r0 > 0 && ell > c && c > 0;
}

void TestPathParams::validate() const {
  if (!admissible()) throw DomainError("test path parameters need m > 0, 0 < theta < pi/2, ell > r0 > 0, ell > c > 0");
}

KineticTerms kinetic_terms(const TestPathParams& p) {
  const double pi = kPi, th = p.theta, c = p.c, r0 = p.r0, l = p.ell;
  KineticTerms k;
  k.k12 = c * c * pi * pi / 12 + r0 * r0 * pi * pi / 4 + r0 * th * th * c - c * r0 * th * pi + c * c +
          c * c * th * th / 3 - r0 * r0 * th * pi + l * l * th * th - c * c * th * pi / 3 + r0 * r0 * th * th +
          r0 * pi * pi * c / 4;
  k.k3 = 2 * l * l * th / p.m;
  return k;
}

PotentialTerms potential_terms(const TestPathParams& p) {
  PotentialTerms u;
  u.u3 = std::log1p(p.c / p.r0) / (2 * p.c);
  const double outer = p.ell * (1 + 2 / p.m);
  u.u2 = p.m / std::sqrt((p.r0 + p.c) * (p.r0 + p.c) + outer * outer);
  u.u1 = p.m * p.m / (p.m * (p.ell - p.r0) + 2 * p.ell);
  return u;
}

double euler_action(double m, double theta) {
  if (!(m > 0)) throw DomainError("Euler action needs m > 0");
  if (!(theta < kPi / 2)) throw DomainError("Euler action needs theta < pi/2");
  const double a = 0.5 + 2 * m;
  return 1.5 * std::cbrt(a * a * (kPi / 2 - theta));
}

LevelEstimate level_estimate(const TestPathParams& p) {
  p.validate();
  const KineticTerms k = kinetic_terms(p);
  const PotentialTerms u = potential_terms(p);
  LevelEstimate e;
  e.k12 = k.k12;
  e.k3 = k.k3;
  e.u1 = u.u1;
  e.u2 = u.u2;
  e.u3 = u.u3;
  e.path_action = k.k12 + k.k3 + u.u1 + u.u2 + u.u3;
  e.euler_action = euler_action(p.m, p.theta);
  e.difference = e.path_action - e.euler_action;
  return e;
}

double difference(const TestPathParams& p) { return level_estimate(p).difference; }

double difference_simplified(const TestPathParams& p) {
  p.validate();
  const double m = p.m, th = p.theta, l = p.ell, r0 = p.r0, c = p.c;
  const double outer = l * (1 + 2 / m);
  return l * l * th * th * (1 + 2 / m) + c * c + (3 * r0 * r0 + c * c + 3 * c * r0) * (kPi - 2 * th) * (kPi - 2 * th) / 12 +
         m * m / (m * (l - r0) + 2 * l) + m / std::sqrt((r0 + c) * (r0 + c) + outer * outer) +
         std::log1p(c / r0) / (2 * c) - euler_action(m, th);
}

DifferenceDiscrepancy difference_discrepancy(const TestPathParams& p) {
  const LevelEstimate e = level_estimate(p);
  DifferenceDiscrepancy d;
  d.assembled = e.difference;
  d.simplified = difference_simplified(p);
  d.k12_stated = e.k12;
  d.k3_stated = e.k3;

  // Composite Simpson on [0, 1] of the kinetic energy, velocities by centered differences.
  constexpr int kIntervals = 2000;
  constexpr double h = 1e-5;
  const std::array<double, 3> masses{1.0, 1.0, p.m};
  double k12 = 0, k3 = 0;
  for (int i = 0; i <= kIntervals; ++i) {
    const double t = static_cast<double>(i) / kIntervals;
    const double w = (i == 0 || i == kIntervals) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    const auto ahead = path_positions(p, t + h);
    const auto behind = path_positions(p, t - h);
    for (int b = 0; b < 3; ++b) {
      const double e_kin = 0.5 * masses[static_cast<std::size_t>(b)] * std::norm((ahead[static_cast<std::size_t>(b)] - behind[static_cast<std::size_t>(b)]) / (2 * h));
      (b < 2 ? k12 : k3) += w * e_kin;
    }
  }
  d.k12_quadrature = k12 / (3.0 * kIntervals);
  d.k3_quadrature = k3 / (3.0 * kIntervals);
  d.rederived = d.k12_quadrature + d.k3_quadrature + e.u1 + e.u2 + e.u3 - e.euler_action;
  return d;
}

DomainResult in_domain_D(double m, double theta, const DomainScan& scan) {
  if (!(m > 0) || !(theta > 0) || !(theta < kPi / 2)) throw DomainError("domain scan needs m > 0 and 0 < theta < pi/2");
  if (scan.grid < 2 || !(scan.ell_min > 0) || !(scan.ell_max > scan.ell_min)) throw InvalidArgument("invalid domain scan box");

  // Coordinates (ell, u, v) with r0 = u ell, c = v ell, u and v in (0, 1).
  auto evaluate = [&](double ell, double u, double v) {
    if (!(ell >= scan.ell_min && ell <= scan.ell_max && u > 0 && u < 1 && v > 0 && v < 1))
      return std::numeric_limits<double>::infinity();
    return difference(TestPathParams{m, theta, ell, u * ell, v * ell});
  };

  std::array<double, 3> best{scan.ell_min, 0.5, 0.5};
  double best_value = std::numeric_limits<double>::infinity();
  for (int a = 0; a < scan.grid; ++a) {
    const double ell = scan.ell_min + (scan.ell_max - scan.ell_min) * a / (scan.grid - 1);
    for (int b = 0; b < scan.grid; ++b) {
      const double u = (b + 0.5) / scan.grid;
      for (int c = 0; c < scan.grid; ++c) {
        const double v = (c + 0.5) / scan.grid;
        const double value = evaluate(ell, u, v);
        if (value < best_value) {
          best_value = value;
          best = {ell, u, v};
        }
      }
    }
  }

  std::array<double, 3> step{(scan.ell_max - scan.ell_min) / (scan.grid - 1), 1.0 / scan.grid, 1.0 / scan.grid};
  for (int it = 0; it < scan.refine_steps; ++it) {
    bool improved = false;
    for (std::size_t axis = 0; axis < 3; ++axis) {
      for (double sign : {1.0, -1.0}) {
        auto trial = best;
        trial[axis] += sign * step[axis];
        const double value = evaluate(trial[0], trial[1], trial[2]);
        if (value < best_value) {
          best_value = value;
          best = trial;
          improved = true;
        }
      }
    }
    if (!improved)
      for (double& s : step) s *= 0.5;
  }

  DomainResult result;
  result.inf_value = best_value;
  result.best = TestPathParams{m, theta, best[0], best[1] * best[0], best[2] * best[0]};
  result.member = best_value < 0;
  if (result.member) result.witness = result.best;
  return result;
}

namespace {

// Orthonormal basis of the zero-center-of-mass configurations fixed by `action`.
Eigen::MatrixXd fixed_basis(const Eigen::MatrixXd& action, const MassVector& masses) {
  const Eigen::Index dim = action.rows();
  const int n = static_cast<int>(masses.size());
  Eigen::MatrixXd com = Eigen::MatrixXd::Identity(dim, dim);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) com.block<2, 2>(2 * i, 2 * k) -= (masses[k] / masses.sum()) * Eigen::Matrix2d::Identity();
  const Eigen::MatrixXd projector = com * 0.5 * (Eigen::MatrixXd::Identity(dim, dim) + action);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(projector, Eigen::ComputeFullU);
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k)
    if (svd.singularValues()[k] > 1e-10) ++rank;
  return svd.matrixU().leftCols(rank);
}

Eigen::Matrix2d line_reflection(double angle) {
  Eigen::Matrix2d r;
  r << std::cos(2 * angle), std::sin(2 * angle), std::sin(2 * angle), -std::cos(2 * angle);
  return r;
}

}  // namespace

BolzaPath test_path_loop(const TestPathParams& p, int segments, double duration) {
  p.validate();
  if (segments < 1) throw InvalidArgument("test path needs at least one segment");
  if (!(duration > 0)) throw InvalidArgument("test path duration must be positive");
  const MassVector masses = (MassVector(3) << 1.0, 1.0, p.m).finished();

  BolzaPath path;
  path.nodes.resize(6, segments + 1);
  path.time_step = duration / segments;
  for (int k = 0; k <= segments; ++k) {
    const auto x = path_positions(p, static_cast<double>(k) / segments);
    for (int b = 0; b < 3; ++b) {
      path.nodes(2 * b, k) = x[static_cast<std::size_t>(b)].real();
      path.nodes(2 * b + 1, k) = x[static_cast<std::size_t>(b)].imag();
    }
    Eigen::Map<Configuration<double>> node(path.nodes.col(k).data(), 2, 3);
    remove_center_of_mass(node, masses);
  }

  // Start: every body on the real axis. End: bodies 1 and 2 mirrored in the line at
  // angle theta, body 3 on it.
  Eigen::MatrixXd start = Eigen::MatrixXd::Zero(6, 6), end = Eigen::MatrixXd::Zero(6, 6);
  const Eigen::Matrix2d s0 = line_reflection(0), s1 = line_reflection(p.theta);
  for (int b = 0; b < 3; ++b) start.block<2, 2>(2 * b, 2 * b) = s0;
  end.block<2, 2>(2, 0) = s1;
  end.block<2, 2>(0, 2) = s1;
  end.block<2, 2>(4, 4) = s1;
  path.start_basis = fixed_basis(start, masses);
  path.end_basis = fixed_basis(end, masses);
  return path;
}

}  // namespace symorbit
