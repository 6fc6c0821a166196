#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Core>

#include "symorbit/error.hpp"

namespace symorbit {

template <typename Scalar>
using Configuration = Eigen::Matrix<Scalar, 2, Eigen::Dynamic>;

using MassVector = Eigen::VectorXd;

/// Pair interaction  w/r^a + eps * w/r^2,  w = m_i m_j (or 1 when mass products are off).
struct PotentialSpec {
  double exponent = 1.0;
  double strong_force_epsilon = 0.0;
  bool use_mass_products = true;

  bool operator==(const PotentialSpec&) const = default;
};

/// Distance below which two bodies are treated as collided.
inline constexpr double kCollisionRadius = 1e-14;

void validate(const MassVector& masses);
void validate(const PotentialSpec& spec);

namespace detail {

template <typename Scalar>
Scalar pair_weight(const MassVector& masses, Eigen::Index i, Eigen::Index j, const PotentialSpec& spec) {
  return spec.use_mass_products ? Scalar(masses[i] * masses[j]) : Scalar(1);
}

}  // namespace detail

template <typename Derived>
typename Derived::Scalar potential(const Eigen::MatrixBase<Derived>& config, const MassVector& masses,
                                   const PotentialSpec& spec) {
  using Scalar = typename Derived::Scalar;
  using std::pow;
  using std::sqrt;
  const Eigen::Index n = config.cols();
  Scalar u(0);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      Scalar r2 = (config.col(i) - config.col(j)).squaredNorm();
      Scalar r = sqrt(r2);
      if (!(r >= Scalar(kCollisionRadius))) throw CollisionSingularity("bodies collide in potential evaluation");
      Scalar w = detail::pair_weight<Scalar>(masses, i, j, spec);
      if (spec.exponent == 1.0)
        u += w / r;
      else
        u += w / pow(r, spec.exponent);
      if (spec.strong_force_epsilon > 0) u += Scalar(spec.strong_force_epsilon) * w / r2;
    }
  }
  return u;
}

/// Gradient of `potential` with respect to the positions (the Newtonian force, G = 1).
template <typename Derived>
Configuration<typename Derived::Scalar> force(const Eigen::MatrixBase<Derived>& config, const MassVector& masses,
                                               const PotentialSpec& spec) {
  using Scalar = typename Derived::Scalar;
  using std::pow;
  using std::sqrt;
  const Eigen::Index n = config.cols();
  Configuration<Scalar> f = Configuration<Scalar>::Zero(2, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      Eigen::Matrix<Scalar, 2, 1> d = config.col(i) - config.col(j);
      Scalar r2 = d.squaredNorm();
      Scalar r = sqrt(r2);
      if (!(r >= Scalar(kCollisionRadius))) throw CollisionSingularity("bodies collide in force evaluation");
      Scalar w = detail::pair_weight<Scalar>(masses, i, j, spec);
      // d/dr (w r^-a) = -a w r^-(a+1); chain rule through r gives a factor d/r.
      Scalar coeff = Scalar(spec.exponent) * w / (pow(r, spec.exponent) * r2);
      if (spec.strong_force_epsilon > 0) coeff += Scalar(2 * spec.strong_force_epsilon) * w / (r2 * r2);
      f.col(i) -= coeff * d;
      f.col(j) += coeff * d;
    }
  }
  return f;
}

template <typename Derived>
typename Derived::Scalar kinetic(const Eigen::MatrixBase<Derived>& velocities, const MassVector& masses) {
  using Scalar = typename Derived::Scalar;
  Scalar k(0);
  for (Eigen::Index i = 0; i < velocities.cols(); ++i) k += Scalar(0.5 * masses[i]) * velocities.col(i).squaredNorm();
  return k;
}

template <typename Derived>
typename Derived::Scalar moment_of_inertia(const Eigen::MatrixBase<Derived>& config, const MassVector& masses) {
  using Scalar = typename Derived::Scalar;
  Scalar inertia(0);
  for (Eigen::Index i = 0; i < config.cols(); ++i) inertia += Scalar(masses[i]) * config.col(i).squaredNorm();
  return inertia;
}

template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 2, 1> center_of_mass(const Eigen::MatrixBase<Derived>& config,
                                                            const MassVector& masses) {
  using Scalar = typename Derived::Scalar;
  Eigen::Matrix<Scalar, 2, 1> c = Eigen::Matrix<Scalar, 2, 1>::Zero();
  for (Eigen::Index i = 0; i < config.cols(); ++i) c += Scalar(masses[i]) * config.col(i);
  return c / Scalar(masses.sum());
}

/// Shifts the configuration so that sum m_i x_i = 0.
template <typename Derived>
void remove_center_of_mass(Eigen::MatrixBase<Derived>& config, const MassVector& masses) {
  auto c = center_of_mass(config, masses);
  config.colwise() -= c;
}

template <typename Derived>
bool has_zero_center_of_mass(const Eigen::MatrixBase<Derived>& config, const MassVector& masses, double tol = 1e-10) {
  double scale = 0;
  for (Eigen::Index i = 0; i < config.cols(); ++i) scale += masses[i] * double(config.col(i).norm());
  const Eigen::Matrix<typename Derived::Scalar, 2, 1> c = center_of_mass(config, masses) * masses.sum();
  return double(c.norm()) <= tol * std::max(scale, 1e-300);
}

template <typename Derived>
double min_pairwise_distance(const Eigen::MatrixBase<Derived>& config) {
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < config.cols(); ++i)
    for (Eigen::Index j = i + 1; j < config.cols(); ++j)
      best = std::min(best, double((config.col(i) - config.col(j)).norm()));
  return best;
}

inline void validate(const MassVector& masses) {
  if (masses.size() < 2) throw InvalidArgument("at least two bodies are required");
  for (Eigen::Index i = 0; i < masses.size(); ++i)
    if (!(masses[i] > 0)) throw InvalidArgument("masses must be positive");
}

inline void validate(const PotentialSpec& spec) {
  if (!(spec.exponent >= 1.0)) throw InvalidArgument("potential exponent must be >= 1");
  if (!(spec.strong_force_epsilon >= 0.0)) throw InvalidArgument("strong force epsilon must be >= 0");
}

}  // namespace symorbit
