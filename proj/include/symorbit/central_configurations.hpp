#pragma once

#include <optional>
#include <string>

#include "symorbit/loopspace.hpp"

namespace symorbit {

enum class BaselineKind { lagrange_triangle, euler_collinear, square, regular_ngon, parallelogram };

std::string to_string(BaselineKind kind);
BaselineKind parse_baseline_kind(const std::string& name);

/// Central configuration of the given kind at size sqrt(I / M) = `size`, center of
/// mass at the origin. Shapes of non-homogeneous potentials depend on the size.
///   euler_collinear: three bodies on a line with body 3 in the middle, or four
///   bodies with masses (a, a, b, b) placed symmetrically, bodies 3 and 4 inside.
///   parallelogram: rhombus for masses (a, a, b, b); bodies 1, 2 on one diagonal.
/// Throws ShapeMassMismatch when the kind does not fit the masses.
Configuration<double> central_configuration(BaselineKind kind, const MassVector& masses, const PotentialSpec& spec,
                                            double size);

/// Multiplier lambda with force = -lambda m x, i.e. -<grad U, x> / I.
double central_multiplier(const Configuration<double>& config, const MassVector& masses, const PotentialSpec& spec);
/// |grad U + lambda m x| / |grad U|, zero exactly on central configurations.
double central_residual(const Configuration<double>& config, const MassVector& masses, const PotentialSpec& spec);

struct BaselineOptions {
  int lattice_size = 240;
  double period = 6.283185307179586;
  /// Angular speed; defaults to 2 pi / period, the minimizing choice over one period.
  std::optional<double> angular_speed;
  /// Balance against the discrete second difference so the lattice loop solves the
  /// discrete equations exactly.
  bool discrete_balance = false;
};

struct HomographicBaseline {
  BaselineKind kind = BaselineKind::lagrange_triangle;
  DiscreteLoop loop;
  Configuration<double> shape;  // node 0
  double angular_speed = 0;
  double size = 0;
  double action = 0;             // discrete_action(loop)
  double continuous_action = 0;  // period * (K + U) of the rigid rotation
};

/// Rigidly rotating central configuration x(t) = R(omega t) c, with the size of c
/// solved from omega^2 m_i c_i = -grad_i U(c).
HomographicBaseline homographic_baseline(BaselineKind kind, const MassVector& masses, const PotentialSpec& spec,
                                         const BaselineOptions& options = {});

}  // namespace symorbit
