#pragma once

#include <optional>
#include <string>
#include <vector>

#include "symorbit/central_configurations.hpp"
#include "symorbit/minimizer.hpp"

namespace symorbit {

struct NewtonResidual {
  Eigen::MatrixXd per_node;  // 2n x N
  double norm = 0;           // sqrt(sum |r|^2 / m_i / (N n))
};

/// m_i (x_{j+1} - 2 x_j + x_{j-1}) / dt^2 - grad_i U(x_j).
NewtonResidual newton_residual(const DiscreteLoop& loop, const MassVector& masses, const PotentialSpec& spec);

struct ShootingOptions {
  double tolerance = 1e-10;
  /// Close approach threshold, as a fraction of the loop diameter.
  double collision_distance = 1e-4;
  long max_steps = 10000000;
};

struct PeriodicityResult {
  /// sqrt(sum m_i (|dx_i|^2 + |dv_i / omega|^2) / M) / diameter, omega = 2 pi / T.
  double residual = 0;
  /// The integration came closer than the collision threshold and was stopped.
  bool blowup = false;
  double min_distance = 0;
  long steps = 0;
};

/// Velocity at node 0 from an eighth-order periodic central difference.
Configuration<double> initial_velocity(const DiscreteLoop& loop);

/// Integrates Newton's equations over one period from node 0 with an adaptive
/// Dormand-Prince 5(4) scheme and measures how far the orbit is from closing.
PeriodicityResult shoot_periodicity(const DiscreteLoop& loop, const MassVector& masses, const PotentialSpec& spec,
                                    const ShootingOptions& options = {});
PeriodicityResult shoot_periodicity(const Configuration<double>& positions, const Configuration<double>& velocities,
                                    double period, double diameter, const MassVector& masses, const PotentialSpec& spec,
                                    const ShootingOptions& options = {});

enum class Classification { choreography, homographic, nontrivial };
std::string to_string(Classification c);

struct ClassificationResult {
  Classification kind = Classification::nontrivial;
  /// Lattice shift s with x_{c(i)}(t_j) = x_i(t_{j+s}), for choreographies.
  std::optional<int> choreography_shift;
  std::optional<Permutation> choreography_cycle;
  double choreography_defect = 0;  // best relative defect over all shifts
  double shape_variation = 0;      // largest Procrustes distance of a node's shape from node 0
};

/// Homographic is tested first: a rotating equal-mass polygon is also a choreography.
ClassificationResult classify(const DiscreteLoop& loop, const MassVector& masses, double tolerance = 1e-3);

/// Distance between the inertia-normalized shapes of two configurations after the
/// best rotation (and reflection when `allow_reflection`).
double shape_distance(const Configuration<double>& a, const Configuration<double>& b, const MassVector& masses,
                      bool allow_reflection = false);

/// RMS shape distance between two loops minimized over time shifts, time reversal,
/// mass-preserving relabelings and reflections of the plane.
double orbit_shape_distance(const DiscreteLoop& a, const DiscreteLoop& b, const MassVector& masses);

struct RigidRotationWitness {
  BaselineKind kind = BaselineKind::lagrange_triangle;
  Permutation labeling;  // body labeling(i) sits at vertex i of the shape
  int winding = 1;
  double phase = 0;  // orientation of the configuration at time 0, radians
  double residual = 0;
  Configuration<double> configuration;
};

/// Looks for a rigidly rotating central configuration x(t) = R(k 2 pi t / T) c that is
/// equivariant under every generator, over the known central configurations, all
/// mass-preserving labelings and windings 1 <= |k| <= max_winding.
std::optional<RigidRotationWitness> find_rigid_rotation(const SymmetryGroup& group, const PotentialSpec& spec,
                                                        int max_winding = 6);

struct VerificationOptions {
  ShootingOptions shooting;
  double classification_tolerance = 1e-3;
};

struct VerificationReport {
  double newton_residual_norm = 0;
  std::optional<double> residual_after_refine;
  double periodicity_residual = 0;
  bool integration_blowup = false;
  ClassificationResult classification;
  double min_distance = 0;
};

VerificationReport verify_loop(const DiscreteLoop& loop, const MassVector& masses, const PotentialSpec& spec,
                               const VerificationOptions& options = {});

/// Resamples onto `factor` times as many nodes and minimizes again from there.
MinimizationResult refine(const EquivariantLoop& loop, const PotentialSpec& spec, MinimizerConfig config,
                          int factor = 2);

}  // namespace symorbit
