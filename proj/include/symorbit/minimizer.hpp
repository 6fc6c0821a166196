#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>

#include "symorbit/loopspace.hpp"

namespace symorbit {

/// "Body `body` does not lie between `first` and `second` on their line" at lattice time `lattice_index`.
/// Indices are zero-based.
struct OrderingConstraint {
  int body = 2;
  int first = 0;
  int second = 1;
  int lattice_index = 0;

  bool operator==(const OrderingConstraint&) const = default;
};

bool ordering_constraint_filter(const DiscreteLoop& loop, const OrderingConstraint& order);

struct StepEvent {
  long iteration = 0;
  int restarts = 0;  // restarts taken before this step
  double action = 0;
  double grad_norm = 0;
  const DiscreteLoop* loop = nullptr;
};

struct MinimizerConfig {
  int lattice_size = 240;
  double period = 6.283185307179586;
  /// Defaults to 1e-3 T/N.
  std::optional<double> initial_step;
  /// Defaults to 1e-8 N.
  std::optional<double> grad_tolerance;
  long max_iterations = 200000;
  /// Restart perturbation size, as a fraction of the loop diameter.
  double restart_magnitude = 0.05;
  int max_restarts = 30;
  std::uint64_t rng_seed = 1;
  /// Collision threshold delta, as a fraction of the loop diameter.
  double collision_distance = 1e-4;
  int stall_window = 200;
  double stall_threshold = 1e-10;
  /// Amplitude of the random seed loop around the unit circle.
  double seed_amplitude = 0.5;
  /// Nesterov extrapolation; dropped on any step that fails to decrease the action.
  bool momentum = true;
  /// Throw NoConvergence instead of returning an unconverged result.
  bool require_convergence = false;
  std::optional<OrderingConstraint> ordering;
  /// Progress line every `log_every` iterations when set.
  std::ostream* log = nullptr;
  long log_every = 1000;
  /// Called after every accepted descent step.
  std::function<void(const StepEvent&)> observer;

  double resolved_initial_step() const { return initial_step.value_or(1e-3 * period / lattice_size); }
  double resolved_grad_tolerance() const { return grad_tolerance.value_or(1e-8 * lattice_size); }
  void validate() const;
};

struct MinimizationResult {
  EquivariantLoop loop;
  double action = 0;
  double grad_norm = 0;
  bool collision_free = false;
  double min_pairwise_distance = 0;
  int restarts_used = 0;
  long iterations = 0;
  bool converged = false;
};

class NoConvergence : public Error {
 public:
  explicit NoConvergence(MinimizationResult result)
      : Error("no convergence after " + std::to_string(result.iterations) + " iterations"), result_(std::move(result)) {}
  const MinimizationResult& result() const { return result_; }

 private:
  MinimizationResult result_;
};

/// Projected gradient relaxation of the discrete action on the equivariant loops,
/// with backtracking step control and random restarts on stalls.
///
/// The group must be coercive, unless an ordering constraint is configured.
MinimizationResult minimize(GroupPtr group, const PotentialSpec& spec, const MinimizerConfig& config,
                            const std::optional<DiscreteLoop>& seed_loop = std::nullopt);

/// Symmetrized random loop: a rotating unit circle arrangement plus smooth per-body
/// perturbations of the given amplitude. Resamples until collision-free (bounded).
EquivariantLoop random_equivariant_loop(GroupPtr group, int lattice_size, double period, double amplitude,
                                        std::uint64_t rng_seed);

}  // namespace symorbit
