#include "symorbit/minimizer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <random>

namespace symorbit {

namespace {

constexpr double kTwoPi = 6.283185307179586;
// Relative size of action differences that are indistinguishable from rounding.
constexpr double kRoundoff = 1e-14;

// Periodic Catmull-Rom interpolation of `knots` uniform random values per row.
Eigen::MatrixXd smooth_random_field(std::mt19937_64& rng, Eigen::Index rows, int size, int knots, double amplitude) {
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  Eigen::MatrixXd values(rows, knots);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (int k = 0; k < knots; ++k) values(r, k) = amplitude * uniform(rng);
  Eigen::MatrixXd field(rows, size);
  for (int j = 0; j < size; ++j) {
    const double s = static_cast<double>(j) * knots / size;
    const int k1 = static_cast<int>(std::floor(s));
    const double u = s - k1;
    const int k0 = (k1 + knots - 1) % knots, k2 = (k1 + 1) % knots, k3 = (k1 + 2) % knots;
    const double w0 = 0.5 * (-u * u * u + 2 * u * u - u);
    const double w1 = 0.5 * (3 * u * u * u - 5 * u * u + 2);
    const double w2 = 0.5 * (-3 * u * u * u + 4 * u * u + u);
    const double w3 = 0.5 * (u * u * u - u * u);
    field.col(j) = w0 * values.col(k0) + w1 * values.col(k1 % knots) + w2 * values.col(k2) + w3 * values.col(k3);
  }
  return field;
}

DiscreteLoop random_loop(std::mt19937_64& rng, int n, int size, double period, double amplitude) {
  Eigen::MatrixXd coords(2 * n, size);
  for (int j = 0; j < size; ++j) {
    for (int k = 0; k < n; ++k) {
      const double phase = kTwoPi * (static_cast<double>(j) / size + static_cast<double>(k) / n);
      coords(2 * k, j) = std::cos(phase);
      coords(2 * k + 1, j) = std::sin(phase);
    }
  }
  if (amplitude > 0) coords += smooth_random_field(rng, 2 * n, size, 6, amplitude);
  return DiscreteLoop(std::move(coords), period);
}

double safe_action(const DiscreteLoop& loop, const MassVector& masses, const PotentialSpec& spec) {
  try {
    return discrete_action(loop, masses, spec);
  } catch (const CollisionSingularity&) {
    return std::numeric_limits<double>::infinity();
  }
}

}  // namespace

bool ordering_constraint_filter(const DiscreteLoop& loop, const OrderingConstraint& order) {
  const auto x = loop.node(order.lattice_index % loop.size());
  const Eigen::Vector2d base = x.col(order.first);
  const Eigen::Vector2d dir = x.col(order.second) - base;
  const double len2 = dir.squaredNorm();
  if (len2 == 0) return false;
  const double s = (x.col(order.body) - base).dot(dir) / len2;
  return s < 0 || s > 1;
}

void MinimizerConfig::validate() const {
  if (lattice_size < 4) throw InvalidArgument("lattice size must be at least 4");
  if (!(period > 0)) throw InvalidArgument("period must be positive");
  if (!(resolved_initial_step() > 0)) throw InvalidArgument("initial step must be positive");
  if (!(resolved_grad_tolerance() > 0)) throw InvalidArgument("gradient tolerance must be positive");
  if (max_iterations <= 0 || max_restarts < 0 || stall_window <= 0)
    throw InvalidArgument("iteration, restart and stall-window counts must be positive");
  if (!(restart_magnitude > 0) || !(collision_distance > 0)) throw InvalidArgument("restart magnitude and collision distance must be positive");
}

EquivariantLoop random_equivariant_loop(GroupPtr group, int lattice_size, double period, double amplitude,
                                        std::uint64_t rng_seed) {
  const LoopSymmetrizer symmetrizer(group, lattice_size);
  std::mt19937_64 rng(rng_seed);
  const int n = group->bodies();
  constexpr int kMaxTries = 64;
  for (int attempt = 0;; ++attempt) {
    DiscreteLoop raw = random_loop(rng, n, lattice_size, period, amplitude);
    EquivariantLoop eq = symmetrizer.symmetrize(raw);
    DiscreteLoop loop = eq.loop();
    loop.remove_center_of_mass(group->masses());
    EquivariantLoop out(std::move(loop), group, 1e-8);
    if (amplitude == 0 || attempt + 1 >= kMaxTries) return out;
    if (out.loop().min_pairwise_distance() > 1e-3 * out.loop().diameter()) return out;
  }
}

MinimizationResult minimize(GroupPtr group, const PotentialSpec& spec, const MinimizerConfig& config,
                            const std::optional<DiscreteLoop>& seed_loop) {
  config.validate();
  validate(spec);
  if (!config.ordering && !is_coercive(*group))
    throw NotCoercive("the action is not coercive on these equivariant loops: the group fixes a nonzero configuration");
  if (!lattice_compatible(*group, config.lattice_size))
    throw LatticeIncompatible("lattice size " + std::to_string(config.lattice_size) + " is not compatible with the group");

  const MassVector& masses = group->masses();
  const LoopSymmetrizer symmetrizer(group, config.lattice_size);
  const double tolerance = config.resolved_grad_tolerance();
  const double eta0 = config.resolved_initial_step();
  std::mt19937_64 rng(config.rng_seed);

  auto accepts = [&](const DiscreteLoop& loop) { return !config.ordering || ordering_constraint_filter(loop, *config.ordering); };

  DiscreteLoop x;
  if (seed_loop) {
    if (seed_loop->size() != config.lattice_size) throw InvalidArgument("seed loop lattice size differs from the configured one");
    x = symmetrizer.symmetrize(*seed_loop).loop();
  } else {
    for (int attempt = 0; attempt < 64; ++attempt) {
      x = random_equivariant_loop(group, config.lattice_size, config.period, config.seed_amplitude, rng()).loop();
      if (accepts(x)) break;
    }
  }
  x.remove_center_of_mass(masses);

  auto gradient = [&](const DiscreteLoop& loop) { return symmetrizer.project(action_gradient(loop, masses, spec)); };

  double action = safe_action(x, masses, spec);
  if (!std::isfinite(action)) throw CollisionSingularity("seed loop has a collision");
  Eigen::MatrixXd grad = gradient(x);
  double grad_norm = grad.norm();

  DiscreteLoop best = x;
  double best_action = action, best_grad = grad_norm;
  DiscreteLoop previous = x;
  double eta = eta0;
  // Largest step known to work; growth beyond it is slow so momentum is not reset every few steps.
  double eta_cap = std::numeric_limits<double>::infinity();
  long momentum_count = 0;
  int restarts = 0;
  long iteration = 0;
  std::deque<double> history{action};
  std::deque<double> grad_history{grad_norm};

  for (; iteration < config.max_iterations && grad_norm >= tolerance; ++iteration) {
    const double beta = config.momentum ? static_cast<double>(momentum_count) / (momentum_count + 3.0) : 0.0;
    DiscreteLoop y = x;
    Eigen::MatrixXd grad_y = grad;
    bool extrapolated = false;
    if (beta > 0) {
      y.coords() += beta * (x.coords() - previous.coords());
      try {
        grad_y = gradient(y);
        extrapolated = true;
      } catch (const CollisionSingularity&) {
        y = x;
        grad_y = grad;
      }
    }

    bool accepted = false;
    bool have_candidate_grad = false;
    Eigen::MatrixXd candidate_grad;
    DiscreteLoop candidate = x;
    double candidate_action = action;
    while (eta > 1e-14 * eta0) {
      candidate.coords() = symmetrizer.project(y.coords() - eta * grad_y);
      candidate.remove_center_of_mass(masses);
      candidate_action = safe_action(candidate, masses, spec);
      if (candidate_action < action) {
        accepted = true;
        break;
      }
      // Below the rounding level of the action only the gradient can still tell progress.
      if (std::isfinite(candidate_action) && candidate_action - action <= kRoundoff * std::abs(action)) {
        candidate_grad = gradient(candidate);
        if (candidate_grad.norm() < grad_norm) {
          accepted = true;
          have_candidate_grad = true;
          break;
        }
      }
      if (extrapolated) {
        y = x;
        grad_y = grad;
        extrapolated = false;
        momentum_count = 0;
        continue;
      }
      eta *= 0.5;
      eta_cap = eta;
    }

    if (accepted) {
      previous = std::move(x);
      x = std::move(candidate);
      action = candidate_action;
      grad = have_candidate_grad ? std::move(candidate_grad) : gradient(x);
      grad_norm = grad.norm();
      eta = std::min(eta * 1.5, eta_cap);
      eta_cap *= 1.005;
      ++momentum_count;
      if (config.observer) config.observer(StepEvent{iteration, restarts, action, grad_norm, &x});
      if (spec.strong_force_epsilon == 0 && x.min_pairwise_distance() < config.collision_distance * x.diameter())
        throw CollisionEncountered("iterate approached a collision; retry with a strong-force term");
      if (action < best_action - kRoundoff * std::abs(best_action) ||
          (action <= best_action + kRoundoff * std::abs(best_action) && grad_norm < best_grad)) {
        best = x;
        best_action = action;
        best_grad = grad_norm;
      }
    }

    history.push_back(action);
    grad_history.push_back(grad_norm);
    if (static_cast<long>(history.size()) > config.stall_window + 1) {
      history.pop_front();
      grad_history.pop_front();
    }

    if (config.log && config.log_every > 0 && (iteration + 1) % config.log_every == 0)
      *config.log << "iteration " << iteration + 1 << " action " << action << " grad_norm " << grad_norm
                  << " min_distance " << x.min_pairwise_distance() << '\n';

    const bool window_full = static_cast<long>(history.size()) > config.stall_window;
    // Slow action decrease alone is not a stall while the gradient keeps shrinking.
    const bool stalled =
        !accepted || (window_full && history.front() - action < config.stall_threshold * std::abs(action) &&
                      *std::min_element(grad_history.begin(), grad_history.end()) > 0.5 * grad_history.front());
    if (!stalled || grad_norm < tolerance) continue;
    if (restarts >= config.max_restarts) break;

    // Restart from a small random equivariant perturbation of the current iterate.
    ++restarts;
    if (config.log)
      *config.log << "restart " << restarts << " at iteration " << iteration + 1 << (accepted ? " (stall)" : " (no descent)")
                  << " action " << action << " grad_norm " << grad_norm << " eta " << eta << " momentum " << momentum_count << '\n';
    const double size = config.restart_magnitude * x.diameter();
    for (int attempt = 0; attempt < 32; ++attempt) {
      DiscreteLoop trial = x;
      trial.coords() += smooth_random_field(rng, trial.coords().rows(), trial.size(), 6, size);
      trial.coords() = symmetrizer.project(trial.coords());
      trial.remove_center_of_mass(masses);
      const double trial_action = safe_action(trial, masses, spec);
      if (std::isfinite(trial_action) && accepts(trial)) {
        x = std::move(trial);
        action = trial_action;
        break;
      }
    }
    grad = gradient(x);
    grad_norm = grad.norm();
    previous = x;
    momentum_count = 0;
    eta = eta0;
    eta_cap = std::numeric_limits<double>::infinity();
    history.assign(1, action);
    grad_history.assign(1, grad_norm);
  }

  if (grad_norm < tolerance && action <= best_action + kRoundoff * std::abs(best_action)) {
    best = x;
    best_action = action;
    best_grad = grad_norm;
  }

  MinimizationResult result{EquivariantLoop(best, group, 1e-8)};
  result.action = best_action;
  result.grad_norm = best_grad;
  result.min_pairwise_distance = best.min_pairwise_distance();
  result.collision_free = result.min_pairwise_distance >= config.collision_distance * best.diameter();
  result.restarts_used = restarts;
  result.iterations = iteration;
  result.converged = best_grad < tolerance;
  if (!result.converged && config.require_convergence) throw NoConvergence(std::move(result));
  return result;
}

}  // namespace symorbit
