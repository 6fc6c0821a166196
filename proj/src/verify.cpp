#include "symorbit/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numeric>

namespace symorbit {

namespace {

constexpr double kPi = 3.14159265358979323846;

using Complex = std::complex<double>;
using ShapeVector = std::vector<Complex>;

Eigen::Matrix2d rotation_matrix(double angle) {
  Eigen::Matrix2d r;
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return r;
}

// Center-of-mass free, unit inertia shape as complex numbers.
ShapeVector normalized_shape(const Configuration<double>& config, const MassVector& masses) {
  Configuration<double> c = config;
  remove_center_of_mass(c, masses);
  const double inertia = moment_of_inertia(c, masses);
  const double scale = inertia > 0 ? 1.0 / std::sqrt(inertia) : 0.0;
  ShapeVector z(static_cast<std::size_t>(c.cols()));
  for (Eigen::Index i = 0; i < c.cols(); ++i) z[static_cast<std::size_t>(i)] = scale * Complex(c(0, i), c(1, i));
  return z;
}

// Procrustes distance between unit shapes: min over rotations of the mass weighted norm.
double procrustes(const ShapeVector& a, const ShapeVector& b, const MassVector& masses, bool conjugate_b) {
  auto bi = [&](std::size_t i) { return conjugate_b ? std::conj(b[i]) : b[i]; };
  Complex overlap = 0;
  for (std::size_t i = 0; i < a.size(); ++i) overlap += masses[static_cast<Eigen::Index>(i)] * std::conj(a[i]) * bi(i);
  // optimal rotation u = conj(overlap) / |overlap|; the residual is summed directly to avoid cancellation
  const Complex u = std::abs(overlap) > 0 ? std::conj(overlap) / std::abs(overlap) : Complex(1);
  double d2 = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d2 += masses[static_cast<Eigen::Index>(i)] * std::norm(a[i] - u * bi(i));
  return std::sqrt(d2);
}

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;

}  // namespace

NewtonResidual newton_residual(const DiscreteLoop& loop, const MassVector& masses, const PotentialSpec& spec) {
  validate(masses);
  if (masses.size() != loop.bodies()) throw InvalidArgument("mass vector does not match the loop");
  const int N = loop.size();
  const int n = loop.bodies();
  const double dt = loop.time_step();
  NewtonResidual r;
  r.per_node.resize(2 * n, N);
  std::vector<double> terms(static_cast<std::size_t>(N));
  for (int j = 0; j < N; ++j) {
    const Configuration<double> f = force(loop.node(j), masses, spec);
    const Eigen::VectorXd accel =
        (loop.coords().col((j + 1) % N) - 2 * loop.coords().col(j) + loop.coords().col((j + N - 1) % N)) / (dt * dt);
    double sum = 0;
    for (int i = 0; i < n; ++i) {
      r.per_node.block<2, 1>(2 * i, j) = masses[i] * accel.segment<2>(2 * i) - f.col(i);
      sum += r.per_node.block<2, 1>(2 * i, j).squaredNorm() / masses[i];
    }
    terms[static_cast<std::size_t>(j)] = sum;
  }
  r.norm = std::sqrt(pairwise_sum(terms.data(), terms.size()) / (static_cast<double>(N) * n));
  return r;
}

Configuration<double> initial_velocity(const DiscreteLoop& loop) {
  static constexpr std::array<double, 4> kCoeff{4.0 / 5, -1.0 / 5, 4.0 / 105, -1.0 / 280};
  const int N = loop.size();
  Configuration<double> v = Configuration<double>::Zero(2, loop.bodies());
  for (int k = 1; k <= 4; ++k)
    v += kCoeff[static_cast<std::size_t>(k - 1)] * (loop.node(k % N) - loop.node(((-k) % N + N) % N));
  return v / loop.time_step();
}

PeriodicityResult shoot_periodicity(const DiscreteLoop& loop, const MassVector& masses, const PotentialSpec& spec,
                                    const ShootingOptions& options) {
  return shoot_periodicity(loop.node(0), initial_velocity(loop), loop.period(), loop.diameter(), masses, spec,
                           options);
}

PeriodicityResult shoot_periodicity(const Configuration<double>& positions, const Configuration<double>& velocities,
                                    double period, double diameter, const MassVector& masses, const PotentialSpec& spec,
                                    const ShootingOptions& options) {
  validate(masses);
  validate(spec);
  if (!(period > 0) || !(diameter > 0)) throw InvalidArgument("shooting needs a positive period and diameter");
  const Eigen::Index n = positions.cols();
  const Eigen::Index half = 2 * n;
  const double threshold = options.collision_distance * diameter;

  Eigen::VectorXd y0(2 * half);
  y0.head(half) = Eigen::Map<const Eigen::VectorXd>(positions.data(), half);
  y0.tail(half) = Eigen::Map<const Eigen::VectorXd>(velocities.data(), half);

  PeriodicityResult result;
  result.min_distance = min_pairwise_distance(positions);

  auto rhs = [&](const Eigen::VectorXd& y) {
    Eigen::VectorXd dy(2 * half);
    dy.head(half) = y.tail(half);
    const Configuration<double> f = force(Eigen::Map<const Configuration<double>>(y.data(), 2, n), masses, spec);
    for (Eigen::Index i = 0; i < n; ++i) dy.segment<2>(half + 2 * i) = f.col(i) / masses[i];
    return dy;
  };

  Eigen::VectorXd y = y0;
  double t = 0;
  double h = period * 1e-4;
  Eigen::VectorXd k1 = rhs(y);
  while (t < period) {
    if (result.steps >= options.max_steps) throw InvalidArgument("shooting exceeded the step limit");
    const bool last = t + h >= period;
    const double step = last ? period - t : h;
    const Eigen::VectorXd k2 = rhs(y + step * (a21 * k1));
    const Eigen::VectorXd k3 = rhs(y + step * (a31 * k1 + a32 * k2));
    const Eigen::VectorXd k4 = rhs(y + step * (a41 * k1 + a42 * k2 + a43 * k3));
    const Eigen::VectorXd k5 = rhs(y + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Eigen::VectorXd k6 = rhs(y + step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Eigen::VectorXd next = y + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Eigen::VectorXd k7 = rhs(next);
    const Eigen::VectorXd err = step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    // error per unit step, so the accumulated error over the period stays near the tolerance
    const Eigen::VectorXd scale = options.tolerance * (step / period) *
                                  (Eigen::VectorXd::Ones(y.size()) + y.cwiseAbs().cwiseMax(next.cwiseAbs()));
    const double ratio = std::sqrt((err.cwiseQuotient(scale)).squaredNorm() / static_cast<double>(y.size()));
    ++result.steps;
    if (ratio <= 1.0) {
      t = last ? period : t + step;
      y = next;
      k1 = k7;
      const double d = min_pairwise_distance(Eigen::Map<const Configuration<double>>(y.data(), 2, n));
      result.min_distance = std::min(result.min_distance, d);
      if (d < threshold) {
        result.blowup = true;
        result.residual = std::numeric_limits<double>::infinity();
        return result;
      }
    }
    const double factor = ratio > 0 ? 0.9 * std::pow(ratio, -0.25) : 5.0;
    h = step * std::clamp(factor, 0.2, 5.0);
  }

  const double omega = 2 * kPi / period;
  double sum = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    sum += masses[i] * ((y.segment<2>(2 * i) - y0.segment<2>(2 * i)).squaredNorm() +
                        ((y.segment<2>(half + 2 * i) - y0.segment<2>(half + 2 * i)) / omega).squaredNorm());
  }
  result.residual = std::sqrt(sum / masses.sum()) / diameter;
  return result;
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::choreography: return "choreography";
    case Classification::homographic: return "homographic";
    case Classification::nontrivial: return "nontrivial";
  }
  return "?";
}

ClassificationResult classify(const DiscreteLoop& loop, const MassVector& masses, double tolerance) {
  validate(masses);
  const int N = loop.size();
  const int n = loop.bodies();
  ClassificationResult result;

  const ShapeVector first = normalized_shape(loop.node(0), masses);
  for (int j = 1; j < N; ++j)
    result.shape_variation =
        std::max(result.shape_variation, procrustes(first, normalized_shape(loop.node(j), masses), masses, false));
  if (result.shape_variation < tolerance) {
    result.kind = Classification::homographic;
    return result;
  }

  const double diameter = loop.diameter();
  result.choreography_defect = std::numeric_limits<double>::infinity();
  if (N % n == 0) {
    for (int k = 1; k < n; ++k) {
      const int s = k * N / n;
      // The cycle is read off node 0 and then checked everywhere.
      std::vector<int> images(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        const Eigen::Vector2d target = loop.node(s).col(i);
        int best = 0;
        for (int b = 1; b < n; ++b)
          if ((loop.node(0).col(b) - target).norm() < (loop.node(0).col(best) - target).norm()) best = b;
        images[static_cast<std::size_t>(i)] = best;
      }
      std::vector<int> sorted = images;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
      const Permutation cycle(images);
      if (cycle.order() != n || cycle.cycles().find(")(") != std::string::npos) continue;
      double defect = 0;
      for (int j = 0; j < N; ++j)
        for (int i = 0; i < n; ++i)
          defect = std::max(defect, (loop.node(j).col(cycle(i)) - loop.node((j + s) % N).col(i)).norm());
      defect /= diameter;
      if (defect < result.choreography_defect) {
        result.choreography_defect = defect;
        if (defect < tolerance) {
          result.choreography_shift = s;
          result.choreography_cycle = cycle;
        }
      }
    }
  }
  result.kind = result.choreography_shift ? Classification::choreography : Classification::nontrivial;
  return result;
}

double shape_distance(const Configuration<double>& a, const Configuration<double>& b, const MassVector& masses,
                      bool allow_reflection) {
  const ShapeVector za = normalized_shape(a, masses), zb = normalized_shape(b, masses);
  double d = procrustes(za, zb, masses, false);
  if (allow_reflection) d = std::min(d, procrustes(za, zb, masses, true));
  return d;
}

double orbit_shape_distance(const DiscreteLoop& a, const DiscreteLoop& b, const MassVector& masses) {
  if (a.bodies() != b.bodies() || a.bodies() != masses.size()) throw InvalidArgument("loops have different body counts");
  const DiscreteLoop bb = b.size() == a.size() ? b : resample(b, a.size(), masses);
  const int N = a.size();
  const int n = a.bodies();
  std::vector<ShapeVector> sa, sb;
  for (int j = 0; j < N; ++j) {
    sa.push_back(normalized_shape(a.node(j), masses));
    sb.push_back(normalized_shape(bb.node(j), masses));
  }
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    bool mass_preserving = true;
    for (int i = 0; i < n; ++i) mass_preserving = mass_preserving && masses[perm[static_cast<std::size_t>(i)]] == masses[i];
    if (!mass_preserving) continue;
    std::vector<ShapeVector> relabeled(sb.size(), ShapeVector(static_cast<std::size_t>(n)));
    for (int j = 0; j < N; ++j)
      for (int i = 0; i < n; ++i)
        relabeled[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
            sb[static_cast<std::size_t>(j)][static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
    for (int direction : {1, -1})
      for (bool mirror : {false, true})
        for (int s = 0; s < N; ++s) {
          double sum = 0;
          for (int j = 0; j < N && sum < best * best * N; ++j) {
            const int k = ((direction * j + s) % N + N) % N;
            const double d = procrustes(sa[static_cast<std::size_t>(j)], relabeled[static_cast<std::size_t>(k)], masses, mirror);
            sum += d * d;
          }
          best = std::min(best, std::sqrt(sum / N));
        }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::optional<RigidRotationWitness> find_rigid_rotation(const SymmetryGroup& group, const PotentialSpec& spec,
                                                        int max_winding) {
  const int n = group.bodies();
  const MassVector& masses = group.masses();
  const auto& generators = group.generators();
  for (const GroupElement& g : generators)
    if (g.time.det() != g.space.det()) return std::nullopt;

  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::optional<RigidRotationWitness> best;
  for (BaselineKind kind : {BaselineKind::lagrange_triangle, BaselineKind::euler_collinear, BaselineKind::square,
                            BaselineKind::parallelogram, BaselineKind::regular_ngon}) {
    std::sort(perm.begin(), perm.end());
    do {
      MassVector relabeled(n);
      for (int i = 0; i < n; ++i) relabeled[i] = masses[perm[static_cast<std::size_t>(i)]];
      Configuration<double> shape;
      try {
        shape = central_configuration(kind, relabeled, spec, 1.0);
      } catch (const ShapeMassMismatch&) {
        continue;
      } catch (const DomainError&) {
        continue;
      }
      Configuration<double> base(2, n);
      for (int i = 0; i < n; ++i) base.col(perm[static_cast<std::size_t>(i)]) = shape.col(i);

      for (int k = -max_winding; k <= max_winding; ++k) {
        if (k == 0) continue;
        // Reflections pin the orientation: R(-k theta pi - 2 phi) A c' = c'.
        double phase = 0;
        for (const GroupElement& g : generators) {
          if (!g.space.is_reflection()) continue;
          const Configuration<double> image = act_on_config(g, base);
          Complex overlap = 0;
          for (int i = 0; i < n; ++i) overlap += masses[i] * std::conj(Complex(image(0, i), image(1, i))) * Complex(base(0, i), base(1, i));
          const double psi = std::arg(overlap);
          phase = 0.5 * (-k * g.time.shift().value() * kPi - psi);
          break;
        }
        const Configuration<double> c = rotation_matrix(phase) * base;
        double residual = 0;
        for (const GroupElement& g : generators) {
          const Configuration<double> image = rotation_matrix(-k * g.time.shift().value() * kPi) * act_on_config(g, c);
          residual = std::max(residual, (image - c).norm() / c.norm());
        }
        if (residual < 1e-8 && (!best || residual < best->residual)) {
          best = RigidRotationWitness{kind, Permutation(perm), k, phase, residual, c};
        }
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (best) return best;
  }
  return best;
}

VerificationReport verify_loop(const DiscreteLoop& loop, const MassVector& masses, const PotentialSpec& spec,
                               const VerificationOptions& options) {
  VerificationReport report;
  report.min_distance = loop.min_pairwise_distance();
  report.newton_residual_norm = newton_residual(loop, masses, spec).norm;
  const PeriodicityResult shot = shoot_periodicity(loop, masses, spec, options.shooting);
  report.periodicity_residual = shot.residual;
  report.integration_blowup = shot.blowup;
  report.classification = classify(loop, masses, options.classification_tolerance);
  return report;
}

MinimizationResult refine(const EquivariantLoop& loop, const PotentialSpec& spec, MinimizerConfig config, int factor) {
  if (factor < 1) throw InvalidArgument("refinement factor must be positive");
  const MassVector& masses = loop.group().masses();
  config.lattice_size = loop.loop().size() * factor;
  config.period = loop.loop().period();
  return minimize(loop.group_ptr(), spec, config, resample(loop.loop(), config.lattice_size, masses));
}

}  // namespace symorbit
