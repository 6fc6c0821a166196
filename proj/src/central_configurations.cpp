#include "symorbit/central_configurations.hpp"

#include <cmath>
#include <functional>

namespace symorbit {

namespace {

constexpr double kPi = 3.14159265358979323846;

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if ((flo > 0) == (fhi > 0)) throw DomainError("root not bracketed");
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

void normalize(Configuration<double>& c, const MassVector& masses, double size) {
  remove_center_of_mass(c, masses);
  c *= size / std::sqrt(moment_of_inertia(c, masses) / masses.sum());
}

bool all_equal(const MassVector& masses) {
  return (masses.array() == masses[0]).all();
}

Configuration<double> polygon(int n) {
  Configuration<double> c(2, n);
  for (int i = 0; i < n; ++i) c.col(i) << std::cos(2 * kPi * i / n), std::sin(2 * kPi * i / n);
  return c;
}

// Difference of the multipliers of two bodies; zero when both accelerate
// towards the center of mass at the same rate along the given directions.
double multiplier_gap(const Configuration<double>& c, const MassVector& masses, const PotentialSpec& spec, int a,
                      int b) {
  const Configuration<double> f = force(c, masses, spec);
  const double la = f.col(a).dot(c.col(a)) / (masses[a] * c.col(a).squaredNorm());
  const double lb = f.col(b).dot(c.col(b)) / (masses[b] * c.col(b).squaredNorm());
  return la - lb;
}

}  // namespace

std::string to_string(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::lagrange_triangle: return "lagrange_triangle";
    case BaselineKind::euler_collinear: return "euler_collinear";
    case BaselineKind::square: return "square";
    case BaselineKind::regular_ngon: return "regular_ngon";
    case BaselineKind::parallelogram: return "parallelogram";
  }
  return "?";
}

BaselineKind parse_baseline_kind(const std::string& name) {
  for (BaselineKind k : {BaselineKind::lagrange_triangle, BaselineKind::euler_collinear, BaselineKind::square,
                         BaselineKind::regular_ngon, BaselineKind::parallelogram})
    if (to_string(k) == name) return k;
  throw InvalidArgument("unknown baseline kind: " + name);
}

Configuration<double> central_configuration(BaselineKind kind, const MassVector& masses, const PotentialSpec& spec,
                                            double size) {
  validate(masses);
  validate(spec);
  if (!(size > 0)) throw InvalidArgument("central configuration size must be positive");
  const int n = static_cast<int>(masses.size());
  Configuration<double> c;
  switch (kind) {
    case BaselineKind::lagrange_triangle:
      if (n != 3) throw ShapeMassMismatch("lagrange_triangle needs three bodies");
      c = polygon(3);
      break;
    case BaselineKind::square:
      if (n != 4 || !all_equal(masses)) throw ShapeMassMismatch("square needs four equal masses");
      c = polygon(4);
      break;
    case BaselineKind::regular_ngon:
      if (n < 2 || !all_equal(masses)) throw ShapeMassMismatch("regular_ngon needs equal masses");
      c = polygon(n);
      break;
    case BaselineKind::euler_collinear: {
      if (n == 4) {
        if (masses[0] != masses[1] || masses[2] != masses[3])
          throw ShapeMassMismatch("four-body euler_collinear needs masses (a, a, b, b)");
        // Bodies 1, 2 at -1, 1 and bodies 3, 4 at -s, s.
        auto place = [&](double s) {
          Configuration<double> e = Configuration<double>::Zero(2, 4);
          e.row(0) << -1, 1, -s, s;
          normalize(e, masses, size);
          return e;
        };
        auto gap = [&](double s) { return multiplier_gap(place(s), masses, spec, 1, 3); };
        return place(bisect(gap, 1e-9, 1 - 1e-9, 1e-15));
      }
      if (n != 3) throw ShapeMassMismatch("euler_collinear needs three or four bodies");
      // Bodies 1, 3, 2 from left to right at 0, s, 1.
      auto place = [&](double s) {
        Configuration<double> e = Configuration<double>::Zero(2, 3);
        e(0, 1) = 1;
        e(0, 2) = s;
        normalize(e, masses, size);
        return e;
      };
      auto gap = [&](double s) {
        const Configuration<double> e = place(s);
        const Configuration<double> f = force(e, masses, spec);
        // Accelerations along the line must be affine in position with slope -lambda.
        const double a0 = f(0, 0) / masses[0], a1 = f(0, 1) / masses[1], a2 = f(0, 2) / masses[2];
        return (a2 - a0) / (e(0, 2) - e(0, 0)) - (a1 - a0) / (e(0, 1) - e(0, 0));
      };
      c = place(bisect(gap, 1e-9, 1 - 1e-9, 1e-15));
      return c;
    }
    case BaselineKind::parallelogram: {
      if (n != 4 || masses[0] != masses[1] || masses[2] != masses[3])
        throw ShapeMassMismatch("parallelogram needs masses (a, a, b, b)");
      auto place = [&](double log_ratio) {
        Configuration<double> p(2, 4);
        const double b = std::exp(log_ratio);
        p << 1, -1, 0, 0, 0, 0, b, -b;
        normalize(p, masses, size);
        return p;
      };
      auto gap = [&](double log_ratio) { return multiplier_gap(place(log_ratio), masses, spec, 0, 2); };
      c = place(bisect(gap, -8, 8, 1e-14));
      return c;
    }
  }
  normalize(c, masses, size);
  return c;
}

double central_multiplier(const Configuration<double>& config, const MassVector& masses, const PotentialSpec& spec) {
  return -force(config, masses, spec).cwiseProduct(config).sum() / moment_of_inertia(config, masses);
}

double central_residual(const Configuration<double>& config, const MassVector& masses, const PotentialSpec& spec) {
  const Configuration<double> f = force(config, masses, spec);
  const double lambda = central_multiplier(config, masses, spec);
  Configuration<double> r = f;
  for (Eigen::Index i = 0; i < config.cols(); ++i) r.col(i) += lambda * masses[i] * config.col(i);
  return r.norm() / f.norm();
}

HomographicBaseline homographic_baseline(BaselineKind kind, const MassVector& masses, const PotentialSpec& spec,
                                         const BaselineOptions& options) {
  if (options.lattice_size < 4) throw InvalidArgument("baseline lattice needs at least 4 nodes");
  if (!(options.period > 0)) throw InvalidArgument("baseline period must be positive");
  const double omega = options.angular_speed.value_or(2 * kPi / options.period);
  if (!(omega > 0)) throw InvalidArgument("angular speed must be positive");
  const double dt = options.period / options.lattice_size;
  const double target =
      options.discrete_balance ? (2 - 2 * std::cos(omega * dt)) / (dt * dt) : omega * omega;

  // The multiplier decreases with size for every attractive power law.
  auto gap = [&](double log_size) {
    return std::log(central_multiplier(central_configuration(kind, masses, spec, std::exp(log_size)), masses, spec)) -
           std::log(target);
  };
  const double size = std::exp(bisect(gap, -20, 20, 1e-14));

  HomographicBaseline b;
  b.kind = kind;
  b.shape = central_configuration(kind, masses, spec, size);
  b.angular_speed = omega;
  b.size = size;
  const int n = static_cast<int>(masses.size());
  Eigen::MatrixXd coords(2 * n, options.lattice_size);
  for (int j = 0; j < options.lattice_size; ++j) {
    const double angle = omega * j * dt;
    Eigen::Matrix2d r;
    r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    Eigen::Map<Configuration<double>>(coords.col(j).data(), 2, n) = r * b.shape;
  }
  b.loop = DiscreteLoop(std::move(coords), options.period);
  b.action = discrete_action(b.loop, masses, spec);
  b.continuous_action =
      options.period * (0.5 * omega * omega * moment_of_inertia(b.shape, masses) + potential(b.shape, masses, spec));
  return b;
}

}  // namespace symorbit
