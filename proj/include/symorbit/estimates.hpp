#pragma once

#include <optional>

#include "symorbit/loopspace.hpp"

namespace symorbit {

/// Comparison path for three bodies with masses (1, 1, m):
///   x1 = l e^{i theta t} + (r0 + c t) e^{i (theta - pi/2) t}
///   x2 = l e^{i theta t} - (r0 + c t) e^{i (theta - pi/2) t}
///   x3 = -(2 l / m) e^{i theta t},   t in [0, 1].
struct TestPathParams {
  double m = 1;
  double theta = 0.5;
  double ell = 1;
  double r0 = 0.5;
  double c = 0.5;

  /// m > 0, 0 < theta < pi/2, ell > r0 > 0, ell > c > 0.
  bool admissible() const;
  void validate() const;
};

struct KineticTerms {
  double k12 = 0;
  double k3 = 0;
};

struct PotentialTerms {
  double u1 = 0;
  double u2 = 0;
  double u3 = 0;
};

struct LevelEstimate {
  double k12 = 0, k3 = 0, u1 = 0, u2 = 0, u3 = 0;
  double path_action = 0;   // A_D = K12 + K3 + U1 + U2 + U3
  double euler_action = 0;  // A_E
  double difference = 0;    // A_D - A_E
};

KineticTerms kinetic_terms(const TestPathParams& p);
/// U1 and U2 are the upper bounds on the 2-3 and 1-3 interaction integrals, U3 the exact 1-2 integral.
PotentialTerms potential_terms(const TestPathParams& p);
/// Action of the Euler solution with body 3 at the center of mass.
double euler_action(double m, double theta);

LevelEstimate level_estimate(const TestPathParams& p);
/// A_D - A_E assembled from the individual terms.
double difference(const TestPathParams& p);
/// The simplified closed form of A_D - A_E, evaluated as written.
double difference_simplified(const TestPathParams& p);

/// The simplified closed form and the assembled terms disagree in the body-3
/// kinetic term. This recomputes both kinetic terms by quadrature of the path's
/// velocities and reports every variant side by side.
struct DifferenceDiscrepancy {
  double assembled = 0;
  double simplified = 0;
  double k12_stated = 0, k3_stated = 0;
  double k12_quadrature = 0, k3_quadrature = 0;
  double rederived = 0;  // quadrature kinetic terms + stated potential terms - A_E
};
DifferenceDiscrepancy difference_discrepancy(const TestPathParams& p);

struct DomainScan {
  double ell_min = 0.05;
  double ell_max = 5.0;
  int grid = 40;
  int refine_steps = 200;
};

struct DomainResult {
  bool member = false;
  double inf_value = 0;
  TestPathParams best;  // minimizing parameters found
  std::optional<TestPathParams> witness;
};

/// Searches inf { A_D - A_E : ell > r0 > 0, ell > c > 0 } over the box; a
/// negative value certifies membership, a nonnegative one only means "not found".
DomainResult in_domain_D(double m, double theta, const DomainScan& scan = {});

/// Samples the comparison path on [0, 1] with `segments` equal steps. The path
/// parameter is mapped onto a time interval of length `duration`.
BolzaPath test_path_loop(const TestPathParams& p, int segments, double duration = 1.0);

}  // namespace symorbit
