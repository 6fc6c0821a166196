// Acceptance run: one PASS/FAIL line per criterion.
// Exit status is 0 when the failing set equals the --expect-fail list.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "symorbit/estimates.hpp"
#include "symorbit/loop_io.hpp"
#include "symorbit/scenario.hpp"
#include "symorbit/verify.hpp"

using namespace symorbit;

namespace {

const double kPi = oracle::kPi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c, d);
  return buf;
}

Outcome level_estimate_value() {
  const double d = difference({2, kPi / 8, 1, 0.4, 0.3});
  return {std::abs(d - (-0.124390105)) < 1e-6, fmt("difference = %.12f", d)};
}

Outcome domain_membership() {
  const DomainResult r = in_domain_D(2, kPi / 8);
  bool pass = r.member && r.witness && r.inf_value <= -0.12;
  int members = 0;
  for (int i = -2; i <= 2; ++i)
    for (int k = -2; k <= 2; ++k) members += in_domain_D(2 + 0.025 * i, kPi / 8 + 0.025 * k).member;
  pass = pass && members == 25;
  return {pass, fmt("witness value %.6f, %g of 25 grid points are members", r.inf_value, members)};
}

Outcome coercivity_table() {
  int total = 0, matched = 0;
  std::string mismatches;
  for (const CatalogEntry& e : scenario_catalog()) {
    const ScenarioSpec s = build_scenario(e.name);
    const GroupPtr g = s.group();
    ++total;
    bool ok = s.expected && is_coercive(*g) == s.expected->coercive;
    if (ok && s.expected->coercive && s.expected->homographic_possible)
      ok = find_rigid_rotation(*g, s.potential).has_value() == *s.expected->homographic_possible;
    if (ok) ++matched;
    else mismatches += " " + e.name;
  }
  return {total >= 12 && matched == total,
          fmt("%g of %g catalog verdicts match", matched, total) + (mismatches.empty() ? "" : ";" + mismatches)};
}

Outcome gradient_check() {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> mass(0.5, 2.0);
  double worst = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 3;
    MassVector m(n);
    for (int i = 0; i < n; ++i) m[i] = mass(rng);
    const DiscreteLoop x = oracle::random_loop(n, 60, 2 * kPi, m, 1000 + trial);
    const Eigen::MatrixXd g = action_gradient(x, m, {});
    worst = std::max(worst, oracle::relative_error(g, oracle::fd_action_gradient(x, m, {})));
  }
  return {worst < 1e-6, fmt("worst relative error %.3e over 50 loops", worst)};
}

Outcome symmetrization_suite() {
  double idem = 0, invariance = 0, palais = 0, bolza = 0, round_trip = 0;
  int groups = 0;
  std::string unfolded;
  for (const CatalogEntry& e : scenario_catalog()) {
    const ScenarioSpec s = build_scenario(e.name);
    const GroupPtr g = s.group();
    const int size = compatible_lattice_size(*g, 48);
    const LoopSymmetrizer sym(g, size);
    const int arcs = time_group_order(*g);
    ++groups;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const DiscreteLoop x = oracle::random_loop(s.bodies(), size, s.period, s.masses, seed, 0.1);
      const EquivariantLoop once = sym.symmetrize(x);
      const EquivariantLoop twice = sym.symmetrize(once.loop());
      idem = std::max(idem, (once.loop().coords() - twice.loop().coords()).cwiseAbs().maxCoeff());

      const double a = discrete_action(x, s.masses, s.potential);
      for (const GroupElement& h : g->elements())
        invariance = std::max(invariance, std::abs(discrete_action(act_on_loop(h, x), s.masses, s.potential) - a) / a);

      if (once.loop().min_pairwise_distance() < 1e-6) continue;
      const Eigen::MatrixXd grad = action_gradient(once.loop(), s.masses, s.potential);
      palais = std::max(palais, sym.equivariance_defect(grad) / std::max(1.0, grad.cwiseAbs().maxCoeff()));

      try {
        const BolzaPath p = fold_to_bolza(once, s.generators[0], s.generators[1]);
        const double whole = discrete_action(once.loop(), s.masses, s.potential);
        bolza = std::max(bolza, std::abs(arcs * path_action(p, s.masses, s.potential) - whole) / whole);
        const EquivariantLoop back = unfold_from_bolza(p, g, s.generators[0], s.generators[1]);
        round_trip = std::max(round_trip, (back.loop().coords() - once.loop().coords()).cwiseAbs().maxCoeff());
      } catch (const NotAFundamentalDomain&) {
        if (unfolded.find(e.name) == std::string::npos) unfolded += " " + e.name;
      }
    }
  }
  const bool pass = idem < 1e-12 && invariance < 1e-10 && palais < 1e-9 && bolza < 1e-10 && round_trip < 1e-12 &&
                    unfolded.empty();
  std::string detail = fmt("%g groups: idempotence %.1e, invariance %.1e, Palais %.1e", groups, idem, invariance, palais) +
                       fmt(", Bolza %.1e, fold/unfold %.1e", bolza, round_trip);
  if (!unfolded.empty()) detail += "; no fundamental arc for" + unfolded;
  return {pass, detail};
}

MinimizationResult run(const std::string& name, double epsilon) {
  ScenarioSpec s = build_scenario(name);
  s.potential.strong_force_epsilon = epsilon;
  return minimize(s.group(), s.potential, s.minimizer_config());
}

Outcome figure_eight(const MinimizationResult& r) {
  const MassVector m = MassVector::Ones(3);
  PotentialSpec spec;
  spec.strong_force_epsilon = 1e-3;
  const HomographicBaseline lagrange = homographic_baseline(BaselineKind::lagrange_triangle, m, spec);
  const ClassificationResult c = classify(r.loop.loop(), m);
  const bool pass = r.converged && r.collision_free && c.kind == Classification::choreography &&
                    r.action < lagrange.action;
  std::string detail = fmt("converged %g, collision-free %g, action %.6f vs Lagrange baseline %.6f", r.converged,
                           r.collision_free, r.action, lagrange.action);
  return {pass, detail + ", classified " + to_string(c.kind)};
}

Outcome choreography_five() {
  const ScenarioSpec s = build_scenario("choreo:5");
  const MinimizationResult r = run("choreo:5", 1e-3);
  const DiscreteLoop& x = r.loop.loop();
  const int t0 = fixed_times(s.generators[0], x.size())[0];
  const double at_origin = x.node(t0).col(4).norm();
  const ClassificationResult c = classify(x, s.masses);
  const bool pass = r.converged && at_origin < 1e-9 && c.choreography_shift && c.choreography_defect < 1e-3;
  return {pass, fmt("converged %g, |x5(t0)| = %.2e at node %g, choreography defect %.2e", r.converged, at_origin, t0,
                    c.choreography_defect)};
}

Outcome verification_orders() {
  double lo = 10, hi = 0, shoot = 0;
  for (BaselineKind kind : {BaselineKind::lagrange_triangle, BaselineKind::square}) {
    const MassVector m = MassVector::Ones(kind == BaselineKind::square ? 4 : 3);
    double prev = 0;
    for (int n : {120, 240, 480, 960}) {
      BaselineOptions opt;
      opt.lattice_size = n;
      const double norm = newton_residual(homographic_baseline(kind, m, {}, opt).loop, m, {}).norm;
      if (prev > 0) {
        lo = std::min(lo, std::log2(prev / norm));
        hi = std::max(hi, std::log2(prev / norm));
      }
      prev = norm;
    }
    ShootingOptions so;
    so.tolerance = 1e-10;
    shoot = std::max(shoot, shoot_periodicity(homographic_baseline(kind, m, {}).loop, m, {}, so).residual);
  }
  return {lo > 1.8 && hi < 2.2 && shoot < 1e-6, fmt("orders in [%.4f, %.4f], shooting residual %.2e", lo, hi, shoot)};
}

double line_angle(const Configuration<double>& c) {
  const Eigen::Vector2d a = c.col(1) - c.col(0), b = c.col(3) - c.col(2);
  const double cosine = std::abs(a.dot(b)) / (a.norm() * b.norm());
  return std::acos(std::min(1.0, cosine));
}

Outcome two_pairs() {
  const ScenarioSpec s = build_scenario("4-22eq-d3");
  const MinimizationResult r = run("4-22eq-d3", 1e-3);
  const DiscreteLoop& x = r.loop.loop();
  const ClassificationResult c = classify(x, s.masses);
  double parallel = 0, orthogonal = 0;
  for (int j : fixed_times(s.generators[0], x.size())) parallel = std::max(parallel, line_angle(x.node(j)));
  for (int j : fixed_times(s.generators[1], x.size()))
    orthogonal = std::max(orthogonal, std::abs(line_angle(x.node(j)) - kPi / 2));
  const bool pass = r.converged && c.kind == Classification::nontrivial && parallel < 0.05 && orthogonal < 0.05;
  return {pass, fmt("converged %g, action %.6f, angle at h1 times %.2e, distance from pi/2 at h2 times %.2e",
                    r.converged, r.action, parallel, orthogonal) +
                    ", classified " + to_string(c.kind)};
}

Outcome determinism(const MinimizationResult& first) {
  const std::filesystem::path dir = std::filesystem::temp_directory_path();
  const std::filesystem::path a = dir / "symorbit_acceptance_a.dat", b = dir / "symorbit_acceptance_b.dat";
  const MassVector m = MassVector::Ones(3);
  save_loop(a.string(), first.loop.loop(), m);
  save_loop(b.string(), run("3eq-eight", 1e-3).loop.loop(), m);
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream is(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(is), {});
  };
  const std::string x = slurp(a), y = slurp(b);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
  return {!x.empty() && x == y, fmt("two 3eq-eight runs, %g bytes each, identical %g", double(x.size()), x == y)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app("acceptance criteria");
  std::set<int> expect_fail;
  app.add_option("--expect-fail", expect_fail, "Criteria known to fail");
  CLI11_PARSE(app, argc, argv);

  std::set<int> failed;
  auto report = [&](int id, const std::string& title, const Outcome& o) {
    std::cout << "criterion " << id << " " << (o.pass ? "PASS" : "FAIL") << "  " << title << ": " << o.detail << std::endl;
    if (!o.pass) failed.insert(id);
  };
  auto guarded = [](auto&& f) -> Outcome {
    try {
      return f();
    } catch (const std::exception& e) {
      return {false, std::string("exception: ") + e.what()};
    }
  };

  report(1, "level estimate", guarded(level_estimate_value));
  report(2, "domain D", guarded(domain_membership));
  report(3, "coercivity verdicts", guarded(coercivity_table));
  report(4, "gradient", guarded(gradient_check));
  report(5, "symmetrization", guarded(symmetrization_suite));
  std::optional<MinimizationResult> eight;
  report(6, "figure-eight", guarded([&] {
           eight = run("3eq-eight", 1e-3);
           return figure_eight(*eight);
         }));
  report(7, "choreography", guarded(choreography_five));
  report(8, "verification", guarded(verification_orders));
  report(9, "two pairs", guarded(two_pairs));
  report(10, "determinism", guarded([&] {
           if (!eight) throw std::runtime_error("figure-eight run missing");
           return determinism(*eight);
         }));

  if (failed != expect_fail) {
    std::cout << "failing criteria differ from the expected list\n";
    return 1;
  }
  return 0;
}
