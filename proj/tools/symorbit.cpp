#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "symorbit/central_configurations.hpp"
#include "symorbit/estimates.hpp"
#include "symorbit/loop_io.hpp"
#include "symorbit/scenario.hpp"
#include "symorbit/verify.hpp"

namespace {

using namespace symorbit;
using nlohmann::ordered_json;

constexpr int kRefused = 1;
constexpr int kInputError = 2;
constexpr double kPi = 3.14159265358979323846;

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::filesystem::path default_output(const std::string& name) {
  std::string file = name;
  for (char& c : file)
    if (c == ':' || c == '/') c = '_';
  const char* dir = std::getenv("SYMORBIT_OUT_DIR");
  return std::filesystem::path(dir && *dir ? dir : ".") / (file + ".dat");
}

void write_plot_script(const std::filesystem::path& data, int bodies) {
  std::filesystem::path script = data;
  script += ".gp";
  std::ofstream os(script);
  if (!os) throw std::runtime_error("cannot write " + script.string());
  os << "set size ratio -1\n"
     << "set key outside\n"
     << "plot for [i=1:" << bodies << "] '" << data.filename().string()
     << "' using (column(2*i)):(column(2*i+1)) with lines title sprintf('body %d', i)\n";
}

std::optional<HomographicBaseline> comparison_baseline(const MassVector& masses, const PotentialSpec& spec, int N,
                                                       double T) {
  const int n = static_cast<int>(masses.size());
  const BaselineKind kind = n == 3 ? BaselineKind::lagrange_triangle
                            : n == 4 && (masses.array() == masses[0]).all() ? BaselineKind::square
                                                                             : BaselineKind::regular_ngon;
  try {
    return homographic_baseline(kind, masses, spec, {N, T, std::nullopt, false});
  } catch (const ShapeMassMismatch&) {
    return std::nullopt;
  }
}

int cmd_list() {
  for (const CatalogEntry& e : scenario_catalog()) {
    const ScenarioSpec s = build_scenario(e.name);
    std::string verdict = "coercive=" + yes_no(s.expected && s.expected->coercive);
    if (s.expected && s.expected->homographic_possible)
      verdict += " homographic=" + std::string(*s.expected->homographic_possible ? "possible" : "excluded");
    std::printf("%-36s %-44s %s\n", e.name.c_str(), verdict.c_str(), e.description.c_str());
  }
  return 0;
}

int cmd_analyze(const std::string& name) {
  const ScenarioSpec s = build_scenario(name);
  const GroupPtr g = s.group();
  const DegeneracyReport r = degeneracy_report(*g);
  std::printf("scenario %s\n", s.name.c_str());
  std::printf("bodies %d, group order %zu, time group order %d, lattice size %d\n", s.bodies(), g->order(),
              time_group_order(*g), s.lattice_size);
  for (std::size_t i = 0; i < s.generators.size(); ++i) {
    const SymmetryGroup cyclic = SymmetryGroup::generate({s.generators[i]}, s.masses);
    const Eigen::MatrixXd basis = fixed_config_subspace(cyclic.elements(), s.bodies(), s.masses);
    std::printf("generator %zu %s, fixed subspace dimension %ld\n", i + 1, s.generators[i].str().c_str(),
                static_cast<long>(basis.cols()));
  }
  std::printf("fixed subspace of the group: dimension %ld\n",
              static_cast<long>(fixed_config_subspace(g->elements(), s.bodies(), s.masses).cols()));
  std::printf("triple kernel trivial = %s\n", yes_no(r.triple_kernel_trivial).c_str());
  std::printf("ker tau ∩ ker rho trivial = %s\n", yes_no(r.ker_tau_ker_rho_trivial).c_str());
  std::printf("ker tau ∩ ker sigma trivial = %s\n", yes_no(r.ker_tau_ker_sigma_trivial).c_str());
  std::printf("ker rho ∩ ker sigma order = %d, reverses time = %s, multiple traversal = %s\n",
              r.ker_rho_ker_sigma_order, yes_no(r.ker_rho_ker_sigma_reflects_time).c_str(),
              yes_no(r.multiple_traversal).c_str());
  std::printf("fixed-time subspace inside collisions = %s\n", yes_no(r.fixed_time_space_in_collisions).c_str());
  std::printf("coercive = %s\n", yes_no(r.coercive).c_str());
  const auto witness = find_rigid_rotation(*g, s.potential);
  if (witness)
    std::printf("rotating %s with labeling %s and winding %d is equivariant\n", to_string(witness->kind).c_str(),
                witness->labeling.cycles().c_str(), witness->winding);
  else
    std::printf("no rotating central configuration is equivariant\n");
  return 0;
}

struct MinimizeArgs {
  std::string scenario;
  std::uint64_t seed = 1;
  double strong_force = -1;
  std::string out;
  int lattice = 0;
  long max_iterations = 0;
  int max_restarts = -1;
  bool verbose = false;
};

int cmd_minimize(const MinimizeArgs& a) {
  ScenarioSpec s = build_scenario(a.scenario);
  if (a.strong_force >= 0) s.potential.strong_force_epsilon = a.strong_force;
  if (a.lattice > 0) s.lattice_size = a.lattice;
  if (a.max_iterations > 0) s.max_iterations = a.max_iterations;
  if (a.max_restarts >= 0) s.max_restarts = a.max_restarts;
  MinimizerConfig config = s.minimizer_config();
  config.rng_seed = a.seed;
  if (a.verbose) config.log = &std::cerr;
  const GroupPtr g = s.group();

  const MinimizationResult result = minimize(g, s.potential, config);

  const std::filesystem::path out = a.out.empty() ? default_output(s.name) : std::filesystem::path(a.out);
  save_loop(out.string(), result.loop.loop(), s.masses);
  write_plot_script(out, s.bodies());

  const ClassificationResult cls = classify(result.loop.loop(), s.masses);
  ordered_json j;
  j["scenario"] = s.name;
  j["output"] = out.string();
  j["action"] = result.action;
  j["grad_norm"] = result.grad_norm;
  j["grad_tolerance"] = config.resolved_grad_tolerance();
  j["converged"] = result.converged;
  j["collision_free"] = result.collision_free;
  j["min_distance"] = result.min_pairwise_distance;
  j["restarts"] = result.restarts_used;
  j["iterations"] = result.iterations;
  j["classification"] = to_string(cls.kind);
  if (const auto b = comparison_baseline(s.masses, s.potential, s.lattice_size, s.period)) {
    j["baseline_kind"] = to_string(b->kind);
    j["baseline_action"] = b->action;
  }
  std::cout << j.dump(2) << '\n';
  return 0;
}

struct EstimateArgs {
  double m = 2;
  double theta = kPi / 8;
  double m_max = -1;
  double theta_max = -1;
  int steps = 1;
  int grid = 40;
  bool report = false;
};

int cmd_estimate(const EstimateArgs& a) {
  DomainScan scan;
  scan.grid = a.grid;
  if (a.report) {
    const DifferenceDiscrepancy d = difference_discrepancy(TestPathParams{a.m, a.theta, 1.0, 0.4, 0.3});
    std::printf("# at ell = 1, r0 = 0.4, c = 0.3: assembled %.12f simplified %.12f rederived %.12f\n", d.assembled,
                d.simplified, d.rederived);
    std::printf("# K12 stated %.12f quadrature %.12f, K3 stated %.12f quadrature %.12f\n", d.k12_stated,
                d.k12_quadrature, d.k3_stated, d.k3_quadrature);
  }
  std::printf("# m theta inf_value member ell r0 c\n");
  const int steps = std::max(1, a.steps);
  const double m_hi = a.m_max > 0 ? a.m_max : a.m;
  const double t_hi = a.theta_max > 0 ? a.theta_max : a.theta;
  for (int i = 0; i < steps; ++i) {
    const double m = steps == 1 ? a.m : a.m + (m_hi - a.m) * i / (steps - 1);
    for (int k = 0; k < steps; ++k) {
      const double theta = steps == 1 ? a.theta : a.theta + (t_hi - a.theta) * k / (steps - 1);
      const DomainResult r = in_domain_D(m, theta, scan);
      std::printf("%.10g %.10g %.12g %d %.10g %.10g %.10g\n", m, theta, r.inf_value, r.member ? 1 : 0, r.best.ell,
                  r.best.r0, r.best.c);
    }
  }
  return 0;
}

int cmd_verify(const std::string& file, double strong_force, double exponent, double tolerance) {
  const LoopRecord rec = load_loop(file);
  PotentialSpec spec;
  spec.strong_force_epsilon = strong_force;
  spec.exponent = exponent;
  VerificationOptions options;
  options.classification_tolerance = tolerance;
  const VerificationReport r = verify_loop(rec.loop, rec.masses, spec, options);
  ordered_json j;
  j["residual"] = r.newton_residual_norm;
  j["periodicity"] = r.integration_blowup ? ordered_json("blowup") : ordered_json(r.periodicity_residual);
  j["classification"] = to_string(r.classification.kind);
  j["min_distance"] = r.min_distance;
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_baseline(const std::string& kind, const std::vector<double>& masses_in, int lattice, double period,
                 double strong_force, bool discrete, const std::string& out) {
  MassVector masses = Eigen::Map<const MassVector>(masses_in.data(), static_cast<Eigen::Index>(masses_in.size()));
  PotentialSpec spec;
  spec.strong_force_epsilon = strong_force;
  const HomographicBaseline b =
      homographic_baseline(parse_baseline_kind(kind), masses, spec, {lattice, period, std::nullopt, discrete});
  if (!out.empty()) {
    save_loop(out, b.loop, masses);
    write_plot_script(out, static_cast<int>(masses.size()));
  }
  ordered_json j;
  j["kind"] = kind;
  j["size"] = b.size;
  j["angular_speed"] = b.angular_speed;
  j["action"] = b.action;
  j["continuous_action"] = b.continuous_action;
  j["newton_residual"] = newton_residual(b.loop, masses, spec).norm;
  std::cout << j.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetric periodic orbits of the planar n-body problem"};
  app.require_subcommand(1);

  app.add_subcommand("list-scenarios", "List catalog scenarios and their expected verdicts");

  std::string analyze_name;
  auto* analyze = app.add_subcommand("analyze", "Report the symmetry group and its degeneracy conditions");
  analyze->add_option("scenario", analyze_name)->required();

  MinimizeArgs min_args;
  auto* min_cmd = app.add_subcommand("minimize", "Minimize the action over equivariant loops");
  min_cmd->add_option("scenario", min_args.scenario)->required();
  min_cmd->add_option("--seed", min_args.seed, "Random seed");
  min_cmd->add_option("--strong-force", min_args.strong_force, "Strong force coefficient");
  min_cmd->add_option("--out", min_args.out, "Output loop file");
  min_cmd->add_option("--lattice", min_args.lattice, "Number of lattice nodes");
  min_cmd->add_option("--max-iterations", min_args.max_iterations);
  min_cmd->add_option("--max-restarts", min_args.max_restarts);
  min_cmd->add_flag("--verbose", min_args.verbose, "Log progress to stderr");

  EstimateArgs est;
  auto* est_cmd = app.add_subcommand("estimate", "Scan the level estimate domain");
  est_cmd->add_option("--m", est.m, "Mass of the third body");
  est_cmd->add_option("--theta", est.theta, "Angle in radians");
  est_cmd->add_option("--m-max", est.m_max);
  est_cmd->add_option("--theta-max", est.theta_max);
  est_cmd->add_option("--steps", est.steps, "Points per axis of the (m, theta) grid");
  est_cmd->add_option("--grid", est.grid, "Grid points per parameter axis of the scan");
  est_cmd->add_flag("--report", est.report, "Print the kinetic-term comparison");

  std::string verify_file;
  double verify_eps = 0, verify_exponent = 1, verify_tol = 1e-3;
  auto* verify_cmd = app.add_subcommand("verify", "Check a loop file");
  verify_cmd->add_option("file", verify_file)->required();
  verify_cmd->add_option("--strong-force", verify_eps);
  verify_cmd->add_option("--exponent", verify_exponent);
  verify_cmd->add_option("--tolerance", verify_tol, "Classification tolerance");

  std::string baseline_kind, baseline_out;
  std::vector<double> baseline_masses{1, 1, 1};
  int baseline_lattice = 240;
  double baseline_period = 2 * kPi, baseline_eps = 0;
  bool baseline_discrete = false;
  auto* base_cmd = app.add_subcommand("baseline", "Rotating central configuration");
  base_cmd->add_option("kind", baseline_kind)->required();
  base_cmd->add_option("--masses", baseline_masses);
  base_cmd->add_option("--lattice", baseline_lattice);
  base_cmd->add_option("--period", baseline_period);
  base_cmd->add_option("--strong-force", baseline_eps);
  base_cmd->add_flag("--discrete", baseline_discrete);
  base_cmd->add_option("--out", baseline_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (app.got_subcommand("list-scenarios")) return cmd_list();
    if (app.got_subcommand(analyze)) return cmd_analyze(analyze_name);
    if (app.got_subcommand(min_cmd)) return cmd_minimize(min_args);
    if (app.got_subcommand(est_cmd)) return cmd_estimate(est);
    if (app.got_subcommand(verify_cmd)) return cmd_verify(verify_file, verify_eps, verify_exponent, verify_tol);
    if (app.got_subcommand(base_cmd))
      return cmd_baseline(baseline_kind, baseline_masses, baseline_lattice, baseline_period, baseline_eps,
                          baseline_discrete, baseline_out);
  } catch (const NotCoercive& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kRefused;
  } catch (const CollisionEncountered& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kRefused;
  } catch (const NoConvergence& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kRefused;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kInputError;
  } catch (const UnknownScenario& e) {
    std::cerr << e.what() << '\n';
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRefused;
  } catch (const std::exception& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kInputError;
  }
  return 0;
}
