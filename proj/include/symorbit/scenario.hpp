#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "symorbit/minimizer.hpp"

namespace symorbit {

struct ExpectedVerdict {
  bool coercive = false;
  /// A rigidly rotating central configuration is equivariant. Only meaningful when coercive.
  std::optional<bool> homographic_possible;

  bool operator==(const ExpectedVerdict&) const = default;
};

struct ScenarioSpec {
  std::string name;
  std::string description;
  MassVector masses;
  std::vector<GroupElement> generators;
  PotentialSpec potential;
  int lattice_size = 240;
  double period = 6.283185307179586;
  std::optional<OrderingConstraint> ordering;
  std::optional<ExpectedVerdict> expected;
  std::optional<double> grad_tolerance;
  std::optional<long> max_iterations;
  std::optional<int> max_restarts;

  int bodies() const { return static_cast<int>(masses.size()); }
  GroupPtr group() const;
  /// Minimizer settings with the scenario's overrides applied.
  MinimizerConfig minimizer_config() const;

  friend bool operator==(const ScenarioSpec& a, const ScenarioSpec& b);
};

/// sigma_1: i -> n - i and sigma_2: i -> n - i + 1 (mod n, 1-based). Throws EvenN.
std::pair<Permutation, Permutation> choreography_permutations(int n);

struct CatalogEntry {
  std::string name;
  std::string description;
};

/// Every named scenario, with parameterized families at their preset parameter.
std::vector<CatalogEntry> scenario_catalog();

/// A catalog name such as "3-2eq-angle:3" or a path to a scenario file.
ScenarioSpec build_scenario(const std::string& name_or_path);

/// Keyed text format: `key = value` lines, one `[generator]` section per generator.
void write_scenario(std::ostream& os, const ScenarioSpec& spec);
ScenarioSpec read_scenario(std::istream& is);

/// Smallest multiple of 2l that is at least `minimum`, with 2l the order of the time image.
int compatible_lattice_size(const SymmetryGroup& group, int minimum = 240);

/// Time actions of the two dihedral generators: reflections about 0 and pi / l,
/// with l the order of the product of the spatial and index parts (at least 2).
std::pair<TimeAction, TimeAction> dihedral_time_actions(const PlanarIsometry& s1, const Permutation& p1,
                                                        const PlanarIsometry& s2, const Permutation& p2);

}  // namespace symorbit
