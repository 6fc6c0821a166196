#include "symorbit/scenario.hpp"

#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "symorbit/loop_io.hpp"

namespace symorbit {

namespace {

using Builder = std::function<ScenarioSpec(int)>;

struct Family {
  std::string base;
  bool parameterized = false;
  int preset = 0;
  int minimum = 0;
  Builder build;
};

MassVector masses_of(std::initializer_list<double> values) {
  MassVector m(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) m[i++] = v;
  return m;
}

PlanarIsometry rot_pi() { return PlanarIsometry::rotation(Rational(1)); }
PlanarIsometry line(Rational axis) { return PlanarIsometry::reflection(axis); }

// Two dihedral generators h1, h2 with the given spatial and index parts.
ScenarioSpec dihedral(const std::string& name, const std::string& description, const MassVector& masses,
                      const PlanarIsometry& s1, const std::string& p1, const PlanarIsometry& s2, const std::string& p2,
                      ExpectedVerdict expected) {
  const int n = static_cast<int>(masses.size());
  const Permutation q1 = Permutation::from_cycles(p1, n), q2 = Permutation::from_cycles(p2, n);
  const auto [t1, t2] = dihedral_time_actions(s1, q1, s2, q2);
  ScenarioSpec spec;
  spec.name = name;
  spec.description = description;
  spec.masses = masses;
  spec.generators = {GroupElement{t1, s1, q1}, GroupElement{t2, s2, q2}};
  spec.expected = expected;
  return spec;
}

void add_central_factor(ScenarioSpec& spec, const std::string& cycles) {
  spec.generators.push_back(
      GroupElement{TimeAction::identity(), rot_pi(), Permutation::from_cycles(cycles, spec.bodies())});
}

ExpectedVerdict not_coercive() { return {false, std::nullopt}; }
ExpectedVerdict coercive(bool homographic) { return {true, homographic}; }

std::string with_param(const std::string& base, int q) { return base + ":" + std::to_string(q); }

const std::vector<Family>& families() {
  static const std::vector<Family> table = [] {
    std::vector<Family> f;
    const MassVector three = masses_of({1, 1, 1});
    const MassVector two_one = masses_of({1, 1, 2});
    const MassVector four = masses_of({1, 1, 1, 1});
    const MassVector pairs = masses_of({1, 1, 2, 2});

    f.push_back({"3eq-d3-rotations", false, 0, 0, [=](int) {
                   return dihedral("3eq-d3-rotations", "three equal masses, (1 2) and (2 3) both rotations by pi",
                                   three, rot_pi(), "(1 2)", rot_pi(), "(2 3)", coercive(false));
                 }});
    f.push_back({"3eq-eight", false, 0, 0, [=](int) {
                   return dihedral("3eq-eight", "three equal masses, (1 2) reflection, (2 3) rotation by pi", three,
                                   line(0), "(1 2)", rot_pi(), "(2 3)", coercive(false));
                 }});
    f.push_back({"3eq-reflections-same-line", false, 0, 0, [=](int) {
                   return dihedral("3eq-reflections-same-line",
                                   "three equal masses, (1 2) and (2 3) reflections in one line", three, line(0),
                                   "(1 2)", line(0), "(2 3)", coercive(true));
                 }});
    f.push_back({"3eq-reflections-angle", true, 2, 2, [=](int q) {
                   return dihedral(with_param("3eq-reflections-angle", q),
                                   "three equal masses, (1 2) and (2 3) reflections in lines at angle pi/q", three,
                                   line(0), "(1 2)", line(Rational(1, q)), "(2 3)", coercive(true));
                 }});
    f.push_back({"3-2eq-same-perm-rotations", false, 0, 0, [=](int) {
                   return dihedral("3-2eq-same-perm-rotations", "masses (1, 1, m), both (1 2), both rotations by pi",
                                   two_one, rot_pi(), "(1 2)", rot_pi(), "(1 2)", not_coercive());
                 }});
    f.push_back({"3-2eq-same-perm-reflection-rotation", false, 0, 0, [=](int) {
                   return dihedral("3-2eq-same-perm-reflection-rotation",
                                   "masses (1, 1, m), both (1 2), reflection and rotation by pi", two_one, line(0),
                                   "(1 2)", rot_pi(), "(1 2)", not_coercive());
                 }});
    f.push_back({"3-2eq-same-perm-same-line", false, 0, 0, [=](int) {
                   return dihedral("3-2eq-same-perm-same-line", "masses (1, 1, m), both (1 2), reflections in one line",
                                   two_one, line(0), "(1 2)", line(0), "(1 2)", not_coercive());
                 }});
    f.push_back({"3-2eq-same-perm-lines", true, 3, 2, [=](int q) {
                   return dihedral(with_param("3-2eq-same-perm-lines", q),
                                   "masses (1, 1, m), both (1 2), reflections in lines at angle pi/q", two_one, line(0),
                                   "(1 2)", line(Rational(1, q)), "(1 2)", coercive(true));
                 }});
    f.push_back({"3-2eq-fixed-reflection-rotation", false, 0, 0, [=](int) {
                   ScenarioSpec s = dihedral("3-2eq-fixed-reflection-rotation",
                                             "masses (1, 1, 1), () reflection, (1 2) rotation by pi; body 3 kept "
                                             "outside the segment 1-2 at time 0, potential 1/r^1.3",
                                             three, line(0), "()", rot_pi(), "(1 2)", not_coercive());
                   s.ordering = OrderingConstraint{};
                   s.potential.exponent = 1.3;
                   return s;
                 }});
    f.push_back({"3-2eq-fixed-same-line", false, 0, 0, [=](int) {
                   return dihedral("3-2eq-fixed-same-line", "masses (1, 1, m), () and (1 2) reflections in one line",
                                   two_one, line(0), "()", line(0), "(1 2)", not_coercive());
                 }});
    f.push_back({"3-2eq-fixed-orthogonal", false, 0, 0, [=](int) {
                   return dihedral("3-2eq-fixed-orthogonal",
                                   "masses (1, 1, m), () and (1 2) reflections in orthogonal lines", two_one, line(0),
                                   "()", line(Rational(1, 2)), "(1 2)", not_coercive());
                 }});
    f.push_back({"3-2eq-angle", true, 8, 3, [=](int q) {
                   return dihedral(with_param("3-2eq-angle", q),
                                   "masses (1, 1, m), () and (1 2) reflections in lines at angle pi/q", two_one,
                                   line(0), "()", line(Rational(1, q)), "(1 2)", coercive(true));
                 }});
    f.push_back({"4eq-12-1324-rotation", false, 0, 0, [=](int) {
                   return dihedral("4eq-12-1324-rotation", "four equal masses, (1 2) reflection, (1 3)(2 4) rotation",
                                   four, line(0), "(1 2)", rot_pi(), "(1 3)(2 4)", not_coercive());
                 }});
    f.push_back({"4eq-12-1324-quarter", false, 0, 0, [=](int) {
                   return dihedral("4eq-12-1324-quarter",
                                   "four equal masses, (1 2) and (1 3)(2 4) reflections in lines at angle pi/4", four,
                                   line(0), "(1 2)", line(Rational(1, 4)), "(1 3)(2 4)", not_coercive());
                 }});
    f.push_back({"4eq-12-1324-same-line", false, 0, 0, [=](int) {
                   return dihedral("4eq-12-1324-same-line",
                                   "four equal masses, (1 2) and (1 3)(2 4) reflections in one line", four, line(0),
                                   "(1 2)", line(0), "(1 3)(2 4)", coercive(true));
                 }});
    f.push_back({"4eq-1234-1324-reflection-rotation", false, 0, 0, [=](int) {
                   return dihedral("4eq-1234-1324-reflection-rotation",
                                   "four equal masses, (1 2)(3 4) reflection, (1 3)(2 4) rotation", four, line(0),
                                   "(1 2)(3 4)", rot_pi(), "(1 3)(2 4)", not_coercive());
                 }});
    f.push_back({"4eq-1234-1324-rotations", false, 0, 0, [=](int) {
                   return dihedral("4eq-1234-1324-rotations", "four equal masses, (1 2)(3 4) and (1 3)(2 4) rotations",
                                   four, rot_pi(), "(1 2)(3 4)", rot_pi(), "(1 3)(2 4)", not_coercive());
                 }});
    f.push_back({"4eq-1234-1324-same-line", false, 0, 0, [=](int) {
                   return dihedral("4eq-1234-1324-same-line",
                                   "four equal masses, (1 2)(3 4) and (1 3)(2 4) reflections in one line", four,
                                   line(0), "(1 2)(3 4)", line(0), "(1 3)(2 4)", not_coercive());
                 }});
    f.push_back({"4eq-1234-1324-orthogonal", false, 0, 0, [=](int) {
                   return dihedral("4eq-1234-1324-orthogonal",
                                   "four equal masses, (1 2)(3 4) and (1 3)(2 4) reflections in orthogonal lines", four,
                                   line(0), "(1 2)(3 4)", line(Rational(1, 2)), "(1 3)(2 4)", not_coercive());
                 }});
    f.push_back({"4eq-1234-1324-lines", true, 8, 3, [=](int q) {
                   return dihedral(with_param("4eq-1234-1324-lines", q),
                                   "four equal masses, (1 2)(3 4) and (1 3)(2 4) reflections in lines at angle pi/q",
                                   four, line(0), "(1 2)(3 4)", line(Rational(1, q)), "(1 3)(2 4)", coercive(true));
                 }});
    f.push_back({"4-3eq-third", false, 0, 0, [=](int) {
                   return dihedral("4-3eq-third",
                                   "masses (1, 1, 1, m), (1 2) and (1 3) reflections in lines at angle pi/3",
                                   masses_of({1, 1, 1, 2}), line(0), "(1 2)", line(Rational(1, 3)), "(1 3)",
                                   not_coercive());
                 }});
    f.push_back({"4-22eq-pairs-same-line", false, 0, 0, [=](int) {
                   return dihedral("4-22eq-pairs-same-line", "masses (1, 1, m, m), (1 2) and (3 4) reflections in one line",
                                   pairs, line(0), "(1 2)", line(0), "(3 4)", not_coercive());
                 }});
    f.push_back({"4-22eq-pairs-orthogonal", false, 0, 0, [=](int) {
                   return dihedral("4-22eq-pairs-orthogonal",
                                   "masses (1, 1, m, m), (1 2) and (3 4) reflections in orthogonal lines", pairs,
                                   line(0), "(1 2)", line(Rational(1, 2)), "(3 4)", not_coercive());
                 }});
    f.push_back({"4-22eq-pairs-angle", true, 3, 3, [=](int q) {
                   return dihedral(with_param("4-22eq-pairs-angle", q),
                                   "masses (1, 1, m, m), (1 2) and (3 4) reflections in lines at angle pi/q", pairs,
                                   line(0), "(1 2)", line(Rational(1, q)), "(3 4)", coercive(true));
                 }});
    f.push_back({"4-22eq-d3", false, 0, 0, [=](int) {
                   return dihedral("4-22eq-d3",
                                   "masses (1, 1, m, m), (1 2)(3 4) and (1 2) reflections in lines at angle pi/3",
                                   pairs, line(0), "(1 2)(3 4)", line(Rational(1, 3)), "(1 2)", coercive(false));
                 }});
    f.push_back({"4-22eq-mixed-same-line", false, 0, 0, [=](int) {
                   return dihedral("4-22eq-mixed-same-line",
                                   "masses (1, 1, m, m), (1 2)(3 4) and (1 2) reflections in one line", pairs, line(0),
                                   "(1 2)(3 4)", line(0), "(1 2)", not_coercive());
                 }});
    f.push_back({"4-22eq-mixed-orthogonal", false, 0, 0, [=](int) {
                   return dihedral("4-22eq-mixed-orthogonal",
                                   "masses (1, 1, m, m), (1 2)(3 4) and (1 2) reflections in orthogonal lines", pairs,
                                   line(0), "(1 2)(3 4)", line(Rational(1, 2)), "(1 2)", not_coercive());
                 }});
    f.push_back({"4-22eq-both-reflection-rotation", false, 0, 0, [=](int) {
                   return dihedral("4-22eq-both-reflection-rotation",
                                   "masses (1, 1, m, m), both (1 2)(3 4), reflection and rotation by pi", pairs,
                                   line(0), "(1 2)(3 4)", rot_pi(), "(1 2)(3 4)", not_coercive());
                 }});
    f.push_back({"4-22eq-both-lines", true, 3, 3, [=](int q) {
                   return dihedral(with_param("4-22eq-both-lines", q),
                                   "masses (1, 1, m, m), both (1 2)(3 4), reflections in lines at angle pi/q", pairs,
                                   line(0), "(1 2)(3 4)", line(Rational(1, q)), "(1 2)(3 4)", coercive(true));
                 }});
    f.push_back({"4eq-central", true, 4, 2, [=](int q) {
                   ScenarioSpec s = dihedral(
                       with_param("4eq-central", q),
                       "four equal masses, (1 2)(3 4) and (1 3)(2 4) reflections in lines at angle pi/q, "
                       "plus the central symmetry (1 2)(3 4)",
                       four, line(0), "(1 2)(3 4)", line(Rational(1, q)), "(1 3)(2 4)",
                       q > 2 ? coercive(false) : not_coercive());
                   add_central_factor(s, "(1 2)(3 4)");
                   return s;
                 }});
    f.push_back({"4-22eq-central", true, 4, 3, [=](int q) {
                   ScenarioSpec s = dihedral(with_param("4-22eq-central", q),
                                             "masses (1, 1, m, m), (1 2)(3 4) and (1 2) reflections in lines at angle "
                                             "pi/q, plus the central symmetry (1 2)(3 4)",
                                             pairs, line(0), "(1 2)(3 4)", line(Rational(1, q)), "(1 2)",
                                             coercive(false));
                   add_central_factor(s, "(1 2)(3 4)");
                   return s;
                 }});
    f.push_back({"choreo", true, 5, 3, [](int n) {
                   const auto [s1, s2] = choreography_permutations(n);
                   MassVector m = MassVector::Ones(n);
                   return dihedral(with_param("choreo", n), "n equal masses, both generators rotations by pi", m,
                                   rot_pi(), s1.cycles(), rot_pi(), s2.cycles(), coercive(false));
                 }});
    f.push_back({"choreo-bis", true, 5, 3, [](int n) {
                   const auto [s1, s2] = choreography_permutations(n);
                   MassVector m = MassVector::Ones(n);
                   return dihedral(with_param("choreo-bis", n), "n equal masses, rotation by pi and reflection", m,
                                   rot_pi(), s1.cycles(), line(0), s2.cycles(), coercive(false));
                 }});
    return f;
  }();
  return table;
}

template <class Tag>
O2Element<Tag> parse_o2(const std::string& text) {
  if (text == "identity") return O2Element<Tag>::identity();
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InvalidArgument("expected identity, rotation:a or reflection:a");
  const std::string kind = text.substr(0, colon);
  const Rational angle = Rational::parse(text.substr(colon + 1));
  if (kind == "rotation") return O2Element<Tag>::rotation(angle);
  if (kind == "reflection") return O2Element<Tag>::reflection(angle);
  throw InvalidArgument("unknown action kind: " + kind);
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

bool parse_bool(const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw InvalidArgument("expected true or false");
}

}  // namespace

GroupPtr ScenarioSpec::group() const {
  return std::make_shared<const SymmetryGroup>(SymmetryGroup::generate(generators, masses));
}

MinimizerConfig ScenarioSpec::minimizer_config() const {
  MinimizerConfig c;
  c.lattice_size = lattice_size;
  c.period = period;
  c.ordering = ordering;
  c.grad_tolerance = grad_tolerance;
  if (max_iterations) c.max_iterations = *max_iterations;
  if (max_restarts) c.max_restarts = *max_restarts;
  return c;
}

bool operator==(const ScenarioSpec& a, const ScenarioSpec& b) {
  return a.name == b.name && a.description == b.description && a.masses.size() == b.masses.size() &&
         (a.masses.array() == b.masses.array()).all() && a.generators == b.generators && a.potential == b.potential &&
         a.lattice_size == b.lattice_size && a.period == b.period && a.ordering == b.ordering &&
         a.expected == b.expected && a.grad_tolerance == b.grad_tolerance && a.max_iterations == b.max_iterations &&
         a.max_restarts == b.max_restarts;
}

std::pair<Permutation, Permutation> choreography_permutations(int n) {
  if (n % 2 == 0) throw EvenN("choreography permutations need an odd number of bodies");
  if (n < 3) throw InvalidArgument("choreography permutations need at least three bodies");
  std::vector<int> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    const int s1 = ((n - i) % n + n) % n;
    const int s2 = ((n - i + 1) % n + n) % n;
    a[static_cast<std::size_t>(i - 1)] = (s1 == 0 ? n : s1) - 1;
    b[static_cast<std::size_t>(i - 1)] = (s2 == 0 ? n : s2) - 1;
  }
  return {Permutation(a), Permutation(b)};
}

std::pair<TimeAction, TimeAction> dihedral_time_actions(const PlanarIsometry& s1, const Permutation& p1,
                                                        const PlanarIsometry& s2, const Permutation& p2) {
  const int l = std::max(2, std::lcm((s1 * s2).order(), (p1 * p2).order()));
  return {TimeAction::reflection(Rational(0)), TimeAction::reflection(Rational(1, l))};
}

int compatible_lattice_size(const SymmetryGroup& group, int minimum) {
  const int step = time_group_order(group);
  const int m = std::max(step, minimum);
  return (m + step - 1) / step * step;
}

std::vector<CatalogEntry> scenario_catalog() {
  std::vector<CatalogEntry> out;
  for (const Family& f : families()) {
    const ScenarioSpec s = f.build(f.preset);
    out.push_back({s.name, s.description});
    if (f.base == "4eq-central") {
      for (int q : {2, 3}) {
        const ScenarioSpec extra = f.build(q);
        out.push_back({extra.name, extra.description});
      }
    }
  }
  return out;
}

ScenarioSpec build_scenario(const std::string& name_or_path) {
  std::string base = name_or_path;
  std::optional<int> param;
  const auto colon = name_or_path.find(':');
  if (colon != std::string::npos) {
    base = name_or_path.substr(0, colon);
    try {
      std::size_t used = 0;
      param = std::stoi(name_or_path.substr(colon + 1), &used);
      if (used != name_or_path.size() - colon - 1) param.reset();
    } catch (const std::exception&) {
      param.reset();
    }
    if (!param) throw UnknownScenario("bad scenario parameter in " + name_or_path);
  }
  for (const Family& f : families()) {
    if (f.base != base) continue;
    if (f.parameterized != param.has_value() && !(f.parameterized && !param)) break;
    const int q = param.value_or(f.preset);
    if (f.parameterized && q < f.minimum)
      throw UnknownScenario(name_or_path + ": parameter must be at least " + std::to_string(f.minimum));
    ScenarioSpec spec = f.build(q);
    spec.lattice_size = compatible_lattice_size(*spec.group());
    return spec;
  }
  std::ifstream file(name_or_path);
  if (file) return read_scenario(file);
  throw UnknownScenario("unknown scenario: " + name_or_path);
}

void write_scenario(std::ostream& os, const ScenarioSpec& spec) {
  os << "name = " << spec.name << '\n';
  if (!spec.description.empty()) os << "description = " << spec.description << '\n';
  os << "masses =";
  for (Eigen::Index i = 0; i < spec.masses.size(); ++i) os << ' ' << format_double(spec.masses[i]);
  os << '\n';
  os << "exponent = " << format_double(spec.potential.exponent) << '\n';
  os << "strong_force = " << format_double(spec.potential.strong_force_epsilon) << '\n';
  os << "mass_products = " << (spec.potential.use_mass_products ? "true" : "false") << '\n';
  os << "lattice_size = " << spec.lattice_size << '\n';
  os << "period = " << format_double(spec.period) << '\n';
  if (spec.ordering) {
    const OrderingConstraint& o = *spec.ordering;
    os << "ordering = " << o.body + 1 << ' ' << o.first + 1 << ' ' << o.second + 1 << ' ' << o.lattice_index << '\n';
  }
  if (spec.expected) {
    os << "expected_coercive = " << (spec.expected->coercive ? "true" : "false") << '\n';
    if (spec.expected->homographic_possible)
      os << "expected_homographic = " << (*spec.expected->homographic_possible ? "true" : "false") << '\n';
  }
  if (spec.grad_tolerance) os << "grad_tolerance = " << format_double(*spec.grad_tolerance) << '\n';
  if (spec.max_iterations) os << "max_iterations = " << *spec.max_iterations << '\n';
  if (spec.max_restarts) os << "max_restarts = " << *spec.max_restarts << '\n';
  for (const GroupElement& g : spec.generators) {
    os << "\n[generator]\n";
    os << "time = " << g.time.str() << '\n';
    os << "space = " << g.space.str() << '\n';
    os << "perm = " << g.perm.cycles() << '\n';
  }
}

ScenarioSpec read_scenario(std::istream& is) {
  struct PendingGenerator {
    TimeAction time;
    PlanarIsometry space;
    std::string perm = "()";
    int line = 0, perm_column = 1;
  };
  ScenarioSpec spec;
  std::vector<PendingGenerator> pending;
  std::optional<bool> expected_coercive, expected_homographic;
  std::string raw;
  int line_no = 0;
  bool have_masses = false;
  while (std::getline(is, raw)) {
    ++line_no;
    const std::string text = trim(raw);
    if (text.empty() || text[0] == '#') continue;
    const int indent = static_cast<int>(raw.find_first_not_of(" \t")) + 1;
    if (text[0] == '[') {
      if (text != "[generator]") throw ParseError("unknown section " + text, line_no, indent);
      pending.push_back({});
      pending.back().line = line_no;
      continue;
    }
    const auto eq = raw.find('=');
    if (eq == std::string::npos) throw ParseError("expected key = value", line_no, indent);
    const std::string key = trim(raw.substr(0, eq));
    const std::string value = trim(raw.substr(eq + 1));
    const auto value_pos = raw.find_first_not_of(" \t", eq + 1);
    const int value_column = static_cast<int>(value_pos == std::string::npos ? eq + 1 : value_pos) + 1;
    try {
      if (!pending.empty()) {
        PendingGenerator& g = pending.back();
        if (key == "time") g.time = parse_o2<TimeTag>(value);
        else if (key == "space") g.space = parse_o2<SpaceTag>(value);
        else if (key == "perm") {
          g.perm = value;
          g.perm_column = value_column;
        } else throw ParseError("unknown generator key " + key, line_no, indent);
        continue;
      }
      std::istringstream vs(value);
      if (key == "name") spec.name = value;
      else if (key == "description") spec.description = value;
      else if (key == "masses") {
        std::vector<double> m;
        std::string tok;
        while (vs >> tok) m.push_back(std::stod(tok));
        spec.masses = Eigen::Map<MassVector>(m.data(), static_cast<Eigen::Index>(m.size()));
        validate(spec.masses);
        have_masses = true;
      } else if (key == "exponent") spec.potential.exponent = std::stod(value);
      else if (key == "strong_force") spec.potential.strong_force_epsilon = std::stod(value);
      else if (key == "mass_products") spec.potential.use_mass_products = parse_bool(value);
      else if (key == "lattice_size") spec.lattice_size = std::stoi(value);
      else if (key == "period") spec.period = std::stod(value);
      else if (key == "ordering") {
        OrderingConstraint o;
        if (!(vs >> o.body >> o.first >> o.second >> o.lattice_index)) throw InvalidArgument("expected four integers");
        --o.body, --o.first, --o.second;
        spec.ordering = o;
      } else if (key == "expected_coercive") expected_coercive = parse_bool(value);
      else if (key == "expected_homographic") expected_homographic = parse_bool(value);
      else if (key == "grad_tolerance") spec.grad_tolerance = std::stod(value);
      else if (key == "max_iterations") spec.max_iterations = std::stol(value);
      else if (key == "max_restarts") spec.max_restarts = std::stoi(value);
      else throw ParseError("unknown key " + key, line_no, indent);
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(std::string("bad value for ") + key + ": " + e.what(), line_no, value_column);
    }
  }
  if (!have_masses) throw ParseError("missing masses", line_no, 1);
  for (const PendingGenerator& g : pending) {
    try {
      spec.generators.push_back({g.time, g.space, Permutation::from_cycles(g.perm, spec.bodies())});
    } catch (const std::exception& e) {
      throw ParseError(std::string("bad permutation: ") + e.what(), g.line, g.perm_column);
    }
  }
  if (expected_coercive) spec.expected = ExpectedVerdict{*expected_coercive, expected_homographic};
  validate(spec.potential);
  return spec;
}

}  // namespace symorbit
