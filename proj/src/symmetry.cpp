#include "symorbit/symmetry.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/SVD>

namespace symorbit {

namespace {

constexpr double kPi = 3.14159265358979323846;

// cos(r * pi) with exact values on multiples of 1/2.
double cos_pi(Rational r) {
  Rational m = r.mod(2);
  if (m == Rational(0)) return 1.0;
  if (m == Rational(1)) return -1.0;
  if (m == Rational(1, 2) || m == Rational(3, 2)) return 0.0;
  return std::cos(m.value() * kPi);
}

double sin_pi(Rational r) { return cos_pi(r - Rational(1, 2)); }

bool masses_equal(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); }

}  // namespace

template <class Tag>
Eigen::Matrix2d O2Element<Tag>::matrix() const {
  const double c = cos_pi(shift_);
  const double s = sin_pi(shift_);
  Eigen::Matrix2d m;
  if (det_ > 0)
    m << c, -s, s, c;
  else
    m << c, s, s, -c;
  return m;
}

template <class Tag>
int O2Element<Tag>::order() const {
  if (det_ < 0) return 2;
  if (shift_ == Rational(0)) return 1;
  const std::int64_t p = shift_.num();
  const std::int64_t q2 = 2 * shift_.den();
  return static_cast<int>(q2 / std::gcd(p, q2));
}

template <class Tag>
std::string O2Element<Tag>::str() const {
  if (is_identity()) return "identity";
  return (is_reflection() ? "reflection:" : "rotation:") + angle().str();
}

template class O2Element<SpaceTag>;
template class O2Element<TimeTag>;

// ---------------------------------------------------------------------------

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int v : images_) {
    if (v < 0 || v >= static_cast<int>(images_.size()) || seen[static_cast<std::size_t>(v)])
      throw InvalidArgument("permutation images are not a bijection");
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 0);
  return Permutation(std::move(images));
}

Permutation Permutation::from_cycles(const std::string& text, int n) {
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 0);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ',')) ++pos;
  };
  skip_space();
  while (pos < text.size()) {
    if (text[pos] != '(') throw InvalidArgument("expected '(' in cycle notation: '" + text + "'");
    ++pos;
    std::vector<int> cycle;
    for (;;) {
      skip_space();
      if (pos >= text.size()) throw InvalidArgument("unterminated cycle: '" + text + "'");
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (start == pos) throw InvalidArgument("expected body index in cycle: '" + text + "'");
      int v = std::stoi(text.substr(start, pos - start)) - 1;
      if (v < 0 || v >= n) throw InvalidArgument("body index out of range in cycle: '" + text + "'");
      if (used[static_cast<std::size_t>(v)]) throw InvalidArgument("repeated body index in cycles: '" + text + "'");
      used[static_cast<std::size_t>(v)] = true;
      cycle.push_back(v);
    }
    for (std::size_t k = 0; k < cycle.size(); ++k)
      images[static_cast<std::size_t>(cycle[k])] = cycle[(k + 1) % cycle.size()];
    skip_space();
  }
  return Permutation(std::move(images));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != static_cast<int>(i)) return false;
  return true;
}

int Permutation::order() const {
  int result = 1;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(images_[j])) {
      seen[j] = true;
      ++len;
    }
    result = std::lcm(result, len);
  }
  return result;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
  return Permutation(std::move(inv));
}

std::string Permutation::cycles() const {
  std::ostringstream os;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == static_cast<int>(i)) continue;
    os << '(';
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(images_[j])) {
      seen[j] = true;
      if (j != i) os << ' ';
      os << j + 1;
    }
    os << ')';
  }
  std::string s = os.str();
  return s.empty() ? "()" : s;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw InvalidArgument("composing permutations of different sizes");
  std::vector<int> images(a.images_.size());
  for (std::size_t i = 0; i < images.size(); ++i) images[i] = a(b(static_cast<int>(i)));
  return Permutation(std::move(images));
}

int GroupElement::order() const { return std::lcm(std::lcm(time.order(), space.order()), perm.order()); }

std::string GroupElement::str() const {
  return "[time " + time.str() + ", space " + space.str() + ", perm " + perm.cycles() + "]";
}

Eigen::MatrixXd config_action_matrix(const GroupElement& g) {
  const int n = g.perm.size();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  const Eigen::Matrix2d rho = g.space.matrix();
  for (int k = 0; k < n; ++k) a.block<2, 2>(2 * g.perm(k), 2 * k) = rho;
  return a;
}

// ---------------------------------------------------------------------------

SymmetryGroup SymmetryGroup::generate(const std::vector<GroupElement>& generators, const MassVector& masses,
                                      std::size_t max_order) {
  validate(masses);
  const int n = static_cast<int>(masses.size());
  for (const auto& g : generators) {
    if (g.perm.size() != n) throw InvalidArgument("generator permutation size does not match the body count");
    for (int i = 0; i < n; ++i)
      if (!masses_equal(masses[g.perm(i)], masses[i]))
        throw MassIncompatible("generator " + g.str() + " exchanges bodies of unequal mass");
  }
  std::vector<GroupElement> elements{GroupElement::identity(n)};
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const auto& g : generators) {
      GroupElement candidate = g * elements[head];
      if (std::find(elements.begin(), elements.end(), candidate) != elements.end()) continue;
      elements.push_back(std::move(candidate));
      if (elements.size() > max_order)
        throw ClosureOverflow("generated group exceeds the order bound " + std::to_string(max_order));
    }
  }
  return SymmetryGroup(std::move(elements), generators, masses);
}

bool SymmetryGroup::contains(const GroupElement& g) const {
  return std::find(elements_.begin(), elements_.end(), g) != elements_.end();
}

std::vector<TimeAction> SymmetryGroup::time_image() const {
  std::vector<TimeAction> out;
  for (const auto& g : elements_)
    if (std::find(out.begin(), out.end(), g.time) == out.end()) out.push_back(g.time);
  return out;
}

namespace {

bool is_closed(const std::vector<GroupElement>& subset) {
  if (subset.empty()) return false;
  for (const auto& a : subset)
    for (const auto& b : subset)
      if (std::find(subset.begin(), subset.end(), a * b) == subset.end()) return false;
  return true;
}

}  // namespace

SymmetryGroup subgroup_of(const SymmetryGroup& group, std::vector<GroupElement> elements) {
  if (!is_closed(elements)) throw NotASubgroup("subset is not closed under composition");
  std::vector<GroupElement> generators;
  for (const auto& g : elements)
    if (!g.is_identity()) generators.push_back(g);
  return SymmetryGroup(std::move(elements), std::move(generators), group.masses());
}

SymmetryGroup kernel(const SymmetryGroup& group, Component which) {
  std::vector<GroupElement> out;
  for (const auto& g : group.elements()) {
    bool trivial = which == Component::time    ? g.time.is_identity()
                   : which == Component::space ? g.space.is_identity()
                                               : g.perm.is_identity();
    if (trivial) out.push_back(g);
  }
  return subgroup_of(group, std::move(out));
}

SymmetryGroup intersect(const SymmetryGroup& a, const SymmetryGroup& b) {
  std::vector<GroupElement> out;
  for (const auto& g : a.elements())
    if (b.contains(g)) out.push_back(g);
  return subgroup_of(a, std::move(out));
}

Eigen::MatrixXd fixed_config_projector(const std::vector<GroupElement>& subset, int n, const MassVector& masses) {
  if (!is_closed(subset)) throw NotASubgroup("subset is not closed under composition");
  const Eigen::Index dim = 2 * n;
  Eigen::MatrixXd avg = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& h : subset) avg += config_action_matrix(h);
  avg /= static_cast<double>(subset.size());

  Eigen::MatrixXd com = Eigen::MatrixXd::Identity(dim, dim);
  const double total = masses.sum();
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) com.block<2, 2>(2 * i, 2 * k) -= (masses[k] / total) * Eigen::Matrix2d::Identity();
  return com * avg;
}

Eigen::MatrixXd fixed_config_subspace(const std::vector<GroupElement>& subset, int n, const MassVector& masses) {
  const Eigen::MatrixXd p = fixed_config_projector(subset, n, masses);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(p, Eigen::ComputeFullU);
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k)
    if (svd.singularValues()[k] > 1e-10) ++rank;
  return svd.matrixU().leftCols(rank);
}

bool is_coercive(const SymmetryGroup& group) {
  return fixed_config_subspace(group.elements(), group.bodies(), group.masses()).cols() == 0;
}

DegeneracyReport degeneracy_report(const SymmetryGroup& group) {
  DegeneracyReport r;
  const SymmetryGroup ker_tau = kernel(group, Component::time);
  const SymmetryGroup ker_rho = kernel(group, Component::space);
  const SymmetryGroup ker_sigma = kernel(group, Component::perm);

  const SymmetryGroup tau_rho = intersect(ker_tau, ker_rho);
  const SymmetryGroup tau_sigma = intersect(ker_tau, ker_sigma);
  const SymmetryGroup rho_sigma = intersect(ker_rho, ker_sigma);
  r.triple_kernel_trivial = intersect(tau_rho, ker_sigma).order() == 1;
  r.ker_tau_ker_rho_trivial = tau_rho.order() == 1;
  r.ker_tau_ker_sigma_trivial = tau_sigma.order() == 1;
  r.ker_rho_ker_sigma_order = static_cast<int>(rho_sigma.order());
  for (const auto& g : rho_sigma.elements()) {
    if (g.is_identity()) continue;
    if (!g.time.is_reflection()) {
      r.ker_rho_ker_sigma_reflects_time = false;
      if (!g.time.is_identity()) r.multiple_traversal = true;
    }
  }

  // X^{ker tau} is a linear subspace, so it lies in the collision set iff it
  // lies in a single collision subspace x_i = x_j.
  const int n = group.bodies();
  const Eigen::MatrixXd basis = fixed_config_subspace(ker_tau.elements(), n, group.masses());
  if (basis.cols() == 0) {
    r.fixed_time_space_in_collisions = true;
  } else {
    for (int i = 0; i < n && !r.fixed_time_space_in_collisions; ++i)
      for (int j = i + 1; j < n; ++j)
        if ((basis.middleRows(2 * i, 2) - basis.middleRows(2 * j, 2)).norm() < 1e-10) {
          r.fixed_time_space_in_collisions = true;
          break;
        }
  }
  r.coercive = is_coercive(group);
  return r;
}

// ---------------------------------------------------------------------------

namespace {

// Lattice offset s of the time action phi -> d*phi + s*(2pi/N), or nullopt.
std::optional<int> lattice_offset(const TimeAction& tau, int lattice_size) {
  // shift is in units of pi; one lattice step is 2/N in those units.
  const Rational steps = tau.shift() * Rational(lattice_size, 2);
  if (steps.den() != 1) return std::nullopt;
  return static_cast<int>(steps.num() % lattice_size);
}

}  // namespace

bool lattice_compatible(const TimeAction& tau, int lattice_size) {
  return lattice_size > 0 && lattice_offset(tau, lattice_size).has_value();
}

int lattice_image(const TimeAction& tau, int j, int lattice_size) {
  auto s = lattice_offset(tau, lattice_size);
  if (!s) throw LatticeIncompatible("time action " + tau.str() + " does not preserve the " +
                                    std::to_string(lattice_size) + "-point lattice");
  int image = (tau.det() * j + *s) % lattice_size;
  return image < 0 ? image + lattice_size : image;
}

std::vector<int> fixed_times(const GroupElement& element, int lattice_size) {
  if (!element.time.is_reflection()) throw NotAReflection("time action " + element.time.str() + " is not a reflection");
  auto s = lattice_offset(element.time, lattice_size);
  if (!s || lattice_size % 2 != 0 || *s % 2 != 0)
    throw LatticeIncompatible("time reflection " + element.time.str() + " fixes no point of the " +
                              std::to_string(lattice_size) + "-point lattice");
  int a = *s / 2;
  int b = (a + lattice_size / 2) % lattice_size;
  return {std::min(a, b), std::max(a, b)};
}

bool lattice_compatible(const SymmetryGroup& group, int lattice_size) {
  for (const auto& tau : group.time_image()) {
    if (!lattice_compatible(tau, lattice_size)) return false;
    if (tau.is_reflection()) {
      auto s = lattice_offset(tau, lattice_size);
      if (lattice_size % 2 != 0 || *s % 2 != 0) return false;
    }
  }
  return true;
}

int time_group_order(const SymmetryGroup& group) { return static_cast<int>(group.time_image().size()); }

}  // namespace symorbit
