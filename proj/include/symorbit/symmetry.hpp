#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "symorbit/lagrangian.hpp"
#include "symorbit/rational.hpp"

namespace symorbit {

struct SpaceTag {};
struct TimeTag {};

/// Finite-order element of O(2) acting on angles by  phi -> det * phi + shift,
/// with the shift an exact rational multiple of pi (kept in [0, 2)).
///
/// A rotation by alpha has det = +1 and shift alpha; the reflection about the
/// line at angle alpha has det = -1 and shift 2 alpha.
template <class Tag>
class O2Element {
 public:
  O2Element() = default;

  static O2Element identity() { return {}; }
  /// Rotation by `angle` (in units of pi).
  static O2Element rotation(Rational angle) { return O2Element(1, angle); }
  /// Reflection about the line through the origin at angle `axis` (in units of pi).
  static O2Element reflection(Rational axis) { return O2Element(-1, axis * Rational(2)); }

  int det() const { return det_; }
  bool is_reflection() const { return det_ < 0; }
  bool is_identity() const { return det_ > 0 && shift_ == Rational(0); }
  Rational shift() const { return shift_; }
  /// Rotation angle, or axis angle for reflections, in units of pi.
  Rational angle() const { return is_reflection() ? (shift_ * Rational(1, 2)).mod(1) : shift_; }

  Eigen::Matrix2d matrix() const;
  int order() const;

  O2Element inverse() const { return O2Element(det_, -(shift_ * Rational(det_))); }

  friend O2Element operator*(const O2Element& a, const O2Element& b) {
    return O2Element(a.det_ * b.det_, a.shift_ + b.shift_ * Rational(a.det_));
  }
  friend bool operator==(const O2Element&, const O2Element&) = default;

  std::string str() const;

 private:
  O2Element(int det, Rational shift) : det_(det), shift_(shift.mod(2)) {}

  int det_ = 1;
  Rational shift_{0};
};

using PlanarIsometry = O2Element<SpaceTag>;
using TimeAction = O2Element<TimeTag>;

/// Bijection of {0, ..., n-1}; composition is functional, (a * b)(i) = a(b(i)).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);
  /// Parses 1-based cycle notation such as "(1 2)(3 4)" or "()".
  static Permutation from_cycles(const std::string& cycles, int n);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& images() const { return images_; }
  bool is_identity() const;
  int order() const;
  Permutation inverse() const;
  std::string cycles() const;

  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

/// The triple (tau(g), rho(g), sigma(g)).
struct GroupElement {
  TimeAction time;
  PlanarIsometry space;
  Permutation perm;

  static GroupElement identity(int n) { return {TimeAction::identity(), PlanarIsometry::identity(), Permutation::identity(n)}; }

  GroupElement inverse() const { return {time.inverse(), space.inverse(), perm.inverse()}; }
  bool is_identity() const { return time.is_identity() && space.is_identity() && perm.is_identity(); }
  int order() const;

  friend GroupElement operator*(const GroupElement& a, const GroupElement& b) {
    return {a.time * b.time, a.space * b.space, a.perm * b.perm};
  }
  friend bool operator==(const GroupElement&, const GroupElement&) = default;

  std::string str() const;
};

/// Acts on configurations: body sigma(k) of the image is rho * (body k).
Eigen::MatrixXd config_action_matrix(const GroupElement& g);

template <typename Derived>
Configuration<double> act_on_config(const GroupElement& g, const Eigen::MatrixBase<Derived>& config) {
  Configuration<double> out(2, config.cols());
  const Eigen::Matrix2d rho = g.space.matrix();
  for (int k = 0; k < g.perm.size(); ++k) out.col(g.perm(k)) = rho * config.col(k);
  return out;
}

inline constexpr std::size_t kDefaultMaxGroupOrder = 1024;

enum class Component { time, space, perm };

/// Finite group acting on time, the plane and body labels, with its mass vector.
class SymmetryGroup {
 public:
  /// Smallest set closed under composition containing the generators and the identity.
  static SymmetryGroup generate(const std::vector<GroupElement>& generators, const MassVector& masses,
                                std::size_t max_order = kDefaultMaxGroupOrder);

  int bodies() const { return n_; }
  const MassVector& masses() const { return masses_; }
  const std::vector<GroupElement>& elements() const { return elements_; }
  const std::vector<GroupElement>& generators() const { return generators_; }
  std::size_t order() const { return elements_.size(); }
  bool contains(const GroupElement& g) const;

  /// Distinct time actions of the elements (the image of tau).
  std::vector<TimeAction> time_image() const;

 private:
  SymmetryGroup(std::vector<GroupElement> elements, std::vector<GroupElement> generators, MassVector masses)
      : n_(static_cast<int>(masses.size())), masses_(std::move(masses)), elements_(std::move(elements)),
        generators_(std::move(generators)) {}

  friend SymmetryGroup subgroup_of(const SymmetryGroup&, std::vector<GroupElement>);

  int n_ = 0;
  MassVector masses_;
  std::vector<GroupElement> elements_;
  std::vector<GroupElement> generators_;
};

/// Subgroup of elements whose selected component is the identity.
SymmetryGroup kernel(const SymmetryGroup& group, Component which);
/// Wraps an already closed subset of `group` (checked).
SymmetryGroup subgroup_of(const SymmetryGroup& group, std::vector<GroupElement> elements);
SymmetryGroup intersect(const SymmetryGroup& a, const SymmetryGroup& b);

/// Orthonormal basis (columns, Euclidean inner product on R^{2n}) of the
/// zero-center-of-mass configurations fixed by every element of `subset`.
Eigen::MatrixXd fixed_config_subspace(const std::vector<GroupElement>& subset, int n, const MassVector& masses);

/// Averaging projector (1/|H|) sum_h A(h) composed with the center-of-mass projection.
Eigen::MatrixXd fixed_config_projector(const std::vector<GroupElement>& subset, int n, const MassVector& masses);

bool is_coercive(const SymmetryGroup& group);

struct DegeneracyReport {
  bool triple_kernel_trivial = false;
  bool ker_tau_ker_rho_trivial = false;
  bool ker_tau_ker_sigma_trivial = false;
  int ker_rho_ker_sigma_order = 0;
  /// Every nontrivial element of ker rho ∩ ker sigma reverses time.
  bool ker_rho_ker_sigma_reflects_time = true;
  /// Some element of ker rho ∩ ker sigma is a nontrivial time rotation: loops are multiply traversed.
  bool multiple_traversal = false;
  bool fixed_time_space_in_collisions = false;
  bool coercive = false;

  bool admissible() const {
    return triple_kernel_trivial && ker_tau_ker_rho_trivial && ker_tau_ker_sigma_trivial &&
           ker_rho_ker_sigma_order <= 2 && ker_rho_ker_sigma_reflects_time && !multiple_traversal &&
           !fixed_time_space_in_collisions && coercive;
  }
};

DegeneracyReport degeneracy_report(const SymmetryGroup& group);

/// Lattice image of index j under the time action, for the N-point lattice t_j = jT/N.
/// Throws LatticeIncompatible when the action does not preserve the lattice.
int lattice_image(const TimeAction& tau, int j, int lattice_size);
bool lattice_compatible(const TimeAction& tau, int lattice_size);
/// Every element maps the lattice to itself and every time reflection fixes two lattice points.
bool lattice_compatible(const SymmetryGroup& group, int lattice_size);

/// The two antipodal lattice indices fixed by a time reflection.
std::vector<int> fixed_times(const GroupElement& element, int lattice_size);

/// Order of the image of tau, i.e. 2l for a faithful dihedral time action.
int time_group_order(const SymmetryGroup& group);

}  // namespace symorbit
