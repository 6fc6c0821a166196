#pragma once

#include <memory>
#include <vector>

#include <Eigen/Core>

#include "symorbit/lagrangian.hpp"
#include "symorbit/symmetry.hpp"

namespace symorbit {

/// Closed piecewise-linear loop of planar configurations on the uniform lattice
/// t_j = j T / N, j = 0..N-1 (node N is node 0).
///
/// Coordinates are stored as a 2n x N matrix; column j holds node j as
/// (x_1, y_1, ..., x_n, y_n), so each column maps onto a 2 x n configuration.
class DiscreteLoop {
 public:
  DiscreteLoop() = default;
  DiscreteLoop(Eigen::MatrixXd coords, double period);

  static DiscreteLoop constant(const Configuration<double>& config, int lattice_size, double period);

  int bodies() const { return static_cast<int>(coords_.rows() / 2); }
  int size() const { return static_cast<int>(coords_.cols()); }
  double period() const { return period_; }
  double time_step() const { return period_ / size(); }

  Eigen::Map<Configuration<double>> node(int j) { return {coords_.col(j).data(), 2, bodies()}; }
  Eigen::Map<const Configuration<double>> node(int j) const { return {coords_.col(j).data(), 2, bodies()}; }

  const Eigen::MatrixXd& coords() const { return coords_; }
  Eigen::MatrixXd& coords() { return coords_; }

  /// Diagonal of the bounding box of every body position on the loop.
  double diameter() const;
  double min_pairwise_distance() const;
  void remove_center_of_mass(const MassVector& masses);

 private:
  Eigen::MatrixXd coords_;
  double period_ = 1.0;
};

using GroupPtr = std::shared_ptr<const SymmetryGroup>;

/// A loop fixed by every element of its group: x(t) = g x(g^{-1} t).
class EquivariantLoop {
 public:
  /// Checks the invariant at tolerance `tol` and throws InvalidArgument otherwise.
  EquivariantLoop(DiscreteLoop loop, GroupPtr group, double tol = 1e-9);

  const DiscreteLoop& loop() const { return loop_; }
  const SymmetryGroup& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }

 private:
  struct Unchecked {};
  EquivariantLoop(DiscreteLoop loop, GroupPtr group, Unchecked) : loop_(std::move(loop)), group_(std::move(group)) {}
  friend class LoopSymmetrizer;

  DiscreteLoop loop_;
  GroupPtr group_;
};

/// The group action on loops, precomputed for one lattice size.
class LoopSymmetrizer {
 public:
  LoopSymmetrizer(GroupPtr group, int lattice_size);

  /// (1/|G|) sum_g g . field, for any loop-shaped 2n x N array.
  Eigen::MatrixXd project(const Eigen::MatrixXd& field) const;
  EquivariantLoop symmetrize(const DiscreteLoop& loop) const;
  /// Largest node-wise deviation between g.x and x over all g.
  double equivariance_defect(const Eigen::MatrixXd& field) const;

  const GroupPtr& group() const { return group_; }
  int lattice_size() const { return lattice_size_; }

 private:
  struct CompiledElement {
    std::vector<int> source;  // source[j] = tau^{-1}(j)
    Eigen::Matrix2d rho;
    std::vector<int> perm;
  };
  void apply(const CompiledElement& e, const Eigen::MatrixXd& in, Eigen::MatrixXd& out) const;

  GroupPtr group_;
  int lattice_size_;
  std::vector<CompiledElement> elements_;
};

/// (g . x)(t_j), body sigma(k) = rho(g) x_k(tau(g)^{-1} t_j).
DiscreteLoop act_on_loop(const GroupElement& g, const DiscreteLoop& loop);
EquivariantLoop symmetrize(const DiscreteLoop& loop, GroupPtr group);
bool is_equivariant(const DiscreteLoop& loop, const SymmetryGroup& group, double tol = 1e-9);

/// Exact kinetic energy of the PL interpolant plus the trapezoid rule for the potential.
double discrete_action(const DiscreteLoop& loop, const MassVector& masses, const PotentialSpec& spec);

/// Gradient of discrete_action with respect to every node coordinate, projected
/// node-wise onto the tangent space of sum m_i x_i = 0.
Eigen::MatrixXd action_gradient(const DiscreteLoop& loop, const MassVector& masses, const PotentialSpec& spec);

/// Piecewise-linear path on the fundamental arc between the fixed times of two time reflections.
struct BolzaPath {
  Eigen::MatrixXd nodes;  // 2n x (M+1)
  double time_step = 0;
  Eigen::MatrixXd start_basis;  // orthonormal columns spanning the allowed start configurations
  Eigen::MatrixXd end_basis;
  int start_index = 0;  // lattice index of the first node on the unfolded loop

  int segments() const { return static_cast<int>(nodes.cols()) - 1; }
  Eigen::Map<const Configuration<double>> node(int k) const {
    return {nodes.col(k).data(), 2, static_cast<Eigen::Index>(nodes.rows() / 2)};
  }
  /// Distance of the endpoints from their subspaces.
  double endpoint_defect() const;
};

/// Action of a path with the same quadrature as discrete_action.
double path_action(const BolzaPath& path, const MassVector& masses, const PotentialSpec& spec);

BolzaPath fold_to_bolza(const EquivariantLoop& loop, const GroupElement& h1, const GroupElement& h2);
EquivariantLoop unfold_from_bolza(const BolzaPath& path, GroupPtr group, const GroupElement& h1,
                                  const GroupElement& h2);

/// Linear interpolation onto a lattice of `new_size` points.
DiscreteLoop resample(const DiscreteLoop& loop, int new_size, const MassVector& masses);

/// Sum of doubles by recursive halving; the result depends only on the order of the input.
double pairwise_sum(const double* values, std::size_t count);

}  // namespace symorbit
