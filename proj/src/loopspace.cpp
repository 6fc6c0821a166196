#include "symorbit/loopspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace symorbit {

double pairwise_sum(const double* values, std::size_t count) {
  if (count <= 8) {
    double s = 0;
    for (std::size_t k = 0; k < count; ++k) s += values[k];
    return s;
  }
  std::size_t half = count / 2;
  return pairwise_sum(values, half) + pairwise_sum(values + half, count - half);
}

// ---------------------------------------------------------------------------

DiscreteLoop::DiscreteLoop(Eigen::MatrixXd coords, double period) : coords_(std::move(coords)), period_(period) {
  if (coords_.rows() < 4 || coords_.rows() % 2 != 0) throw InvalidArgument("loop needs 2n rows with n >= 2");
  if (coords_.cols() < 4) throw InvalidArgument("loop lattice needs at least 4 nodes");
  if (!(period_ > 0)) throw InvalidArgument("loop period must be positive");
}

DiscreteLoop DiscreteLoop::constant(const Configuration<double>& config, int lattice_size, double period) {
  Eigen::Map<const Eigen::VectorXd> flat(config.data(), config.size());
  return DiscreteLoop(flat.replicate(1, lattice_size), period);
}

double DiscreteLoop::diameter() const {
  Eigen::Map<const Eigen::Matrix2Xd> points(coords_.data(), 2, coords_.size() / 2);
  return (points.rowwise().maxCoeff() - points.rowwise().minCoeff()).norm();
}

double DiscreteLoop::min_pairwise_distance() const {
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < size(); ++j) best = std::min(best, symorbit::min_pairwise_distance(node(j)));
  return best;
}

void DiscreteLoop::remove_center_of_mass(const MassVector& masses) {
  for (int j = 0; j < size(); ++j) {
    auto x = node(j);
    symorbit::remove_center_of_mass(x, masses);
  }
}

// ---------------------------------------------------------------------------

EquivariantLoop::EquivariantLoop(DiscreteLoop loop, GroupPtr group, double tol)
    : loop_(std::move(loop)), group_(std::move(group)) {
  if (!group_) throw InvalidArgument("equivariant loop without a group");
  if (group_->bodies() != loop_.bodies()) throw InvalidArgument("loop and group disagree on the body count");
  if (!is_equivariant(loop_, *group_, tol)) throw InvalidArgument("loop is not fixed by its symmetry group");
}

LoopSymmetrizer::LoopSymmetrizer(GroupPtr group, int lattice_size)
    : group_(std::move(group)), lattice_size_(lattice_size) {
  for (const auto& g : group_->elements()) {
    CompiledElement e;
    const TimeAction inv = g.time.inverse();
    e.source.resize(static_cast<std::size_t>(lattice_size));
    for (int j = 0; j < lattice_size; ++j) e.source[static_cast<std::size_t>(j)] = lattice_image(inv, j, lattice_size);
    e.rho = g.space.matrix();
    e.perm = g.perm.images();
    elements_.push_back(std::move(e));
  }
}

void LoopSymmetrizer::apply(const CompiledElement& e, const Eigen::MatrixXd& in, Eigen::MatrixXd& out) const {
  const int n = static_cast<int>(in.rows() / 2);
  for (int j = 0; j < lattice_size_; ++j) {
    const int src = e.source[static_cast<std::size_t>(j)];
    for (int k = 0; k < n; ++k)
      out.block<2, 1>(2 * e.perm[static_cast<std::size_t>(k)], j) = e.rho * in.block<2, 1>(2 * k, src);
  }
}

Eigen::MatrixXd LoopSymmetrizer::project(const Eigen::MatrixXd& field) const {
  if (field.cols() != lattice_size_) throw InvalidArgument("field lattice size differs from the symmetrizer's");
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(field.rows(), field.cols());
  Eigen::MatrixXd image(field.rows(), field.cols());
  for (const auto& e : elements_) {
    apply(e, field, image);
    sum += image;
  }
  return sum / static_cast<double>(elements_.size());
}

EquivariantLoop LoopSymmetrizer::symmetrize(const DiscreteLoop& loop) const {
  return EquivariantLoop(DiscreteLoop(project(loop.coords()), loop.period()), group_, EquivariantLoop::Unchecked{});
}

double LoopSymmetrizer::equivariance_defect(const Eigen::MatrixXd& field) const {
  Eigen::MatrixXd image(field.rows(), field.cols());
  double worst = 0;
  for (const auto& e : elements_) {
    apply(e, field, image);
    worst = std::max(worst, (image - field).colwise().norm().maxCoeff());
  }
  return worst;
}

DiscreteLoop act_on_loop(const GroupElement& g, const DiscreteLoop& loop) {
  const int size = loop.size();
  const TimeAction inv = g.time.inverse();
  DiscreteLoop out = loop;
  for (int j = 0; j < size; ++j) out.node(j) = act_on_config(g, loop.node(lattice_image(inv, j, size)));
  return out;
}

EquivariantLoop symmetrize(const DiscreteLoop& loop, GroupPtr group) {
  return LoopSymmetrizer(std::move(group), loop.size()).symmetrize(loop);
}

bool is_equivariant(const DiscreteLoop& loop, const SymmetryGroup& group, double tol) {
  for (const auto& g : group.elements()) {
    if (!lattice_compatible(g.time, loop.size())) return false;
    DiscreteLoop image = act_on_loop(g, loop);
    if ((image.coords() - loop.coords()).colwise().norm().maxCoeff() > tol) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

namespace {

double segment_kinetic(const Eigen::Ref<const Eigen::VectorXd>& a, const Eigen::Ref<const Eigen::VectorXd>& b,
                       const MassVector& masses, double dt) {
  double k = 0;
  for (Eigen::Index i = 0; i < masses.size(); ++i) k += 0.5 * masses[i] * (b.segment<2>(2 * i) - a.segment<2>(2 * i)).squaredNorm();
  return k / dt;
}

double node_potential(const Eigen::MatrixXd& coords, Eigen::Index j, const MassVector& masses, const PotentialSpec& spec) {
  Eigen::Map<const Configuration<double>> x(coords.col(j).data(), 2, coords.rows() / 2);
  return potential(x, masses, spec);
}

void project_tangent(Eigen::Ref<Eigen::VectorXd> v, const MassVector& masses) {
  Eigen::Vector2d lambda = Eigen::Vector2d::Zero();
  for (Eigen::Index i = 0; i < masses.size(); ++i) lambda += masses[i] * v.segment<2>(2 * i);
  lambda /= masses.squaredNorm();
  for (Eigen::Index i = 0; i < masses.size(); ++i) v.segment<2>(2 * i) -= masses[i] * lambda;
}

}  // namespace

double discrete_action(const DiscreteLoop& loop, const MassVector& masses, const PotentialSpec& spec) {
  const int size = loop.size();
  const double dt = loop.time_step();
  const Eigen::MatrixXd& c = loop.coords();
  std::vector<double> terms(static_cast<std::size_t>(size));
  for (int j = 0; j < size; ++j) {
    const int next = (j + 1) % size;
    // Periodic trapezoid: each node carries weight dt.
    terms[static_cast<std::size_t>(j)] = segment_kinetic(c.col(j), c.col(next), masses, dt) + dt * node_potential(c, j, masses, spec);
  }
  return pairwise_sum(terms.data(), terms.size());
}

Eigen::MatrixXd action_gradient(const DiscreteLoop& loop, const MassVector& masses, const PotentialSpec& spec) {
  const int size = loop.size();
  const int n = loop.bodies();
  const double dt = loop.time_step();
  const Eigen::MatrixXd& c = loop.coords();
  Eigen::MatrixXd grad(c.rows(), c.cols());
  for (int j = 0; j < size; ++j) {
    const int prev = (j + size - 1) % size;
    const int next = (j + 1) % size;
    const Configuration<double> f = force(loop.node(j), masses, spec);
    for (int i = 0; i < n; ++i)
      grad.block<2, 1>(2 * i, j) = masses[i] * (2 * c.block<2, 1>(2 * i, j) - c.block<2, 1>(2 * i, prev) - c.block<2, 1>(2 * i, next)) / dt + dt * f.col(i);
    project_tangent(grad.col(j), masses);
  }
  return grad;
}

// ---------------------------------------------------------------------------

double BolzaPath::endpoint_defect() const {
  auto defect = [](const Eigen::VectorXd& v, const Eigen::MatrixXd& basis) {
    if (basis.cols() == 0) return v.norm();
    return (v - basis * (basis.transpose() * v)).norm();
  };
  return std::max(defect(nodes.col(0), start_basis), defect(nodes.col(nodes.cols() - 1), end_basis));
}

double path_action(const BolzaPath& path, const MassVector& masses, const PotentialSpec& spec) {
  const int m = path.segments();
  const double dt = path.time_step;
  std::vector<double> terms(static_cast<std::size_t>(m));
  double prev_u = node_potential(path.nodes, 0, masses, spec);
  for (int k = 0; k < m; ++k) {
    const double next_u = node_potential(path.nodes, k + 1, masses, spec);
    terms[static_cast<std::size_t>(k)] = segment_kinetic(path.nodes.col(k), path.nodes.col(k + 1), masses, dt) + 0.5 * dt * (prev_u + next_u);
    prev_u = next_u;
  }
  return pairwise_sum(terms.data(), terms.size());
}

namespace {

// Configurations allowed at lattice time j: those fixed by the stabilizer of j.
Eigen::MatrixXd stabilizer_subspace(const SymmetryGroup& group, int j, int lattice_size) {
  std::vector<GroupElement> stab;
  for (const auto& g : group.elements())
    if (lattice_image(g.time, j, lattice_size) == j) stab.push_back(g);
  return fixed_config_subspace(stab, group.bodies(), group.masses());
}

void check_generator(const SymmetryGroup& group, const GroupElement& h) {
  if (!group.contains(h)) throw NotAFundamentalDomain("element " + h.str() + " is not in the group");
  if (!h.time.is_reflection()) throw NotAFundamentalDomain("element " + h.str() + " is not a time reflection");
}

}  // namespace

BolzaPath fold_to_bolza(const EquivariantLoop& eq, const GroupElement& h1, const GroupElement& h2) {
  const SymmetryGroup& group = eq.group();
  check_generator(group, h1);
  check_generator(group, h2);
  const int size = eq.loop().size();
  const int arcs = time_group_order(group);
  if (size % arcs != 0) throw NotAFundamentalDomain("lattice size is not a multiple of the time group order");
  const int m = size / arcs;

  const auto a_times = fixed_times(h1, size);
  const auto b_times = fixed_times(h2, size);
  for (int a : a_times) {
    for (int b : b_times) {
      if (((b - a) % size + size) % size != m) continue;
      BolzaPath path;
      path.nodes.resize(eq.loop().coords().rows(), m + 1);
      for (int k = 0; k <= m; ++k) path.nodes.col(k) = eq.loop().coords().col((a + k) % size);
      path.time_step = eq.loop().time_step();
      path.start_index = a;
      path.start_basis = stabilizer_subspace(group, a, size);
      path.end_basis = stabilizer_subspace(group, b, size);
      return path;
    }
  }
  throw NotAFundamentalDomain("fixed times of " + h1.str() + " and " + h2.str() + " do not bound a fundamental arc");
}

EquivariantLoop unfold_from_bolza(const BolzaPath& path, GroupPtr group, const GroupElement& h1,
                                  const GroupElement& h2) {
  check_generator(*group, h1);
  check_generator(*group, h2);
  const double scale = std::max(1.0, path.nodes.cwiseAbs().maxCoeff());
  if (path.endpoint_defect() > 1e-9 * scale) throw EndpointViolation("path endpoints leave their fixed subspaces");

  const int m = path.segments();
  const int size = time_group_order(*group) * m;
  Eigen::MatrixXd coords = Eigen::MatrixXd::Zero(path.nodes.rows(), size);
  std::vector<int> hits(static_cast<std::size_t>(size), 0);
  for (const auto& g : group->elements()) {
    for (int k = 0; k <= m; ++k) {
      const int j = lattice_image(g.time, (path.start_index + k) % size, size);
      Eigen::Map<Configuration<double>> target(coords.col(j).data(), 2, group->bodies());
      target += act_on_config(g, path.node(k));
      ++hits[static_cast<std::size_t>(j)];
    }
  }
  for (int j = 0; j < size; ++j) {
    if (hits[static_cast<std::size_t>(j)] == 0) throw NotAFundamentalDomain("path images do not cover the loop");
    coords.col(j) /= hits[static_cast<std::size_t>(j)];
  }
  return EquivariantLoop(DiscreteLoop(std::move(coords), path.time_step * size), std::move(group),
                         1e-9 * scale);
}

DiscreteLoop resample(const DiscreteLoop& loop, int new_size, const MassVector& masses) {
  if (new_size < 4) throw InvalidArgument("resampled lattice needs at least 4 nodes");
  if (new_size == loop.size()) return loop;
  const int size = loop.size();
  Eigen::MatrixXd coords(loop.coords().rows(), new_size);
  for (int j = 0; j < new_size; ++j) {
    const double s = static_cast<double>(j) * size / new_size;
    const int lo = static_cast<int>(std::floor(s));
    const double frac = s - lo;
    coords.col(j) = (1 - frac) * loop.coords().col(lo % size) + frac * loop.coords().col((lo + 1) % size);
  }
  DiscreteLoop out(std::move(coords), loop.period());
  out.remove_center_of_mass(masses);
  return out;
}

}  // namespace symorbit
