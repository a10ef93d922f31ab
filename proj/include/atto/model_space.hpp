// The model space K_alpha = H^2 (-) alpha H^2 as a concrete inner-product
// space.
//
// Coordinates are taken in the Takenaka-Malmquist basis built from the zero
// list (a_0, ..., a_{n-1}) of alpha, in constructor order:
//
//   e_k(z) = sqrt(1 - |a_k|^2) / (1 - conj(a_k) z) * prod_{j<k} (z - a_j) / (1 - conj(a_j) z)
//
// which is orthonormal in closed form. The L^2 inner product over the unit
// circle is realized by the trapezoid rule on the N-th roots of unity,
//
//   <f, g> = (1/N) sum_i f(z_i) conj(g(z_i)),
//
// which converges geometrically for the rational integrands appearing here
// (all poles stay away from the circle thanks to the zero-modulus cap).
//
// Two kernels are available for each w in the open disk:
//
//   reproducing kernel   k_w(z)  = (1 - conj(alpha(w)) alpha(z)) / (1 - conj(w) z)
//   conjugate kernel     kt_w(z) = (alpha(z) - alpha(w)) / (z - w)
//
// together with the conjugation C f = alpha * conj(z) * conj(f) on |z| = 1,
// an antilinear isometric involution of K_alpha satisfying kt_w = C k_w.
// Antilinear maps are represented throughout by a matrix acting on
// conjugated coordinates: f |-> C * conj(coords(f)).

#pragma once

#include <bit>
#include <memory>
#include <numbers>
#include <utility>

#include "atto/blaschke.hpp"
#include "atto/types.hpp"

namespace atto {

// Uniform quadrature grid: the node_count-th roots of unity, weight 1/N
// each. node_count must be a power of two >= 512.
template <typename Real>
class BoundaryGrid {
 public:
  using C = Complex<Real>;

  explicit BoundaryGrid(Index node_count) {
    if (node_count < 512 || !std::has_single_bit(static_cast<std::uint64_t>(node_count)))
      throw InvalidArgument("node count must be a power of two >= 512");
    nodes_.resize(node_count);
    const Real step = Real(2) * std::numbers::pi_v<Real> / Real(node_count);
    for (Index i = 0; i < node_count; ++i)
      nodes_[i] = std::polar(Real(1), step * Real(i));
  }

  Index node_count() const { return nodes_.size(); }
  const VectorC<Real>& nodes() const { return nodes_; }
  Real weight() const { return Real(1) / Real(nodes_.size()); }

 private:
  VectorC<Real> nodes_;
};

// Default node budget for a space pair (deg_alpha, deg_beta): enough nodes
// that every integrand in the library is resolved to construction accuracy.
inline Index default_node_count(Index deg_alpha, Index deg_beta = 0) {
  const auto wanted = static_cast<std::uint64_t>(64 * (deg_alpha + deg_beta + 4));
  return static_cast<Index>(std::max<std::uint64_t>(512, std::bit_ceil(wanted)));
}

// Trapezoid inner product of two sample vectors living on one grid; linear
// in f, antilinear in g, exact sesquilinearity by construction.
template <typename DerivedF, typename DerivedG>
auto boundary_inner_product(const Eigen::MatrixBase<DerivedF>& f_samples,
                            const Eigen::MatrixBase<DerivedG>& g_samples) {
  if (f_samples.size() != g_samples.size())
    throw GridMismatch("sample vectors live on different grids");
  using Scalar = typename DerivedF::Scalar;
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  return Scalar(g_samples.dot(f_samples)) / Real(f_samples.size());
}

// Orthonormal Takenaka-Malmquist basis of K_alpha with its sampled values on
// a boundary grid. Construction verifies orthonormality through the grid
// Gram matrix; a failure means the grid cannot resolve the basis.
template <typename Real>
class OrthonormalBasis {
 public:
  using C = Complex<Real>;

  OrthonormalBasis(BlaschkeProduct<Real> alpha, std::shared_ptr<const BoundaryGrid<Real>> grid)
      : alpha_(std::move(alpha)), grid_(std::move(grid)) {
    const Index dim = alpha_.degree();
    const Index n_nodes = grid_->node_count();
    table_.resize(dim, n_nodes);
    for (Index i = 0; i < n_nodes; ++i)
      table_.col(i) = basis_values_at(grid_->nodes()[i]);

    MatrixC<Real> gram = table_ * table_.adjoint() / Real(n_nodes);
    gram -= MatrixC<Real>::Identity(dim, dim);
    const Real defect = gram.cwiseAbs().maxCoeff();
    if (defect > kConstructionTol<Real>)
      throw GramTolExceeded("basis Gram matrix off identity; increase quadrature nodes");
  }

  const BlaschkeProduct<Real>& alpha() const { return alpha_; }
  Index dimension() const { return alpha_.degree(); }
  const BoundaryGrid<Real>& grid() const { return *grid_; }
  const std::shared_ptr<const BoundaryGrid<Real>>& grid_ptr() const { return grid_; }

  // Row j holds e_j sampled over the grid.
  const MatrixC<Real>& sample_table() const { return table_; }

  // All basis values at one point of the closed disk, O(dim).
  VectorC<Real> basis_values_at(C z) const {
    if (std::abs(z) > Real(1) + Real(1e-12L))
      throw PointOutsideClosedDisk("basis evaluation outside the closed disk");
    const auto& zeros = alpha_.zeros();
    VectorC<Real> values(dimension());
    C prefix(1);
    for (Index k = 0; k < dimension(); ++k) {
      const C a = zeros[static_cast<std::size_t>(k)];
      const C denom = C(1) - std::conj(a) * z;
      values[k] = std::sqrt(Real(1) - std::norm(a)) / denom * prefix;
      prefix *= (z - a) / denom;
    }
    return values;
  }

 private:
  BlaschkeProduct<Real> alpha_;
  std::shared_ptr<const BoundaryGrid<Real>> grid_;
  MatrixC<Real> table_;
};

template <typename Real>
using BasisPtr = std::shared_ptr<const OrthonormalBasis<Real>>;

// Builds the Takenaka-Malmquist basis on a fresh grid (node_count == 0
// selects the default budget for alpha alone).
template <typename Real>
BasisPtr<Real> tm_basis(BlaschkeProduct<Real> alpha, Index node_count = 0) {
  if (node_count == 0) node_count = default_node_count(alpha.degree());
  auto grid = std::make_shared<const BoundaryGrid<Real>>(node_count);
  return std::make_shared<const OrthonormalBasis<Real>>(std::move(alpha), std::move(grid));
}

template <typename Real>
BasisPtr<Real> tm_basis(BlaschkeProduct<Real> alpha,
                        std::shared_ptr<const BoundaryGrid<Real>> grid) {
  return std::make_shared<const OrthonormalBasis<Real>>(std::move(alpha), std::move(grid));
}

// Two bases on compatible grids for an (alpha, beta) pair, sharing one grid
// sized by the default rule unless overridden.
template <typename Real>
std::pair<BasisPtr<Real>, BasisPtr<Real>> tm_basis_pair(BlaschkeProduct<Real> alpha,
                                                        BlaschkeProduct<Real> beta,
                                                        Index node_count = 0) {
  if (node_count == 0) node_count = default_node_count(alpha.degree(), beta.degree());
  auto grid = std::make_shared<const BoundaryGrid<Real>>(node_count);
  return {std::make_shared<const OrthonormalBasis<Real>>(std::move(alpha), grid),
          std::make_shared<const OrthonormalBasis<Real>>(std::move(beta), grid)};
}

// Same model space and same grid resolution: either literally the same
// object or equal data.
template <typename Real>
bool same_space(const BasisPtr<Real>& a, const BasisPtr<Real>& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->grid().node_count() == b->grid().node_count() &&
         same_product(a->alpha(), b->alpha());
}

template <typename Real>
bool same_grid(const BasisPtr<Real>& a, const BasisPtr<Real>& b) {
  return a && b && a->grid().node_count() == b->grid().node_count();
}

// An element of K_alpha as coordinates in the basis of `space`.
template <typename Real>
struct CoeffVector {
  using C = Complex<Real>;

  BasisPtr<Real> space;
  VectorC<Real> coords;

  CoeffVector() = default;
  CoeffVector(BasisPtr<Real> space_, VectorC<Real> coords_)
      : space(std::move(space_)), coords(std::move(coords_)) {
    if (coords.size() != space->dimension())
      throw ShapeMismatch("coefficient length does not match space dimension");
  }

  Real norm() const { return coords.norm(); }

  // Pointwise value sum_j coords_j e_j(z).
  C eval(C z) const { return space->basis_values_at(z).transpose() * coords; }

  // Samples over the space's grid.
  VectorC<Real> samples() const { return space->sample_table().transpose() * coords; }
};

template <typename Real>
CoeffVector<Real> zero_vector(const BasisPtr<Real>& space) {
  return CoeffVector<Real>(space, VectorC<Real>::Zero(space->dimension()));
}

template <typename Real>
Complex<Real> eval_function(const CoeffVector<Real>& v, Complex<Real> z) {
  return v.eval(z);
}

template <typename Real>
Complex<Real> inner(const CoeffVector<Real>& f, const CoeffVector<Real>& g) {
  if (!same_space(f.space, g.space)) throw SpaceMismatch("inner product across spaces");
  return g.coords.dot(f.coords);
}

template <typename Real>
CoeffVector<Real> operator+(const CoeffVector<Real>& f, const CoeffVector<Real>& g) {
  if (!same_space(f.space, g.space)) throw SpaceMismatch("sum across spaces");
  return CoeffVector<Real>(f.space, f.coords + g.coords);
}

template <typename Real>
CoeffVector<Real> operator-(const CoeffVector<Real>& f, const CoeffVector<Real>& g) {
  if (!same_space(f.space, g.space)) throw SpaceMismatch("difference across spaces");
  return CoeffVector<Real>(f.space, f.coords - g.coords);
}

template <typename Real>
CoeffVector<Real> operator*(Complex<Real> scalar, const CoeffVector<Real>& f) {
  return CoeffVector<Real>(f.space, scalar * f.coords);
}

// Reproducing kernel coordinates: coords_j = conj(e_j(w)), so that
// <f, k_w> = f(w) for every f in the space. Requires |w| < 1 - 1e-9.
template <typename Real>
CoeffVector<Real> kernel_coeffs(const BasisPtr<Real>& basis, Complex<Real> w) {
  if (std::abs(w) >= Real(1) - Real(1e-9L))
    throw PointOnBoundary("kernel point too close to the boundary");
  return CoeffVector<Real>(basis, basis->basis_values_at(w).conjugate());
}

// Orthogonal projection of boundary samples onto the space:
// coords_j = <h, e_j> by quadrature.
template <typename Real, typename Derived>
CoeffVector<Real> project(const BasisPtr<Real>& basis,
                          const Eigen::MatrixBase<Derived>& h_samples) {
  if (h_samples.size() != basis->grid().node_count())
    throw GridMismatch("samples do not match the basis grid");
  VectorC<Real> coords =
      basis->sample_table().conjugate() * h_samples.derived() / Real(h_samples.size());
  return CoeffVector<Real>(basis, std::move(coords));
}

// Conjugate kernel coordinates, by quadrature projection of the closed form
// (alpha(z) - alpha(w)) / (z - w); the grid never touches z = w since
// |w| < 1.
template <typename Real>
CoeffVector<Real> conjugate_kernel_coeffs(const BasisPtr<Real>& basis, Complex<Real> w) {
  if (std::abs(w) >= Real(1) - Real(1e-9L))
    throw PointOnBoundary("kernel point too close to the boundary");
  const auto& nodes = basis->grid().nodes();
  const Complex<Real> alpha_w = basis->alpha()(w);
  VectorC<Real> samples(nodes.size());
  for (Index i = 0; i < nodes.size(); ++i)
    samples[i] = (basis->alpha()(nodes[i]) - alpha_w) / (nodes[i] - w);
  return project(basis, samples);
}

// The conjugation C f = alpha conj(z) conj(f) of K_alpha in matrix form,
// acting as f |-> entries * conj(coords(f)). Unitary, symmetric and
// involutive; all three are verified at construction accuracy.
template <typename Real>
struct ConjugationMatrix {
  BasisPtr<Real> space;
  MatrixC<Real> entries;

  CoeffVector<Real> apply(const CoeffVector<Real>& f) const {
    if (!same_space(space, f.space)) throw SpaceMismatch("conjugation applied across spaces");
    return CoeffVector<Real>(space, entries * f.coords.conjugate());
  }
};

template <typename Real>
ConjugationMatrix<Real> conjugation_matrix(const BasisPtr<Real>& basis) {
  const auto& nodes = basis->grid().nodes();
  VectorC<Real> w(nodes.size());
  for (Index i = 0; i < nodes.size(); ++i)
    w[i] = basis->alpha()(nodes[i]) * std::conj(nodes[i]);

  // C_{kj} = <C e_j, e_k> = (1/N) sum_i w_i conj(e_j(z_i)) conj(e_k(z_i)),
  // symmetric in (j, k) by inspection.
  const MatrixC<Real> conj_table = basis->sample_table().conjugate();
  MatrixC<Real> entries =
      conj_table * w.asDiagonal() * conj_table.transpose() / Real(nodes.size());

  const Index dim = basis->dimension();
  const MatrixC<Real> eye = MatrixC<Real>::Identity(dim, dim);
  const Real unitary = (entries.adjoint() * entries - eye).cwiseAbs().maxCoeff();
  const Real symmetric = (entries - entries.transpose()).cwiseAbs().maxCoeff();
  const Real involutive = (entries * entries.conjugate() - eye).cwiseAbs().maxCoeff();
  if (unitary > kConstructionTol<Real> || symmetric > kConstructionTol<Real> ||
      involutive > kConstructionTol<Real>)
    throw ToleranceExceeded("conjugation matrix failed its invariants; increase quadrature nodes");

  return ConjugationMatrix<Real>{basis, std::move(entries)};
}

}  // namespace atto
