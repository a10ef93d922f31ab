// Matrix realizations of operators between model spaces.
//
// An OperatorMatrix holds entries[k][j] = <A e_j, e_k> with the codomain
// index first; adjoints are plain conjugate transposes since both bases are
// orthonormal. Rank-one tensors follow the convention (u (x) v) f = <f, v> u,
// i.e. the matrix u * v^H.

#pragma once

#include <utility>

#include "atto/model_space.hpp"

namespace atto {

// Dense matrix of a linear map K_alpha -> K_beta in the two bases.
template <typename Real>
struct OperatorMatrix {
  BasisPtr<Real> domain;
  BasisPtr<Real> codomain;
  MatrixC<Real> entries;

  OperatorMatrix() = default;
  OperatorMatrix(BasisPtr<Real> domain_, BasisPtr<Real> codomain_, MatrixC<Real> entries_)
      : domain(std::move(domain_)), codomain(std::move(codomain_)), entries(std::move(entries_)) {
    if (entries.rows() != codomain->dimension() || entries.cols() != domain->dimension())
      throw ShapeMismatch("operator entries do not match the space dimensions");
    if (!entries.allFinite()) throw NonFiniteValue("non-finite operator entries");
  }

  Real frobenius_norm() const { return entries.norm(); }
};

template <typename Real>
CoeffVector<Real> apply(const OperatorMatrix<Real>& A, const CoeffVector<Real>& f) {
  if (!same_space(A.domain, f.space)) throw SpaceMismatch("operator applied outside its domain");
  return CoeffVector<Real>(A.codomain, A.entries * f.coords);
}

template <typename Real>
OperatorMatrix<Real> adjoint(const OperatorMatrix<Real>& A) {
  return OperatorMatrix<Real>(A.codomain, A.domain, A.entries.adjoint());
}

template <typename Real>
OperatorMatrix<Real> operator+(const OperatorMatrix<Real>& A, const OperatorMatrix<Real>& B) {
  if (!same_space(A.domain, B.domain) || !same_space(A.codomain, B.codomain))
    throw SpaceMismatch("operator sum across spaces");
  return OperatorMatrix<Real>(A.domain, A.codomain, A.entries + B.entries);
}

template <typename Real>
OperatorMatrix<Real> operator-(const OperatorMatrix<Real>& A, const OperatorMatrix<Real>& B) {
  if (!same_space(A.domain, B.domain) || !same_space(A.codomain, B.codomain))
    throw SpaceMismatch("operator difference across spaces");
  return OperatorMatrix<Real>(A.domain, A.codomain, A.entries - B.entries);
}

template <typename Real>
OperatorMatrix<Real> operator*(Complex<Real> scalar, const OperatorMatrix<Real>& A) {
  return OperatorMatrix<Real>(A.domain, A.codomain, scalar * A.entries);
}

// Composition A after B.
template <typename Real>
OperatorMatrix<Real> compose(const OperatorMatrix<Real>& A, const OperatorMatrix<Real>& B) {
  if (!same_space(A.domain, B.codomain)) throw SpaceMismatch("composition across spaces");
  return OperatorMatrix<Real>(B.domain, A.codomain, A.entries * B.entries);
}

// Compressed shift S = P M_z restricted to the space; each column is the
// projection of z e_j.
template <typename Real>
OperatorMatrix<Real> compressed_shift(const BasisPtr<Real>& basis) {
  const Index dim = basis->dimension();
  MatrixC<Real> entries(dim, dim);
  const auto& nodes = basis->grid().nodes();
  for (Index j = 0; j < dim; ++j) {
    const VectorC<Real> shifted = nodes.cwiseProduct(basis->sample_table().row(j).transpose());
    entries.col(j) = project(basis, shifted).coords;
  }
  return OperatorMatrix<Real>(basis, basis, std::move(entries));
}

// (u (x) v) f = <f, v> u with u in the codomain and v in the domain.
template <typename Real>
OperatorMatrix<Real> rank_one(const CoeffVector<Real>& u, const CoeffVector<Real>& v) {
  if (!u.space || !v.space) throw SpaceMismatch("rank-one factors need spaces");
  return OperatorMatrix<Real>(v.space, u.space, u.coords * v.coords.adjoint());
}

// Truncated Toeplitz matrix of a boundary symbol phi sampled on the shared
// grid: entries[k][j] = <phi e_j^alpha, e_k^beta> by quadrature.
template <typename Real, typename Derived>
OperatorMatrix<Real> atto_matrix(const BasisPtr<Real>& domain, const BasisPtr<Real>& codomain,
                                 const Eigen::MatrixBase<Derived>& phi_samples) {
  if (!same_grid(domain, codomain)) throw GridMismatch("domain and codomain grids differ");
  if (phi_samples.size() != domain->grid().node_count())
    throw GridMismatch("symbol samples do not match the grid");
  MatrixC<Real> entries = codomain->sample_table().conjugate() *
                          phi_samples.derived().asDiagonal() *
                          domain->sample_table().transpose() / Real(phi_samples.size());
  return OperatorMatrix<Real>(domain, codomain, std::move(entries));
}

// A symbol split phi = conj(chi) + psi with chi in the domain space and psi
// in the codomain space.
template <typename Real>
struct SymbolPair {
  CoeffVector<Real> chi;  // in K_alpha
  CoeffVector<Real> psi;  // in K_beta

  VectorC<Real> boundary_samples() const {
    if (!same_grid(chi.space, psi.space)) throw GridMismatch("symbol pair grids differ");
    return chi.samples().conjugate() + psi.samples();
  }
};

// Canonical symbol split of an arbitrary boundary symbol:
//
//   chi = P_alpha(conj(phi)),   psi = S_beta P_beta(conj(z) phi).
//
// The truncated Toeplitz matrix of phi and of conj(chi) + psi coincide.
template <typename Real, typename Derived>
SymbolPair<Real> symbol_defect_pair(const BasisPtr<Real>& domain, const BasisPtr<Real>& codomain,
                                    const Eigen::MatrixBase<Derived>& phi_samples) {
  if (!same_grid(domain, codomain)) throw GridMismatch("domain and codomain grids differ");
  if (phi_samples.size() != domain->grid().node_count())
    throw GridMismatch("symbol samples do not match the grid");
  CoeffVector<Real> chi = project(domain, phi_samples.conjugate());
  const VectorC<Real> zbar_phi =
      codomain->grid().nodes().conjugate().cwiseProduct(phi_samples.derived());
  CoeffVector<Real> lifted = project(codomain, zbar_phi);
  CoeffVector<Real> psi = apply(compressed_shift(codomain), lifted);
  return SymbolPair<Real>{std::move(chi), std::move(psi)};
}

// Modified compressed shift S + a (k_0 (x) kt_0).
template <typename Real>
OperatorMatrix<Real> modified_shift(const BasisPtr<Real>& basis, Complex<Real> a) {
  OperatorMatrix<Real> shift = compressed_shift(basis);
  if (a != Complex<Real>(0)) {
    const CoeffVector<Real> k0 = kernel_coeffs(basis, Complex<Real>(0));
    const CoeffVector<Real> kt0 = conjugate_kernel_coeffs(basis, Complex<Real>(0));
    shift.entries += a * k0.coords * kt0.coords.adjoint();
  }
  return shift;
}

// The antilinear sandwich B = C_beta A C_alpha, itself linear. With the
// f |-> C conj(coords) convention the matrix is
// entries(B) = C_cod * conj(entries(A)) * conj(C_dom).
template <typename Real>
OperatorMatrix<Real> conjugate_flip(const OperatorMatrix<Real>& A,
                                    const ConjugationMatrix<Real>& c_dom,
                                    const ConjugationMatrix<Real>& c_cod) {
  if (!same_space(A.domain, c_dom.space) || !same_space(A.codomain, c_cod.space))
    throw SpaceMismatch("conjugations do not match the operator's spaces");
  MatrixC<Real> entries = c_cod.entries * A.entries.conjugate() * c_dom.entries.conjugate();
  return OperatorMatrix<Real>(A.domain, A.codomain, std::move(entries));
}

}  // namespace atto
