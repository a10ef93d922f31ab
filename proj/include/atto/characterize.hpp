// Decision procedures for membership in the truncated-Toeplitz class
// T(alpha, beta) of operators K_alpha -> K_beta.
//
// An operator A lies in the class exactly when one (equivalently, all) of
// the following holds for some psi in K_beta, chi in K_alpha and any choice
// of a, b in C:
//
//   (T1)   A - S_b A S_a^*          = psi (x) k_0^a  + k_0^b (x) chi
//   (C2)   A - S_b^* A S_a          = psi (x) kt_0^a + kt_0^b (x) chi
//   (C3a)  A - S_{b,b} A S_{a,a}^*  = psi (x) k_0^a  + k_0^b (x) chi
//   (C3b)  A - S_{b,b}^* A S_{a,a}  = psi (x) kt_0^a + kt_0^b (x) chi
//   (SI)   <A S f, S g> = <A f, g>  whenever S f and S g stay in the spaces
//
// Each fit-based variant computes its defect matrix, solves the rank-two
// frame fit by minimum-norm least squares and reports the relative Frobenius
// misfit. The fitted pair carries a one-dimensional ambiguity
// (psi, chi) -> (psi - c u, chi + conj(c) v) along the frame directions; it
// is resolved by choosing c = <psi, u> / |u|^2, which zeroes the frame
// component of psi (for the k_0 frames this is exactly psi(0) = 0).

#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "atto/operators.hpp"

namespace atto {

enum class Variant { T1, C2, C3a, C3b, SI };

inline const char* variant_name(Variant v) {
  switch (v) {
    case Variant::T1: return "t1";
    case Variant::C2: return "c2";
    case Variant::C3a: return "c3a";
    case Variant::C3b: return "c3b";
    case Variant::SI: return "si";
  }
  return "?";
}

// Outcome of a membership test: the fitted pair, the relative residual and
// the verdict at the tolerance used. `vacuous` marks a shift-invariance test
// whose constraint set was empty on one side.
template <typename Real>
struct DecompositionResult {
  Variant variant = Variant::T1;
  bool verdict = false;
  Real residual = 0;
  CoeffVector<Real> psi;
  CoeffVector<Real> chi;
  bool vacuous = false;
};

// Forward-shift defect A - S_beta A S_alpha^*.
template <typename Real>
OperatorMatrix<Real> defect_t1(const OperatorMatrix<Real>& A, const OperatorMatrix<Real>& s_beta,
                               const OperatorMatrix<Real>& s_alpha) {
  if (!same_space(s_alpha.domain, A.domain) || !same_space(s_beta.domain, A.codomain))
    throw ShapeMismatch("shift spaces do not match the operator");
  return OperatorMatrix<Real>(A.domain, A.codomain,
                              A.entries - s_beta.entries * A.entries * s_alpha.entries.adjoint());
}

// Backward-shift defect A - S_beta^* A S_alpha.
template <typename Real>
OperatorMatrix<Real> defect_c2(const OperatorMatrix<Real>& A, const OperatorMatrix<Real>& s_beta,
                               const OperatorMatrix<Real>& s_alpha) {
  if (!same_space(s_alpha.domain, A.domain) || !same_space(s_beta.domain, A.codomain))
    throw ShapeMismatch("shift spaces do not match the operator");
  return OperatorMatrix<Real>(A.domain, A.codomain,
                              A.entries - s_beta.entries.adjoint() * A.entries * s_alpha.entries);
}

enum class C3Form { A, B };

// Defects built from the modified shifts S_{alpha,a}, S_{beta,b}.
template <typename Real>
OperatorMatrix<Real> defect_c3(const OperatorMatrix<Real>& A, Complex<Real> a, Complex<Real> b,
                               C3Form form) {
  const OperatorMatrix<Real> sa = modified_shift(A.domain, a);
  const OperatorMatrix<Real> sb = modified_shift(A.codomain, b);
  return form == C3Form::A ? defect_t1(A, sb, sa) : defect_c2(A, sb, sa);
}

// Least-squares fit of a defect D against the rank-two frame template
// psi * frame_dom^H + frame_cod * chi^H. The stacked unknown is
// (psi, conj(chi)); the solve is minimum-norm, then the frame normalization
// above makes the answer unique. `scale` divides the Frobenius misfit
// (callers pass max(1, |A|_F)); `tol` sets the verdict.
template <typename Real>
DecompositionResult<Real> rank2_fit(const OperatorMatrix<Real>& D,
                                    const CoeffVector<Real>& frame_dom,
                                    const CoeffVector<Real>& frame_cod,
                                    Real tol = kMembershipTol<Real>, Real scale = Real(1),
                                    Variant label = Variant::T1) {
  if (!same_space(frame_dom.space, D.domain) || !same_space(frame_cod.space, D.codomain))
    throw SpaceMismatch("fit frames do not match the defect's spaces");
  if (frame_dom.norm() < Real(1e-12L) || frame_cod.norm() < Real(1e-12L))
    throw ZeroFrame("fit frame vector is numerically zero");

  const Index m = D.codomain->dimension();
  const Index n = D.domain->dimension();
  const VectorC<Real>& v = frame_dom.coords;
  const VectorC<Real>& u = frame_cod.coords;

  // Row (k, j): psi_k conj(v_j) + u_k x_j = D_{kj}, with x = conj(chi).
  MatrixC<Real> lsq = MatrixC<Real>::Zero(m * n, m + n);
  VectorC<Real> rhs(m * n);
  for (Index k = 0; k < m; ++k) {
    for (Index j = 0; j < n; ++j) {
      const Index row = k * n + j;
      lsq(row, k) = std::conj(v[j]);
      lsq(row, m + j) = u[k];
      rhs[row] = D.entries(k, j);
    }
  }

  Eigen::JacobiSVD<MatrixC<Real>> svd(lsq, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(Real(1e-12L));
  const VectorC<Real> solution = svd.solve(rhs);

  VectorC<Real> psi = solution.head(m);
  VectorC<Real> chi = solution.tail(n).conjugate();

  // Remove the frame component of psi; the fit value is unchanged.
  const Complex<Real> c = u.dot(psi) / u.squaredNorm();
  psi -= c * u;
  chi += std::conj(c) * v;

  const Real misfit =
      (D.entries - psi * v.adjoint() - u * chi.adjoint()).norm() / scale;

  DecompositionResult<Real> result;
  result.variant = label;
  result.residual = misfit;
  result.verdict = misfit <= tol;
  result.psi = CoeffVector<Real>(D.codomain, std::move(psi));
  result.chi = CoeffVector<Real>(D.domain, std::move(chi));
  return result;
}

// Applies the canonical normalization to an externally produced pair:
// psi loses its k_0^beta component, chi absorbs the compensating k_0^alpha
// term, the represented symbol conj(chi) + psi is unchanged and psi(0) = 0.
template <typename Real>
SymbolPair<Real> normalize_symbol_pair(const SymbolPair<Real>& pair) {
  const CoeffVector<Real> k0_cod = kernel_coeffs(pair.psi.space, Complex<Real>(0));
  const CoeffVector<Real> k0_dom = kernel_coeffs(pair.chi.space, Complex<Real>(0));
  const Complex<Real> c = inner(pair.psi, k0_cod) / k0_cod.coords.squaredNorm();
  return SymbolPair<Real>{pair.chi + std::conj(c) * k0_dom, pair.psi - c * k0_cod};
}

template <typename Real>
DecompositionResult<Real> shift_invariance_test(const OperatorMatrix<Real>& A,
                                                Real tol = kMembershipTol<Real>);

// Membership test through one defect variant. For C3 variants (a, b) select
// the modified shifts; the other variants ignore them.
template <typename Real>
DecompositionResult<Real> membership(const OperatorMatrix<Real>& A, Variant variant,
                                     Real tol = kMembershipTol<Real>,
                                     Complex<Real> a = Complex<Real>(0),
                                     Complex<Real> b = Complex<Real>(0)) {
  if (!same_grid(A.domain, A.codomain)) throw GridMismatch("operator spaces on different grids");
  if (!(tol > Real(0))) throw InvalidArgument("tolerance must be positive");

  if (variant == Variant::SI) return shift_invariance_test(A, tol);

  OperatorMatrix<Real> defect;
  switch (variant) {
    case Variant::T1:
      defect = defect_t1(A, compressed_shift(A.codomain), compressed_shift(A.domain));
      break;
    case Variant::C2:
      defect = defect_c2(A, compressed_shift(A.codomain), compressed_shift(A.domain));
      break;
    case Variant::C3a:
      defect = defect_c3(A, a, b, C3Form::A);
      break;
    case Variant::C3b:
      defect = defect_c3(A, a, b, C3Form::B);
      break;
    default:
      throw InvalidArgument("unknown variant");
  }

  const bool kernel_frames = (variant == Variant::T1 || variant == Variant::C3a);
  const Complex<Real> origin(0);
  const CoeffVector<Real> frame_dom = kernel_frames ? kernel_coeffs(A.domain, origin)
                                                    : conjugate_kernel_coeffs(A.domain, origin);
  const CoeffVector<Real> frame_cod = kernel_frames ? kernel_coeffs(A.codomain, origin)
                                                    : conjugate_kernel_coeffs(A.codomain, origin);
  const Real scale = std::max(Real(1), A.frobenius_norm());
  return rank2_fit(defect, frame_dom, frame_cod, tol, scale, variant);
}

// Orthonormal basis of the subspace { f : z f stays in the space }, which is
// the orthogonal complement of kt_0. Columns of the returned matrix are the
// coordinate vectors; empty for one-dimensional spaces.
template <typename Real>
MatrixC<Real> shift_compatible_basis(const BasisPtr<Real>& basis) {
  const Index dim = basis->dimension();
  if (dim <= 1) return MatrixC<Real>(dim, 0);
  const VectorC<Real> kt0 = conjugate_kernel_coeffs(basis, Complex<Real>(0)).coords;
  Eigen::HouseholderQR<MatrixC<Real>> qr(kt0);
  const MatrixC<Real> q = qr.householderQ();
  return q.rightCols(dim - 1);
}

// Bilinear shift-invariance test: residual is the largest discrepancy
// |<A S f, S g> - <A f, g>| over orthonormal bases of the constrained
// subspaces, relative to max(1, |A|_F). Degenerate (one-dimensional) spaces
// yield an empty constraint set; the verdict is then vacuously true and
// flagged.
template <typename Real>
DecompositionResult<Real> shift_invariance_test(const OperatorMatrix<Real>& A, Real tol) {
  if (!same_grid(A.domain, A.codomain)) throw GridMismatch("operator spaces on different grids");
  const MatrixC<Real> f_basis = shift_compatible_basis(A.domain);
  const MatrixC<Real> g_basis = shift_compatible_basis(A.codomain);

  DecompositionResult<Real> result;
  result.variant = Variant::SI;
  result.psi = zero_vector(A.codomain);
  result.chi = zero_vector(A.domain);

  if (f_basis.cols() == 0 || g_basis.cols() == 0) {
    result.vacuous = true;
    result.verdict = true;
    result.residual = 0;
    return result;
  }

  const auto& nodes = A.domain->grid().nodes();
  auto shift_into = [&nodes](const BasisPtr<Real>& space, const VectorC<Real>& coords) {
    const VectorC<Real> samples =
        nodes.cwiseProduct(space->sample_table().transpose() * coords);
    return project(space, samples).coords;
  };

  Real worst = 0;
  for (Index i = 0; i < f_basis.cols(); ++i) {
    const VectorC<Real> f = f_basis.col(i);
    const VectorC<Real> sf = shift_into(A.domain, f);
    for (Index j = 0; j < g_basis.cols(); ++j) {
      const VectorC<Real> g = g_basis.col(j);
      const VectorC<Real> sg = shift_into(A.codomain, g);
      const Complex<Real> lhs = sg.dot(A.entries * sf);
      const Complex<Real> rhs = g.dot(A.entries * f);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }

  result.residual = worst / std::max(Real(1), A.frobenius_norm());
  result.verdict = result.residual <= tol;
  return result;
}

// Recovers a symbol for a member: the normalized pair (chi, psi) of the
// forward-shift fit, so that the truncated Toeplitz matrix of
// conj(chi) + psi rebuilds A. Throws NotAMember when the fit residual
// exceeds the tolerance.
template <typename Real>
SymbolPair<Real> recover_symbol(const OperatorMatrix<Real>& A, Real tol = kMembershipTol<Real>) {
  DecompositionResult<Real> fit = membership(A, Variant::T1, tol);
  if (!fit.verdict) throw NotAMember("operator is not truncated Toeplitz at this tolerance");
  return SymbolPair<Real>{std::move(fit.chi), std::move(fit.psi)};
}

// Partial sum of the telescoping series
//
//   sum_{n>=0} S_beta^n (psi (x) k_0^alpha + k_0^beta (x) chi) (S_alpha^*)^n,
//
// which converges to the truncated Toeplitz matrix of conj(chi) + psi at the
// geometric rate of the shift powers. Requires psi(0) = 0.
template <typename Real>
OperatorMatrix<Real> series_partial_sum(const SymbolPair<Real>& pair, Index n_terms_last) {
  if (n_terms_last < 0) throw InvalidArgument("partial sum index must be >= 0");
  const BasisPtr<Real>& dom = pair.chi.space;
  const BasisPtr<Real>& cod = pair.psi.space;
  if (std::abs(pair.psi.eval(Complex<Real>(0))) > Real(1e-9L))
    throw PsiNotNormalized("series requires psi(0) = 0");

  const VectorC<Real> k0_dom = kernel_coeffs(dom, Complex<Real>(0)).coords;
  const VectorC<Real> k0_cod = kernel_coeffs(cod, Complex<Real>(0)).coords;
  const MatrixC<Real> step = pair.psi.coords * k0_dom.adjoint() + k0_cod * pair.chi.coords.adjoint();
  const MatrixC<Real> s_dom = compressed_shift(dom).entries;
  const MatrixC<Real> s_cod = compressed_shift(cod).entries;

  MatrixC<Real> pow_dom = MatrixC<Real>::Identity(dom->dimension(), dom->dimension());
  MatrixC<Real> pow_cod = MatrixC<Real>::Identity(cod->dimension(), cod->dimension());
  MatrixC<Real> sum = MatrixC<Real>::Zero(cod->dimension(), dom->dimension());
  for (Index n = 0; n <= n_terms_last; ++n) {
    sum += pow_cod * step * pow_dom.adjoint();
    pow_dom = s_dom * pow_dom;
    pow_cod = s_cod * pow_cod;
  }
  return OperatorMatrix<Real>(dom, cod, std::move(sum));
}

// One row of an equivalence run.
template <typename Real>
struct VariantCheck {
  Variant variant;
  Complex<Real> a{0};
  Complex<Real> b{0};
  bool verdict = false;
  Real residual = 0;
  bool vacuous = false;
};

// Runs every variant on one operator: T1, C2, the two C3 forms at
// (a, b) = (0, 0) plus three seeded draws with |a|, |b| <= 2, and SI.
// Membership theory says all verdicts agree; the caller checks that.
template <typename Real>
std::vector<VariantCheck<Real>> equivalence_suite(const OperatorMatrix<Real>& A,
                                                  Real tol = kMembershipTol<Real>,
                                                  std::uint64_t seed = 0) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<Real> unit(Real(0), Real(1));
  auto draw_disk2 = [&]() {
    const Real radius = Real(2) * std::sqrt(unit(gen));
    const Real angle = Real(2) * std::numbers::pi_v<Real> * unit(gen);
    return std::polar(radius, angle);
  };

  std::vector<VariantCheck<Real>> rows;
  auto push = [&](Variant v, Complex<Real> a, Complex<Real> b) {
    const DecompositionResult<Real> r = membership(A, v, tol, a, b);
    rows.push_back(VariantCheck<Real>{v, a, b, r.verdict, r.residual, r.vacuous});
  };

  push(Variant::T1, Complex<Real>(0), Complex<Real>(0));
  push(Variant::C2, Complex<Real>(0), Complex<Real>(0));
  for (const C3Form form : {C3Form::A, C3Form::B}) {
    const Variant v = form == C3Form::A ? Variant::C3a : Variant::C3b;
    push(v, Complex<Real>(0), Complex<Real>(0));
    for (int draw = 0; draw < 3; ++draw) push(v, draw_disk2(), draw_disk2());
  }
  push(Variant::SI, Complex<Real>(0), Complex<Real>(0));
  return rows;
}

template <typename Real>
bool verdicts_agree(const std::vector<VariantCheck<Real>>& rows) {
  for (const auto& row : rows)
    if (row.verdict != rows.front().verdict) return false;
  return true;
}

}  // namespace atto
