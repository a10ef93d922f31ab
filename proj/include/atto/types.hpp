// Common scalar/matrix aliases and the error taxonomy shared by all of atto.
//
// Everything in this library is templated on the real scalar type (double in
// practice); complex values, vectors and matrices are the corresponding
// Eigen dense types.

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace atto {

template <typename Real>
using Complex = std::complex<Real>;

template <typename Real>
using MatrixC = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using VectorC = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ZeroOutsideCap : Error { using Error::Error; };
struct EmptyZeroList : Error { using Error::Error; };
struct NonUnimodularConstant : Error { using Error::Error; };
struct NonFiniteValue : Error { using Error::Error; };
struct PointOutsideClosedDisk : Error { using Error::Error; };
struct PointOnBoundary : Error { using Error::Error; };
struct GramTolExceeded : Error { using Error::Error; };
struct GridMismatch : Error { using Error::Error; };
struct ToleranceExceeded : Error { using Error::Error; };
struct SpaceMismatch : Error { using Error::Error; };
struct ShapeMismatch : Error { using Error::Error; };
struct ZeroFrame : Error { using Error::Error; };
struct NotAMember : Error { using Error::Error; };
struct PsiNotNormalized : Error { using Error::Error; };
struct InvalidArgument : Error { using Error::Error; };

// Zeros of a Blaschke product are kept at modulus <= 0.95 by default; bases
// and boundary quadrature degrade as zeros approach the circle.
template <typename Real>
inline constexpr Real kDefaultZeroCap = Real(0.95L);

// Construction-time invariants (Gram matrices, conjugations) are checked at
// 1e-10; end-to-end identities get two extra orders of slack.
template <typename Real>
inline constexpr Real kConstructionTol = Real(1e-10L);

template <typename Real>
inline constexpr Real kMembershipTol = Real(1e-8L);

template <typename Real>
inline bool is_finite(Complex<Real> z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace atto
