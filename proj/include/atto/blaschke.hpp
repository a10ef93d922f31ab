// Finite Blaschke products
//
//   alpha(z) = c * prod_j (z - a_j) / (1 - conj(a_j) z),   |a_j| < 1, |c| = 1.
//
// These are the inner functions this library works with; the model space
// K_alpha = H^2 (-) alpha H^2 attached to a degree-n product is
// n-dimensional, which is what makes every operator in the library a small
// dense matrix.

#pragma once

#include <utility>
#include <vector>

#include "atto/types.hpp"

namespace atto {

template <typename Real>
class BlaschkeProduct {
 public:
  using C = Complex<Real>;

  // Validates and stores the product. Zero order is preserved; it fixes the
  // order of the Takenaka-Malmquist basis downstream. The constant is
  // renormalized to exact modulus 1 when within 1e-12 of it.
  //
  // `zero_cap` bounds the zero moduli (default 0.95); raising it toward 1 is
  // allowed but degrades quadrature accuracy.
  explicit BlaschkeProduct(std::vector<C> zeros, C unimodular_const = C(1),
                           Real zero_cap = kDefaultZeroCap<Real>)
      : zeros_(std::move(zeros)), const_(unimodular_const) {
    if (zeros_.empty()) throw EmptyZeroList("Blaschke product needs at least one zero");
    if (!(zero_cap > Real(0)) || !(zero_cap < Real(1)))
      throw InvalidArgument("zero cap must lie in (0, 1)");
    for (const C& a : zeros_) {
      if (!is_finite<Real>(a)) throw NonFiniteValue("non-finite Blaschke zero");
      if (std::abs(a) > zero_cap)
        throw ZeroOutsideCap("Blaschke zero modulus exceeds cap");
    }
    if (!is_finite<Real>(const_)) throw NonFiniteValue("non-finite unimodular constant");
    const Real mod = std::abs(const_);
    if (std::abs(mod - Real(1)) > Real(1e-12L))
      throw NonUnimodularConstant("constant must have modulus 1");
    const_ /= mod;
  }

  Index degree() const { return static_cast<Index>(zeros_.size()); }
  const std::vector<C>& zeros() const { return zeros_; }
  C unimodular_const() const { return const_; }

  Real max_zero_modulus() const {
    Real r = 0;
    for (const C& a : zeros_) r = std::max(r, std::abs(a));
    return r;
  }

  // Evaluation at |z| <= 1 (+1e-12 slack), factor by factor; the product is
  // never expanded into polynomial coefficients.
  C operator()(C z) const {
    if (std::abs(z) > Real(1) + Real(1e-12L))
      throw PointOutsideClosedDisk("Blaschke evaluation outside the closed disk");
    C value = const_;
    for (const C& a : zeros_) value *= (z - a) / (C(1) - std::conj(a) * z);
    return value;
  }

 private:
  std::vector<C> zeros_;
  C const_;
};

template <typename Real>
Complex<Real> blaschke_eval(const BlaschkeProduct<Real>& b, Complex<Real> z) {
  return b(z);
}

// Product of two finite Blaschke products: zeros concatenate (b2's after
// b1's), constants multiply, degrees add. Used to build divisibility
// instances alpha = beta * gamma.
template <typename Real>
BlaschkeProduct<Real> multiply(const BlaschkeProduct<Real>& b1,
                               const BlaschkeProduct<Real>& b2,
                               Real zero_cap = kDefaultZeroCap<Real>) {
  std::vector<Complex<Real>> zeros = b1.zeros();
  zeros.insert(zeros.end(), b2.zeros().begin(), b2.zeros().end());
  return BlaschkeProduct<Real>(std::move(zeros),
                               b1.unimodular_const() * b2.unimodular_const(), zero_cap);
}

// Exact zero-list equality; used to decide whether two bases describe the
// same model space.
template <typename Real>
bool same_product(const BlaschkeProduct<Real>& a, const BlaschkeProduct<Real>& b,
                  Real tol = Real(1e-12L)) {
  if (a.degree() != b.degree()) return false;
  if (std::abs(a.unimodular_const() - b.unimodular_const()) > tol) return false;
  for (std::size_t j = 0; j < a.zeros().size(); ++j)
    if (std::abs(a.zeros()[j] - b.zeros()[j]) > tol) return false;
  return true;
}

}  // namespace atto
