// Seeded random instances for tests and the property suite. Zeros are drawn
// uniformly (by area) in a disk of radius 0.9, symbol coefficients are
// standard complex normal, and every draw is reproducible from the seed.

#pragma once

#include <cstdint>
#include <random>

#include "atto/characterize.hpp"

namespace atto {

// Derives an independent child seed; used to give each check of a suite its
// own stream regardless of evaluation order.
inline std::uint64_t child_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t x = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

template <typename Real>
class InstanceRng {
 public:
  using C = Complex<Real>;

  explicit InstanceRng(std::uint64_t seed) : gen_(seed) {}

  std::mt19937_64& engine() { return gen_; }

  Real uniform(Real lo = Real(0), Real hi = Real(1)) {
    return std::uniform_real_distribution<Real>(lo, hi)(gen_);
  }

  int uniform_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(gen_);
  }

  C disk_point(Real radius) {
    const Real r = radius * std::sqrt(uniform());
    return std::polar(r, uniform(Real(0), Real(2) * std::numbers::pi_v<Real>));
  }

  C complex_normal() {
    std::normal_distribution<Real> normal(Real(0), Real(1));
    return C(normal(gen_), normal(gen_));
  }

  C unit_phase() { return std::polar(Real(1), uniform(Real(0), Real(2) * std::numbers::pi_v<Real>)); }

  // Degree-deg product with zeros in the radius-`radius` disk. min_separation
  // rejects clustered zero draws; useful where eigenvalue conditioning
  // matters.
  BlaschkeProduct<Real> blaschke(int deg, Real radius = Real(0.9L), Real min_separation = Real(0)) {
    std::vector<C> zeros;
    zeros.reserve(static_cast<std::size_t>(deg));
    while (static_cast<int>(zeros.size()) < deg) {
      const C candidate = disk_point(radius);
      bool ok = true;
      for (const C& z : zeros)
        if (std::abs(z - candidate) < min_separation) ok = false;
      if (ok) zeros.push_back(candidate);
    }
    return BlaschkeProduct<Real>(std::move(zeros), unit_phase());
  }

  CoeffVector<Real> coeff_vector(const BasisPtr<Real>& space) {
    VectorC<Real> coords(space->dimension());
    for (Index j = 0; j < coords.size(); ++j) coords[j] = complex_normal();
    return CoeffVector<Real>(space, std::move(coords));
  }

  SymbolPair<Real> symbol_pair(const BasisPtr<Real>& domain, const BasisPtr<Real>& codomain) {
    return SymbolPair<Real>{coeff_vector(domain), coeff_vector(codomain)};
  }

  MatrixC<Real> matrix(Index rows, Index cols) {
    MatrixC<Real> m(rows, cols);
    for (Index i = 0; i < rows; ++i)
      for (Index j = 0; j < cols; ++j) m(i, j) = complex_normal();
    return m;
  }

 private:
  std::mt19937_64 gen_;
};

// A symbol-built member together with its generating pair. Draws are
// rejected while |A|_F < 0.25 so that downstream relative thresholds keep
// their meaning; the floor is hit only for unusually small symbol draws.
template <typename Real>
struct MemberInstance {
  OperatorMatrix<Real> op;
  SymbolPair<Real> pair;
};

template <typename Real>
MemberInstance<Real> random_member(InstanceRng<Real>& rng, const BasisPtr<Real>& domain,
                                   const BasisPtr<Real>& codomain) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    SymbolPair<Real> pair = rng.symbol_pair(domain, codomain);
    OperatorMatrix<Real> op = atto_matrix(domain, codomain, pair.boundary_samples());
    if (op.frobenius_norm() >= Real(0.25L)) return {std::move(op), std::move(pair)};
  }
  throw Error("random member generation kept drawing near-zero symbols");
}

}  // namespace atto
