#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "test_helpers.hpp"

using namespace atto;

TEST_CASE("compressed shift on monomial spaces") {
  const BasisPtr<Real> basis = tm_basis(monomial(2), 512);
  const OperatorMatrix<Real> s = compressed_shift(basis);
  Mat expected(2, 2);
  expected << C(0), C(0), C(1), C(0);
  CHECK(max_abs(s.entries - expected) <= 1e-12);

  // adjoint acts as the backward shift: z -> 1, 1 -> 0
  const Mat sstar = s.entries.adjoint();
  CHECK(std::abs(sstar(0, 1) - C(1)) <= 1e-12);
  CHECK(std::abs(sstar(0, 0)) <= 1e-12);
  CHECK(std::abs(sstar(1, 1)) <= 1e-12);

  const BasisPtr<Real> quintic = tm_basis(monomial(5), 512);
  const Mat s5 = compressed_shift(quintic).entries;
  Mat jordan = Mat::Zero(5, 5);
  for (Index j = 0; j < 4; ++j) jordan(j + 1, j) = C(1);
  CHECK(max_abs(s5 - jordan) <= 1e-12);
}

TEST_CASE("shift eigenvalues are the zeros") {
  InstanceRng<Real> rng(43);
  for (int t = 0; t < 10; ++t) {
    const BlaschkeProduct<Real> b = rng.blaschke(rng.uniform_int(2, 6), 0.9, 0.1);
    const BasisPtr<Real> basis = tm_basis(b);
    Eigen::ComplexEigenSolver<Mat> eig(compressed_shift(basis).entries);
    std::vector<C> computed(eig.eigenvalues().data(),
                            eig.eigenvalues().data() + eig.eigenvalues().size());
    std::vector<C> zeros = b.zeros();
    auto by_parts = [](C x, C y) {
      return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    };
    std::sort(computed.begin(), computed.end(), by_parts);
    std::sort(zeros.begin(), zeros.end(), by_parts);
    for (std::size_t j = 0; j < zeros.size(); ++j) {
      CHECK(std::abs(computed[j] - zeros[j]) <= 1e-8);
      CHECK(std::abs(computed[j]) <= b.max_zero_modulus() + 1e-8);
    }
  }
}

TEST_CASE("two routes to the shift agree") {
  InstanceRng<Real> rng(47);
  const BasisPtr<Real> basis = tm_basis(rng.blaschke(4));
  const Mat via_shift = compressed_shift(basis).entries;
  const Mat via_symbol = atto_matrix(basis, basis, basis->grid().nodes()).entries;
  CHECK(max_abs(via_shift - via_symbol) <= 1e-10);
}

TEST_CASE("rank-one tensors") {
  auto [dom, cod] = monomial_pair(2, 3);
  Vec u = Vec::Zero(3);
  u[1] = C(1);
  Vec v = Vec::Zero(2);
  v[0] = C(1);
  const OperatorMatrix<Real> t = rank_one(CoeffVector<Real>(cod, u), CoeffVector<Real>(dom, v));
  CHECK(t.entries.rows() == 3);
  CHECK(t.entries.cols() == 2);
  CHECK(std::abs(t.entries(1, 0) - C(1)) < 1e-15);
  CHECK(std::abs(t.entries.cwiseAbs().sum() - 1.0) < 1e-15);

  // (u (x) k_0) f = f(0) u
  InstanceRng<Real> rng(53);
  const CoeffVector<Real> uu = rng.coeff_vector(cod);
  const CoeffVector<Real> f = rng.coeff_vector(dom);
  const OperatorMatrix<Real> tensor = rank_one(uu, kernel_coeffs(dom, C(0)));
  CHECK(max_abs(apply(tensor, f).coords - f.eval(C(0)) * uu.coords) <= 1e-12);

  Eigen::JacobiSVD<Mat> svd(tensor.entries);
  CHECK(svd.singularValues()(1) <= 1e-12);
}

TEST_CASE("truncated Toeplitz matrices from boundary symbols") {
  auto [dom, cod] = monomial_pair(2, 3);
  const auto& nodes = dom->grid().nodes();

  const Mat a_z = atto_matrix(dom, cod, nodes).entries;
  Mat expected = Mat::Zero(3, 2);
  expected(1, 0) = C(1);
  expected(2, 1) = C(1);
  CHECK(max_abs(a_z - expected) <= 1e-12);

  const Mat ident = atto_matrix(dom, dom, Vec::Ones(nodes.size())).entries;
  CHECK(max_abs(ident - Mat::Identity(2, 2)) <= 1e-12);

  const Mat a_zbar = atto_matrix(dom, dom, nodes.conjugate()).entries;
  CHECK(max_abs(a_zbar - compressed_shift(dom).entries.adjoint()) <= 1e-12);

  SUBCASE("linear in the symbol") {
    InstanceRng<Real> rng(59);
    Vec phi1(nodes.size()), phi2(nodes.size());
    for (Index i = 0; i < nodes.size(); ++i) {
      phi1[i] = rng.complex_normal();
      phi2[i] = rng.complex_normal();
    }
    const C c1 = rng.complex_normal(), c2 = rng.complex_normal();
    const Mat combined = atto_matrix(dom, cod, (c1 * phi1 + c2 * phi2).eval()).entries;
    const Mat separate = c1 * atto_matrix(dom, cod, phi1).entries +
                         c2 * atto_matrix(dom, cod, phi2).entries;
    CHECK(max_abs(combined - separate) <= 1e-12);
  }

  SUBCASE("adjoint swaps the spaces and conjugates the symbol") {
    InstanceRng<Real> rng(61);
    auto [alpha_space, beta_space] =
        tm_basis_pair(rng.blaschke(3), rng.blaschke(4));
    const SymbolPair<Real> pair = rng.symbol_pair(alpha_space, beta_space);
    const Vec phi = pair.boundary_samples();
    const Mat forward = atto_matrix(alpha_space, beta_space, phi).entries;
    const Mat backward =
        atto_matrix(beta_space, alpha_space, phi.conjugate()).entries;
    CHECK(max_abs(forward.adjoint() - backward) <= 1e-9);
  }

  CHECK_THROWS_AS(atto_matrix(dom, cod, Vec::Ones(17)), GridMismatch);
}

TEST_CASE("canonical symbol splits") {
  auto [dom, cod] = monomial_pair(2, 3);
  const auto& nodes = dom->grid().nodes();

  SUBCASE("phi = z gives psi = z, chi = 0") {
    const SymbolPair<Real> pair = symbol_defect_pair(dom, cod, nodes);
    CHECK(max_abs(pair.psi.coords - (Vec(3) << C(0), C(1), C(0)).finished()) <= 1e-12);
    CHECK(pair.chi.norm() <= 1e-12);
  }

  SUBCASE("constant phi lands entirely in chi") {
    const C constant(0.7, -0.2);
    const SymbolPair<Real> pair =
        symbol_defect_pair(dom, cod, (constant * Vec::Ones(nodes.size())).eval());
    CHECK(pair.psi.norm() <= 1e-12);
    CHECK(std::abs(pair.chi.coords[0] - std::conj(constant)) <= 1e-12);
    CHECK(std::abs(pair.chi.coords[1]) <= 1e-12);
  }

  SUBCASE("splits of normalized pairs round-trip") {
    InstanceRng<Real> rng(67);
    for (int t = 0; t < 10; ++t) {
      auto [a_space, b_space] =
          tm_basis_pair(rng.blaschke(rng.uniform_int(1, 5)), rng.blaschke(rng.uniform_int(1, 5)));
      const SymbolPair<Real> original = normalize_symbol_pair(rng.symbol_pair(a_space, b_space));
      const SymbolPair<Real> split =
          symbol_defect_pair(a_space, b_space, original.boundary_samples());
      CHECK(max_abs(split.chi.coords - original.chi.coords) <= 1e-9);
      CHECK(max_abs(split.psi.coords - original.psi.coords) <= 1e-9);
    }
  }
}

TEST_CASE("modified shifts") {
  const BasisPtr<Real> basis = tm_basis(monomial(2), 512);
  CHECK(max_abs(modified_shift(basis, C(0)).entries - compressed_shift(basis).entries) == 0.0);

  const C a(0.4, 1.1);
  Mat expected(2, 2);
  expected << C(0), a, C(1), C(0);
  CHECK(max_abs(modified_shift(basis, a).entries - expected) <= 1e-12);

  // |a| = 1 turns the monomial shift into a unitary companion matrix
  const BasisPtr<Real> quintic = tm_basis(monomial(5), 512);
  const Mat clark = modified_shift(quintic, std::polar(1.0, 0.83)).entries;
  Eigen::JacobiSVD<Mat> svd(clark);
  CHECK(std::abs(svd.singularValues()(0) - 1.0) <= 1e-10);
  CHECK(std::abs(svd.singularValues()(4) - 1.0) <= 1e-10);

  // the modification is rank one
  InstanceRng<Real> rng(71);
  const BasisPtr<Real> space = tm_basis(rng.blaschke(4));
  const Mat diff = modified_shift(space, C(0.3, -2.0)).entries -
                   compressed_shift(space).entries;
  Eigen::JacobiSVD<Mat> svd2(diff);
  CHECK(svd2.singularValues()(1) <= 1e-10);
}

TEST_CASE("conjugate flips") {
  InstanceRng<Real> rng(73);
  auto [dom, cod] = tm_basis_pair(rng.blaschke(3), rng.blaschke(4));
  const ConjugationMatrix<Real> c_dom = conjugation_matrix(dom);
  const ConjugationMatrix<Real> c_cod = conjugation_matrix(cod);

  SUBCASE("the identity is fixed when the spaces coincide") {
    const ConjugationMatrix<Real> c = conjugation_matrix(dom);
    OperatorMatrix<Real> ident(dom, dom, Mat::Identity(3, 3));
    CHECK(max_abs(conjugate_flip(ident, c, c).entries - ident.entries) <= 1e-10);
  }

  SUBCASE("flipping twice returns the operator") {
    OperatorMatrix<Real> a(dom, cod, rng.matrix(4, 3));
    const OperatorMatrix<Real> twice = conjugate_flip(conjugate_flip(a, c_dom, c_cod), c_dom, c_cod);
    CHECK(max_abs(twice.entries - a.entries) <= 1e-10);
  }

  SUBCASE("matrix matches the composed antilinear actions") {
    OperatorMatrix<Real> a(dom, cod, rng.matrix(4, 3));
    const OperatorMatrix<Real> b = conjugate_flip(a, c_dom, c_cod);
    for (int t = 0; t < 5; ++t) {
      const CoeffVector<Real> f = rng.coeff_vector(dom);
      const CoeffVector<Real> composed = c_cod.apply(apply(a, c_dom.apply(f)));
      CHECK(max_abs(apply(b, f).coords - composed.coords) <= 1e-12);
    }
  }

  SUBCASE("compressed shifts are complex symmetric: C S* C = S") {
    const ConjugationMatrix<Real> c = conjugation_matrix(dom);
    const OperatorMatrix<Real> s = compressed_shift(dom);
    CHECK(max_abs(conjugate_flip(adjoint(s), c, c).entries - s.entries) <= 1e-10);
    CHECK(max_abs(conjugate_flip(s, c, c).entries - s.entries.adjoint()) <= 1e-10);
  }

  SUBCASE("space checks") {
    OperatorMatrix<Real> a(dom, cod, rng.matrix(4, 3));
    CHECK_THROWS_AS(conjugate_flip(a, c_cod, c_cod), SpaceMismatch);
  }
}
