#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "test_helpers.hpp"

#include "atto/json_io.hpp"

using namespace atto;

TEST_CASE("Blaschke product codec") {
  InstanceRng<Real> rng(139);
  const BlaschkeProduct<Real> b = rng.blaschke(4);
  const Json j = encode_blaschke(b);
  CHECK(j.contains("zeros"));
  CHECK(j.contains("const"));
  CHECK(j["zeros"].size() == 4);
  const BlaschkeProduct<Real> back = decode_blaschke<Real>(j);
  CHECK(same_product(b, back));

  // a missing constant defaults to 1
  const BlaschkeProduct<Real> plain =
      decode_blaschke<Real>(Json::parse(R"({"zeros": [[0,0],[0,0]]})"));
  CHECK(plain.degree() == 2);
  CHECK(std::abs(plain.unimodular_const() - C(1)) < 1e-15);

  CHECK_THROWS_AS(decode_blaschke<Real>(Json::parse(R"({"zeros": [[2,0]]})")), ZeroOutsideCap);
  CHECK_THROWS_AS(decode_blaschke<Real>(Json::parse(R"({"poles": []})")), Error);
}

TEST_CASE("coefficient and operator codecs") {
  InstanceRng<Real> rng(149);
  auto [dom, cod] = tm_basis_pair(rng.blaschke(2), rng.blaschke(3));
  const MemberInstance<Real> member = random_member(rng, dom, cod);

  const Json j = encode_operator(member.op);
  CHECK(j.contains("alpha"));
  CHECK(j.contains("beta"));
  CHECK(j["matrix"].size() == 3);     // rows indexed by the codomain
  CHECK(j["matrix"][0].size() == 2);

  const OperatorMatrix<Real> back = decode_operator<Real>(j, 0);
  CHECK(max_abs(back.entries - member.op.entries) <= 1e-15);
  CHECK(same_product(back.domain->alpha(), dom->alpha()));

  Json bad = j;
  bad["matrix"].erase(2);
  CHECK_THROWS_AS(decode_operator<Real>(bad, 0), ShapeMismatch);

  const CoeffVector<Real> f = rng.coeff_vector(dom);
  const CoeffVector<Real> fb = decode_coeffs<Real>(encode_coeffs(f), dom);
  CHECK(max_abs(fb.coords - f.coords) <= 1e-15);
}

TEST_CASE("decomposition result codec") {
  auto [dom, cod] = monomial_pair(2, 3);
  const OperatorMatrix<Real> a = atto_matrix(dom, cod, dom->grid().nodes());
  const Json jt1 = encode_result(membership(a, Variant::T1));
  CHECK(jt1["variant"] == "t1");
  CHECK(jt1["verdict"] == true);
  CHECK(jt1.contains("residual"));
  CHECK(jt1.contains("psi"));
  CHECK(jt1.contains("chi"));
  CHECK_FALSE(jt1.contains("vacuous"));

  const Json jsi = encode_result(shift_invariance_test(a, 1e-8));
  CHECK(jsi["variant"] == "si");
  CHECK(jsi.contains("vacuous"));
}

TEST_CASE("Laurent shorthand parser") {
  const auto z = parse_laurent<Real>("z");
  CHECK(z.size() == 1);
  CHECK(z.at(1) == C(1));

  const auto zm2 = parse_laurent<Real>("z^-2");
  CHECK(zm2.at(-2) == C(1));

  const auto combo = parse_laurent<Real>("0.5*z + (0,1)*z^-1 - 2");
  CHECK(std::abs(combo.at(1) - C(0.5)) < 1e-15);
  CHECK(std::abs(combo.at(-1) - C(0, 1)) < 1e-15);
  CHECK(std::abs(combo.at(0) - C(-2)) < 1e-15);

  CHECK(parse_laurent<Real>("0").at(0) == C(0));
  CHECK_THROWS_AS(parse_laurent<Real>("z^17"), InvalidArgument);
  CHECK_THROWS_AS(parse_laurent<Real>("q + 1"), Error);

  BoundaryGrid<Real> grid(512);
  const Vec samples = laurent_samples(grid, parse_laurent<Real>("z"));
  CHECK(max_abs(samples - grid.nodes()) <= 1e-15);
}

TEST_CASE("symbol specifications resolve to boundary samples") {
  auto [dom, cod] = monomial_pair(2, 3);

  const Vec via_text = symbol_samples_from_spec<Real>("z", dom, cod);
  CHECK(max_abs(via_text - dom->grid().nodes()) <= 1e-15);

  const Vec via_json =
      symbol_samples_from_spec<Real>(R"({"laurent": [[1, 1.0, 0.0]]})", dom, cod);
  CHECK(max_abs(via_json - dom->grid().nodes()) <= 1e-15);

  InstanceRng<Real> rng(151);
  const SymbolPair<Real> pair = rng.symbol_pair(dom, cod);
  Json spec{{"chi", encode_coeffs(pair.chi)}, {"psi", encode_coeffs(pair.psi)}};
  const Vec via_pair = symbol_samples_from_spec<Real>(spec.dump(), dom, cod);
  CHECK(max_abs(via_pair - pair.boundary_samples()) <= 1e-12);

  CHECK_THROWS_AS(symbol_samples_from_spec<Real>(R"({"what": 1})", dom, cod), Error);
}
