// JSON encodings of the library types and parsing of symbol specifications.
//
//   BlaschkeProduct      {"zeros": [[re, im], ...], "const": [re, im]}
//   CoeffVector          {"coords": [[re, im], ...]}
//   OperatorMatrix       {"alpha": <product>, "beta": <product>,
//                         "matrix": [[[re, im], ...], ...]}   (row = codomain index)
//   DecompositionResult  {"variant": "...", "verdict": bool, "residual": x,
//                         "psi": <coeffs>, "chi": <coeffs>}
//
// Symbols for the command line come either as a SymbolPair
// {"chi": <coeffs>, "psi": <coeffs>}, as a Laurent table
// {"laurent": [[k, re, im], ...]}, or as a shorthand expression like
// "z", "z^-2", "0.5*z + (0,1)*z^-1".

#pragma once

#include <cctype>
#include <map>
#include <string>

#include <json.hpp>

#include "atto/characterize.hpp"

namespace atto {

using Json = nlohmann::json;

template <typename Real>
Json encode_complex(Complex<Real> z) {
  return Json::array({z.real(), z.imag()});
}

template <typename Real>
Complex<Real> decode_complex(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error("expected a complex value [re, im]");
  const Complex<Real> z(j[0].get<Real>(), j[1].get<Real>());
  if (!is_finite<Real>(z)) throw NonFiniteValue("non-finite complex value");
  return z;
}

template <typename Real>
Json encode_blaschke(const BlaschkeProduct<Real>& b) {
  Json zeros = Json::array();
  for (const auto& a : b.zeros()) zeros.push_back(encode_complex<Real>(a));
  return Json{{"zeros", std::move(zeros)}, {"const", encode_complex<Real>(b.unimodular_const())}};
}

// Missing "const" defaults to 1.
template <typename Real>
BlaschkeProduct<Real> decode_blaschke(const Json& j, Real zero_cap = kDefaultZeroCap<Real>) {
  if (!j.is_object() || !j.contains("zeros") || !j["zeros"].is_array())
    throw Error("Blaschke product JSON needs a \"zeros\" array");
  std::vector<Complex<Real>> zeros;
  for (const auto& zj : j["zeros"]) zeros.push_back(decode_complex<Real>(zj));
  Complex<Real> c(1);
  if (j.contains("const")) c = decode_complex<Real>(j["const"]);
  return BlaschkeProduct<Real>(std::move(zeros), c, zero_cap);
}

template <typename Real>
Json encode_coeffs(const CoeffVector<Real>& v) {
  Json coords = Json::array();
  for (Index i = 0; i < v.coords.size(); ++i) coords.push_back(encode_complex<Real>(v.coords[i]));
  return Json{{"coords", std::move(coords)}};
}

template <typename Real>
CoeffVector<Real> decode_coeffs(const Json& j, const BasisPtr<Real>& space) {
  if (!j.is_object() || !j.contains("coords") || !j["coords"].is_array())
    throw Error("coefficient JSON needs a \"coords\" array");
  VectorC<Real> coords(static_cast<Index>(j["coords"].size()));
  Index i = 0;
  for (const auto& cj : j["coords"]) coords[i++] = decode_complex<Real>(cj);
  return CoeffVector<Real>(space, std::move(coords));
}

template <typename Real>
Json encode_operator(const OperatorMatrix<Real>& A) {
  Json rows = Json::array();
  for (Index k = 0; k < A.entries.rows(); ++k) {
    Json row = Json::array();
    for (Index j = 0; j < A.entries.cols(); ++j)
      row.push_back(encode_complex<Real>(A.entries(k, j)));
    rows.push_back(std::move(row));
  }
  return Json{{"alpha", encode_blaschke<Real>(A.domain->alpha())},
              {"beta", encode_blaschke<Real>(A.codomain->alpha())},
              {"matrix", std::move(rows)}};
}

// Rebuilds the spaces from the embedded products (node_count == 0 selects
// the default budget for the pair) and wraps the matrix.
template <typename Real>
OperatorMatrix<Real> decode_operator(const Json& j, Index node_count = 0,
                                     Real zero_cap = kDefaultZeroCap<Real>) {
  if (!j.is_object() || !j.contains("alpha") || !j.contains("beta") || !j.contains("matrix"))
    throw Error("operator JSON needs \"alpha\", \"beta\" and \"matrix\"");
  BlaschkeProduct<Real> alpha = decode_blaschke<Real>(j["alpha"], zero_cap);
  BlaschkeProduct<Real> beta = decode_blaschke<Real>(j["beta"], zero_cap);
  auto [domain, codomain] = tm_basis_pair(std::move(alpha), std::move(beta), node_count);

  const Json& rows = j["matrix"];
  if (!rows.is_array() || static_cast<Index>(rows.size()) != codomain->dimension())
    throw ShapeMismatch("matrix row count must equal deg(beta)");
  MatrixC<Real> entries(codomain->dimension(), domain->dimension());
  for (Index k = 0; k < entries.rows(); ++k) {
    const Json& row = rows[static_cast<std::size_t>(k)];
    if (!row.is_array() || static_cast<Index>(row.size()) != domain->dimension())
      throw ShapeMismatch("matrix column count must equal deg(alpha)");
    for (Index jcol = 0; jcol < entries.cols(); ++jcol)
      entries(k, jcol) = decode_complex<Real>(row[static_cast<std::size_t>(jcol)]);
  }
  return OperatorMatrix<Real>(std::move(domain), std::move(codomain), std::move(entries));
}

template <typename Real>
Json encode_result(const DecompositionResult<Real>& r) {
  Json j{{"variant", variant_name(r.variant)},
         {"verdict", r.verdict},
         {"residual", r.residual},
         {"psi", encode_coeffs<Real>(r.psi)},
         {"chi", encode_coeffs<Real>(r.chi)}};
  if (r.variant == Variant::SI) j["vacuous"] = r.vacuous;
  return j;
}

// ---------------------------------------------------------------------------
// Laurent symbols sum_k c_k z^k, |k| <= 16.

template <typename Real>
using LaurentSymbol = std::map<int, Complex<Real>>;

inline constexpr int kMaxLaurentDegree = 16;

template <typename Real>
VectorC<Real> laurent_samples(const BoundaryGrid<Real>& grid, const LaurentSymbol<Real>& symbol) {
  VectorC<Real> samples = VectorC<Real>::Zero(grid.node_count());
  for (const auto& [k, c] : symbol) {
    if (std::abs(k) > kMaxLaurentDegree) throw InvalidArgument("Laurent degree exceeds 16");
    for (Index i = 0; i < grid.node_count(); ++i)
      samples[i] += c * std::pow(grid.nodes()[i], k);
  }
  return samples;
}

// Shorthand parser: terms joined by + or -, each term an optional
// coefficient (real literal or "(re,im)") optionally times z^k.
template <typename Real>
LaurentSymbol<Real> parse_laurent(const std::string& text) {
  LaurentSymbol<Real> symbol;
  std::size_t pos = 0;
  auto skip_space = [&] { while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos; };
  auto parse_real = [&]() -> Real {
    skip_space();
    std::size_t used = 0;
    Real value;
    try {
      value = static_cast<Real>(std::stold(text.substr(pos), &used));
    } catch (const std::exception&) {
      throw Error("bad numeric literal in symbol expression");
    }
    pos += used;
    return value;
  };

  skip_space();
  bool first = true;
  while (pos < text.size()) {
    Real sign = 1;
    skip_space();
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? Real(-1) : Real(1);
      ++pos;
    } else if (!first) {
      throw Error("expected + or - between symbol terms");
    }
    first = false;
    skip_space();
    if (pos >= text.size()) throw Error("dangling sign in symbol expression");

    Complex<Real> coeff(1);
    bool have_coeff = false;
    if (text[pos] == '(') {
      ++pos;
      const Real re = parse_real();
      skip_space();
      if (pos >= text.size() || text[pos] != ',') throw Error("expected ',' in complex literal");
      ++pos;
      const Real im = parse_real();
      skip_space();
      if (pos >= text.size() || text[pos] != ')') throw Error("expected ')' in complex literal");
      ++pos;
      coeff = Complex<Real>(re, im);
      have_coeff = true;
    } else if (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.') {
      coeff = Complex<Real>(parse_real());
      have_coeff = true;
    }
    skip_space();
    if (have_coeff && pos < text.size() && text[pos] == '*') {
      ++pos;
      skip_space();
    }

    int power = 0;
    if (pos < text.size() && text[pos] == 'z') {
      ++pos;
      power = 1;
      skip_space();
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        skip_space();
        int p_sign = 1;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
          if (text[pos] == '-') p_sign = -1;
          ++pos;
        }
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
          throw Error("expected integer exponent after ^");
        int mag = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
          mag = 10 * mag + (text[pos++] - '0');
        power = p_sign * mag;
      }
    } else if (!have_coeff) {
      throw Error("expected a coefficient or z in symbol expression");
    }
    if (std::abs(power) > kMaxLaurentDegree) throw InvalidArgument("Laurent degree exceeds 16");
    symbol[power] += sign * coeff;
    skip_space();
  }
  if (symbol.empty()) symbol[0] = Complex<Real>(0);
  return symbol;
}

template <typename Real>
LaurentSymbol<Real> decode_laurent(const Json& j) {
  if (!j.is_array()) throw Error("\"laurent\" must be an array of [k, re, im] terms");
  LaurentSymbol<Real> symbol;
  for (const auto& term : j) {
    if (!term.is_array() || term.size() != 3) throw Error("Laurent term must be [k, re, im]");
    const int k = term[0].get<int>();
    if (std::abs(k) > kMaxLaurentDegree) throw InvalidArgument("Laurent degree exceeds 16");
    symbol[k] += Complex<Real>(term[1].get<Real>(), term[2].get<Real>());
  }
  return symbol;
}

// Boundary samples of a symbol specification (SymbolPair JSON, Laurent
// JSON, or shorthand text) on the grid shared by the two spaces.
template <typename Real>
VectorC<Real> symbol_samples_from_spec(const std::string& spec, const BasisPtr<Real>& domain,
                                       const BasisPtr<Real>& codomain) {
  std::string trimmed = spec;
  const auto start = trimmed.find_first_not_of(" \t\n");
  if (start == std::string::npos) throw Error("empty symbol specification");
  if (trimmed[start] == '{') {
    const Json j = Json::parse(trimmed);
    if (j.contains("laurent")) return laurent_samples(domain->grid(), decode_laurent<Real>(j["laurent"]));
    if (j.contains("chi") && j.contains("psi")) {
      SymbolPair<Real> pair{decode_coeffs<Real>(j["chi"], domain),
                            decode_coeffs<Real>(j["psi"], codomain)};
      return pair.boundary_samples();
    }
    throw Error("symbol JSON needs \"laurent\" or \"chi\"/\"psi\"");
  }
  return laurent_samples(domain->grid(), parse_laurent<Real>(trimmed));
}

}  // namespace atto
