// Command-line front end: operator construction, membership checks, symbol
// recovery, the telescoping-series check, and the seeded property suite.
// All structured output is JSON on stdout; diagnostics go to stderr.
//
// Exit codes: 0 pass/member, 1 fail/non-member, 2 usage or I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "atto/json_io.hpp"
#include "atto/suite.hpp"

namespace {

using Real = double;
using atto::Json;

// "--alpha" style inputs are inline JSON when they start with '{', a file
// path otherwise.
std::string slurp(const std::string& spec) {
  const auto start = spec.find_first_not_of(" \t\n");
  if (start != std::string::npos && spec[start] == '{') return spec;
  std::ifstream in(spec);
  if (!in) throw atto::Error("cannot open file: " + spec);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string read_operator_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  return slurp(path);
}

// Accepts "re", "re,im" or "(re,im)".
std::complex<Real> parse_complex_flag(std::string text) {
  if (!text.empty() && text.front() == '(' && text.back() == ')')
    text = text.substr(1, text.size() - 2);
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) return {std::stod(text), 0.0};
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw atto::Error("cannot parse complex value: " + text);
  }
}

atto::BlaschkeProduct<Real> load_blaschke(const std::string& spec, Real zero_cap) {
  if (zero_cap > atto::kDefaultZeroCap<Real>)
    std::cerr << "warning: zero cap " << zero_cap
              << " exceeds 0.95; quadrature accuracy degrades near the circle\n";
  return atto::decode_blaschke<Real>(Json::parse(slurp(spec)), zero_cap);
}

atto::Variant parse_variant(const std::string& name) {
  if (name == "t1") return atto::Variant::T1;
  if (name == "c2") return atto::Variant::C2;
  if (name == "c3a") return atto::Variant::C3a;
  if (name == "c3b") return atto::Variant::C3b;
  if (name == "si") return atto::Variant::SI;
  throw atto::Error("unknown variant: " + name);
}

void print_json(const Json& j) { std::cout << j.dump() << "\n"; }

int run(int argc, char** argv) {
  CLI::App app{"model-space operators for finite Blaschke products: build, test and invert\n"
               "truncated Toeplitz operators between K_alpha and K_beta"};
  app.require_subcommand(1);

  std::string alpha_spec, beta_spec, symbol_spec, variant_name = "t1", input_path = "-";
  std::string a_flag = "0", b_flag = "0";
  Real tol = 1e-8;
  Real zero_cap = atto::kDefaultZeroCap<Real>;
  atto::Index quad_nodes = 0;
  std::uint64_t seed = 1729;
  int trials = 100, deg_alpha = 6, deg_beta = 6;
  atto::Index series_last = -1;

  auto add_space_flags = [&](CLI::App* cmd, bool need_beta) {
    cmd->add_option("--alpha", alpha_spec, "Blaschke product JSON or file")->required();
    if (need_beta) cmd->add_option("--beta", beta_spec, "Blaschke product JSON or file");
    cmd->add_option("--quad-nodes", quad_nodes, "quadrature nodes (power of two >= 512)");
    cmd->add_option("--zero-cap", zero_cap, "zero-modulus cap (default 0.95)");
  };

  CLI::App* build = app.add_subcommand("build", "truncated Toeplitz matrix of a symbol");
  add_space_flags(build, true);
  build->add_option("--symbol", symbol_spec,
                    "symbol: Laurent shorthand, {\"laurent\": ...} or {\"chi\":..,\"psi\":..}")
      ->required();

  CLI::App* shift = app.add_subcommand("shift", "compressed or modified compressed shift");
  add_space_flags(shift, false);
  shift->add_option("--a", a_flag, "modification weight a (complex; default 0)");

  CLI::App* member = app.add_subcommand("membership", "test an operator for membership");
  member->add_option("input", input_path, "operator JSON file or - for stdin");
  member->add_option("--variant", variant_name, "t1|c2|c3a|c3b|si|all");
  member->add_option("--tol", tol, "relative residual tolerance");
  member->add_option("--a", a_flag, "modified-shift weight a for c3 variants");
  member->add_option("--b", b_flag, "modified-shift weight b for c3 variants");
  member->add_option("--quad-nodes", quad_nodes, "quadrature nodes (power of two >= 512)");
  member->add_option("--zero-cap", zero_cap, "zero-modulus cap (default 0.95)");
  member->add_option("--seed", seed, "seed for the c3 (a, b) draws of --variant all");

  CLI::App* recover = app.add_subcommand("recover", "recover a symbol from a member");
  recover->add_option("input", input_path, "operator JSON file or - for stdin");
  recover->add_option("--tol", tol, "relative residual tolerance");
  recover->add_option("--quad-nodes", quad_nodes, "quadrature nodes (power of two >= 512)");
  recover->add_option("--zero-cap", zero_cap, "zero-modulus cap (default 0.95)");

  CLI::App* series = app.add_subcommand("series-check",
                                        "partial sums of the telescoping series for a symbol");
  add_space_flags(series, true);
  series->add_option("--symbol", symbol_spec, "symbol specification")->required();
  series->add_option("--tol", tol, "target residual");
  series->add_option("--n-last", series_last, "last summation index (default: pinned rule)");

  CLI::App* suite = app.add_subcommand("suite", "seeded end-to-end property suite");
  suite->add_option("--seed", seed, "master seed");
  suite->add_option("--trials", trials, "base trial count (checks scale from it)");
  suite->add_option("--tol", tol, "membership tolerance");
  suite->add_option("--quad-nodes", quad_nodes, "quadrature nodes (power of two >= 512)");
  suite->add_option("--deg-alpha", deg_alpha, "degree cap for alpha draws");
  suite->add_option("--deg-beta", deg_beta, "degree cap for beta draws");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help exits 0; usage errors exit 2
  }

  if (build->parsed()) {
    atto::BlaschkeProduct<Real> alpha = load_blaschke(alpha_spec, zero_cap);
    atto::BlaschkeProduct<Real> beta =
        beta_spec.empty() ? alpha : load_blaschke(beta_spec, zero_cap);
    auto [dom, cod] = atto::tm_basis_pair(std::move(alpha), std::move(beta), quad_nodes);
    const auto phi = atto::symbol_samples_from_spec<Real>(symbol_spec, dom, cod);
    print_json(atto::encode_operator(atto::atto_matrix(dom, cod, phi)));
    return 0;
  }

  if (shift->parsed()) {
    const auto basis = atto::tm_basis(load_blaschke(alpha_spec, zero_cap), quad_nodes);
    print_json(atto::encode_operator(atto::modified_shift(basis, parse_complex_flag(a_flag))));
    return 0;
  }

  if (member->parsed()) {
    const auto A = atto::decode_operator<Real>(Json::parse(read_operator_input(input_path)),
                                               quad_nodes, zero_cap);
    if (variant_name == "all") {
      const auto rows = atto::equivalence_suite(A, tol, seed);
      Json out = Json::array();
      bool all_true = true;
      for (const auto& row : rows) {
        all_true = all_true && row.verdict;
        out.push_back(Json{{"variant", atto::variant_name(row.variant)},
                           {"a", atto::encode_complex<Real>(row.a)},
                           {"b", atto::encode_complex<Real>(row.b)},
                           {"verdict", row.verdict},
                           {"residual", row.residual},
                           {"vacuous", row.vacuous}});
      }
      print_json(Json{{"checks", std::move(out)},
                      {"agree", atto::verdicts_agree(rows)},
                      {"member", all_true}});
      return all_true ? 0 : 1;
    }
    const auto result = atto::membership(A, parse_variant(variant_name), tol,
                                         parse_complex_flag(a_flag), parse_complex_flag(b_flag));
    print_json(atto::encode_result(result));
    return result.verdict ? 0 : 1;
  }

  if (recover->parsed()) {
    const auto A = atto::decode_operator<Real>(Json::parse(read_operator_input(input_path)),
                                               quad_nodes, zero_cap);
    try {
      const auto pair = atto::recover_symbol(A, tol);
      const auto rebuilt = atto::atto_matrix(A.domain, A.codomain, pair.boundary_samples());
      print_json(Json{{"chi", atto::encode_coeffs(pair.chi)},
                      {"psi", atto::encode_coeffs(pair.psi)},
                      {"rebuild_residual",
                       (rebuilt.entries - A.entries).norm() /
                           std::max(Real(1), A.frobenius_norm())}});
      return 0;
    } catch (const atto::NotAMember& e) {
      std::cerr << "not a member: " << e.what() << "\n";
      return 1;
    }
  }

  if (series->parsed()) {
    atto::BlaschkeProduct<Real> alpha = load_blaschke(alpha_spec, zero_cap);
    atto::BlaschkeProduct<Real> beta =
        beta_spec.empty() ? alpha : load_blaschke(beta_spec, zero_cap);
    const Real max_zero = std::max(alpha.max_zero_modulus(), beta.max_zero_modulus());
    const atto::Index deg_cap = std::max(alpha.degree(), beta.degree());
    auto [dom, cod] = atto::tm_basis_pair(std::move(alpha), std::move(beta), quad_nodes);
    const auto phi = atto::symbol_samples_from_spec<Real>(symbol_spec, dom, cod);
    const auto pair =
        atto::normalize_symbol_pair(atto::symbol_defect_pair(dom, cod, phi));
    const auto target = atto::atto_matrix(dom, cod, phi);
    const Real scale = std::max(Real(1), target.frobenius_norm());

    atto::Index n_last = series_last;
    if (n_last < 0)
      n_last = max_zero < Real(1e-12)
                   ? deg_cap - 1
                   : static_cast<atto::Index>(
                         std::ceil(std::log(tol) / std::log(max_zero + 1e-3)));

    Json residuals = Json::array();
    Real final_residual = 0;
    bool monotone = true;
    Real previous = std::numeric_limits<Real>::infinity();
    for (atto::Index n = 0; n <= n_last; ++n) {
      final_residual =
          (atto::series_partial_sum(pair, n).entries - target.entries).norm() / scale;
      if (final_residual > previous + 1e-12) monotone = false;
      previous = final_residual;
      residuals.push_back(final_residual);
    }
    const bool pass = monotone && final_residual <= tol;
    print_json(Json{{"n_last", n_last},
                    {"residuals", std::move(residuals)},
                    {"monotone", monotone},
                    {"final_residual", final_residual},
                    {"pass", pass}});
    return pass ? 0 : 1;
  }

  // suite
  if (tol < 1e-10)
    std::cerr << "warning: tolerance " << tol
              << " is below construction accuracy 1e-10; checks are expected to fail\n";
  atto::RunConfig<Real> cfg;
  cfg.tol = tol;
  cfg.quad_nodes = quad_nodes;
  cfg.seed = seed;
  cfg.trials = trials;
  cfg.deg_alpha = deg_alpha;
  cfg.deg_beta = deg_beta;
  const atto::Report report = atto::run_acceptance_suite(cfg);
  for (const auto& check : report.checks)
    std::fprintf(stderr, "%-22s %s  worst %.3e  (%.2fs)  %s\n", check.name.c_str(),
                 check.pass ? "PASS" : "FAIL", check.worst, check.elapsed_s,
                 check.detail.c_str());
  std::fprintf(stderr, "aggregate: %s\n", report.aggregate ? "PASS" : "FAIL");
  print_json(atto::report_to_json(report, cfg));
  return report.aggregate ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
