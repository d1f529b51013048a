#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "tagcodes/bounds.hpp"
#include "tagcodes/concat.hpp"
#include "tagcodes/errors.hpp"
#include "tagcodes/selftest.hpp"
#include "tagcodes/sums.hpp"

using namespace tagcodes;

namespace {

struct Config {
  std::string family = "hermitian";
  std::uint64_t r = 2;
  std::uint32_t e = 0;
  std::uint64_t u = 0;
  std::uint64_t T = 0;
  std::uint64_t ell = 0;
  std::string filter = "full";
  std::optional<std::uint64_t> tower_cap;
  std::optional<std::uint64_t> nt_cap;
  std::uint64_t budget = 1000;
  std::uint64_t seed = 0;
  std::string out;
  std::string format;  // empty: the subcommand's default
  std::uint64_t t = 0;
  std::uint64_t d = 0;
  std::uint64_t B_multiplier = 4;
  std::vector<std::string> terms;
  std::string kind = "exp";
};

CurvePtr load_curve(const Config& c) {
  return build_curve({parse_family(c.family), c.r, c.e, c.u});
}

BasisCaps caps(const Config& c) { return {c.tower_cap, c.nt_cap}; }

// The first allowed format is the default.
std::string pick_format(const Config& c, std::initializer_list<const char*> allowed) {
  if (c.format.empty()) return *allowed.begin();
  for (const auto* f : allowed) {
    if (c.format == f) return f;
  }
  throw validation_error("format '" + c.format + "' is not available for this subcommand");
}

void emit(const Config& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(c.out, std::ios::binary);
  require(static_cast<bool>(file), "cannot open output file " + c.out);
  file << text;
}

void emit(const Config& c, const nlohmann::ordered_json& j) { emit(c, j.dump(2) + "\n"); }

Term parse_term(const CurveModel& model, const std::string& text) {
  const auto colon = text.find(':');
  require(colon != std::string::npos, "term must look like COEF:e1,e2");
  Term t{model.field->parse(text.substr(0, colon)), {}};
  std::stringstream exps(text.substr(colon + 1));
  for (std::string part; std::getline(exps, part, ',');) {
    require(!part.empty() && part.find_first_not_of("0123456789") == std::string::npos,
            "bad exponent '" + part + "' in term " + text);
    t.exponents.push_back(static_cast<std::uint32_t>(std::stoul(part)));
  }
  require(t.exponents.size() == model.variables(), "term " + text + " needs " +
                                                       std::to_string(model.variables()) + " exponents");
  return t;
}

int run_curve(const Config& c) {
  pick_format(c, {"json"});
  emit(c, curve_report_json(*load_curve(c)));
  return 0;
}

int run_basis(const Config& c) {
  const auto format = pick_format(c, {"json", "csv"});
  const auto b = build_basis(load_curve(c), c.T, parse_filter(c.filter), c.ell, caps(c));
  if (format == "json") {
    emit(c, basis_json(b));
    return 0;
  }
  std::ostringstream out;
  out << "exponents,pole_order\n";
  for (const auto& m : b.monomials) {
    out << '"';
    for (std::size_t i = 0; i < m.exponents.size(); ++i) out << (i ? "," : "") << m.exponents[i];
    out << "\"," << m.pole_order << "\n";
  }
  emit(c, out.str());
  return 0;
}

CodeCtx load_code(const Config& c) {
  const auto model = load_curve(c);
  const auto ell = c.ell ? c.ell : model->p;
  return make_code(build_basis(model, c.T, parse_filter(c.filter), ell, caps(c)), ell);
}

int run_code(const Config& c) {
  const auto format = pick_format(c, {"json", "matrix-text"});
  const auto ctx = load_code(c);
  const auto m = generator_matrix(ctx);
  if (format == "json") {
    emit(c, code_report_json(ctx, m));
  } else {
    emit(c, matrix_text(m));
  }
  return 0;
}

int run_spectrum(const Config& c) {
  const auto format = pick_format(c, {"json", "csv"});
  const auto s = spectrum(load_code(c), c.budget, c.seed);
  if (format == "json") {
    emit(c, spectrum_json(s));
  } else {
    emit(c, spectrum_csv(s));
  }
  return 0;
}

int run_bound(const Config& c) {
  pick_format(c, {"json"});
  const auto model = load_curve(c);
  require(c.t > 0, "--t is required");
  const auto ell = c.ell ? c.ell : 2;
  const auto d = c.d ? c.d : ell;
  BoundInputs in{model->N, model->q, model->g, model->s, d, c.t, model->p, false, c.B_multiplier};
  // z^d - z = f is Artin-Schreier exactly when d is a power of p and p does not divide t
  const auto pp = prime_power(d);
  in.artin_schreier = pp && pp->prime == model->p && c.t % model->p != 0;
  const auto rep = prop_general_search(in);

  nlohmann::ordered_json j;
  j["curve"] = curve_id(*model);
  j["report"] = bound_report_json(rep);
  j["distance_lower_bound"] =
      rep.feasible ? nlohmann::ordered_json(to_string(distance_from_bound(rep.bound_NL, ell, model->N - 1)))
                   : nlohmann::ordered_json(nullptr);
  if (d >= 2) j["prop55"] = prop55_json(prop55_condition(c.t, model->s, model->N, model->q, d, model->sigma()));
  emit(c, j);
  return 0;
}

int run_sum(const Config& c) {
  pick_format(c, {"json"});
  const auto model = load_curve(c);
  require(!c.terms.empty(), "at least one --term is required");
  std::vector<Term> terms;
  for (const auto& t : c.terms) terms.push_back(parse_term(*model, t));
  const auto values = evaluate_terms(*model, terms);
  if (c.kind == "exp") {
    emit(c, sum_report_json(exp_sum(*model, values, terms_degree(*model, terms))));
  } else if (c.kind == "char") {
    require(c.d > 0, "--d is required for character sums");
    emit(c, sum_report_json(char_sum(*model, values, c.d)));
  } else {
    throw validation_error("unknown sum kind '" + c.kind + "'");
  }
  return 0;
}

int run_compare(const Config& c) {
  const auto format = pick_format(c, {"csv", "json"});
  CompareOptions opt;
  opt.ell = c.ell ? c.ell : 2;
  opt.budget = c.budget;
  opt.seed = c.seed;
  opt.outer_filter = parse_filter(c.filter);
  require(opt.outer_filter == BasisFilter::full || opt.outer_filter == BasisFilter::coprime_char,
          "the outer code uses the full or coprime_char basis");
  opt.caps = caps(c);
  const auto row = compare(load_curve(c), c.T, opt);
  if (format == "json") {
    emit(c, comparison_json(row));
  } else {
    emit(c, comparison_csv_header() + comparison_csv_line(row));
  }
  return 0;
}

int run_selftest(const Config& c) {
  SelftestOptions opt;
  if (!c.out.empty()) opt.out_dir = c.out;
  return selftest(std::cout, opt);
}

void curve_flags(CLI::App* sub, Config& c) {
  sub->add_option("--family", c.family, "line, hermitian, norm_trace or hermitian_tower");
  sub->add_option("--r", c.r, "family parameter r (field order for the line)");
  sub->add_option("--e", c.e, "extension degree (norm_trace, hermitian_tower)");
  sub->add_option("--u", c.u, "norm-trace exponent, 0 for (q-1)/(r-1)");
}

void code_flags(CLI::App* sub, Config& c) {
  curve_flags(sub, c);
  sub->add_option("--T", c.T, "pole order cap")->required();
  sub->add_option("--ell", c.ell, "subfield order");
  sub->add_option("--filter", c.filter, "full, coprime_char, restricted_V or hermitian_intro_b");
  sub->add_option("--tower-cap", c.tower_cap);
  sub->add_option("--nt-cap", c.nt_cap);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"TAG code laboratory"};
  app.require_subcommand(1);
  Config c;

  auto* curve = app.add_subcommand("curve", "curve invariants");
  curve_flags(curve, c);

  auto* basis = app.add_subcommand("basis", "Riemann-Roch basis");
  code_flags(basis, c);

  auto* code = app.add_subcommand("code", "generator matrix and code report");
  code_flags(code, c);

  auto* spec = app.add_subcommand("spectrum", "weight distribution");
  code_flags(spec, c);
  spec->add_option("--budget", c.budget, "maximum number of messages");
  spec->add_option("--seed", c.seed);

  auto* bound = app.add_subcommand("bound", "certified bound on rational places of z^d - z = f");
  curve_flags(bound, c);
  bound->add_option("--t", c.t, "pole order of f")->required();
  bound->add_option("--ell", c.ell, "subfield order of the trace code");
  bound->add_option("--d", c.d, "extension degree (defaults to ell)");
  bound->add_option("--B-multiplier", c.B_multiplier);

  auto* sum = app.add_subcommand("sum", "exponential or character sum");
  curve_flags(sum, c);
  sum->add_option("--term", c.terms, "COEF:e1,e2 with COEF an element string")->required();
  sum->add_option("--kind", c.kind, "exp or char");
  sum->add_option("--d", c.d, "character order");

  auto* cmp = app.add_subcommand("compare", "TAG code against the Hadamard concatenation");
  code_flags(cmp, c);
  cmp->add_option("--budget", c.budget);
  cmp->add_option("--seed", c.seed);

  auto* st = app.add_subcommand("selftest", "desk-scale acceptance suite");

  for (auto* sub : {curve, basis, code, spec, bound, sum, cmp}) {
    sub->add_option("--out", c.out, "output path (stdout when absent)");
    sub->add_option("--format", c.format, "json, csv or matrix-text");
  }
  st->add_option("--out", c.out, "directory for matrix files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c.budget == 0) throw validation_error("budget must be positive");
    if (*curve) return run_curve(c);
    if (*basis) return run_basis(c);
    if (*code) return run_code(c);
    if (*spec) return run_spectrum(c);
    if (*bound) return run_bound(c);
    if (*sum) return run_sum(c);
    if (*cmp) return run_compare(c);
    if (*st) return run_selftest(c);
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const invariant_error& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
