#include "tagcodes/selftest.hpp"

#include <chrono>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "tagcodes/bounds.hpp"
#include "tagcodes/concat.hpp"
#include "tagcodes/errors.hpp"
#include "tagcodes/sums.hpp"

namespace tagcodes {

namespace {

struct Check {
  bool pass = true;
  std::string first_failure;

  void expect(bool ok, const std::string& what) {
    if (!ok && pass) first_failure = what;
    pass = pass && ok;
  }
};

struct DeskModel {
  CurveSpec spec;
  std::uint64_t expected_N;
};

const std::vector<DeskModel>& desk_models() {
  static const std::vector<DeskModel> models = {
      {{CurveFamily::hermitian, 2, 0, 0}, 9},        {{CurveFamily::hermitian, 3, 0, 0}, 28},
      {{CurveFamily::hermitian, 4, 0, 0}, 65},       {{CurveFamily::hermitian, 5, 0, 0}, 126},
      {{CurveFamily::hermitian, 7, 0, 0}, 344},      {{CurveFamily::hermitian, 8, 0, 0}, 513},
      {{CurveFamily::norm_trace, 2, 3, 7}, 33},      {{CurveFamily::norm_trace, 3, 3, 13}, 244},
      {{CurveFamily::hermitian_tower, 4, 2, 0}, 65}, {{CurveFamily::hermitian_tower, 4, 3, 0}, 257},
  };
  return models;
}

const std::vector<std::uint64_t> kLineOrders = {4, 8, 9, 16, 25};

std::vector<std::uint32_t> poly_coeffs_from_index(std::uint64_t idx, std::uint64_t q, std::uint32_t deg) {
  std::vector<std::uint32_t> c(deg + 1);
  for (std::uint32_t k = 0; k < deg; ++k, idx /= q) c[k] = static_cast<std::uint32_t>(idx % q);
  c[deg] = 1;
  return c;
}

std::vector<Term> poly_terms(const std::vector<std::uint32_t>& coeffs) {
  std::vector<Term> terms;
  for (std::uint32_t e = 0; e < coeffs.size(); ++e) terms.push_back({Elem{coeffs[e]}, {e}});
  return terms;
}

struct Instance {
  std::uint64_t r, T, ell;
};

class Runner {
 public:
  explicit Runner(const SelftestOptions& options) : opt_(options) {}

  CurvePtr curve(const CurveSpec& spec) {
    const auto key = curve_key(spec);
    auto& slot = curves_[key];
    if (!slot) slot = build_curve(spec, opt_.source);
    return slot;
  }

  CriterionResult point_counts() {
    Check c;
    for (const auto& m : desk_models()) {
      const auto model = curve(m.spec);
      const auto id = curve_id(*model);
      c.expect(model->N == m.expected_N, id + ": N = " + std::to_string(model->N));
      c.expect(model->N == closed_form_N(m.spec), id + ": closed form differs");
      c.expect(model->places.size() == model->N, id + ": place list size");
    }
    return {1, "point counts", c.pass,
            c.pass ? std::to_string(desk_models().size()) + " models, enumeration equals closed form" : c.first_failure};
  }

  CriterionResult hasse_weil() {
    Check c;
    std::size_t count = 0;
    auto check = [&](const CurvePtr& m) {
      const auto diff = static_cast<std::int64_t>(m->N) - static_cast<std::int64_t>(m->q + 1);
      const auto lhs = static_cast<std::uint64_t>(diff * diff);
      c.expect(lhs <= 4 * m->g * m->g * m->q, curve_id(*m) + " violates Hasse-Weil");
      c.expect(satisfies_hasse_weil(*m), curve_id(*m) + ": library check disagrees");
      ++count;
    };
    for (const auto& m : desk_models()) check(curve(m.spec));
    for (const auto q : kLineOrders) check(curve({CurveFamily::line, q, 0, 0}));
    return {2, "Hasse-Weil", c.pass, c.pass ? std::to_string(count) + " models" : c.first_failure};
  }

  CriterionResult riemann_roch() {
    Check c;
    std::size_t cases = 0;
    for (const auto& m : desk_models()) {
      const auto model = curve(m.spec);
      for (std::uint64_t T = 2 * model->g - 1; T <= 2 * model->g + 20; ++T) {
        const auto size = build_basis(model, T, BasisFilter::full).size();
        c.expect(size == T - model->g + 1, curve_id(*model) + " T=" + std::to_string(T) + ": dim " +
                                               std::to_string(size));
        ++cases;
      }
    }
    return {3, "Riemann-Roch", c.pass, c.pass ? std::to_string(cases) + " (model, T) pairs" : c.first_failure};
  }

  // Hermitian r in {2,3,4}, ell = p, coprime_char bases with 1 <= T <= 3g.
  std::vector<Instance> weight_instances() {
    std::vector<Instance> out;
    for (std::uint64_t r : {2, 3, 4}) {
      const auto model = curve({CurveFamily::hermitian, r, 0, 0});
      for (std::uint64_t T = 1; T <= 3 * model->g; ++T) {
        if (build_basis(model, T, BasisFilter::coprime_char).empty()) continue;
        out.push_back({r, T, model->p});
      }
    }
    return out;
  }

  CriterionResult weight_identity() {
    Check c;
    std::uint64_t messages = 0;
    const auto instances = weight_instances();
    for (const auto& in : instances) {
      const auto model = curve({CurveFamily::hermitian, in.r, 0, 0});
      const auto ctx = make_code(build_basis(model, in.T, BasisFilter::coprime_char), in.ell);
      std::mt19937_64 rng(1000 * in.r + in.T);
      for (int i = 0; i < 200; ++i) {
        const auto msg = random_message(model->q, ctx.k_q, rng);
        const auto w = weight_of(ctx, msg);
        const auto direct = hamming_weight(encode(ctx, msg));
        const auto label = curve_id(*model) + " T=" + std::to_string(in.T);
        c.expect((w.N_L - 1) % in.ell == 0, label + ": ell does not divide N_L - 1");
        c.expect(direct == ctx.n - (w.N_L - 1) / in.ell, label + ": weight != n - (N_L - 1)/ell");
        ++messages;
      }
    }
    return {4, "weight identity", c.pass,
            c.pass ? std::to_string(instances.size()) + " instances, " + std::to_string(messages) + " messages"
                   : c.first_failure};
  }

  CriterionResult hilbert90() {
    Check c;
    std::size_t fields = 0, pairs = 0;
    for (std::uint32_t p = 2; p <= 4096; ++p) {
      if (!is_prime(p)) continue;
      std::uint64_t q = p;
      for (std::uint32_t u = 1; q <= 4096; ++u, q *= p) {
        const auto f = opt_.source(p, u);
        ++fields;
        for (std::uint32_t v = 1; v <= u; ++v) {
          if (u % v != 0) continue;
          const auto ell = static_cast<std::uint32_t>(checked_pow(p, v));
          const SubfieldView view(f, ell);
          std::vector<std::uint32_t> solutions(q, 0);
          for (std::uint32_t z = 0; z < q; ++z) ++solutions[f->sub(f->pow(Elem{z}, ell), Elem{z}).value];
          for (std::uint32_t x = 0; x < q; ++x) {
            const bool trace_zero = trace_to_subfield(view, Elem{x}).is_zero();
            const bool ok = trace_zero ? solutions[x] == ell : solutions[x] == 0;
            c.expect(ok, "F_" + std::to_string(q) + " over F_" + std::to_string(ell) + ": c = " + f->to_string(Elem{x}));
          }
          ++pairs;
        }
      }
    }
    return {5, "Hilbert 90 splitting", c.pass,
            c.pass ? std::to_string(fields) + " fields, " + std::to_string(pairs) + " (q, ell) pairs" : c.first_failure};
  }

  CriterionResult bound_soundness() {
    Check c;
    const auto model = curve({CurveFamily::hermitian, 8, 0, 0});
    const std::uint64_t ell = 2;
    const auto V = build_basis(model, 60, BasisFilter::restricted_V, ell);
    std::ostringstream detail;
    std::size_t feasible = 0;
    for (std::size_t j = 0; j < V.size(); ++j) {
      const auto t = V.monomials[j].pole_order;
      BoundInputs in{model->N, model->q, model->g, model->s, ell, t, model->p, true};
      const auto rep = prop_general_search(in);
      detail << (j ? "; " : "") << "t=" << t << ": ";
      if (!rep.feasible) {
        detail << "infeasible";
        continue;
      }
      ++feasible;
      const auto ctx = make_code(build_basis(model, t, BasisFilter::restricted_V, ell), ell);
      std::mt19937_64 rng(t);
      std::uint64_t worst = 0;
      for (int i = 0; i < 50; ++i) {
        auto msg = random_message(model->q, ctx.k_q, rng);
        while (msg.back().is_zero()) msg.back() = Elem{static_cast<std::uint32_t>(rng() % model->q)};
        c.expect(function_pole_order(ctx, msg) == t, "random f has the wrong pole order");
        const auto N_L = count_artin_schreier(*model, function_values(ctx, msg), ell);
        worst = std::max(worst, N_L);
        c.expect(N_L <= rep.bound_NL, "t=" + std::to_string(t) + ": N_L " + std::to_string(N_L) + " > bound " +
                                          std::to_string(rep.bound_NL));
      }
      detail << "bound " << rep.bound_NL << " >= max N_L " << worst;
    }
    c.expect(!V.empty(), "restricted V is empty");
    return {6, "bound soundness", c.pass,
            c.pass ? std::to_string(feasible) + "/" + std::to_string(V.size()) + " feasible; " + detail.str()
                   : c.first_failure};
  }

  CriterionResult weil_bound() {
    Check c;
    std::uint64_t polys = 0;
    for (const auto q : kLineOrders) {
      const auto line = curve({CurveFamily::line, q, 0, 0});
      std::mt19937_64 rng(q);
      for (std::uint32_t deg = 2; deg <= 5; ++deg) {
        if (deg % line->p == 0) continue;
        const auto total = checked_pow(q, deg);
        const bool exhaustive = q <= 9;
        const std::uint64_t count = exhaustive ? total : 500;
        for (std::uint64_t i = 0; i < count; ++i) {
          const auto coeffs = poly_coeffs_from_index(exhaustive ? i : rng() % total, q, deg);
          const auto terms = poly_terms(coeffs);
          const auto rep = exp_sum(*line, evaluate_terms(*line, terms), terms_degree(*line, terms));
          c.expect(rep.weil_bound.has_value(), "Weil bound not applicable");
          if (rep.weil_bound) {
            const double limit = static_cast<double>(deg - 1) * std::sqrt(static_cast<double>(q)) + kSumTolerance;
            c.expect(rep.magnitude <= limit, "q=" + std::to_string(q) + " deg=" + std::to_string(deg) +
                                                 ": |S| = " + std::to_string(rep.magnitude));
          }
          ++polys;
        }
      }
    }
    return {7, "Weil bound at genus 0", c.pass, c.pass ? std::to_string(polys) + " polynomials" : c.first_failure};
  }

  CriterionResult kummer_partition() {
    Check c;
    std::uint64_t calls = 0;
    auto run = [&](const CurvePtr& model, const std::vector<Elem>& values) {
      for (std::uint64_t d = 1; d < model->q; ++d) {
        if ((model->q - 1) % d != 0) continue;
        const auto rep = char_sum(*model, values, d);
        std::uint64_t total = rep.zeros;
        for (const auto n : rep.counts) total += n;
        c.expect(rep.counts.size() == d && total == model->N - 1,
                 curve_id(*model) + " d=" + std::to_string(d) + ": parts do not sum to N - 1");
        ++calls;
      }
    };
    for (const auto& m : desk_models()) {
      const auto model = curve(m.spec);
      std::mt19937_64 rng(model->q);
      for (int trial = 0; trial < 5; ++trial) {
        std::vector<Term> terms;
        for (int k = 0; k < 3; ++k) {
          std::vector<std::uint32_t> e(model->variables());
          for (auto& x : e) x = static_cast<std::uint32_t>(rng() % 4);
          terms.push_back({Elem{static_cast<std::uint32_t>(rng() % model->q)}, e});
        }
        run(model, evaluate_terms(*model, terms));
      }
    }
    for (const auto q : kLineOrders) {
      const auto line = curve({CurveFamily::line, q, 0, 0});
      std::mt19937_64 rng(q + 1);
      for (int trial = 0; trial < 50; ++trial) {
        const auto deg = static_cast<std::uint32_t>(1 + rng() % 5);
        run(line, evaluate_terms(*line, poly_terms(poly_coeffs_from_index(rng() % checked_pow(q, deg), q, deg))));
      }
    }
    return {8, "Kummer partition", c.pass, c.pass ? std::to_string(calls) + " character sums" : c.first_failure};
  }

  CriterionResult rank() {
    Check c;
    std::size_t count = 0;
    for (const auto& in : weight_instances()) {
      const auto model = curve({CurveFamily::hermitian, in.r, 0, 0});
      const auto ctx = make_code(build_basis(model, in.T, BasisFilter::coprime_char), in.ell);
      const auto m = generator_matrix(ctx);
      c.expect(m.rank == ctx.k_ell, curve_id(*model) + " T=" + std::to_string(in.T) + ": rank " +
                                        std::to_string(m.rank) + " != " + std::to_string(ctx.k_ell));
      const auto name = "hermitian_r" + std::to_string(in.r) + "_T" + std::to_string(in.T) + "_ell" +
                        std::to_string(in.ell) + ".txt";
      matrices_[name] = matrix_text(m);
      if (opt_.out_dir) {
        std::ofstream file(*opt_.out_dir / name, std::ios::binary);
        file << matrices_[name];
        c.expect(static_cast<bool>(file), "cannot write " + name);
      }
      ++count;
    }
    return {9, "generator rank", c.pass, c.pass ? std::to_string(count) + " matrices at full rank" : c.first_failure};
  }

  CriterionResult concatenation() {
    Check c;
    std::uint64_t messages = 0;
    for (std::uint64_t r : {2, 4}) {
      const auto model = curve({CurveFamily::hermitian, r, 0, 0});
      const auto cc = make_concat(build_basis(model, 2 * model->g + 2, BasisFilter::full));
      c.expect(cc.n_H == model->q * cc.n_T, curve_id(*model) + ": n_H != q n_T");
      std::mt19937_64 rng(r);
      for (int i = 0; i < 100; ++i) {
        const auto msg = random_message(model->q, cc.outer.k_q, rng);
        const auto w = hamming_weight(outer_encode(cc, msg));
        const auto bits = concat_encode(cc, msg);
        c.expect(bits.size() == cc.n_H, curve_id(*model) + ": concatenated length");
        c.expect(bit_weight(bits) == model->q / 2 * w, curve_id(*model) + ": weight != (q/2) outer weight");
        ++messages;
      }
    }
    return {10, "concatenation laws", c.pass, c.pass ? std::to_string(messages) + " messages" : c.first_failure};
  }

  CriterionResult determinism() {
    Check c;
    for (const auto& [name, text] : matrices_) {
      const auto in = parse_matrix_name(name);
      const auto model = curve({CurveFamily::hermitian, in.r, 0, 0});
      const auto again = matrix_text(generator_matrix(make_code(build_basis(model, in.T, BasisFilter::coprime_char), in.ell)));
      c.expect(again == text, name + " differs on rebuild");
      if (opt_.out_dir) {
        std::ifstream file(*opt_.out_dir / name, std::ios::binary);
        std::ostringstream buf;
        buf << file.rdbuf();
        c.expect(buf.str() == text, name + " on disk differs");
      }
    }
    c.expect(!matrices_.empty(), "no matrices were produced");
    const auto model = curve({CurveFamily::hermitian, 8, 0, 0});
    CompareOptions copt;
    copt.budget = 200;
    copt.seed = 7;
    const auto a = comparison_csv_line(compare(model, 40, copt));
    const auto b = comparison_csv_line(compare(model, 40, copt));
    c.expect(a == b, "sampled comparison rows differ");
    return {11, "determinism", c.pass,
            c.pass ? std::to_string(matrices_.size()) + " matrices and a sampled comparison row reproduced"
                   : c.first_failure};
  }

 private:
  static std::string curve_key(const CurveSpec& s) {
    return to_string(s.family) + "/" + std::to_string(s.r) + "/" + std::to_string(s.e) + "/" + std::to_string(s.u_nt);
  }

  static Instance parse_matrix_name(const std::string& name) {
    Instance in{};
    std::sscanf(name.c_str(), "hermitian_r%lu_T%lu_ell%lu", &in.r, &in.T, &in.ell);
    return in;
  }

  const SelftestOptions& opt_;
  std::map<std::string, CurvePtr> curves_;
  std::map<std::string, std::string> matrices_;
};

}  // namespace

std::vector<CriterionResult> run_selftest(const SelftestOptions& options) {
  if (options.out_dir) std::filesystem::create_directories(*options.out_dir);
  Runner runner(options);
  using Step = CriterionResult (Runner::*)();
  const std::vector<std::pair<Step, std::string>> steps = {
      {&Runner::point_counts, "point counts"},       {&Runner::hasse_weil, "Hasse-Weil"},
      {&Runner::riemann_roch, "Riemann-Roch"},       {&Runner::weight_identity, "weight identity"},
      {&Runner::hilbert90, "Hilbert 90 splitting"},  {&Runner::bound_soundness, "bound soundness"},
      {&Runner::weil_bound, "Weil bound at genus 0"}, {&Runner::kummer_partition, "Kummer partition"},
      {&Runner::rank, "generator rank"},             {&Runner::concatenation, "concatenation laws"},
      {&Runner::determinism, "determinism"},
  };
  std::vector<CriterionResult> results;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = (runner.*steps[i].first)();
    } catch (const std::exception& e) {
      r = {static_cast<int>(i + 1), steps[i].second, false, std::string("error: ") + e.what()};
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    if (options.on_result) options.on_result(r, elapsed.count());
    results.push_back(r);
  }
  return results;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream out;
  out << (r.id < 10 ? " " : "") << r.id << "  " << (r.pass ? "PASS" : "FAIL") << "  " << r.name << ": " << r.detail;
  return out.str();
}

int selftest(std::ostream& out, const SelftestOptions& options) {
  out << "selftest\n";
  std::size_t passed = 0;
  for (const auto& r : run_selftest(options)) {
    out << format_result(r) << "\n";
    passed += r.pass;
  }
  out << passed << "/" << kCriterionCount << " criteria passed\n";
  return passed == kCriterionCount ? 0 : 3;
}

}  // namespace tagcodes
