#include "tagcodes/code.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

#include "tagcodes/errors.hpp"

namespace tagcodes {

namespace {

std::string monomial_name(const CurveModel& model, std::span<const std::uint32_t> exps) {
  std::string out;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] == 0) continue;
    std::string var;
    if (model.spec.family == CurveFamily::hermitian_tower) {
      var = "x" + std::to_string(i + 1);
    } else {
      var = i == 0 ? "x" : "y";
    }
    if (!out.empty()) out += "*";
    out += var;
    if (exps[i] > 1) out += "^" + std::to_string(exps[i]);
  }
  return out.empty() ? "1" : out;
}

// q^k, or budget + 1 if that is larger than budget.
std::uint64_t capped_power(std::uint64_t q, std::size_t k, std::uint64_t budget) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (total > budget / q) return budget + 1;
    total *= q;
  }
  return total;
}

unsigned worker_count(std::uint64_t work) {
  const unsigned hw = std::max(1U, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::clamp<std::uint64_t>(work / 4096, 1, hw));
}

}  // namespace

CodeCtx make_code(const BasisSpec& basis, std::uint64_t ell) {
  require(basis.model != nullptr, "basis has no curve model");
  if (ell == 0) ell = basis.ell;
  require(ell != 0, "code needs a target subfield order ell");
  require_subfield_order(*basis.model, ell);

  CodeCtx ctx;
  ctx.model = basis.model;
  ctx.basis = basis;
  ctx.view = std::make_shared<const SubfieldView>(basis.model->field, static_cast<std::uint32_t>(ell));
  ctx.n = basis.model->affine_count();
  ctx.k_q = basis.size();
  ctx.k_ell = ctx.k_q * ctx.view->relative_degree();
  ctx.values.reserve(ctx.k_q * ctx.n);
  for (const auto& m : basis.monomials) {
    for (const auto& place : basis.model->affine_places()) {
      ctx.values.push_back(evaluate_monomial(*basis.model, m.exponents, place));
    }
  }
  return ctx;
}

std::vector<Elem> function_values(const CodeCtx& ctx, std::span<const Elem> coeffs) {
  require(coeffs.size() == ctx.k_q, "message has " + std::to_string(coeffs.size()) + " coefficients, basis has " +
                                        std::to_string(ctx.k_q));
  const Field& f = ctx.field();
  std::vector<Elem> out(ctx.n, Field::zero());
  for (std::size_t j = 0; j < ctx.k_q; ++j) {
    require(f.contains(coeffs[j]), "coefficient outside the field");
    if (coeffs[j].is_zero()) continue;
    const Elem* row = ctx.values.data() + j * ctx.n;
    for (std::size_t i = 0; i < ctx.n; ++i) out[i] = f.add(out[i], f.mul(coeffs[j], row[i]));
  }
  return out;
}

std::vector<Elem> encode(const CodeCtx& ctx, std::span<const Elem> coeffs) {
  auto out = function_values(ctx, coeffs);
  for (auto& v : out) v = ctx.view->trace(v);
  return out;
}

std::uint64_t hamming_weight(std::span<const Elem> word) {
  return static_cast<std::uint64_t>(std::count_if(word.begin(), word.end(), [](Elem e) { return !e.is_zero(); }));
}

std::size_t rank_over_subfield(const SubfieldView& view, std::vector<std::vector<std::uint32_t>> rows) {
  if (rows.empty()) return 0;
  const Field& f = *view.field();
  std::vector<std::vector<Elem>> m;
  for (const auto& r : rows) {
    std::vector<Elem> row;
    for (auto label : r) row.push_back(view.from_label(label));
    m.push_back(std::move(row));
  }
  const std::size_t cols = m.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][c].is_zero()) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    const Elem inv = f.inv(m[rank][c]);
    for (auto& v : m[rank]) v = f.mul(v, inv);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c].is_zero()) continue;
      const Elem factor = m[r][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] = f.sub(m[r][k], f.mul(factor, m[rank][k]));
    }
    ++rank;
  }
  return rank;
}

GeneratorMatrix generator_matrix(const CodeCtx& ctx) {
  GeneratorMatrix out;
  out.ell = ctx.ell();
  out.n = ctx.n;
  const auto basis = subfield_basis(*ctx.view);
  std::vector<Elem> coeffs(ctx.k_q, Field::zero());
  for (std::size_t j = 0; j < ctx.k_q; ++j) {
    for (const auto b : basis) {
      coeffs[j] = b;
      std::vector<std::uint32_t> row;
      for (const auto v : encode(ctx, coeffs)) row.push_back(ctx.view->label(v));
      out.rows.push_back(std::move(row));
    }
    coeffs[j] = Field::zero();
  }
  out.rank = rank_over_subfield(*ctx.view, out.rows);
  return out;
}

std::string matrix_text(const GeneratorMatrix& m) {
  require(m.ell <= 36, "matrix-text digits need ell <= 36");
  static constexpr char kDigits[] = "0123456789abcdefghijklmnopqrstuvwxyz";
  std::string out = std::to_string(m.ell) + " " + std::to_string(m.rows.size()) + " " + std::to_string(m.n) + "\n";
  for (const auto& row : m.rows) {
    for (auto d : row) out += kDigits[d];
    out += "\n";
  }
  return out;
}

std::uint64_t function_pole_order(const CodeCtx& ctx, std::span<const Elem> coeffs) {
  require(coeffs.size() == ctx.k_q, "message length does not match the basis");
  for (std::size_t j = ctx.k_q; j-- > 0;) {
    if (!coeffs[j].is_zero()) return ctx.basis.monomials[j].pole_order;
  }
  throw validation_error("the zero message has no pole order");
}

std::string describe_function(const CodeCtx& ctx, std::span<const Elem> coeffs) {
  std::string out;
  for (std::size_t j = 0; j < coeffs.size() && j < ctx.k_q; ++j) {
    if (coeffs[j].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += ctx.field().to_string(coeffs[j]) + "*" + monomial_name(*ctx.model, ctx.basis.monomials[j].exponents);
  }
  return out.empty() ? "0" : out;
}

WeightReport weight_of(const CodeCtx& ctx, std::span<const Elem> coeffs) {
  WeightReport rep;
  rep.pole_order = function_pole_order(ctx, coeffs);
  require(rep.pole_order % ctx.model->p != 0,
          "pole order " + std::to_string(rep.pole_order) + " is divisible by p; the splitting identity needs p ∤ deg");
  rep.description = describe_function(ctx, coeffs);
  rep.n = ctx.n;

  const auto values = function_values(ctx, coeffs);
  std::uint64_t direct = 0;
  for (const auto v : values) direct += !ctx.view->trace(v).is_zero();

  rep.N_L = count_artin_schreier(*ctx.model, values, ctx.ell());
  ensure((rep.N_L - 1) % ctx.ell() == 0, "N_L - 1 is not a multiple of ell");
  rep.trace_zero_count = (rep.N_L - 1) / ctx.ell();
  rep.weight = rep.n - rep.trace_zero_count;
  ensure(rep.weight == direct, "weight of " + rep.description + ": direct " + std::to_string(direct) +
                                   ", from N_L " + std::to_string(rep.weight));
  return rep;
}

std::vector<Elem> random_message(std::uint64_t q, std::size_t k, std::mt19937_64& rng) {
  std::vector<Elem> out(k);
  if (k == 0) return out;
  do {
    for (auto& c : out) c = Elem{static_cast<std::uint32_t>(rng() % q)};
  } while (std::all_of(out.begin(), out.end(), [](Elem e) { return e.is_zero(); }));
  return out;
}

Rational Spectrum::epsilon_hat() const {
  if (counts.empty()) return Rational(0);
  const auto N = static_cast<std::int64_t>(n);
  const auto L = static_cast<std::int64_t>(ell);
  std::int64_t worst = 0;
  for (const auto& [w, c] : counts) {
    worst = std::max(worst, std::abs(static_cast<std::int64_t>(w) * L - (L - 1) * N));
  }
  return Rational(worst, N * L);
}

Spectrum run_spectrum(std::uint64_t q, std::size_t k, std::uint64_t n, std::uint64_t ell, std::uint64_t budget,
                      std::uint64_t seed, const MessageWeight& weight) {
  require(budget > 0, "spectrum budget must be positive");
  Spectrum out;
  out.n = n;
  out.ell = ell;
  if (k == 0) return out;

  const std::uint64_t total = capped_power(q, k, budget);
  out.exhaustive = total <= budget;
  const std::uint64_t work = out.exhaustive ? total - 1 : budget;
  out.messages = work;

  auto message_at = [&](std::uint64_t i, std::vector<Elem>& msg) {
    if (out.exhaustive) {
      std::uint64_t idx = i + 1;
      for (std::size_t j = 0; j < k; ++j, idx /= q) msg[j] = Elem{static_cast<std::uint32_t>(idx % q)};
    } else {
      std::mt19937_64 rng(seed + i);
      msg = random_message(q, k, rng);
    }
  };

  const unsigned workers = worker_count(work);
  std::vector<std::map<std::uint64_t, std::uint64_t>> partial(workers);
  std::vector<std::exception_ptr> errors(workers);
  auto run = [&](unsigned w) {
    try {
      std::vector<Elem> msg(k);
      for (std::uint64_t i = work * w / workers; i < work * (w + 1) / workers; ++i) {
        message_at(i, msg);
        ++partial[w][weight(msg)];
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run, w);
    for (auto& t : threads) t.join();
  }
  for (unsigned w = 0; w < workers; ++w) {
    if (errors[w]) std::rethrow_exception(errors[w]);
    for (const auto& [wt, c] : partial[w]) out.counts[wt] += c;
  }
  return out;
}

Spectrum spectrum(const CodeCtx& ctx, std::uint64_t budget, std::uint64_t seed) {
  return run_spectrum(ctx.model->q, ctx.k_q, ctx.n, ctx.ell(), budget, seed,
                      [&](std::span<const Elem> msg) { return hamming_weight(encode(ctx, msg)); });
}

std::string spectrum_csv(const Spectrum& s) {
  std::ostringstream out;
  out << "weight,count\n";
  for (const auto& [w, c] : s.counts) out << w << "," << c << "\n";
  return out.str();
}

nlohmann::ordered_json spectrum_json(const Spectrum& s) {
  nlohmann::ordered_json j;
  j["mode"] = s.exhaustive ? "exhaustive" : "sampled";
  j["messages"] = s.messages;
  j["n"] = s.n;
  j["ell"] = s.ell;
  auto counts = nlohmann::ordered_json::array();
  for (const auto& [w, c] : s.counts) counts.push_back({{"weight", w}, {"count", c}});
  j["counts"] = counts;
  if (s.empty()) {
    j["min_weight"] = nullptr;
    j["max_weight"] = nullptr;
    j["epsilon_hat"] = nullptr;
  } else {
    j["min_weight"] = s.min_weight();
    j["max_weight"] = s.max_weight();
    j["epsilon_hat"] = to_string(s.epsilon_hat());
  }
  return j;
}

MinDistance min_distance(const CodeCtx& ctx, std::uint64_t seed) {
  const auto s = spectrum(ctx, kExhaustiveDistanceLimit, seed);
  require(!s.empty(), "empty code has no minimum distance");
  return {s.min_weight(), s.exhaustive};
}

nlohmann::ordered_json code_report_json(const CodeCtx& ctx, const GeneratorMatrix& m) {
  nlohmann::ordered_json j;
  j["curve"] = curve_report_json(*ctx.model);
  j["T"] = ctx.basis.T;
  j["filter"] = to_string(ctx.basis.filter);
  j["ell"] = ctx.ell();
  j["n"] = ctx.n;
  j["k_q"] = ctx.k_q;
  j["k_ell"] = ctx.k_ell;
  j["rank"] = m.rank;
  j["injective"] = m.rank == ctx.k_ell;
  j["basis"] = basis_json(ctx.basis);
  return j;
}

}  // namespace tagcodes
