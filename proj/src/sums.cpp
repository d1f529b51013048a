#include "tagcodes/sums.hpp"

#include <cmath>
#include <numbers>

#include "tagcodes/errors.hpp"

namespace tagcodes {

namespace {

std::complex<double> root_of_unity(std::uint64_t k, std::uint64_t n) {
  if (k % n == 0) return {1.0, 0.0};
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(k % n) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

std::vector<Elem> evaluate_terms(const CurveModel& model, std::span<const Term> terms) {
  const Field& f = *model.field;
  std::vector<Elem> out;
  out.reserve(model.affine_count());
  for (const auto& place : model.affine_places()) {
    Elem acc = Field::zero();
    for (const auto& t : terms) {
      require(f.contains(t.coef), "coefficient outside the field");
      acc = f.add(acc, f.mul(t.coef, evaluate_monomial(model, t.exponents, place)));
    }
    out.push_back(acc);
  }
  return out;
}

std::optional<std::uint64_t> terms_degree(const CurveModel& model, std::span<const Term> terms) {
  std::optional<std::uint64_t> best;
  bool unique = false;
  for (const auto& t : terms) {
    if (t.coef.is_zero()) continue;
    require(t.exponents.size() == model.variables(), "exponent tuple length does not match the curve family");
    std::uint64_t order = 0;
    for (std::size_t i = 0; i < t.exponents.size(); ++i) order += t.exponents[i] * model.pole_orders[i];
    if (!best || order > *best) {
      best = order;
      unique = true;
    } else if (order == *best) {
      unique = false;
    }
  }
  if (!unique) return std::nullopt;
  return best;
}

SumReport exp_sum(const CurveModel& model, std::span<const Elem> f_values, std::optional<std::uint64_t> degree) {
  require(f_values.size() == model.affine_count(), "need one function value per affine place");
  const Field& f = *model.field;
  const SubfieldView prime(model.field, model.p);

  SumReport rep;
  rep.kind = "exp";
  rep.N = model.N;
  rep.counts.assign(model.p, 0);
  for (std::uint32_t b = 0; b < model.p; ++b) rep.labels.push_back(std::to_string(b));
  for (const auto v : f_values) {
    require(f.contains(v), "function value outside the field");
    ++rep.counts[prime.trace(v).value];
  }
  if (model.p == 2) {
    rep.value = {static_cast<double>(rep.counts[0]) - static_cast<double>(rep.counts[1]), 0.0};
  } else {
    for (std::uint32_t b = 0; b < model.p; ++b) rep.value += static_cast<double>(rep.counts[b]) * root_of_unity(b, model.p);
  }
  rep.magnitude = std::abs(rep.value);
  rep.trivial_bound = model.N - 1;
  if (degree && model.g == 0 && *degree % model.p != 0) {
    rep.weil_bound = static_cast<double>(*degree - 1) * std::sqrt(static_cast<double>(model.q));
  }
  return rep;
}

SumReport char_sum(const CurveModel& model, std::span<const Elem> f_values, std::uint64_t d) {
  const auto k = count_kummer_splits(model, f_values, d);
  const Field& f = *model.field;

  SumReport rep;
  rep.kind = "char";
  rep.N = model.N;
  rep.counts = k.S;
  rep.zeros = k.zeros;
  for (std::size_t i = 0; i < d; ++i) {
    const auto c = f.coset_index(k.representatives[i], d);
    rep.labels.push_back(f.to_string(k.representatives[i]));
    // S[i] counts f(P) with chi(f(P)) = chi(eps_i)^{-1}
    rep.value += static_cast<double>(k.S[i]) * root_of_unity((d - c) % d, d);
  }
  rep.magnitude = std::abs(rep.value);
  rep.trivial_bound = model.N - 1;
  return rep;
}

nlohmann::ordered_json sum_report_json(const SumReport& r) {
  nlohmann::ordered_json j;
  j["kind"] = r.kind;
  nlohmann::ordered_json counts = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < r.counts.size(); ++i) counts[r.labels[i]] = r.counts[i];
  j["counts"] = counts;
  if (r.kind == "char") j["zeros"] = r.zeros;
  j["value_re"] = r.value.real();
  j["value_im"] = r.value.imag();
  j["magnitude"] = r.magnitude;
  j["trivial_bound"] = r.trivial_bound;
  if (r.weil_bound) j["weil_bound"] = *r.weil_bound;
  j["ratio_to_N"] = r.magnitude / static_cast<double>(r.N);
  return j;
}

}  // namespace tagcodes
