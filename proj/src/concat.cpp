#include "tagcodes/concat.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "tagcodes/errors.hpp"

namespace tagcodes {

Bits hadamard_encode(std::span<const std::uint8_t> u) {
  require(!u.empty(), "Hadamard message must be non-empty");
  require(u.size() < 32, "Hadamard message too long");
  const auto m = static_cast<std::uint32_t>(u.size());
  std::uint32_t a = 0;
  for (const auto bit : u) {
    require(bit <= 1, "Hadamard message must be bits");
    a = (a << 1) | bit;
  }
  Bits out(std::size_t{1} << m);
  for (std::uint32_t v = 0; v < out.size(); ++v) out[v] = static_cast<std::uint8_t>(std::popcount(a & v) & 1);
  return out;
}

Bits element_bits(const Field& field, Elem a) {
  require(field.characteristic() == 2, "binary coordinates need characteristic 2");
  const auto digits = field.digits(a);
  Bits out(digits.rbegin(), digits.rend());
  return out;
}

ConcatCtx make_concat(const BasisSpec& outer_basis) {
  require(outer_basis.model != nullptr, "basis has no curve model");
  require(outer_basis.model->p == 2, "Hadamard concatenation needs p = 2");
  ConcatCtx ctx;
  ctx.outer = make_code(outer_basis, outer_basis.model->q);
  ctx.m = outer_basis.model->field->degree();
  ctx.n_T = ctx.outer.n;
  ctx.n_H = ctx.n_T * outer_basis.model->q;
  return ctx;
}

std::vector<Elem> outer_encode(const ConcatCtx& ctx, std::span<const Elem> coeffs) {
  return function_values(ctx.outer, coeffs);
}

Bits concat_encode(const ConcatCtx& ctx, std::span<const Elem> coeffs) {
  const auto outer = outer_encode(ctx, coeffs);
  const Field& f = ctx.outer.field();
  Bits out;
  out.reserve(ctx.n_H);
  for (const auto symbol : outer) {
    const auto block = hadamard_encode(element_bits(f, symbol));
    out.insert(out.end(), block.begin(), block.end());
  }
  return out;
}

std::uint64_t bit_weight(std::span<const std::uint8_t> bits) {
  return static_cast<std::uint64_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

ComparisonRow compare(const CurvePtr& model, std::uint64_t T, const CompareOptions& options) {
  require(model != nullptr, "no curve model");
  require(model->p == 2, "comparison needs p = 2");
  require(T + 1 < model->N, "T must be below N - 1");

  ComparisonRow row;
  row.curve = curve_id(*model);
  row.T = T;
  row.ell = options.ell;
  row.outer_filter = to_string(options.outer_filter);
  row.outer_designed_distance = model->N - 1 - T;
  const auto log2q = static_cast<std::uint64_t>(model->field->degree());

  const auto tag_basis = build_basis(model, T, BasisFilter::restricted_V, options.ell, options.caps);
  const auto tag = make_code(tag_basis, options.ell);
  row.n_T = tag.n;
  row.k_bits_T = tag.k_q * log2q;
  if (!tag_basis.empty()) {
    const auto s = spectrum(tag, options.budget, options.seed);
    row.eps_T = s.epsilon_hat();
    row.tag_exhaustive = s.exhaustive;
  }

  const auto cc = make_concat(build_basis(model, T, options.outer_filter));
  row.n_H = cc.n_H;
  row.k_bits_H = cc.outer.k_q * log2q;
  ensure(row.n_H == model->q * row.n_T, "n_H != q n_T");
  if (cc.outer.k_q > 0) {
    const auto s = run_spectrum(model->q, cc.outer.k_q, cc.n_H, 2, options.budget, options.seed,
                                [&](std::span<const Elem> msg) { return bit_weight(concat_encode(cc, msg)); });
    row.eps_H = s.epsilon_hat();
    row.concat_exhaustive = s.exhaustive;
  }
  return row;
}

std::string comparison_csv_header() { return "curve,T,k_bits,n_T,eps_T,n_H,eps_H,mode\n"; }

std::string comparison_csv_line(const ComparisonRow& row) {
  std::ostringstream out;
  out << '"' << row.curve << '"' << "," << row.T << "," << row.k_bits_T << "," << row.n_T << ","
      << (row.eps_T ? to_string(*row.eps_T) : "empty") << "," << row.n_H << ","
      << (row.eps_H ? to_string(*row.eps_H) : "empty") << "," << row.mode() << "\n";
  return out.str();
}

nlohmann::ordered_json comparison_json(const ComparisonRow& row) {
  nlohmann::ordered_json j;
  j["curve"] = row.curve;
  j["T"] = row.T;
  j["ell"] = row.ell;
  j["k_bits_T"] = row.k_bits_T;
  j["k_bits_H"] = row.k_bits_H;
  j["n_T"] = row.n_T;
  j["n_H"] = row.n_H;
  j["eps_T"] = row.eps_T ? nlohmann::ordered_json(to_string(*row.eps_T)) : nlohmann::ordered_json(nullptr);
  j["eps_H"] = row.eps_H ? nlohmann::ordered_json(to_string(*row.eps_H)) : nlohmann::ordered_json(nullptr);
  j["tag_empty"] = !row.eps_T.has_value();
  j["outer_filter"] = row.outer_filter;
  j["outer_designed_distance"] = row.outer_designed_distance;
  j["mode"] = row.mode();
  return j;
}

}  // namespace tagcodes
