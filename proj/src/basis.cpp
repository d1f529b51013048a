#include "tagcodes/basis.hpp"

#include <algorithm>
#include <numeric>

#include "tagcodes/errors.hpp"

namespace tagcodes {

std::string to_string(BasisFilter filter) {
  switch (filter) {
    case BasisFilter::full:
      return "full";
    case BasisFilter::coprime_char:
      return "coprime_char";
    case BasisFilter::restricted_V:
      return "restricted_V";
    case BasisFilter::hermitian_intro_b:
      return "hermitian_intro_b";
  }
  return "unknown";
}

BasisFilter parse_filter(const std::string& name) {
  if (name == "full") return BasisFilter::full;
  if (name == "coprime_char") return BasisFilter::coprime_char;
  if (name == "restricted_V" || name == "V") return BasisFilter::restricted_V;
  if (name == "hermitian_intro_b") return BasisFilter::hermitian_intro_b;
  throw validation_error("unknown filter '" + name + "'");
}

void require_subfield_order(const CurveModel& model, std::uint64_t ell) {
  const auto pp = prime_power(ell);
  require(pp.has_value() && pp->prime == model.p && model.field->degree() % pp->exponent == 0,
          "ell = " + std::to_string(ell) + " is not the order of a subfield of F_" + std::to_string(model.q));
}

ResolvedCaps resolve_caps(const CurveModel& model, std::uint64_t ell, const BasisCaps& caps) {
  const std::uint64_t fallback = ell == 0 ? 0 : model.spec.r / (3 * ell);
  return {caps.tower_cap.value_or(fallback), caps.nt_cap.value_or(fallback)};
}

std::uint64_t pole_order(const CurveModel& model, std::span<const std::uint32_t> exponents) {
  require(exponents.size() == model.variables(), "exponent tuple length does not match the curve family");
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < exponents.size(); ++i) total += exponents[i] * model.pole_orders[i];
  return total;
}

std::vector<Monomial> canonical_monomials(const CurveModel& model, std::uint64_t T) {
  const std::size_t vars = model.variables();
  // hermitian j < r, norm-trace j < r^(e-1), tower j_i < r (i >= 2)
  std::uint64_t bound = 0;
  switch (model.spec.family) {
    case CurveFamily::line:
      break;
    case CurveFamily::hermitian:
    case CurveFamily::hermitian_tower:
      bound = model.spec.r;
      break;
    case CurveFamily::norm_trace:
      bound = model.s;
      break;
  }

  std::vector<Monomial> out;
  std::vector<std::uint32_t> exps(vars, 0);
  auto rec = [&](auto&& self, std::size_t var, std::uint64_t used) -> void {
    if (var == vars) {
      out.push_back({exps, used});
      return;
    }
    const std::uint64_t step = model.pole_orders[var];
    const std::uint64_t limit = var == 0 ? (T - used) / step : std::min<std::uint64_t>(bound - 1, (T - used) / step);
    for (std::uint64_t j = 0; j <= limit; ++j) {
      exps[var] = static_cast<std::uint32_t>(j);
      self(self, var + 1, used + j * step);
    }
    exps[var] = 0;
  };
  rec(rec, 0, 0);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return a.pole_order < b.pole_order; });
  for (std::size_t i = 1; i < out.size(); ++i) {
    ensure(out[i].pole_order != out[i - 1].pole_order, "duplicate pole order in canonical monomial set");
  }
  return out;
}

Membership check_V_membership(const CurveModel& model, std::span<const std::uint32_t> exponents, std::uint64_t ell,
                              const ResolvedCaps& caps) {
  require(exponents.size() == model.variables(), "exponent tuple length does not match the curve family");
  require(ell >= 2, "restricted_V needs ell >= 2");
  const std::uint64_t p = model.p;
  const std::uint64_t r = model.spec.r;
  switch (model.spec.family) {
    case CurveFamily::line:
      throw validation_error("restricted_V is not defined for the line");
    case CurveFamily::hermitian: {
      const std::uint64_t i = exponents[0], j = exponents[1];
      if (j % p == 0) return {false, "j ≡ 0 mod p"};
      if (std::gcd(i + j, ell) != 1) return {false, "gcd(i+j, ℓ) ≠ 1"};
      if (3 * ell * j >= r) return {false, "j ≥ r/(3ℓ)"};
      return {};
    }
    case CurveFamily::norm_trace: {
      const std::uint64_t i = exponents[0], j = exponents[1];
      const std::uint64_t a = j / (r - 1), b = j % (r - 1);
      if (j % p == 0) return {false, "j ≡ 0 mod p"};
      if (std::gcd(i + j + a, ell) != 1) return {false, "gcd(i+j+a, ℓ) ≠ 1"};
      if (b >= caps.nt_cap) return {false, "b ≥ nt_cap"};
      return {};
    }
    case CurveFamily::hermitian_tower: {
      if (exponents.back() % p == 0) return {false, "j_e ≡ 0 mod p"};
      const std::uint64_t sum = std::accumulate(exponents.begin(), exponents.end(), std::uint64_t{0});
      if (std::gcd(sum, ell) != 1) return {false, "gcd(Σ j_i, ℓ) ≠ 1"};
      for (std::size_t k = 1; k < exponents.size(); ++k) {
        if (exponents[k] > caps.tower_cap) return {false, "j_i > tower_cap"};
      }
      return {};
    }
  }
  throw validation_error("unknown curve family");
}

Membership check_intro_b_membership(const CurveModel& model, std::span<const std::uint32_t> exponents) {
  require(model.spec.family == CurveFamily::hermitian, "hermitian_intro_b is only defined for the hermitian curve");
  require(exponents.size() == 2, "exponent tuple length does not match the curve family");
  const std::uint64_t i = exponents[0], j = exponents[1];
  if (i % 2 == 0) return {false, "i even"};
  if (j % 2 == 1) return {false, "j odd"};
  if (6 * j >= model.spec.r) return {false, "j ≥ r/6"};
  return {};
}

BasisSpec build_basis(const CurvePtr& model, std::uint64_t T, BasisFilter filter, std::uint64_t ell,
                      const BasisCaps& caps) {
  require(model != nullptr, "no curve model");
  if (ell != 0) require_subfield_order(*model, ell);
  if (filter == BasisFilter::restricted_V) {
    require(ell != 0, "restricted_V needs ell");
    require(model->spec.family != CurveFamily::line, "restricted_V is not defined for the line");
  }
  if (filter == BasisFilter::hermitian_intro_b) {
    require(model->spec.family == CurveFamily::hermitian, "hermitian_intro_b is only defined for the hermitian curve");
  }

  BasisSpec out;
  out.model = model;
  out.T = T;
  out.filter = filter;
  out.ell = ell;
  out.caps = resolve_caps(*model, ell, caps);
  for (auto& m : canonical_monomials(*model, T)) {
    bool keep = true;
    switch (filter) {
      case BasisFilter::full:
        break;
      case BasisFilter::coprime_char:
        keep = m.pole_order % model->p != 0;
        break;
      case BasisFilter::restricted_V:
        keep = check_V_membership(*model, m.exponents, ell, out.caps).ok;
        break;
      case BasisFilter::hermitian_intro_b:
        keep = check_intro_b_membership(*model, m.exponents).ok;
        break;
    }
    if (keep) out.monomials.push_back(std::move(m));
  }
  return out;
}

nlohmann::ordered_json basis_json(const BasisSpec& basis) {
  auto list = nlohmann::ordered_json::array();
  for (const auto& m : basis.monomials) {
    nlohmann::ordered_json j;
    j["exponents"] = m.exponents;
    j["pole_order"] = m.pole_order;
    list.push_back(std::move(j));
  }
  return list;
}

}  // namespace tagcodes
