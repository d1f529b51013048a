#include "tagcodes/curves.hpp"

#include <algorithm>

#include "tagcodes/errors.hpp"

namespace tagcodes {

namespace {

struct FieldShape {
  std::uint32_t p;
  std::uint32_t u;
};

PrimePower require_prime_power(std::uint64_t r) {
  const auto pp = prime_power(r);
  require(pp.has_value(), "r = " + std::to_string(r) + " is not a prime power");
  return *pp;
}

FieldShape field_shape(const CurveSpec& spec) {
  const auto pp = require_prime_power(spec.r);
  const auto p = static_cast<std::uint32_t>(pp.prime);
  switch (spec.family) {
    case CurveFamily::line:
      return {p, pp.exponent};
    case CurveFamily::hermitian:
    case CurveFamily::hermitian_tower:
      return {p, 2 * pp.exponent};
    case CurveFamily::norm_trace:
      require(spec.e >= 2, "norm_trace requires e >= 2");
      return {p, spec.e * pp.exponent};
  }
  throw validation_error("unknown curve family");
}

std::uint64_t default_u_nt(const CurveSpec& spec) {
  const std::uint64_t q = checked_pow(spec.r, spec.e);
  return (q - 1) / (spec.r - 1);
}

void validate(const CurveSpec& spec) {
  field_shape(spec);
  if (spec.family == CurveFamily::norm_trace) {
    const std::uint64_t full = default_u_nt(spec);
    const std::uint64_t u = spec.u_nt == 0 ? full : spec.u_nt;
    require(u > 1, "norm_trace requires u_nt > 1");
    require(full % u == 0, "u_nt = " + std::to_string(u) + " does not divide (q-1)/(r-1) = " + std::to_string(full));
  }
  if (spec.family == CurveFamily::hermitian_tower) {
    require(spec.e >= 2, "hermitian_tower requires e >= 2");
  }
}

// For each c, the y with y^r + y = c (or with the norm-trace sum), ascending.
std::vector<std::vector<Elem>> preimages(const Field& f, const std::vector<std::uint64_t>& frobenius_exponents) {
  std::vector<std::vector<Elem>> out(f.order());
  for (std::uint32_t i = 0; i < f.order(); ++i) {
    Elem acc = Field::zero();
    for (const auto k : frobenius_exponents) acc = f.add(acc, f.pow(Elem{i}, k));
    out[acc.value].push_back(Elem{i});
  }
  return out;
}

}  // namespace

std::string to_string(CurveFamily family) {
  switch (family) {
    case CurveFamily::line:
      return "line";
    case CurveFamily::hermitian:
      return "hermitian";
    case CurveFamily::norm_trace:
      return "norm_trace";
    case CurveFamily::hermitian_tower:
      return "hermitian_tower";
  }
  return "unknown";
}

CurveFamily parse_family(const std::string& name) {
  if (name == "line") return CurveFamily::line;
  if (name == "hermitian") return CurveFamily::hermitian;
  if (name == "norm_trace" || name == "norm-trace") return CurveFamily::norm_trace;
  if (name == "hermitian_tower" || name == "tower") return CurveFamily::hermitian_tower;
  throw validation_error("unknown curve family '" + name + "'");
}

std::uint64_t closed_form_N(const CurveSpec& spec) {
  validate(spec);
  const std::uint64_t r = spec.r;
  switch (spec.family) {
    case CurveFamily::line:
      return r + 1;
    case CurveFamily::hermitian:
      return checked_pow(r, 3) + 1;
    case CurveFamily::norm_trace: {
      const std::uint64_t u = spec.u_nt == 0 ? default_u_nt(spec) : spec.u_nt;
      return checked_pow(r, spec.e - 1) * (u * (r - 1) + 1) + 1;
    }
    case CurveFamily::hermitian_tower:
      return checked_pow(r, spec.e + 1) + 1;
  }
  throw validation_error("unknown curve family");
}

std::uint64_t closed_form_genus(const CurveSpec& spec) {
  validate(spec);
  const std::uint64_t r = spec.r;
  switch (spec.family) {
    case CurveFamily::line:
      return 0;
    case CurveFamily::hermitian:
      return r * (r - 1) / 2;
    case CurveFamily::norm_trace: {
      const std::uint64_t u = spec.u_nt == 0 ? default_u_nt(spec) : spec.u_nt;
      return (u - 1) * (checked_pow(r, spec.e - 1) - 1) / 2;
    }
    case CurveFamily::hermitian_tower: {
      // 2 g_e = sum_{i=1}^{e-1} r^e (1 + 1/r)^{i-1} - (r+1)^{e-1} + 1
      std::uint64_t twice = 0;
      for (std::uint32_t i = 1; i < spec.e; ++i) twice += checked_pow(r, spec.e - i + 1) * checked_pow(r + 1, i - 1);
      twice = twice + 1 - checked_pow(r + 1, spec.e - 1);
      return twice / 2;
    }
  }
  throw validation_error("unknown curve family");
}

CurvePtr build_curve(const CurveSpec& spec_in, const FieldSource& source) {
  validate(spec_in);
  CurveSpec spec = spec_in;
  if (spec.family == CurveFamily::norm_trace && spec.u_nt == 0) spec.u_nt = default_u_nt(spec);
  if (spec.family != CurveFamily::norm_trace) spec.u_nt = 0;
  if (spec.family == CurveFamily::line || spec.family == CurveFamily::hermitian) spec.e = 0;

  const auto shape = field_shape(spec);
  auto model = std::make_shared<CurveModel>();
  model->spec = spec;
  model->field = source(shape.p, shape.u);
  require(model->field != nullptr && model->field->characteristic() == shape.p && model->field->degree() == shape.u,
          "field source returned the wrong field");
  const Field& f = *model->field;
  model->p = shape.p;
  model->q = f.order();
  const std::uint64_t r = spec.r;

  auto& places = model->places;
  switch (spec.family) {
    case CurveFamily::line:
      model->s = 1;
      model->pole_orders = {1};
      for (std::uint32_t x = 0; x < f.order(); ++x) places.push_back({PlaceKind::affine, {Elem{x}}});
      break;
    case CurveFamily::hermitian: {
      model->s = r;
      model->pole_orders = {r, r + 1};
      const auto sols = preimages(f, {r, 1});
      for (std::uint32_t x = 0; x < f.order(); ++x) {
        for (const auto y : sols[f.pow(Elem{x}, r + 1).value]) places.push_back({PlaceKind::affine, {Elem{x}, y}});
      }
      break;
    }
    case CurveFamily::norm_trace: {
      const std::uint64_t top = checked_pow(r, spec.e - 1);
      model->s = top;
      model->pole_orders = {top, spec.u_nt};
      std::vector<std::uint64_t> exps;
      for (std::uint32_t i = 0; i < spec.e; ++i) exps.push_back(checked_pow(r, i));
      const auto sols = preimages(f, exps);
      for (std::uint32_t x = 0; x < f.order(); ++x) {
        for (const auto y : sols[f.pow(Elem{x}, spec.u_nt).value]) places.push_back({PlaceKind::affine, {Elem{x}, y}});
      }
      break;
    }
    case CurveFamily::hermitian_tower: {
      model->s = checked_pow(r, spec.e - 1);
      for (std::uint32_t i = 1; i <= spec.e; ++i) {
        model->pole_orders.push_back(checked_pow(r, spec.e - i) * checked_pow(r + 1, i - 1));
      }
      model->within_paper_range = 2ULL * spec.e <= r;
      const auto sols = preimages(f, {r, 1});
      std::vector<Elem> coords;
      auto extend = [&](auto&& self, std::uint32_t level) -> void {
        if (level == spec.e) {
          places.push_back({PlaceKind::affine, coords});
          return;
        }
        for (const auto next : sols[f.pow(coords.back(), r + 1).value]) {
          coords.push_back(next);
          self(self, level + 1);
          coords.pop_back();
        }
      };
      for (std::uint32_t x = 0; x < f.order(); ++x) {
        coords = {Elem{x}};
        extend(extend, 1);
      }
      break;
    }
  }
  places.push_back({PlaceKind::infinity, {}});

  model->N = closed_form_N(spec);
  model->g = closed_form_genus(spec);
  ensure(places.size() == model->N, "enumerated " + std::to_string(places.size()) + " rational places for " +
                                        to_string(spec.family) + " but the closed form gives " +
                                        std::to_string(model->N));
  return model;
}

Rational CurveModel::sigma() const {
  return Rational(static_cast<std::int64_t>(s * q), static_cast<std::int64_t>(N));
}

Rational CurveModel::gamma_squared() const {
  return Rational(static_cast<std::int64_t>(g * g * q), static_cast<std::int64_t>(N * N));
}

Elem evaluate_monomial(const CurveModel& model, std::span<const std::uint32_t> exponents, const Place& place) {
  require(place.kind == PlaceKind::affine, "monomials have their pole at infinity; evaluation is undefined there");
  require(exponents.size() == model.variables(), "exponent tuple length does not match the curve family");
  const Field& f = *model.field;
  Elem acc = Field::one();
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] != 0) acc = f.mul(acc, f.pow(place.coords[i], exponents[i]));
  }
  return acc;
}

bool satisfies_hasse_weil(const CurveModel& model) {
  __extension__ using wide = __int128;
  const auto N = static_cast<wide>(model.N);
  const auto q = static_cast<wide>(model.q);
  const auto g = static_cast<wide>(model.g);
  const wide diff = N - (q + 1);
  return diff * diff <= 4 * g * g * q;
}

std::uint64_t count_artin_schreier(const CurveModel& model, std::span<const Elem> f_values, std::uint64_t ell) {
  require(f_values.size() == model.affine_count(), "need one function value per affine place");
  const Field& f = *model.field;
  const SubfieldView view(model.field, static_cast<std::uint32_t>(ell));  // validates ell
  std::vector<std::uint32_t> solutions(f.order(), 0);
  for (std::uint32_t z = 0; z < f.order(); ++z) {
    ++solutions[f.sub(f.pow(Elem{z}, ell), Elem{z}).value];
  }
  std::uint64_t total = 1;
  for (const auto v : f_values) {
    require(f.contains(v), "function value outside the field");
    total += solutions[v.value];
  }
  return total;
}

KummerCounts count_kummer_splits(const CurveModel& model, std::span<const Elem> f_values, std::uint64_t d) {
  require(f_values.size() == model.affine_count(), "need one function value per affine place");
  require(d >= 1 && (model.q - 1) % d == 0, "d = " + std::to_string(d) + " does not divide q - 1");
  const Field& f = *model.field;

  KummerCounts out;
  out.d = d;
  std::vector<std::int64_t> slot_of_coset(d, -1);
  std::vector<std::uint64_t> coset_of_slot;
  for (std::uint32_t i = 1; i < f.order() && out.representatives.size() < d; ++i) {
    const auto c = f.coset_index(Elem{i}, d);
    if (slot_of_coset[c] < 0) {
      slot_of_coset[c] = static_cast<std::int64_t>(out.representatives.size());
      out.representatives.push_back(Elem{i});
      coset_of_slot.push_back(c);
    }
  }
  ensure(out.representatives.size() == d && out.representatives.front() == Field::one(),
         "coset representatives are incomplete");

  out.S.assign(d, 0);
  // eps_i f is a d-th power iff coset(eps_i) + coset(f) = 0 mod d.
  for (const auto v : f_values) {
    require(f.contains(v), "function value outside the field");
    if (v.is_zero()) {
      ++out.zeros;
      continue;
    }
    const auto c = f.coset_index(v, d);
    const auto slot = slot_of_coset[(d - c) % d];
    ++out.S[static_cast<std::size_t>(slot)];
  }
  std::uint64_t total = out.zeros;
  for (const auto s : out.S) total += s;
  ensure(total == model.N - 1, "Kummer partition identity violated");
  return out;
}

std::pair<std::uint64_t, std::uint64_t> KummerCounts::rational_place_bracket(std::size_t i) const {
  require(i < S.size(), "coset index out of range");
  const std::uint64_t lo = d * S[i] + 1;
  return {lo, lo + d * zeros};
}

std::string curve_id(const CurveModel& model) {
  const auto& spec = model.spec;
  std::string out = to_string(spec.family) + "(r=" + std::to_string(spec.r);
  if (spec.family == CurveFamily::norm_trace || spec.family == CurveFamily::hermitian_tower) {
    out += ",e=" + std::to_string(spec.e);
  }
  if (spec.family == CurveFamily::norm_trace) out += ",u=" + std::to_string(spec.u_nt);
  return out + ")";
}

nlohmann::ordered_json curve_report_json(const CurveModel& model) {
  nlohmann::ordered_json j;
  j["family"] = to_string(model.spec.family);
  j["p"] = model.p;
  j["r"] = model.spec.r;
  if (model.spec.family == CurveFamily::norm_trace || model.spec.family == CurveFamily::hermitian_tower) {
    j["e"] = model.spec.e;
  } else {
    j["e"] = nullptr;
  }
  j["q"] = model.q;
  j["N"] = model.N;
  j["g"] = model.g;
  j["s"] = model.s;
  j["sigma"] = to_string(model.sigma());
  if (is_square(model.q)) {
    const auto root = static_cast<std::int64_t>(isqrt(model.q));
    j["gamma"] = to_string(Rational(static_cast<std::int64_t>(model.g) * root, static_cast<std::int64_t>(model.N)));
  } else {
    j["gamma"] = nullptr;
  }
  j["gamma_squared"] = to_string(model.gamma_squared());
  if (model.spec.family == CurveFamily::norm_trace) j["u_nt"] = model.spec.u_nt;
  if (model.spec.family == CurveFamily::hermitian_tower) j["within_paper_range"] = model.within_paper_range;
  return j;
}

}  // namespace tagcodes
