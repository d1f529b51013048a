#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "tagcodes/field.hpp"
#include "tagcodes/integer.hpp"

namespace tagcodes {

enum class CurveFamily { line, hermitian, norm_trace, hermitian_tower };

std::string to_string(CurveFamily family);
CurveFamily parse_family(const std::string& name);

/// Curve parameters.
///
/// - line: projective line over F_r (r is the field order itself).
/// - hermitian: y^r + y = x^(r+1) over F_{r^2}.
/// - norm_trace: y^(r^(e-1)) + ... + y^r + y = x^u_nt over F_{r^e};
///   u_nt = 0 selects the default (q-1)/(r-1).
/// - hermitian_tower: x_{i+1}^r + x_{i+1} = x_i^(r+1), i < e, over F_{r^2}.
struct CurveSpec {
  CurveFamily family = CurveFamily::hermitian;
  std::uint64_t r = 2;
  std::uint32_t e = 0;
  std::uint64_t u_nt = 0;
};

enum class PlaceKind { affine, infinity };

struct Place {
  PlaceKind kind = PlaceKind::affine;
  std::vector<Elem> coords;
};

struct CurveModel {
  CurveSpec spec;
  FieldPtr field;
  std::uint32_t p = 0;
  std::uint64_t q = 0;
  std::vector<Place> places;  // affine places in lexicographic order, infinity last
  std::uint64_t N = 0;        // rational places including infinity
  std::uint64_t g = 0;
  std::uint64_t s = 0;        // pole order of x (x_1 for the tower) at infinity
  std::vector<std::uint64_t> pole_orders;  // per affine variable
  bool within_paper_range = true;          // tower: e <= r/2

  std::size_t affine_count() const { return places.size() - 1; }
  std::span<const Place> affine_places() const { return {places.data(), affine_count()}; }
  std::size_t variables() const { return pole_orders.size(); }

  Rational sigma() const;        // s q / N
  Rational gamma_squared() const;  // (g sqrt(q) / N)^2
};

using CurvePtr = std::shared_ptr<const CurveModel>;

/// Enumerates rational places and fills the closed-form invariants.
/// Throws validation_error for bad specs and invariant_error when the enumerated
/// count disagrees with the closed form.
CurvePtr build_curve(const CurveSpec& spec, const FieldSource& source = default_field_source());

/// Closed-form counts (no enumeration).
std::uint64_t closed_form_N(const CurveSpec& spec);
std::uint64_t closed_form_genus(const CurveSpec& spec);

/// Product of coordinate powers at an affine place.
Elem evaluate_monomial(const CurveModel& model, std::span<const std::uint32_t> exponents, const Place& place);

/// (N - (q+1))^2 <= 4 g^2 q.
bool satisfies_hasse_weil(const CurveModel& model);

/// Rational places of F(z), z^ell - z = f, counted by solving pointwise over the
/// affine places, plus the totally ramified place over infinity.
std::uint64_t count_artin_schreier(const CurveModel& model, std::span<const Elem> f_values, std::uint64_t ell);

struct KummerCounts {
  std::uint64_t d = 1;
  std::vector<Elem> representatives;  // eps_1 = 1, ..., eps_d
  std::vector<std::uint64_t> S;       // S[i]: places with eps_i f(P) a nonzero d-th power
  std::uint64_t zeros = 0;

  /// Bracket on the rational places of F(z), z^d = eps_i f. Places above zeros
  /// of f are not resolved, so they widen the upper end.
  std::pair<std::uint64_t, std::uint64_t> rational_place_bracket(std::size_t i) const;
};

KummerCounts count_kummer_splits(const CurveModel& model, std::span<const Elem> f_values, std::uint64_t d);

/// e.g. "hermitian(r=8)", "norm_trace(r=2,e=3,u=7)".
std::string curve_id(const CurveModel& model);

nlohmann::ordered_json curve_report_json(const CurveModel& model);

}  // namespace tagcodes
