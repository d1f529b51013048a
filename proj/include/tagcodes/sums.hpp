#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "tagcodes/curves.hpp"

namespace tagcodes {

/// c * prod_i x_i^{e_i}
struct Term {
  Elem coef;
  std::vector<std::uint32_t> exponents;
};

std::vector<Elem> evaluate_terms(const CurveModel& model, std::span<const Term> terms);
/// Pole order of the sum when one nonzero term has strictly the largest pole order.
std::optional<std::uint64_t> terms_degree(const CurveModel& model, std::span<const Term> terms);

struct SumReport {
  std::string kind;                  // "exp" or "char"
  std::vector<std::string> labels;   // character argument per count
  std::vector<std::uint64_t> counts;
  std::uint64_t zeros = 0;           // char sums: places where f vanishes
  std::complex<double> value;
  double magnitude = 0;
  std::uint64_t trivial_bound = 0;   // N - 1
  std::optional<double> weil_bound;  // (deg - 1) sqrt(q), genus 0 and p not dividing deg
  std::uint64_t N = 0;
};

/// S(f) = sum over affine places of e^{2 pi i Tr(f(P))/p}, trace to F_p.
SumReport exp_sum(const CurveModel& model, std::span<const Elem> f_values,
                  std::optional<std::uint64_t> degree = std::nullopt);

/// sum over affine places of chi(f(P)), chi(g) = e^{2 pi i/d} for the canonical
/// generator g and chi(0) = 0.
SumReport char_sum(const CurveModel& model, std::span<const Elem> f_values, std::uint64_t d);

/// Tolerance for comparisons involving the floating value.
inline constexpr double kSumTolerance = 1e-9;

nlohmann::ordered_json sum_report_json(const SumReport& r);

}  // namespace tagcodes
