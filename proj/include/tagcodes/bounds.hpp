#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

#include "tagcodes/integer.hpp"

namespace tagcodes {

/// True iff i + j m d s + k m t are pairwise distinct for 0 <= i <= A, 0 <= j <= B, 0 <= k < d.
bool independence_check(std::uint64_t A, std::uint64_t B, std::uint64_t d, std::uint64_t m, std::uint64_t s,
                        std::uint64_t t);

/// ceil((s d B + N/(2q) + t d) m)
std::uint64_t prop_bound_value(std::uint64_t N, std::uint64_t q, std::uint64_t s, std::uint64_t d, std::uint64_t t,
                               std::uint64_t m, std::uint64_t B);

/// 2 (A - g_L) B d - (N + 2 d s B + 2 (d-1) t); feasible iff positive.
std::int64_t feasibility_margin(std::uint64_t N, std::uint64_t A, std::uint64_t g_L, std::uint64_t s,
                                std::uint64_t d, std::uint64_t t, std::uint64_t B);

struct BoundInputs {
  std::uint64_t N = 0;
  std::uint64_t q = 0;
  std::uint64_t g = 0;
  std::uint64_t s = 0;
  std::uint64_t d = 2;
  std::uint64_t t = 0;
  std::uint64_t p = 2;
  // Caller certifies that z^d - z = f with p not dividing t = deg f, so
  // g_L = d g + (d-1)(t-1)/2 exactly; otherwise the cap d (g + t) is used.
  bool artin_schreier = false;
  std::uint64_t B_multiplier = 4;  // B ranges over 1..ceil(sqrt q) * B_multiplier
};

struct BoundReport {
  BoundInputs inputs;
  bool feasible = false;
  std::uint64_t m = 0;
  std::uint64_t B = 0;
  std::uint64_t A = 0;
  std::uint64_t g_L_cap = 0;
  std::string g_L_source;  // "exact_artin_schreier" or "cap"
  std::uint64_t bound_NL = 0;
  bool independence_ok = false;
  // When infeasible: which constraint blocked the pair that came closest.
  std::string violated;
  std::int64_t best_margin = 0;
};

/// Scans m in {1, p, ..., q} and B; returns the smallest certified bound
/// (ties: smallest m, then smallest B).
BoundReport prop_general_search(const BoundInputs& in);

std::uint64_t artin_schreier_genus(std::uint64_t g, std::uint64_t ell, std::uint64_t t);

struct Prop55Result {
  bool holds = false;
  std::optional<std::uint64_t> ell_prime;
  Rational eps{0};
  Rational threshold{0};  // (sigma - 1/2)/(d - 1); unset for d = 1
  bool negative_eps = false;
};

/// Looks for ell' coprime to d with |(t - ell' s) q / N| < (sigma - 1/2)/(d - 1).
/// The witness is the ell' of smallest |eps|.
Prop55Result prop55_condition(std::uint64_t t, std::uint64_t s, std::uint64_t N, std::uint64_t q, std::uint64_t d,
                              const Rational& sigma);

/// max(0, 1 - (bound_NL - 1)/(ell n))
Rational distance_from_bound(std::uint64_t bound_NL, std::uint64_t ell, std::uint64_t n);

/// tau, beta, gamma, mu are c * sqrt(q); the rational c is stored. sigma is rational.
struct NormalizedParams {
  Rational tau;    // t / N
  Rational beta;   // B d / q
  Rational gamma;  // g / N
  Rational mu;     // m / q
  Rational sigma;  // s q / N
};

NormalizedParams normalize(std::uint64_t N, std::uint64_t q, std::uint64_t g, std::uint64_t s, std::uint64_t d,
                           std::uint64_t t, std::uint64_t B, std::uint64_t m);

struct RecoveredParams {
  std::uint64_t t, B, g, m, s;
};

/// Inverse of normalize given (N, q, d); throws validation_error if a value is not integral.
RecoveredParams denormalize(const NormalizedParams& np, std::uint64_t N, std::uint64_t q, std::uint64_t d);

nlohmann::ordered_json normalized_json(const NormalizedParams& np, std::uint64_t q);
nlohmann::ordered_json bound_report_json(const BoundReport& r);
nlohmann::ordered_json prop55_json(const Prop55Result& r);

}  // namespace tagcodes
