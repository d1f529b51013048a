#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "tagcodes/curves.hpp"

namespace tagcodes {

enum class BasisFilter {
  full,
  coprime_char,       // p does not divide the pole order
  restricted_V,       // the family's subspace V
  hermitian_intro_b,  // i odd, j even, j < r/6 (hermitian only)
};

std::string to_string(BasisFilter filter);
BasisFilter parse_filter(const std::string& name);

struct Monomial {
  std::vector<std::uint32_t> exponents;
  std::uint64_t pole_order = 0;

  bool operator==(const Monomial&) const = default;
};

/// Unset caps default to floor(r / (3 ell)).
/// tower: j_i <= tower_cap for i >= 2; norm_trace: b < nt_cap where j = a(r-1) + b.
struct BasisCaps {
  std::optional<std::uint64_t> tower_cap;
  std::optional<std::uint64_t> nt_cap;
};

struct ResolvedCaps {
  std::uint64_t tower_cap = 0;
  std::uint64_t nt_cap = 0;
};

ResolvedCaps resolve_caps(const CurveModel& model, std::uint64_t ell, const BasisCaps& caps);

struct BasisSpec {
  CurvePtr model;
  std::uint64_t T = 0;
  BasisFilter filter = BasisFilter::full;
  std::uint64_t ell = 0;
  ResolvedCaps caps;
  std::vector<Monomial> monomials;  // increasing pole order

  std::size_t size() const { return monomials.size(); }
  bool empty() const { return monomials.empty(); }
};

/// ell must be p^v with v dividing [F_q : F_p].
void require_subfield_order(const CurveModel& model, std::uint64_t ell);

std::uint64_t pole_order(const CurveModel& model, std::span<const std::uint32_t> exponents);

/// Canonical monomials with pole order <= T: the exponent of every variable but
/// the first is bounded so that pole orders are pairwise distinct.
std::vector<Monomial> canonical_monomials(const CurveModel& model, std::uint64_t T);

struct Membership {
  bool ok = true;
  std::string reason;
};

Membership check_V_membership(const CurveModel& model, std::span<const std::uint32_t> exponents, std::uint64_t ell,
                              const ResolvedCaps& caps);
Membership check_intro_b_membership(const CurveModel& model, std::span<const std::uint32_t> exponents);

/// ell is only consulted by restricted_V (and validated whenever nonzero).
BasisSpec build_basis(const CurvePtr& model, std::uint64_t T, BasisFilter filter, std::uint64_t ell = 0,
                      const BasisCaps& caps = {});

nlohmann::ordered_json basis_json(const BasisSpec& basis);

}  // namespace tagcodes
