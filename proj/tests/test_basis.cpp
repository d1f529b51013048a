#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "tagcodes/basis.hpp"
#include "tagcodes/errors.hpp"

using namespace tagcodes;

namespace {

CurvePtr hermitian(std::uint64_t r) { return build_curve({CurveFamily::hermitian, r, 0, 0}); }

std::vector<CurvePtr> desk_models() {
  std::vector<CurvePtr> out;
  for (std::uint64_t r : {2, 3, 4, 5, 7, 8}) out.push_back(hermitian(r));
  out.push_back(build_curve({CurveFamily::norm_trace, 2, 3, 0}));
  out.push_back(build_curve({CurveFamily::norm_trace, 3, 3, 0}));
  out.push_back(build_curve({CurveFamily::hermitian_tower, 4, 2, 0}));
  out.push_back(build_curve({CurveFamily::hermitian_tower, 4, 3, 0}));
  return out;
}

std::vector<std::uint64_t> pole_orders_of(const BasisSpec& b) {
  std::vector<std::uint64_t> out;
  for (const auto& m : b.monomials) out.push_back(m.pole_order);
  return out;
}

// Pole orders <= T reachable by unrestricted non-negative combinations.
std::set<std::uint64_t> semigroup_up_to(const std::vector<std::uint64_t>& gens, std::uint64_t T) {
  std::vector<bool> in(T + 1, false);
  in[0] = true;
  for (std::uint64_t n = 1; n <= T; ++n) {
    for (auto g : gens) in[n] = in[n] || (n >= g && in[n - g]);
  }
  std::set<std::uint64_t> out;
  for (std::uint64_t n = 0; n <= T; ++n) {
    if (in[n]) out.insert(n);
  }
  return out;
}

}  // namespace

TEST_SUITE("basis") {
  TEST_CASE("hermitian r=2, T=5, full") {
    const auto b = build_basis(hermitian(2), 5, BasisFilter::full);
    REQUIRE(b.size() == 5);
    CHECK(pole_orders_of(b) == std::vector<std::uint64_t>{0, 2, 3, 4, 5});
    const std::vector<std::vector<std::uint32_t>> exps = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}};
    for (std::size_t i = 0; i < exps.size(); ++i) CHECK(b.monomials[i].exponents == exps[i]);
  }

  TEST_CASE("hermitian r=4, T=6, restricted_V with ell=2 is empty") {
    const auto b = build_basis(hermitian(4), 6, BasisFilter::restricted_V, 2);
    CHECK(b.empty());
  }

  TEST_CASE("T=0 gives the constant") {
    for (const auto& m : desk_models()) {
      const auto b = build_basis(m, 0, BasisFilter::full);
      REQUIRE(b.size() == 1);
      CHECK(b.monomials[0].pole_order == 0);
    }
  }

  TEST_CASE("pole orders") {
    const auto h8 = hermitian(8);
    const std::uint32_t y[] = {0, 1};
    CHECK(pole_order(*h8, y) == 9);
    const auto nt = build_curve({CurveFamily::norm_trace, 2, 3, 7});
    const std::uint32_t xy[] = {1, 1};
    CHECK(pole_order(*nt, xy) == 11);
    const auto t = build_curve({CurveFamily::hermitian_tower, 4, 2, 0});
    CHECK(pole_order(*t, xy) == 9);
    CHECK(pole_order(*hermitian(4), xy) == 9);
    const std::uint32_t bad[] = {1};
    CHECK_THROWS_AS(pole_order(*t, bad), validation_error);
  }

  TEST_CASE("V membership reasons") {
    const auto h8 = hermitian(8);
    const ResolvedCaps caps = resolve_caps(*h8, 2, {});
    const std::uint32_t y[] = {0, 1};
    CHECK(check_V_membership(*h8, y, 2, caps).ok);
    const std::uint32_t xy[] = {1, 1};
    const auto r = check_V_membership(*h8, xy, 2, caps);
    CHECK_FALSE(r.ok);
    CHECK(r.reason == "gcd(i+j, ℓ) ≠ 1");
    const std::uint32_t y2[] = {0, 2};
    CHECK(check_V_membership(*h8, y2, 2, caps).reason == "j ≡ 0 mod p");
    const std::uint32_t y3[] = {0, 3};
    CHECK(check_V_membership(*h8, y3, 2, caps).reason == "j ≥ r/(3ℓ)");

    const auto nt = build_curve({CurveFamily::norm_trace, 3, 3, 0});
    const std::uint32_t x[] = {1, 0};
    CHECK(check_V_membership(*nt, x, 3, resolve_caps(*nt, 3, {})).reason == "j ≡ 0 mod p");

    const auto line = build_curve({CurveFamily::line, 4, 0, 0});
    const std::uint32_t one[] = {1};
    CHECK_THROWS_AS(check_V_membership(*line, one, 2, {}), validation_error);
  }

  TEST_CASE("hermitian r=8, ell=2, T<=60 restricted_V pole orders") {
    const auto b = build_basis(hermitian(8), 60, BasisFilter::restricted_V, 2);
    CHECK(pole_orders_of(b) == std::vector<std::uint64_t>{9, 25, 41, 57});
    for (const auto& m : b.monomials) CHECK(m.exponents[1] == 1);
  }

  TEST_CASE("norm-trace V with an explicit cap") {
    // (3,3): r-1 = 2 so b in {0,1}; nt_cap 2 keeps both residues.
    const auto nt = build_curve({CurveFamily::norm_trace, 3, 3, 0});
    const auto b = build_basis(nt, 60, BasisFilter::restricted_V, 3, {std::nullopt, 2});
    CHECK_FALSE(b.empty());
    for (const auto& m : b.monomials) {
      const std::uint64_t i = m.exponents[0], j = m.exponents[1];
      CHECK(j % 3 != 0);
      CHECK((i + j + j / 2) % 3 != 0);
      CHECK(m.pole_order % 3 != 0);
    }
    const auto tight = build_basis(nt, 60, BasisFilter::restricted_V, 3, {std::nullopt, 1});
    for (const auto& m : tight.monomials) CHECK(m.exponents[1] % 2 == 0);
    CHECK(tight.size() < b.size());
  }

  TEST_CASE("tower V with an explicit cap") {
    const auto t = build_curve({CurveFamily::hermitian_tower, 4, 3, 0});
    CHECK(build_basis(t, 140, BasisFilter::restricted_V, 2).empty());  // default cap 0 forces j_3 = 0
    const auto b = build_basis(t, 140, BasisFilter::restricted_V, 2, {1, std::nullopt});
    REQUIRE_FALSE(b.empty());
    for (const auto& m : b.monomials) {
      CHECK(m.exponents[2] == 1);
      CHECK(m.exponents[1] <= 1);
      CHECK((m.exponents[0] + m.exponents[1] + m.exponents[2]) % 2 == 1);
    }
  }

  TEST_CASE("hermitian intro B filter") {
    const auto h = hermitian(16);
    const auto b = build_basis(h, 100, BasisFilter::hermitian_intro_b);
    REQUIRE_FALSE(b.empty());
    for (const auto& m : b.monomials) {
      CHECK(m.exponents[0] % 2 == 1);
      CHECK(m.exponents[1] % 2 == 0);
      CHECK(6 * m.exponents[1] < 16);
    }
    // for p = ell = 2 it shares nothing with V: V needs j odd
    const auto v = build_basis(h, 100, BasisFilter::restricted_V, 2);
    for (const auto& m : v.monomials) CHECK(m.exponents[1] % 2 == 1);
    CHECK_THROWS_AS(build_basis(build_curve({CurveFamily::norm_trace, 2, 3, 0}), 10, BasisFilter::hermitian_intro_b),
                    validation_error);
  }

  TEST_CASE("invalid inputs") {
    CHECK_THROWS_AS(parse_filter("everything"), validation_error);
    CHECK_THROWS_AS(build_basis(hermitian(2), 5, BasisFilter::restricted_V, 3), validation_error);
    CHECK_THROWS_AS(build_basis(hermitian(2), 5, BasisFilter::restricted_V, 8), validation_error);
    CHECK_THROWS_AS(build_basis(hermitian(2), 5, BasisFilter::restricted_V, 0), validation_error);
    CHECK_THROWS_AS(build_basis(build_curve({CurveFamily::line, 4, 0, 0}), 5, BasisFilter::restricted_V, 2),
                    validation_error);
    CHECK(parse_filter("coprime_char") == BasisFilter::coprime_char);
  }

  TEST_CASE("riemann-roch dimension on desk models") {
    for (const auto& m : desk_models()) {
      CAPTURE(to_string(m->spec.family));
      CAPTURE(m->spec.r);
      for (std::uint64_t T = 2 * m->g - 1; T <= 2 * m->g + 20; ++T) {
        CHECK(build_basis(m, T, BasisFilter::full).size() == T - m->g + 1);
      }
    }
  }

  TEST_CASE("full basis realizes the pole-order semigroup") {
    for (const auto& m : desk_models()) {
      const std::uint64_t T = 2 * m->g + 20;
      const auto b = build_basis(m, T, BasisFilter::full);
      const auto orders = pole_orders_of(b);
      const auto expected = semigroup_up_to(m->pole_orders, T);
      CHECK(std::set<std::uint64_t>(orders.begin(), orders.end()) == expected);
      CHECK(orders.size() == expected.size());
    }
  }

  TEST_CASE("distinct pole orders and monotonicity") {
    for (const auto& m : desk_models()) {
      const std::vector<BasisFilter> filters = {BasisFilter::full, BasisFilter::coprime_char, BasisFilter::restricted_V};
      const std::uint64_t ell = m->p;
      for (const auto filter : filters) {
        BasisSpec prev = build_basis(m, 0, filter, ell);
        for (std::uint64_t T = 1; T <= 2 * m->g + 10; ++T) {
          const auto cur = build_basis(m, T, filter, ell);
          const auto orders = pole_orders_of(cur);
          CHECK(std::adjacent_find(orders.begin(), orders.end()) == orders.end());
          CHECK(std::is_sorted(orders.begin(), orders.end()));
          for (const auto& mono : prev.monomials) {
            CHECK(std::find(cur.monomials.begin(), cur.monomials.end(), mono) != cur.monomials.end());
          }
          for (const auto& mono : cur.monomials) {
            CHECK(mono.pole_order <= T);
            if (filter != BasisFilter::full) CHECK(mono.pole_order % m->p != 0);
          }
          prev = cur;
        }
      }
    }
  }

  TEST_CASE("json") {
    const auto j = basis_json(build_basis(hermitian(2), 3, BasisFilter::full));
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 3);
    CHECK(j[2]["exponents"] == nlohmann::json::array({0, 1}));
    CHECK(j[2]["pole_order"] == 3);
  }
}
