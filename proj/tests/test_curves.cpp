#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "doctest.h"
#include "tagcodes/curves.hpp"
#include "tagcodes/errors.hpp"

using namespace tagcodes;

namespace {

CurveSpec hermitian(std::uint64_t r) { return {CurveFamily::hermitian, r, 0, 0}; }
CurveSpec norm_trace(std::uint64_t r, std::uint32_t e, std::uint64_t u = 0) { return {CurveFamily::norm_trace, r, e, u}; }
CurveSpec tower(std::uint64_t r, std::uint32_t e) { return {CurveFamily::hermitian_tower, r, e, 0}; }
CurveSpec line(std::uint64_t q) { return {CurveFamily::line, q, 0, 0}; }

// Brute force over all coordinate tuples, checking the defining equations.
std::vector<std::vector<Elem>> brute_force_affine(const CurveModel& m) {
  const Field& f = *m.field;
  const std::uint64_t r = m.spec.r;
  const std::size_t vars = m.variables();
  std::vector<std::vector<Elem>> out;
  std::vector<std::uint32_t> idx(vars, 0);
  while (true) {
    std::vector<Elem> pt;
    for (auto v : idx) pt.push_back(Elem{v});
    bool ok = true;
    switch (m.spec.family) {
      case CurveFamily::line:
        break;
      case CurveFamily::hermitian:
        ok = f.add(f.pow(pt[1], r), pt[1]) == f.pow(pt[0], r + 1);
        break;
      case CurveFamily::norm_trace: {
        Elem lhs = Field::zero();
        std::uint64_t pw = 1;
        for (std::uint32_t i = 0; i < m.spec.e; ++i, pw *= r) lhs = f.add(lhs, f.pow(pt[1], pw));
        ok = lhs == f.pow(pt[0], m.spec.u_nt);
        break;
      }
      case CurveFamily::hermitian_tower:
        for (std::size_t i = 0; i + 1 < vars; ++i) {
          ok = ok && f.add(f.pow(pt[i + 1], r), pt[i + 1]) == f.pow(pt[i], r + 1);
        }
        break;
    }
    if (ok) out.push_back(pt);
    std::size_t k = vars;
    while (k > 0) {
      --k;
      if (++idx[k] < f.order()) break;
      idx[k] = 0;
      if (k == 0) return out;
    }
  }
}

// Gap count of the numerical semigroup generated by gens.
std::uint64_t gap_count(const std::vector<std::uint64_t>& gens) {
  const std::uint64_t bound = 4 * std::accumulate(gens.begin(), gens.end(), 0ULL) *
                              *std::max_element(gens.begin(), gens.end());
  std::vector<bool> in(bound + 1, false);
  in[0] = true;
  for (std::uint64_t n = 1; n <= bound; ++n) {
    for (auto g : gens) {
      if (n >= g && in[n - g]) {
        in[n] = true;
        break;
      }
    }
  }
  return static_cast<std::uint64_t>(std::count(in.begin(), in.end(), false));
}

std::vector<Elem> coordinate_values(const CurveModel& m, std::size_t var) {
  std::vector<Elem> out;
  for (const auto& pl : m.affine_places()) out.push_back(pl.coords[var]);
  return out;
}

}  // namespace

TEST_SUITE("curves") {
  TEST_CASE("hermitian r=2 over F_4") {
    const auto c = build_curve(hermitian(2));
    CHECK(c->q == 4);
    CHECK(c->N == 9);
    CHECK(c->g == 1);
    CHECK(c->s == 2);
    CHECK(c->pole_orders == std::vector<std::uint64_t>{2, 3});
    CHECK(c->affine_count() == 8);
    CHECK(c->places.back().kind == PlaceKind::infinity);
    CHECK(c->sigma() == Rational(8, 9));
  }

  TEST_CASE("xy at (1, alpha) is alpha") {
    const auto c = build_curve(hermitian(2));
    const Elem alpha = c->field->root();
    const auto it = std::find_if(c->places.begin(), c->places.end(), [&](const Place& p) {
      return p.kind == PlaceKind::affine && p.coords[0] == Field::one() && p.coords[1] == alpha;
    });
    REQUIRE(it != c->places.end());
    const std::uint32_t xy[] = {1, 1};
    CHECK(evaluate_monomial(*c, xy, *it) == alpha);
    CHECK_THROWS_AS(evaluate_monomial(*c, xy, c->places.back()), validation_error);
    const std::uint32_t bad[] = {1};
    CHECK_THROWS_AS(evaluate_monomial(*c, bad, *it), validation_error);
  }

  TEST_CASE("norm-trace (2,3) over F_8") {
    const auto c = build_curve(norm_trace(2, 3));
    CHECK(c->q == 8);
    CHECK(c->spec.u_nt == 7);
    CHECK(c->N == 33);
    CHECK(c->g == 9);
    CHECK(c->s == 4);
    CHECK(c->pole_orders == std::vector<std::uint64_t>{4, 7});
  }

  TEST_CASE("norm-trace closed form for (3,3,13)") {
    CHECK(closed_form_N(norm_trace(3, 3, 13)) == 244);
    CHECK(closed_form_genus(norm_trace(3, 3, 13)) == 48);
    const auto c = build_curve(norm_trace(3, 3, 13));
    CHECK(c->N == 244);
  }

  TEST_CASE("norm-trace with a proper divisor u") {
    // (q-1)/(r-1) = 13 for (3,3) has no proper divisor > 1; use (2,4): 15 = 3 * 5.
    for (std::uint64_t u : {3ULL, 5ULL, 15ULL}) {
      const auto c = build_curve(norm_trace(2, 4, u));
      CHECK(c->places.size() == c->N);
      CHECK(c->pole_orders == std::vector<std::uint64_t>{8, u});
    }
    CHECK_THROWS_AS(build_curve(norm_trace(2, 4, 4)), validation_error);
    CHECK_THROWS_AS(build_curve(norm_trace(2, 4, 1)), validation_error);
  }

  TEST_CASE("tower (4,2) coincides with hermitian r=4") {
    const auto t = build_curve(tower(4, 2));
    const auto h = build_curve(hermitian(4));
    CHECK(t->N == 65);
    CHECK(t->g == 6);
    CHECK(t->pole_orders == std::vector<std::uint64_t>{4, 5});
    REQUIRE(t->affine_count() == h->affine_count());
    for (std::size_t i = 0; i < t->affine_count(); ++i) CHECK(t->places[i].coords == h->places[i].coords);
    CHECK(t->within_paper_range);
  }

  TEST_CASE("tower (4,3)") {
    const auto t = build_curve(tower(4, 3));
    CHECK(t->N == 257);
    CHECK(t->g == 60);
    CHECK(t->pole_orders == std::vector<std::uint64_t>{16, 20, 25});
    CHECK(t->s == 16);
    CHECK_FALSE(t->within_paper_range);
  }

  TEST_CASE("line over F_4") {
    const auto c = build_curve(line(4));
    CHECK(c->N == 5);
    CHECK(c->g == 0);
    CHECK(c->variables() == 1);
  }

  TEST_CASE("invalid specs") {
    CHECK_THROWS_AS(build_curve(hermitian(6)), validation_error);
    CHECK_THROWS_AS(build_curve(norm_trace(2, 1)), validation_error);
    CHECK_THROWS_AS(build_curve(tower(4, 1)), validation_error);
    CHECK_THROWS_AS(parse_family("elliptic"), validation_error);
    CHECK(parse_family("norm_trace") == CurveFamily::norm_trace);
  }

  TEST_CASE("enumeration matches brute force and closed forms") {
    const std::vector<CurveSpec> specs = {hermitian(2), hermitian(3), hermitian(4), hermitian(5), hermitian(7),
                                          hermitian(8), norm_trace(2, 3), norm_trace(3, 3), norm_trace(2, 4),
                                          tower(2, 2), tower(3, 2), tower(4, 2), tower(4, 3), line(8), line(9)};
    for (const auto& spec : specs) {
      CAPTURE(to_string(spec.family));
      CAPTURE(spec.r);
      CAPTURE(spec.e);
      const auto c = build_curve(spec);
      CHECK(c->places.size() == c->N);
      CHECK(satisfies_hasse_weil(*c));
      const auto brute = brute_force_affine(*c);
      REQUIRE(brute.size() == c->affine_count());
      for (std::size_t i = 0; i < brute.size(); ++i) CHECK(brute[i] == c->places[i].coords);
      if (spec.family != CurveFamily::line) CHECK(c->g == gap_count(c->pole_orders));
    }
  }

  TEST_CASE("hermitian and the tower base are maximal") {
    for (std::uint64_t r : {2ULL, 3ULL, 4ULL, 5ULL}) {
      const auto c = build_curve(hermitian(r));
      CHECK(c->N == c->q + 1 + 2 * c->g * r);
    }
  }

  TEST_CASE("hasse-weil rejects an impossible count") {
    auto c = *build_curve(hermitian(2));
    c.N = 20;
    CHECK_FALSE(satisfies_hasse_weil(c));
  }

  TEST_CASE("artin-schreier count for Tr(y) on hermitian r=2") {
    const auto c = build_curve(hermitian(2));
    const auto ys = coordinate_values(*c, 1);
    CHECK(count_artin_schreier(*c, ys, 2) == 5);
    const std::vector<Elem> zero(c->affine_count(), Field::zero());
    CHECK(count_artin_schreier(*c, zero, 2) == 2 * (c->N - 1) + 1);
    CHECK_THROWS_AS(count_artin_schreier(*c, ys, 3), validation_error);
    CHECK_THROWS_AS(count_artin_schreier(*c, std::vector<Elem>(3), 2), validation_error);
  }

  TEST_CASE("artin-schreier count against direct solving") {
    const auto c = build_curve(hermitian(4));
    const Field& f = *c->field;
    for (std::uint64_t ell : {2ULL, 4ULL, 16ULL}) {
      const auto xs = coordinate_values(*c, 0);
      std::uint64_t expected = 1;
      for (auto v : xs) {
        for (std::uint32_t z = 0; z < f.order(); ++z) expected += f.sub(f.pow(Elem{z}, ell), Elem{z}) == v;
      }
      CHECK(count_artin_schreier(*c, xs, ell) == expected);
    }
  }

  TEST_CASE("kummer counts on the line over F_4") {
    const auto c = build_curve(line(4));
    const auto xs = coordinate_values(*c, 0);
    const auto k = count_kummer_splits(*c, xs, 3);
    CHECK(k.S == std::vector<std::uint64_t>{1, 1, 1});
    CHECK(k.zeros == 1);
    CHECK(k.representatives.front() == Field::one());
    CHECK(k.rational_place_bracket(0) == std::pair<std::uint64_t, std::uint64_t>{4, 7});
    CHECK_THROWS_AS(count_kummer_splits(*c, xs, 2), validation_error);
  }

  TEST_CASE("kummer counts agree with direct d-th power tests") {
    const auto c = build_curve(hermitian(3));
    const Field& f = *c->field;
    const auto ys = coordinate_values(*c, 1);
    for (std::uint64_t d : {2ULL, 4ULL, 8ULL}) {
      const auto k = count_kummer_splits(*c, ys, d);
      std::set<std::uint32_t> powers;
      for (std::uint32_t z = 1; z < f.order(); ++z) powers.insert(f.pow(Elem{z}, d).value);
      std::uint64_t total = k.zeros;
      for (std::size_t i = 0; i < d; ++i) {
        std::uint64_t direct = 0;
        for (auto v : ys) direct += !v.is_zero() && powers.count(f.mul(k.representatives[i], v).value);
        CHECK(k.S[i] == direct);
        total += k.S[i];
      }
      CHECK(total == c->N - 1);
      // representatives lie in distinct cosets and are the smallest of each
      std::set<std::uint64_t> seen;
      for (auto e : k.representatives) seen.insert(f.coset_index(e, d));
      CHECK(seen.size() == d);
      CHECK(std::is_sorted(k.representatives.begin(), k.representatives.end()));
    }
  }

  TEST_CASE("report json") {
    const auto j = curve_report_json(*build_curve(hermitian(2)));
    CHECK(j["family"] == "hermitian");
    CHECK(j["q"] == 4);
    CHECK(j["N"] == 9);
    CHECK(j["sigma"] == "8/9");
    CHECK(j["gamma"] == "2/9");
    const auto nt = curve_report_json(*build_curve(norm_trace(2, 3)));
    CHECK(nt["gamma"].is_null());
    CHECK(nt["gamma_squared"] == "72/121");
  }
}
