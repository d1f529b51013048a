#include <random>
#include <vector>

#include "doctest.h"
#include "tagcodes/concat.hpp"
#include "tagcodes/errors.hpp"

using namespace tagcodes;

namespace {

CurvePtr hermitian(std::uint64_t r) { return build_curve({CurveFamily::hermitian, r, 0, 0}); }

Bits oracle_hadamard(const std::vector<std::uint8_t>& u) {
  const std::size_t m = u.size();
  Bits out;
  for (std::size_t v = 0; v < (std::size_t{1} << m); ++v) {
    unsigned dot = 0;
    for (std::size_t i = 0; i < m; ++i) dot += u[i] * ((v >> (m - 1 - i)) & 1U);
    out.push_back(static_cast<std::uint8_t>(dot % 2));
  }
  return out;
}

}  // namespace

TEST_SUITE("concat") {
  TEST_CASE("hadamard examples") {
    CHECK(hadamard_encode(Bits{1, 0}) == Bits{0, 0, 1, 1});
    CHECK(hadamard_encode(Bits{0, 1}) == Bits{0, 1, 0, 1});
    CHECK(bit_weight(hadamard_encode(Bits{0, 0, 0})) == 0);
    for (std::uint32_t a = 1; a < 16; ++a) {
      const Bits u = {static_cast<std::uint8_t>((a >> 3) & 1), static_cast<std::uint8_t>((a >> 2) & 1),
                      static_cast<std::uint8_t>((a >> 1) & 1), static_cast<std::uint8_t>(a & 1)};
      const auto word = hadamard_encode(u);
      CHECK(word.size() == 16);
      CHECK(bit_weight(word) == 8);
      CHECK(word == oracle_hadamard(u));
    }
    CHECK_THROWS_AS(hadamard_encode(Bits{}), validation_error);
    CHECK_THROWS_AS(hadamard_encode(Bits{2}), validation_error);
  }

  TEST_CASE("hadamard has relative distance 1/2") {
    for (std::size_t m = 1; m <= 6; ++m) {
      for (std::uint32_t a = 0; a < (1U << m); ++a) {
        for (std::uint32_t b = a + 1; b < (1U << m); ++b) {
          Bits ua(m), ub(m);
          for (std::size_t i = 0; i < m; ++i) {
            ua[i] = (a >> (m - 1 - i)) & 1U;
            ub[i] = (b >> (m - 1 - i)) & 1U;
          }
          const auto wa = hadamard_encode(ua), wb = hadamard_encode(ub);
          std::size_t diff = 0;
          for (std::size_t i = 0; i < wa.size(); ++i) diff += wa[i] != wb[i];
          CHECK(2 * diff == wa.size());
        }
      }
    }
  }

  TEST_CASE("element bits follow the serialisation") {
    const auto f = make_field(2, 2);
    CHECK(element_bits(*f, f->root()) == Bits{1, 0});
    CHECK(element_bits(*f, Field::one()) == Bits{0, 1});
    CHECK_THROWS_AS(element_bits(*make_field(3, 1), Field::one()), validation_error);
  }

  TEST_CASE("hermitian r=2 outer basis {y}") {
    const auto c = hermitian(2);
    const auto basis = build_basis(c, 3, BasisFilter::coprime_char);
    const auto cc = make_concat(basis);
    CHECK(cc.n_T == 8);
    CHECK(cc.n_H == 32);
    const std::vector<Elem> one = {Field::one()};
    const auto outer = outer_encode(cc, one);
    std::uint64_t outer_weight = 0;
    for (std::size_t i = 0; i < outer.size(); ++i) {
      CHECK(outer[i] == c->places[i].coords[1]);
      outer_weight += !outer[i].is_zero();
    }
    CHECK(outer_weight == 7);
    const auto bits = concat_encode(cc, one);
    CHECK(bits.size() == 32);
    CHECK(bit_weight(bits) == 14);
    CHECK(bit_weight(concat_encode(cc, std::vector<Elem>{Field::zero()})) == 0);
  }

  TEST_CASE("concatenated weight law and designed distance") {
    for (std::uint64_t r : {2, 4}) {
      const auto c = hermitian(r);
      const std::uint64_t T = 2 * c->g + 2;
      const auto cc = make_concat(build_basis(c, T, BasisFilter::full));
      std::mt19937_64 rng(r);
      for (int trial = 0; trial < 100; ++trial) {
        const auto msg = random_message(c->q, cc.outer.k_q, rng);
        const auto outer = outer_encode(cc, msg);
        const auto w = hamming_weight(outer);
        const auto bits = concat_encode(cc, msg);
        CHECK(bits.size() == cc.n_H);
        CHECK(bit_weight(bits) == c->q / 2 * w);
        CHECK(w >= c->N - 1 - T);
        // block i is the Hadamard word of symbol i
        for (std::size_t i = 0; i < 3; ++i) {
          const auto block = oracle_hadamard(element_bits(*c->field, outer[i]));
          CHECK(std::equal(block.begin(), block.end(), bits.begin() + static_cast<long>(i * c->q)));
        }
      }
    }
  }

  TEST_CASE("outer designed distance, exhaustive on r=2") {
    const auto c = hermitian(2);
    for (std::uint64_t T = 1; T <= 6; ++T) {
      const auto cc = make_concat(build_basis(c, T, BasisFilter::full));
      const auto s = run_spectrum(c->q, cc.outer.k_q, cc.n_T, c->q, 1 << 16, 0,
                                  [&](std::span<const Elem> m) { return hamming_weight(outer_encode(cc, m)); });
      REQUIRE(s.exhaustive);
      CHECK(s.min_weight() >= c->N - 1 - T);
    }
  }

  TEST_CASE("comparison rows") {
    const auto c = hermitian(4);
    const auto row = compare(c, 6);
    CHECK_FALSE(row.eps_T.has_value());
    CHECK(row.n_H == c->q * row.n_T);
    CHECK(row.outer_designed_distance == 64 - 6);
    CHECK(comparison_csv_line(row).find(",empty,") != std::string::npos);
    CHECK(comparison_json(row)["tag_empty"] == true);
    CHECK(comparison_csv_header() == "curve,T,k_bits,n_T,eps_T,n_H,eps_H,mode\n");
    CHECK_THROWS_AS(compare(build_curve({CurveFamily::hermitian, 3, 0, 0}), 5), validation_error);
  }

  TEST_CASE("hermitian r=8, T=40 comparison is sampled and reproducible") {
    const auto c = hermitian(8);
    CompareOptions opt;
    opt.budget = 200;
    opt.seed = 3;
    const auto a = compare(c, 40, opt);
    const auto b = compare(c, 40, opt);
    CHECK(a.mode() == "sampled");
    REQUIRE(a.eps_T.has_value());
    CHECK(a.k_bits_T == 2 * 6);
    CHECK(a.k_bits_H == 16 * 6);  // 16 pairs with 8i + 9j <= 40
    CHECK(a.n_H == 64 * a.n_T);
    CHECK(comparison_csv_line(a) == comparison_csv_line(b));
    CHECK(comparison_json(a) == comparison_json(b));
  }
}
