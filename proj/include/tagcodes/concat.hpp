#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "tagcodes/code.hpp"

namespace tagcodes {

using Bits = std::vector<std::uint8_t>;

/// Coordinate v (v in F_2^m, lexicographic, first bit most significant) is <u, v> mod 2.
Bits hadamard_encode(std::span<const std::uint8_t> u);

/// Bits of an element's canonical coordinates over F_2, most significant first.
Bits element_bits(const Field& field, Elem a);

/// Outer one-point AG code over F_q with a Hadamard inner code; p = 2.
struct ConcatCtx {
  CodeCtx outer;  // evaluation over F_q (ell = q, so the trace is the identity)
  std::size_t n_T = 0;
  std::size_t n_H = 0;
  std::uint32_t m = 0;  // log2 q

  std::uint64_t q() const { return outer.model->q; }
};

ConcatCtx make_concat(const BasisSpec& outer_basis);

std::vector<Elem> outer_encode(const ConcatCtx& ctx, std::span<const Elem> coeffs);
Bits concat_encode(const ConcatCtx& ctx, std::span<const Elem> coeffs);
std::uint64_t bit_weight(std::span<const std::uint8_t> bits);

struct ComparisonRow {
  std::string curve;
  std::uint64_t T = 0;
  std::uint64_t ell = 2;
  std::uint64_t k_bits_T = 0;
  std::uint64_t k_bits_H = 0;
  std::uint64_t n_T = 0;
  std::uint64_t n_H = 0;
  std::optional<Rational> eps_T;  // unset when the TAG basis is empty
  std::optional<Rational> eps_H;
  std::uint64_t outer_designed_distance = 0;  // N - 1 - T
  bool tag_exhaustive = true;
  bool concat_exhaustive = true;
  std::string outer_filter;

  std::string mode() const { return tag_exhaustive && concat_exhaustive ? "exhaustive" : "sampled"; }
};

struct CompareOptions {
  std::uint64_t ell = 2;
  std::uint64_t budget = 1000;
  std::uint64_t seed = 0;
  BasisFilter outer_filter = BasisFilter::full;
  BasisCaps caps;
};

ComparisonRow compare(const CurvePtr& model, std::uint64_t T, const CompareOptions& options = {});

std::string comparison_csv_header();
std::string comparison_csv_line(const ComparisonRow& row);
nlohmann::ordered_json comparison_json(const ComparisonRow& row);

}  // namespace tagcodes
