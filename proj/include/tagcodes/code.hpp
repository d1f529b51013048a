#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "tagcodes/basis.hpp"

namespace tagcodes {

/// Trace code of a basis: coordinate i of a message c is Tr(sum_j c_j m_j(P_i)).
struct CodeCtx {
  CurvePtr model;
  BasisSpec basis;
  std::shared_ptr<const SubfieldView> view;
  std::size_t n = 0;
  std::size_t k_q = 0;
  std::size_t k_ell = 0;      // k_q [F_q : F_ell]
  std::vector<Elem> values;   // values[j * n + i] = m_j(P_i)

  std::uint64_t ell() const { return view->ell(); }
  const Field& field() const { return *model->field; }
};

/// ell = 0 takes the basis' ell.
CodeCtx make_code(const BasisSpec& basis, std::uint64_t ell = 0);

std::vector<Elem> function_values(const CodeCtx& ctx, std::span<const Elem> coeffs);
/// Coordinates are F_ell elements, stored as elements of F_q.
std::vector<Elem> encode(const CodeCtx& ctx, std::span<const Elem> coeffs);
std::uint64_t hamming_weight(std::span<const Elem> word);

struct GeneratorMatrix {
  std::uint64_t ell = 0;
  std::size_t n = 0;
  std::vector<std::vector<std::uint32_t>> rows;  // subfield labels, row (j, b) at j * [F_q:F_ell] + b
  std::size_t rank = 0;
};

GeneratorMatrix generator_matrix(const CodeCtx& ctx);
/// Rank over F_ell of rows of subfield labels.
std::size_t rank_over_subfield(const SubfieldView& view, std::vector<std::vector<std::uint32_t>> rows);
/// "ell k n" then one line per row of base-ell digits (0-9a-z), ell <= 36.
std::string matrix_text(const GeneratorMatrix& m);

struct WeightReport {
  std::string description;
  std::uint64_t weight = 0;
  std::uint64_t n = 0;
  std::uint64_t trace_zero_count = 0;
  std::uint64_t N_L = 0;
  std::uint64_t pole_order = 0;
};

/// Leading pole order of sum_j c_j m_j; coeffs must be nonzero.
std::uint64_t function_pole_order(const CodeCtx& ctx, std::span<const Elem> coeffs);

/// Weight by direct encoding and by counting rational places of z^ell - z = f;
/// throws invariant_error when the two disagree.
WeightReport weight_of(const CodeCtx& ctx, std::span<const Elem> coeffs);

std::string describe_function(const CodeCtx& ctx, std::span<const Elem> coeffs);

// ---------------------------------------------------------------------------
// Spectra

/// Per-message generator: message i of a sampled run uses std::mt19937_64(seed + i).
std::vector<Elem> random_message(std::uint64_t q, std::size_t k, std::mt19937_64& rng);

struct Spectrum {
  bool exhaustive = true;
  std::uint64_t messages = 0;  // nonzero messages examined
  std::uint64_t n = 0;
  std::uint64_t ell = 2;
  std::map<std::uint64_t, std::uint64_t> counts;  // weight -> count

  bool empty() const { return counts.empty(); }
  std::uint64_t min_weight() const { return counts.begin()->first; }
  std::uint64_t max_weight() const { return counts.rbegin()->first; }
  /// max |w/n - (1 - 1/ell)| over observed weights.
  Rational epsilon_hat() const;
};

using MessageWeight = std::function<std::uint64_t(std::span<const Elem>)>;

/// Exhaustive over the q^k - 1 nonzero messages when q^k <= budget, else budget
/// sampled nonzero messages. Work is split over threads; counts do not depend on the split.
Spectrum run_spectrum(std::uint64_t q, std::size_t k, std::uint64_t n, std::uint64_t ell, std::uint64_t budget,
                      std::uint64_t seed, const MessageWeight& weight);

Spectrum spectrum(const CodeCtx& ctx, std::uint64_t budget, std::uint64_t seed = 0);

std::string spectrum_csv(const Spectrum& s);
nlohmann::ordered_json spectrum_json(const Spectrum& s);

struct MinDistance {
  std::uint64_t weight = 0;
  bool exhaustive = false;  // false: sampled, lower-confidence value
};

inline constexpr std::uint64_t kExhaustiveDistanceLimit = 1ULL << 22;
MinDistance min_distance(const CodeCtx& ctx, std::uint64_t seed = 0);

nlohmann::ordered_json code_report_json(const CodeCtx& ctx, const GeneratorMatrix& m);

}  // namespace tagcodes
