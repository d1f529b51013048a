#pragma once

// Exact arithmetic in F_{p^u}.
//
// An element is stored as its index sum_k c_k p^k, where c_0..c_{u-1} are the
// coefficients over F_p of the polynomial class modulo the field's modulus.
// Index order is the lexicographic order of the digit string c_{u-1}...c_0,
// which is also the serialisation order ("00", "01", "10", "11" for F_4).
// The prime subfield F_p is exactly the indices 0..p-1.

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tagcodes {

struct Elem {
  std::uint32_t value = 0;

  constexpr Elem() = default;
  constexpr explicit Elem(std::uint32_t v) : value(v) {}
  constexpr auto operator<=>(const Elem&) const = default;
  constexpr bool is_zero() const { return value == 0; }
};

enum class ArithKind { add, mul, inv, pow };

enum class TableMode {
  automatic,  // log/antilog tables when q <= 2^16
  always,
  never,      // schoolbook polynomial arithmetic only
};

struct FieldOptions {
  TableMode tables = TableMode::automatic;
  // 0 means: read TAGCODES_MAX_FIELD_ORDER, falling back to kDefaultMaxOrder.
  std::uint64_t max_order = 0;
};

inline constexpr std::uint64_t kDefaultMaxOrder = 1ULL << 20;
inline constexpr std::uint64_t kTableThreshold = 1ULL << 16;

/// Size cap in effect: TAGCODES_MAX_FIELD_ORDER if set, else kDefaultMaxOrder.
std::uint64_t configured_max_field_order();

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
 public:
  /// Builds F_{p^u} over the lexicographically first monic irreducible of degree u.
  static FieldPtr make(std::uint32_t p, std::uint32_t u, FieldOptions options = {});

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return u_; }
  std::uint32_t order() const { return q_; }
  /// Coefficients m_0..m_u of the monic modulus (m_u = 1).
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  bool uses_tables() const { return !exp_.empty(); }

  static constexpr Elem zero() { return Elem{0}; }
  static constexpr Elem one() { return Elem{1}; }
  /// Class of x, i.e. the root of the modulus. Equals one() when u = 1.
  Elem root() const { return Elem{u_ == 1 ? 1U : p_}; }
  /// Smallest-index element of multiplicative order q - 1.
  Elem primitive() const { return primitive_; }

  Elem element(std::uint64_t index) const;
  bool contains(Elem a) const { return a.value < q_; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  /// a^(p^k).
  Elem frobenius(Elem a, std::uint32_t k = 1) const;
  /// Scalar multiple by an integer (repeated addition), n taken mod p.
  Elem scale(Elem a, std::uint64_t n) const;

  /// Dispatches on kind; for pow, b.value is the exponent.
  Elem arith(ArithKind kind, Elem a, Elem b) const;

  /// log_g(a) mod d for the canonical primitive g; a != 0, d | q - 1.
  std::uint64_t coset_index(Elem a, std::uint64_t d) const;

  std::vector<std::uint32_t> digits(Elem a) const;  // c_0..c_{u-1}
  Elem from_digits(std::span<const std::uint32_t> digits) const;
  std::string to_string(Elem a) const;
  Elem parse(std::string_view text) const;

  bool same_field(const Field& other) const {
    return p_ == other.p_ && u_ == other.u_ && modulus_ == other.modulus_;
  }

  /// Copy with two antilog entries swapped. Only for fault-injection tests.
  FieldPtr corrupted_copy_for_testing() const;

 private:
  Field() = default;

  Elem mul_schoolbook(Elem a, Elem b) const;
  Elem add_digits(Elem a, Elem b) const;
  std::uint64_t log(Elem a) const;  // requires tables
  void build_tables();
  void find_primitive();
  void self_check() const;

  std::uint32_t p_ = 0;
  std::uint32_t u_ = 0;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> place_;  // p^k for k = 0..u
  Elem primitive_{1};
  std::uint64_t group_order_ = 0;
  std::vector<std::uint64_t> group_order_primes_;

  std::vector<std::uint32_t> exp_;   // size 2(q-1): g^i
  std::vector<std::uint32_t> log_;   // size q; log_[0] unused
  std::vector<std::int64_t> zech_;   // log(1 + g^i), -1 when 1 + g^i = 0
};

inline FieldPtr make_field(std::uint32_t p, std::uint32_t u, FieldOptions options = {}) {
  return Field::make(p, u, options);
}

/// Monic irreducibility over F_p of coefficients m_0..m_deg (Rabin's test).
bool is_irreducible_mod_p(std::span<const std::uint32_t> monic, std::uint32_t p);

/// Lexicographically first monic irreducible of degree u over F_p.
std::vector<std::uint32_t> first_irreducible(std::uint32_t p, std::uint32_t u);

/// Where curves and codes obtain their fields; swapped out by fault-injection tests.
using FieldSource = std::function<FieldPtr(std::uint32_t p, std::uint32_t u)>;
FieldSource default_field_source();

// -------------------------------------------------------------------------
// Field-bound element value with checked mixed-field use.

class Element {
 public:
  Element(FieldPtr field, Elem value);

  const FieldPtr& field() const { return field_; }
  Elem value() const { return value_; }

  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator*(const Element& o) const;
  Element operator/(const Element& o) const;
  Element inverse() const;
  Element pow(std::uint64_t e) const;
  bool operator==(const Element& o) const;
  std::string to_string() const { return field_->to_string(value_); }

 private:
  const Field& checked(const Element& o) const;
  FieldPtr field_;
  Elem value_;
};

// -------------------------------------------------------------------------
// F_ell inside F_q, with the trace map down to it.

class SubfieldView {
 public:
  /// ell = p^v with v | u.
  SubfieldView(FieldPtr field, std::uint32_t ell);

  const FieldPtr& field() const { return field_; }
  std::uint32_t ell() const { return ell_; }
  std::uint32_t subfield_degree() const { return v_; }     // v
  std::uint32_t relative_degree() const { return k_; }     // u / v = [F_q : F_ell]

  Elem trace(Elem a) const { return trace_[a.value]; }
  bool in_subfield(Elem a) const { return label_[a.value] >= 0; }
  /// Position of a subfield element among the subfield elements in index order.
  std::uint32_t label(Elem subfield_element) const;
  Elem from_label(std::uint32_t label) const;
  const std::vector<Elem>& subfield_elements() const { return elements_; }
  /// Power basis 1, x, ..., x^{k-1} of F_q over F_ell.
  std::vector<Elem> basis() const;

 private:
  FieldPtr field_;
  std::uint32_t ell_ = 0;
  std::uint32_t v_ = 0;
  std::uint32_t k_ = 0;
  std::vector<Elem> trace_;
  std::vector<std::int32_t> label_;
  std::vector<Elem> elements_;
};

/// Tr_{F_q/F_ell}(a) = a + a^ell + ... + a^{ell^{k-1}}, evaluated directly.
Elem trace_to_subfield(const SubfieldView& view, Elem a);
std::vector<Elem> subfield_basis(const SubfieldView& view);

}  // namespace tagcodes
