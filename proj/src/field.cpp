#include "tagcodes/field.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <utility>

#include "tagcodes/errors.hpp"
#include "tagcodes/integer.hpp"

namespace tagcodes {

namespace {

using Poly = std::vector<std::uint32_t>;  // low -> high, coefficients mod p

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint64_t lead_inv = [&] {
    // m is monic in every caller except gcd steps; invert the lead generally.
    std::uint64_t base = m.back() % p, r = 1;
    for (std::uint32_t e = p - 2; e > 0; e >>= 1) {
      if (e & 1U) r = r * base % p;
      base = base * base % p;
    }
    return r;
  }();
  while (a.size() >= m.size()) {
    const std::uint64_t c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      const std::uint64_t sub = c * m[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
  }
  return poly_mod(std::move(r), m, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m, std::uint32_t p) {
  Poly r{1};
  base = poly_mod(std::move(base), m, p);
  while (e > 0) {
    if (e & 1U) r = poly_mulmod(r, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^(p^k) mod m
Poly frobenius_power_of_x(std::uint32_t k, const Poly& m, std::uint32_t p) {
  Poly x{0, 1};
  for (std::uint32_t i = 0; i < k; ++i) x = poly_powmod(x, p, m, p);
  return x;
}

Poly sub_x(Poly a, std::uint32_t p) {
  if (a.size() < 2) a.resize(2, 0);
  a[1] = (a[1] + p - 1) % p;
  trim(a);
  return a;
}

char digit_char(std::uint32_t d) {
  return static_cast<char>(d < 10 ? '0' + d : 'a' + (d - 10));
}

int digit_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  if (c >= 'A' && c <= 'Z') return c - 'A' + 10;
  return -1;
}

}  // namespace

bool is_irreducible_mod_p(std::span<const std::uint32_t> monic, std::uint32_t p) {
  Poly m(monic.begin(), monic.end());
  trim(m);
  if (m.size() < 2) return false;
  const auto n = static_cast<std::uint32_t>(m.size() - 1);
  if (n == 1) return true;
  // x^(p^n) = x mod m, and gcd(x^(p^(n/r)) - x, m) = 1 for every prime r | n.
  if (sub_x(frobenius_power_of_x(n, m, p), p).size() != 0) return false;
  for (const auto r : prime_factors(n)) {
    const Poly g = poly_gcd(m, sub_x(frobenius_power_of_x(n / static_cast<std::uint32_t>(r), m, p), p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

std::vector<std::uint32_t> first_irreducible(std::uint32_t p, std::uint32_t u) {
  const std::uint64_t count = checked_pow(p, u);
  for (std::uint64_t code = 0; code < count; ++code) {
    Poly m(u + 1, 0);
    std::uint64_t c = code;
    for (std::uint32_t k = 0; k < u; ++k) {
      m[k] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    m[u] = 1;
    if (is_irreducible_mod_p(m, p)) return m;
  }
  throw invariant_error("no irreducible polynomial found");
}

std::uint64_t configured_max_field_order() {
  if (const char* env = std::getenv("TAGCODES_MAX_FIELD_ORDER")) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultMaxOrder;
}

FieldPtr Field::make(std::uint32_t p, std::uint32_t u, FieldOptions options) {
  require(is_prime(p), "field characteristic " + std::to_string(p) + " is not prime");
  require(u >= 1, "extension degree must be at least 1");
  const std::uint64_t cap = options.max_order != 0 ? options.max_order : configured_max_field_order();
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < u; ++i) {
    q *= p;
    require(q <= cap, "field order " + std::to_string(p) + "^" + std::to_string(u) +
                          " exceeds the size cap " + std::to_string(cap));
  }

  auto f = std::shared_ptr<Field>(new Field());
  f->p_ = p;
  f->u_ = u;
  f->q_ = static_cast<std::uint32_t>(q);
  f->modulus_ = first_irreducible(p, u);
  f->place_.resize(u + 1);
  f->place_[0] = 1;
  for (std::uint32_t k = 1; k <= u; ++k) f->place_[k] = f->place_[k - 1] * p;
  f->group_order_ = q - 1;
  f->group_order_primes_ = prime_factors(q - 1);
  f->find_primitive();

  const bool tables = options.tables == TableMode::always ||
                      (options.tables == TableMode::automatic && q <= kTableThreshold);
  if (tables) f->build_tables();
  f->self_check();
  return f;
}

void Field::find_primitive() {
  if (q_ == 2) {
    primitive_ = one();
    return;
  }
  for (std::uint32_t c = 2; c < q_; ++c) {
    const Elem g{c};
    bool ok = true;
    for (const auto r : group_order_primes_) {
      Elem acc = one();
      Elem base = g;
      for (std::uint64_t e = group_order_ / r; e > 0; e >>= 1) {
        if (e & 1U) acc = mul_schoolbook(acc, base);
        base = mul_schoolbook(base, base);
      }
      if (acc == one()) {
        ok = false;
        break;
      }
    }
    if (ok) {
      primitive_ = g;
      return;
    }
  }
  throw invariant_error("no primitive element found");
}

void Field::build_tables() {
  const std::uint32_t n = q_ - 1;
  exp_.assign(2 * static_cast<std::size_t>(n), 0);
  log_.assign(q_, 0);
  Elem cur = one();
  for (std::uint32_t i = 0; i < n; ++i) {
    exp_[i] = cur.value;
    log_[cur.value] = i;
    cur = mul_schoolbook(cur, primitive_);
  }
  for (std::uint32_t i = 0; i < n; ++i) exp_[n + i] = exp_[i];
  zech_.assign(n, -1);
  for (std::uint32_t i = 0; i < n; ++i) {
    const Elem s = add_digits(one(), Elem{exp_[i]});
    zech_[i] = s.is_zero() ? -1 : static_cast<std::int64_t>(log_[s.value]);
  }
}

void Field::self_check() const {
  ensure(is_irreducible_mod_p(modulus_, p_), "field modulus is not irreducible");
  if (u_ >= 2) {
    for (std::uint32_t a = 0; a < p_; ++a) {
      std::uint64_t v = 0;
      for (std::size_t k = modulus_.size(); k-- > 0;) v = (v * a + modulus_[k]) % p_;
      ensure(v != 0, "field modulus has a root in F_p");
    }
  }
  const std::uint32_t samples = std::min<std::uint32_t>(q_ - 1, 64);
  for (std::uint32_t s = 0; s < samples; ++s) {
    const Elem a{1 + static_cast<std::uint32_t>((std::uint64_t{s} * (q_ - 1)) / samples)};
    Elem acc = one();
    Elem base = a;
    for (std::uint64_t e = q_ - 1; e > 0; e >>= 1) {
      if (e & 1U) acc = mul_schoolbook(acc, base);
      base = mul_schoolbook(base, base);
    }
    ensure(acc == one(), "a^(q-1) != 1 for a sampled nonzero element");
    if (uses_tables()) {
      const Elem b{(a.value * 7919U + 13U) % q_};
      ensure(mul(a, b) == mul_schoolbook(a, b), "table and schoolbook products differ");
      ensure(add(a, b) == add_digits(a, b), "table and digit sums differ");
    }
  }
}

Elem Field::element(std::uint64_t index) const {
  require(index < q_, "element index out of range");
  return Elem{static_cast<std::uint32_t>(index)};
}

Elem Field::add_digits(Elem a, Elem b) const {
  if (p_ == 2) return Elem{a.value ^ b.value};
  std::uint32_t x = a.value, y = b.value, r = 0;
  for (std::uint32_t k = 0; k < u_; ++k) {
    r += ((x % p_ + y % p_) % p_) * place_[k];
    x /= p_;
    y /= p_;
  }
  return Elem{r};
}

Elem Field::add(Elem a, Elem b) const {
  if (p_ == 2) return Elem{a.value ^ b.value};
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (!uses_tables()) return add_digits(a, b);
  // a + b = a (1 + b/a)
  const std::uint32_t n = q_ - 1;
  const std::uint32_t la = log_[a.value];
  const std::uint32_t diff = (log_[b.value] + n - la) % n;
  const std::int64_t z = zech_[diff];
  if (z < 0) return zero();
  return Elem{exp_[la + static_cast<std::uint32_t>(z)]};
}

Elem Field::neg(Elem a) const {
  if (p_ == 2) return a;
  std::uint32_t x = a.value, r = 0;
  for (std::uint32_t k = 0; k < u_; ++k) {
    const std::uint32_t c = x % p_;
    r += ((p_ - c) % p_) * place_[k];
    x /= p_;
  }
  return Elem{r};
}

Elem Field::mul_schoolbook(Elem a, Elem b) const {
  if (a.is_zero() || b.is_zero()) return zero();
  const auto da = digits(a);
  const auto db = digits(b);
  Poly r(2 * u_ - 1, 0);
  for (std::uint32_t i = 0; i < u_; ++i) {
    if (da[i] == 0) continue;
    for (std::uint32_t j = 0; j < u_; ++j) {
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{da[i]} * db[j]) % p_);
    }
  }
  for (std::size_t k = r.size(); k-- > u_;) {
    const std::uint64_t c = r[k];
    if (c == 0) continue;
    for (std::uint32_t i = 0; i <= u_; ++i) {
      const std::size_t pos = k - u_ + i;
      r[pos] = static_cast<std::uint32_t>((r[pos] + p_ - c * modulus_[i] % p_) % p_);
    }
  }
  r.resize(u_);
  return from_digits(r);
}

Elem Field::mul(Elem a, Elem b) const {
  if (a.is_zero() || b.is_zero()) return zero();
  if (!uses_tables()) return mul_schoolbook(a, b);
  return Elem{exp_[log_[a.value] + log_[b.value]]};
}

Elem Field::inv(Elem a) const {
  require(!a.is_zero(), "inversion of zero");
  if (!uses_tables()) return pow(a, q_ - 2);
  const std::uint32_t n = q_ - 1;
  return Elem{exp_[(n - log_[a.value]) % n]};
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return one();
  if (a.is_zero()) return zero();
  if (uses_tables()) {
    const std::uint64_t n = q_ - 1;
    return Elem{exp_[(log_[a.value] * (e % n)) % n]};
  }
  Elem r = one();
  while (e > 0) {
    if (e & 1U) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Elem Field::frobenius(Elem a, std::uint32_t k) const {
  for (std::uint32_t i = 0; i < k % u_; ++i) a = pow(a, p_);
  return a;
}

Elem Field::scale(Elem a, std::uint64_t n) const { return mul(a, Elem{static_cast<std::uint32_t>(n % p_)}); }

Elem Field::arith(ArithKind kind, Elem a, Elem b) const {
  require(contains(a), "operand is not an element of this field");
  if (kind != ArithKind::pow) require(contains(b), "operand is not an element of this field");
  switch (kind) {
    case ArithKind::add:
      return add(a, b);
    case ArithKind::mul:
      return mul(a, b);
    case ArithKind::inv:
      return inv(a);
    case ArithKind::pow:
      return pow(a, b.value);
  }
  throw validation_error("unknown arithmetic kind");
}

std::uint64_t Field::log(Elem a) const { return log_[a.value]; }

std::uint64_t Field::coset_index(Elem a, std::uint64_t d) const {
  require(!a.is_zero(), "zero has no multiplicative coset");
  require(d >= 1 && group_order_ % d == 0, "d must divide q - 1");
  if (uses_tables()) return log(a) % d;
  // a^((q-1)/d) = h^c with h = g^((q-1)/d) of order d.
  const std::uint64_t e = group_order_ / d;
  const Elem target = pow(a, e);
  const Elem h = pow(primitive_, e);
  Elem cur = one();
  for (std::uint64_t c = 0; c < d; ++c) {
    if (cur == target) return c;
    cur = mul(cur, h);
  }
  throw invariant_error("coset index not found");
}

std::vector<std::uint32_t> Field::digits(Elem a) const {
  std::vector<std::uint32_t> out(u_);
  std::uint32_t x = a.value;
  for (std::uint32_t k = 0; k < u_; ++k) {
    out[k] = x % p_;
    x /= p_;
  }
  return out;
}

Elem Field::from_digits(std::span<const std::uint32_t> d) const {
  require(d.size() == u_, "digit vector length must equal the extension degree");
  std::uint32_t r = 0;
  for (std::uint32_t k = 0; k < u_; ++k) {
    require(d[k] < p_, "digit out of range");
    r += d[k] * place_[k];
  }
  return Elem{r};
}

std::string Field::to_string(Elem a) const {
  const auto d = digits(a);
  std::string s;
  if (p_ <= 36) {
    for (std::size_t k = u_; k-- > 0;) s.push_back(digit_char(d[k]));
    return s;
  }
  for (std::size_t k = u_; k-- > 0;) {
    s += std::to_string(d[k]);
    if (k != 0) s.push_back('.');
  }
  return s;
}

Elem Field::parse(std::string_view text) const {
  std::vector<std::uint32_t> d(u_, 0);
  if (p_ <= 36) {
    require(text.size() == u_, "element string must have exactly u digits");
    for (std::uint32_t i = 0; i < u_; ++i) {
      const int v = digit_value(text[i]);
      require(v >= 0 && static_cast<std::uint32_t>(v) < p_, "invalid digit in element string");
      d[u_ - 1 - i] = static_cast<std::uint32_t>(v);
    }
    return from_digits(d);
  }
  std::uint32_t k = u_;
  std::size_t start = 0;
  while (k > 0) {
    const auto dot = text.find('.', start);
    const auto part = text.substr(start, dot == std::string_view::npos ? text.npos : dot - start);
    require(!part.empty(), "invalid element string");
    d[--k] = static_cast<std::uint32_t>(std::stoul(std::string(part)));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  require(k == 0, "element string must have exactly u digits");
  return from_digits(d);
}

FieldPtr Field::corrupted_copy_for_testing() const {
  require(uses_tables() && q_ > 3, "fault injection needs a tabulated field with q > 3");
  auto copy = std::shared_ptr<Field>(new Field(*this));
  const std::uint32_t n = q_ - 1;
  std::swap(copy->exp_[1], copy->exp_[2]);
  std::swap(copy->exp_[n + 1], copy->exp_[n + 2]);
  return copy;
}

FieldSource default_field_source() {
  return [](std::uint32_t p, std::uint32_t u) -> FieldPtr {
    static std::mutex mutex;
    static std::map<std::pair<std::uint32_t, std::uint32_t>, FieldPtr> cache;
    const std::lock_guard lock(mutex);
    auto& slot = cache[{p, u}];
    if (!slot) slot = Field::make(p, u);
    return slot;
  };
}

// --- Element -------------------------------------------------------------

Element::Element(FieldPtr field, Elem value) : field_(std::move(field)), value_(value) {
  require(field_ != nullptr, "element without a field");
  require(field_->contains(value_), "value is not an element of the field");
}

const Field& Element::checked(const Element& o) const {
  if (field_ != o.field_ && !field_->same_field(*o.field_)) {
    throw validation_error("mixed-field operands");
  }
  return *field_;
}

Element Element::operator+(const Element& o) const { return {field_, checked(o).add(value_, o.value_)}; }
Element Element::operator-(const Element& o) const { return {field_, checked(o).sub(value_, o.value_)}; }
Element Element::operator*(const Element& o) const { return {field_, checked(o).mul(value_, o.value_)}; }
Element Element::operator/(const Element& o) const { return {field_, checked(o).div(value_, o.value_)}; }
Element Element::inverse() const { return {field_, field_->inv(value_)}; }
Element Element::pow(std::uint64_t e) const { return {field_, field_->pow(value_, e)}; }
bool Element::operator==(const Element& o) const {
  checked(o);
  return value_ == o.value_;
}

// --- SubfieldView ----------------------------------------------------------

SubfieldView::SubfieldView(FieldPtr field, std::uint32_t ell) : field_(std::move(field)), ell_(ell) {
  require(field_ != nullptr, "subfield view without a field");
  const std::uint32_t p = field_->characteristic();
  const std::uint32_t u = field_->degree();
  std::uint64_t pw = 1;
  v_ = 0;
  while (pw < ell && v_ <= u) {
    pw *= p;
    ++v_;
  }
  require(ell >= p && pw == ell, "subfield order " + std::to_string(ell) + " is not a power of the characteristic");
  require(u % v_ == 0, "F_" + std::to_string(ell) + " is not a subfield of F_" + std::to_string(field_->order()) +
                           " (v does not divide u)");
  k_ = u / v_;

  const std::uint32_t q = field_->order();
  trace_.resize(q);
  label_.assign(q, -1);
  for (std::uint32_t i = 0; i < q; ++i) {
    const Elem a{i};
    trace_[i] = trace_to_subfield(*this, a);
    if (field_->frobenius(a, v_) == a) elements_.push_back(a);
  }
  ensure(elements_.size() == ell_, "fixed field of the ell-Frobenius has the wrong size");
  for (std::size_t i = 0; i < elements_.size(); ++i) label_[elements_[i].value] = static_cast<std::int32_t>(i);
}

std::uint32_t SubfieldView::label(Elem a) const {
  require(field_->contains(a) && label_[a.value] >= 0, "element is not in the subfield");
  return static_cast<std::uint32_t>(label_[a.value]);
}

Elem SubfieldView::from_label(std::uint32_t label) const {
  require(label < elements_.size(), "subfield label out of range");
  return elements_[label];
}

std::vector<Elem> SubfieldView::basis() const {
  std::vector<Elem> out;
  Elem cur = Field::one();
  for (std::uint32_t i = 0; i < k_; ++i) {
    out.push_back(cur);
    cur = field_->mul(cur, field_->root());
  }
  return out;
}

Elem trace_to_subfield(const SubfieldView& view, Elem a) {
  const Field& f = *view.field();
  require(f.contains(a), "element is not in the view's field");
  Elem sum = Field::zero();
  Elem cur = a;
  for (std::uint32_t i = 0; i < view.relative_degree(); ++i) {
    sum = f.add(sum, cur);
    cur = f.frobenius(cur, view.subfield_degree());
  }
  return sum;
}

std::vector<Elem> subfield_basis(const SubfieldView& view) { return view.basis(); }

}  // namespace tagcodes
