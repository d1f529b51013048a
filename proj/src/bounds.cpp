#include "tagcodes/bounds.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

#include "tagcodes/errors.hpp"

namespace tagcodes {

namespace {

__extension__ using wide = __int128;

std::int64_t clamp64(wide v) {
  constexpr wide lo = std::numeric_limits<std::int64_t>::min();
  constexpr wide hi = std::numeric_limits<std::int64_t>::max();
  return static_cast<std::int64_t>(std::clamp(v, lo, hi));
}

Rational rat(std::uint64_t num, std::uint64_t den) {
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

std::uint64_t to_integer(const Rational& r, const char* what) {
  require(r.denominator() == 1 && r.numerator() >= 0, std::string(what) + " is not a non-negative integer");
  return static_cast<std::uint64_t>(r.numerator());
}

}  // namespace

bool independence_check(std::uint64_t A, std::uint64_t B, std::uint64_t d, std::uint64_t m, std::uint64_t s,
                        std::uint64_t t) {
  require(d >= 1, "d must be at least 1");
  // Each (j, k) contributes the interval offset + [0, A]; intervals are
  // disjoint iff sorted offsets are more than A apart.
  std::vector<wide> offsets;
  offsets.reserve((B + 1) * d);
  for (std::uint64_t j = 0; j <= B; ++j) {
    for (std::uint64_t k = 0; k < d; ++k) offsets.push_back(wide(j) * m * d * s + wide(k) * m * t);
  }
  std::sort(offsets.begin(), offsets.end());
  for (std::size_t i = 1; i < offsets.size(); ++i) {
    if (offsets[i] - offsets[i - 1] <= wide(A)) return false;
  }
  return true;
}

std::uint64_t prop_bound_value(std::uint64_t N, std::uint64_t q, std::uint64_t s, std::uint64_t d, std::uint64_t t,
                               std::uint64_t m, std::uint64_t B) {
  // m (2q (s d B + t d) + N) / (2q), rounded up
  const wide num = wide(m) * (wide(2) * q * (wide(s) * d * B + wide(t) * d) + N);
  const wide den = wide(2) * q;
  return static_cast<std::uint64_t>((num + den - 1) / den);
}

std::int64_t feasibility_margin(std::uint64_t N, std::uint64_t A, std::uint64_t g_L, std::uint64_t s,
                                std::uint64_t d, std::uint64_t t, std::uint64_t B) {
  const wide lhs = wide(2) * (wide(A) - wide(g_L)) * B * d;
  const wide rhs = wide(N) + wide(2) * d * s * B + wide(2) * (d - 1) * t;
  return clamp64(lhs - rhs);
}

std::uint64_t artin_schreier_genus(std::uint64_t g, std::uint64_t ell, std::uint64_t t) {
  require(t >= 1, "t must be positive");
  // (ell - 1)(t - 1) is even: ell odd or t odd (p does not divide t)
  require(((ell - 1) * (t - 1)) % 2 == 0, "Artin-Schreier genus is not integral; p must not divide t");
  return ell * g + (ell - 1) * (t - 1) / 2;
}

BoundReport prop_general_search(const BoundInputs& in) {
  require(in.d >= 2, "d must be at least 2");
  require(in.N >= 1 && in.q >= 2 && in.s >= 1 && in.t >= 1, "N, q, s, t must be positive");
  require(prime_power(in.q).has_value() && prime_power(in.q)->prime == in.p, "q must be a power of p");
  require(in.B_multiplier >= 1, "B multiplier must be positive");

  BoundReport rep;
  rep.inputs = in;
  if (in.artin_schreier) {
    require(in.t % in.p != 0, "exact Artin-Schreier genus needs p ∤ t");
    rep.g_L_cap = artin_schreier_genus(in.g, in.d, in.t);
    rep.g_L_source = "exact_artin_schreier";
  } else {
    rep.g_L_cap = in.d * (in.g + in.t);
    rep.g_L_source = "cap";
  }

  std::uint64_t root = isqrt(in.q);
  if (root * root < in.q) ++root;
  const std::uint64_t B_max = root * in.B_multiplier;

  bool have_candidate = false;
  rep.best_margin = std::numeric_limits<std::int64_t>::min();
  for (std::uint64_t m = 1; m <= in.q; m *= in.p) {
    const std::uint64_t A = static_cast<std::uint64_t>(wide(in.N) * m / (wide(2) * in.q));
    for (std::uint64_t B = 1; B <= B_max; ++B) {
      const auto margin = feasibility_margin(in.N, A, rep.g_L_cap, in.s, in.d, in.t, B);
      const bool feasible = margin > 0;
      const bool independent = feasible && independence_check(A, B, in.d, m, in.s, in.t);
      if (feasible && independent) {
        const auto bound = prop_bound_value(in.N, in.q, in.s, in.d, in.t, m, B);
        if (!have_candidate || bound < rep.bound_NL) {
          have_candidate = true;
          rep.feasible = true;
          rep.m = m;
          rep.B = B;
          rep.A = A;
          rep.bound_NL = bound;
          rep.independence_ok = true;
          rep.best_margin = margin;
        }
      } else if (!have_candidate && margin > rep.best_margin) {
        rep.best_margin = margin;
        rep.m = m;
        rep.B = B;
        rep.A = A;
        rep.violated = feasible ? "independence" : "feasibility";
      }
    }
  }
  if (rep.feasible) rep.violated.clear();
  return rep;
}

Prop55Result prop55_condition(std::uint64_t t, std::uint64_t s, std::uint64_t N, std::uint64_t q, std::uint64_t d,
                              const Rational& sigma) {
  require(t >= 1 && s >= 1 && N >= 1 && q >= 1 && d >= 1, "arguments must be positive");
  Prop55Result out;
  const bool vacuous = d == 1;
  if (!vacuous) out.threshold = (sigma - Rational(1, 2)) / Rational(static_cast<std::int64_t>(d - 1));

  // |eps| grows once ell' s moves past t, so ell' <= t/s + 1 covers the minimum.
  const std::uint64_t top = t / s + 1;
  for (std::uint64_t lp = 0; lp <= top; ++lp) {
    if (std::gcd(lp, d) != 1) continue;
    const Rational eps = Rational(static_cast<std::int64_t>(t) - static_cast<std::int64_t>(lp * s)) * rat(q, N);
    if (!out.ell_prime || abs(eps) < abs(out.eps)) {
      out.ell_prime = lp;
      out.eps = eps;
    }
  }
  out.negative_eps = out.ell_prime.has_value() && out.eps < Rational(0);
  if (vacuous) {
    out.holds = true;
  } else {
    out.holds = out.ell_prime.has_value() && sigma > Rational(1, 2) && abs(out.eps) < out.threshold;
  }
  return out;
}

Rational distance_from_bound(std::uint64_t bound_NL, std::uint64_t ell, std::uint64_t n) {
  require(bound_NL >= 1, "bound_NL must be at least 1");
  require(ell >= 2 && n >= 1, "ell and n must be positive");
  const Rational d = Rational(1) - rat(bound_NL - 1, ell * n);
  return d < Rational(0) ? Rational(0) : d;
}

NormalizedParams normalize(std::uint64_t N, std::uint64_t q, std::uint64_t g, std::uint64_t s, std::uint64_t d,
                           std::uint64_t t, std::uint64_t B, std::uint64_t m) {
  require(N >= 1 && q >= 1, "N and q must be positive");
  return {rat(t, N), rat(B * d, q), rat(g, N), rat(m, q), rat(s * q, N)};
}

RecoveredParams denormalize(const NormalizedParams& np, std::uint64_t N, std::uint64_t q, std::uint64_t d) {
  require(d >= 1, "d must be positive");
  const auto n = static_cast<std::int64_t>(N), qq = static_cast<std::int64_t>(q);
  return {to_integer(np.tau * n, "t"), to_integer(np.beta * qq / static_cast<std::int64_t>(d), "B"),
          to_integer(np.gamma * n, "g"), to_integer(np.mu * qq, "m"), to_integer(np.sigma * n / qq, "s")};
}

nlohmann::ordered_json normalized_json(const NormalizedParams& np, std::uint64_t q) {
  nlohmann::ordered_json j;
  const bool square = is_square(q);
  const auto root = static_cast<std::int64_t>(isqrt(q));
  auto emit = [&](const char* name, const Rational& c) {
    j[std::string(name) + "_over_sqrt_q"] = to_string(c);
    if (square) {
      j[name] = to_string(c * root);
    } else {
      j[name] = nullptr;
    }
  };
  emit("tau", np.tau);
  emit("beta", np.beta);
  emit("gamma", np.gamma);
  emit("mu", np.mu);
  j["sigma"] = to_string(np.sigma);
  return j;
}

nlohmann::ordered_json bound_report_json(const BoundReport& r) {
  nlohmann::ordered_json j;
  const auto& in = r.inputs;
  j["N"] = in.N;
  j["q"] = in.q;
  j["g"] = in.g;
  j["s"] = in.s;
  j["d"] = in.d;
  j["t"] = in.t;
  j["p"] = in.p;
  j["feasible"] = r.feasible;
  j["m"] = r.m;
  j["B"] = r.B;
  j["A"] = r.A;
  j["g_L_cap"] = r.g_L_cap;
  j["g_L_source"] = r.g_L_source;
  if (r.feasible) {
    j["bound_NL"] = r.bound_NL;
  } else {
    j["bound_NL"] = nullptr;
    j["violated"] = r.violated;
  }
  j["independence_ok"] = r.independence_ok;
  j["margin"] = r.best_margin;
  if (r.m != 0) j["normalized"] = normalized_json(normalize(in.N, in.q, in.g, in.s, in.d, in.t, r.B, r.m), in.q);
  return j;
}

nlohmann::ordered_json prop55_json(const Prop55Result& r) {
  nlohmann::ordered_json j;
  j["holds"] = r.holds;
  if (r.ell_prime) {
    j["ell_prime"] = *r.ell_prime;
    j["eps"] = to_string(r.eps);
  } else {
    j["ell_prime"] = nullptr;
    j["eps"] = nullptr;
  }
  j["threshold"] = to_string(r.threshold);
  j["negative_eps"] = r.negative_eps;
  return j;
}

}  // namespace tagcodes
