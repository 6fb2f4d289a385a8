#pragma once

// Generalized twisted Euler numbers and polynomials attached to a Dirichlet
// character chi mod odd d and a p-power root of unity xi = zeta_{p^s}^j,
// living in Q(zeta_M) with M = lcm(p^s, order(chi)).
//
//   E_n: (xi^d + 1) E_n = 2 T_n(d-1) - xi^d sum_{k<n} C(n,k) d^{n-k} E_k
//   T_k(n) = sum_{a=0}^{n} (-1)^a chi(a) xi^a a^k   (0^0 = 1)
//   E_n(x) = sum_k C(n,k) E_k x^{n-k}
//
// The recurrence is the coefficient identity of
// (sum E_n t^n/n!)(xi^d e^{dt} + 1) = 2 sum_{a<d} (-1)^a chi(a) xi^a e^{at},
// which is well defined because xi^d = -1 would force an even-order root
// inside a p-power group, impossible for odd p.
//
// A context is immutable; twist_power(m) derives the context with xi^m in
// the same ambient field, sharing one memo table so Euler-number sequences,
// power sums and polynomial evaluations are computed once per twist.

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "characters.hpp"
#include "cyclotomic.hpp"
#include "rational.hpp"
#include "series.hpp"

namespace etwist {

namespace detail {

struct EulerMemo {
  std::mutex mu;
  // twist exponent -> E_0..E_k computed so far (replaced-on-grow snapshots)
  std::map<unsigned, std::shared_ptr<const std::vector<FieldElement>>> numbers;
  // (twist, k, n) -> T_k(n)
  std::map<std::tuple<unsigned, unsigned, unsigned>, FieldElement> tsums;
  // (twist, coeffs of x) -> E_0(x)..E_k(x) computed so far
  std::map<std::pair<unsigned, std::vector<Rat>>,
           std::shared_ptr<const std::vector<FieldElement>>>
      pevals;
};

inline bool is_odd_prime(unsigned p) {
  if (p < 3 || p % 2 == 0) return false;
  for (unsigned q = 3; q * q <= p; q += 2)
    if (p % q == 0) return false;
  return true;
}

}  // namespace detail

class EulerContext {
 public:
  EulerContext(unsigned p, unsigned s, unsigned d, DirichletCharacter chi,
               unsigned xi_exponent)
      : p_(p), s_(s), d_(d), chi_(std::move(chi)) {
    if (!detail::is_odd_prime(p)) throw std::invalid_argument("EulerContext: p must be an odd prime");
    if (d == 0 || d % 2 == 0) throw std::invalid_argument("EulerContext: d must be odd");
    if (chi_.modulus != d) throw std::invalid_argument("EulerContext: character modulus != d");
    ps_ = 1;
    for (unsigned i = 0; i < s; ++i) ps_ *= p;
    xi_exp_ = xi_exponent % ps_;
    field_ = etwist::make_context(std::lcm(ps_, chi_.order));
    memo_ = std::make_shared<detail::EulerMemo>();
  }

  unsigned prime() const { return p_; }
  unsigned level() const { return s_; }          // s with xi in mu_{p^s}
  unsigned twist_modulus() const { return ps_; } // p^s
  unsigned d() const { return d_; }
  const DirichletCharacter& character() const { return chi_; }
  unsigned xi_exponent() const { return xi_exp_; }
  const ContextPtr& field() const { return field_; }

  // xi^t as a field element (single basis-power lookup)
  FieldElement xi_power(long long t) const {
    return FieldElement(field_, field_->root_power[root_exponent(t)]);
  }
  FieldElement xi() const { return xi_power(1); }

  // index into root_power for xi^t = zeta_{p^s}^{xi_exp * t}
  unsigned root_exponent(long long t) const {
    long long e = (static_cast<long long>(xi_exp_) * t) % ps_;
    if (e < 0) e += ps_;
    return static_cast<unsigned>(e) * (field_->modulus / ps_) % field_->modulus;
  }

  // same chi and ambient field, xi replaced by xi^m; shares the memo
  EulerContext twist_power(unsigned long m) const {
    EulerContext out(*this);
    out.xi_exp_ = static_cast<unsigned>(
        (static_cast<unsigned long long>(xi_exp_) * (m % ps_)) % ps_);
    return out;
  }

  // signed monomial (-1)^a chi(a) xi^a: zero flag, sign, root_power index
  struct SignedRoot {
    bool zero;
    bool negative;
    unsigned exp;
  };
  SignedRoot term_coefficient(unsigned long a) const {
    SignedRoot r{false, (a & 1UL) != 0, 0};
    unsigned am = static_cast<unsigned>(a % d_);
    const auto& k = chi_.table[am];
    if (!k) {
      r.zero = true;
      return r;
    }
    unsigned M = field_->modulus;
    unsigned long long e = static_cast<unsigned long long>(*k) * (M / chi_.order);
    e += static_cast<unsigned long long>(root_exponent(static_cast<long long>(a % ps_)));
    r.exp = static_cast<unsigned>(e % M);
    return r;
  }

  detail::EulerMemo& memo() const { return *memo_; }

 private:
  unsigned p_, s_, d_, ps_;
  DirichletCharacter chi_;
  unsigned xi_exp_ = 0;
  ContextPtr field_;
  std::shared_ptr<detail::EulerMemo> memo_;
};

// T_k(n) = sum_{a=0}^{n} (-1)^a chi(a) xi^a a^k, 0^0 = 1. Accumulated in
// integer buckets per root-of-unity exponent, then expanded once.
inline FieldElement power_sum(const EulerContext& ctx, unsigned k, unsigned n) {
  auto& memo = ctx.memo();
  auto key = std::make_tuple(ctx.xi_exponent(), k, n);
  {
    std::lock_guard<std::mutex> lock(memo.mu);
    auto it = memo.tsums.find(key);
    if (it != memo.tsums.end()) return it->second;
  }
  const auto& F = ctx.field();
  std::vector<Int> bucket(F->modulus, Int(0));
  for (unsigned long a = 0; a <= n; ++a) {
    auto c = ctx.term_coefficient(a);
    if (c.zero) continue;
    Int t = (k == 0) ? Int(1) : int_pow(a, k);
    if (c.negative)
      bucket[c.exp] -= t;
    else
      bucket[c.exp] += t;
  }
  std::vector<Rat> acc(F->degree, Rat(0));
  for (unsigned e = 0; e < F->modulus; ++e) {
    if (bucket[e] == 0) continue;
    Rat b(bucket[e]);
    const auto& pw = F->root_power[e];
    for (unsigned j = 0; j < F->degree; ++j)
      if (pw[j] != 0) acc[j] += b * pw[j];
  }
  FieldElement out(F, std::move(acc));
  std::lock_guard<std::mutex> lock(memo.mu);
  memo.tsums.emplace(key, out);
  return out;
}

// E_0..E_{n_max} for this context's twist, grown on demand.
inline std::shared_ptr<const std::vector<FieldElement>> euler_numbers(
    const EulerContext& ctx, unsigned n_max) {
  auto& memo = ctx.memo();
  {
    std::lock_guard<std::mutex> lock(memo.mu);
    auto it = memo.numbers.find(ctx.xi_exponent());
    if (it != memo.numbers.end() && it->second->size() > n_max)
      return it->second;
  }
  FieldElement xi_d = ctx.xi_power(ctx.d());
  FieldElement denom = xi_d + field_one(ctx.field());
  if (denom.is_zero())
    throw std::domain_error("euler_numbers: xi^d = -1");
  FieldElement inv_denom = invert(denom);
  auto out = std::make_shared<std::vector<FieldElement>>();
  out->reserve(n_max + 1);
  const Int dd(ctx.d());
  for (unsigned n = 0; n <= n_max; ++n) {
    FieldElement rhs = power_sum(ctx, n, ctx.d() - 1) * Rat(2);
    if (n > 0) {
      FieldElement acc(ctx.field());
      for (unsigned k = 0; k < n; ++k)
        acc.add_scaled((*out)[k], Rat(binomial(n, k) * int_pow(dd, n - k)));
      rhs -= xi_d * acc;
    }
    out->push_back(inv_denom * rhs);
  }
  std::lock_guard<std::mutex> lock(memo.mu);
  auto& slot = memo.numbers[ctx.xi_exponent()];
  if (!slot || slot->size() < out->size()) slot = out;
  return slot;
}

// E_n(x) = sum_k C(n,k) E_k x^{n-k}, one value, no memo (callers with
// throwaway arguments). Rational x avoids full field products.
inline FieldElement euler_polynomial(const EulerContext& ctx, unsigned n,
                                     const FieldElement& x) {
  if (!same_field(ctx.field(), x.context()))
    throw std::invalid_argument("euler_polynomial: argument from wrong field");
  auto E = euler_numbers(ctx, n);
  FieldElement acc(ctx.field());
  if (x.is_rational()) {
    const Rat& xr = x.rational_part();
    Rat pw(1);
    for (unsigned k = n + 1; k-- > 0;) {  // pw = x^{n-k}
      acc.add_scaled((*E)[k], Rat(binomial(n, k)) * pw);
      if (k > 0) pw *= xr;
    }
    return acc;
  }
  std::vector<FieldElement> xp(n + 1, field_one(ctx.field()));
  for (unsigned i = 1; i <= n; ++i) xp[i] = xp[i - 1] * x;
  for (unsigned k = 0; k <= n; ++k)
    acc.add_scaled((*E)[k] * xp[n - k], Rat(binomial(n, k)));
  return acc;
}

// E_0(x)..E_{n_max}(x), memoized per (twist, x): the identity evaluators
// revisit the same arguments many times across a verification grid.
inline std::shared_ptr<const std::vector<FieldElement>> euler_polynomial_prefix(
    const EulerContext& ctx, unsigned n_max, const FieldElement& x) {
  if (!same_field(ctx.field(), x.context()))
    throw std::invalid_argument("euler_polynomial_prefix: argument from wrong field");
  auto& memo = ctx.memo();
  auto key = std::make_pair(ctx.xi_exponent(), x.coeffs());
  {
    std::lock_guard<std::mutex> lock(memo.mu);
    auto it = memo.pevals.find(key);
    if (it != memo.pevals.end() && it->second->size() > n_max)
      return it->second;
  }
  auto E = euler_numbers(ctx, n_max);
  auto out = std::make_shared<std::vector<FieldElement>>();
  out->reserve(n_max + 1);
  if (x.is_rational()) {
    const Rat& xr = x.rational_part();
    std::vector<Rat> xp(n_max + 1, Rat(1));
    for (unsigned i = 1; i <= n_max; ++i) xp[i] = xp[i - 1] * xr;
    for (unsigned n = 0; n <= n_max; ++n) {
      FieldElement acc(ctx.field());
      for (unsigned k = 0; k <= n; ++k)
        acc.add_scaled((*E)[k], Rat(binomial(n, k)) * xp[n - k]);
      out->push_back(std::move(acc));
    }
  } else {
    std::vector<FieldElement> xp(n_max + 1, field_one(ctx.field()));
    for (unsigned i = 1; i <= n_max; ++i) xp[i] = xp[i - 1] * x;
    for (unsigned n = 0; n <= n_max; ++n) {
      FieldElement acc(ctx.field());
      for (unsigned k = 0; k <= n; ++k)
        acc.add_scaled((*E)[k] * xp[n - k], Rat(binomial(n, k)));
      out->push_back(std::move(acc));
    }
  }
  std::lock_guard<std::mutex> lock(memo.mu);
  auto& slot = memo.pevals[key];
  if (!slot || slot->size() < out->size()) slot = out;
  return slot;
}

// Coefficient list of E_n(x) in x, low power first: coeff of x^m is
// C(n, n-m) E_{n-m}; the top coefficient is E_0.
inline std::vector<FieldElement> euler_polynomial_coeffs(const EulerContext& ctx,
                                                         unsigned n) {
  auto E = euler_numbers(ctx, n);
  std::vector<FieldElement> out;
  out.reserve(n + 1);
  for (unsigned m = 0; m <= n; ++m)
    out.push_back((*E)[n - m] * Rat(binomial(n, n - m)));
  return out;
}

// (xi^{wd} e^{wdt} + 1) / (xi^d e^{dt} + 1) * sum_{a<d} (-1)^a chi(a) xi^a e^{at}
// as a truncated EGF; for odd w this collapses to the single sum
// sum_{a<wd} (-1)^a chi(a) xi^a e^{at}, which the tests pin coefficientwise.
inline Egf quotient_egf(const EulerContext& ctx, unsigned w, unsigned order) {
  if (w % 2 == 0) throw std::invalid_argument("quotient_egf: w must be odd");
  const auto& F = ctx.field();
  unsigned long wd = static_cast<unsigned long>(w) * ctx.d();
  Egf num = egf_scale(egf_exp(FieldElement(F, Rat(wd)), order),
                      ctx.xi_power(static_cast<long long>(wd)));
  num = egf_add(num, egf_const(F, Rat(1), order));
  Egf den = egf_scale(egf_exp(FieldElement(F, Rat(ctx.d())), order),
                      ctx.xi_power(ctx.d()));
  den = egf_add(den, egf_const(F, Rat(1), order));
  Egf charsum(F, order);
  for (unsigned n = 0; n <= order; ++n)
    charsum[n] = power_sum(ctx, n, ctx.d() - 1);
  return egf_mul(egf_mul(num, egf_invert(den)), charsum);
}

}  // namespace etwist
