#pragma once

// Truncated exponential generating functions sum_{n<=N} c_n t^n / n! with
// coefficients in a cyclotomic field. The product is the binomial
// convolution; inversion is the triangular recurrence, requiring an
// invertible constant term. Binary operations take the minimum order of
// their operands.

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cyclotomic.hpp"
#include "rational.hpp"

namespace etwist {

class Egf {
 public:
  Egf() = default;
  Egf(ContextPtr ctx, unsigned order)
      : ctx_(std::move(ctx)), c_(order + 1, FieldElement(ctx_)) {}
  Egf(ContextPtr ctx, std::vector<FieldElement> coeffs)
      : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
    if (c_.empty()) throw std::invalid_argument("Egf: empty coefficient list");
  }

  const ContextPtr& context() const { return ctx_; }
  unsigned order() const { return static_cast<unsigned>(c_.size() - 1); }
  const FieldElement& operator[](unsigned n) const { return c_.at(n); }
  FieldElement& operator[](unsigned n) { return c_.at(n); }
  const std::vector<FieldElement>& coeffs() const { return c_; }

  friend bool operator==(const Egf& a, const Egf& b) {
    return same_field(a.ctx_, b.ctx_) && a.c_ == b.c_;
  }
  friend bool operator!=(const Egf& a, const Egf& b) { return !(a == b); }

 private:
  ContextPtr ctx_;
  std::vector<FieldElement> c_;
};

inline Egf egf_const(const ContextPtr& ctx, const Rat& r, unsigned order) {
  Egf f(ctx, order);
  f[0] = FieldElement(ctx, r);
  return f;
}

// e^{ct}: coefficients c^n.
inline Egf egf_exp(const FieldElement& c, unsigned order) {
  Egf f(c.context(), order);
  FieldElement p = field_one(c.context());
  for (unsigned n = 0; n <= order; ++n) {
    f[n] = p;
    if (n < order) p *= c;
  }
  return f;
}

inline Egf egf_add(const Egf& f, const Egf& g) {
  if (!same_field(f.context(), g.context()))
    throw std::invalid_argument("egf_add: mixed contexts");
  unsigned N = std::min(f.order(), g.order());
  Egf h(f.context(), N);
  for (unsigned n = 0; n <= N; ++n) h[n] = f[n] + g[n];
  return h;
}

inline Egf egf_sub(const Egf& f, const Egf& g) {
  if (!same_field(f.context(), g.context()))
    throw std::invalid_argument("egf_sub: mixed contexts");
  unsigned N = std::min(f.order(), g.order());
  Egf h(f.context(), N);
  for (unsigned n = 0; n <= N; ++n) h[n] = f[n] - g[n];
  return h;
}

inline Egf egf_scale(const Egf& f, const FieldElement& c) {
  Egf h(f.context(), f.order());
  for (unsigned n = 0; n <= f.order(); ++n) h[n] = f[n] * c;
  return h;
}

// Binomial convolution: (fg)_n = sum_k C(n,k) f_k g_{n-k}.
inline Egf egf_mul(const Egf& f, const Egf& g) {
  if (!same_field(f.context(), g.context()))
    throw std::invalid_argument("egf_mul: mixed contexts");
  unsigned N = std::min(f.order(), g.order());
  Egf h(f.context(), N);
  for (unsigned n = 0; n <= N; ++n) {
    FieldElement acc(f.context());
    for (unsigned k = 0; k <= n; ++k) {
      if (f[k].is_zero() || g[n - k].is_zero()) continue;
      acc.add_scaled(f[k] * g[n - k], Rat(binomial(n, k)));
    }
    h[n] = std::move(acc);
  }
  return h;
}

// Reciprocal: g_0 = 1/f_0, then sum_k C(n,k) f_k g_{n-k} = 0 for n >= 1.
inline Egf egf_invert(const Egf& f) {
  if (f[0].is_zero())
    throw std::domain_error("egf_invert: constant term is zero");
  unsigned N = f.order();
  Egf g(f.context(), N);
  FieldElement inv0 = invert(f[0]);
  g[0] = inv0;
  for (unsigned n = 1; n <= N; ++n) {
    FieldElement acc(f.context());
    for (unsigned k = 1; k <= n; ++k) {
      if (f[k].is_zero() || g[n - k].is_zero()) continue;
      acc.add_scaled(f[k] * g[n - k], Rat(binomial(n, k)));
    }
    g[n] = -(acc * inv0);
  }
  return g;
}

inline Egf egf_pow(const Egf& f, unsigned e) {
  Egf out = egf_const(f.context(), Rat(1), f.order());
  for (unsigned i = 0; i < e; ++i) out = egf_mul(out, f);
  return out;
}

}  // namespace etwist
