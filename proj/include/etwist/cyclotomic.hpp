#pragma once

// Exact arithmetic in the cyclotomic field Q(zeta_M).
//
// Elements are dense vectors of rationals on the power basis
// 1, x, ..., x^(phi(M)-1) modulo the M-th cyclotomic polynomial Phi_M,
// kept reduced at all times, so equality is plain coefficient comparison.
// Phi_M itself is obtained by exact division of x^M - 1 by the cyclotomic
// polynomials of all proper divisors of M; nothing here ever rounds.

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace etwist {

namespace detail {

// Quotient of exact polynomial division a / b over Z, b monic, low->high.
// Throws if the division leaves a remainder.
inline std::vector<Int> poly_divide_exact(std::vector<Int> a,
                                          const std::vector<Int>& b) {
  if (b.empty() || b.back() != 1)
    throw std::invalid_argument("poly_divide_exact: divisor not monic");
  if (a.size() < b.size())
    throw std::invalid_argument("poly_divide_exact: degree underflow");
  const size_t db = b.size() - 1;
  std::vector<Int> q(a.size() - db, Int(0));
  for (size_t i = a.size(); i-- > db;) {
    Int c = a[i];
    if (c == 0) continue;
    q[i - db] = c;
    for (size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  for (const Int& c : a)
    if (c != 0) throw std::invalid_argument("poly_divide_exact: remainder");
  return q;
}

}  // namespace detail

inline unsigned euler_phi(unsigned n) {
  unsigned result = n;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

// Phi_M over Z, low->high, monic, degree phi(M). Memoized.
inline std::vector<Int> cyclotomic_polynomial(unsigned M) {
  if (M == 0) throw std::invalid_argument("cyclotomic_polynomial: M = 0");
  static std::map<unsigned, std::vector<Int>> cache;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(M);
    if (it != cache.end()) return it->second;
  }
  std::vector<Int> result;
  if (M == 1) {
    result = {Int(-1), Int(1)};  // x - 1
  } else {
    std::vector<Int> num(M + 1, Int(0));  // x^M - 1
    num[0] = -1;
    num[M] = 1;
    for (unsigned k = 1; k < M; ++k)
      if (M % k == 0) num = detail::poly_divide_exact(num, cyclotomic_polynomial(k));
    result = num;
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(M, result);
  return result;
}

// Immutable per-field data: Phi_M, reduction rows for products, and the
// table of x^j mod Phi_M for every j < M (each zeta_M^j as a basis vector).
struct CyclotomicContext {
  unsigned modulus = 1;
  unsigned degree = 1;
  std::vector<Int> phi;                        // Phi_M, monic
  std::vector<std::vector<Rat>> reduction;     // x^(degree+i) mod Phi, i < degree-1
  std::vector<std::vector<Rat>> root_power;    // x^j mod Phi, j < modulus
};

using ContextPtr = std::shared_ptr<const CyclotomicContext>;

inline ContextPtr make_context(unsigned M) {
  if (M == 0) throw std::invalid_argument("make_context: M = 0");
  static std::map<unsigned, ContextPtr> cache;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(M);
    if (it != cache.end()) return it->second;
  }
  auto ctx = std::make_shared<CyclotomicContext>();
  ctx->modulus = M;
  ctx->phi = cyclotomic_polynomial(M);
  ctx->degree = static_cast<unsigned>(ctx->phi.size() - 1);
  const unsigned deg = ctx->degree;

  // x^deg mod Phi = -(low part of Phi); each next row is the previous one
  // shifted once with its overflow folded back through the first row.
  std::vector<Rat> row(deg);
  for (unsigned i = 0; i < deg; ++i) row[i] = Rat(-ctx->phi[i]);
  auto shift_reduce = [&](const std::vector<Rat>& v) {
    std::vector<Rat> out(deg, Rat(0));
    for (unsigned i = 0; i + 1 < deg; ++i) out[i + 1] = v[i];
    const Rat& top = v[deg - 1];
    if (top != 0) {
      const std::vector<Rat>& r0 = ctx->reduction.empty()
                                       ? row
                                       : ctx->reduction.front();
      for (unsigned i = 0; i < deg; ++i) out[i] += top * r0[i];
    }
    return out;
  };
  if (deg >= 1) {
    ctx->reduction.push_back(row);
    for (unsigned i = 1; i + 1 < deg; ++i)
      ctx->reduction.push_back(shift_reduce(ctx->reduction.back()));
  }

  ctx->root_power.resize(M);
  std::vector<Rat> pw(deg, Rat(0));
  pw[0] = 1;
  for (unsigned j = 0; j < M; ++j) {
    ctx->root_power[j] = pw;
    if (j + 1 < M) pw = shift_reduce(pw);
  }

  ContextPtr out = ctx;
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(M, out);
  return out;
}

inline bool same_field(const ContextPtr& a, const ContextPtr& b) {
  return a && b && a->modulus == b->modulus;
}

class FieldElement {
 public:
  FieldElement() = default;
  explicit FieldElement(ContextPtr ctx)
      : ctx_(std::move(ctx)), c_(ctx_->degree, Rat(0)) {}
  FieldElement(ContextPtr ctx, const Rat& r)
      : ctx_(std::move(ctx)), c_(ctx_->degree, Rat(0)) {
    c_[0] = r;
  }
  FieldElement(ContextPtr ctx, std::vector<Rat> coeffs)
      : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
    if (c_.size() != ctx_->degree)
      throw std::invalid_argument("FieldElement: coefficient count != degree");
  }

  const ContextPtr& context() const { return ctx_; }
  const std::vector<Rat>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const Rat& x : c_)
      if (x != 0) return false;
    return true;
  }

  // Nonzero only in the constant coordinate (always true when degree is 1).
  bool is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }
  const Rat& rational_part() const { return c_[0]; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return same_field(a.ctx_, b.ctx_) && a.c_ == b.c_;
  }
  friend bool operator!=(const FieldElement& a, const FieldElement& b) {
    return !(a == b);
  }

  FieldElement& operator+=(const FieldElement& o) {
    check(o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  FieldElement& operator-=(const FieldElement& o) {
    check(o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  FieldElement& operator*=(const Rat& r) {
    for (Rat& x : c_) x *= r;
    return *this;
  }
  // this += r * o, without materializing r * o.
  FieldElement& add_scaled(const FieldElement& o, const Rat& r) {
    check(o);
    Rat t;
    for (size_t i = 0; i < c_.size(); ++i) {
      t = o.c_[i] * r;
      c_[i] += t;
    }
    return *this;
  }

  friend FieldElement operator+(FieldElement a, const FieldElement& b) {
    a += b;
    return a;
  }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) {
    a -= b;
    return a;
  }
  friend FieldElement operator-(FieldElement a) {
    for (Rat& x : a.c_) x = -x;
    return a;
  }
  friend FieldElement operator*(FieldElement a, const Rat& r) {
    a *= r;
    return a;
  }
  friend FieldElement operator*(const Rat& r, FieldElement a) {
    a *= r;
    return a;
  }

  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    a.check(b);
    const unsigned deg = a.ctx_->degree;
    // fast paths: scalar operands skip the convolution entirely
    if (b.is_rational()) return a * b.c_[0];
    if (a.is_rational()) return b * a.c_[0];
    std::vector<Rat> conv(2 * deg - 1, Rat(0));
    Rat t;
    for (unsigned i = 0; i < deg; ++i) {
      if (a.c_[i] == 0) continue;
      for (unsigned j = 0; j < deg; ++j) {
        if (b.c_[j] == 0) continue;
        t = a.c_[i] * b.c_[j];
        conv[i + j] += t;
      }
    }
    FieldElement out(a.ctx_);
    for (unsigned i = 0; i < deg; ++i) out.c_[i] = std::move(conv[i]);
    const auto& red = a.ctx_->reduction;
    Rat u;
    for (unsigned i = deg; i < 2 * deg - 1; ++i) {
      const Rat& c = conv[i];
      if (c == 0) continue;
      const std::vector<Rat>& r = red[i - deg];
      for (unsigned j = 0; j < deg; ++j) {
        if (r[j] == 0) continue;
        u = c * r[j];
        out.c_[j] += u;
      }
    }
    return out;
  }

  FieldElement& operator*=(const FieldElement& o) {
    *this = *this * o;
    return *this;
  }

  FieldElement pow(unsigned long e) const {
    FieldElement base = *this, out(ctx_, Rat(1));
    while (e) {
      if (e & 1) out *= base;
      if (e >>= 1) base *= base;
    }
    return out;
  }

 private:
  void check(const FieldElement& o) const {
    if (!same_field(ctx_, o.ctx_))
      throw std::invalid_argument("FieldElement: mixed cyclotomic contexts");
  }

  ContextPtr ctx_;
  std::vector<Rat> c_;
};

inline FieldElement field_zero(const ContextPtr& ctx) { return FieldElement(ctx); }
inline FieldElement field_one(const ContextPtr& ctx) {
  return FieldElement(ctx, Rat(1));
}

// zeta_n^k as an element of the ambient field; requires n | M.
inline FieldElement embed_root(const ContextPtr& ctx, unsigned n, long k) {
  if (n == 0 || ctx->modulus % n != 0)
    throw std::invalid_argument("embed_root: order does not divide modulus");
  long kk = k % static_cast<long>(n);
  if (kk < 0) kk += n;
  unsigned j = static_cast<unsigned>(kk) * (ctx->modulus / n) % ctx->modulus;
  return FieldElement(ctx, ctx->root_power[j]);
}

// Multiplicative inverse via the extended Euclidean algorithm against Phi_M.
inline FieldElement invert(const FieldElement& a) {
  if (a.is_zero()) throw std::domain_error("invert: zero element");
  if (a.is_rational()) {
    Rat inv(a.rational_part().get_den(), a.rational_part().get_num());
    inv.canonicalize();
    return FieldElement(a.context(), inv);
  }
  const auto& ctx = a.context();
  using Poly = std::vector<Rat>;
  auto deg_of = [](const Poly& p) {
    for (size_t i = p.size(); i-- > 0;)
      if (p[i] != 0) return static_cast<long>(i);
    return -1L;
  };
  // invariant through the loop: u * a == r  (mod Phi_M)
  Poly r0(ctx->phi.size());
  for (size_t i = 0; i < ctx->phi.size(); ++i) r0[i] = Rat(ctx->phi[i]);
  Poly r1(a.coeffs());
  Poly u0 = {Rat(0)}, u1 = {Rat(1)};
  while (true) {
    long d1 = deg_of(r1);
    if (d1 < 0) throw std::domain_error("invert: zero element");
    if (d1 == 0) break;
    long d0 = deg_of(r0);
    // reduce r0 by r1
    while (d0 >= d1) {
      Rat c = r0[d0] / r1[d1];
      long shift = d0 - d1;
      for (long i = 0; i <= d1; ++i) r0[i + shift] -= c * r1[i];
      if (u0.size() < u1.size() + shift) u0.resize(u1.size() + shift, Rat(0));
      for (size_t i = 0; i < u1.size(); ++i) u0[i + shift] -= c * u1[i];
      d0 = deg_of(r0);
    }
    std::swap(r0, r1);
    std::swap(u0, u1);
  }
  // r1 is a nonzero constant: inverse = u1 / r1[0], reduced mod Phi_M
  FieldElement out(ctx);
  Rat inv_c(r1[0].get_den(), r1[0].get_num());
  inv_c.canonicalize();
  std::vector<Rat> red(ctx->degree, Rat(0));
  for (size_t i = 0; i < u1.size(); ++i) {
    if (u1[i] == 0) continue;
    const std::vector<Rat>& pw =
        i < ctx->degree ? ctx->root_power[i] : ctx->reduction[i - ctx->degree];
    for (unsigned j = 0; j < ctx->degree; ++j) red[j] += u1[i] * pw[j];
  }
  for (Rat& x : red) x *= inv_c;
  return FieldElement(ctx, std::move(red));
}

// Field norm N(a) = det of multiplication-by-a on the power basis;
// equals the resultant of Phi_M with the representing polynomial
// (Phi_M is monic), so norm of a rational r is r^phi(M).
inline Rat norm(const FieldElement& a) {
  const auto& ctx = a.context();
  const unsigned deg = ctx->degree;
  if (a.is_rational()) return rat_pow(a.rational_part(), deg);
  // columns: a * x^j
  std::vector<std::vector<Rat>> m(deg);
  FieldElement col = a;
  FieldElement x(ctx, ctx->root_power[1 % ctx->modulus]);
  for (unsigned j = 0; j < deg; ++j) {
    m[j] = col.coeffs();
    if (j + 1 < deg) col *= x;
  }
  // fraction-ful Gaussian elimination
  Rat det(1);
  for (unsigned i = 0; i < deg; ++i) {
    unsigned piv = i;
    while (piv < deg && m[piv][i] == 0) ++piv;
    if (piv == deg) return Rat(0);
    if (piv != i) {
      std::swap(m[piv], m[i]);
      det = -det;
    }
    det *= m[i][i];
    Rat pivinv(m[i][i].get_den(), m[i][i].get_num());
    pivinv.canonicalize();
    for (unsigned r = i + 1; r < deg; ++r) {
      if (m[r][i] == 0) continue;
      Rat f = m[r][i] * pivinv;
      for (unsigned cidx = i; cidx < deg; ++cidx) m[r][cidx] -= f * m[i][cidx];
    }
  }
  return det;
}

// Restricted p-adic valuation v(a) = v_p(N(a)) / phi(M), normalized so
// v(p) = 1. Defined only in the totally ramified case: M = 1 or M = p^t.
inline Rat padic_valuation(const FieldElement& a, unsigned long p) {
  const auto& ctx = a.context();
  unsigned M = ctx->modulus;
  while (M % p == 0) M /= static_cast<unsigned>(p);
  if (M != 1)
    throw std::invalid_argument("padic_valuation: modulus is not a p-power");
  if (a.is_zero()) throw std::domain_error("padic_valuation: zero element");
  Rat v(rat_valuation(norm(a), p), ctx->degree);
  v.canonicalize();
  return v;
}

// A distinguished root of unity: zeta_order^exponent inside the field.
struct RootOfUnity {
  ContextPtr ctx;
  unsigned order = 1;
  unsigned exponent = 0;  // reduced mod order

  RootOfUnity(ContextPtr c, unsigned n, long k) : ctx(std::move(c)), order(n) {
    if (n == 0 || ctx->modulus % n != 0)
      throw std::invalid_argument("RootOfUnity: order does not divide modulus");
    long kk = k % static_cast<long>(n);
    if (kk < 0) kk += n;
    exponent = static_cast<unsigned>(kk);
  }
  FieldElement value() const { return embed_root(ctx, order, exponent); }
  RootOfUnity power(long m) const {
    return RootOfUnity(ctx, order,
                       static_cast<long>((static_cast<long long>(exponent) * m) %
                                         static_cast<long long>(order)));
  }
};

}  // namespace etwist
