#pragma once

// Finite approximants of the fermionic p-adic integral and the exact
// finite-level identities they satisfy.
//
//   I_N(f) = sum_{j=0}^{d p^N - 1} (-1)^j f(j)
//
// for integrands f(z) = chi(z) xi^z g(z + x) with a rational-coefficient
// polynomial g and a field shift x. Because d p^N is odd, reindexing the
// sum gives, exactly at every level N,
//
//   n odd:  I_N(f(.+n)) + I_N(f) = sum_{a<n} (-1)^a     [f(a) + f(dp^N + a)]
//   n even: I_N(f(.+n)) - I_N(f) = sum_{a<n} (-1)^{a-1} [f(a) + f(dp^N + a)]
//
// whose limits are the boundary formulas behind the Euler-number
// construction. convergence_diagnostic tracks v_p(I_N(chi xi^z z^n) - E_n),
// the witness that the approximants converge in the ramified valuation.

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cyclotomic.hpp"
#include "euler.hpp"
#include "rational.hpp"

namespace etwist {

struct Integrand {
  EulerContext ctx;
  std::vector<Rat> poly;  // g, coefficients of z^0, z^1, ...
  FieldElement shift;     // x: the integrand evaluates g(z + x)

  Integrand(EulerContext c, std::vector<Rat> g, FieldElement x)
      : ctx(std::move(c)), poly(std::move(g)), shift(std::move(x)) {
    if (!same_field(ctx.field(), shift.context()))
      throw std::invalid_argument("Integrand: shift from wrong field");
    if (poly.empty()) poly.push_back(Rat(0));
  }

  // g evaluated at j + x by Horner's rule
  FieldElement poly_at(unsigned long j) const {
    if (shift.is_rational()) {
      Rat z = Rat(j) + shift.rational_part();
      Rat acc(0);
      for (size_t i = poly.size(); i-- > 0;) acc = acc * z + poly[i];
      return FieldElement(ctx.field(), acc);
    }
    FieldElement z = shift + FieldElement(ctx.field(), Rat(j));
    FieldElement acc(ctx.field());
    for (size_t i = poly.size(); i-- > 0;)
      acc = acc * z + FieldElement(ctx.field(), poly[i]);
    return acc;
  }

  // f(j) = chi(j) xi^j g(j + x)
  FieldElement operator()(unsigned long j) const {
    auto c = ctx.term_coefficient(j);  // includes (-1)^j; strip it below
    if (c.zero) return field_zero(ctx.field());
    FieldElement v = poly_at(j);
    v *= FieldElement(ctx.field(), ctx.field()->root_power[c.exp]);
    return v;
  }
};

// sum_{j<d p^N} (-1)^j f(j + offset): the offset form is the full translate
// f(.+n), character and twist factors translated along with the argument.
inline FieldElement approximant_shifted(const Integrand& f, unsigned N,
                                        unsigned long offset) {
  unsigned long len = f.ctx.d();
  for (unsigned i = 0; i < N; ++i) len *= f.ctx.prime();
  FieldElement acc(f.ctx.field());
  for (unsigned long j = 0; j < len; ++j) {
    FieldElement v = f(j + offset);
    if (v.is_zero()) continue;
    if (j & 1)
      acc -= v;
    else
      acc += v;
  }
  return acc;
}

// I_N(f): alternating sum over one period of length d p^N.
inline FieldElement approximant(const Integrand& f, unsigned N) {
  return approximant_shifted(f, N, 0);
}

struct ShiftIdentity {
  bool pass;
  FieldElement lhs;  // I_N(f(.+n)) +/- I_N(f), sign by parity of n
  FieldElement rhs;  // boundary sum
};

// The exact finite-level shift identity at level N for shift n >= 1.
inline ShiftIdentity shift_identity_check(const Integrand& f, unsigned n,
                                          unsigned N) {
  if (n == 0) throw std::invalid_argument("shift_identity_check: n must be >= 1");
  unsigned long period = f.ctx.d();
  for (unsigned i = 0; i < N; ++i) period *= f.ctx.prime();
  FieldElement shifted_sum = approximant_shifted(f, N, n);
  FieldElement base_sum = approximant(f, N);
  const bool odd = (n % 2 == 1);
  FieldElement lhs = odd ? shifted_sum + base_sum : shifted_sum - base_sum;
  FieldElement rhs(f.ctx.field());
  for (unsigned long a = 0; a < n; ++a) {
    FieldElement term = f(a) + f(period + a);
    // odd n: (-1)^a; even n: (-1)^{a-1}
    bool negate = odd ? (a & 1) : !(a & 1);
    if (negate)
      rhs -= term;
    else
      rhs += term;
  }
  return {lhs == rhs, std::move(lhs), std::move(rhs)};
}

// v_p(I_N(chi(z) xi^z z^n) - E_n) for each requested N; nullopt marks an
// exactly zero difference (valuation +infinity). Requires the ambient
// modulus to be a p-power so the restricted valuation applies.
inline std::vector<std::optional<Rat>> convergence_diagnostic(
    const EulerContext& ctx, unsigned n, const std::vector<unsigned>& levels) {
  std::vector<Rat> g(n + 1, Rat(0));
  g[n] = 1;
  Integrand f(ctx, std::move(g), field_zero(ctx.field()));
  FieldElement target = (*euler_numbers(ctx, n))[n];
  std::vector<std::optional<Rat>> out;
  out.reserve(levels.size());
  for (unsigned N : levels) {
    FieldElement diff = approximant(f, N) - target;
    if (diff.is_zero())
      out.push_back(std::nullopt);
    else
      out.push_back(padic_valuation(diff, ctx.prime()));
  }
  return out;
}

}  // namespace etwist
