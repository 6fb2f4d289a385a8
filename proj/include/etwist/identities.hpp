#pragma once

// The eight symmetry identities and their verification machinery.
//
// Each identity states that a list of expressions built from twisted Euler
// polynomials E_{k,chi,xi^{w_a w_b}} and alternating power sums T_k all take
// the same value for any weights (w1,w2,w3) (identities 1 and 7) or any odd
// weights (the rest). Every expression in a list is the image of a single
// template under a permutation (a,b,c) of the weight indices; the per-id
// permutation lists below follow the order the expressions are usually
// displayed in, so reports are stable.
//
// Term values are polynomials in the y inputs of total degree <= n, hence
// agreement on a grid of n+1 distinct rationals per y variable proves the
// identity as a polynomial statement: polynomial_identity_proof runs
// exactly that grid.
//
// lambda_series_check verifies the underlying quotient generating functions
// by an independent route: the closed product/quotient form is assembled
// with truncated-EGF arithmetic (series inversion included) and compared
// coefficientwise against the finite E/T expansions.

#include <array>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "euler.hpp"
#include "rational.hpp"
#include "series.hpp"

namespace etwist {

struct SymmetryInstance {
  EulerContext ctx;
  unsigned n = 0;
  std::array<unsigned, 3> w{1, 1, 1};
  std::vector<FieldElement> y;  // as many as the identity consumes
};

struct IdentityReport {
  int theorem = 0;
  SymmetryInstance instance;
  std::vector<FieldElement> terms;
  bool pass = false;
  std::optional<std::pair<int, int>> first_divergence;
};

inline unsigned theorem_y_count(int id) {
  switch (id) {
    case 1: return 3;
    case 2: case 3: return 2;
    case 4: case 5: case 6: case 7: return 1;
    case 8: return 0;
  }
  throw std::invalid_argument("theorem_y_count: id must be 1..8");
}

inline bool theorem_requires_odd_w(int id) {
  if (id < 1 || id > 8) throw std::invalid_argument("theorem_requires_odd_w: id must be 1..8");
  return id != 1 && id != 7;
}

using Perm = std::array<int, 3>;

namespace detail {

inline Rat make_rat(long long num, unsigned long den) {
  Rat r(Int(static_cast<long>(num)), Int(den));
  r.canonicalize();
  return r;
}

inline Int wpow(unsigned base, unsigned e) { return int_pow(static_cast<unsigned long>(base), e); }

// sum over k+l+m=n of multinomial * A_k * B_l * C_m * w_a^{l+m} w_b^{k+m} w_c^{k+l}
inline FieldElement multinomial_triple(
    const ContextPtr& F, unsigned n, const std::vector<FieldElement>& A,
    const std::vector<FieldElement>& B, const std::vector<FieldElement>& C,
    unsigned wa, unsigned wb, unsigned wc) {
  FieldElement acc(F);
  for (unsigned k = 0; k <= n; ++k)
    for (unsigned l = 0; k + l <= n; ++l) {
      unsigned m = n - k - l;
      Int coef = multinomial(n, k, l, m) * wpow(wa, l + m) * wpow(wb, k + m) *
                 wpow(wc, k + l);
      FieldElement t = A[k] * B[l];
      t *= C[m];
      acc.add_scaled(t, Rat(coef));
    }
  return acc;
}

// same contraction with exponents k, l, m on the weights
inline FieldElement multinomial_triple_direct(
    const ContextPtr& F, unsigned n, const std::vector<FieldElement>& A,
    const std::vector<FieldElement>& B, const std::vector<FieldElement>& C,
    unsigned wa, unsigned wb, unsigned wc) {
  FieldElement acc(F);
  for (unsigned k = 0; k <= n; ++k)
    for (unsigned l = 0; k + l <= n; ++l) {
      unsigned m = n - k - l;
      Int coef = multinomial(n, k, l, m) * wpow(wa, k) * wpow(wb, l) * wpow(wc, m);
      FieldElement t = A[k] * B[l];
      t *= C[m];
      acc.add_scaled(t, Rat(coef));
    }
  return acc;
}

inline std::vector<FieldElement> tsum_row(const EulerContext& twisted,
                                          unsigned n, unsigned long limit) {
  std::vector<FieldElement> out;
  out.reserve(n + 1);
  for (unsigned k = 0; k <= n; ++k)
    out.push_back(power_sum(twisted, k, static_cast<unsigned>(limit)));
  return out;
}

// moments P_m = sum_i u_i x_i^m, m = 0..n, for signed-root coefficients u_i.
// Rational arguments are accumulated per root-power bucket so the field
// arithmetic is deferred to one pass over at most `modulus` buckets.
inline std::vector<FieldElement> signed_moments(
    const ContextPtr& F, unsigned n,
    const std::vector<std::pair<EulerContext::SignedRoot, Rat>>& items) {
  const unsigned M = F->modulus;
  std::vector<FieldElement> P(n + 1, FieldElement(F));
  std::vector<std::vector<Rat>> bucket(M);
  for (const auto& [u, x] : items) {
    if (u.zero) continue;
    auto& row = bucket[u.exp];
    if (row.empty()) row.assign(n + 1, Rat(0));
    Rat pw(1);
    for (unsigned m = 0; m <= n; ++m) {
      if (u.negative)
        row[m] -= pw;
      else
        row[m] += pw;
      if (m < n) pw *= x;
    }
  }
  for (unsigned exp = 0; exp < M; ++exp) {
    if (bucket[exp].empty()) continue;
    FieldElement root(F, F->root_power[exp]);
    for (unsigned m = 0; m <= n; ++m)
      if (bucket[exp][m] != 0) P[m].add_scaled(root, bucket[exp][m]);
  }
  return P;
}

inline std::vector<FieldElement> signed_moments(
    const ContextPtr& F, unsigned n,
    const std::vector<std::pair<EulerContext::SignedRoot, FieldElement>>& items) {
  std::vector<FieldElement> P(n + 1, FieldElement(F));
  for (const auto& [u, x] : items) {
    if (u.zero) continue;
    FieldElement pw(F, F->root_power[u.exp]);
    if (u.negative) pw = -pw;
    for (unsigned m = 0; m <= n; ++m) {
      P[m] += pw;
      if (m < n) pw *= x;
    }
  }
  return P;
}

// E_{j,twist}(x) = sum_k C(j,k) E_k x^{j-k} turns argument moments into
// Euler-polynomial sums: S_j = sum_k C(j,k) E_k P_{j-k}.
inline std::vector<FieldElement> euler_contract(const EulerContext& twist,
                                                unsigned n,
                                                const std::vector<FieldElement>& P) {
  auto E = euler_numbers(twist, n);
  std::vector<FieldElement> S(n + 1, FieldElement(twist.field()));
  for (unsigned j = 0; j <= n; ++j)
    for (unsigned k = 0; k <= j; ++k)
      S[j].add_scaled((*E)[k] * P[j - k], Rat(binomial(j, k)));
  return S;
}

// inner alternating character sum of Euler-polynomial rows:
// S_j = sum_{alpha < lim} u_alpha E_{j, inner_twist}(base + step*alpha)
// with u_alpha = coef(alpha) a signed root of unity.
template <typename CoefFn>
inline std::vector<FieldElement> twisted_poly_sum(
    CoefFn&& coef, const EulerContext& inner_twist, unsigned n,
    const FieldElement& base, const Rat& step, unsigned long lim) {
  const auto& F = inner_twist.field();
  std::vector<FieldElement> P;
  if (base.is_rational()) {
    std::vector<std::pair<EulerContext::SignedRoot, Rat>> items;
    items.reserve(lim);
    const Rat b = base.rational_part();
    for (unsigned long a = 0; a < lim; ++a)
      items.emplace_back(coef(a), b + step * Rat(a));
    P = signed_moments(F, n, items);
  } else {
    std::vector<std::pair<EulerContext::SignedRoot, FieldElement>> items;
    items.reserve(lim);
    for (unsigned long a = 0; a < lim; ++a)
      items.emplace_back(coef(a), base + FieldElement(F, step * Rat(a)));
    P = signed_moments(F, n, items);
  }
  return euler_contract(inner_twist, n, P);
}

}  // namespace detail

// One displayed expression of identity `id` under weight permutation
// sigma = (a,b,c), 0-based into instance.w. theorem5_literal switches the
// fifth identity's inner sum to the letter-for-letter xi^{w_b w_c} factor
// (no alpha in the exponent) instead of the derivation's xi^{alpha w_b w_c}.
inline FieldElement theorem_term(int id, const SymmetryInstance& inst,
                                 const Perm& sigma,
                                 bool theorem5_literal = false) {
  const EulerContext& ctx = inst.ctx;
  const ContextPtr& F = ctx.field();
  const unsigned n = inst.n;
  const unsigned d = ctx.d();
  const unsigned wa = inst.w[sigma[0]], wb = inst.w[sigma[1]], wc = inst.w[sigma[2]];
  auto tw = [&](unsigned long m) { return ctx.twist_power(m); };
  auto scaled = [&](const FieldElement& yv, unsigned f) { return yv * Rat(f); };

  switch (id) {
    case 1: {
      auto A = euler_polynomial_prefix(tw(1UL * wb * wc), n, scaled(inst.y[0], wa));
      auto B = euler_polynomial_prefix(tw(1UL * wa * wc), n, scaled(inst.y[1], wb));
      auto C = euler_polynomial_prefix(tw(1UL * wa * wb), n, scaled(inst.y[2], wc));
      return detail::multinomial_triple(F, n, *A, *B, *C, wa, wb, wc);
    }
    case 2: {
      auto A = euler_polynomial_prefix(tw(1UL * wb * wc), n, scaled(inst.y[0], wa));
      auto B = euler_polynomial_prefix(tw(1UL * wa * wc), n, scaled(inst.y[1], wb));
      auto T = detail::tsum_row(tw(1UL * wa * wb), n, 1UL * wc * d - 1);
      return detail::multinomial_triple(F, n, *A, *B, T, wa, wb, wc);
    }
    case 3: {
      auto A = euler_polynomial_prefix(tw(1UL * wa * wb), n, scaled(inst.y[0], wc));
      const EulerContext coef = tw(1UL * wb * wc);
      auto S = detail::twisted_poly_sum(
          [&](unsigned long a) { return coef.term_coefficient(a); },
          tw(1UL * wa * wc), n, scaled(inst.y[1], wb),
          detail::make_rat(wb, wa), 1UL * wa * d);
      FieldElement acc(F);
      Int wan = detail::wpow(wa, n);
      for (unsigned k = 0; k <= n; ++k) {
        Int coef = binomial(n, k) * wan * detail::wpow(wc, n - k) * detail::wpow(wb, k);
        acc.add_scaled((*A)[k] * S[n - k], Rat(coef));
      }
      return acc;
    }
    case 4: {
      auto A = euler_polynomial_prefix(tw(1UL * wb * wc), n, scaled(inst.y[0], wa));
      auto Tb = detail::tsum_row(tw(1UL * wa * wc), n, 1UL * wb * d - 1);
      auto Tc = detail::tsum_row(tw(1UL * wa * wb), n, 1UL * wc * d - 1);
      return detail::multinomial_triple(F, n, *A, Tb, Tc, wa, wb, wc);
    }
    case 5: {
      const EulerContext inner = tw(1UL * wa * wc);
      const EulerContext coef = tw(1UL * wb * wc);
      const unsigned long lim = 1UL * wa * d;
      const FieldElement base = scaled(inst.y[0], wb);
      const Rat step = detail::make_rat(wb, wa);
      std::vector<FieldElement> S;
      if (!theorem5_literal) {
        S = detail::twisted_poly_sum(
            [&](unsigned long a) { return coef.term_coefficient(a); }, inner, n,
            base, step, lim);
      } else {
        // literal display: constant xi^{w_b w_c}, only chi and the sign vary
        const unsigned M = F->modulus;
        const unsigned e = ctx.character().order;
        const auto& table = ctx.character().table;
        const unsigned const_exp = ctx.root_exponent(1LL * wb * wc);
        S = detail::twisted_poly_sum(
            [&](unsigned long a) {
              EulerContext::SignedRoot u{true, false, 0};
              const auto& kchi = table[a % d];
              if (!kchi) return u;
              u.zero = false;
              u.negative = (a & 1) != 0;
              u.exp = static_cast<unsigned>((1ULL * *kchi * (M / e) + const_exp) % M);
              return u;
            },
            inner, n, base, step, lim);
      }
      auto T = detail::tsum_row(tw(1UL * wa * wb), n, 1UL * wc * d - 1);
      FieldElement acc(F);
      Int wan = detail::wpow(wa, n);
      for (unsigned k = 0; k <= n; ++k) {
        Int coef2 = binomial(n, k) * wan * detail::wpow(wb, n - k) * detail::wpow(wc, k);
        acc.add_scaled(S[k] * T[n - k], Rat(coef2));
      }
      return acc;
    }
    case 6: {
      const EulerContext etw = tw(1UL * wa * wb);
      const unsigned M = F->modulus;
      const unsigned e = ctx.character().order;
      const auto& table = ctx.character().table;
      const FieldElement base = scaled(inst.y[0], wc);
      const Rat step_a = detail::make_rat(wc, wa);
      const Rat step_b = detail::make_rat(wc, wb);
      auto coef = [&](unsigned long alpha, unsigned long beta) {
        EulerContext::SignedRoot u{true, false, 0};
        const auto& kchi = table[(alpha % d) * (beta % d) % d];
        if (!kchi) return u;
        u.zero = false;
        u.negative = ((alpha + beta) & 1) != 0;
        u.exp = static_cast<unsigned>(
            (1ULL * *kchi * (M / e) +
             ctx.root_exponent(static_cast<long long>(wc) *
                               (alpha * wb + beta * wa))) %
            M);
        return u;
      };
      std::vector<FieldElement> Q;
      if (base.is_rational()) {
        std::vector<std::pair<EulerContext::SignedRoot, Rat>> items;
        items.reserve(1UL * wa * d * wb * d);
        const Rat b = base.rational_part();
        for (unsigned long alpha = 0; alpha < 1UL * wa * d; ++alpha)
          for (unsigned long beta = 0; beta < 1UL * wb * d; ++beta)
            items.emplace_back(coef(alpha, beta),
                               b + step_a * Rat(alpha) + step_b * Rat(beta));
        Q = detail::signed_moments(F, n, items);
      } else {
        std::vector<std::pair<EulerContext::SignedRoot, FieldElement>> items;
        items.reserve(1UL * wa * d * wb * d);
        for (unsigned long alpha = 0; alpha < 1UL * wa * d; ++alpha)
          for (unsigned long beta = 0; beta < 1UL * wb * d; ++beta)
            items.emplace_back(
                coef(alpha, beta),
                base + FieldElement(F, step_a * Rat(alpha) + step_b * Rat(beta)));
        Q = detail::signed_moments(F, n, items);
      }
      auto E = euler_numbers(etw, n);
      FieldElement acc(F);
      for (unsigned k = 0; k <= n; ++k)
        acc.add_scaled((*E)[k] * Q[n - k], Rat(binomial(n, k)));
      acc *= Rat(detail::wpow(wa, n) * detail::wpow(wb, n));
      return acc;
    }
    case 7: {
      auto A = euler_polynomial_prefix(tw(wa), n, scaled(inst.y[0], wb));
      auto B = euler_polynomial_prefix(tw(wb), n, scaled(inst.y[0], wc));
      auto C = euler_polynomial_prefix(tw(wc), n, scaled(inst.y[0], wa));
      return detail::multinomial_triple_direct(F, n, *A, *B, *C, wa, wb, wc);
    }
    case 8: {
      auto Ta = detail::tsum_row(tw(wa), n, 1UL * wb * d - 1);
      auto Tb = detail::tsum_row(tw(wb), n, 1UL * wc * d - 1);
      auto Tc = detail::tsum_row(tw(wc), n, 1UL * wa * d - 1);
      return detail::multinomial_triple_direct(F, n, Ta, Tb, Tc, wa, wb, wc);
    }
  }
  throw std::invalid_argument("theorem_term: id must be 1..8");
}

// Display order of the weight permutations for each identity's term list.
inline const std::vector<Perm>& theorem_permutations(int id) {
  static const std::vector<Perm> lex = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                        {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  static const std::vector<Perm> id2 = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                        {1, 2, 0}, {2, 1, 0}, {2, 0, 1}};
  static const std::vector<Perm> cyclic = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  static const std::vector<Perm> cosets = {{2, 0, 1}, {1, 0, 2}};
  switch (id) {
    case 1: case 3: case 5: return lex;
    case 2: return id2;
    case 4: case 6: return cyclic;
    case 7: case 8: return cosets;
  }
  throw std::invalid_argument("theorem_permutations: id must be 1..8");
}

namespace detail {

inline void validate_instance(int id, const SymmetryInstance& inst) {
  for (unsigned wi : inst.w)
    if (wi == 0) throw std::invalid_argument("symmetry instance: weights must be positive");
  if (theorem_requires_odd_w(id))
    for (unsigned wi : inst.w)
      if (wi % 2 == 0)
        throw std::invalid_argument("symmetry instance: weights must be odd for this identity");
  if (inst.y.size() < theorem_y_count(id))
    throw std::invalid_argument("symmetry instance: not enough y values");
  for (const auto& yv : inst.y)
    if (!same_field(yv.context(), inst.ctx.field()))
      throw std::invalid_argument("symmetry instance: y from wrong field");
}

inline IdentityReport finalize_report(int id, const SymmetryInstance& inst,
                                      std::vector<FieldElement> terms) {
  IdentityReport rep{id, inst, std::move(terms), true, std::nullopt};
  for (size_t i = 0; i < rep.terms.size() && rep.pass; ++i)
    for (size_t j = i + 1; j < rep.terms.size(); ++j)
      if (rep.terms[i] != rep.terms[j]) {
        rep.pass = false;
        rep.first_divergence = std::make_pair(static_cast<int>(i), static_cast<int>(j));
        break;
      }
  return rep;
}

}  // namespace detail

// Evaluate every displayed expression of identity `id` on one instance.
inline IdentityReport theorem_terms(int id, const SymmetryInstance& inst) {
  detail::validate_instance(id, inst);
  std::vector<FieldElement> terms;
  for (const Perm& sigma : theorem_permutations(id))
    terms.push_back(theorem_term(id, inst, sigma));
  return detail::finalize_report(id, inst, std::move(terms));
}

// Identity 5 with the letter-for-letter constant twist factor; kept as a
// separate entry point so the derived form stays the default everywhere.
inline IdentityReport theorem5_literal_terms(const SymmetryInstance& inst) {
  detail::validate_instance(5, inst);
  std::vector<FieldElement> terms;
  for (const Perm& sigma : theorem_permutations(5))
    terms.push_back(theorem_term(5, inst, sigma, /*theorem5_literal=*/true));
  return detail::finalize_report(5, inst, std::move(terms));
}

// Identities 4 and 8 are stated with three (resp. two) expressions, but the
// derivation produces the full six-permutation orbit; the remaining
// permutations collapse onto the displayed ones by relabeling the bound
// summation indices. extra_dedup_terms evaluates those remaining
// permutations and checks each against its displayed counterpart.
// Report layout: terms = [displayed..., extras...]; first_divergence pairs
// (displayed index, combined index of the extra) on failure.
inline IdentityReport extra_dedup_terms(int id, const SymmetryInstance& inst) {
  if (id != 4 && id != 8)
    throw std::invalid_argument("extra_dedup_terms: only identities 4 and 8 have extras");
  detail::validate_instance(id, inst);
  const auto& base_perms = theorem_permutations(id);
  // extras listed with the displayed term they must equal
  static const std::vector<std::pair<Perm, int>> extra4 = {
      {{0, 2, 1}, 0}, {{1, 0, 2}, 1}, {{2, 1, 0}, 2}};
  static const std::vector<std::pair<Perm, int>> extra8 = {
      {{0, 1, 2}, 0}, {{1, 2, 0}, 0}, {{0, 2, 1}, 1}, {{2, 1, 0}, 1}};
  const auto& extras = (id == 4) ? extra4 : extra8;

  IdentityReport rep{id, inst, {}, true, std::nullopt};
  for (const Perm& sigma : base_perms)
    rep.terms.push_back(theorem_term(id, inst, sigma));
  rep.pass = true;
  for (const auto& [sigma, target] : extras) {
    rep.terms.push_back(theorem_term(id, inst, sigma));
    if (rep.pass && rep.terms.back() != rep.terms[target]) {
      rep.pass = false;
      rep.first_divergence =
          std::make_pair(target, static_cast<int>(rep.terms.size() - 1));
    }
  }
  return rep;
}

// deterministic y grid: 0, 1, 1/2, 2, 1/3, 3, 1/4, 4, ...
inline std::vector<Rat> default_grid(unsigned count) {
  std::vector<Rat> g;
  g.reserve(count);
  for (unsigned i = 0; i < count; ++i) {
    if (i == 0)
      g.emplace_back(0);
    else if (i % 2 == 1)
      g.emplace_back((i + 1) / 2);
    else
      g.push_back(detail::make_rat(1, i / 2 + 1));
  }
  return g;
}

struct ProofReport {
  int theorem = 0;
  bool pass = false;
  unsigned instances = 0;
  std::optional<IdentityReport> failure;
};

namespace detail {

template <typename Eval>
inline ProofReport grid_proof(int id, const EulerContext& ctx, unsigned n,
                              const std::array<unsigned, 3>& w, Eval&& eval) {
  ProofReport out;
  out.theorem = id;
  const unsigned yc = theorem_y_count(id);
  auto grid = default_grid(n + 1);
  std::vector<unsigned> idx(yc, 0);
  SymmetryInstance inst{ctx, n, w, {}};
  inst.y.assign(yc, field_zero(ctx.field()));
  while (true) {
    for (unsigned v = 0; v < yc; ++v)
      inst.y[v] = FieldElement(ctx.field(), grid[idx[v]]);
    IdentityReport rep = eval(inst);
    ++out.instances;
    if (!rep.pass) {
      out.pass = false;
      out.failure = std::move(rep);
      return out;
    }
    size_t v = yc;
    bool done = true;
    while (v-- > 0) {
      if (++idx[v] <= n) {
        done = false;
        break;
      }
      idx[v] = 0;
    }
    if (done) break;
  }
  out.pass = true;
  return out;
}

}  // namespace detail

// Since every term is a polynomial of total degree <= n in the y variables,
// agreement on an (n+1)-point grid per variable proves the identity.
inline ProofReport polynomial_identity_proof(int id, const EulerContext& ctx,
                                             unsigned n,
                                             const std::array<unsigned, 3>& w) {
  return detail::grid_proof(id, ctx, n, w, [id](const SymmetryInstance& inst) {
    return theorem_terms(id, inst);
  });
}

// Same grid argument applied to the deduplication comparisons.
inline ProofReport dedup_identity_proof(int id, const EulerContext& ctx,
                                        unsigned n,
                                        const std::array<unsigned, 3>& w) {
  return detail::grid_proof(id, ctx, n, w, [id](const SymmetryInstance& inst) {
    return extra_dedup_terms(id, inst);
  });
}

// ---------------------------------------------------------------------------
// quotient generating-function families

enum class LambdaFamily { L23, L13, L12 };

inline const char* lambda_family_name(LambdaFamily f) {
  switch (f) {
    case LambdaFamily::L23: return "L23";
    case LambdaFamily::L13: return "L13";
    case LambdaFamily::L12: return "L12";
  }
  return "?";
}

struct LambdaReport {
  LambdaFamily family = LambdaFamily::L23;
  int i = 0;
  unsigned order = 0;
  bool pass = false;
  // (expansion label, first divergent order) per failing expansion
  std::vector<std::pair<std::string, unsigned>> failures;
};

namespace detail {

// xi^{du} e^{dut} + 1
inline Egf lambda_f_factor(const EulerContext& ctx, unsigned long u, unsigned order) {
  const auto& F = ctx.field();
  unsigned long du = u * ctx.d();
  Egf f = egf_scale(egf_exp(FieldElement(F, Rat(du)), order),
                    ctx.xi_power(static_cast<long long>(du)));
  return egf_add(f, egf_const(F, Rat(1), order));
}

// sum_{a<d} (-1)^a chi(a) xi^{ua} e^{uat}: coefficient n is u^n T_n(d-1)
// in the u-twisted context
inline Egf lambda_g_factor(const EulerContext& ctx, unsigned long u, unsigned order) {
  const auto& F = ctx.field();
  EulerContext twisted = ctx.twist_power(u);
  Egf g(F, order);
  Rat un(1);
  for (unsigned n = 0; n <= order; ++n) {
    g[n] = power_sum(twisted, n, ctx.d() - 1) * un;
    un *= Rat(u);
  }
  return g;
}

inline Egf lambda_prefactor(const EulerContext& ctx, unsigned twopow,
                            const FieldElement& rate, unsigned order) {
  Egf f = egf_exp(rate, order);
  return egf_scale(f, FieldElement(ctx.field(), Rat(int_pow(2UL, twopow))));
}

}  // namespace detail

// Closed form of the family-(family, i) generating function, built purely
// with series arithmetic (exp, product, reciprocal).
inline Egf lambda_closed_egf(LambdaFamily fam, int i, const SymmetryInstance& inst,
                             unsigned order) {
  const EulerContext& ctx = inst.ctx;
  const ContextPtr& F = ctx.field();
  const auto [w1, w2, w3] = std::array<unsigned long, 3>{inst.w[0], inst.w[1], inst.w[2]};
  const unsigned long W = w1 * w2 * w3;
  auto yv = [&](unsigned k) { return inst.y.at(k); };

  if (fam == LambdaFamily::L23 || fam == LambdaFamily::L13) {
    if (i < 0 || i > 3) throw std::invalid_argument("lambda_closed_egf: i must be 0..3");
    std::array<unsigned long, 3> us =
        fam == LambdaFamily::L23 ? std::array<unsigned long, 3>{w2 * w3, w1 * w3, w1 * w2}
                                 : std::array<unsigned long, 3>{w1, w2, w3};
    FieldElement rate(F);
    for (int j = 0; j < 3 - i; ++j) rate += yv(j);
    rate *= Rat(W);
    Egf out = detail::lambda_prefactor(ctx, 3 - i, rate, order);
    for (int j = 0; j < i; ++j)
      out = egf_mul(out, detail::lambda_f_factor(ctx, W, order));
    for (unsigned long u : us) {
      out = egf_mul(out, egf_invert(detail::lambda_f_factor(ctx, u, order)));
      out = egf_mul(out, detail::lambda_g_factor(ctx, u, order));
    }
    return out;
  }
  // L12
  if (i == 0) {
    FieldElement rate = yv(0) * Rat(Int(w1 * w2 + w1 * w3 + w2 * w3));
    Egf out = detail::lambda_prefactor(ctx, 3, rate, order);
    for (unsigned long u : {w1, w2, w3}) {
      out = egf_mul(out, egf_invert(detail::lambda_f_factor(ctx, u, order)));
      out = egf_mul(out, detail::lambda_g_factor(ctx, u, order));
    }
    return out;
  }
  if (i == 1) {
    Egf out = egf_const(F, Rat(1), order);
    for (unsigned long u : {w1 * w2, w2 * w3, w3 * w1})
      out = egf_mul(out, detail::lambda_f_factor(ctx, u, order));
    for (unsigned long u : {w1, w2, w3}) {
      out = egf_mul(out, egf_invert(detail::lambda_f_factor(ctx, u, order)));
      out = egf_mul(out, detail::lambda_g_factor(ctx, u, order));
    }
    return out;
  }
  throw std::invalid_argument("lambda_closed_egf: L12 has i in {0, 1}");
}

namespace detail {

// the L13 expansions arise from the L23 ones by the substitution
// w -> (w2w3, w1w3, w1w2) followed by dividing degree n by (w1w2w3)^n and
// reading xi^{w1w2w3} as xi; concretely:
//   i=0: sum multinom E_{k,xi^{w1}}(w2w3 y1) E_{l,xi^{w2}}(w1w3 y2) E_{m,xi^{w3}}(w1w2 y3) w1^k w2^l w3^m
//   i=1: ... last factor T_m(w1w2 d - 1; xi^{w3})
//   i=2: ... T_l(w1w3 d - 1; xi^{w2}) T_m(w1w2 d - 1; xi^{w3})
//   i=3: T_k(w2w3 d - 1; xi^{w1}) T_l(w1w3 d - 1; xi^{w2}) T_m(w1w2 d - 1; xi^{w3})
inline FieldElement l13_expansion_coeff(int i, const SymmetryInstance& inst,
                                        unsigned n) {
  const EulerContext& ctx = inst.ctx;
  const ContextPtr& F = ctx.field();
  const unsigned long w1 = inst.w[0], w2 = inst.w[1], w3 = inst.w[2];
  const unsigned d = ctx.d();
  std::vector<FieldElement> A, B, C;
  if (i <= 2) {
    auto pa = euler_polynomial_prefix(ctx.twist_power(w1), n,
                                      inst.y[0] * Rat(Int(w2 * w3)));
    A = *pa;
  } else {
    A = tsum_row(ctx.twist_power(w1), n, w2 * w3 * d - 1);
  }
  if (i <= 1) {
    auto pb = euler_polynomial_prefix(ctx.twist_power(w2), n,
                                      inst.y.size() > 1 ? inst.y[1] * Rat(Int(w1 * w3))
                                                        : field_zero(F));
    B = *pb;
  } else {
    B = tsum_row(ctx.twist_power(w2), n, w1 * w3 * d - 1);
  }
  if (i == 0) {
    auto pc = euler_polynomial_prefix(ctx.twist_power(w3), n,
                                      inst.y.size() > 2 ? inst.y[2] * Rat(Int(w1 * w2))
                                                        : field_zero(F));
    C = *pc;
  } else {
    C = tsum_row(ctx.twist_power(w3), n, w1 * w2 * d - 1);
  }
  return multinomial_triple_direct(F, n, A, B, C, static_cast<unsigned>(w1),
                                   static_cast<unsigned>(w2),
                                   static_cast<unsigned>(w3));
}

// L23 i=3 expansion: sum multinom T-triple with pair twists
inline FieldElement l23_tt_coeff(const SymmetryInstance& inst, unsigned n) {
  const EulerContext& ctx = inst.ctx;
  const unsigned d = ctx.d();
  const unsigned long w1 = inst.w[0], w2 = inst.w[1], w3 = inst.w[2];
  auto Ta = tsum_row(ctx.twist_power(w2 * w3), n, w1 * d - 1);
  auto Tb = tsum_row(ctx.twist_power(w1 * w3), n, w2 * d - 1);
  auto Tc = tsum_row(ctx.twist_power(w1 * w2), n, w3 * d - 1);
  return multinomial_triple(ctx.field(), n, Ta, Tb, Tc,
                            static_cast<unsigned>(w1), static_cast<unsigned>(w2),
                            static_cast<unsigned>(w3));
}

}  // namespace detail

// Coefficientwise comparison of the closed generating function against the
// E/T expansion(s) through the requested order. For L23 i=1 and i=2 the
// alternative single- and double-sum expansions are checked as well.
inline LambdaReport lambda_series_check(LambdaFamily fam, int i,
                                        const SymmetryInstance& inst,
                                        unsigned order) {
  // parity hypotheses: any positive weights for (L23, 0) and (L12, 0),
  // odd weights otherwise
  const bool any_w = (fam == LambdaFamily::L23 && i == 0) ||
                     (fam == LambdaFamily::L12 && i == 0);
  for (unsigned wi : inst.w) {
    if (wi == 0) throw std::invalid_argument("lambda_series_check: weights must be positive");
    if (!any_w && wi % 2 == 0)
      throw std::invalid_argument("lambda_series_check: weights must be odd for this family");
  }
  unsigned need_y = 0;
  if (fam == LambdaFamily::L23 || fam == LambdaFamily::L13)
    need_y = static_cast<unsigned>(3 - i);
  else
    need_y = (i == 0) ? 1 : 0;
  if (inst.y.size() < need_y)
    throw std::invalid_argument("lambda_series_check: not enough y values");

  Egf closed = lambda_closed_egf(fam, i, inst, order);

  struct Expansion {
    std::string label;
    std::function<FieldElement(const SymmetryInstance&, unsigned)> coeff;
  };
  std::vector<Expansion> expansions;
  SymmetryInstance work = inst;

  auto term_of = [](int id, Perm sigma) {
    return [id, sigma](const SymmetryInstance& is, unsigned n) {
      SymmetryInstance copy = is;
      copy.n = n;
      return theorem_term(id, copy, sigma);
    };
  };

  if (fam == LambdaFamily::L23) {
    switch (i) {
      case 0: expansions.push_back({"triple-E", term_of(1, {0, 1, 2})}); break;
      case 1:
        expansions.push_back({"EE-T", term_of(2, {0, 1, 2})});
        expansions.push_back({"single-sum", term_of(3, {2, 1, 0})});
        break;
      case 2:
        expansions.push_back({"E-TT", term_of(4, {0, 1, 2})});
        expansions.push_back({"single-sum", term_of(5, {1, 0, 2})});
        expansions.push_back({"double-sum", term_of(6, {1, 2, 0})});
        break;
      case 3:
        expansions.push_back(
            {"triple-T", [](const SymmetryInstance& is, unsigned n) {
               return detail::l23_tt_coeff(is, n);
             }});
        break;
      default:
        throw std::invalid_argument("lambda_series_check: i must be 0..3");
    }
  } else if (fam == LambdaFamily::L13) {
    if (i < 0 || i > 3) throw std::invalid_argument("lambda_series_check: i must be 0..3");
    expansions.push_back(
        {"substituted", [i](const SymmetryInstance& is, unsigned n) {
           return detail::l13_expansion_coeff(i, is, n);
         }});
  } else {
    if (i == 0)
      expansions.push_back({"triple-E", term_of(7, {0, 1, 2})});
    else if (i == 1)
      expansions.push_back({"triple-T", term_of(8, {0, 1, 2})});
    else
      throw std::invalid_argument("lambda_series_check: L12 has i in {0, 1}");
  }

  LambdaReport rep;
  rep.family = fam;
  rep.i = i;
  rep.order = order;
  rep.pass = true;
  for (const auto& ex : expansions) {
    for (unsigned n = 0; n <= order; ++n) {
      if (ex.coeff(work, n) != closed[n]) {
        rep.pass = false;
        rep.failures.emplace_back(ex.label, n);
        break;
      }
    }
  }
  return rep;
}

}  // namespace etwist
