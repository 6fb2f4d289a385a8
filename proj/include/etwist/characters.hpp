#pragma once

// Dirichlet characters modulo an odd integer d, stored as value tables of
// exponents into zeta_e where e is the character's order. The unit group
// (Z/d)* is decomposed through CRT into cyclic components, one primitive
// root per odd prime power; characters are enumerated deterministically,
// lexicographic in the generator-exponent tuples, so an index fully
// identifies a character.

#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cyclotomic.hpp"
#include "rational.hpp"

namespace etwist {

struct DirichletCharacter {
  unsigned modulus = 1;    // odd d >= 1
  unsigned order = 1;      // e = multiplicative order of the character
  unsigned conductor = 1;  // smallest f | d the character factors through
  // table[a] = k with chi(a) = zeta_order^k for gcd(a, d) = 1, else nullopt.
  // For d = 1 the single entry table[0] = 0: chi is identically 1.
  std::vector<std::optional<unsigned>> table;

  bool is_principal() const {
    for (const auto& v : table)
      if (v && *v != 0) return false;
    return true;
  }
};

inline bool is_primitive(const DirichletCharacter& chi) {
  return chi.conductor == chi.modulus;
}

namespace detail {

inline unsigned mul_mod(unsigned a, unsigned b, unsigned m) {
  return static_cast<unsigned>(
      (static_cast<unsigned long long>(a) * b) % m);
}

inline unsigned pow_mod(unsigned b, unsigned long e, unsigned m) {
  if (m == 1) return 0;
  unsigned long long r = 1, base = b % m;
  while (e) {
    if (e & 1) r = (r * base) % m;
    base = (base * base) % m;
    e >>= 1;
  }
  return static_cast<unsigned>(r);
}

inline std::vector<unsigned> prime_factors(unsigned n) {
  std::vector<unsigned> ps;
  for (unsigned p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) ps.push_back(n);
  return ps;
}

// Smallest primitive root mod q, q an odd prime power.
inline unsigned primitive_root(unsigned q) {
  unsigned phi = euler_phi(q);
  auto ps = prime_factors(phi);
  for (unsigned g = 2; g < q; ++g) {
    if (std::gcd(g, q) != 1) continue;
    bool ok = true;
    for (unsigned p : ps)
      if (pow_mod(g, phi / p, q) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw std::logic_error("primitive_root: none found");
}

}  // namespace detail

// CRT generators of (Z/d)* for odd d: one per prime-power factor of d,
// factors in ascending prime order. Each pair is (generator mod d, order).
// d = 1 yields the empty list (trivial group).
inline std::vector<std::pair<unsigned, unsigned>> unit_group_structure(
    unsigned d) {
  if (d == 0 || d % 2 == 0)
    throw std::invalid_argument("unit_group_structure: modulus must be odd");
  std::vector<std::pair<unsigned, unsigned>> gens;
  unsigned rest = d;
  for (unsigned p = 3; rest > 1; p += 2) {
    if (rest % p != 0) continue;
    unsigned q = 1;
    while (rest % p == 0) {
      rest /= p;
      q *= p;
    }
    unsigned g = detail::primitive_root(q);
    // lift: congruent to g mod q, to 1 mod d/q
    unsigned m = d / q;
    unsigned lifted = g;
    if (m > 1) {
      // CRT by scan; moduli here are tiny
      for (unsigned x = 1; x < d; ++x)
        if (x % q == g && x % m == 1) {
          lifted = x;
          break;
        }
    }
    gens.emplace_back(lifted, euler_phi(q));
  }
  return gens;
}

// All phi(d) characters mod odd d, deterministic order: the exponent tuple
// (t_1, ..., t_r) against unit_group_structure(d) counts lexicographically,
// first generator most significant. Index 0 is the principal character.
inline std::vector<DirichletCharacter> enumerate_characters(unsigned d) {
  if (d == 0 || d % 2 == 0)
    throw std::invalid_argument("enumerate_characters: modulus must be odd");
  auto gens = unit_group_structure(d);
  const size_t r = gens.size();
  const unsigned phi = euler_phi(d);

  // discrete logs: walk every exponent tuple once, tracking the product
  std::vector<std::vector<unsigned>> dlog(d);
  {
    std::vector<unsigned> x(r, 0);
    unsigned a = 1 % d;
    size_t filled = 0;
    while (true) {
      if (dlog[a].empty() && std::gcd(a == 0 ? d : a, d) == 1) {
        dlog[a] = x;
        ++filled;
      }
      // increment mixed-radix counter, least significant digit last
      size_t i = r;
      bool done = true;
      while (i-- > 0) {
        x[i]++;
        a = detail::mul_mod(a, gens[i].first, d);
        if (x[i] < gens[i].second) {
          done = false;
          break;
        }
        // digit wrapped: a is back to its value before this digit ran
        x[i] = 0;
      }
      if (done) break;
    }
    if (d == 1) dlog[0] = {};
    if (filled != phi && d != 1)
      throw std::logic_error("enumerate_characters: generators do not span");
  }

  std::vector<unsigned> divisors;
  for (unsigned f = 1; f <= d; ++f)
    if (d % f == 0) divisors.push_back(f);

  std::vector<DirichletCharacter> out;
  out.reserve(phi);
  std::vector<unsigned> t(r, 0);
  while (true) {
    DirichletCharacter chi;
    chi.modulus = d;
    // order: lcm of the orders of chi(g_i) = zeta_{n_i}^{t_i}
    unsigned e = 1;
    std::vector<unsigned> comp_order(r), comp_step(r);
    for (size_t i = 0; i < r; ++i) {
      unsigned n = gens[i].second;
      unsigned g = std::gcd(t[i], n);
      comp_order[i] = n / (g == 0 ? n : g);
      e = std::lcm(e, comp_order[i]);
    }
    chi.order = e;
    for (size_t i = 0; i < r; ++i) {
      unsigned n = gens[i].second;
      unsigned g = std::gcd(t[i], n);
      unsigned tp = (g == 0 || t[i] == 0) ? 0 : t[i] / g;
      comp_step[i] = comp_order[i] == 0 ? 0 : (e / comp_order[i]) * tp % e;
    }
    chi.table.assign(d, std::nullopt);
    for (unsigned a = 0; a < d; ++a) {
      if (d != 1 && (a == 0 || std::gcd(a, d) != 1)) continue;
      unsigned long long k = 0;
      for (size_t i = 0; i < r; ++i)
        k += static_cast<unsigned long long>(comp_step[i]) * dlog[a][i];
      chi.table[a] = static_cast<unsigned>(k % e);
    }
    // conductor: smallest f | d with chi trivial on units congruent 1 mod f
    for (unsigned f : divisors) {
      bool ok = true;
      for (unsigned a = 1; a < d && ok; ++a)
        if (chi.table[a] && a % f == 1 % f && *chi.table[a] != 0) ok = false;
      if (d == 1) ok = true;
      if (ok) {
        chi.conductor = f;
        break;
      }
    }
    out.push_back(std::move(chi));

    size_t i = r;
    bool done = true;
    while (i-- > 0) {
      if (++t[i] < gens[i].second) {
        done = false;
        break;
      }
      t[i] = 0;
    }
    if (done) break;
  }
  return out;
}

// chi(a) as a field element: zeta_e^{k(a mod d)}, zero on non-units.
// Requires the character's order to divide the field's modulus.
inline FieldElement character_value(const DirichletCharacter& chi, long a,
                                    const ContextPtr& ctx) {
  if (ctx->modulus % chi.order != 0)
    throw std::invalid_argument("character_value: order does not divide field modulus");
  long am = a % static_cast<long>(chi.modulus);
  if (am < 0) am += chi.modulus;
  const auto& entry = chi.table[static_cast<size_t>(am)];
  if (!entry) return field_zero(ctx);
  return embed_root(ctx, chi.order, static_cast<long>(*entry));
}

}  // namespace etwist
