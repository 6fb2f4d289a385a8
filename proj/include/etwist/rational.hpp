#pragma once

// Exact integer/rational scalar layer shared by the whole library.
// Thin helpers over GMP's mpz_class/mpq_class: parsing and printing of
// "num/den" strings, p-adic valuation of a rational, binomials and
// integer powers. Everything downstream assumes these never round.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace etwist {

using Int = mpz_class;
using Rat = mpq_class;

inline Int binomial(unsigned long n, unsigned long k) {
  Int r;
  if (k > n) return r;  // 0
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// n! / (k! l! m!) with k + l + m == n.
inline Int multinomial(unsigned long n, unsigned long k, unsigned long l,
                       unsigned long m) {
  if (k + l + m != n) throw std::invalid_argument("multinomial: k+l+m != n");
  return binomial(n, k) * binomial(n - k, l);
}

inline Int int_pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Int int_pow(unsigned long base, unsigned long e) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

inline Rat rat_pow(const Rat& base, unsigned long e) {
  Rat r;
  mpz_pow_ui(r.get_num().get_mpz_t(), base.get_num().get_mpz_t(), e);
  mpz_pow_ui(r.get_den().get_mpz_t(), base.get_den().get_mpz_t(), e);
  return r;  // base canonical => base^e canonical
}

// Exact power of p dividing n; n must be nonzero.
inline long int_valuation(const Int& n, unsigned long p) {
  if (n == 0) throw std::domain_error("int_valuation: zero");
  Int q, r = n;
  long v = 0;
  while (true) {
    Int rem;
    mpz_fdiv_qr_ui(q.get_mpz_t(), rem.get_mpz_t(), r.get_mpz_t(), p);
    if (rem != 0) return v;
    r = q;
    ++v;
  }
}

// v_p(num) - v_p(den); q must be nonzero.
inline long rat_valuation(const Rat& q, unsigned long p) {
  if (q == 0) throw std::domain_error("rat_valuation: zero");
  long v = 0;
  if (q.get_num() != 0) v += int_valuation(q.get_num(), p);
  v -= int_valuation(q.get_den(), p);
  return v;
}

// Canonical "num/den" form, denominator always explicit and positive.
inline std::string rat_to_string(const Rat& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Accepts "num", "num/den", optional leading '-'. Throws on anything else.
inline Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("rat_from_string: empty");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      Int whole(s);
      return Rat(whole);
    }
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rat_from_string: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("rat_from_string: bad rational '" + s + "'");
  }
}

inline unsigned long upow(unsigned long b, unsigned long e) {
  unsigned long r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace etwist
