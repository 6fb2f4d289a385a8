// Dirichlet characters mod odd d: generator structure, deterministic
// enumeration, multiplicativity, orthogonality, and conductors.

#include <catch2/catch_amalgamated.hpp>

#include <etwist/characters.hpp>

#include <numeric>
#include <set>
#include <vector>

using namespace etwist;

namespace {

// test-local modular powering, independent of the library's helper
unsigned long tl_pow_mod(unsigned long b, unsigned long e, unsigned long m) {
  unsigned long r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

std::vector<unsigned> units_mod(unsigned d) {
  std::vector<unsigned> us;
  for (unsigned a = 1; a < d; ++a)
    if (std::gcd(a, d) == 1) us.push_back(a);
  if (d == 1) us.push_back(0);
  return us;
}

}  // namespace

TEST_CASE("unit group generators") {
  CHECK(unit_group_structure(1).empty());

  SECTION("prime power: one generator of full order") {
    auto gens = unit_group_structure(9);
    REQUIRE(gens.size() == 1);
    CHECK(gens[0].second == 6);
    // verify it really generates: powers 1..5 never hit 1
    unsigned g = gens[0].first;
    CHECK(std::gcd(g, 9u) == 1);
    for (unsigned k = 1; k < 6; ++k) CHECK(tl_pow_mod(g, k, 9) != 1);
    CHECK(tl_pow_mod(g, 6, 9) == 1);
  }

  SECTION("composite: one component per prime, ascending") {
    auto gens = unit_group_structure(15);
    REQUIRE(gens.size() == 2);
    CHECK(gens[0].second == 2);  // mod 3 factor first
    CHECK(gens[1].second == 4);  // then mod 5
    // each generator is 1 modulo the complementary factor
    CHECK(gens[0].first % 5 == 1);
    CHECK(gens[1].first % 3 == 1);
    CHECK(tl_pow_mod(gens[0].first, 2, 15) == 1);
    CHECK(tl_pow_mod(gens[1].first, 4, 15) == 1);
    CHECK(tl_pow_mod(gens[1].first, 2, 15) != 1);
  }

  CHECK_THROWS_AS(unit_group_structure(6), std::invalid_argument);
  CHECK_THROWS_AS(unit_group_structure(0), std::invalid_argument);
}

TEST_CASE("enumeration is complete and deterministic") {
  SECTION("small moduli orders") {
    auto c3 = enumerate_characters(3);
    REQUIRE(c3.size() == 2);
    CHECK(c3[0].is_principal());
    CHECK(c3[0].order == 1);
    CHECK(c3[1].order == 2);

    auto c5 = enumerate_characters(5);
    REQUIRE(c5.size() == 4);
    std::vector<unsigned> orders;
    for (const auto& chi : c5) orders.push_back(chi.order);
    CHECK(orders == std::vector<unsigned>{1, 4, 2, 4});
  }

  SECTION("d = 1: single trivial character") {
    auto c1 = enumerate_characters(1);
    REQUIRE(c1.size() == 1);
    CHECK(c1[0].is_principal());
    CHECK(c1[0].order == 1);
    CHECK(c1[0].conductor == 1);
    REQUIRE(c1[0].table.size() == 1);
    REQUIRE(c1[0].table[0].has_value());
    CHECK(*c1[0].table[0] == 0);
  }

  SECTION("count, index 0, and distinctness for all odd d <= 45") {
    for (unsigned d = 1; d <= 45; d += 2) {
      auto chars = enumerate_characters(d);
      INFO("d = " << d);
      CHECK(chars.size() == euler_phi(d));
      CHECK(chars[0].is_principal());
      std::set<std::vector<std::optional<unsigned>>> seen;
      for (const auto& chi : chars) {
        CHECK(chi.table.size() == std::max(d, 1u));
        CHECK(chi.modulus == d);
        // normalize to a common order so equal tables collide
        std::vector<std::optional<unsigned>> norm(chi.table.size());
        unsigned phi = euler_phi(d);
        for (size_t a = 0; a < chi.table.size(); ++a)
          if (chi.table[a]) norm[a] = *chi.table[a] * (phi / chi.order);
        CHECK(seen.insert(norm).second);
      }
    }
  }
}

TEST_CASE("quadratic character mod 3") {
  auto chars = enumerate_characters(3);
  const auto& chi = chars[1];
  CHECK(chi.order == 2);
  CHECK(chi.conductor == 3);
  CHECK(is_primitive(chi));
  REQUIRE(chi.table[1].has_value());
  REQUIRE(chi.table[2].has_value());
  CHECK(*chi.table[1] == 0);   // chi(1) = 1
  CHECK(*chi.table[2] == 1);   // chi(2) = -1
  CHECK_FALSE(chi.table[0].has_value());
}

TEST_CASE("multiplicativity on exponent tables, exhaustive") {
  for (unsigned d = 1; d <= 45; d += 2) {
    auto chars = enumerate_characters(d);
    auto us = units_mod(d);
    for (const auto& chi : chars) {
      INFO("d = " << d << " order = " << chi.order);
      for (unsigned a : us)
        for (unsigned b : us) {
          unsigned ab = d == 1 ? 0 : a * b % d;
          REQUIRE(chi.table[a].has_value());
          REQUIRE(chi.table[b].has_value());
          REQUIRE(chi.table[ab].has_value());
          CHECK((*chi.table[a] + *chi.table[b]) % chi.order ==
                *chi.table[ab]);
        }
      // exponents actually land in [0, order)
      for (unsigned a : us) CHECK(*chi.table[a] < chi.order);
    }
  }
}

TEST_CASE("multiplicativity of field values") {
  auto ctx = make_context(12);
  for (unsigned d : {5u, 9u, 15u}) {
    for (const auto& chi : enumerate_characters(d)) {
      if (12 % chi.order != 0) continue;
      for (long a = 0; a < static_cast<long>(2 * d); ++a)
        for (long b : {1L, 2L, 7L}) {
          auto lhs = character_value(chi, a * b, ctx);
          auto rhs = character_value(chi, a, ctx) * character_value(chi, b, ctx);
          CHECK(lhs == rhs);
        }
    }
  }
}

TEST_CASE("orthogonality: character sums vanish off the principal") {
  for (unsigned d = 1; d <= 45; d += 2) {
    for (const auto& chi : enumerate_characters(d)) {
      auto ctx = make_context(chi.order);
      auto sum = field_zero(ctx);
      for (long a = 0; a < static_cast<long>(d); ++a)
        sum += character_value(chi, a, ctx);
      INFO("d = " << d << " order = " << chi.order);
      if (chi.is_principal())
        CHECK(sum == FieldElement(ctx, Rat(euler_phi(d))));
      else
        CHECK(sum.is_zero());
    }
  }
}

TEST_CASE("conductors") {
  SECTION("examples") {
    auto c3 = enumerate_characters(3);
    CHECK(c3[0].conductor == 1);
    CHECK(c3[1].conductor == 3);

    // mod 9: orders run over divisors of 6; the order-2 character is the
    // quadratic character mod 3 seen through 9, so its conductor is 3
    auto c9 = enumerate_characters(9);
    REQUIRE(c9.size() == 6);
    for (const auto& chi : c9) {
      if (chi.order == 1) CHECK(chi.conductor == 1);
      else if (chi.order == 2) CHECK(chi.conductor == 3);
      else CHECK(chi.conductor == 9);
    }

    auto c15 = enumerate_characters(15);
    for (const auto& chi : c15) {
      INFO("order = " << chi.order << " conductor = " << chi.conductor);
      CHECK(15 % chi.conductor == 0);
      CHECK(is_primitive(chi) == (chi.conductor == 15));
    }
  }

  SECTION("induced character reproduces values on units, d <= 45") {
    for (unsigned d = 1; d <= 45; d += 2) {
      for (const auto& chi : enumerate_characters(d)) {
        REQUIRE(d % chi.conductor == 0);
        // locate the primitive character mod the conductor with equal values
        auto ctx = make_context(chi.order);
        auto cands = enumerate_characters(chi.conductor);
        bool found = false;
        for (const auto& psi : cands) {
          if (psi.order != chi.order || !is_primitive(psi)) continue;
          bool match = true;
          for (unsigned a : units_mod(d))
            if (character_value(psi, a, ctx) != character_value(chi, a, ctx)) {
              match = false;
              break;
            }
          if (match) {
            found = true;
            break;
          }
        }
        INFO("d = " << d << " order = " << chi.order
                    << " conductor = " << chi.conductor);
        CHECK(found);
      }
    }
  }
}

TEST_CASE("value embedding") {
  auto c3 = enumerate_characters(3);
  const auto& quad = c3[1];

  SECTION("values in a compatible field") {
    auto ctx = make_context(6);
    CHECK(character_value(quad, 5, ctx) == -field_one(ctx));  // 5 = 2 mod 3
    CHECK(character_value(quad, 1, ctx) == field_one(ctx));
    CHECK(character_value(quad, -1, ctx) == -field_one(ctx));  // -1 = 2 mod 3
    CHECK(character_value(quad, 6, ctx).is_zero());
    CHECK(character_value(quad, 0, ctx).is_zero());
  }

  SECTION("order must divide the field modulus") {
    auto ctx3 = make_context(3);
    CHECK_THROWS_AS(character_value(quad, 1, ctx3), std::invalid_argument);
  }

  SECTION("d = 1 is identically one, including at 0") {
    auto one = enumerate_characters(1)[0];
    auto ctx = make_context(1);
    CHECK(character_value(one, 0, ctx) == field_one(ctx));
    CHECK(character_value(one, 7, ctx) == field_one(ctx));
    CHECK(character_value(one, -3, ctx) == field_one(ctx));
  }

  SECTION("order-6 character mod 9 lands on a primitive root") {
    auto c9 = enumerate_characters(9);
    auto ctx = make_context(18);
    for (const auto& chi : c9) {
      if (chi.order != 6) continue;
      auto gens = unit_group_structure(9);
      auto v = character_value(chi, gens[0].first, ctx);
      // chi(g) has exact order 6
      auto p = v;
      for (unsigned k = 1; k < 6; ++k) {
        CHECK(p != field_one(ctx));
        p = p * v;
      }
      CHECK(p == field_one(ctx));
      break;
    }
  }
}
