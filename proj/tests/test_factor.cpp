#include "doctest.h"

#include "equilog/factor.hpp"
#include "equilog/modpoly.hpp"

#include <random>

using namespace equilog;

TEST_CASE("modular arithmetic basics") {
  ModPoly f(parse_poly("X^2 + 1"), 13);
  auto parts = factor_squarefree_mod(f);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0] * parts[1] == f);
  CHECK(is_irreducible_mod(ModPoly(parse_poly("X^2 + 1"), 7)));
  CHECK(!is_squarefree_mod(ModPoly(parse_poly("X^2 - 2"), 2)));
  // Over F_2: X^4 + X + 1 irreducible, X^4 + 1 = (X+1)^4.
  CHECK(is_irreducible_mod(ModPoly(parse_poly("X^4 + X + 1"), 2)));
  auto f2 = factor_squarefree_mod(ModPoly(parse_poly("X^6 + X^5 + X^4 + X^3 + X^2 + X + 1") *
                                              parse_poly("X + 1"),
                                          2));
  ModPoly prod = ModPoly::constant(1, 2);
  for (auto& g : f2) prod = prod * g;
  CHECK(prod == ModPoly(parse_poly("X^7 + 1"), 2));
  CHECK(f2.size() == 3);
}

TEST_CASE("Hensel lifting") {
  IntPoly f = parse_poly("X^2 + 1");
  auto parts = factor_squarefree_mod(ModPoly(f, 13));
  mpz_class target = 1;
  mpz_pow_ui(target.get_mpz_t(), mpz_class(13).get_mpz_t(), 10);
  auto lifted = hensel_lift(f, parts, 13, target);
  CHECK(lifted[0] * lifted[1] == ModPoly(f, target));
  CHECK(lifted[0].with_modulus(13) == parts[0]);

  IntPoly g = parse_poly("3X^5 - 7X^3 + X^2 + 11X - 5");
  auto l = *squarefree_prime(g);
  auto gp = factor_squarefree_mod(ModPoly(g, l).monic());
  mpz_class t;
  mpz_pow_ui(t.get_mpz_t(), l.get_mpz_t(), 20);
  auto gl = hensel_lift(g, gp, l, t);
  ModPoly prod = ModPoly::constant(1, t);
  for (auto& h : gl) prod = prod * h;
  CHECK(prod == ModPoly(g, t).monic());
}

TEST_CASE("small factor extraction") {
  IntPoly r = parse_poly("X^2+2") * parse_poly("X+1");
  auto sf = find_small_factors(r, 1);
  REQUIRE(sf.factors.size() == 1);
  CHECK(sf.factors[0] == parse_poly("X+1"));
  CHECK(sf.cofactor == parse_poly("X^2+2"));

  IntPoly big = parse_poly("X^9 + 2X^5 + 2");
  auto sb = find_small_factors(big, 2);
  CHECK(sb.factors.empty());
  CHECK(sb.cofactor == big);
}

TEST_CASE("full factorization against known products") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> cd(-20, 20);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<IntPoly> known;
    IntPoly prod{1};
    int k = 1 + trial % 3;
    for (int j = 0; j < k; ++j) {
      std::vector<mpz_class> c(2 + (trial + j) % 5);
      for (auto& v : c) v = cd(rng);
      c.back() = 1 + (trial % 3);
      c.front() = c.front() == 0 ? 1 : c.front();
      IntPoly h = primitive_part(IntPoly(c));
      prod *= h;
    }
    auto fac = factor(prod);
    IntPoly back{1};
    for (auto& h : fac) {
      back *= h;
      CHECK(is_irreducible(h));
    }
    CHECK(primitive_part(back) == primitive_part(prod));
    CHECK(fac.size() >= static_cast<std::size_t>(1));
  }
  // Swinnerton-Dyer style polynomial that splits into linear/quadratic factors mod every prime.
  IntPoly sd = parse_poly("X^4 - 10X^2 + 1");
  CHECK(factor(sd).size() == 1);
  CHECK(is_irreducible(sd));
  CHECK(factor(parse_poly("X^4 - 1")).size() == 3);
  CHECK(!is_irreducible(parse_poly("X^4 + 4")));
}
