#include "doctest.h"

#include "equilog/error.hpp"
#include "equilog/intpoly.hpp"
#include "equilog/modpoly.hpp"

#include <random>

using namespace equilog;

namespace {

IntPoly random_poly(std::mt19937_64& rng, int max_deg, long bound) {
  std::uniform_int_distribution<int> dd(0, max_deg);
  std::uniform_int_distribution<long> cd(-bound, bound);
  int d = dd(rng);
  std::vector<mpz_class> c(d + 1);
  for (auto& v : c) v = cd(rng);
  if (c.back() == 0) c.back() = 1;
  return IntPoly(std::move(c));
}

}  // namespace

TEST_CASE("l1 norm") {
  CHECK(l1_norm(IntPoly()) == 0);
  CHECK(l1_norm(parse_poly("X^2 - X - 1")) == 3);
  CHECK(l1_norm(parse_poly("5X^2 - 6X + 5")) == 16);
}

TEST_CASE("zero polynomial has no degree") {
  IntPoly z(std::vector<mpz_class>{0, 0, 0});
  CHECK(z.is_zero());
  CHECK(!z.degree().has_value());
  CHECK_THROWS_AS(z.deg(), Error);
  CHECK(parse_poly("0").is_zero());
}

TEST_CASE("exact evaluation") {
  CHECK(eval_exact(parse_poly("X^2-X-1"), mpq_class(2)) == 1);
  CHECK(eval_exact(parse_poly("X-2"), mpq_class(2)) == 0);
  GaussianRational k(mpq_class(3, 5), mpq_class(4, 5));
  CHECK(eval_exact(parse_poly("5X^2-6X+5"), k).is_zero());
  GaussianRational k2 = pow(k, 2);
  CHECK(k2 == GaussianRational(mpq_class(-7, 25), mpq_class(24, 25)));
}

TEST_CASE("substitute_power") {
  CHECK(substitute_power(parse_poly("X+1"), 3) == parse_poly("X^3+1"));
  CHECK(substitute_power(parse_poly("X^2-X-1"), 2) == parse_poly("X^4-X^2-1"));
  IntPoly p = parse_poly("3X^5 - 2X + 7");
  CHECK(substitute_power(p, 1) == p);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    IntPoly q = random_poly(rng, 10, 50);
    IntPoly s = substitute_power(q, 4);
    CHECK(l1_norm(s) == l1_norm(q));
    CHECK(s.deg() == 4 * q.deg());
  }
}

TEST_CASE("eisenstein_degree") {
  auto c1 = eisenstein_degree(parse_poly("X^3 + 2X^2 + 2"), 2);
  REQUIRE(c1);
  CHECK(c1->e == 3);
  auto c2 = eisenstein_degree(parse_poly("X^3 + X^2 + 2X + 2"), 2);
  REQUIRE(c2);
  CHECK(c2->e == 2);
  CHECK(!eisenstein_degree(parse_poly("X^2 + 4"), 2));
  CHECK(!eisenstein_degree(parse_poly("X^2 + 3"), 2));
  CHECK(!eisenstein_degree(parse_poly("2X^2 + 2"), 2));

  // Certificate semantics checked by direct reduction.
  IntPoly r = parse_poly("X^3 + X^2 + 2X + 2");
  ModPoly red = reduce_mod(r, 2);
  CHECK(red == ModPoly(parse_poly("X^3 + X^2"), 2));
}

TEST_CASE("parse and format round trip") {
  for (const char* s : {"X^2 - X - 1", "5*X^2 - 6*X + 5", "-X^7 + 12", "X", "-3"}) {
    IntPoly p = parse_poly(s);
    CHECK(parse_poly(p.to_string()) == p);
    CHECK(parse_poly(p.to_dense_string()) == p);
  }
  CHECK(parse_poly("-1,-1,1") == parse_poly("X^2 - X - 1"));
  CHECK(parse_poly("5x^2-6x+5") == parse_poly("5,-6,5"));
  CHECK(parse_poly("X^2 - X - 1").to_string() == "X^2 - X - 1");
  CHECK_THROWS_AS(parse_poly("X^"), Error);
  CHECK_THROWS_AS(parse_poly("1,,2"), Error);
  CHECK_THROWS_AS(parse_poly("Y+1"), Error);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    IntPoly p = random_poly(rng, 15, 1000000);
    CHECK(parse_poly(p.to_string()) == p);
    CHECK(parse_poly(p.to_dense_string()) == p);
  }
}

TEST_CASE("norm submultiplicativity and exact division") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    IntPoly p = random_poly(rng, 12, 100);
    IntPoly q = random_poly(rng, 12, 100);
    IntPoly pq = p * q;
    CHECK(l1_norm(pq) <= l1_norm(p) * l1_norm(q));
    auto t = exact_divide(pq, q);
    REQUIRE(t);
    CHECK(*t * q == pq);
    auto bad = exact_divide(pq + IntPoly{1}, q);
    if (bad) CHECK(*bad * q == pq + IntPoly{1});
  }
}

TEST_CASE("content, primitive part and gcd") {
  IntPoly p = parse_poly("-6X^2 + 4X - 2");
  CHECK(content(p) == 2);
  CHECK(primitive_part(p) == parse_poly("3X^2 - 2X + 1"));
  IntPoly a = parse_poly("X^2 - 1") * parse_poly("X + 3");
  IntPoly b = parse_poly("X - 1") * parse_poly("2X + 5");
  CHECK(gcd(a, b) == parse_poly("X - 1"));
  CHECK(gcd(parse_poly("X^2+1"), parse_poly("X+1")).deg() == 0);
  auto sq = squarefree_decomposition(parse_poly("X+1") * parse_poly("X-2") * parse_poly("X-2") *
                                     parse_poly("X^2+1") * parse_poly("X^2+1") * parse_poly("X^2+1"));
  REQUIRE(sq.size() == 3);
  CHECK(sq[0] == parse_poly("X+1"));
  CHECK(sq[1] == parse_poly("X-2"));
  CHECK(sq[2] == parse_poly("X^2+1"));
}

TEST_CASE("shift, reversal and charpoly") {
  IntPoly p = parse_poly("X^3 - 2X + 7");
  CHECK(p.shifted(2).eval(mpz_class(0)) == p.eval(mpz_class(2)));
  CHECK(p.shifted(-3).eval(mpz_class(5)) == p.eval(mpz_class(2)));
  CHECK(p.reversed() == parse_poly("7X^3 - 2X^2 + 1"));

  QuotientRing ring(parse_poly("X^2 - 2"));
  // Multiplication by sqrt(2)^2 = 2 has characteristic polynomial (X-2)^2.
  RatPoly x2(std::vector<mpq_class>{0, 0, 1});
  CHECK(charpoly(ring.mult_matrix(x2)).to_primitive_int() == parse_poly("X^2 - 4X + 4"));
  // Norm of 1 + sqrt 2 is -1.
  CHECK(ring.norm(RatPoly(std::vector<mpq_class>{1, 1})) == -1);
  QuotientRing ring5(parse_poly("5X^2 - 6X + 5"));
  auto cp = charpoly(ring5.mult_matrix(x2)).to_primitive_int();
  CHECK(cp == parse_poly("25X^2 + 14X + 25"));
}
