#include "doctest.h"

#include "equilog/error.hpp"
#include "equilog/padics.hpp"

#include <random>

using namespace equilog;

namespace {

mpz_class pow_mpz(long p, unsigned long e) {
  mpz_class m;
  mpz_ui_pow_ui(m.get_mpz_t(), static_cast<unsigned long>(p), e);
  return m;
}

mpz_class mod(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

IntPoly random_poly(std::mt19937_64& rng, std::size_t deg, long bound) {
  std::uniform_int_distribution<long> dist(-bound, bound);
  std::vector<mpz_class> c(deg + 1);
  for (auto& a : c) a = dist(rng);
  if (c.back() == 0) c.back() = 1;
  return IntPoly(c);
}

}  // namespace

TEST_CASE("Newton polygons") {
  using S = NewtonSegment;
  CHECK(newton_polygon(parse_poly("5*X^2 - 6*X + 5"), 13) == std::vector<S>{{0, 2}});
  CHECK(newton_polygon(parse_poly("5*X^2 - 6*X + 5"), 5) ==
        std::vector<S>{{-1, 1}, {1, 1}});
  // Root 5 has valuation 1, i.e. the hull slope is -1.
  CHECK(newton_polygon(parse_poly("X - 5"), 5) == std::vector<S>{{-1, 1}});
  // X^2 (X - 4)(X - 1/2) = X^2 (2X^2 - 9X + 4): zero roots are ignored.
  CHECK(newton_polygon(parse_poly("2*X^4 - 9*X^3 + 4*X^2"), 2) ==
        std::vector<S>{{-2, 1}, {1, 1}});
  // Collinear points merge into a single segment.
  CHECK(newton_polygon(parse_poly("X^2 + 3*X + 9"), 3) == std::vector<S>{{-1, 2}});
  CHECK(newton_polygon(parse_poly("X^3 - 2"), 2) == std::vector<S>{{mpq_class(-1, 3), 3}});
}

TEST_CASE("local factors") {
  IntPoly f = parse_poly("X^2 + 1");
  auto split = local_factors(f, 13, 4);
  REQUIRE(split.size() == 2);
  const mpz_class m = pow_mpz(13, 4);
  for (const auto& lf : split) {
    CHECK(lf.residue_degree == 1);
    CHECK(lf.context.modulus() == m);
    mpz_class r = m - lf.g[0];
    CHECK(mod(r * r + 1, m) == 0);
    CHECK(lf.root_valuation == 0);
  }
  CHECK(split[0].g * split[1].g == ModPoly(f, m));

  auto inert = local_factors(f, 7);
  REQUIRE(inert.size() == 1);
  CHECK(inert[0].residue_degree == 2);

  CHECK_THROWS_AS(local_factors(parse_poly("X^2 - 2"), 2), Error);
  try {
    local_factors(parse_poly("X^2 - 2"), 2);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ramified_or_unseparable);
  }
}

TEST_CASE("absolute values of algebraic numbers") {
  CHECK(PadicPoint(parse_poly("X - 5"), 5).root_valuation() == 1);
  IntPoly kappa = parse_poly("5*X^2 - 6*X + 5");
  PadicPoint k0(kappa, 13, 0), k1(kappa, 13, 1);
  CHECK(k0.embedding_count() == 2);
  CHECK(k0.route() == PadicRoute::local_factor);
  CHECK(k0.root_valuation() == 0);
  CHECK(k1.root_valuation() == 0);
  CHECK(PadicPoint(parse_poly("2*X - 1"), 2).root_valuation() == -1);
  CHECK_THROWS_AS(PadicPoint(kappa, 13, 2), Error);

  // Ramified at 2: a single place, valuation 1/2.
  PadicPoint sqrt2(parse_poly("X^2 - 2"), 2);
  CHECK(sqrt2.route() == PadicRoute::norm);
  CHECK(sqrt2.root_valuation() == mpq_class(1, 2));
  // At 5, 5X^2 - 6X + 5 has roots of valuation -1 and 1: two places, and
  // the polynomial is not separable modulo 5, so no embedding is offered.
  CHECK_THROWS_AS(PadicPoint(kappa, 5), Error);
}

TEST_CASE("total mass against the Newton polygon") {
  std::mt19937_64 rng(7);
  int tested = 0;
  for (int trial = 0; trial < 300 && tested < 60; ++trial) {
    IntPoly f = random_poly(rng, 2 + trial % 5, 60);
    if (f[0] == 0) continue;
    for (long p : {2L, 3L, 5L, 7L, 11L}) {
      if (mpz_divisible_p(f.leading().get_mpz_t(), mpz_class(p).get_mpz_t())) continue;
      if (!is_squarefree_mod(ModPoly(f, p))) continue;
      mpq_class mass = 0;
      for (const auto& lf : local_factors(f, p)) mass += lf.residue_degree * lf.root_valuation;
      mpq_class np_mass = 0;
      for (const auto& s : newton_polygon(f, p)) np_mass -= s.slope * s.length;
      CHECK(mass == np_mass);
      CHECK(mass == valuation(mpq_class(f[0], f.leading()), p));
      ++tested;
    }
  }
  CHECK(tested >= 60);
}

TEST_CASE("Z_p coordinates") {
  PadicPoint i7(parse_poly("X^2 + 1"), 7);
  const unsigned N = 20;
  const mpz_class m = pow_mpz(7, N);
  CHECK(i7.zp_coordinates(3, N) == std::vector<mpz_class>{0, m - 1});
  CHECK(i7.zp_coordinates(0, N) == std::vector<mpz_class>{1, 0});
  CHECK(i7.zp_coordinates(4, N) == std::vector<mpz_class>{1, 0});

  // Linear local factors at 13: x^n by repeated multiplication of the root.
  IntPoly kappa = parse_poly("5*X^2 - 6*X + 5");
  const mpz_class m13 = pow_mpz(13, N);
  for (std::size_t idx = 0; idx < 2; ++idx) {
    PadicPoint k(kappa, 13, idx, N);
    mpz_class root = mod(-k.factor()->g[0], m13);
    CHECK(mod(5 * root * root - 6 * root + 5, m13) == 0);
    mpz_class acc = 1;
    for (long n = 0; n <= 12; ++n) {
      CHECK(k.zp_coordinates(n, N) == std::vector<mpz_class>{acc});
      acc = mod(acc * root, m13);
    }
  }

  // Reconstructing x^n from its coordinates reduces to the same coordinates.
  IntPoly cubic = parse_poly("X^3 - X - 1");
  PadicPoint c(cubic, 3);  // Artin-Schreier: irreducible mod 3
  const mpz_class m3 = pow_mpz(3, N);
  REQUIRE(c.local_degree() == 3);
  for (long n : {5L, 17L, 100L}) {
    auto lam = c.zp_coordinates(n, N);
    IntPoly rebuilt(lam);
    auto again = c.eval_residue(rebuilt, N);
    CHECK(again == lam);
    // Independent oracle: x^n mod (3^N, g) by repeated multiplication.
    ModPoly g = c.factor()->g;
    ModPoly acc = ModPoly::constant(1, m3);
    for (long k = 0; k < n; ++k) acc = (acc * ModPoly::x(m3)) % g;
    std::vector<mpz_class> want(3);
    for (std::size_t i = 0; i < 3; ++i) want[i] = acc[i];
    CHECK(lam == want);
  }

  CHECK_THROWS_AS(PadicPoint(parse_poly("2*X - 1"), 2).zp_coordinates(1, N), Error);
  // Ramified but integral: the power basis of X^2 - 2 itself.
  CHECK(PadicPoint(parse_poly("X^2 - 2"), 2).zp_coordinates(3, 10) ==
        std::vector<mpz_class>{0, 2});
}

TEST_CASE("valuations of polynomial values") {
  PadicPoint i7(parse_poly("X^2 + 1"), 7);
  CHECK(i7.eval_valuation(parse_poly("X - 1")) == 0);
  PadicPoint one5(parse_poly("X - 1"), 5);
  CHECK(one5.eval_valuation(parse_poly("X - 6")) == 1);
  for (long p : {2L, 3L, 5L, 7L, 13L}) {
    PadicPoint one(parse_poly("X - 1"), p);
    for (int d = 1; d <= 4; ++d) {
      CHECK(one.eval_valuation(IntPoly::monomial(1, d) - IntPoly::constant(2)) == 0);
    }
  }
  CHECK_THROWS_AS(i7.eval_valuation(parse_poly("X^2 + 1")), Error);
  CHECK_THROWS_AS(i7.eval_valuation(parse_poly("X^3 + X")), Error);
  // N(x + 2) = 5, so exactly one of the two embeddings at 5 sees 5 | x + 2.
  PadicPoint a(parse_poly("X^2 + 1"), 5, 0), b(parse_poly("X^2 + 1"), 5, 1);
  IntPoly lin = parse_poly("X + 2");
  CHECK(a.eval_valuation(lin) + b.eval_valuation(lin) == 1);

  // Precision escalation: one root is 1 modulo 7^70, beyond the default 64 digits.
  mpz_class big = 1 + pow_mpz(7, 70);
  IntPoly irr = IntPoly({big * 3 + pow_mpz(7, 75), -(big + 3), 1});
  PadicPoint e0(irr, 7, 0), e1(irr, 7, 1);
  mpq_class v0 = e0.eval_valuation(parse_poly("X - 1"));
  mpq_class v1 = e1.eval_valuation(parse_poly("X - 1"));
  CHECK(v0 + v1 == valuation(irr.eval(mpz_class(1)), 7));
  CHECK((v0 == 70 || v1 == 70));

  // Ramified route.
  PadicPoint s2(parse_poly("X^2 - 2"), 2);
  CHECK(s2.eval_valuation(parse_poly("X")) == mpq_class(1, 2));
  CHECK(s2.eval_valuation(parse_poly("X - 2")) == mpq_class(1, 2));
  CHECK(s2.eval_valuation(parse_poly("X + 1")) == 0);
}

TEST_CASE("local valuations sum to the valuation of the norm") {
  std::mt19937_64 rng(11);
  int tested = 0;
  for (int trial = 0; trial < 200 && tested < 40; ++trial) {
    IntPoly f = random_poly(rng, 2 + trial % 3, 30);
    if (gcd(f, f.derivative()).deg() != 0 || f[0] == 0) continue;
    IntPoly P = random_poly(rng, 1 + trial % 4, 400);
    if (gcd(f, P).deg() != 0) continue;
    for (long p : {3L, 5L, 7L}) {
      if (mpz_divisible_p(f.leading().get_mpz_t(), mpz_class(p).get_mpz_t())) continue;
      if (!is_squarefree_mod(ModPoly(f, p))) continue;
      // The norm of P over Q[X]/(f) covers all local factors, f need not be irreducible.
      PadicPoint first(f, p, 0);
      mpq_class total = 0;
      for (std::size_t i = 0; i < first.embedding_count(); ++i) {
        PadicPoint pt(f, p, i);
        total += pt.local_degree() * pt.eval_valuation(P);
      }
      mpq_class nrm = QuotientRing(f).norm(RatPoly(P));
      CHECK(total == valuation(nrm, p));
      ++tested;
    }
  }
  CHECK(tested >= 40);
}

TEST_CASE("multiplicativity and integer bounds") {
  std::mt19937_64 rng(3);
  IntPoly f = parse_poly("X^3 - X - 1");
  for (long p : {5L, 7L, 11L}) {
    PadicPoint pt(f, p, 0);
    for (int t = 0; t < 20; ++t) {
      IntPoly P = random_poly(rng, 1 + t % 3, 500);
      IntPoly Q = random_poly(rng, 1 + t % 2, 500);
      CHECK(pt.eval_valuation(P * Q) == pt.eval_valuation(P) + pt.eval_valuation(Q));
    }
  }
  PadicPoint s2(parse_poly("X^2 - 2"), 2);
  for (int t = 0; t < 20; ++t) {
    IntPoly P = random_poly(rng, 1 + t % 3, 500);
    IntPoly Q = random_poly(rng, 1 + t % 2, 500);
    CHECK(s2.eval_valuation(P * Q) == s2.eval_valuation(P) + s2.eval_valuation(Q));
  }

  std::uniform_int_distribution<long> dist(1, 1000000000L);
  for (int t = 0; t < 500; ++t) {
    mpz_class k = dist(rng);
    if (t % 2) k = -k;
    for (long p : {2L, 3L, 5L, 101L}) {
      long v = valuation(k, p);
      // 1/|k| <= |k|_p = p^-v <= 1.
      CHECK(v >= 0);
      CHECK(pow_mpz(p, static_cast<unsigned long>(v)) <= abs(k));
    }
  }
}
