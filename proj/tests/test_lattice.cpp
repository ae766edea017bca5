#include "doctest.h"

#include "equilog/error.hpp"
#include "equilog/lattice.hpp"
#include "equilog/padics.hpp"
#include "lattice_oracle.hpp"

#include <random>

using namespace equilog;
using namespace equilog::oracle;

namespace {

mpq_class ratio(const mpz_class& n, const mpz_class& d) {
  mpq_class q(n, d);
  q.canonicalize();
  return q;
}

// Textbook rational Gram-Schmidt: mu and |b*_i|^2.
void gram_schmidt(const IntMatrix& b, RatMatrix& mu, std::vector<mpq_class>& bstar2) {
  const std::size_t n = b.size(), w = b[0].size();
  std::vector<std::vector<mpq_class>> bs(n, std::vector<mpq_class>(w));
  mu.assign(n, std::vector<mpq_class>(n, 0));
  bstar2.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < w; ++k) bs[i][k] = b[i][k];
    for (std::size_t j = 0; j < i; ++j) {
      mpq_class num = 0;
      for (std::size_t k = 0; k < w; ++k) num += b[i][k] * bs[j][k];
      mu[i][j] = num / bstar2[j];
      for (std::size_t k = 0; k < w; ++k) bs[i][k] -= mu[i][j] * bs[j][k];
    }
    for (std::size_t k = 0; k < w; ++k) bstar2[i] += bs[i][k] * bs[i][k];
  }
}

}  // namespace

TEST_CASE("LLL output is reduced and unimodularly equivalent") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<long> dist(-1000, 1000);
  for (int t = 0; t < 40; ++t) {
    std::size_t n = 2 + t % 5;
    IntMatrix in(n, std::vector<mpz_class>(n));
    RatMatrix q(n, std::vector<mpq_class>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        in[i][j] = dist(rng);
        if (t % 3 == 0 && j == 0) in[i][j] *= 1000000;  // skewed
        q[i][j] = in[i][j];
      }
    }
    if (det_q(q) == 0) continue;
    LllResult r = lll_reduce(in);
    // basis = transform * input, transform unimodular.
    RatMatrix U(n, std::vector<mpq_class>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        mpz_class s = 0;
        for (std::size_t k = 0; k < n; ++k) s += r.transform[i][k] * in[k][j];
        CHECK(s == r.basis[i][j]);
        U[i][j] = r.transform[i][j];
      }
    }
    CHECK(abs(det_q(U)) == 1);
    RatMatrix mu;
    std::vector<mpq_class> bs;
    gram_schmidt(r.basis, mu, bs);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        CHECK(abs(mu[i][j]) <= mpq_class(1, 2));
        CHECK(ratio(r.lambda[i][j], r.d[j + 1]) == mu[i][j]);
      }
      CHECK(ratio(r.d[i + 1], r.d[i]) == bs[i]);
      if (i > 0) CHECK(bs[i] >= (mpq_class(99, 100) - mu[i][i - 1] * mu[i][i - 1]) * bs[i - 1]);
    }
  }
}

TEST_CASE("archimedean solver: documented examples") {
  {
    RatMatrix B = {{1, 0}, {0, 1}};
    auto sol = solve_arch(to_problem(B, {1, 1}));
    CHECK(sol.a[0] == 0);
    CHECK(abs(sol.a[1]) == 1);
  }
  {
    RatMatrix B = {{1, 0}, {mpq_class(1, 2), 1}};
    std::vector<mpq_class> lam = {mpq_class(1, 2), 2};
    auto sol = solve_arch(to_problem(B, lam));
    CHECK(in_box(B, lam, sol.a));
    bool any = false;
    for_box({8, 8}, [&](const std::vector<mpz_class>& a) { any = any || in_box(B, lam, a); });
    CHECK(any);
  }
}

TEST_CASE("archimedean solver agrees with exhaustive box search") {
  BoxSearchTally t = arch_box_search();
  CHECK(t.violations == 0);
  CHECK(t.tested >= 100);
  MESSAGE("uncertified boundary cases: " << t.uncertified);
}

TEST_CASE("archimedean solver checks the determinant condition") {
  RatMatrix B = {{1, 0}, {0, 1}};
  CHECK_THROWS_AS(solve_arch(to_problem(B, {2, 2})), Error);
  // Budget errors are resource errors.
  try {
    RatMatrix C = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    solve_arch(to_problem(C, {mpq_class(1, 1000), mpq_class(1, 1000), 1000000}), 1);
  } catch (const Error& e) {
    CHECK(e.is_resource());
  }
}

TEST_CASE("congruence kernel") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    long p = std::vector<long>{2, 3, 5, 7, 13}[t % 5];
    unsigned long f = 1 + t % 3;
    mpz_class mod;
    mpz_ui_pow_ui(mod.get_mpz_t(), p, f);
    std::size_t d = 1 + t % 2, w = 2 + t % 3;
    std::uniform_int_distribution<long> dist(0, mod.get_si() - 1);
    IntMatrix forms(d, std::vector<mpz_class>(w));
    for (auto& r : forms) {
      for (auto& e : r) e = dist(rng);
    }
    mpz_class det;
    IntMatrix K = congruence_kernel(forms, mod, &det);
    REQUIRE(K.size() == w);
    mpz_class full;
    mpz_pow_ui(full.get_mpz_t(), mod.get_mpz_t(), d);
    CHECK(mpz_divisible_p(full.get_mpz_t(), det.get_mpz_t()));
    RatMatrix q(w, std::vector<mpq_class>(w));
    for (std::size_t i = 0; i < w; ++i) {
      for (std::size_t j = 0; j < w; ++j) q[i][j] = K[i][j];
    }
    CHECK(abs(det_q(q)) == det);
    for (const auto& row : K) {
      for (const auto& form : forms) {
        mpz_class s = 0;
        for (std::size_t j = 0; j < w; ++j) s += form[j] * row[j];
        CHECK(mpz_divisible_p(s.get_mpz_t(), mod.get_mpz_t()));
      }
    }
    // Index oracle: count residues in (Z/mod)^w that satisfy all forms.
    if (w <= 3 && mod <= 27) {
      long count = 0;
      long M = mod.get_si();
      std::vector<long> bnd(w, M - 1);
      std::vector<long> cur(w, 0);
      for (;;) {
        bool ok = true;
        for (const auto& form : forms) {
          mpz_class s = 0;
          for (std::size_t j = 0; j < w; ++j) s += form[j] * cur[j];
          ok = ok && mpz_divisible_p(s.get_mpz_t(), mod.get_mpz_t());
        }
        count += ok;
        std::size_t j = 0;
        while (j < w && cur[j] == M - 1) cur[j++] = 0;
        if (j == w) break;
        ++cur[j];
      }
      // [Z^w : K] = M^w / #solutions mod M.
      mpz_class Mw;
      mpz_ui_pow_ui(Mw.get_mpz_t(), M, w);
      CHECK(det * count == Mw);
    }
  }
}

TEST_CASE("p-adic solver: documented examples") {
  {
    PadicLinearFormsProblem pb{2, 1, {{1, 1}}, 1};
    auto sol = solve_padic(pb);
    CHECK(abs(sol.a[0]) == 1);
    CHECK(abs(sol.a[1]) == 1);
    CHECK(!sol.widened);
  }
  {
    PadicLinearFormsProblem pb{5, 2, {{1, 3}}, 5};
    auto sol = solve_padic(pb);
    CHECK((sol.a[0] + 3 * sol.a[1]) % 25 == 0);
    CHECK(abs(sol.a[0]) <= 5);
    CHECK(abs(sol.a[1]) <= 5);
    bool any = false;
    for_box({5, 5}, [&](const std::vector<mpz_class>& a) {
      any = any || ((a[0] != 0 || a[1] != 0) && (a[0] + 3 * a[1]) % 25 == 0);
    });
    CHECK(any);
  }
  {
    // Two forms mod 7^3 from the Z_7 coordinates of powers of i.
    PadicPoint x(parse_poly("X^2 + 1"), 7);
    const long n = 4;
    const unsigned long f = 3;
    IntMatrix forms(2, std::vector<mpz_class>(n + 1));
    for (long k = 0; k <= n; ++k) {
      auto c = x.zp_coordinates(n * k, f);
      forms[0][k] = c[0];
      forms[1][k] = c[1];
    }
    PadicLinearFormsProblem pb{7, f, forms, 10};  // floor(7^(6/5)) = 10
    auto sol = solve_padic(pb);
    for (const auto& form : forms) {
      mpz_class s = 0;
      for (long k = 0; k <= n; ++k) s += form[k] * sol.a[k];
      CHECK(s % 343 == 0);
    }
    IntPoly A(sol.a);
    auto r = x.eval_residue(substitute_power(A, n), f);  // A(x^n) mod 7^3
    for (const auto& c : r) CHECK(c == 0);
    for (const auto& e : sol.a) CHECK(abs(e) <= sol.Lambda_used);
  }
}

TEST_CASE("p-adic solver agrees with exhaustive box search") {
  BoxSearchTally t = padic_box_search();
  CHECK(t.violations == 0);
  CHECK(t.unsolved == 0);
  CHECK(t.tested >= 290);
  CHECK(t.widened > 0);
  MESSAGE("widened: " << t.widened);
}
