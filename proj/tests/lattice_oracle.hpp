#pragma once

// Exact rational linear algebra and exhaustive box search, used to re-verify
// the lattice solvers independently of LLL and enumeration.

#include "equilog/lattice.hpp"

#include <gmpxx.h>

#include "equilog/error.hpp"

#include <cstdlib>
#include <random>
#include <vector>

namespace equilog::oracle {

using RatMatrix = std::vector<std::vector<mpq_class>>;

inline mpq_class det_q(RatMatrix m) {
  const std::size_t n = m.size();
  mpq_class det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      mpq_class f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

inline RatMatrix inverse_q(RatMatrix m) {
  const std::size_t n = m.size();
  RatMatrix inv(n, std::vector<mpq_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (m[piv][c] == 0) ++piv;
    std::swap(m[piv], m[c]);
    std::swap(inv[piv], inv[c]);
    mpq_class p = m[c][c];
    for (std::size_t k = 0; k < n; ++k) {
      m[c][k] /= p;
      inv[c][k] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      mpq_class f = m[r][c];
      for (std::size_t k = 0; k < n; ++k) {
        m[r][k] -= f * m[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

// Mixed strict / non-strict box test in exact rational arithmetic.
inline bool in_box(const RatMatrix& B, const std::vector<mpq_class>& lam, const std::vector<mpz_class>& a) {
  const std::size_t m = B.size();
  bool nonzero = false;
  for (const auto& e : a) nonzero = nonzero || e != 0;
  if (!nonzero) return false;
  for (std::size_t i = 0; i < m; ++i) {
    mpq_class s = 0;
    for (std::size_t j = 0; j < m; ++j) s += B[i][j] * a[j];
    if (i + 1 < m ? abs(s) >= lam[i] : abs(s) > lam[i]) return false;
  }
  return true;
}

// Walks every integer vector with |a_j| <= bound_j.
template <class F>
void for_box(const std::vector<long>& bound, F&& f) {
  std::vector<mpz_class> a(bound.size());
  std::vector<long> cur(bound.size());
  for (std::size_t j = 0; j < bound.size(); ++j) cur[j] = -bound[j];
  for (;;) {
    for (std::size_t j = 0; j < bound.size(); ++j) a[j] = cur[j];
    f(a);
    std::size_t j = 0;
    while (j < bound.size() && cur[j] == bound[j]) {
      cur[j] = -bound[j];
      ++j;
    }
    if (j == bound.size()) return;
    ++cur[j];
  }
}

inline ArchLinearFormsProblem to_problem(const RatMatrix& B, const std::vector<mpq_class>& lam) {
  ArchLinearFormsProblem pb;
  for (const auto& row : B) {
    std::vector<RealBall> r;
    for (const auto& e : row) r.emplace_back(256, e);
    pb.B.push_back(r);
  }
  for (const auto& l : lam) pb.lambda.emplace_back(256, l);
  return pb;
}

struct BoxSearchTally {
  int tested = 0;       // problems whose solver output was checked
  int violations = 0;   // outputs outside the box or disagreeing with the search
  int uncertified = 0;  // arch: certification_failed on a boundary solution
  int widened = 0;      // p-adic: Lambda widened by p
  int unsolved = 0;     // p-adic: no_solution after widening
};

// Random m x m problems (m = 2, 3, 4) with |det B| = prod lambda_i. Each solver
// output must lie in the box and inside the preimage bound, and the box search
// must find a solution (Minkowski).
inline BoxSearchTally arch_box_search(std::uint64_t seed = 2, int tries = 400, int target = 120) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> ent(-16, 16);
  std::uniform_int_distribution<long> lam_num(1, 16);
  BoxSearchTally t;
  for (int k = 0; k < tries && t.tested < target; ++k) {
    std::size_t m = 2 + k % 3;
    RatMatrix B(m, std::vector<mpq_class>(m));
    for (auto& row : B) {
      for (auto& e : row) e = mpq_class(ent(rng), 1 + std::abs(ent(rng)) % 4);
      for (auto& e : row) e.canonicalize();
    }
    mpq_class D = abs(det_q(B));
    if (D == 0) continue;
    std::vector<mpq_class> lam(m);
    mpq_class prod = 1;
    for (std::size_t i = 0; i + 1 < m; ++i) {
      lam[i] = mpq_class(lam_num(rng), 4);
      lam[i].canonicalize();
      prod *= lam[i];
    }
    lam[m - 1] = D / prod;
    // Preimage box: |a_j| <= sum_i |B^{-1}_ji| lambda_i.
    RatMatrix inv = inverse_q(B);
    std::vector<long> bound(m);
    double cells = 1;
    for (std::size_t j = 0; j < m; ++j) {
      mpq_class s = 0;
      for (std::size_t i = 0; i < m; ++i) s += abs(inv[j][i]) * lam[i];
      mpz_class fl;
      mpz_fdiv_q(fl.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
      bound[j] = fl.get_si();
      cells *= 2.0 * bound[j] + 1;
    }
    if (cells > 2e5) continue;
    bool exists = false;
    for_box(bound, [&](const std::vector<mpz_class>& a) { exists = exists || in_box(B, lam, a); });
    try {
      auto sol = solve_arch(to_problem(B, lam));
      bool ok = exists && in_box(B, lam, sol.a);
      for (std::size_t j = 0; j < m; ++j) ok = ok && abs(sol.a[j]) <= bound[j];
      t.violations += !ok;
      ++t.tested;
    } catch (const Error& e) {
      // Only solutions on a non-dyadic boundary can escape certification.
      if (e.kind() == ErrorKind::certification_failed) {
        ++t.uncertified;
      } else {
        ++t.violations;
      }
    }
  }
  return t;
}

// One congruence in 2..4 unknowns modulo p^f, p in {2, 3, 5, 7}, with Lambda at
// or below the pigeonhole bound. A solution within the original Lambda must
// exist exactly when the solver did not widen.
inline BoxSearchTally padic_box_search(std::uint64_t seed = 4, int tries = 300) {
  std::mt19937_64 rng(seed);
  BoxSearchTally t;
  for (int k = 0; k < tries; ++k) {
    long p = std::vector<long>{2, 3, 5, 7}[k % 4];
    std::size_t w = 2 + k % 3;
    unsigned long f = 1 + k % 2;
    mpz_class mod;
    mpz_ui_pow_ui(mod.get_mpz_t(), p, f);
    std::uniform_int_distribution<long> dist(0, mod.get_si() - 1);
    IntMatrix forms(1, std::vector<mpz_class>(w));
    for (auto& e : forms[0]) e = dist(rng);
    long L = 1;
    for (;;) {
      mpz_class v;
      mpz_ui_pow_ui(v.get_mpz_t(), L + 1, w);
      if (v > mod) break;
      ++L;
    }
    if (k % 3 == 0 && L > 1) --L;
    PadicSolution sol;
    try {
      sol = solve_padic({p, f, forms, L});
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::no_solution) {
        ++t.unsolved;
      } else {
        ++t.violations;
      }
      continue;
    }
    mpz_class s = 0;
    for (std::size_t j = 0; j < w; ++j) s += forms[0][j] * sol.a[j];
    bool ok = mpz_divisible_p(s.get_mpz_t(), mod.get_mpz_t()) != 0;
    bool nonzero = false;
    for (const auto& e : sol.a) {
      nonzero = nonzero || e != 0;
      ok = ok && abs(e) <= sol.Lambda_used;
    }
    bool exists = false;
    for_box(std::vector<long>(w, L), [&](const std::vector<mpz_class>& a) {
      bool nz = false;
      mpz_class v = 0;
      for (std::size_t j = 0; j < w; ++j) {
        nz = nz || a[j] != 0;
        v += forms[0][j] * a[j];
      }
      exists = exists || (nz && mpz_divisible_p(v.get_mpz_t(), mod.get_mpz_t()));
    });
    ok = ok && nonzero && exists == !sol.widened;
    t.violations += !ok;
    t.widened += sol.widened;
    ++t.tested;
  }
  return t;
}

}  // namespace equilog::oracle
