#pragma once

// Small-vector solvers for linear-forms problems: an archimedean box problem
// |(Ba)_i| < lambda_i and a p-adic congruence problem with a sup-norm bound.
// Both reduce a lattice with exact integral LLL and enumerate it in
// Schnorr-Euchner order; every returned vector is re-verified exactly.

#include "equilog/ball.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <vector>

namespace equilog {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

using IntMatrix = std::vector<std::vector<mpz_class>>;  // row-major
using BallMatrix = std::vector<std::vector<RealBall>>;

// Gram-Schmidt data of a reduced basis, in exact integral form: d[0] = 1,
// d[i] = det Gram(b_1..b_i), lambda[i][j] = d[j+1] mu_ij (0-based rows).
struct LllResult {
  IntMatrix basis;      // reduced rows
  IntMatrix transform;  // basis = transform * input
  std::vector<mpz_class> d;
  IntMatrix lambda;
};

// LLL reduction of linearly independent row vectors with parameter delta.
LllResult lll_reduce(const IntMatrix& rows, const mpq_class& delta = mpq_class(99, 100));

struct EnumerationStats {
  std::uint64_t nodes = 0;
  double final_radius_sq = 0;  // in units of the requested box
};

// Enumerates nonzero coefficient vectors x (one of each pair +-x) with
// |x * basis|_2^2 <= radius_sq, nearest-first at every level. Stops as soon
// as `visit` returns true. Throws budget_exhausted past `budget` nodes.
bool enumerate_short(const LllResult& reduced, long double radius_sq,
                     const std::function<bool(const std::vector<mpz_class>&)>& visit,
                     std::uint64_t budget, std::uint64_t& nodes);

struct ArchLinearFormsProblem {
  BallMatrix B;                  // m x m
  std::vector<RealBall> lambda;  // m positive bounds
};

struct ArchSolution {
  std::vector<mpz_class> a;
  std::vector<RealBall> b;  // B a
  EnumerationStats stats;
};

// Nonzero a with |(Ba)_i| < lambda_i (i < m) and |(Ba)_m| <= lambda_m, each
// certified on ball endpoints. Requires |det B| = prod lambda_i up to the
// ball widths.
ArchSolution solve_arch(const ArchLinearFormsProblem& problem,
                        std::uint64_t budget = kDefaultEnumerationBudget);

struct PadicLinearFormsProblem {
  mpz_class p;
  unsigned long f = 1;
  IntMatrix forms;  // d_loc x (n+1), entries modulo p^f
  mpz_class Lambda;
};

struct PadicSolution {
  std::vector<mpz_class> a;
  mpz_class Lambda_used;  // Lambda, or Lambda * p after one widening
  bool widened = false;
  mpz_class kernel_det;
  EnumerationStats stats;
};

// Basis (rows) of {a in Z^(n+1) : forms * a = 0 mod modulus}, from the
// Hermite normal form of the stacked system; `det` receives its determinant.
IntMatrix congruence_kernel(const IntMatrix& forms, const mpz_class& modulus, mpz_class* det = nullptr);

// Nonzero a with max |a_i| <= Lambda and every form = 0 mod p^f. If Mahler's
// volume condition Lambda^(n+1) >= p^(d f) fails and no vector is found,
// Lambda is widened once by p.
PadicSolution solve_padic(const PadicLinearFormsProblem& problem,
                          std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace equilog
