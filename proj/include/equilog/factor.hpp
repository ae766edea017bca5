#pragma once

// Factorization of integer polynomials (Zassenhaus: factor mod l, Hensel lift,
// recombine, trial-divide) and the irreducibility tests built on it.

#include "equilog/intpoly.hpp"

#include <gmpxx.h>

#include <optional>
#include <vector>

namespace equilog {

struct SmallFactors {
  std::vector<IntPoly> factors;  // irreducible, primitive, positive leading coefficient
  IntPoly cofactor;              // f divided by the product of `factors` (up to sign)
  mpz_class prime;               // auxiliary prime l that was used
};

struct FactorOptions {
  // Use this auxiliary prime instead of searching (must keep f squarefree mod l).
  std::optional<mpz_class> prime;
  // Primes excluded from the automatic search.
  std::vector<mpz_class> skip;
  // Smallest prime considered by the automatic search.
  unsigned long first_prime = 3;
  // Number of admissible primes compared when choosing l (fewest modular factors wins).
  int candidates = 5;
  // Upper limit on the automatic search.
  unsigned long prime_limit = 20000;
  // Maximal number of recombination candidates tested.
  unsigned long long budget = 5'000'000;
};

// All irreducible integer factors of degree <= max_deg of a squarefree
// primitive polynomial f with deg f >= 1. Every irreducible factor of the
// returned cofactor has degree > max_deg.
SmallFactors find_small_factors(const IntPoly& f, std::size_t max_deg,
                                const FactorOptions& opts = {});

// Irreducible factors of a nonzero polynomial with multiplicity (content
// dropped), each primitive with positive leading coefficient, sorted
// canonically.
std::vector<IntPoly> factor(const IntPoly& p, const FactorOptions& opts = {});

// True if p is irreducible over Q (content ignored). Uses Eisenstein at small
// primes and irreducibility mod l as fast paths.
bool is_irreducible(const IntPoly& p);

// First prime l >= from with l not dividing lc(f) and f squarefree mod l.
std::optional<mpz_class> squarefree_prime(const IntPoly& f, unsigned long from = 3,
                                          const std::vector<mpz_class>& skip = {},
                                          unsigned long limit = 20000);

mpz_class next_prime(const mpz_class& n);  // smallest prime > n

}  // namespace equilog
