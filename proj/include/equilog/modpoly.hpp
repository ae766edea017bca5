#pragma once

// Polynomials over Z/mZ. Field operations (inverse, gcd, factoring) need m prime;
// ring operations and division by monic divisors work for any m, which is what
// Hensel lifting modulo prime powers uses.

#include "equilog/intpoly.hpp"

#include <gmpxx.h>

#include <vector>

namespace equilog {

class ModPoly {
 public:
  explicit ModPoly(mpz_class modulus = 2);
  ModPoly(std::vector<mpz_class> coeffs, mpz_class modulus);
  ModPoly(const IntPoly& p, mpz_class modulus);

  static ModPoly constant(const mpz_class& c, const mpz_class& modulus);
  static ModPoly x(const mpz_class& modulus);

  const mpz_class& modulus() const { return m_; }
  bool is_zero() const { return c_.empty(); }
  // -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<mpz_class>& coeffs() const { return c_; }
  mpz_class operator[](std::size_t i) const { return i < c_.size() ? c_[i] : mpz_class(0); }
  const mpz_class& leading() const { return c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  bool operator==(const ModPoly& o) const { return m_ == o.m_ && c_ == o.c_; }
  bool operator!=(const ModPoly& o) const { return !(*this == o); }
  // Canonical order: degree, then coefficients from the top.
  bool operator<(const ModPoly& o) const;

  ModPoly operator-() const;
  friend ModPoly operator+(const ModPoly& a, const ModPoly& b);
  friend ModPoly operator-(const ModPoly& a, const ModPoly& b);
  friend ModPoly operator*(const ModPoly& a, const ModPoly& b);
  friend ModPoly operator*(const ModPoly& a, const mpz_class& s);

  ModPoly derivative() const;
  // Multiply by the inverse of the leading coefficient (must be a unit).
  ModPoly monic() const;
  // Lift to integers with coefficients in (-m/2, m/2].
  IntPoly to_symmetric() const;
  IntPoly to_nonnegative() const;
  // Same integer representatives reduced to a new modulus.
  ModPoly with_modulus(const mpz_class& m) const;

 private:
  void normalize();
  std::vector<mpz_class> c_;
  mpz_class m_;
};

// Quotient and remainder; the divisor's leading coefficient must be a unit.
std::pair<ModPoly, ModPoly> divmod(const ModPoly& a, const ModPoly& b);
ModPoly operator%(const ModPoly& a, const ModPoly& b);
// Monic gcd over a prime field.
ModPoly gcd(const ModPoly& a, const ModPoly& b);
// Extended gcd over a prime field: s a + t b = g (g monic).
struct ModXgcd {
  ModPoly g, s, t;
};
ModXgcd xgcd(const ModPoly& a, const ModPoly& b);
// base^e mod f.
ModPoly powmod(const ModPoly& base, const mpz_class& e, const ModPoly& f);

bool is_squarefree_mod(const ModPoly& f);
bool is_irreducible_mod(const ModPoly& f);

// Distinct-degree factorization of a monic squarefree polynomial over F_p:
// pairs (degree, product of all irreducible factors of that degree). With
// max_degree > 0, stops after that degree and returns the remaining cofactor
// (all of whose irreducible factors have larger degree) as the last entry
// with degree 0, when nontrivial.
std::vector<std::pair<unsigned, ModPoly>> distinct_degree_factor(const ModPoly& f,
                                                                 unsigned max_degree = 0);
// Equal-degree splitting (Cantor–Zassenhaus) with a deterministic seed.
std::vector<ModPoly> equal_degree_factor(const ModPoly& f, unsigned degree, unsigned long seed);
// Full factorization of a monic squarefree polynomial into monic irreducibles,
// sorted canonically.
std::vector<ModPoly> factor_squarefree_mod(const ModPoly& f, unsigned long seed = 1);

// Hensel lifting: given f monic modulo p^k (any k >= 1 representation) and
// monic pairwise coprime factors mod p with f = prod factors mod p, returns
// monic factors modulo `target` (a power of p) with the same reductions.
std::vector<ModPoly> hensel_lift(const IntPoly& f, const std::vector<ModPoly>& factors,
                                 const mpz_class& p, const mpz_class& target);

}  // namespace equilog
