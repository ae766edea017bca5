#pragma once

// Finite-precision p-adic arithmetic: Newton polygons, Hensel-lifted local
// factors, valuations of algebraic numbers and of polynomial values at them.
//
// Valuations are normalized by v_p(p) = 1, so |x|_p = p^(-v(x)).

#include "equilog/intpoly.hpp"
#include "equilog/modpoly.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <vector>

namespace equilog {

inline constexpr unsigned kDefaultPadicPrecision = 64;
inline constexpr unsigned kPadicPrecisionCap = 4096;

struct PadicContext {
  mpz_class p;
  unsigned N = kDefaultPadicPrecision;
  mpz_class modulus() const;  // p^N
};

struct NewtonSegment {
  // Slope of the lower convex hull of the points (i, v_p(a_i)); the roots on
  // this segment have valuation -slope.
  mpq_class slope;
  std::size_t length = 0;
  bool operator==(const NewtonSegment& o) const { return slope == o.slope && length == o.length; }
};

struct LocalFactor {
  PadicContext context;
  ModPoly g;               // monic, modulo p^N
  ModPoly reduction;       // g mod p, irreducible
  unsigned residue_degree = 0;
  mpq_class root_valuation;  // valuation of a root of g
};

// p-adic valuation of a nonzero integer / rational.
long valuation(const mpz_class& a, const mpz_class& p);
long valuation(const mpq_class& a, const mpz_class& p);

// Slopes sorted ascending. Roots at zero (a factor X^k) are ignored.
std::vector<NewtonSegment> newton_polygon(const IntPoly& P, const mpz_class& p);

// Factors of P over Q_p, certified by lifting the factorization mod p. Needs
// p not dividing lc(P) and P squarefree mod p; sorted by their reductions.
std::vector<LocalFactor> local_factors(const IntPoly& P, const mpz_class& p,
                                       unsigned N = kDefaultPadicPrecision);

// How the value of a polynomial at a p-adic root of `minpoly` is evaluated.
enum class PadicRoute {
  rational,      // degree 1: exact rational arithmetic
  local_factor,  // unramified: unit-part arithmetic modulo (p^N, g)
  norm,          // a single place above p: v = v_p(Norm) / d
};

// A root of an irreducible polynomial in a fixed embedding into an algebraic
// closure of Q_p.
class PadicPoint {
 public:
  // `index` selects a local factor when local factors exist; otherwise it
  // must be 0 and p must have a single place in Q(root).
  PadicPoint(IntPoly minpoly, mpz_class p, std::size_t index = 0,
             unsigned N = kDefaultPadicPrecision);

  const IntPoly& minpoly() const { return minpoly_; }
  const mpz_class& prime() const { return p_; }
  std::size_t index() const { return index_; }
  PadicRoute route() const { return route_; }
  // Local degree of the embedding (the residue degree for local factors, d otherwise).
  std::size_t local_degree() const;
  const std::optional<LocalFactor>& factor() const { return factor_; }
  // Number of embeddings that `index` may select.
  std::size_t embedding_count() const { return count_; }

  // v(root); |root|_p = p^(-v).
  mpq_class root_valuation() const;
  // v(P(root)), exact. Throws vanishing_input if P(root) = 0 and
  // precision_exhausted if the local-factor precision cap is reached.
  mpq_class eval_valuation(const IntPoly& P) const;
  // P(root) modulo (p^N, g) in the basis 1, x, ..., x^(d_loc-1); local-factor route only.
  std::vector<mpz_class> eval_residue(const IntPoly& P, unsigned N) const;
  // Coordinates of root^n in the basis 1, x, ..., x^(d_loc-1) modulo p^N.
  std::vector<mpz_class> zp_coordinates(const mpz_class& n, unsigned N) const;

 private:
  LocalFactor factor_at(unsigned N) const;

  IntPoly minpoly_;
  mpz_class p_;
  std::size_t index_ = 0;
  unsigned N_ = kDefaultPadicPrecision;
  PadicRoute route_ = PadicRoute::rational;
  std::size_t count_ = 1;
  std::optional<LocalFactor> factor_;
};

// True if Q(root of minpoly) has exactly one place above p that we can
// certify (irreducible mod p, Eisenstein-Dumas after a shift, or degree 1).
bool single_place_above(const IntPoly& minpoly, const mpz_class& p);

}  // namespace equilog
