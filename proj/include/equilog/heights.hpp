#pragma once

// Algebraic numbers as (minimal polynomial, embedding) pairs, heights,
// root-of-unity detection and conjugate log-distance averages.

#include "equilog/ball.hpp"
#include "equilog/intpoly.hpp"
#include "equilog/padics.hpp"
#include "equilog/roots.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <variant>

namespace equilog {

struct ArchEmbedding {
  std::size_t index = 0;  // into the canonical root ordering
  bool operator==(const ArchEmbedding&) const = default;
};

struct PadicEmbedding {
  mpz_class p;
  std::size_t index = 0;  // local factor index
  bool operator==(const PadicEmbedding& o) const { return p == o.p && index == o.index; }
};

using Embedding = std::variant<ArchEmbedding, PadicEmbedding>;

class AlgebraicNumber {
 public:
  // Normalizes minpoly to be primitive with positive leading coefficient and
  // checks irreducibility unless `trusted`.
  explicit AlgebraicNumber(IntPoly minpoly, Embedding embedding = ArchEmbedding{},
                           bool trusted = false);
  static AlgebraicNumber rational(const mpq_class& q, Embedding embedding = ArchEmbedding{});
  // The archimedean root of minpoly closest to re + i im.
  static AlgebraicNumber nearest(IntPoly minpoly, double re, double im, bool trusted = false);

  const IntPoly& minpoly() const { return minpoly_; }
  const Embedding& embedding() const { return embedding_; }
  std::size_t degree() const { return minpoly_.deg(); }
  const mpz_class& leading() const { return minpoly_.leading(); }
  bool is_rational() const { return degree() == 1; }
  bool is_zero() const;
  std::optional<mpq_class> rational_value() const;
  bool conjugate_of(const AlgebraicNumber& o) const { return minpoly_ == o.minpoly_; }
  bool operator==(const AlgebraicNumber& o) const;

  AlgebraicNumber with_embedding(Embedding e) const;

  // Enclosure of the archimedean value; needs an ArchEmbedding (or a rational).
  ComplexBall arch_value(mpfr_prec_t prec = kDefaultPrecision) const;
  // The p-adic point of a PadicEmbedding at p (index 0 for rationals).
  PadicPoint padic_point(const mpz_class& p, unsigned N = kDefaultPadicPrecision) const;

  std::string to_string() const;

 private:
  IntPoly minpoly_;
  Embedding embedding_;
};

class Place {
 public:
  static Place infinity() { return Place(); }
  static Place prime(const mpz_class& p);

  bool is_infinite() const { return !p_.has_value(); }
  const mpz_class& p() const;
  // c_inf = 2, c_p = p.
  mpz_class c() const { return is_infinite() ? mpz_class(2) : *p_; }
  std::string to_string() const;
  bool operator==(const Place& o) const { return p_ == o.p_; }

 private:
  std::optional<mpz_class> p_;
};

// h(a) = log M(minpoly) / d.
RealBall weil_height(const AlgebraicNumber& a, mpfr_prec_t prec = kDefaultPrecision);
RealBall weil_height(const IntPoly& minpoly, mpfr_prec_t prec = kDefaultPrecision);
// h'(a) = h(a) + log(2d)/d.
RealBall modified_height(const AlgebraicNumber& a, mpfr_prec_t prec = kDefaultPrecision);
RealBall modified_height(const IntPoly& minpoly, mpfr_prec_t prec = kDefaultPrecision);

// n if P is the n-th cyclotomic polynomial.
std::optional<unsigned long> is_root_of_unity(const IntPoly& P);
IntPoly cyclotomic(unsigned long n);
unsigned long euler_phi(unsigned long n);

// Primitive minimal polynomial of Q(a), as the radical of the characteristic
// polynomial of multiplication by Q(a) in Q[X]/(minpoly).
IntPoly minimal_poly_of_image(const AlgebraicNumber& a, const IntPoly& Q);

// (1/d) sum over the conjugates s of a of log |s - kappa|_nu, via the closed
// form (log |T(kappa)|_nu - log |t|_nu) / d with T = minpoly(a), t = lc(T). At
// infinity the certified root sum is computed as well and must agree.
RealBall log_distance_average(const AlgebraicNumber& a, const AlgebraicNumber& kappa,
                              const Place& nu, mpfr_prec_t prec = kDefaultPrecision);
// log max(1, |kappa|_nu).
RealBall log_max_one(const AlgebraicNumber& kappa, const Place& nu,
                     mpfr_prec_t prec = kDefaultPrecision);
// |log_distance_average - log max(1, |kappa|_nu)|.
RealBall equidist_error(const AlgebraicNumber& a, const AlgebraicNumber& kappa, const Place& nu,
                        mpfr_prec_t prec = kDefaultPrecision);

}  // namespace equilog
