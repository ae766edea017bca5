#pragma once

// Certified real and complex enclosures with outward rounding.
//
// A RealBall is stored as the closed interval [lo, hi] whose endpoints are
// rounded outward at every operation, so the exact image of the operands'
// intervals is always contained in the result. The midpoint/radius view is
// derived on demand for reporting.

#include "equilog/bigfloat.hpp"

#include <gmpxx.h>

#include <optional>
#include <string>

namespace equilog {

class RealBall {
 public:
  explicit RealBall(mpfr_prec_t prec = 256);
  RealBall(mpfr_prec_t prec, long value);
  RealBall(mpfr_prec_t prec, const mpz_class& value);
  RealBall(mpfr_prec_t prec, const mpq_class& value);
  // Ball containing both endpoints (order-insensitive).
  RealBall(const BigFloat& a, const BigFloat& b);

  static RealBall from_double(mpfr_prec_t prec, double value);
  static RealBall from_bounds(mpfr_prec_t prec, mpfr_srcptr lo, mpfr_srcptr hi);
  static RealBall pi(mpfr_prec_t prec);
  static RealBall log2(mpfr_prec_t prec);
  // Hull of two balls.
  static RealBall hull(const RealBall& a, const RealBall& b);

  mpfr_prec_t prec() const { return lo_.prec(); }
  const BigFloat& lower() const { return lo_; }
  const BigFloat& upper() const { return hi_; }
  BigFloat midpoint() const;
  BigFloat radius() const;  // rounded up, 64-bit precision

  bool contains_zero() const;
  bool contains(const RealBall& other) const;
  bool is_exact() const;
  bool is_positive() const { return lo_.sign() > 0; }
  bool is_negative() const { return hi_.sign() < 0; }
  bool is_nonnegative() const { return lo_.sign() >= 0; }

  long double mid_ld() const;
  double mid_double() const { return static_cast<double>(mid_ld()); }
  // log2 of the radius; very negative for exact balls.
  double log2_radius() const;

  RealBall operator-() const;
  RealBall& operator+=(const RealBall& o);
  RealBall& operator-=(const RealBall& o);
  RealBall& operator*=(const RealBall& o);
  RealBall& operator/=(const RealBall& o);

  friend RealBall operator+(RealBall a, const RealBall& b) { return a += b; }
  friend RealBall operator-(RealBall a, const RealBall& b) { return a -= b; }
  friend RealBall operator*(RealBall a, const RealBall& b) { return a *= b; }
  friend RealBall operator/(RealBall a, const RealBall& b) { return a /= b; }

  // Serialization helpers: decimal midpoint at full precision, radius rounded up.
  std::string mid_string() const;
  std::string rad_string() const;

 private:
  BigFloat lo_;
  BigFloat hi_;
};

RealBall abs(const RealBall& x);
RealBall sqr(const RealBall& x);
RealBall sqrt(const RealBall& x);
RealBall cbrt(const RealBall& x);
RealBall log(const RealBall& x);
RealBall exp(const RealBall& x);
RealBall pow(const RealBall& base, const RealBall& exponent);  // base > 0
RealBall pow(const RealBall& base, long exponent);
RealBall max(const RealBall& a, const RealBall& b);
RealBall min(const RealBall& a, const RealBall& b);
RealBall with_prec(const RealBall& x, mpfr_prec_t prec);

// Certified comparisons: true only if the relation holds for every pair of
// points in the two balls.
bool certainly_lt(const RealBall& a, const RealBall& b);
bool certainly_le(const RealBall& a, const RealBall& b);
bool certainly_gt(const RealBall& a, const RealBall& b);
bool certainly_ge(const RealBall& a, const RealBall& b);
bool intersects(const RealBall& a, const RealBall& b);
// Common part of two balls; absent if they are disjoint.
std::optional<RealBall> intersection(const RealBall& a, const RealBall& b);

class ComplexBall {
 public:
  explicit ComplexBall(mpfr_prec_t prec = 256) : re_(prec), im_(prec) {}
  ComplexBall(RealBall re, RealBall im) : re_(std::move(re)), im_(std::move(im)) {}
  ComplexBall(mpfr_prec_t prec, const mpq_class& re, const mpq_class& im)
      : re_(prec, re), im_(prec, im) {}

  const RealBall& re() const { return re_; }
  const RealBall& im() const { return im_; }
  mpfr_prec_t prec() const { return re_.prec(); }
  bool contains_zero() const { return re_.contains_zero() && im_.contains_zero(); }

  ComplexBall operator-() const { return {-re_, -im_}; }
  ComplexBall& operator+=(const ComplexBall& o);
  ComplexBall& operator-=(const ComplexBall& o);
  ComplexBall& operator*=(const ComplexBall& o);
  ComplexBall& operator*=(const RealBall& o);
  ComplexBall& operator/=(const ComplexBall& o);

  friend ComplexBall operator+(ComplexBall a, const ComplexBall& b) { return a += b; }
  friend ComplexBall operator-(ComplexBall a, const ComplexBall& b) { return a -= b; }
  friend ComplexBall operator*(ComplexBall a, const ComplexBall& b) { return a *= b; }
  friend ComplexBall operator*(ComplexBall a, const RealBall& b) { return a *= b; }
  friend ComplexBall operator/(ComplexBall a, const ComplexBall& b) { return a /= b; }

 private:
  RealBall re_;
  RealBall im_;
};

RealBall abs(const ComplexBall& z);
RealBall abs2(const ComplexBall& z);
ComplexBall conj(const ComplexBall& z);
ComplexBall pow(const ComplexBall& z, unsigned long exponent);
bool intersects(const ComplexBall& a, const ComplexBall& b);

}  // namespace equilog
