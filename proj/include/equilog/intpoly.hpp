#pragma once

// Dense integer polynomials and the exact helpers built on them.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace equilog {

class ModPoly;

// Dense polynomial a_0 + a_1 X + ... + a_d X^d with arbitrary-precision
// integer coefficients. The zero polynomial has no coefficients and its
// degree is reported as std::nullopt (minus infinity).
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<mpz_class> coeffs);
  IntPoly(std::initializer_list<long> coeffs);

  static IntPoly constant(const mpz_class& c);
  static IntPoly monomial(const mpz_class& c, std::size_t k);
  static IntPoly x() { return monomial(1, 1); }

  bool is_zero() const { return c_.empty(); }
  std::optional<std::size_t> degree() const;
  // Degree of a nonzero polynomial; throws on zero.
  std::size_t deg() const;
  const std::vector<mpz_class>& coeffs() const { return c_; }
  // Coefficient of X^i, zero past the degree.
  mpz_class operator[](std::size_t i) const { return i < c_.size() ? c_[i] : mpz_class(0); }
  const mpz_class& leading() const;
  const mpz_class& constant_term() const;

  bool operator==(const IntPoly& o) const { return c_ == o.c_; }
  bool operator!=(const IntPoly& o) const { return c_ != o.c_; }
  // Canonical total order: degree first, then coefficients from the top.
  bool operator<(const IntPoly& o) const;

  IntPoly operator-() const;
  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  IntPoly& operator*=(const IntPoly& o);
  IntPoly& operator*=(const mpz_class& s);
  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(IntPoly a, const mpz_class& s) { return a *= s; }
  friend IntPoly operator*(const mpz_class& s, IntPoly a) { return a *= s; }

  // Exact division of every coefficient by s (s must divide each one).
  IntPoly divexact(const mpz_class& s) const;
  IntPoly derivative() const;
  // X^deg P(1/X).
  IntPoly reversed() const;
  // P(X + c).
  IntPoly shifted(const mpz_class& c) const;
  // P(-X).
  IntPoly negated_variable() const;
  mpz_class eval(const mpz_class& x) const;
  mpq_class eval(const mpq_class& x) const;

  template <class Ring>
  Ring horner(const Ring& x, const Ring& zero) const {
    Ring acc = zero;
    for (std::size_t i = c_.size(); i-- > 0;) {
      acc = acc * x;
      acc = acc + Ring(c_[i]);
    }
    return acc;
  }

  std::string to_string() const;       // human form, e.g. "5*X^2 - 6*X + 5"
  std::string to_dense_string() const;  // "a0,a1,...,ad"

 private:
  void trim();
  std::vector<mpz_class> c_;
};

// Parses either the dense list "a0,a1,...,ad" or the human form
// "5X^2 - 6x + 5" (case-insensitive variable, integer coefficients).
IntPoly parse_poly(std::string_view text);

mpz_class l1_norm(const IntPoly& p);
mpz_class l2_norm_sq(const IntPoly& p);
mpz_class max_norm(const IntPoly& p);
mpz_class content(const IntPoly& p);
// Primitive part with positive leading coefficient.
IntPoly primitive_part(const IntPoly& p);
IntPoly substitute_power(const IntPoly& p, std::size_t n);
// Strips the X^k factor; returns (k, P / X^k).
std::pair<std::size_t, IntPoly> strip_x_power(const IntPoly& p);
ModPoly reduce_mod(const IntPoly& p, const mpz_class& m);
// T with S*T == R, if it exists in Z[X].
std::optional<IntPoly> exact_divide(const IntPoly& r, const IntPoly& s);
// Greatest common divisor in Z[X], primitive with positive leading coefficient
// (content gcd included).
IntPoly gcd(const IntPoly& a, const IntPoly& b);
bool is_squarefree(const IntPoly& p);
// Yun's algorithm: p = c * prod f_i^i with primitive squarefree coprime f_i.
// Entry i-1 holds f_i (possibly constant 1).
std::vector<IntPoly> squarefree_decomposition(const IntPoly& p);

struct EisensteinCertificate {
  mpz_class prime;
  std::size_t e = 0;
};

// Maximal e with R mod q = X^e * S, S(0) != 0, provided e >= 1, R mod q != 0
// and q^2 does not divide R(0). R then has an irreducible factor of degree >= e.
std::optional<EisensteinCertificate> eisenstein_degree(const IntPoly& r, const mpz_class& q);

// ---------------------------------------------------------------------------
// Rational polynomials, used for exact evaluation in Q[X]/(P).

class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<mpq_class> coeffs);
  explicit RatPoly(const IntPoly& p);

  bool is_zero() const { return c_.empty(); }
  std::size_t deg() const;
  const std::vector<mpq_class>& coeffs() const { return c_; }
  mpq_class operator[](std::size_t i) const { return i < c_.size() ? c_[i] : mpq_class(0); }
  const mpq_class& leading() const { return c_.back(); }

  bool operator==(const RatPoly& o) const { return c_ == o.c_; }
  RatPoly& operator+=(const RatPoly& o);
  RatPoly& operator-=(const RatPoly& o);
  RatPoly& operator*=(const mpq_class& s);
  friend RatPoly operator+(RatPoly a, const RatPoly& b) { return a += b; }
  friend RatPoly operator-(RatPoly a, const RatPoly& b) { return a -= b; }
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator*(RatPoly a, const mpq_class& s) { return a *= s; }

  RatPoly monic() const;
  // Primitive integer polynomial proportional to this one.
  IntPoly to_primitive_int() const;

 private:
  void trim();
  std::vector<mpq_class> c_;
};

// Quotient and remainder in Q[X]; divisor nonzero.
std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b);
RatPoly gcd(const RatPoly& a, const RatPoly& b);  // monic, or zero

// Exact arithmetic in the quotient ring Q[X]/(modulus).
class QuotientRing {
 public:
  explicit QuotientRing(const IntPoly& modulus);
  const RatPoly& modulus() const { return mod_; }
  std::size_t degree() const { return mod_.deg(); }
  RatPoly reduce(const RatPoly& a) const;
  RatPoly mul(const RatPoly& a, const RatPoly& b) const;
  RatPoly pow(const RatPoly& a, const mpz_class& e) const;
  // P(x) for x in the ring.
  RatPoly eval(const IntPoly& p, const RatPoly& x) const;
  // Matrix of multiplication by a in the power basis (column j = a * X^j).
  std::vector<std::vector<mpq_class>> mult_matrix(const RatPoly& a) const;
  // Norm from Q[X]/(modulus) to Q (determinant of the multiplication matrix).
  mpq_class norm(const RatPoly& a) const;

 private:
  RatPoly mod_;
};

// Characteristic polynomial of a square rational matrix (Hessenberg method),
// returned monic.
RatPoly charpoly(std::vector<std::vector<mpq_class>> m);
mpq_class determinant(std::vector<std::vector<mpq_class>> m);

// Gaussian rationals a + b i, an exact field for evaluation oracles.
struct GaussianRational {
  mpq_class re;
  mpq_class im;

  GaussianRational() = default;
  GaussianRational(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {}
  explicit GaussianRational(const mpz_class& r) : re(r), im(0) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool operator==(const GaussianRational& o) const { return re == o.re && im == o.im; }
  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  mpq_class norm() const { return re * re + im * im; }
};

GaussianRational pow(const GaussianRational& z, std::size_t n);
GaussianRational eval_exact(const IntPoly& p, const GaussianRational& x);
mpq_class eval_exact(const IntPoly& p, const mpq_class& x);

}  // namespace equilog
