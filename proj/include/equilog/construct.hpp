#pragma once

// The counterexample constructions: exponent selection, the small-value
// polynomials A (archimedean and p-adic), the R_n = X^(n^2) P + q A(X^n) + delta q P
// assembly with its Eisenstein split R = S T, and the sequence l X^n Q(X) - 1
// for |kappa| != 1.

#include "equilog/ball.hpp"
#include "equilog/heights.hpp"
#include "equilog/intpoly.hpp"
#include "equilog/lattice.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace equilog {

struct ConstructConfig {
  mpfr_prec_t prec = kDefaultPrecision;
  std::uint64_t budget = kDefaultEnumerationBudget;
  unsigned padic_prec = kDefaultPadicPrecision;  // initial p-adic precision exponent
  unsigned long exponent_ceiling = 10000;        // search limit for find_exponents
  unsigned long n_min = 1;
  int jobs = 1;  // steps computed concurrently
};

// True if the archimedean embedding of kappa lies exactly on the unit circle:
// the minpoly is self-reciprocal and 1/conj(kappa) isolates to kappa itself.
bool on_unit_circle(const AlgebraicNumber& kappa, mpfr_prec_t prec = kDefaultPrecision);

// First `count` exponents n >= n_min with Im(kappa^n) >= 1/2 certified, n^2 >= d
// and H(kappa)^(2 sqrt n) > 6n.
std::vector<unsigned long> find_exponents(const AlgebraicNumber& kappa, std::size_t count,
                                          unsigned long n_min = 1,
                                          unsigned long ceiling = 10000,
                                          mpfr_prec_t prec = kDefaultPrecision);

// First `count` exponents n >= n_min with n^2 >= d, H(kappa)^(sqrt n) > n + 1
// and f = floor(n (n - sqrt n) h(kappa) / log p) >= 1.
std::vector<unsigned long> find_padic_exponents(const AlgebraicNumber& kappa, std::size_t count,
                                                unsigned long n_min = 1,
                                                unsigned long ceiling = 10000,
                                                mpfr_prec_t prec = kDefaultPrecision);

// Exact test of A(kappa^n) != 0 in Q[X]/(minpoly): the residue of A(X^n) is
// nonzero and coprime to the minpoly.
bool nonvanishing_at_power(const IntPoly& A, const IntPoly& minpoly, unsigned long n);

struct ArchA {
  IntPoly A;
  RealBall C;            // H^(2(n - sqrt n))
  RealBall eps;          // (y_1 C^(1-n))^(1/2)
  RealBall value;        // |A(kappa^n)|
  RealBall value_bound;  // sqrt(2) eps
  RealBall l1_bound;     // 6 n H^(2n)
  EnumerationStats stats;
};

ArchA build_arch_A(const AlgebraicNumber& kappa, unsigned long n,
                   mpfr_prec_t prec = kDefaultPrecision,
                   std::uint64_t budget = kDefaultEnumerationBudget);

struct PadicA {
  IntPoly A;
  unsigned long f = 0;
  std::size_t local_degree = 0;
  mpz_class Lambda;       // floor(p^(d_loc f / (n+1)))
  mpz_class Lambda_used;  // after a possible widening by p
  bool widened = false;
  mpq_class valuation;    // v_p(A(kappa^n)), exact, >= f
  RealBall l1_bound;      // (n + 1) H^(D n), times p after widening
  EnumerationStats stats;
};

PadicA build_padic_A(const AlgebraicNumber& kappa, unsigned long n,
                     mpfr_prec_t prec = kDefaultPrecision,
                     std::uint64_t budget = kDefaultEnumerationBudget);

struct QDelta {
  mpz_class q;
  int delta = 0;
};

// q = smallest prime not dividing P(0); delta = 1 iff q | A(0).
QDelta choose_q_delta(const IntPoly& P, const IntPoly& A);

// X^(n^2) P + q A(X^n) + delta q P, with the Eisenstein bookkeeping checked.
IntPoly assemble_R(const IntPoly& P, const IntPoly& A, unsigned long n, const mpz_class& q,
                   int delta);

struct FactorSplit {
  IntPoly S;  // product of all factors of degree <= max_deg, content and sign included
  IntPoly T;  // R / S, primitive with positive leading coefficient
  mpz_class aux_prime;
};

// Splits off every irreducible factor of degree <= max_deg. T is irreducible
// when R carries an Eisenstein certificate with e > max_deg.
FactorSplit extract_small_factors(const IntPoly& R, std::size_t max_deg,
                                  std::optional<mpz_class> aux_prime = std::nullopt,
                                  const std::vector<mpz_class>& skip = {});

// A certified inequality lhs <= rhs (or <, when strict) recorded on a step.
struct Assertion {
  std::string id;
  RealBall lhs;
  RealBall rhs;
  bool strict = false;
  bool passed = false;
};

// An exact statement recorded on a step.
struct ExactAssertion {
  std::string id;
  bool passed = false;
};

struct Envelopes {
  RealBall upper;   // limsup side
  RealBall lower;   // liminf side
  RealBall height;  // bound on h(alpha)
};

// The envelope formulas at a single n, outward-rounded.
Envelopes kappa_envelopes(const RealBall& h_kappa, std::size_t d, unsigned long n,
                          const mpz_class& q, const Place& nu);

struct SequenceStep {
  std::size_t k = 0;  // 1-based step index
  unsigned long n = 0;
  IntPoly A;
  IntPoly R;
  IntPoly S;
  IntPoly T;
  mpz_class q;
  int delta = 0;
  std::size_t eisenstein_e = 0;
  mpz_class aux_prime;
  // |A(kappa^n)|_nu and its claimed bound.
  RealBall A_value;
  RealBall A_bound;
  // p-adic data (f = 0 at infinity).
  unsigned long f = 0;
  std::optional<mpq_class> A_valuation;
  mpz_class Lambda;
  bool widened = false;
  EnumerationStats stats;
  RealBall avg;                          // (log|T(kappa)|_nu - log|t|_nu) / deg T
  std::optional<mpq_class> avg_log_p;    // avg = avg_log_p * log p at a prime
  RealBall height_alpha;                 // h(alpha) = log M(T) / deg T
  Envelopes env;
  std::vector<Assertion> assertions;
  std::vector<ExactAssertion> exact;

  bool all_passed() const;
};

// Steps for the first k_max viable exponents at nu. kappa must have the
// matching embedding (ArchEmbedding at infinity, PadicEmbedding at p).
std::vector<SequenceStep> build_kappa_sequence(const AlgebraicNumber& kappa, const Place& nu,
                                               std::size_t k_max,
                                               const ConstructConfig& config = {});

// A single step at a given exponent (no viability search).
SequenceStep build_kappa_step(const AlgebraicNumber& kappa, const Place& nu, unsigned long n,
                              std::size_t k, const ConstructConfig& config = {});

struct BmStep {
  unsigned long n = 0;
  bool reciprocal = false;
  IntPoly Q;        // minpoly of the working kappa, q_0 > 0
  mpz_class l;
  IntPoly minpoly;  // of alpha_n (reversed in the reciprocal branch)
  std::size_t eisenstein_e = 0;
  RealBall avg;
  RealBall closed_form;   // -log|l q_m|_nu / (n + m), or log|kappa'|_nu when reciprocal
  RealBall reference;     // log max(1, |kappa|_nu) for the input kappa
  RealBall error;         // E_n = |avg - reference|
  RealBall limit;         // |log |kappa|_nu|
  RealBall height_alpha;
  RealBall height_bound;  // log|lQ|_1 + m h(alpha), bounding n h(alpha)
  std::vector<Assertion> assertions;
  std::vector<ExactAssertion> exact;

  bool all_passed() const;
};

// Smallest prime not dividing q_m q_0.
mpz_class bm_prime(const IntPoly& Q);

std::vector<BmStep> build_bm_sequence(const AlgebraicNumber& kappa, const Place& nu,
                                      const std::vector<unsigned long>& ns,
                                      const ConstructConfig& config = {});

}  // namespace equilog
