#pragma once

// Certified complex root isolation, Mahler measure and the quadrature cross-check.

#include "equilog/ball.hpp"
#include "equilog/intpoly.hpp"
#include "equilog/kernels.hpp"

#include <cstddef>
#include <vector>

namespace equilog {

inline constexpr mpfr_prec_t kDefaultPrecision = 256;
inline constexpr mpfr_prec_t kPrecisionCap = 4096;

struct RootCluster {
  ComplexBall z;
  unsigned multiplicity = 1;
};

struct CertifiedRoots {
  IntPoly polynomial;
  // Canonically ordered: real part, then imaginary part of the midpoints.
  std::vector<RootCluster> roots;
  mpfr_prec_t precision_bits = 0;

  // Number of roots counted with multiplicity; equals deg(polynomial).
  std::size_t count() const;
  // Roots repeated according to multiplicity, in canonical order.
  std::vector<ComplexBall> flat() const;
};

struct RootOptions {
  mpfr_prec_t cap = kPrecisionCap;
  kernels::Exec exec = kernels::Exec::parallel;
};

// Enclosures of all complex roots. Starts at `precision_bits` and doubles up to
// the cap until the inclusion disks separate; throws precision_exhausted
// otherwise.
CertifiedRoots complex_roots(const IntPoly& p, mpfr_prec_t precision_bits = kDefaultPrecision,
                             const RootOptions& opts = {});

// Results are memoized per (polynomial, precision); benchmarks clear the memo
// between timed runs.
void clear_root_cache();

// Interval Horner evaluation at the precision of z.
ComplexBall eval_ball(const IntPoly& g, const ComplexBall& z);

// M(P) = |a_d| prod max(1, |root|), intersected with the reversal form
// |a_0'| prod max(1, 1/|root|) over the nonzero roots.
RealBall mahler_measure(const IntPoly& p, mpfr_prec_t precision_bits = kDefaultPrecision);
RealBall mahler_measure(const CertifiedRoots& roots);
// log M(P).
RealBall log_mahler_measure(const IntPoly& p, mpfr_prec_t precision_bits = kDefaultPrecision);

struct QuadratureEstimate {
  long double value = 0;            // trapezoid estimate of m(P)
  long double heuristic_error = 0;  // |Q_N - Q_{N/2}|
  std::size_t grid = 0;
  bool certified = false;           // always false: this is a cross-check only
};

// Trapezoid rule for m(P) = integral of log|P(e^{2 pi i t})| on the offset grid
// t_j = (j + 1/2)/grid; throws grid_degenerate if a sample hits a root.
QuadratureEstimate log_mahler_quadrature(const IntPoly& p, std::size_t grid,
                                         mpfr_prec_t precision_bits = 64,
                                         kernels::Exec exec = kernels::Exec::parallel);
// Doubles the grid from 64 up to max_grid until the heuristic error drops below tol.
QuadratureEstimate log_mahler_quadrature_adaptive(const IntPoly& p, long double tol,
                                                  std::size_t max_grid = 1U << 16,
                                                  mpfr_prec_t precision_bits = 64,
                                                  kernels::Exec exec = kernels::Exec::parallel);

}  // namespace equilog
