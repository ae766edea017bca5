#pragma once

// Data-parallel inner loops. Every kernel has a serial reference and an
// OpenMP variant computing bit-identical results (each output slot depends
// only on the inputs, and reductions are done serially by the caller).

#include "equilog/intpoly.hpp"

#include <mpfr.h>

#include <complex>
#include <cstddef>
#include <vector>

namespace equilog::kernels {

enum class Exec { serial, parallel };

using cld = std::complex<long double>;

// Coefficients a_0..a_d converted to long double.
std::vector<long double> to_long_double(const IntPoly& p);

// One Jacobi-form Aberth step: every new approximation is computed from the
// previous vector. Returns the largest relative correction.
long double aberth_sweep(const std::vector<long double>& coeffs, std::vector<cld>& z, Exec exec);

// log|P(exp(2 pi i t_j))| for t_j = (j + offset)/n, j = 0..n-1, in long double.
// Sets `hit` if some sample evaluates to exactly zero.
void log_abs_samples_ld(const std::vector<long double>& coeffs, std::size_t n, long double offset,
                        std::vector<long double>& out, bool& hit, Exec exec);

// Same at MPFR precision `prec`; values are returned rounded to long double
// after the logarithm, which keeps the heuristic estimate's accuracy far
// below its own discretization error.
void log_abs_samples_mpfr(const IntPoly& p, std::size_t n, long double offset, mpfr_prec_t prec,
                          std::vector<long double>& out, bool& hit, Exec exec);

}  // namespace equilog::kernels
