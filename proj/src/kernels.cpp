#include "equilog/kernels.hpp"

#include <cmath>
#include <numbers>

namespace equilog::kernels {

std::vector<long double> to_long_double(const IntPoly& p) {
  std::vector<long double> out;
  out.reserve(p.coeffs().size());
  mpfr_t t;
  mpfr_init2(t, 64);
  for (const auto& a : p.coeffs()) {
    mpfr_set_z(t, a.get_mpz_t(), MPFR_RNDN);
    out.push_back(mpfr_get_ld(t, MPFR_RNDN));
  }
  mpfr_clear(t);
  return out;
}

namespace {

inline void horner2(const std::vector<long double>& c, cld z, cld& p, cld& dp) {
  p = 0;
  dp = 0;
  for (std::size_t k = c.size(); k-- > 0;) {
    dp = dp * z + p;
    p = p * z + c[k];
  }
}

inline long double aberth_one(const std::vector<long double>& c, const std::vector<cld>& z,
                              std::size_t i, cld& out) {
  cld p, dp;
  horner2(c, z[i], p, dp);
  if (p == cld(0)) {
    out = z[i];
    return 0;
  }
  cld ratio = p / dp;
  cld s = 0;
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (j != i) s += cld(1) / (z[i] - z[j]);
  }
  cld corr = ratio / (cld(1) - ratio * s);
  if (!std::isfinite(corr.real()) || !std::isfinite(corr.imag())) corr = ratio;
  out = z[i] - corr;
  return std::abs(corr) / std::max<long double>(1, std::abs(z[i]));
}

}  // namespace

long double aberth_sweep(const std::vector<long double>& coeffs, std::vector<cld>& z, Exec exec) {
  const std::size_t n = z.size();
  std::vector<cld> next(n);
  std::vector<long double> rel(n);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) rel[i] = aberth_one(coeffs, z, i, next[i]);
  } else {
    for (std::size_t i = 0; i < n; ++i) rel[i] = aberth_one(coeffs, z, i, next[i]);
  }
  long double worst = 0;
  for (long double r : rel) worst = std::max(worst, r);
  z.swap(next);
  return worst;
}

namespace {

// A sample counts as a hit on a root when |P| is below 1e-15 |P|_1, i.e. at
// the level of the evaluation's own rounding error.
inline long double sample_ld(const std::vector<long double>& c, std::size_t n, long double offset,
                             std::size_t j, long double scale, bool& hit) {
  long double t = (static_cast<long double>(j) + offset) / static_cast<long double>(n);
  long double angle = 2 * std::numbers::pi_v<long double> * t;
  cld z(std::cos(angle), std::sin(angle));
  cld acc = 0;
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
  long double a = std::abs(acc);
  if (a <= scale * 1e-15L) {
    hit = true;
    return 0;
  }
  return std::log(a);
}

long double sample_mpfr(const IntPoly& p, std::size_t n, long double offset, mpfr_prec_t prec,
                        std::size_t j, long double log_floor, bool& hit) {
  mpfr_t t, c, s, re, im, tmp, nre;
  for (mpfr_ptr v : {t, c, s, re, im, tmp, nre}) mpfr_init2(v, prec);
  mpfr_const_pi(t, MPFR_RNDN);
  mpfr_mul_2ui(t, t, 1, MPFR_RNDN);
  mpfr_set_ld(tmp, static_cast<long double>(j) + offset, MPFR_RNDN);
  mpfr_mul(t, t, tmp, MPFR_RNDN);
  mpfr_div_ui(t, t, static_cast<unsigned long>(n), MPFR_RNDN);
  mpfr_sin_cos(s, c, t, MPFR_RNDN);
  mpfr_set_zero(re, 1);
  mpfr_set_zero(im, 1);
  const auto& co = p.coeffs();
  for (std::size_t k = co.size(); k-- > 0;) {
    // (re + i im) * (c + i s) + a_k
    mpfr_mul(nre, re, c, MPFR_RNDN);
    mpfr_mul(tmp, im, s, MPFR_RNDN);
    mpfr_sub(nre, nre, tmp, MPFR_RNDN);
    mpfr_mul(tmp, re, s, MPFR_RNDN);
    mpfr_mul(im, im, c, MPFR_RNDN);
    mpfr_add(im, im, tmp, MPFR_RNDN);
    mpfr_add_z(re, nre, co[k].get_mpz_t(), MPFR_RNDN);
  }
  mpfr_hypot(tmp, re, im, MPFR_RNDN);
  long double out = 0;
  if (mpfr_zero_p(tmp)) {
    hit = true;
  } else {
    mpfr_log(tmp, tmp, MPFR_RNDN);
    out = mpfr_get_ld(tmp, MPFR_RNDN);
    if (out < log_floor) hit = true;
  }
  for (mpfr_ptr v : {t, c, s, re, im, tmp, nre}) mpfr_clear(v);
  return out;
}

}  // namespace

void log_abs_samples_ld(const std::vector<long double>& coeffs, std::size_t n, long double offset,
                        std::vector<long double>& out, bool& hit, Exec exec) {
  out.assign(n, 0);
  std::vector<char> hits(n, 0);
  long double scale = 0;
  for (long double v : coeffs) scale += std::fabs(v);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (std::size_t j = 0; j < n; ++j) {
      bool h = false;
      out[j] = sample_ld(coeffs, n, offset, j, scale, h);
      hits[j] = h;
    }
  } else {
    for (std::size_t j = 0; j < n; ++j) {
      bool h = false;
      out[j] = sample_ld(coeffs, n, offset, j, scale, h);
      hits[j] = h;
    }
  }
  hit = false;
  for (char h : hits) hit = hit || h;
}

void log_abs_samples_mpfr(const IntPoly& p, std::size_t n, long double offset, mpfr_prec_t prec,
                          std::vector<long double>& out, bool& hit, Exec exec) {
  out.assign(n, 0);
  std::vector<char> hits(n, 0);
  long double scale = 0;
  for (long double v : to_long_double(p)) scale += std::fabs(v);
  const long double log_floor =
      std::log(scale) - static_cast<long double>(prec - 10) * std::numbers::ln2_v<long double>;
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (std::size_t j = 0; j < n; ++j) {
      bool h = false;
      out[j] = sample_mpfr(p, n, offset, prec, j, log_floor, h);
      hits[j] = h;
    }
  } else {
    for (std::size_t j = 0; j < n; ++j) {
      bool h = false;
      out[j] = sample_mpfr(p, n, offset, prec, j, log_floor, h);
      hits[j] = h;
    }
  }
  hit = false;
  for (char h : hits) hit = hit || h;
}

}  // namespace equilog::kernels
