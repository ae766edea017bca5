#include "equilog/roots.hpp"

#include "equilog/error.hpp"
#include "equilog/factor.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace equilog {

std::size_t CertifiedRoots::count() const {
  std::size_t n = 0;
  for (const auto& r : roots) n += r.multiplicity;
  return n;
}

std::vector<ComplexBall> CertifiedRoots::flat() const {
  std::vector<ComplexBall> out;
  for (const auto& r : roots) {
    for (unsigned k = 0; k < r.multiplicity; ++k) out.push_back(r.z);
  }
  return out;
}

namespace {

// Plain MPFR complex number used for the refinement iterations (round to
// nearest; certification is done afterwards with balls).
struct MpComplex {
  BigFloat re, im;
  explicit MpComplex(mpfr_prec_t p) : re(p), im(p) {}
};

void horner_mp(const IntPoly& g, const MpComplex& z, MpComplex& p, MpComplex& dp, mpfr_prec_t prec) {
  BigFloat t1(prec), t2(prec), nr(prec);
  mpfr_set_zero(p.re.get(), 1);
  mpfr_set_zero(p.im.get(), 1);
  mpfr_set_zero(dp.re.get(), 1);
  mpfr_set_zero(dp.im.get(), 1);
  auto mul_add = [&](MpComplex& acc, const MpComplex* addc, const mpz_class* addz) {
    mpfr_mul(nr.get(), acc.re.get(), z.re.get(), MPFR_RNDN);
    mpfr_mul(t1.get(), acc.im.get(), z.im.get(), MPFR_RNDN);
    mpfr_sub(nr.get(), nr.get(), t1.get(), MPFR_RNDN);
    mpfr_mul(t1.get(), acc.re.get(), z.im.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), acc.im.get(), z.re.get(), MPFR_RNDN);
    mpfr_add(acc.im.get(), t1.get(), t2.get(), MPFR_RNDN);
    mpfr_swap(acc.re.get(), nr.get());
    if (addc) {
      mpfr_add(acc.re.get(), acc.re.get(), addc->re.get(), MPFR_RNDN);
      mpfr_add(acc.im.get(), acc.im.get(), addc->im.get(), MPFR_RNDN);
    }
    if (addz) mpfr_add_z(acc.re.get(), acc.re.get(), addz->get_mpz_t(), MPFR_RNDN);
  };
  const auto& c = g.coeffs();
  for (std::size_t k = c.size(); k-- > 0;) {
    mul_add(dp, &p, nullptr);
    mul_add(p, nullptr, &c[k]);
  }
}

// z <- z - p/dp; returns log2 of |correction| / max(1, |z|) (very negative when tiny).
double newton_step(const IntPoly& g, MpComplex& z, mpfr_prec_t prec) {
  MpComplex p(prec), dp(prec);
  horner_mp(g, z, p, dp, prec);
  BigFloat den(prec), t(prec), qr(prec), qi(prec);
  mpfr_sqr(den.get(), dp.re.get(), MPFR_RNDN);
  mpfr_sqr(t.get(), dp.im.get(), MPFR_RNDN);
  mpfr_add(den.get(), den.get(), t.get(), MPFR_RNDN);
  if (mpfr_zero_p(den.get())) return 0;
  // (p.re + i p.im)(dp.re - i dp.im) / den
  mpfr_mul(qr.get(), p.re.get(), dp.re.get(), MPFR_RNDN);
  mpfr_mul(t.get(), p.im.get(), dp.im.get(), MPFR_RNDN);
  mpfr_add(qr.get(), qr.get(), t.get(), MPFR_RNDN);
  mpfr_div(qr.get(), qr.get(), den.get(), MPFR_RNDN);
  mpfr_mul(qi.get(), p.im.get(), dp.re.get(), MPFR_RNDN);
  mpfr_mul(t.get(), p.re.get(), dp.im.get(), MPFR_RNDN);
  mpfr_sub(qi.get(), qi.get(), t.get(), MPFR_RNDN);
  mpfr_div(qi.get(), qi.get(), den.get(), MPFR_RNDN);
  mpfr_sub(z.re.get(), z.re.get(), qr.get(), MPFR_RNDN);
  mpfr_sub(z.im.get(), z.im.get(), qi.get(), MPFR_RNDN);
  mpfr_hypot(t.get(), qr.get(), qi.get(), MPFR_RNDN);
  if (mpfr_zero_p(t.get())) return -1e9;
  mpfr_hypot(den.get(), z.re.get(), z.im.get(), MPFR_RNDN);
  long double rel = t.to_ld() / std::max<long double>(1, den.to_ld());
  if (rel == 0) return -1e9;
  long e = 0;
  double m = mpfr_get_d_2exp(&e, t.get(), MPFR_RNDN);
  double lz = std::max(0.0, static_cast<double>(std::log2(std::max<long double>(1, den.to_ld()))));
  return std::log2(std::fabs(m)) + static_cast<double>(e) - lz;
}

// One Aberth step at high precision (Gauss-Seidel form); used only when
// Newton refinement fails to separate the disks.
void aberth_step_mp(const IntPoly& g, std::vector<MpComplex>& z, mpfr_prec_t prec) {
  const std::size_t m = z.size();
  for (std::size_t i = 0; i < m; ++i) {
    ComplexBall zi(RealBall::from_bounds(prec, z[i].re.get(), z[i].re.get()),
                   RealBall::from_bounds(prec, z[i].im.get(), z[i].im.get()));
    MpComplex p(prec), dp(prec);
    horner_mp(g, z[i], p, dp, prec);
    ComplexBall pb(RealBall::from_bounds(prec, p.re.get(), p.re.get()),
                   RealBall::from_bounds(prec, p.im.get(), p.im.get()));
    ComplexBall dpb(RealBall::from_bounds(prec, dp.re.get(), dp.re.get()),
                    RealBall::from_bounds(prec, dp.im.get(), dp.im.get()));
    if (abs2(dpb).contains_zero() || abs2(pb).contains_zero()) continue;
    ComplexBall ratio = pb / dpb;
    ComplexBall s(RealBall(prec, 0L), RealBall(prec, 0L));
    bool ok = true;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      ComplexBall zj(RealBall::from_bounds(prec, z[j].re.get(), z[j].re.get()),
                     RealBall::from_bounds(prec, z[j].im.get(), z[j].im.get()));
      ComplexBall diff = zi - zj;
      if (abs2(diff).contains_zero()) {
        ok = false;
        break;
      }
      s += ComplexBall(RealBall(prec, 1L), RealBall(prec, 0L)) / diff;
    }
    if (!ok) continue;
    ComplexBall den = ComplexBall(RealBall(prec, 1L), RealBall(prec, 0L)) - ratio * s;
    if (abs2(den).contains_zero()) continue;
    ComplexBall corr = ratio / den;
    BigFloat cr = corr.re().midpoint(), ci = corr.im().midpoint();
    mpfr_sub(z[i].re.get(), z[i].re.get(), cr.get(), MPFR_RNDN);
    mpfr_sub(z[i].im.get(), z[i].im.get(), ci.get(), MPFR_RNDN);
  }
}

ComplexBall point_ball(const MpComplex& z, mpfr_prec_t prec) {
  return ComplexBall(RealBall::from_bounds(prec, z.re.get(), z.re.get()),
                     RealBall::from_bounds(prec, z.im.get(), z.im.get()));
}

}  // namespace

ComplexBall eval_ball(const IntPoly& g, const ComplexBall& z) {
  const mpfr_prec_t prec = z.prec();
  ComplexBall acc(RealBall(prec, 0L), RealBall(prec, 0L));
  const auto& c = g.coeffs();
  for (std::size_t k = c.size(); k-- > 0;) {
    acc *= z;
    acc += ComplexBall(RealBall(prec, c[k]), RealBall(prec, 0L));
  }
  return acc;
}

namespace {

// Inclusion radii rho_i = m |g(z_i)| / (|lc| prod_{j != i} |z_i - z_j|); the
// disks D(z_i, rho_i) contain all roots, and a component of k disks contains
// exactly k roots. Returns false if some radius cannot be bounded or two disks
// meet.
bool certify(const IntPoly& g, const std::vector<MpComplex>& z, mpfr_prec_t prec,
             std::vector<BigFloat>& radii) {
  const std::size_t m = z.size();
  radii.assign(m, BigFloat(64));
  std::vector<ComplexBall> zb;
  zb.reserve(m);
  for (const auto& zi : z) zb.push_back(point_ball(zi, prec));
  RealBall lc = abs(RealBall(prec, g.leading()));
  for (std::size_t i = 0; i < m; ++i) {
    RealBall num = abs(eval_ball(g, zb[i])) * RealBall(prec, static_cast<long>(m));
    RealBall den = lc;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      den *= abs(zb[i] - zb[j]);
    }
    if (!den.is_positive()) return false;
    RealBall rho = num / den;
    mpfr_set(radii[i].get(), rho.upper().get(), MPFR_RNDU);
  }
  // Pairwise separation, checked with outward-rounded 64-bit intervals.
  std::vector<ComplexBall> zl;
  zl.reserve(m);
  for (const auto& zi : z) {
    zl.emplace_back(RealBall::from_bounds(64, zi.re.get(), zi.re.get()),
                    RealBall::from_bounds(64, zi.im.get(), zi.im.get()));
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      RealBall dist = abs(zl[i] - zl[j]);
      RealBall rsum = RealBall::from_bounds(64, radii[i].get(), radii[i].get()) +
                      RealBall::from_bounds(64, radii[j].get(), radii[j].get());
      if (!certainly_gt(dist, rsum)) return false;
    }
  }
  return true;
}

ComplexBall disk_to_ball(const MpComplex& z, const BigFloat& r, mpfr_prec_t prec) {
  RealBall rr = RealBall::from_bounds(prec, r.get(), r.get());
  RealBall re = RealBall::from_bounds(prec, z.re.get(), z.re.get());
  RealBall im = RealBall::from_bounds(prec, z.im.get(), z.im.get());
  RealBall span = RealBall::hull(-rr, rr);
  return ComplexBall(re + span, im + span);
}

std::vector<ComplexBall> roots_linear(const IntPoly& g, mpfr_prec_t prec) {
  mpq_class r(-g[0], g[1]);
  r.canonicalize();
  return {ComplexBall(prec, r, 0)};
}

std::vector<ComplexBall> roots_quadratic(const IntPoly& g, mpfr_prec_t prec) {
  const mpz_class &a = g[2], b = g[1], c = g[0];
  mpz_class disc = b * b - 4 * a * c;
  mpz_class adisc = abs(disc);
  mpz_class s;
  mpz_sqrt(s.get_mpz_t(), adisc.get_mpz_t());
  bool square = (s * s == adisc);
  mpq_class base(-b, 2 * a);
  base.canonicalize();
  RealBall two_a(prec, mpz_class(2 * a));
  RealBall root_part = square ? RealBall(prec, s) : sqrt(RealBall(prec, adisc));
  RealBall delta = root_part / two_a;
  if (disc >= 0) {
    RealBall bb(prec, base);
    return {ComplexBall(bb + delta, RealBall(prec, 0L)), ComplexBall(bb - delta, RealBall(prec, 0L))};
  }
  return {ComplexBall(RealBall(prec, base), delta), ComplexBall(RealBall(prec, base), -delta)};
}

std::vector<ComplexBall> roots_general(const IntPoly& g, mpfr_prec_t prec, const RootOptions& opts) {
  const std::size_t m = g.deg();
  std::vector<long double> c = kernels::to_long_double(g);
  // Initial points on a circle of radius |a_0/a_d|^(1/m), rotated off the axes.
  long double r0 = std::pow(std::fabs(c[0] / c[m]), 1.0L / static_cast<long double>(m));
  if (!std::isfinite(r0) || r0 == 0) r0 = 1;
  std::vector<kernels::cld> zl(m);
  for (std::size_t k = 0; k < m; ++k) {
    long double ang = 2 * std::numbers::pi_v<long double> * static_cast<long double>(k) /
                          static_cast<long double>(m) +
                      0.4L;
    zl[k] = std::polar(r0, ang);
  }
  for (int it = 0; it < 2000; ++it) {
    long double worst = kernels::aberth_sweep(c, zl, opts.exec);
    if (worst < 1e-18L) break;
  }

  for (mpfr_prec_t p = prec; p <= opts.cap; p *= 2) {
    const mpfr_prec_t work = p + 32 + static_cast<mpfr_prec_t>(std::log2(static_cast<double>(m)) + 1);
    std::vector<MpComplex> z;
    z.reserve(m);
    for (const auto& v : zl) {
      MpComplex mc(work);
      mpfr_set_ld(mc.re.get(), v.real(), MPFR_RNDN);
      mpfr_set_ld(mc.im.get(), v.imag(), MPFR_RNDN);
      z.push_back(std::move(mc));
    }
    for (int attempt = 0; attempt < 3; ++attempt) {
      // Newton refinement until corrections fall below the working precision.
      for (std::size_t i = 0; i < m; ++i) {
        for (int it = 0; it < 200; ++it) {
          double lg = newton_step(g, z[i], work);
          if (lg < -static_cast<double>(work) + 4) break;
        }
      }
      std::vector<BigFloat> radii;
      if (certify(g, z, work, radii)) {
        std::vector<ComplexBall> out;
        out.reserve(m);
        for (std::size_t i = 0; i < m; ++i) out.push_back(disk_to_ball(z[i], radii[i], work));
        return out;
      }
      // Newton may have sent two approximations to one root; Aberth steps
      // repel them.
      for (int k = 0; k < 20; ++k) aberth_step_mp(g, z, work);
    }
    // Keep the best approximations found for the next precision level.
    for (std::size_t i = 0; i < m; ++i) zl[i] = kernels::cld(z[i].re.to_ld(), z[i].im.to_ld());
  }
  throw Error(ErrorKind::precision_exhausted,
              "root inclusion disks did not separate up to " + std::to_string(opts.cap) + " bits");
}

long double order_key(const RealBall& x) {
  // Rounded to 40 significant bits so that equal real parts (conjugate pairs)
  // compare equal regardless of the working precision.
  long double v = x.mid_ld();
  if (v == 0) return 0;
  int e = 0;
  long double m = std::frexp(v, &e);
  m = std::nearbyint(std::ldexp(m, 40));
  long double out = std::ldexp(m, e - 40);
  return std::fabs(out) < 1e-30L ? 0 : out;
}

struct CacheKey {
  std::string poly;
  mpfr_prec_t prec;
  bool operator<(const CacheKey& o) const {
    return prec != o.prec ? prec < o.prec : poly < o.poly;
  }
};

std::mutex cache_mutex;
std::map<CacheKey, CertifiedRoots> root_cache;

CertifiedRoots compute_roots(const IntPoly& p, mpfr_prec_t prec, const RootOptions& opts) {
  CertifiedRoots out;
  out.polynomial = p;
  out.precision_bits = prec;
  auto [k, rest] = strip_x_power(p);
  std::vector<RootCluster> clusters;
  if (k > 0) {
    clusters.push_back({ComplexBall(RealBall(prec, 0L), RealBall(prec, 0L)), static_cast<unsigned>(k)});
  }
  if (rest.deg() > 0) {
    std::vector<IntPoly> parts;
    if (rest.deg() <= 2 || squarefree_prime(rest, 3, {}, 100)) {
      parts.push_back(primitive_part(rest));
    } else {
      parts = squarefree_decomposition(rest);
    }
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const IntPoly& g = parts[i];
      if (g.deg() == 0) continue;
      std::vector<ComplexBall> zs;
      if (g.deg() == 1) {
        zs = roots_linear(g, prec);
      } else if (g.deg() == 2) {
        zs = roots_quadratic(g, prec);
      } else {
        zs = roots_general(g, prec, opts);
      }
      for (auto& z : zs) {
        if (z.prec() > out.precision_bits) out.precision_bits = z.prec();
        clusters.push_back({std::move(z), static_cast<unsigned>(i + 1)});
      }
    }
  }
  std::stable_sort(clusters.begin(), clusters.end(), [](const RootCluster& a, const RootCluster& b) {
    long double ka = order_key(a.z.re()), kb = order_key(b.z.re());
    if (ka != kb) return ka < kb;
    return a.z.im().mid_ld() < b.z.im().mid_ld();
  });
  out.roots = std::move(clusters);
  return out;
}

}  // namespace

CertifiedRoots complex_roots(const IntPoly& p, mpfr_prec_t precision_bits, const RootOptions& opts) {
  require(!p.is_zero() && p.deg() >= 1, ErrorKind::precondition,
          "complex_roots needs a nonconstant polynomial");
  CacheKey key{p.to_dense_string(), precision_bits};
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = root_cache.find(key);
    if (it != root_cache.end()) return it->second;
  }
  CertifiedRoots out = compute_roots(p, precision_bits, opts);
  std::lock_guard<std::mutex> lock(cache_mutex);
  if (root_cache.size() > 512) root_cache.clear();
  root_cache.emplace(std::move(key), out);
  return out;
}

void clear_root_cache() {
  std::lock_guard<std::mutex> lock(cache_mutex);
  root_cache.clear();
}

RealBall mahler_measure(const CertifiedRoots& roots) {
  const IntPoly& p = roots.polynomial;
  const mpfr_prec_t prec = roots.precision_bits;
  RealBall one(prec, 1L);
  RealBall primal = abs(RealBall(prec, p.leading()));
  auto [k, rest] = strip_x_power(p);
  RealBall dual = abs(RealBall(prec, rest.constant_term()));
  bool dual_ok = true;
  for (const auto& r : roots.roots) {
    RealBall a = abs(r.z);
    if (a.is_exact() && a.upper().is_zero()) continue;  // a root at 0
    RealBall f = pow(max(one, a), static_cast<long>(r.multiplicity));
    primal *= f;
    if (dual_ok) {
      if (!a.is_positive()) {
        dual_ok = false;
      } else {
        dual *= pow(max(one, one / a), static_cast<long>(r.multiplicity));
      }
    }
  }
  if (!dual_ok) return primal;
  auto both = intersection(primal, dual);
  require(both.has_value(), ErrorKind::internal, "Mahler measure enclosures are disjoint");
  return *both;
}

RealBall mahler_measure(const IntPoly& p, mpfr_prec_t precision_bits) {
  require(!p.is_zero(), ErrorKind::precondition, "Mahler measure of the zero polynomial");
  if (p.deg() == 0) return abs(RealBall(precision_bits, p.leading()));
  return mahler_measure(complex_roots(p, precision_bits));
}

RealBall log_mahler_measure(const IntPoly& p, mpfr_prec_t precision_bits) {
  return log(mahler_measure(p, precision_bits));
}

namespace {

long double trapezoid(const IntPoly& p, std::size_t n, mpfr_prec_t prec, kernels::Exec exec) {
  std::vector<long double> samples;
  bool hit = false;
  if (prec <= 64) {
    kernels::log_abs_samples_ld(kernels::to_long_double(p), n, 0.5L, samples, hit, exec);
  } else {
    kernels::log_abs_samples_mpfr(p, n, 0.5L, prec, samples, hit, exec);
  }
  if (hit) throw Error(ErrorKind::grid_degenerate, "a quadrature node is a root");
  long double s = 0;
  for (long double v : samples) s += v;
  return s / static_cast<long double>(n);
}

}  // namespace

QuadratureEstimate log_mahler_quadrature(const IntPoly& p, std::size_t grid, mpfr_prec_t prec,
                                         kernels::Exec exec) {
  require(!p.is_zero(), ErrorKind::precondition, "quadrature of the zero polynomial");
  require(grid >= 2, ErrorKind::precondition, "quadrature grid must have at least 2 nodes");
  QuadratureEstimate q;
  q.grid = grid;
  q.value = trapezoid(p, grid, prec, exec);
  q.heuristic_error = std::fabs(q.value - trapezoid(p, grid / 2, prec, exec));
  return q;
}

QuadratureEstimate log_mahler_quadrature_adaptive(const IntPoly& p, long double tol, std::size_t max_grid,
                                                  mpfr_prec_t prec, kernels::Exec exec) {
  QuadratureEstimate q;
  for (std::size_t n = 64; n <= max_grid; n *= 2) {
    q = log_mahler_quadrature(p, n, prec, exec);
    if (q.heuristic_error < tol) break;
  }
  return q;
}

}  // namespace equilog
