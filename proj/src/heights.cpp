#include "equilog/heights.hpp"

#include "equilog/error.hpp"
#include "equilog/factor.hpp"

#include <cmath>
#include <limits>

namespace equilog {

namespace {

IntPoly normalize(IntPoly p) {
  require(!p.is_zero() && p.deg() >= 1, ErrorKind::precondition,
          "a minimal polynomial must have degree at least 1");
  return primitive_part(p);
}

RealBall log_of(const mpq_class& q, mpfr_prec_t prec) { return log(abs(RealBall(prec, q))); }

RealBall log_p(const mpz_class& p, mpfr_prec_t prec) { return log(RealBall(prec, p)); }

}  // namespace

AlgebraicNumber::AlgebraicNumber(IntPoly minpoly, Embedding embedding, bool trusted)
    : minpoly_(normalize(std::move(minpoly))), embedding_(std::move(embedding)) {
  if (!trusted && minpoly_.deg() > 1) {
    require(is_irreducible(minpoly_), ErrorKind::precondition,
            minpoly_.to_string() + " is not irreducible");
  }
  if (const auto* pe = std::get_if<PadicEmbedding>(&embedding_)) {
    require(mpz_probab_prime_p(pe->p.get_mpz_t(), 30) != 0, ErrorKind::precondition,
            pe->p.get_str() + " is not prime");
  }
}

AlgebraicNumber AlgebraicNumber::rational(const mpq_class& q_in, Embedding embedding) {
  mpq_class q = q_in;
  q.canonicalize();
  return AlgebraicNumber(IntPoly({-q.get_num(), q.get_den()}), std::move(embedding), true);
}

AlgebraicNumber AlgebraicNumber::nearest(IntPoly minpoly, double re, double im, bool trusted) {
  AlgebraicNumber a(std::move(minpoly), ArchEmbedding{}, trusted);
  auto roots = complex_roots(a.minpoly_).flat();
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    double d = std::hypot(roots[i].re().mid_double() - re, roots[i].im().mid_double() - im);
    if (d < best) {
      best = d;
      best_i = i;
    }
  }
  a.embedding_ = ArchEmbedding{best_i};
  return a;
}

bool AlgebraicNumber::is_zero() const { return degree() == 1 && minpoly_[0] == 0; }

std::optional<mpq_class> AlgebraicNumber::rational_value() const {
  if (!is_rational()) return std::nullopt;
  mpq_class q(-minpoly_[0], minpoly_[1]);
  q.canonicalize();
  return q;
}

bool AlgebraicNumber::operator==(const AlgebraicNumber& o) const {
  if (!conjugate_of(o)) return false;
  if (is_rational()) return true;
  return embedding_ == o.embedding_;
}

AlgebraicNumber AlgebraicNumber::with_embedding(Embedding e) const {
  AlgebraicNumber out = *this;
  out.embedding_ = std::move(e);
  return out;
}

ComplexBall AlgebraicNumber::arch_value(mpfr_prec_t prec) const {
  if (auto q = rational_value()) return ComplexBall(prec, *q, 0);
  const auto* ae = std::get_if<ArchEmbedding>(&embedding_);
  require(ae != nullptr, ErrorKind::precondition, "no archimedean embedding for " + to_string());
  auto roots = complex_roots(minpoly_, prec).flat();
  require(ae->index < roots.size(), ErrorKind::precondition, "embedding index out of range");
  if (prec == kDefaultPrecision) return roots[ae->index];
  // Indices refer to the ordering at the default precision; revalidate.
  ComplexBall ref = complex_roots(minpoly_, kDefaultPrecision).flat()[ae->index];
  if (intersects(roots[ae->index], ref)) return roots[ae->index];
  for (const auto& r : roots) {
    if (intersects(r, ref)) return r;
  }
  throw Error(ErrorKind::internal, "embedding of " + to_string() + " not stable across precisions");
}

PadicPoint AlgebraicNumber::padic_point(const mpz_class& p, unsigned N) const {
  if (is_rational()) return PadicPoint(minpoly_, p, 0, N);
  const auto* pe = std::get_if<PadicEmbedding>(&embedding_);
  if (pe == nullptr || pe->p != p) {
    throw Error(ErrorKind::padic_context_unavailable,
                to_string() + " carries no embedding at p = " + p.get_str());
  }
  return PadicPoint(minpoly_, p, pe->index, N);
}

std::string AlgebraicNumber::to_string() const {
  std::string s = "root of " + minpoly_.to_string();
  if (const auto* ae = std::get_if<ArchEmbedding>(&embedding_)) {
    s += " [inf, " + std::to_string(ae->index) + "]";
  } else {
    const auto& pe = std::get<PadicEmbedding>(embedding_);
    s += " [" + pe.p.get_str() + ", " + std::to_string(pe.index) + "]";
  }
  return s;
}

Place Place::prime(const mpz_class& p) {
  require(mpz_probab_prime_p(p.get_mpz_t(), 30) != 0, ErrorKind::precondition,
          p.get_str() + " is not prime");
  Place out;
  out.p_ = p;
  return out;
}

const mpz_class& Place::p() const {
  require(p_.has_value(), ErrorKind::precondition, "the infinite place has no prime");
  return *p_;
}

std::string Place::to_string() const { return is_infinite() ? "inf" : p_->get_str(); }

RealBall weil_height(const IntPoly& minpoly, mpfr_prec_t prec) {
  IntPoly m = normalize(minpoly);
  return log_mahler_measure(m, prec) / RealBall(prec, static_cast<long>(m.deg()));
}

RealBall weil_height(const AlgebraicNumber& a, mpfr_prec_t prec) {
  return weil_height(a.minpoly(), prec);
}

RealBall modified_height(const IntPoly& minpoly, mpfr_prec_t prec) {
  const long d = static_cast<long>(minpoly.deg());
  RealBall dd(prec, d);
  return weil_height(minpoly, prec) + log(RealBall(prec, 2 * d)) / dd;
}

RealBall modified_height(const AlgebraicNumber& a, mpfr_prec_t prec) {
  return modified_height(a.minpoly(), prec);
}

unsigned long euler_phi(unsigned long n) {
  unsigned long out = n;
  for (unsigned long q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      while (n % q == 0) n /= q;
      out -= out / q;
    }
  }
  if (n > 1) out -= out / n;
  return out;
}

namespace {

int mobius(unsigned long n) {
  int sign = 1;
  for (unsigned long q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      n /= q;
      if (n % q == 0) return 0;
      sign = -sign;
    }
  }
  if (n > 1) sign = -sign;
  return sign;
}

}  // namespace

IntPoly cyclotomic(unsigned long n) {
  require(n >= 1, ErrorKind::precondition, "cyclotomic index must be positive");
  // Phi_n = prod_{k | n} (X^k - 1)^mu(n/k).
  IntPoly num = IntPoly::constant(1), den = IntPoly::constant(1);
  for (unsigned long k = 1; k <= n; ++k) {
    if (n % k != 0) continue;
    int mu = mobius(n / k);
    if (mu == 0) continue;
    IntPoly f = IntPoly::monomial(1, k) - IntPoly::constant(1);
    (mu > 0 ? num : den) = (mu > 0 ? num : den) * f;
  }
  auto q = exact_divide(num, den);
  require(q.has_value(), ErrorKind::internal, "cyclotomic division is not exact");
  return *q;
}

std::optional<unsigned long> is_root_of_unity(const IntPoly& P_in) {
  if (P_in.is_zero() || P_in.deg() == 0) return std::nullopt;
  IntPoly P = primitive_part(P_in);
  if (P.leading() != 1 || abs(P.constant_term()) != 1) return std::nullopt;
  const unsigned long d = P.deg();
  // phi(n) >= sqrt(n / 2), so phi(n) = d forces n <= 2 d^2.
  const unsigned long bound = 2 * d * d + 2;
  for (unsigned long n = 1; n <= bound; ++n) {
    if (euler_phi(n) != d) continue;
    if (cyclotomic(n) == P) return n;
  }
  return std::nullopt;
}

IntPoly minimal_poly_of_image(const AlgebraicNumber& a, const IntPoly& Q) {
  require(!Q.is_zero(), ErrorKind::precondition, "minimal polynomial of the image under zero");
  QuotientRing ring(a.minpoly());
  RatPoly x = ring.reduce(RatPoly(Q));
  if (x.is_zero()) return IntPoly({0, 1});
  if (x.deg() == 0) return RatPoly({-x[0], mpq_class(1)}).to_primitive_int();
  // The characteristic polynomial is a power of the minimal polynomial.
  RatPoly c = charpoly(ring.mult_matrix(x));
  std::vector<mpq_class> dc;
  for (std::size_t i = 1; i < c.coeffs().size(); ++i) dc.push_back(c.coeffs()[i] * i);
  RatPoly g = gcd(c, RatPoly(dc));
  RatPoly m = divmod(c, g).first;
  return m.to_primitive_int();
}

RealBall log_distance_average(const AlgebraicNumber& a, const AlgebraicNumber& kappa,
                              const Place& nu, mpfr_prec_t prec) {
  if (a.conjugate_of(kappa)) {
    throw Error(ErrorKind::conjugate_inputs, a.to_string() + " is a conjugate of kappa");
  }
  const IntPoly& T = a.minpoly();
  const RealBall d(prec, static_cast<long>(a.degree()));
  if (!nu.is_infinite()) {
    const mpz_class& p = nu.p();
    mpq_class v = kappa.padic_point(p).eval_valuation(T);
    mpq_class e = valuation(T.leading(), p) - v;
    return RealBall(prec, e) * log_p(p, prec) / d;
  }
  if (auto q = kappa.rational_value()) {
    mpq_class value = T.eval(*q);
    return (log_of(value, prec) - log_of(T.leading(), prec)) / d;
  }
  for (mpfr_prec_t w = prec; w <= kPrecisionCap; w *= 2) {
    ComplexBall z = kappa.arch_value(w);
    RealBall tz = abs(eval_ball(T, z));
    if (!tz.is_positive()) continue;
    RealBall dw(w, static_cast<long>(a.degree()));
    RealBall closed = (log(tz) - log_of(T.leading(), w)) / dw;
    // Independent route: the sum of log |root - kappa| over certified roots.
    RealBall sum(w, 0L);
    bool ok = true;
    for (const auto& r : complex_roots(T, w).flat()) {
      RealBall dist = abs(r - z);
      if (!dist.is_positive()) {
        ok = false;
        break;
      }
      sum += log(dist);
    }
    if (!ok) continue;
    auto both = intersection(closed, sum / dw);
    require(both.has_value(), ErrorKind::internal,
            "closed form and root sum disagree for the log-distance average");
    return *both;
  }
  throw Error(ErrorKind::precision_exhausted,
              "cannot separate kappa from the roots of " + T.to_string());
}

RealBall log_max_one(const AlgebraicNumber& kappa, const Place& nu, mpfr_prec_t prec) {
  const RealBall zero(prec, 0L);
  if (kappa.is_zero()) return zero;
  if (!nu.is_infinite()) {
    const mpz_class& p = nu.p();
    mpq_class v = kappa.padic_point(p).root_valuation();
    if (v >= 0) return zero;
    return RealBall(prec, mpq_class(-v)) * log_p(p, prec);
  }
  if (auto q = kappa.rational_value()) {
    if (abs(*q) <= 1) return zero;
    return log_of(*q, prec);
  }
  return log(max(RealBall(prec, 1L), abs(kappa.arch_value(prec))));
}

RealBall equidist_error(const AlgebraicNumber& a, const AlgebraicNumber& kappa, const Place& nu,
                        mpfr_prec_t prec) {
  return abs(log_distance_average(a, kappa, nu, prec) - log_max_one(kappa, nu, prec));
}

}  // namespace equilog
