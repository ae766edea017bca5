#include "equilog/ball.hpp"

#include "equilog/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace equilog {

std::string BigFloat::to_decimal(int digits, mpfr_rnd_t rnd) const {
  if (mpfr_zero_p(v_)) return "0";
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  mpfr_exp_t exp10 = 0;
  char* raw = mpfr_get_str(nullptr, &exp10, 10, static_cast<size_t>(digits), v_, rnd);
  std::string s(raw);
  mpfr_free_str(raw);
  std::string sign;
  if (!s.empty() && s[0] == '-') {
    sign = "-";
    s.erase(0, 1);
  }
  std::string out = sign + s.substr(0, 1);
  if (s.size() > 1) out += "." + s.substr(1);
  out += "e" + std::to_string(static_cast<long>(exp10) - 1);
  return out;
}

namespace {

mpfr_prec_t pmax(mpfr_prec_t a, mpfr_prec_t b) { return a > b ? a : b; }

}  // namespace

RealBall::RealBall(mpfr_prec_t prec) : lo_(prec), hi_(prec) {}

RealBall::RealBall(mpfr_prec_t prec, long value) : lo_(prec), hi_(prec) {
  mpfr_set_si(lo_.get(), value, MPFR_RNDD);
  mpfr_set_si(hi_.get(), value, MPFR_RNDU);
}

RealBall::RealBall(mpfr_prec_t prec, const mpz_class& value) : lo_(prec), hi_(prec) {
  mpfr_set_z(lo_.get(), value.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi_.get(), value.get_mpz_t(), MPFR_RNDU);
}

RealBall::RealBall(mpfr_prec_t prec, const mpq_class& value) : lo_(prec), hi_(prec) {
  mpfr_set_q(lo_.get(), value.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_.get(), value.get_mpq_t(), MPFR_RNDU);
}

RealBall::RealBall(const BigFloat& a, const BigFloat& b) : lo_(a.prec()), hi_(a.prec()) {
  if (mpfr_cmp(a.get(), b.get()) <= 0) {
    mpfr_set(lo_.get(), a.get(), MPFR_RNDD);
    mpfr_set(hi_.get(), b.get(), MPFR_RNDU);
  } else {
    mpfr_set(lo_.get(), b.get(), MPFR_RNDD);
    mpfr_set(hi_.get(), a.get(), MPFR_RNDU);
  }
}

RealBall RealBall::from_double(mpfr_prec_t prec, double value) {
  RealBall r(prec);
  mpfr_set_d(r.lo_.get(), value, MPFR_RNDD);
  mpfr_set_d(r.hi_.get(), value, MPFR_RNDU);
  return r;
}

RealBall RealBall::from_bounds(mpfr_prec_t prec, mpfr_srcptr lo, mpfr_srcptr hi) {
  RealBall r(prec);
  mpfr_set(r.lo_.get(), lo, MPFR_RNDD);
  mpfr_set(r.hi_.get(), hi, MPFR_RNDU);
  if (mpfr_cmp(r.lo_.get(), r.hi_.get()) > 0) mpfr_swap(r.lo_.get(), r.hi_.get());
  return r;
}

RealBall RealBall::pi(mpfr_prec_t prec) {
  RealBall r(prec);
  mpfr_const_pi(r.lo_.get(), MPFR_RNDD);
  mpfr_const_pi(r.hi_.get(), MPFR_RNDU);
  return r;
}

RealBall RealBall::log2(mpfr_prec_t prec) {
  RealBall r(prec);
  mpfr_const_log2(r.lo_.get(), MPFR_RNDD);
  mpfr_const_log2(r.hi_.get(), MPFR_RNDU);
  return r;
}

RealBall RealBall::hull(const RealBall& a, const RealBall& b) {
  RealBall r(pmax(a.prec(), b.prec()));
  mpfr_min(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_max(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return r;
}

BigFloat RealBall::midpoint() const {
  BigFloat m(prec());
  mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return m;
}

BigFloat RealBall::radius() const {
  BigFloat m = midpoint();
  BigFloat a(64), b(64);
  mpfr_sub(a.get(), hi_.get(), m.get(), MPFR_RNDU);
  mpfr_sub(b.get(), m.get(), lo_.get(), MPFR_RNDU);
  if (mpfr_cmp(a.get(), b.get()) < 0) return b;
  return a;
}

bool RealBall::contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }

bool RealBall::contains(const RealBall& other) const {
  return mpfr_cmp(lo_.get(), other.lo_.get()) <= 0 && mpfr_cmp(hi_.get(), other.hi_.get()) >= 0;
}

bool RealBall::is_exact() const { return mpfr_equal_p(lo_.get(), hi_.get()) != 0; }

long double RealBall::mid_ld() const { return midpoint().to_ld(); }

double RealBall::log2_radius() const {
  BigFloat r = radius();
  if (r.is_zero()) return -1e9;
  long e = 0;
  double m = mpfr_get_d_2exp(&e, r.get(), MPFR_RNDN);
  return std::log2(std::fabs(m)) + static_cast<double>(e);
}

RealBall RealBall::operator-() const {
  RealBall r(prec());
  mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
  mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
  return r;
}

RealBall& RealBall::operator+=(const RealBall& o) {
  mpfr_prec_t p = pmax(prec(), o.prec());
  BigFloat lo(p), hi(p);
  mpfr_add(lo.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
  mpfr_add(hi.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
  lo_ = std::move(lo);
  hi_ = std::move(hi);
  return *this;
}

RealBall& RealBall::operator-=(const RealBall& o) {
  mpfr_prec_t p = pmax(prec(), o.prec());
  BigFloat lo(p), hi(p);
  mpfr_sub(lo.get(), lo_.get(), o.hi_.get(), MPFR_RNDD);
  mpfr_sub(hi.get(), hi_.get(), o.lo_.get(), MPFR_RNDU);
  lo_ = std::move(lo);
  hi_ = std::move(hi);
  return *this;
}

RealBall& RealBall::operator*=(const RealBall& o) {
  mpfr_prec_t p = pmax(prec(), o.prec());
  BigFloat lo(p), hi(p), t(p);
  mpfr_srcptr a[2] = {lo_.get(), hi_.get()};
  mpfr_srcptr b[2] = {o.lo_.get(), o.hi_.get()};
  bool first = true;
  for (auto x : a) {
    for (auto y : b) {
      mpfr_mul(t.get(), x, y, MPFR_RNDD);
      if (first || mpfr_cmp(t.get(), lo.get()) < 0) mpfr_set(lo.get(), t.get(), MPFR_RNDD);
      mpfr_mul(t.get(), x, y, MPFR_RNDU);
      if (first || mpfr_cmp(t.get(), hi.get()) > 0) mpfr_set(hi.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  lo_ = std::move(lo);
  hi_ = std::move(hi);
  return *this;
}

RealBall& RealBall::operator/=(const RealBall& o) {
  require(!o.contains_zero(), ErrorKind::internal, "ball division by a ball containing zero");
  mpfr_prec_t p = pmax(prec(), o.prec());
  BigFloat lo(p), hi(p), t(p);
  mpfr_srcptr a[2] = {lo_.get(), hi_.get()};
  mpfr_srcptr b[2] = {o.lo_.get(), o.hi_.get()};
  bool first = true;
  for (auto x : a) {
    for (auto y : b) {
      mpfr_div(t.get(), x, y, MPFR_RNDD);
      if (first || mpfr_cmp(t.get(), lo.get()) < 0) mpfr_set(lo.get(), t.get(), MPFR_RNDD);
      mpfr_div(t.get(), x, y, MPFR_RNDU);
      if (first || mpfr_cmp(t.get(), hi.get()) > 0) mpfr_set(hi.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  lo_ = std::move(lo);
  hi_ = std::move(hi);
  return *this;
}

std::string RealBall::mid_string() const {
  int digits = static_cast<int>(static_cast<double>(prec()) * 0.30103) + 2;
  return midpoint().to_decimal(digits);
}

std::string RealBall::rad_string() const { return radius().to_decimal(17, MPFR_RNDU); }

RealBall abs(const RealBall& x) {
  if (x.is_nonnegative()) return x;
  if (x.is_negative()) return -x;
  BigFloat zero(x.prec());
  BigFloat hi(x.prec());
  mpfr_neg(hi.get(), x.lower().get(), MPFR_RNDU);
  if (mpfr_cmp(hi.get(), x.upper().get()) < 0) mpfr_set(hi.get(), x.upper().get(), MPFR_RNDU);
  return RealBall::from_bounds(x.prec(), zero.get(), hi.get());
}

RealBall sqr(const RealBall& x) {
  RealBall a = abs(x);
  BigFloat lo(x.prec()), hi(x.prec());
  mpfr_sqr(lo.get(), a.lower().get(), MPFR_RNDD);
  mpfr_sqr(hi.get(), a.upper().get(), MPFR_RNDU);
  return RealBall::from_bounds(x.prec(), lo.get(), hi.get());
}

namespace {

template <class F>
RealBall monotone(const RealBall& x, F f) {
  BigFloat lo(x.prec()), hi(x.prec());
  f(lo.get(), x.lower().get(), MPFR_RNDD);
  f(hi.get(), x.upper().get(), MPFR_RNDU);
  return RealBall::from_bounds(x.prec(), lo.get(), hi.get());
}

}  // namespace

RealBall sqrt(const RealBall& x) {
  require(x.upper().sign() >= 0, ErrorKind::internal, "sqrt of a negative ball");
  BigFloat lo(x.prec()), hi(x.prec());
  if (x.lower().sign() > 0) mpfr_sqrt(lo.get(), x.lower().get(), MPFR_RNDD);
  mpfr_sqrt(hi.get(), x.upper().get(), MPFR_RNDU);
  return RealBall::from_bounds(x.prec(), lo.get(), hi.get());
}

RealBall cbrt(const RealBall& x) {
  return monotone(x, [](mpfr_ptr r, mpfr_srcptr a, mpfr_rnd_t rnd) { mpfr_cbrt(r, a, rnd); });
}

RealBall log(const RealBall& x) {
  require(x.is_positive(), ErrorKind::internal, "log of a ball not bounded away from zero");
  return monotone(x, [](mpfr_ptr r, mpfr_srcptr a, mpfr_rnd_t rnd) { mpfr_log(r, a, rnd); });
}

RealBall exp(const RealBall& x) {
  return monotone(x, [](mpfr_ptr r, mpfr_srcptr a, mpfr_rnd_t rnd) { mpfr_exp(r, a, rnd); });
}

RealBall pow(const RealBall& base, const RealBall& exponent) { return exp(exponent * log(base)); }

RealBall pow(const RealBall& base, long exponent) {
  if (exponent < 0) return RealBall(base.prec(), 1L) / pow(base, -exponent);
  RealBall result(base.prec(), 1L);
  if (exponent == 0) return result;
  // Even powers of a ball straddling zero are handled through |x|.
  RealBall b = (exponent % 2 == 0) ? abs(base) : base;
  unsigned long e = static_cast<unsigned long>(exponent);
  RealBall sq = b;
  while (e > 0) {
    if (e & 1UL) result *= sq;
    e >>= 1;
    if (e > 0) sq = sq.is_nonnegative() ? sq * sq : sqr(sq);
  }
  return result;
}

RealBall max(const RealBall& a, const RealBall& b) {
  mpfr_prec_t p = pmax(a.prec(), b.prec());
  BigFloat lo(p), hi(p);
  mpfr_max(lo.get(), a.lower().get(), b.lower().get(), MPFR_RNDD);
  mpfr_max(hi.get(), a.upper().get(), b.upper().get(), MPFR_RNDU);
  return RealBall::from_bounds(p, lo.get(), hi.get());
}

RealBall min(const RealBall& a, const RealBall& b) {
  mpfr_prec_t p = pmax(a.prec(), b.prec());
  BigFloat lo(p), hi(p);
  mpfr_min(lo.get(), a.lower().get(), b.lower().get(), MPFR_RNDD);
  mpfr_min(hi.get(), a.upper().get(), b.upper().get(), MPFR_RNDU);
  return RealBall::from_bounds(p, lo.get(), hi.get());
}

RealBall with_prec(const RealBall& x, mpfr_prec_t prec) {
  return RealBall::from_bounds(prec, x.lower().get(), x.upper().get());
}

bool certainly_lt(const RealBall& a, const RealBall& b) {
  return mpfr_cmp(a.upper().get(), b.lower().get()) < 0;
}
bool certainly_le(const RealBall& a, const RealBall& b) {
  return mpfr_cmp(a.upper().get(), b.lower().get()) <= 0;
}
bool certainly_gt(const RealBall& a, const RealBall& b) { return certainly_lt(b, a); }
bool certainly_ge(const RealBall& a, const RealBall& b) { return certainly_le(b, a); }
bool intersects(const RealBall& a, const RealBall& b) {
  return mpfr_cmp(a.lower().get(), b.upper().get()) <= 0 &&
         mpfr_cmp(b.lower().get(), a.upper().get()) <= 0;
}

std::optional<RealBall> intersection(const RealBall& a, const RealBall& b) {
  mpfr_prec_t prec = pmax(a.prec(), b.prec());
  BigFloat lo(prec), hi(prec);
  mpfr_max(lo.get(), a.lower().get(), b.lower().get(), MPFR_RNDD);
  mpfr_min(hi.get(), a.upper().get(), b.upper().get(), MPFR_RNDU);
  if (mpfr_cmp(lo.get(), hi.get()) > 0) return std::nullopt;
  return RealBall::from_bounds(prec, lo.get(), hi.get());
}

ComplexBall& ComplexBall::operator+=(const ComplexBall& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

ComplexBall& ComplexBall::operator-=(const ComplexBall& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

ComplexBall& ComplexBall::operator*=(const ComplexBall& o) {
  RealBall re = re_ * o.re_ - im_ * o.im_;
  RealBall im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

ComplexBall& ComplexBall::operator*=(const RealBall& o) {
  re_ *= o;
  im_ *= o;
  return *this;
}

ComplexBall& ComplexBall::operator/=(const ComplexBall& o) {
  RealBall den = abs2(o);
  require(!den.contains_zero(), ErrorKind::internal, "complex ball division by zero");
  ComplexBall num = *this * conj(o);
  re_ = num.re_ / den;
  im_ = num.im_ / den;
  return *this;
}

RealBall abs2(const ComplexBall& z) { return sqr(z.re()) + sqr(z.im()); }

RealBall abs(const ComplexBall& z) {
  // Endpoint magnitudes give a tighter enclosure than sqrt(abs2) on wide balls.
  RealBall ar = abs(z.re());
  RealBall ai = abs(z.im());
  mpfr_prec_t p = pmax(ar.prec(), ai.prec());
  BigFloat lo(p), hi(p), t(p);
  mpfr_sqr(lo.get(), ar.lower().get(), MPFR_RNDD);
  mpfr_sqr(t.get(), ai.lower().get(), MPFR_RNDD);
  mpfr_add(lo.get(), lo.get(), t.get(), MPFR_RNDD);
  mpfr_sqrt(lo.get(), lo.get(), MPFR_RNDD);
  mpfr_sqr(hi.get(), ar.upper().get(), MPFR_RNDU);
  mpfr_sqr(t.get(), ai.upper().get(), MPFR_RNDU);
  mpfr_add(hi.get(), hi.get(), t.get(), MPFR_RNDU);
  mpfr_sqrt(hi.get(), hi.get(), MPFR_RNDU);
  return RealBall::from_bounds(p, lo.get(), hi.get());
}

ComplexBall conj(const ComplexBall& z) { return {z.re(), -z.im()}; }

ComplexBall pow(const ComplexBall& z, unsigned long exponent) {
  ComplexBall result(RealBall(z.prec(), 1L), RealBall(z.prec(), 0L));
  ComplexBall sq = z;
  while (exponent > 0) {
    if (exponent & 1UL) result *= sq;
    exponent >>= 1;
    if (exponent > 0) sq *= ComplexBall(sq);
  }
  return result;
}

bool intersects(const ComplexBall& a, const ComplexBall& b) {
  return intersects(a.re(), b.re()) && intersects(a.im(), b.im());
}

}  // namespace equilog
