#pragma once

#include <mpfr.h>
#include <gmpxx.h>

#include <string>
#include <utility>

namespace equilog {

// Owning wrapper around mpfr_t with value semantics.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = 64) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  BigFloat(mpfr_prec_t prec, long value) : BigFloat(prec) { mpfr_set_si(v_, value, MPFR_RNDN); }
  BigFloat(const BigFloat& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& other) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
  }
  BigFloat& operator=(const BigFloat& other) {
    if (this != &other) {
      mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  long double to_ld() const { return mpfr_get_ld(v_, MPFR_RNDN); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  // Scientific decimal string with `digits` significant digits.
  std::string to_decimal(int digits, mpfr_rnd_t rnd = MPFR_RNDN) const;

 private:
  mpfr_t v_;
};

}  // namespace equilog
