#include "equilog/verify.hpp"

#include "equilog/error.hpp"
#include "equilog/factor.hpp"
#include "equilog/padics.hpp"
#include "equilog/roots.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>

namespace equilog {

namespace {

RealBall num(mpfr_prec_t prec, long v) { return RealBall(prec, v); }

RealBall unbounded(mpfr_prec_t prec) {
  BigFloat lo(prec), hi(prec);
  mpfr_set_inf(lo.get(), -1);
  mpfr_set_inf(hi.get(), 1);
  return RealBall::from_bounds(prec, lo.get(), hi.get());
}

// p^e for rational e; exact when e is an integer.
RealBall prime_power(const mpz_class& p, const mpq_class& e, mpfr_prec_t prec) {
  if (e.get_den() == 1) {
    mpz_class pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), mpz_class(abs(e.get_num())).get_ui());
    return e >= 0 ? RealBall(prec, pe) : RealBall(prec, mpq_class(1, pe));
  }
  return pow(RealBall(prec, p), RealBall(prec, e));
}

bool embedded_at(const AlgebraicNumber& a, const Place& nu) {
  if (a.is_rational()) return true;
  if (nu.is_infinite()) return std::holds_alternative<ArchEmbedding>(a.embedding());
  const auto* e = std::get_if<PadicEmbedding>(&a.embedding());
  return e != nullptr && e->p == nu.p();
}

// v_p(P(x)) for x rational or embedded at p.
mpq_class valuation_at(const IntPoly& P, const AlgebraicNumber& x, const mpz_class& p) {
  if (auto q = x.rational_value()) {
    mpq_class v = eval_exact(P, *q);
    require(v != 0, ErrorKind::vanishing_input, "P(x) = 0 for x = " + q->get_str());
    return mpq_class(valuation(v, p));
  }
  require(embedded_at(x, Place::prime(p)), ErrorKind::precondition,
          x.to_string() + " is not embedded at p = " + p.get_str());
  return x.padic_point(p).eval_valuation(P);
}

// (1/d) sum log|s - x|_p over the conjugates s of alpha, in units of log p.
mpq_class padic_average(const AlgebraicNumber& alpha, const AlgebraicNumber& x, const mpz_class& p) {
  const IntPoly& P = alpha.minpoly();
  mpq_class c = (mpq_class(valuation(P.leading(), p)) - valuation_at(P, x, p)) /
                mpq_class(static_cast<unsigned long>(P.deg()));
  c.canonicalize();
  return c;
}

unsigned long root_order(const AlgebraicNumber& zeta) {
  auto n = is_root_of_unity(zeta.minpoly());
  require(n.has_value(), ErrorKind::precondition, zeta.to_string() + " is not a root of unity");
  return *n;
}

void require_outside_mu_n(const AlgebraicNumber& alpha, unsigned long n) {
  auto k = is_root_of_unity(alpha.minpoly());
  require(!(k && n % *k == 0), ErrorKind::precondition,
          alpha.to_string() + " lies in mu_" + std::to_string(n));
}

void require_height_at_most(const AlgebraicNumber& alpha, const mpq_class& bound, mpfr_prec_t prec) {
  require(certainly_le(weil_height(alpha, prec), RealBall(prec, bound)), ErrorKind::precondition,
          "h(" + alpha.to_string() + ") <= " + bound.get_str() + " not certified");
}

// 40 h'^(1/3) log(4/h') and friends: c h'^(1/3) log(k/h').
RealBall cube_root_bound(long c, long k, const RealBall& hp) {
  const mpfr_prec_t prec = hp.prec();
  return num(prec, c) * cbrt(hp) * log(num(prec, k) / hp);
}

std::string place_text(const Place& nu) { return nu.to_string(); }

IntPoly power_poly(unsigned long n) { return IntPoly::monomial(1, n); }

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

std::string sha256_hex(std::string_view text) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  require(EVP_Digest(text.data(), text.size(), md.data(), &len, EVP_sha256(), nullptr) == 1,
          ErrorKind::internal, "SHA-256 failed");
  std::string out;
  out.reserve(2 * len);
  char buf[3];
  for (unsigned i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    out += buf;
  }
  return out;
}

CheckReport certify(std::string check_id, std::string inputs, mpfr_prec_t prec,
                    const CheckEval& eval, mpfr_prec_t max_prec) {
  CheckReport r;
  r.digest = sha256_hex(check_id + "|" + inputs).substr(0, 16);
  r.check_id = std::move(check_id);
  r.inputs = std::move(inputs);
  r.lhs = unbounded(prec);
  r.rhs = unbounded(prec);
  r.slack = unbounded(prec);
  mpfr_prec_t w = prec;
  for (unsigned esc = 0;; ++esc) {
    r.precision_used = w;
    r.escalations = esc;
    try {
      auto [lhs, rhs] = eval(w);
      r.lhs = std::move(lhs);
      r.rhs = std::move(rhs);
      r.slack = r.rhs - r.lhs;
      if (certainly_le(r.lhs, r.rhs)) {
        r.verdict = Verdict::pass;
        return r;
      }
      if (certainly_gt(r.lhs, r.rhs)) {
        r.verdict = Verdict::fail;
        return r;
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::precision_exhausted) throw;
    }
    if (2 * w > max_prec) {
      r.verdict = Verdict::indeterminate;
      return r;
    }
    w *= 2;
  }
}

RealBall log_abs_at_arch(const IntPoly& P, const AlgebraicNumber& kappa, mpfr_prec_t prec) {
  if (auto q = kappa.rational_value()) {
    mpq_class v = abs(eval_exact(P, *q));
    require(v != 0, ErrorKind::vanishing_input, "P(kappa) = 0");
    return log(RealBall(prec, v));
  }
  for (mpfr_prec_t w = prec + 64; w <= 8 * kMaxCheckPrecision; w *= 2) {
    RealBall a = abs(eval_ball(P, kappa.arch_value(w)));
    if (!a.is_positive()) continue;
    RealBall l = log(a);
    if (l.log2_radius() < -static_cast<double>(prec) / 2) return with_prec(l, prec);
  }
  throw Error(ErrorKind::precision_exhausted,
              "cannot separate P(kappa) from zero for kappa = " + kappa.to_string());
}

std::vector<CheckReport> check_sandwich(const IntPoly& P, mpfr_prec_t prec) {
  require(!P.is_zero(), ErrorKind::precondition, "check_sandwich needs P != 0");
  const std::string in = "P=" + P.to_string();
  const mpz_class l1 = l1_norm(P);
  const long d = static_cast<long>(P.deg());
  std::vector<CheckReport> out;
  out.push_back(certify("sandwich_lower", in, prec, [&](mpfr_prec_t w) {
    return std::pair{mahler_measure(P, w), RealBall(w, l1)};
  }));
  out.push_back(certify("sandwich_upper", in, prec, [&](mpfr_prec_t w) {
    return std::pair{RealBall(w, l1), pow(num(w, 2), d) * mahler_measure(P, w)};
  }));
  return out;
}

CheckReport check_liouville(const IntPoly& P, const AlgebraicNumber& kappa, const Place& nu,
                            mpfr_prec_t prec) {
  require(!P.is_zero(), ErrorKind::precondition, "check_liouville needs P != 0");
  require(embedded_at(kappa, nu), ErrorKind::precondition,
          kappa.to_string() + " is not embedded at " + nu.to_string());
  require(gcd(P, kappa.minpoly()).deg() == 0, ErrorKind::vanishing_input,
          "P(kappa) = 0 for P = " + P.to_string());
  const long D = static_cast<long>(P.deg());
  const long d = static_cast<long>(kappa.degree());
  const mpz_class l1 = l1_norm(P);
  std::optional<mpq_class> v;
  if (!nu.is_infinite()) v = valuation_at(P, kappa, nu.p());
  const std::string in =
      "P=" + P.to_string() + ";kappa=" + kappa.to_string() + ";nu=" + place_text(nu);
  return certify("liouville", in, prec, [&](mpfr_prec_t w) {
    // H^(-d deg P) = M(kappa)^(-deg P).
    RealBall lhs = num(w, 1) / (pow(mahler_measure(kappa.minpoly(), w), D) * pow(RealBall(w, l1), d));
    RealBall rhs = v ? prime_power(nu.p(), -*v, w) : exp(log_abs_at_arch(P, kappa, w));
    return std::pair{lhs, rhs};
  });
}

CheckReport check_height_image(const AlgebraicNumber& alpha, const IntPoly& Q, mpfr_prec_t prec) {
  require(!Q.is_zero(), ErrorKind::precondition, "check_height_image needs Q != 0");
  const IntPoly image = minimal_poly_of_image(alpha, Q);
  const long d = static_cast<long>(alpha.degree());
  const long dp = static_cast<long>(image.deg());
  const long m = static_cast<long>(Q.deg());
  const mpz_class l1 = l1_norm(Q);
  const std::string in = "alpha=" + alpha.minpoly().to_string() + ";Q=" + Q.to_string();
  return certify("height_image", in, prec, [&](mpfr_prec_t w) {
    RealBall lhs = pow(mahler_measure(image, w), d);
    RealBall rhs = pow(RealBall(w, l1), d * dp) * pow(mahler_measure(alpha.minpoly(), w), m * dp);
    return std::pair{lhs, rhs};
  });
}

std::vector<CheckReport> check_hprime_rules(const AlgebraicNumber& alpha, unsigned long n,
                                            mpfr_prec_t prec) {
  require(n >= 1, ErrorKind::precondition, "check_hprime_rules needs n >= 1");
  const IntPoly Pn = minimal_poly_of_image(alpha, power_poly(n));
  const bool same = Pn == alpha.minpoly();
  const std::size_t d = alpha.degree();
  auto ratio = [&](mpfr_prec_t w) {
    if (same) return num(w, 1);
    return modified_height(Pn, w) / modified_height(alpha.minpoly(), w);
  };
  const std::string in = "alpha=" + alpha.minpoly().to_string() + ";n=" + std::to_string(n);
  std::vector<CheckReport> out;
  out.push_back(certify("hprime_upper", in, prec, [&](mpfr_prec_t w) {
    return std::pair{ratio(w), RealBall(w, mpz_class(n))};
  }));
  if (2 * d >= n * n) {
    out.push_back(certify("hprime_lower", in, prec, [&](mpfr_prec_t w) {
      return std::pair{RealBall(w, mpq_class(1, 2)), ratio(w)};
    }));
  }
  return out;
}

CheckReport check_arch_upper(const AlgebraicNumber& u, const AlgebraicNumber& alpha,
                             mpfr_prec_t prec) {
  require(on_unit_circle(u, prec), ErrorKind::precondition, u.to_string() + " is not on the unit circle");
  require(alpha.minpoly() != u.minpoly(), ErrorKind::conjugate_inputs,
          "u is a conjugate of alpha");
  require_height_at_most(alpha, 1, prec);
  const std::string in = "u=" + u.to_string() + ";alpha=" + alpha.minpoly().to_string();
  return certify("arch_upper", in, prec, [&](mpfr_prec_t w) {
    RealBall avg = log_distance_average(alpha, u, Place::infinity(), w);
    return std::pair{avg, cube_root_bound(64, 4, modified_height(alpha, w))};
  });
}

CheckReport check_rootunity_error(const AlgebraicNumber& zeta, const AlgebraicNumber& alpha,
                                  mpfr_prec_t prec) {
  const unsigned long n = root_order(zeta);
  require_outside_mu_n(alpha, n);
  require(2 * alpha.degree() >= n * n, ErrorKind::precondition,
          "degree " + std::to_string(alpha.degree()) + " < n^2/2 for n = " + std::to_string(n));
  require_height_at_most(alpha, mpq_class(1, n), prec);
  const std::string in = "zeta=" + zeta.to_string() + ";alpha=" + alpha.minpoly().to_string();
  return certify("rootunity_error", in, prec, [&](mpfr_prec_t w) {
    RealBall err = abs(log_distance_average(alpha, zeta, Place::infinity(), w));
    RealBall bound = RealBall(w, mpz_class(n)) * cube_root_bound(104, 8, modified_height(alpha, w));
    return std::pair{err, bound};
  });
}

CheckReport check_padic_one(const AlgebraicNumber& alpha, const mpz_class& p, mpfr_prec_t prec) {
  require(!(alpha.rational_value() == mpq_class(1)), ErrorKind::precondition, "alpha = 1");
  require_height_at_most(alpha, 1, prec);
  const mpq_class c = padic_average(alpha, AlgebraicNumber::rational(1, PadicEmbedding{p, 0}), p);
  const std::string in = "alpha=" + alpha.minpoly().to_string() + ";p=" + p.get_str();
  return certify("padic_one", in, prec, [&](mpfr_prec_t w) {
    RealBall lhs = RealBall(w, mpq_class(abs(c))) * log(RealBall(w, p));
    RealBall rhs = cube_root_bound(40, 4, modified_height(alpha, w)) + weil_height(alpha, w);
    return std::pair{lhs, rhs};
  });
}

CheckReport check_padic_upper(const AlgebraicNumber& x, const AlgebraicNumber& alpha,
                              const mpz_class& p, mpfr_prec_t prec) {
  if (auto q = x.rational_value()) {
    require(*q == 0 || valuation(*q, p) >= 0, ErrorKind::precondition, "|x|_p > 1");
  } else {
    require(embedded_at(x, Place::prime(p)), ErrorKind::precondition,
            x.to_string() + " is not embedded at p = " + p.get_str());
    require(x.padic_point(p).root_valuation() >= 0, ErrorKind::precondition, "|x|_p > 1");
  }
  require(x.minpoly() != alpha.minpoly(), ErrorKind::conjugate_inputs, "x is a conjugate of alpha");
  require_height_at_most(alpha, 1, prec);
  // exp(d * average) = |P(x) / a_d|_p = p^(d c).
  const mpq_class e = padic_average(alpha, x, p) * mpq_class(static_cast<unsigned long>(alpha.degree()));
  const std::string in = "x=" + x.to_string() + ";alpha=" + alpha.minpoly().to_string() +
                         ";p=" + p.get_str();
  return certify("padic_upper", in, prec, [&](mpfr_prec_t w) {
    return std::pair{prime_power(p, e, w), mahler_measure(alpha.minpoly(), w)};
  });
}

CheckReport check_padic_rootunity(const AlgebraicNumber& zeta, const AlgebraicNumber& alpha,
                                  const mpz_class& p, mpfr_prec_t prec) {
  const unsigned long n = root_order(zeta);
  require_outside_mu_n(alpha, n);
  require_height_at_most(alpha, mpq_class(1, n), prec);
  const mpq_class c = padic_average(alpha, zeta, p);
  const IntPoly Pn = minimal_poly_of_image(alpha, power_poly(n));
  const std::string in = "zeta=" + zeta.to_string() + ";alpha=" + alpha.minpoly().to_string() +
                         ";p=" + p.get_str();
  return certify("padic_rootunity", in, prec, [&](mpfr_prec_t w) {
    RealBall lhs = RealBall(w, mpq_class(abs(c))) * log(RealBall(w, p));
    RealBall rhs = cube_root_bound(40, 4, modified_height(Pn, w)) + num(w, 2) * weil_height(Pn, w);
    return std::pair{lhs, rhs};
  });
}

CheckReport check_zero_case(const AlgebraicNumber& alpha, const Place& nu, mpfr_prec_t prec) {
  require(!alpha.is_zero(), ErrorKind::precondition, "check_zero_case needs alpha != 0");
  const IntPoly& P = alpha.minpoly();
  mpq_class r(P[0], P.leading());
  r.canonicalize();
  mpq_class a;  // |a_0 / a_d|_nu, exact
  if (nu.is_infinite()) {
    a = abs(r);
  } else {
    const long v = valuation(r, nu.p());
    mpz_class pv;
    mpz_pow_ui(pv.get_mpz_t(), nu.p().get_mpz_t(), static_cast<unsigned long>(std::labs(v)));
    a = v >= 0 ? mpq_class(1, pv) : mpq_class(pv);
    a.canonicalize();
  }
  const mpq_class lhs_exact = std::max(a, mpq_class(1 / a));
  const std::string in = "alpha=" + P.to_string() + ";nu=" + place_text(nu);
  return certify("zero_case", in, prec, [&](mpfr_prec_t w) {
    return std::pair{RealBall(w, lhs_exact), mahler_measure(P, w)};
  });
}

std::vector<CheckReport> check_sequence(const std::vector<SequenceStep>& steps,
                                        const AlgebraicNumber& kappa, const Place& nu,
                                        mpfr_prec_t prec) {
  require(embedded_at(kappa, nu), ErrorKind::precondition,
          kappa.to_string() + " is not embedded at " + nu.to_string());
  const long d = static_cast<long>(kappa.degree());
  std::vector<CheckReport> out;
  for (const SequenceStep& s : steps) {
    const unsigned long n = s.n;
    const IntPoly& T = s.T;
    const long degT = static_cast<long>(T.deg());
    const std::string in = "kappa=" + kappa.to_string() + ";nu=" + place_text(nu) +
                           ";k=" + std::to_string(s.k) + ";n=" + std::to_string(n) +
                           ";q=" + s.q.get_str() + ";T=" + sha256_hex(T.to_string()).substr(0, 16);
    std::optional<mpq_class> avg_units;
    if (!nu.is_infinite()) {
      const mpz_class& p = nu.p();
      avg_units = (mpq_class(valuation(T.leading(), p)) - valuation_at(T, kappa, p)) / mpq_class(degT);
      avg_units->canonicalize();
    }
    auto consts = [&](mpfr_prec_t w) {
      struct {
        RealBall h, M, nb, q, logn;
      } c{weil_height(kappa, w), mahler_measure(kappa.minpoly(), w), RealBall(w, mpz_class(n)),
          RealBall(w, s.q), log(RealBall(w, mpz_class(n)))};
      return c;
    };
    auto average = [&](mpfr_prec_t w) {
      if (avg_units) return RealBall(w, *avg_units) * log(RealBall(w, nu.p()));
      return (log_abs_at_arch(T, kappa, w) - log(RealBall(w, mpz_class(abs(T.leading()))))) /
             num(w, degT);
    };

    out.push_back(certify("sequence_S_times_T", in, prec, [&](mpfr_prec_t w) {
      return std::pair{RealBall(w, l1_norm(s.S * T - s.R)), num(w, 0)};
    }));
    out.push_back(certify("sequence_upper", in, prec, [&](mpfr_prec_t w) {
      auto c = consts(w);
      // c0 = H^(-d) = 1/M(kappa), c1 = c0^d (2^(d+3) q)^(-d), c = q c_nu / c1.
      RealBall c0 = num(w, 1) / c.M;
      RealBall c1 = pow(c0, d) / pow(pow(num(w, 2), d + 3) * c.q, d);
      RealBall cc = c.q * RealBall(w, nu.c()) / c1;
      RealBall n2 = c.nb * c.nb;
      RealBall expo = (num(w, d * d + 2) * c.nb * sqrt(c.nb) - n2) * c.h;
      RealBall upper = (log(cc) + num(w, d) * c.logn + expo) / (n2 + num(w, d));
      return std::pair{average(w), upper};
    }));
    out.push_back(certify("sequence_lower", in, prec, [&](mpfr_prec_t w) {
      auto c = consts(w);
      RealBall n2 = c.nb * c.nb;
      RealBall dd = num(w, d);
      // log of H^(-d (n^2 + d)) |T|_1^(-d) with |T|_1 <= 2^(n^2+d+3) n q H^(dn), over n^2.
      RealBall lower = (-dd * (n2 + dd + dd * c.nb) * c.h -
                        dd * (n2 + dd + num(w, 3)) * RealBall::log2(w) - dd * log(c.nb * c.q)) /
                       n2;
      return std::pair{lower, average(w)};
    }));
    out.push_back(certify("sequence_height", in, prec, [&](mpfr_prec_t w) {
      auto c = consts(w);
      RealBall h_alpha = log(mahler_measure(T, w)) / num(w, degT);
      RealBall bound = (log(num(w, 8) * c.q) + c.logn + num(w, d) * c.nb * c.h) / (c.nb * c.nb);
      return std::pair{h_alpha, bound};
    }));
    out.push_back(certify("sequence_T_l1", in, prec, [&](mpfr_prec_t w) {
      auto c = consts(w);
      // H^(dn) = M(kappa)^n.
      RealBall bound = pow(num(w, 2), static_cast<long>(n * n) + d + 3) * c.nb * c.q *
                       pow(c.M, static_cast<long>(n));
      return std::pair{RealBall(w, l1_norm(T)), bound};
    }));
  }
  return out;
}

// ---- corpora ----

std::string_view to_string(Suite s) {
  switch (s) {
    case Suite::sandwich: return "sandwich";
    case Suite::liouville: return "liouville";
    case Suite::image: return "image";
    case Suite::hprime: return "hprime";
    case Suite::arch_upper: return "arch-upper";
    case Suite::rootunity: return "rootunity";
    case Suite::padic: return "padic";
    case Suite::zero: return "zero";
  }
  return "";
}

std::vector<Suite> all_suites() {
  return {Suite::sandwich, Suite::liouville, Suite::image,   Suite::hprime,
          Suite::arch_upper, Suite::rootunity, Suite::padic, Suite::zero};
}

std::optional<Suite> parse_suite(std::string_view name) {
  for (Suite s : all_suites()) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

IntPoly random_poly(std::mt19937_64& rng, std::size_t min_degree, std::size_t max_degree, long bound) {
  std::uniform_int_distribution<std::size_t> deg_dist(min_degree, max_degree);
  std::uniform_int_distribution<long> coeff(-bound, bound);
  const std::size_t deg = deg_dist(rng);
  std::vector<mpz_class> c(deg + 1);
  for (auto& x : c) x = coeff(rng);
  while (c[deg] == 0) c[deg] = coeff(rng);
  return IntPoly(std::move(c));
}

IntPoly random_irreducible(std::mt19937_64& rng, std::size_t max_degree, long bound) {
  for (;;) {
    IntPoly P = primitive_part(random_poly(rng, 1, max_degree, bound));
    if (P.leading() < 0) P = -P;
    if (P[0] == 0) continue;
    if (is_irreducible(P)) return P;
  }
}

IntPoly root_of_two(std::size_t d) { return IntPoly::monomial(1, d) - IntPoly::constant(2); }

IntPoly shifted_cyclotomic(std::size_t d) {
  return IntPoly::monomial(1, d) - IntPoly::x() - IntPoly::constant(1);
}

namespace {

using Case = std::function<std::vector<CheckReport>()>;

std::vector<CheckReport> run_cases(const std::vector<Case>& cases, int jobs, kernels::Exec exec) {
  std::vector<std::vector<CheckReport>> results(cases.size());
  std::vector<std::exception_ptr> errors(cases.size());
  const long count = static_cast<long>(cases.size());
  auto run_one = [&](long i) {
    try {
      results[i] = cases[i]();
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (exec == kernels::Exec::serial) {
    for (long i = 0; i < count; ++i) run_one(i);
  } else {
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, jobs))
    for (long i = 0; i < count; ++i) run_one(i);
  }
  std::vector<CheckReport> out;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    if (errors[i]) {
      try {
        std::rethrow_exception(errors[i]);
      } catch (const Error& e) {
        throw Error(e.kind(), "corpus case " + std::to_string(i) + ": " + e.what());
      }
    }
    for (auto& r : results[i]) out.push_back(std::move(r));
  }
  return out;
}

std::mt19937_64 suite_rng(std::uint64_t seed, Suite s) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(s)};
  return std::mt19937_64(seq);
}

AlgebraicNumber gaussian_kappa() { return AlgebraicNumber::nearest(parse_poly("5X^2 - 6X + 5"), 0.6, 0.8); }

constexpr std::array<std::size_t, 3> kEngineeredDegrees{16, 32, 64};
constexpr std::array<long, 3> kEngineeredPrimes{2, 7, 13};

std::vector<AlgebraicNumber> engineered_alphas() {
  std::vector<AlgebraicNumber> out;
  for (std::size_t d : kEngineeredDegrees) {
    out.emplace_back(root_of_two(d), ArchEmbedding{0}, true);
    out.emplace_back(shifted_cyclotomic(d), ArchEmbedding{0}, true);
  }
  return out;
}

}  // namespace

std::vector<CheckReport> run_suite(Suite suite, const CorpusConfig& config, kernels::Exec exec) {
  std::mt19937_64 rng = suite_rng(config.seed, suite);
  const mpfr_prec_t prec = config.prec;
  const std::size_t D = config.max_degree;
  const long B = config.coeff_bound;
  std::vector<Case> cases;
  switch (suite) {
    case Suite::sandwich:
      for (std::size_t i = 0; i < config.cases; ++i) {
        IntPoly P = random_poly(rng, 0, D, B);
        cases.push_back([P, prec] { return check_sandwich(P, prec); });
      }
      break;
    case Suite::liouville: {
      const Place inf = Place::infinity();
      const Place p13 = Place::prime(13);
      const std::vector<std::pair<AlgebraicNumber, Place>> targets{
          {AlgebraicNumber::rational(2), inf},
          {AlgebraicNumber::nearest(parse_poly("X^2 + 1"), 0, 1), inf},
          {gaussian_kappa(), inf},
          {AlgebraicNumber::rational(2, PadicEmbedding{13, 0}), p13},
          {AlgebraicNumber(parse_poly("X^2 + 1"), PadicEmbedding{13, 0}), p13},
          {AlgebraicNumber(parse_poly("5X^2 - 6X + 5"), PadicEmbedding{13, 0}), p13},
      };
      for (std::size_t i = 0; i < config.cases; ++i) {
        const auto& [kappa, nu] = targets[i % targets.size()];
        IntPoly P;
        do {
          P = random_poly(rng, 1, D, B);
        } while (gcd(P, kappa.minpoly()).deg() != 0);
        cases.push_back([P, kappa, nu, prec] { return std::vector{check_liouville(P, kappa, nu, prec)}; });
      }
      break;
    }
    case Suite::image:
      for (std::size_t i = 0; i < config.cases; ++i) {
        AlgebraicNumber alpha(random_irreducible(rng, D, B), ArchEmbedding{0}, true);
        IntPoly Q = random_poly(rng, 0, D, B);
        cases.push_back([alpha, Q, prec] { return std::vector{check_height_image(alpha, Q, prec)}; });
      }
      break;
    case Suite::hprime: {
      std::uniform_int_distribution<unsigned long> n_dist(1, 6);
      for (std::size_t i = 0; i < config.cases; ++i) {
        AlgebraicNumber alpha(random_irreducible(rng, D, B), ArchEmbedding{0}, true);
        const unsigned long n = n_dist(rng);
        cases.push_back([alpha, n, prec] { return check_hprime_rules(alpha, n, prec); });
      }
      break;
    }
    case Suite::zero: {
      const std::vector<Place> places{Place::infinity(), Place::prime(2), Place::prime(3),
                                      Place::prime(5),   Place::prime(7), Place::prime(13)};
      for (std::size_t i = 0; i < config.cases; ++i) {
        AlgebraicNumber alpha(random_irreducible(rng, D, B), ArchEmbedding{0}, true);
        Place nu = places[i % places.size()];
        cases.push_back([alpha, nu, prec] { return std::vector{check_zero_case(alpha, nu, prec)}; });
      }
      break;
    }
    case Suite::arch_upper: {
      const std::vector<AlgebraicNumber> us{
          AlgebraicNumber::rational(1), AlgebraicNumber::rational(-1),
          AlgebraicNumber::nearest(parse_poly("X^2 + 1"), 0, 1), gaussian_kappa()};
      for (const auto& alpha : engineered_alphas()) {
        for (const auto& u : us) {
          cases.push_back([u, alpha, prec] { return std::vector{check_arch_upper(u, alpha, prec)}; });
        }
      }
      break;
    }
    case Suite::rootunity: {
      const std::vector<AlgebraicNumber> zetas{
          AlgebraicNumber::rational(1), AlgebraicNumber::rational(-1),
          AlgebraicNumber::nearest(parse_poly("X^2 + 1"), 0, 1),
          AlgebraicNumber::nearest(parse_poly("X^2 + X + 1"), -0.5, 0.866)};
      for (const auto& alpha : engineered_alphas()) {
        for (const auto& z : zetas) {
          cases.push_back([z, alpha, prec] { return std::vector{check_rootunity_error(z, alpha, prec)}; });
        }
      }
      break;
    }
    case Suite::padic:
      for (long pl : kEngineeredPrimes) {
        const mpz_class p = pl;
        const AlgebraicNumber zero = AlgebraicNumber::rational(0, PadicEmbedding{p, 0});
        const AlgebraicNumber one = AlgebraicNumber::rational(1, PadicEmbedding{p, 0});
        const AlgebraicNumber minus_one = AlgebraicNumber::rational(-1, PadicEmbedding{p, 0});
        const AlgebraicNumber i_p(parse_poly("X^2 + 1"), PadicEmbedding{p, 0});
        for (const auto& alpha : engineered_alphas()) {
          cases.push_back([=] {
            std::vector<CheckReport> r{check_padic_one(alpha, p, prec)};
            for (const auto& x : {zero, one, i_p}) r.push_back(check_padic_upper(x, alpha, p, prec));
            for (const auto& z : {one, minus_one, i_p}) r.push_back(check_padic_rootunity(z, alpha, p, prec));
            return r;
          });
        }
      }
      break;
  }
  return run_cases(cases, config.jobs, exec);
}

namespace {

bool mid_less(const RealBall& a, const RealBall& b) {
  return mpfr_cmp(a.midpoint().get(), b.midpoint().get()) < 0;
}

}  // namespace

std::vector<SuiteSummary> summarize(const std::vector<CheckReport>& reports) {
  std::vector<SuiteSummary> rows;
  std::map<std::string, std::size_t> index;
  for (const auto& r : reports) {
    auto [it, fresh] = index.try_emplace(r.check_id, rows.size());
    if (fresh) {
      rows.emplace_back();
      rows.back().check_id = r.check_id;
    }
    SuiteSummary& s = rows[it->second];
    switch (r.verdict) {
      case Verdict::pass: ++s.pass; break;
      case Verdict::fail: ++s.fail; break;
      case Verdict::indeterminate: ++s.indeterminate; break;
    }
    if (r.escalations > 0) ++s.escalated;
    if (r.verdict == Verdict::indeterminate) continue;
    if (!s.min_slack || mid_less(r.slack, *s.min_slack)) s.min_slack = r.slack;
    if (!s.max_slack || mid_less(*s.max_slack, r.slack)) s.max_slack = r.slack;
  }
  return rows;
}

}  // namespace equilog
