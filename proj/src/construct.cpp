#include "equilog/construct.hpp"

#include "equilog/error.hpp"
#include "equilog/factor.hpp"
#include "equilog/padics.hpp"
#include "equilog/roots.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

namespace equilog {

namespace {

RealBall ball(mpfr_prec_t prec, unsigned long v) { return RealBall(prec, mpz_class(v)); }

RealBall log_z(const mpz_class& v, mpfr_prec_t prec) { return log(RealBall(prec, mpz_class(abs(v)))); }

Assertion make_le(std::string id, RealBall lhs, RealBall rhs) {
  Assertion a{std::move(id), lhs, rhs, false, certainly_le(lhs, rhs)};
  return a;
}

const ArchEmbedding& arch_embedding(const AlgebraicNumber& kappa) {
  const auto* e = std::get_if<ArchEmbedding>(&kappa.embedding());
  require(e != nullptr, ErrorKind::precondition, "kappa needs an archimedean embedding");
  return *e;
}

const PadicEmbedding& padic_embedding(const AlgebraicNumber& kappa) {
  const auto* e = std::get_if<PadicEmbedding>(&kappa.embedding());
  require(e != nullptr, ErrorKind::precondition, "kappa needs a p-adic embedding");
  return *e;
}

void require_not_root_of_unity(const AlgebraicNumber& kappa) {
  require(!kappa.is_zero(), ErrorKind::precondition, "kappa must be nonzero");
  require(!is_root_of_unity(kappa.minpoly()).has_value(), ErrorKind::precondition,
          "kappa = root of " + kappa.minpoly().to_string() + " is a root of unity");
}

// sqrt(n) and n (n - sqrt n) as balls.
RealBall sqrt_n(unsigned long n, mpfr_prec_t prec) { return sqrt(ball(prec, n)); }

RealBall n_n_minus_sqrt(unsigned long n, mpfr_prec_t prec) {
  return ball(prec, n) * (ball(prec, n) - sqrt_n(n, prec));
}

// Bits needed to carry H^(n (n - sqrt n)) next to unit-size values.
mpfr_prec_t working_precision(const RealBall& h, unsigned long n, mpfr_prec_t prec) {
  double bits = n_n_minus_sqrt(n, 64).mid_double() * h.mid_double() / std::log(2.0);
  return prec + 2 * static_cast<mpfr_prec_t>(std::ceil(bits)) + 64;
}

}  // namespace

bool on_unit_circle(const AlgebraicNumber& kappa, mpfr_prec_t prec) {
  const std::size_t idx = arch_embedding(kappa).index;
  if (auto q = kappa.rational_value()) return abs(*q) == 1;
  const IntPoly& P = kappa.minpoly();
  IntPoly rev = P.reversed();
  if (rev != P && rev != -P) return false;
  for (mpfr_prec_t w = prec; w <= kPrecisionCap; w *= 2) {
    auto roots = complex_roots(P, w).flat();
    ComplexBall inv = ComplexBall(w, 1, 0) / conj(roots.at(idx));
    std::size_t hits = 0;
    bool self = false;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (intersects(inv, roots[i])) {
        ++hits;
        self = self || i == idx;
      }
    }
    // 1/conj(kappa) is itself a root; isolation pins it to kappa or not.
    if (hits == 1) return self;
  }
  throw Error(ErrorKind::precision_exhausted, "cannot decide |kappa| = 1");
}

std::vector<unsigned long> find_exponents(const AlgebraicNumber& kappa, std::size_t count,
                                          unsigned long n_min, unsigned long ceiling,
                                          mpfr_prec_t prec) {
  arch_embedding(kappa);
  require_not_root_of_unity(kappa);
  require(on_unit_circle(kappa, prec), ErrorKind::precondition, "kappa is not on the unit circle");
  const std::size_t d = kappa.degree();
  const mpfr_prec_t wp = prec + 64;
  const RealBall h = weil_height(kappa, wp);
  const ComplexBall z = kappa.arch_value(wp);
  const RealBall half(wp, mpq_class(1, 2));
  std::vector<unsigned long> out;
  for (unsigned long n = std::max(1UL, n_min); n <= ceiling && out.size() < count; ++n) {
    if (n * n < d) continue;
    if (!certainly_gt(RealBall(wp, 2L) * sqrt_n(n, wp) * h, log(ball(wp, 6 * n)))) continue;
    if (certainly_ge(pow(z, n).im(), half)) out.push_back(n);
  }
  require(out.size() == count, ErrorKind::search_range_exhausted,
          "fewer than " + std::to_string(count) + " exponents below " + std::to_string(ceiling));
  return out;
}

std::vector<unsigned long> find_padic_exponents(const AlgebraicNumber& kappa, std::size_t count,
                                                unsigned long n_min, unsigned long ceiling,
                                                mpfr_prec_t prec) {
  const auto& emb = padic_embedding(kappa);
  require_not_root_of_unity(kappa);
  require(kappa.padic_point(emb.p).root_valuation() == 0, ErrorKind::precondition,
          "|kappa|_p must be 1");
  const std::size_t d = kappa.degree();
  const RealBall h = weil_height(kappa, prec);
  const RealBall logp = log(RealBall(prec, emb.p));
  std::vector<unsigned long> out;
  for (unsigned long n = std::max(1UL, n_min); n <= ceiling && out.size() < count; ++n) {
    if (n * n < d) continue;
    // f >= 1, so the congruence is not empty.
    if (!certainly_ge(n_n_minus_sqrt(n, prec) * h, logp)) continue;
    if (certainly_gt(sqrt_n(n, prec) * h, log(ball(prec, n + 1)))) out.push_back(n);
  }
  require(out.size() == count, ErrorKind::search_range_exhausted,
          "fewer than " + std::to_string(count) + " exponents below " + std::to_string(ceiling));
  return out;
}

bool nonvanishing_at_power(const IntPoly& A, const IntPoly& minpoly, unsigned long n) {
  QuotientRing ring(minpoly);
  RatPoly xn = ring.pow(RatPoly(IntPoly::x()), n);
  RatPoly r = ring.eval(A, xn);
  if (r.is_zero()) return false;
  return gcd(r, RatPoly(minpoly)).deg() == 0;
}

ArchA build_arch_A(const AlgebraicNumber& kappa, unsigned long n, mpfr_prec_t prec,
                   std::uint64_t budget) {
  arch_embedding(kappa);
  require_not_root_of_unity(kappa);
  require(n >= 2, ErrorKind::degenerate_n, "n must be at least 2");
  const RealBall h0 = weil_height(kappa, prec);
  require(certainly_gt(RealBall(prec, 2L) * sqrt_n(n, prec) * h0, log(ball(prec, 6 * n))),
          ErrorKind::degenerate_n,
          "H(kappa)^(2 sqrt n) <= 6n at n = " + std::to_string(n) + "; use a larger n");

  const mpfr_prec_t wp = working_precision(h0, n, prec);
  const RealBall h = weil_height(kappa, wp);
  const ComplexBall w = pow(kappa.arch_value(wp), n);
  std::vector<ComplexBall> u(n + 1, ComplexBall(wp, 1, 0));
  for (unsigned long i = 1; i <= n; ++i) u[i] = u[i - 1] * w;
  require(certainly_ge(u[1].im(), RealBall(wp, mpq_class(1, 2))), ErrorKind::precondition,
          "Im(kappa^n) >= 1/2 is not certified at n = " + std::to_string(n));

  ArchA out{IntPoly(), RealBall(wp), RealBall(wp), RealBall(wp), RealBall(wp), RealBall(wp), {}};
  const RealBall two(wp, 2L);
  out.C = exp(two * (ball(wp, n) - sqrt_n(n, wp)) * h);
  out.eps = sqrt(u[1].im() / pow(out.C, static_cast<long>(n - 1)));

  // Columns address (a_n, ..., a_0); rows: identity on a_n..a_2, then the
  // imaginary and real parts of A(kappa^n).
  const std::size_t m = n + 1;
  ArchLinearFormsProblem pb;
  pb.B.assign(m, std::vector<RealBall>(m, RealBall(wp, 0L)));
  for (std::size_t i = 0; i + 2 < m; ++i) pb.B[i][i] = RealBall(wp, 1L);
  for (std::size_t j = 0; j < m; ++j) {
    pb.B[m - 2][j] = u[n - j].im();
    pb.B[m - 1][j] = u[n - j].re();
  }
  pb.B[m - 2][m - 1] = RealBall(wp, 0L);
  pb.B[m - 1][m - 1] = RealBall(wp, 1L);
  pb.lambda.assign(m, out.C);
  pb.lambda[m - 2] = out.eps;
  pb.lambda[m - 1] = out.eps;

  ArchSolution sol = solve_arch(pb, budget);
  std::vector<mpz_class> coeffs(m);
  for (std::size_t j = 0; j < m; ++j) coeffs[n - j] = sol.a[j];
  out.A = IntPoly(coeffs);
  out.stats = sol.stats;
  require(nonvanishing_at_power(out.A, kappa.minpoly(), n), ErrorKind::certification_failed,
          "A(kappa^n) = 0 at n = " + std::to_string(n));
  out.value = abs(eval_ball(out.A, w));
  out.value_bound = sqrt(two) * out.eps;
  out.l1_bound = ball(wp, 6 * n) * exp(two * ball(wp, n) * h);
  return out;
}

PadicA build_padic_A(const AlgebraicNumber& kappa, unsigned long n, mpfr_prec_t prec,
                     std::uint64_t budget) {
  const mpz_class p = padic_embedding(kappa).p;
  require_not_root_of_unity(kappa);
  PadicPoint point = kappa.padic_point(p);
  require(point.root_valuation() == 0, ErrorKind::precondition, "|kappa|_p must be 1");
  const RealBall h = weil_height(kappa, prec);
  require(certainly_gt(sqrt_n(n, prec) * h, log(ball(prec, n + 1))), ErrorKind::degenerate_n,
          "H(kappa)^(sqrt n) <= n + 1 at n = " + std::to_string(n) + "; use a larger n");

  PadicA out{IntPoly(), 0, point.local_degree(), 0, 0, false, 0, RealBall(prec), {}};
  const RealBall logp = log(RealBall(prec, p));
  const RealBall target = n_n_minus_sqrt(n, prec) * h;
  mpz_class f;
  mpz_set_d(f.get_mpz_t(), std::floor((target / logp).mid_double()));
  if (f < 0) f = 0;
  // p^(-f) <= p H^(-n (n - sqrt n)) needs (f + 1) log p >= n (n - sqrt n) h.
  while (!certainly_ge(RealBall(prec, mpz_class(f + 1)) * logp, target)) ++f;
  out.f = f.get_ui();
  require(out.f >= 1, ErrorKind::degenerate_n, "f = 0 at n = " + std::to_string(n) + "; use a larger n");

  mpz_class pf;
  mpz_pow_ui(pf.get_mpz_t(), p.get_mpz_t(), out.local_degree * out.f);
  mpz_root(out.Lambda.get_mpz_t(), pf.get_mpz_t(), n + 1);

  IntMatrix forms(out.local_degree, std::vector<mpz_class>(n + 1));
  for (unsigned long k = 0; k <= n; ++k) {
    auto c = point.zp_coordinates(mpz_class(n) * k, out.f);
    for (std::size_t i = 0; i < out.local_degree; ++i) forms[i][k] = c[i];
  }
  PadicSolution sol = solve_padic({p, out.f, forms, out.Lambda}, budget);
  out.A = IntPoly(sol.a);
  out.Lambda_used = sol.Lambda_used;
  out.widened = sol.widened;
  out.stats = sol.stats;
  require(nonvanishing_at_power(out.A, kappa.minpoly(), n), ErrorKind::certification_failed,
          "A(kappa^n) = 0 at n = " + std::to_string(n));
  out.valuation = point.eval_valuation(substitute_power(out.A, n));
  require(out.valuation >= out.f, ErrorKind::internal, "solver output misses the valuation bound");
  out.l1_bound = ball(prec, n + 1) *
                 exp(RealBall(prec, static_cast<long>(kappa.degree() * n)) * h);
  if (out.widened) out.l1_bound *= RealBall(prec, p);
  return out;
}

QDelta choose_q_delta(const IntPoly& P, const IntPoly& A) {
  const mpz_class p0 = P[0];
  require(p0 != 0, ErrorKind::precondition, "P(0) must be nonzero");
  QDelta out;
  out.q = 2;
  while (mpz_divisible_p(p0.get_mpz_t(), out.q.get_mpz_t())) out.q = next_prime(out.q);
  const mpz_class a0 = A[0];
  out.delta = mpz_divisible_p(a0.get_mpz_t(), out.q.get_mpz_t()) ? 1 : 0;
  return out;
}

IntPoly assemble_R(const IntPoly& P, const IntPoly& A, unsigned long n, const mpz_class& q,
                   int delta) {
  const std::size_t d = P.deg();
  const std::size_t n2 = n * n;
  require(!A.is_zero() && A.deg() <= n, ErrorKind::precondition, "deg A must be at most n");
  require(n2 >= d, ErrorKind::precondition, "n^2 must be at least deg P");
  IntPoly R = IntPoly::monomial(1, n2) * P + q * substitute_power(A, n);
  if (delta) R += q * P;

  auto fail = [](const std::string& what) { throw Error(ErrorKind::assembly_invariant, what); };
  if (R.is_zero() || R.deg() != n2 + d) fail("deg R != n^2 + d");
  for (std::size_t i = 0; i < n2; ++i) {
    if (!mpz_divisible_p(R[i].get_mpz_t(), q.get_mpz_t())) fail("q does not divide r_i, i < n^2");
  }
  const mpz_class q2 = q * q;
  if (mpz_divisible_p(R[0].get_mpz_t(), q2.get_mpz_t())) fail("q^2 divides r_0");
  if (mpz_divisible_p(R[n2].get_mpz_t(), q.get_mpz_t())) fail("q divides r_(n^2)");
  auto cert = eisenstein_degree(R, q);
  if (!cert || cert->e < n2) fail("no Eisenstein certificate with e >= n^2");
  return R;
}

FactorSplit extract_small_factors(const IntPoly& R, std::size_t max_deg,
                                  std::optional<mpz_class> aux_prime,
                                  const std::vector<mpz_class>& skip) {
  require(!R.is_zero(), ErrorKind::precondition, "R must be nonzero");
  FactorSplit out;
  out.S = IntPoly::constant(content(R));
  if (R.leading() < 0) out.S = -out.S;
  if (R.deg() > 0) {
    FactorOptions opts;
    opts.prime = aux_prime;
    opts.skip = skip;
    auto parts = squarefree_decomposition(primitive_part(R));
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (parts[i].deg() == 0) continue;
      SmallFactors sf = find_small_factors(parts[i], max_deg, opts);
      if (i == 0) out.aux_prime = sf.prime;
      for (const auto& g : sf.factors) {
        for (std::size_t k = 0; k <= i; ++k) out.S *= g;
      }
    }
  }
  auto T = exact_divide(R, out.S);
  require(T.has_value(), ErrorKind::internal, "S does not divide R");
  out.T = *T;
  if (out.T.leading() < 0) {
    out.T = -out.T;
    out.S = -out.S;
  }
  return out;
}

Envelopes kappa_envelopes(const RealBall& h, std::size_t d_in, unsigned long n_in,
                          const mpz_class& q_in, const Place& nu) {
  const mpfr_prec_t prec = h.prec();
  const RealBall d(prec, static_cast<long>(d_in));
  const RealBall n = ball(prec, n_in);
  const RealBall n2 = n * n;
  const RealBall q(prec, q_in);
  const RealBall log2 = RealBall::log2(prec);
  const RealBall log_q = log(q);
  const RealBall log_n = log(n);
  const RealBall log_cnu = log(RealBall(prec, nu.c()));
  // log c_1 = d log c_0 - d log(2^(d+3) q) with log c_0 = -d h.
  const RealBall log_c1 = -d * d * h - d * ((d + RealBall(prec, 3L)) * log2 + log_q);
  Envelopes env;
  env.upper = (log_q + log_cnu - log_c1 + d * log_n +
               ((d * d + RealBall(prec, 2L)) * n * sqrt(n) - n2) * h) /
              (n2 + d);
  env.lower = (-d * (n2 + d + d * n) * h - d * (n2 + d + RealBall(prec, 3L)) * log2 -
               d * log(n * q)) /
              n2;
  env.height = (log(RealBall(prec, 8L) * q) + log_n + d * n * h) / n2;
  return env;
}

bool SequenceStep::all_passed() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const auto& a) { return a.passed; }) &&
         std::all_of(exact.begin(), exact.end(), [](const auto& a) { return a.passed; });
}

bool BmStep::all_passed() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const auto& a) { return a.passed; }) &&
         std::all_of(exact.begin(), exact.end(), [](const auto& a) { return a.passed; });
}

SequenceStep build_kappa_step(const AlgebraicNumber& kappa, const Place& nu, unsigned long n,
                              std::size_t k, const ConstructConfig& config) {
  const mpfr_prec_t prec = config.prec;
  const IntPoly& P = kappa.minpoly();
  const std::size_t d = kappa.degree();
  const RealBall h = weil_height(kappa, prec);
  const RealBall nb = ball(prec, n);
  const RealBall H_dn = exp(RealBall(prec, static_cast<long>(d)) * nb * h);

  SequenceStep s;
  s.k = k;
  s.n = n;
  if (nu.is_infinite()) {
    ArchA a = build_arch_A(kappa, n, prec, config.budget);
    s.A = a.A;
    s.stats = a.stats;
    s.A_value = with_prec(a.value, prec);
    s.A_bound = with_prec(a.value_bound, prec);
    const RealBall lemma_bound =
        sqrt(RealBall(prec, 2L)) *
        exp(-(nb - RealBall(prec, 1L)) * (nb - sqrt_n(n, prec)) * h);
    s.assertions.push_back(make_le("A_value_le_sqrt2_eps", s.A_value, s.A_bound));
    s.assertions.push_back(make_le("A_value_le_sqrt2_H_bound", s.A_value, lemma_bound));
    const RealBall l1(prec, l1_norm(a.A));
    s.assertions.push_back(make_le("A_l1_le_6nC", l1, ball(prec, 6 * n) * with_prec(a.C, prec)));
    s.assertions.push_back(make_le("A_l1_le_6nH2n", l1, with_prec(a.l1_bound, prec)));
  } else {
    require(padic_embedding(kappa).p == nu.p(), ErrorKind::precondition,
            "kappa's embedding and the place disagree");
    PadicA a = build_padic_A(kappa, n, prec, config.budget);
    const RealBall logp = log(RealBall(prec, nu.p()));
    s.A = a.A;
    s.stats = a.stats;
    s.f = a.f;
    s.A_valuation = a.valuation;
    s.Lambda = a.Lambda_used;
    s.widened = a.widened;
    s.A_value = exp(-RealBall(prec, a.valuation) * logp);
    s.A_bound = exp(-ball(prec, a.f) * logp);
    // |A(kappa^n)|_p <= p^(-f) is decided on the exact valuation.
    s.exact.push_back({"A_value_le_p_minus_f", a.valuation >= a.f});
    s.assertions.push_back(make_le("p_minus_f_le_pH_bound", s.A_bound,
                                   RealBall(prec, nu.p()) * exp(-n_n_minus_sqrt(n, prec) * h)));
    mpz_class l1 = l1_norm(a.A);
    s.exact.push_back({"A_l1_le_(n+1)Lambda", l1 <= mpz_class(n + 1) * a.Lambda_used});
    s.assertions.push_back(make_le("A_l1_le_(n+1)H^(Dn)", RealBall(prec, l1), a.l1_bound));
    s.assertions.push_back(make_le("A_l1_le_6nH^(dn)", RealBall(prec, l1), ball(prec, 6 * n) * H_dn));
  }
  s.exact.push_back({"A_kappa_n_nonzero", nonvanishing_at_power(s.A, P, n)});

  QDelta qd = choose_q_delta(P, s.A);
  s.q = qd.q;
  s.delta = qd.delta;
  s.R = assemble_R(P, s.A, n, s.q, s.delta);
  s.eisenstein_e = eisenstein_degree(s.R, s.q)->e;
  const std::size_t max_deg = s.R.deg() - s.eisenstein_e;
  FactorSplit split = extract_small_factors(s.R, max_deg, std::nullopt, {s.q});
  s.S = split.S;
  s.T = split.T;
  s.aux_prime = split.aux_prime;
  s.exact.push_back({"S_times_T_eq_R", s.S * s.T == s.R});
  s.exact.push_back({"deg_T_ge_n2", s.T.deg() >= n * n});
  s.exact.push_back({"deg_S_le_d", s.S.is_zero() ? false : s.S.deg() <= d});
  s.exact.push_back({"deg_T_ge_e", s.T.deg() >= s.eisenstein_e});

  const RealBall q(prec, s.q);
  const RealBall R_bound = RealBall(prec, 8L) * nb * q * H_dn;
  s.assertions.push_back(make_le("R_l1_le_8nqH^(dn)", RealBall(prec, l1_norm(s.R)), R_bound));
  const RealBall T_l1_bound =
      pow(RealBall(prec, 2L), static_cast<long>(n * n + d + 3)) * nb * q * H_dn;
  s.assertions.push_back(make_le("T_l1_le_2^(n2+d+3)nqH^(dn)", RealBall(prec, l1_norm(s.T)), T_l1_bound));

  AlgebraicNumber alpha(s.T, ArchEmbedding{0}, true);
  s.avg = log_distance_average(alpha, kappa, nu, prec);
  if (!nu.is_infinite()) {
    const mpz_class& p = nu.p();
    mpq_class v = kappa.padic_point(p).eval_valuation(s.T);
    s.avg_log_p = (mpq_class(valuation(s.T.leading(), p)) - v) / mpq_class(s.T.deg());
  }
  s.height_alpha = weil_height(s.T, prec);
  s.assertions.push_back(make_le("M_T_le_8nqH^(dn)", mahler_measure(s.T, prec), R_bound));
  s.env = kappa_envelopes(h, d, n, s.q, nu);
  s.assertions.push_back(make_le("avg_le_upper_envelope", s.avg, s.env.upper));
  s.assertions.push_back(make_le("lower_envelope_le_avg", s.env.lower, s.avg));
  s.assertions.push_back(make_le("height_le_envelope", s.height_alpha, s.env.height));
  return s;
}

std::vector<SequenceStep> build_kappa_sequence(const AlgebraicNumber& kappa, const Place& nu,
                                               std::size_t k_max, const ConstructConfig& config) {
  std::vector<unsigned long> ns =
      nu.is_infinite()
          ? find_exponents(kappa, k_max, config.n_min, config.exponent_ceiling, config.prec)
          : find_padic_exponents(kappa, k_max, config.n_min, config.exponent_ceiling, config.prec);
  std::vector<SequenceStep> steps(ns.size());
  std::vector<std::exception_ptr> errors(ns.size());
  const long count = static_cast<long>(ns.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, config.jobs))
  for (long i = 0; i < count; ++i) {
    try {
      steps[i] = build_kappa_step(kappa, nu, ns[i], i + 1, config);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const Error& e) {
      throw Error(e.kind(), "step " + std::to_string(i + 1) + " (n = " + std::to_string(ns[i]) +
                                "): " + e.what());
    }
  }
  for (std::size_t i = 1; i < steps.size(); ++i) {
    steps[i].exact.push_back({"deg_T_increasing", steps[i].T.deg() > steps[i - 1].T.deg()});
  }
  return steps;
}

mpz_class bm_prime(const IntPoly& Q) {
  const mpz_class prod = Q.leading() * Q[0];
  mpz_class l = 2;
  while (mpz_divisible_p(prod.get_mpz_t(), l.get_mpz_t())) l = next_prime(l);
  return l;
}

std::vector<BmStep> build_bm_sequence(const AlgebraicNumber& kappa, const Place& nu,
                                      const std::vector<unsigned long>& ns,
                                      const ConstructConfig& config) {
  const mpfr_prec_t prec = config.prec;
  require(!kappa.is_zero(), ErrorKind::precondition, "kappa must be nonzero");
  // Sign of log |kappa|_nu, certified.
  int side = 0;
  RealBall log_abs(prec);
  if (nu.is_infinite()) {
    if (auto r = kappa.rational_value()) {
      log_abs = log(abs(RealBall(prec, *r)));
      side = abs(*r) > 1 ? 1 : (abs(*r) < 1 ? -1 : 0);
    } else {
      RealBall a = abs(kappa.arch_value(prec));
      log_abs = log(a);
      side = certainly_gt(a, RealBall(prec, 1L)) ? 1 : (certainly_lt(a, RealBall(prec, 1L)) ? -1 : 0);
    }
  } else {
    mpq_class v = kappa.padic_point(nu.p()).root_valuation();
    log_abs = -RealBall(prec, v) * log(RealBall(prec, nu.p()));
    side = v < 0 ? 1 : (v > 0 ? -1 : 0);
  }
  require(side != 0, ErrorKind::precondition, "|kappa|_nu must differ from 1 (certified)");
  const bool reciprocal = side < 0;

  IntPoly Q = reciprocal ? primitive_part(kappa.minpoly().reversed()) : kappa.minpoly();
  if (Q[0] < 0) Q = -Q;
  const std::size_t m = Q.deg();
  const mpz_class qm = Q.leading();
  const mpz_class l = bm_prime(Q);
  const RealBall limit = abs(log_abs);
  const RealBall reference = log_max_one(kappa, nu, prec);

  std::vector<BmStep> out;
  for (unsigned long n : ns) {
    require(n >= 1, ErrorKind::precondition, "n must be positive");
    BmStep s;
    s.n = n;
    s.reciprocal = reciprocal;
    s.Q = Q;
    s.l = l;
    const IntPoly An = l * (IntPoly::monomial(1, n) * Q) - IntPoly::constant(1);
    const IntPoly rev = An.reversed();
    auto cert = eisenstein_degree(rev, l);
    s.eisenstein_e = cert ? cert->e : 0;
    s.exact.push_back({"eisenstein_irreducible", cert.has_value() && cert->e == n + m});
    s.minpoly = primitive_part(reciprocal ? rev : An);
    AlgebraicNumber alpha(s.minpoly, ArchEmbedding{0}, true);
    s.avg = log_distance_average(alpha, kappa, nu, prec);
    const RealBall nm = ball(prec, n + m);
    if (reciprocal) {
      s.closed_form = log_abs;
    } else if (nu.is_infinite()) {
      s.closed_form = -log_z(l * qm, prec) / nm;
    } else {
      s.closed_form = RealBall(prec, mpz_class(valuation(mpz_class(l * qm), nu.p()))) *
                      log(RealBall(prec, nu.p())) / nm;
    }
    s.exact.push_back({"avg_matches_closed_form", intersects(s.avg, s.closed_form)});
    s.reference = reference;
    s.error = abs(s.avg - reference);
    s.limit = limit;
    const RealBall tol = RealBall(prec, mpq_class(1, mpz_class(1) << 40));
    s.assertions.push_back(make_le("error_rate", abs(s.error - limit),
                                   (log_z(l, prec) + log_z(qm, prec)) / nm + tol));
    s.height_alpha = weil_height(s.minpoly, prec);
    s.height_bound = log(RealBall(prec, l1_norm(l * Q))) + ball(prec, m) * s.height_alpha;
    s.assertions.push_back(make_le("n_h_le_log_lQ_plus_m_h", ball(prec, n) * s.height_alpha,
                                   s.height_bound));
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace equilog
