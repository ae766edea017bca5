#pragma once

// Independent checkers for the inequalities behind the construction and the
// root-of-unity bounds, with certified verdicts and precision escalation, plus
// the randomized and engineered corpora they run on.

#include "equilog/ball.hpp"
#include "equilog/construct.hpp"
#include "equilog/heights.hpp"
#include "equilog/intpoly.hpp"
#include "equilog/kernels.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace equilog {

enum class Verdict { pass, fail, indeterminate };

std::string_view to_string(Verdict v);

inline constexpr mpfr_prec_t kMaxCheckPrecision = 8192;

// lhs <= rhs, decided in the certified direction: pass iff sup(lhs) <= inf(rhs),
// fail iff inf(lhs) > sup(rhs), otherwise indeterminate once escalation stops.
struct CheckReport {
  std::string check_id;
  std::string inputs;  // canonical text of the inputs
  std::string digest;  // first 16 hex digits of SHA-256(check_id | inputs)
  RealBall lhs;
  RealBall rhs;
  Verdict verdict = Verdict::indeterminate;
  RealBall slack;  // rhs - lhs
  mpfr_prec_t precision_used = 0;
  unsigned escalations = 0;  // precision doublings before the verdict
};

// Evaluates `eval(prec)` -> {lhs, rhs} at prec, 2 prec, ... up to max_prec until
// the comparison is decided. precision_exhausted from eval counts as undecided.
using CheckEval = std::function<std::pair<RealBall, RealBall>(mpfr_prec_t)>;

CheckReport certify(std::string check_id, std::string inputs, mpfr_prec_t prec,
                    const CheckEval& eval, mpfr_prec_t max_prec = kMaxCheckPrecision);

// M(P) <= |P|_1 and |P|_1 <= 2^d M(P); P nonzero.
std::vector<CheckReport> check_sandwich(const IntPoly& P, mpfr_prec_t prec = kDefaultPrecision);

// H(kappa)^(-d deg P) |P|_1^(-d) <= |P(kappa)|_nu, compared as
// M(kappa)^(-deg P) |P|_1^(-d) <= |P(kappa)|_nu. Needs P(kappa) != 0 (exact)
// and kappa embedded at nu.
CheckReport check_liouville(const IntPoly& P, const AlgebraicNumber& kappa, const Place& nu,
                            mpfr_prec_t prec = kDefaultPrecision);

// h(Q(alpha)) <= log|Q|_1 + m h(alpha), compared with both sides multiplied
// by d d' and exponentiated: M(Q(alpha))^d <= |Q|_1^(d d') M(alpha)^(m d').
CheckReport check_height_image(const AlgebraicNumber& alpha, const IntPoly& Q,
                               mpfr_prec_t prec = kDefaultPrecision);

// h'(alpha^n) / h'(alpha) <= n, and 1/2 <= h'(alpha^n) / h'(alpha) when
// 2d >= n^2. The ratio is exactly 1 when alpha^n is a conjugate of alpha.
std::vector<CheckReport> check_hprime_rules(const AlgebraicNumber& alpha, unsigned long n,
                                            mpfr_prec_t prec = kDefaultPrecision);

// (1/d) sum log|s - u| <= 64 h'^(1/3) log(4/h') for u on the unit circle,
// h(alpha) <= 1 and u not a conjugate of alpha.
CheckReport check_arch_upper(const AlgebraicNumber& u, const AlgebraicNumber& alpha,
                             mpfr_prec_t prec = kDefaultPrecision);

// |(1/d) sum log|s - zeta|| <= 104 n h'^(1/3) log(8/h') for zeta of order n,
// alpha not in mu_n, h(alpha) <= 1/n and 2d >= n^2.
CheckReport check_rootunity_error(const AlgebraicNumber& zeta, const AlgebraicNumber& alpha,
                                  mpfr_prec_t prec = kDefaultPrecision);

// |(1/d) sum log|s - 1|_p| <= 40 h'^(1/3) log(4/h') + h for h(alpha) <= 1, alpha != 1.
CheckReport check_padic_one(const AlgebraicNumber& alpha, const mpz_class& p,
                            mpfr_prec_t prec = kDefaultPrecision);

// (1/d) sum log|s - x|_p <= h(alpha) for |x|_p <= 1, compared exponentiated:
// |P(x) / a_d|_p <= M(alpha). x is rational or p-adically embedded.
CheckReport check_padic_upper(const AlgebraicNumber& x, const AlgebraicNumber& alpha,
                              const mpz_class& p, mpfr_prec_t prec = kDefaultPrecision);

// |(1/d) sum log|s - zeta|_p| <= 40 h'(alpha^n)^(1/3) log(4/h'(alpha^n)) + 2 h(alpha^n)
// for zeta of order n, alpha not in mu_n, h(alpha) <= 1/n.
CheckReport check_padic_rootunity(const AlgebraicNumber& zeta, const AlgebraicNumber& alpha,
                                  const mpz_class& p, mpfr_prec_t prec = kDefaultPrecision);

// |(1/d) log|a_0/a_d|_nu| <= h(alpha), compared exponentiated:
// max(|a_0/a_d|_nu, |a_d/a_0|_nu) <= M(alpha). alpha nonzero.
CheckReport check_zero_case(const AlgebraicNumber& alpha, const Place& nu,
                            mpfr_prec_t prec = kDefaultPrecision);

// Replays the envelope and |T|_1 inequalities of each step from (T, R, n, q)
// alone: sequence_upper, sequence_lower, sequence_height and sequence_T_l1.
std::vector<CheckReport> check_sequence(const std::vector<SequenceStep>& steps,
                                        const AlgebraicNumber& kappa, const Place& nu,
                                        mpfr_prec_t prec = kDefaultPrecision);

// log|P(kappa)| at infinity with an internally raised evaluation precision,
// returned at `prec`; throws precision_exhausted if P(kappa) cannot be
// separated from zero.
RealBall log_abs_at_arch(const IntPoly& P, const AlgebraicNumber& kappa, mpfr_prec_t prec);

// ---- corpora ----

enum class Suite { sandwich, liouville, image, hprime, arch_upper, rootunity, padic, zero };

std::string_view to_string(Suite s);
std::optional<Suite> parse_suite(std::string_view name);
std::vector<Suite> all_suites();

inline constexpr std::uint64_t kDefaultCorpusSeed = 20240611;

struct CorpusConfig {
  std::uint64_t seed = kDefaultCorpusSeed;
  std::size_t cases = 500;  // randomized suites only
  std::size_t max_degree = 20;
  long coeff_bound = 100;
  mpfr_prec_t prec = kDefaultPrecision;
  int jobs = 1;
};

// Nonzero polynomial of degree in [min_degree, max_degree] with coefficients
// uniform in [-bound, bound] and nonzero leading coefficient.
IntPoly random_poly(std::mt19937_64& rng, std::size_t min_degree, std::size_t max_degree,
                    long bound);
// Irreducible, primitive, positive leading coefficient, nonzero root.
IntPoly random_irreducible(std::mt19937_64& rng, std::size_t max_degree, long bound);

// X^d - 2, the minimal polynomial of 2^(1/d).
IntPoly root_of_two(std::size_t d);
// X^d - X - 1, the cyclotomic X^d - 1 shifted by -X (irreducible for every d).
IntPoly shifted_cyclotomic(std::size_t d);

// Runs every case of the suite. Randomized suites draw `cases` inputs from the
// seed; arch_upper, rootunity and padic run the engineered 2^(1/d) and shifted
// cyclotomic families for d in {16, 32, 64}. Reports come out in case order
// for both execution modes.
std::vector<CheckReport> run_suite(Suite suite, const CorpusConfig& config,
                                   kernels::Exec exec = kernels::Exec::parallel);

struct SuiteSummary {
  std::string check_id;
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t indeterminate = 0;
  std::size_t escalated = 0;  // reports that needed at least one doubling
  std::optional<RealBall> min_slack;
  std::optional<RealBall> max_slack;
};

// One row per check_id, in order of first appearance.
std::vector<SuiteSummary> summarize(const std::vector<CheckReport>& reports);

// SHA-256 of `text` as lowercase hex.
std::string sha256_hex(std::string_view text);

}  // namespace equilog
