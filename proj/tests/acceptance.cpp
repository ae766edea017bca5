// Acceptance driver: one PASS/FAIL line per criterion, exit status 0 iff all
// pass. Tolerances and time limits are fixed below.

#include "equilog/construct.hpp"
#include "equilog/error.hpp"
#include "equilog/heights.hpp"
#include "equilog/padics.hpp"
#include "equilog/report.hpp"
#include "equilog/roots.hpp"
#include "equilog/verify.hpp"
#include "lattice_oracle.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>

using namespace equilog;

namespace {

constexpr mpfr_prec_t kPrec = 256;
constexpr double kArchLimitSeconds = 600;
constexpr double kPadicLimitSeconds = 600;
constexpr double kBmLimitSeconds = 60;
constexpr double kLemmaLimitSeconds = 300;
constexpr double kIndeterminateFraction = 0.01;
constexpr long kBmRadiusLog2 = -40;
constexpr std::size_t kOraclePairs = 100;

using Clock = std::chrono::steady_clock;

bool g_all_pass = true;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (!pass) detail << "; ";
      else detail.str("");
      pass = false;
      detail << what;
    }
  }
};

const AlgebraicNumber& arch_kappa() {
  static const AlgebraicNumber k = AlgebraicNumber::nearest(parse_poly("5X^2 - 6X + 5"), 0.6, 0.8);
  return k;
}

const AlgebraicNumber& padic_kappa() {
  static const AlgebraicNumber k(parse_poly("5X^2 - 6X + 5"), PadicEmbedding{13, 0});
  return k;
}

const Assertion* find_assertion(const SequenceStep& s, const std::string& id) {
  for (const auto& a : s.assertions) {
    if (a.id == id) return &a;
  }
  return nullptr;
}

const ExactAssertion* find_exact(const SequenceStep& s, const std::string& id) {
  for (const auto& a : s.exact) {
    if (a.id == id) return &a;
  }
  return nullptr;
}

// The named assertions must be present and certified; every other recorded
// assertion must pass too.
void require_step(Outcome& o, const SequenceStep& s, const std::vector<std::string>& ids,
                  const std::vector<std::string>& exact_ids) {
  const std::string tag = "n = " + std::to_string(s.n) + ": ";
  for (const auto& id : ids) {
    const Assertion* a = find_assertion(s, id);
    o.require(a != nullptr, tag + "missing " + id);
    if (a) o.require(a->passed, tag + id + " not certified");
  }
  for (const auto& id : exact_ids) {
    const ExactAssertion* a = find_exact(s, id);
    o.require(a != nullptr, tag + "missing " + id);
    if (a) o.require(a->passed, tag + id + " false");
  }
  o.require(s.all_passed(), tag + "some recorded assertion failed");
}

void require_sequence_checks(Outcome& o, const std::vector<CheckReport>& reports) {
  std::size_t fail = 0, indet = 0;
  for (const auto& r : reports) {
    fail += r.verdict == Verdict::fail;
    indet += r.verdict == Verdict::indeterminate;
  }
  o.require(fail == 0, std::to_string(fail) + " independent sequence checks failed");
  o.require(indet == 0, std::to_string(indet) + " independent sequence checks indeterminate");
}

Json steps_json(const std::vector<SequenceStep>& steps) {
  Json j = Json::array();
  for (const auto& s : steps) j.push_back(to_json(s));
  return j;
}

std::string n_list(const std::vector<SequenceStep>& steps) {
  std::string out;
  for (const auto& s : steps) out += (out.empty() ? "" : ",") + std::to_string(s.n);
  return out;
}

void print(int k, const Outcome& o, const std::string& summary) {
  g_all_pass = g_all_pass && o.pass;
  std::printf("criterion %d: %s  %s%s%s\n", k, o.pass ? "PASS" : "FAIL", summary.c_str(),
              o.pass ? "" : "  -- ", o.pass ? "" : o.detail.str().c_str());
  std::fflush(stdout);
}

// ---- 1 and 7 ----

std::string run_arch_sequence(Outcome& o, double& elapsed) {
  const auto t0 = Clock::now();
  ConstructConfig cfg;
  cfg.prec = kPrec;
  auto steps = build_kappa_sequence(arch_kappa(), Place::infinity(), 3, cfg);
  auto checks = check_sequence(steps, arch_kappa(), Place::infinity(), kPrec);
  elapsed = seconds_since(t0);
  o.require(steps.size() == 3, "expected 3 steps");
  for (const auto& s : steps) {
    require_step(o, s,
                 {"A_value_le_sqrt2_H_bound", "A_l1_le_6nH2n", "avg_le_upper_envelope",
                  "lower_envelope_le_avg", "height_le_envelope"},
                 {"A_kappa_n_nonzero", "S_times_T_eq_R", "deg_T_ge_n2"});
  }
  require_sequence_checks(o, checks);
  o.require(elapsed < kArchLimitSeconds, "over the time limit");
  return dump(steps_json(steps));
}

// h((3+4i)/5) from the quadratic formula: M = |a| max(1,|r1|) max(1,|r2|).
long double quadratic_height(long double a, long double b, long double c) {
  std::complex<long double> disc = std::sqrt(std::complex<long double>(b * b - 4 * a * c));
  long double r1 = std::abs((-b + disc) / (2 * a)), r2 = std::abs((-b - disc) / (2 * a));
  return std::log(std::fabs(a) * std::max(1.0L, r1) * std::max(1.0L, r2)) / 2;
}

// ---- 2 ----

void criterion_padic() {
  Outcome o;
  const auto t0 = Clock::now();
  const mpz_class p = 13;
  const Place nu = Place::prime(p);
  // |kappa|_13 = 1: a single Newton polygon segment of slope 0.
  auto np = newton_polygon(padic_kappa().minpoly(), p);
  o.require(np.size() == 1 && np[0].slope == 0, "|kappa|_13 != 1");

  ConstructConfig cfg;
  cfg.prec = kPrec;
  auto steps = build_kappa_sequence(padic_kappa(), nu, 3, cfg);
  auto checks = check_sequence(steps, padic_kappa(), nu, kPrec);
  o.require(steps.size() == 3, "expected 3 steps");
  const RealBall h = weil_height(padic_kappa(), kPrec);
  const RealBall log13 = log(RealBall(kPrec, p));
  for (const auto& s : steps) {
    const std::string tag = "n = " + std::to_string(s.n) + ": ";
    require_step(o, s, {"A_l1_le_6nH^(dn)", "avg_le_upper_envelope", "lower_envelope_le_avg", "height_le_envelope"},
                 {"A_value_le_p_minus_f", "A_kappa_n_nonzero", "S_times_T_eq_R", "deg_T_ge_n2"});
    // f = floor(n (n - sqrt n) h / log 13), decided on the ball endpoints.
    RealBall nb(kPrec, static_cast<long>(s.n));
    RealBall x = nb * (nb - sqrt(nb)) * h / log13;
    long lo = static_cast<long>(std::floor(mpfr_get_d(x.lower().get(), MPFR_RNDD)));
    long hi = static_cast<long>(std::floor(mpfr_get_d(x.upper().get(), MPFR_RNDU)));
    o.require(lo == hi && static_cast<unsigned long>(lo) == s.f, tag + "f mismatch");
    o.require(s.A_valuation && *s.A_valuation >= s.f, tag + "v(A(kappa^n)) < f");
    // The average is an exact rational times log 13 and matches a fresh evaluation.
    const mpq_class v = padic_kappa().padic_point(p).eval_valuation(s.T);
    mpq_class expected = (valuation(s.T.leading(), p) - v) / mpq_class(s.T.deg());
    expected.canonicalize();
    o.require(s.avg_log_p.has_value() && *s.avg_log_p == expected, tag + "average differs from recomputation");
    o.require(intersects(s.avg, RealBall(kPrec, expected) * log13), tag + "average ball misses the exact value");
  }
  require_sequence_checks(o, checks);
  const double elapsed = seconds_since(t0);
  o.require(elapsed < kPadicLimitSeconds, "over the time limit");
  char buf[160];
  std::snprintf(buf, sizeof buf, "p-adic kappa-sequence at 13: n = %s, %zu independent checks, %.1f s",
                n_list(steps).c_str(), checks.size(), elapsed);
  print(2, o, buf);
}

// ---- 3 ----

void criterion_bm() {
  Outcome o;
  const auto t0 = Clock::now();
  const RealBall log2 = log(RealBall(kPrec, 2L));
  const RealBall log3 = log(RealBall(kPrec, 3L));
  const std::vector<unsigned long> ns = {10, 50, 100};

  auto direct = build_bm_sequence(AlgebraicNumber::rational(2), Place::infinity(), ns);
  o.require(direct.size() == ns.size(), "expected 3 steps for kappa = 2");
  for (const auto& s : direct) {
    const std::string tag = "kappa = 2, n = " + std::to_string(s.n) + ": ";
    o.require(s.l == 3, tag + "l != 3");
    o.require(s.all_passed(), tag + "recorded assertion failed");
    RealBall target = log3 / RealBall(kPrec, static_cast<long>(s.n + 1));
    RealBall dev = abs(s.error - log2);
    o.require(intersects(dev, target), tag + "|E_n - log 2| != log 3/(n+1)");
    o.require(mpfr_cmp_si_2exp(s.error.radius().get(), 1, kBmRadiusLog2) <= 0, tag + "E_n radius > 2^-40");
  }

  // kappa = 1/2 runs through the reciprocal branch; E_n tends to |log|1/2|| = log 2.
  auto recip = build_bm_sequence(AlgebraicNumber::rational(mpq_class(1, 2)), Place::infinity(), ns);
  for (const auto& s : recip) {
    const std::string tag = "kappa = 1/2, n = " + std::to_string(s.n) + ": ";
    o.require(s.reciprocal, tag + "not reciprocal");
    o.require(s.all_passed(), tag + "recorded assertion failed");
    o.require(intersects(s.limit, log2), tag + "limit != log 2");
    RealBall rate = log3 / RealBall(kPrec, static_cast<long>(s.n + 1));
    o.require(certainly_le(abs(s.error - log2), rate), tag + "E_n not within log 3/(n+1) of log 2");
    o.require(mpfr_cmp_si_2exp(s.error.radius().get(), 1, kBmRadiusLog2) <= 0, tag + "E_n radius > 2^-40");
  }
  const double elapsed = seconds_since(t0);
  o.require(elapsed < kBmLimitSeconds, "over the time limit");
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "Baker-Masser kappa = 2, l = 3, n = 10,50,100: E_100 = %.15Lf (log 2 + log 3/101 = %.15Lf); "
                "kappa = 1/2 reciprocal; %.1f s",
                direct.empty() ? 0.0L : direct.back().error.mid_ld(), std::log(2.0L) + std::log(3.0L) / 101,
                elapsed);
  print(3, o, buf);
}

// ---- 4 and 5 ----

struct SuiteTally {
  std::size_t reports = 0, fail = 0, indet = 0, pre_escalation = 0, nonpositive_slack = 0;
};

SuiteTally tally(const std::vector<CheckReport>& reports) {
  SuiteTally t;
  t.reports = reports.size();
  for (const auto& r : reports) {
    t.fail += r.verdict == Verdict::fail;
    t.indet += r.verdict == Verdict::indeterminate;
    t.pre_escalation += r.escalations > 0 || r.verdict == Verdict::indeterminate;
    t.nonpositive_slack += !r.slack.is_positive();
  }
  return t;
}

void criterion_lemmas() {
  Outcome o;
  const auto t0 = Clock::now();
  CorpusConfig cfg;  // seed 20240611, 500 cases, degree <= 20, coefficients in [-100, 100]
  cfg.prec = kPrec;
  std::string summary;
  for (Suite s : {Suite::sandwich, Suite::liouville, Suite::image, Suite::hprime, Suite::zero}) {
    auto reports = run_suite(s, cfg, kernels::Exec::serial);
    SuiteTally t = tally(reports);
    const std::string name(to_string(s));
    o.require(t.reports >= cfg.cases, name + ": fewer reports than cases");
    o.require(t.fail == 0, name + ": " + std::to_string(t.fail) + " fails");
    o.require(t.indet == 0, name + ": " + std::to_string(t.indet) + " indeterminate after escalation");
    o.require(static_cast<double>(t.pre_escalation) <= kIndeterminateFraction * static_cast<double>(t.reports),
              name + ": " + std::to_string(t.pre_escalation) + " undecided before escalation");
    summary += name + " " + std::to_string(t.reports - t.fail - t.indet) + "/" + std::to_string(t.reports) + " ";
  }
  const double elapsed = seconds_since(t0);
  o.require(elapsed < kLemmaLimitSeconds, "over the time limit");
  char buf[64];
  std::snprintf(buf, sizeof buf, "(%.1f s)", elapsed);
  print(4, o, "lemma suites pass: " + summary + buf);
}

void criterion_small_height() {
  Outcome o;
  CorpusConfig cfg;
  cfg.prec = kPrec;
  std::string summary;
  for (Suite s : {Suite::arch_upper, Suite::rootunity, Suite::padic}) {
    auto reports = run_suite(s, cfg, kernels::Exec::serial);
    SuiteTally t = tally(reports);
    const std::string name(to_string(s));
    o.require(t.reports > 0, name + ": empty");
    o.require(t.fail == 0 && t.indet == 0, name + ": not all pass");
    o.require(t.nonpositive_slack == 0,
              name + ": " + std::to_string(t.nonpositive_slack) + " reports without positive certified slack");
    std::map<std::string, std::size_t> by_id;
    for (const auto& r : reports) ++by_id[r.check_id];
    summary += name + " " + std::to_string(t.reports - t.fail - t.indet) + "/" + std::to_string(t.reports);
    if (s == Suite::padic) {
      for (const char* id : {"padic_one", "padic_upper", "padic_rootunity"}) {
        o.require(by_id[id] > 0, std::string("no ") + id + " reports");
      }
      summary += " (one " + std::to_string(by_id["padic_one"]) + ", upper " +
                 std::to_string(by_id["padic_upper"]) + ", rootunity " +
                 std::to_string(by_id["padic_rootunity"]) + ")";
    }
    summary += " ";
  }
  print(5, o, "small-height suites pass with positive slack: " + summary);
}

// ---- 6 ----

void criterion_oracles() {
  Outcome o;
  std::mt19937_64 rng(kDefaultCorpusSeed + 6);
  std::size_t pairs = 0, agree = 0;
  while (pairs < kOraclePairs) {
    IntPoly T = random_irreducible(rng, 10, 20);
    IntPoly K = random_irreducible(rng, 4, 10);
    if (T == K) continue;
    std::uniform_int_distribution<std::size_t> pick(0, K.deg() - 1);
    const AlgebraicNumber kappa(K, ArchEmbedding{pick(rng)}, true);
    ++pairs;
    const RealBall d(kPrec, static_cast<long>(T.deg()));
    // Closed form (1/d) log|T(kappa)/t|.
    RealBall closed = (log_abs_at_arch(T, kappa, kPrec) - log(abs(RealBall(kPrec, T.leading())))) / d;
    // Root sum (1/d) sum log|s - kappa|, raising precision if a distance straddles 0.
    std::optional<RealBall> sum;
    for (mpfr_prec_t w = kPrec; w <= kPrecisionCap && !sum; w *= 2) {
      ComplexBall z = kappa.arch_value(w);
      RealBall acc(w, 0L);
      bool ok = true;
      for (const auto& r : complex_roots(T, w).flat()) {
        RealBall dist = abs(r - z);
        if (!dist.is_positive()) {
          ok = false;
          break;
        }
        acc += log(dist);
      }
      if (ok) sum = with_prec(acc / RealBall(w, static_cast<long>(T.deg())), kPrec);
    }
    if (sum && intersects(closed, *sum)) ++agree;
  }
  o.require(agree == pairs, std::to_string(pairs - agree) + " pairs disagree");

  auto arch = oracle::arch_box_search();
  auto padic = oracle::padic_box_search();
  o.require(arch.violations == 0, std::to_string(arch.violations) + " archimedean lattice outputs rejected");
  o.require(padic.violations == 0, std::to_string(padic.violations) + " p-adic lattice outputs rejected");
  o.require(arch.tested >= 100 && padic.tested >= 290, "lattice corpus too small");
  char buf[240];
  std::snprintf(buf, sizeof buf,
                "closed form vs root sum: %zu/%zu pairs intersect; lattice dim <= 4 vs exhaustive search: "
                "arch %d ok (%d boundary uncertified), p-adic %d ok (%d widened)",
                agree, pairs, arch.tested - arch.violations, arch.uncertified, padic.tested - padic.violations,
                padic.widened);
  print(6, o, buf);
}

void guarded(int k, const std::function<void()>& f) {
  try {
    f();
  } catch (const std::exception& e) {
    Outcome o;
    o.require(false, std::string("exception: ") + e.what());
    print(k, o, "");
  }
}

}  // namespace

int main() {
  std::string first_json;
  double first_seconds = 0;
  bool have_first = false;

  guarded(1, [&] {
    Outcome o;
    const long double h_oracle = quadratic_height(5, -6, 5);
    const RealBall h = weil_height(arch_kappa(), kPrec);
    o.require(std::fabs(h.mid_ld() - h_oracle) < 1e-15L && std::fabs(h_oracle - std::log(5.0L) / 2) < 1e-15L,
              "h(kappa) differs from the quadratic oracle");
    first_json = run_arch_sequence(o, first_seconds);
    have_first = true;
    char buf[160];
    std::snprintf(buf, sizeof buf, "archimedean kappa-sequence at 256 bits: h(kappa) = %.5Lf, 3 steps, %.1f s",
                  h.mid_ld(), first_seconds);
    print(1, o, buf);
  });
  guarded(2, criterion_padic);
  guarded(3, criterion_bm);
  guarded(4, criterion_lemmas);
  guarded(5, criterion_small_height);
  guarded(6, criterion_oracles);
  guarded(7, [&] {
    Outcome o;
    o.require(have_first, "criterion 1 did not produce output");
    double again_seconds = 0;
    Outcome scratch;
    std::string again = run_arch_sequence(scratch, again_seconds);
    o.require(again == first_json, "JSON differs between runs");
    print(7, o, "rerun of criterion 1 is bit-identical: sha256 " + sha256_hex(again).substr(0, 16) + ", " +
                    std::to_string(again.size()) + " bytes");
  });
  return g_all_pass ? 0 : 1;
}
