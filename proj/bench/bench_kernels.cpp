// Serial reference vs OpenMP timings for the data-parallel kernels: the
// Aberth sweep, the unit-circle sampling grid (long double and MPFR), and the
// verification corpus runner. Each row also checks that both modes agree
// value for value; the exit status is 1 if any row disagrees.

#include "equilog/kernels.hpp"
#include "equilog/roots.hpp"
#include "equilog/verify.hpp"

#include "CLI11.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

using namespace equilog;

namespace {

using Clock = std::chrono::steady_clock;

double best_ms(int reps, const std::function<void()>& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    f();
    best = std::min(best, std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
  }
  return best;
}

bool g_agree = true;

void row(const std::string& name, double serial_ms, double parallel_ms, bool same) {
  g_agree = g_agree && same;
  std::printf("%-34s %12.2f %12.2f %8.2fx  %s\n", name.c_str(), serial_ms, parallel_ms,
              serial_ms / parallel_ms, same ? "identical" : "DIFFERENT");
  std::fflush(stdout);
}

IntPoly random_dense(std::mt19937_64& rng, std::size_t degree) {
  std::uniform_int_distribution<long> dist(-100, 100);
  std::vector<mpz_class> c(degree + 1);
  for (auto& e : c) e = dist(rng);
  if (c.back() == 0) c.back() = 1;
  return IntPoly(c);
}

void bench_aberth(std::size_t degree, int sweeps, int reps) {
  std::mt19937_64 rng(1);
  const auto coeffs = kernels::to_long_double(random_dense(rng, degree));
  std::vector<kernels::cld> start(degree);
  for (std::size_t k = 0; k < degree; ++k) start[k] = std::polar(1.1L, 6.283185307179586L * (k + 0.25L) / degree);
  std::vector<kernels::cld> zs, zp;
  auto run = [&](kernels::Exec e, std::vector<kernels::cld>& z) {
    z = start;
    for (int s = 0; s < sweeps; ++s) kernels::aberth_sweep(coeffs, z, e);
  };
  double ts = best_ms(reps, [&] { run(kernels::Exec::serial, zs); });
  double tp = best_ms(reps, [&] { run(kernels::Exec::parallel, zp); });
  row("aberth sweep d=" + std::to_string(degree) + " x" + std::to_string(sweeps), ts, tp, zs == zp);
}

void bench_samples_ld(std::size_t degree, std::size_t grid, int reps) {
  std::mt19937_64 rng(2);
  const auto coeffs = kernels::to_long_double(random_dense(rng, degree));
  std::vector<long double> s, p;
  bool hit = false;
  double ts = best_ms(reps, [&] { kernels::log_abs_samples_ld(coeffs, grid, 0.5L, s, hit, kernels::Exec::serial); });
  double tp = best_ms(reps, [&] { kernels::log_abs_samples_ld(coeffs, grid, 0.5L, p, hit, kernels::Exec::parallel); });
  row("circle samples ld d=" + std::to_string(degree) + " n=" + std::to_string(grid), ts, tp, s == p);
}

void bench_samples_mpfr(std::size_t degree, std::size_t grid, mpfr_prec_t prec, int reps) {
  std::mt19937_64 rng(3);
  const IntPoly P = random_dense(rng, degree);
  std::vector<long double> s, p;
  bool hit = false;
  double ts = best_ms(reps, [&] { kernels::log_abs_samples_mpfr(P, grid, 0.5L, prec, s, hit, kernels::Exec::serial); });
  double tp =
      best_ms(reps, [&] { kernels::log_abs_samples_mpfr(P, grid, 0.5L, prec, p, hit, kernels::Exec::parallel); });
  row("circle samples mpfr" + std::to_string(prec) + " d=" + std::to_string(degree) + " n=" + std::to_string(grid),
      ts, tp, s == p);
}

void bench_roots(std::size_t degree, int reps) {
  std::mt19937_64 rng(4);
  const IntPoly P = random_dense(rng, degree);
  std::vector<std::string> s, p;
  auto run = [&](kernels::Exec e, std::vector<std::string>& out) {
    RootOptions opts;
    opts.exec = e;
    clear_root_cache();
    out.clear();
    for (const auto& z : complex_roots(P, kDefaultPrecision, opts).flat()) {
      out.push_back(z.re().mid_string() + "," + z.im().mid_string());
    }
  };
  double ts = best_ms(reps, [&] { run(kernels::Exec::serial, s); });
  double tp = best_ms(reps, [&] { run(kernels::Exec::parallel, p); });
  row("certified roots d=" + std::to_string(degree), ts, tp, s == p);
}

void bench_corpus(Suite suite, std::size_t cases, int jobs, int reps) {
  CorpusConfig cfg;
  cfg.cases = cases;
  cfg.jobs = jobs;
  std::vector<CheckReport> s, p;
  double ts = best_ms(reps, [&] {
    clear_root_cache();
    s = run_suite(suite, cfg, kernels::Exec::serial);
  });
  double tp = best_ms(reps, [&] {
    clear_root_cache();
    p = run_suite(suite, cfg, kernels::Exec::parallel);
  });
  bool same = s.size() == p.size();
  for (std::size_t i = 0; same && i < s.size(); ++i) {
    same = s[i].digest == p[i].digest && s[i].verdict == p[i].verdict &&
           s[i].lhs.mid_string() == p[i].lhs.mid_string() && s[i].rhs.mid_string() == p[i].rhs.mid_string();
  }
  row("corpus " + std::string(to_string(suite)) + " x" + std::to_string(cases), ts, tp, same);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs OpenMP kernel timings"};
  bool quick = false;
  int reps = 3;
  int threads = 0;
  app.add_flag("--quick", quick, "small sizes, one repetition");
  app.add_option("--reps", reps, "repetitions (best time is reported)");
  app.add_option("--threads", threads, "OpenMP threads (default: runtime default)");
  CLI11_PARSE(app, argc, argv);
  if (quick) reps = 1;
  if (threads > 0) omp_set_num_threads(threads);
  const int jobs = threads > 0 ? threads : omp_get_max_threads();

  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
  std::printf("%-34s %12s %12s %9s\n", "kernel", "serial ms", "parallel ms", "speedup");
  bench_aberth(quick ? 64 : 512, quick ? 5 : 20, reps);
  bench_samples_ld(quick ? 20 : 100, quick ? 1 << 12 : 1 << 18, reps);
  bench_samples_mpfr(quick ? 20 : 100, quick ? 256 : 4096, 256, reps);
  bench_roots(quick ? 30 : 120, reps);
  bench_corpus(Suite::sandwich, quick ? 20 : 200, jobs, reps);
  bench_corpus(Suite::zero, quick ? 20 : 200, jobs, reps);
  return g_agree ? 0 : 1;
}
