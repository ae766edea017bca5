// equilog: heights, averages, counterexample constructions and verification
// corpora from the command line.
//
// Exit codes: 0 all checks pass, 1 some check fails, 2 usage or parse error,
// 3 budget or precision exhausted.

#include "equilog/construct.hpp"
#include "equilog/error.hpp"
#include "equilog/heights.hpp"
#include "equilog/padics.hpp"
#include "equilog/report.hpp"
#include "equilog/verify.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <iostream>
#include <string>

using namespace equilog;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

struct Options {
  RunConfig run;
  std::string format;  // empty: text on stdout, json files
};

Place parse_place(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "oo") return Place::infinity();
  mpz_class p;
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos || p.set_str(text, 10) != 0) {
    throw Error(ErrorKind::parse, "place must be 'inf' or a prime, got '" + text + "'");
  }
  return Place::prime(p);
}

AlgebraicNumber embedded(const std::string& poly, std::size_t index, const Place& nu) {
  if (nu.is_infinite()) return AlgebraicNumber(parse_poly(poly), ArchEmbedding{index});
  return AlgebraicNumber(parse_poly(poly), PadicEmbedding{nu.p(), index});
}

std::string ball_text(const RealBall& b) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.20Lg +/- %.3Lg", b.mid_ld() + 0.0L, std::stold(b.rad_string()));
  return buf;
}

void finish_config(Options& o) {
  if (!o.format.empty()) {
    auto f = parse_format(o.format);
    if (!f) throw Error(ErrorKind::parse, "format must be json or csv");
    o.run.format = *f;
  }
  validate(o.run);
}

struct RunOutput {
  std::filesystem::path dir;
  std::string timestamp;
  std::vector<std::pair<std::string, std::string>> files;

  void add(const std::string& name, const std::string& text) {
    files.emplace_back(name, write_file(dir, name, text));
  }
};

RunOutput open_run(const Options& o, const Json& command) {
  RunOutput out;
  out.timestamp = utc_timestamp();
  out.dir = create_run_dir(o.run, command, out.timestamp);
  return out;
}

// ---- height ----

struct HeightArgs {
  std::string poly;
  std::size_t embedding = 0;
  std::string place = "inf";
};

int cmd_height(const Options& o, const HeightArgs& a) {
  const mpfr_prec_t prec = o.run.precision_bits;
  const Place nu = parse_place(a.place);
  const AlgebraicNumber alpha = embedded(a.poly, a.embedding, nu);
  const IntPoly& P = alpha.minpoly();
  const RealBall h = weil_height(alpha, prec);
  const RealBall hp = modified_height(alpha, prec);
  const RealBall M = mahler_measure(P, prec);
  const RealBall H = exp(h);
  const auto order = is_root_of_unity(P);

  Json j;
  j["poly"] = P.to_string();
  j["degree"] = P.deg();
  j["place"] = nu.to_string();
  j["embedding"] = a.embedding;
  j["h"] = to_json(h);
  j["h_prime"] = to_json(hp);
  j["H"] = to_json(H);
  j["M"] = to_json(M);
  j["root_of_unity_order"] = order ? Json(*order) : Json(nullptr);
  if (nu.is_infinite()) {
    ComplexBall z = alpha.arch_value(prec);
    j["value"] = Json{{"re", to_json(z.re())}, {"im", to_json(z.im())}};
  } else {
    j["valuation"] = to_json(alpha.padic_point(nu.p(), o.run.padic_precision_exponent).root_valuation());
  }

  if (o.format == "json") {
    std::cout << dump(j);
  } else if (o.format == "csv") {
    std::cout << "poly,degree,h_mid,h_rad,h_prime_mid,H_mid,M_mid,root_of_unity_order\n"
              << '"' << P.to_string() << "\"," << P.deg() << ',' << h.mid_string() << ','
              << h.rad_string() << ',' << hp.mid_string() << ',' << H.mid_string() << ','
              << M.mid_string() << ',' << (order ? std::to_string(*order) : "") << '\n';
  } else {
    std::cout << "poly           " << P.to_string() << "\n"
              << "degree         " << P.deg() << "\n"
              << "h              " << ball_text(h) << "\n"
              << "h'             " << ball_text(hp) << "\n"
              << "H              " << ball_text(H) << "\n"
              << "M              " << ball_text(M) << "\n"
              << "root of unity  " << (order ? "yes, order " + std::to_string(*order) : "no") << "\n";
    if (nu.is_infinite()) {
      ComplexBall z = alpha.arch_value(prec);
      std::cout << "value          " << ball_text(z.re()) << " + i (" << ball_text(z.im()) << ")\n";
    } else {
      std::cout << "v_" << nu.to_string() << "(alpha)     "
                << alpha.padic_point(nu.p(), o.run.padic_precision_exponent).root_valuation().get_str() << "\n";
    }
  }
  return kExitPass;
}

// ---- average ----

struct AverageArgs {
  std::string alpha;
  std::size_t alpha_embedding = 0;
  std::string kappa;
  std::size_t kappa_embedding = 0;
  std::string place = "inf";
};

int cmd_average(const Options& o, const AverageArgs& a) {
  const mpfr_prec_t prec = o.run.precision_bits;
  const Place nu = parse_place(a.place);
  const AlgebraicNumber alpha(parse_poly(a.alpha), ArchEmbedding{a.alpha_embedding});
  const AlgebraicNumber kappa = embedded(a.kappa, a.kappa_embedding, nu);
  const RealBall avg = log_distance_average(alpha, kappa, nu, prec);
  const RealBall ref = log_max_one(kappa, nu, prec);
  const RealBall err = abs(avg - ref);

  if (o.format == "json") {
    std::cout << dump(Json{{"alpha", alpha.minpoly().to_string()},
                           {"kappa", kappa.minpoly().to_string()},
                           {"place", nu.to_string()},
                           {"avg", to_json(avg)},
                           {"ref", to_json(ref)},
                           {"E", to_json(err)}});
  } else if (o.format == "csv") {
    std::cout << "avg_mid,avg_rad,ref_mid,ref_rad,E_mid,E_rad\n"
              << avg.mid_string() << ',' << avg.rad_string() << ',' << ref.mid_string() << ','
              << ref.rad_string() << ',' << err.mid_string() << ',' << err.rad_string() << '\n';
  } else {
    std::cout << "avg  " << ball_text(avg) << "\n"
              << "ref  " << ball_text(ref) << "\n"
              << "E    " << ball_text(err) << "\n";
  }
  return kExitPass;
}

// ---- construct ----

struct ConstructArgs {
  std::string kind;
  std::string kappa;
  std::size_t embedding = 0;
  std::string place = "inf";
  std::size_t k_max = 3;
  std::vector<unsigned long> ns;
  unsigned long n_max = 0;
};

int cmd_construct(const Options& o, const ConstructArgs& a) {
  const Place nu = parse_place(a.place);
  const AlgebraicNumber kappa = embedded(a.kappa, a.embedding, nu);
  ConstructConfig cfg;
  cfg.prec = o.run.precision_bits;
  cfg.budget = o.run.enumeration_budget;
  cfg.padic_prec = o.run.padic_precision_exponent;
  cfg.jobs = o.run.jobs;

  Json command{{"subcommand", "construct"},
               {"kind", a.kind},
               {"kappa", kappa.minpoly().to_string()},
               {"embedding", a.embedding},
               {"place", nu.to_string()}};
  const bool csv = o.run.format == Format::csv;

  if (a.kind == "kappa") {
    command["k_max"] = a.k_max;
    auto steps = build_kappa_sequence(kappa, nu, a.k_max, cfg);
    auto checks = check_sequence(steps, kappa, nu, cfg.prec);
    bool ok = true;
    for (const auto& s : steps) {
      std::cout << "step " << s.k << "  n = " << s.n << "  deg T = " << s.T.deg() << "  avg = "
                << ball_text(s.avg) << "  " << (s.all_passed() ? "pass" : "FAIL") << "\n";
      ok = ok && s.all_passed();
    }
    for (const auto& r : checks) ok = ok && r.verdict == Verdict::pass;
    RunOutput out = open_run(o, command);
    if (csv) {
      out.add("steps.csv", steps_csv(steps));
      out.add("checks.csv", reports_csv(checks));
    } else {
      Json js = Json::array();
      for (const auto& s : steps) js.push_back(to_json(s));
      Json jc = Json::array();
      for (const auto& r : checks) jc.push_back(to_json(r));
      out.add("steps.json", dump(js));
      out.add("checks.json", dump(jc));
    }
    write_manifest(out.dir, o.run, command, out.timestamp, out.files);
    std::cout << "wrote " << out.dir.string() << "\n";
    return ok ? kExitPass : kExitFail;
  }

  std::vector<unsigned long> ns = a.ns;
  if (ns.empty() && a.n_max > 0) {
    for (unsigned long n = 1; n <= a.n_max; ++n) ns.push_back(n);
  }
  if (ns.empty()) ns = {10, 50, 100};
  command["ns"] = ns;
  auto steps = build_bm_sequence(kappa, nu, ns, cfg);
  bool ok = true;
  for (const auto& s : steps) {
    std::cout << "n = " << s.n << "  l = " << s.l << "  E = " << ball_text(s.error) << "  "
              << (s.all_passed() ? "pass" : "FAIL") << "\n";
    ok = ok && s.all_passed();
  }
  RunOutput out = open_run(o, command);
  if (csv) {
    out.add("bm.csv", bm_csv(steps));
  } else {
    Json js = Json::array();
    for (const auto& s : steps) js.push_back(to_json(s));
    out.add("bm.json", dump(js));
  }
  write_manifest(out.dir, o.run, command, out.timestamp, out.files);
  std::cout << "wrote " << out.dir.string() << "\n";
  return ok ? kExitPass : kExitFail;
}

// ---- verify ----

struct VerifyArgs {
  std::string suite;
  std::size_t cases = 500;
  std::size_t max_degree = 20;
  long coeff_bound = 100;
};

int cmd_verify(const Options& o, const VerifyArgs& a) {
  std::vector<Suite> suites;
  if (a.suite == "all") {
    suites = all_suites();
  } else if (auto s = parse_suite(a.suite)) {
    suites.push_back(*s);
  } else {
    throw Error(ErrorKind::parse, "unknown suite '" + a.suite + "'");
  }
  CorpusConfig cfg;
  cfg.seed = o.run.corpus_seed;
  cfg.cases = a.cases;
  cfg.max_degree = a.max_degree;
  cfg.coeff_bound = a.coeff_bound;
  cfg.prec = o.run.precision_bits;
  cfg.jobs = o.run.jobs;

  Json command{{"subcommand", "verify"},
               {"suite", a.suite},
               {"cases", a.cases},
               {"max_degree", a.max_degree},
               {"coeff_bound", a.coeff_bound}};
  std::vector<CheckReport> all;
  for (Suite s : suites) {
    auto reports = run_suite(s, cfg, o.run.jobs > 1 ? kernels::Exec::parallel : kernels::Exec::serial);
    all.insert(all.end(), std::make_move_iterator(reports.begin()), std::make_move_iterator(reports.end()));
  }
  auto rows = summarize(all);
  std::size_t fails = 0;
  std::printf("%-22s %6s %6s %6s %6s\n", "check", "pass", "fail", "indet", "escal");
  for (const auto& r : rows) {
    std::printf("%-22s %6zu %6zu %6zu %6zu\n", r.check_id.c_str(), r.pass, r.fail, r.indeterminate,
                r.escalated);
    fails += r.fail;
  }
  RunOutput out = open_run(o, command);
  if (o.run.format == Format::csv) {
    out.add("reports.csv", reports_csv(all));
    out.add("summary.csv", summary_csv(rows));
  } else {
    Json jr = Json::array();
    for (const auto& r : all) jr.push_back(to_json(r));
    Json js = Json::array();
    for (const auto& r : rows) js.push_back(to_json(r));
    out.add("reports.json", dump(jr));
    out.add("summary.json", dump(js));
  }
  write_manifest(out.dir, o.run, command, out.timestamp, out.files);
  std::cout << "wrote " << out.dir.string() << "\n";
  return fails == 0 ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heights, equidistribution averages, counterexample constructions and certified checks"};
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  long prec = kDefaultPrecision;
  app.add_option("--prec", prec, "working precision in bits")->envname("EQUILOG_PRECISION");
  app.add_option("--budget", o.run.enumeration_budget, "lattice enumeration node budget");
  app.add_option("--padic-prec", o.run.padic_precision_exponent, "initial p-adic precision exponent");
  app.add_option("--seed", o.run.corpus_seed, "corpus seed");
  app.add_option("--jobs", o.run.jobs, "worker threads");
  app.add_option("--out", o.run.output_dir, "output directory for run reports");
  app.add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  HeightArgs ha;
  auto* height = app.add_subcommand("height", "h, h', H, M and root-of-unity test");
  height->add_option("poly", ha.poly, "minimal polynomial, e.g. \"5X^2 - 6X + 5\"")->required();
  height->add_option("--embedding", ha.embedding, "root index (archimedean) or local factor index (p-adic)");
  height->add_option("--place", ha.place, "inf or a prime");

  AverageArgs aa;
  auto* average = app.add_subcommand("average", "average of log|s - kappa| over conjugates s of alpha");
  average->add_option("--alpha", aa.alpha, "minimal polynomial of alpha")->required();
  average->add_option("--alpha-embedding", aa.alpha_embedding, "root index of alpha");
  average->add_option("--kappa", aa.kappa, "minimal polynomial of kappa")->required();
  average->add_option("--kappa-embedding", aa.kappa_embedding, "embedding index of kappa");
  average->add_option("--place", aa.place, "inf or a prime");

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "build a counterexample sequence and check it");
  construct->add_option("kind", ca.kind, "kappa or bm")->required()->check(CLI::IsMember({"kappa", "bm"}));
  construct->add_option("--kappa", ca.kappa, "minimal polynomial of kappa")->required();
  construct->add_option("--embedding", ca.embedding, "embedding index of kappa");
  construct->add_option("--place", ca.place, "inf or a prime");
  construct->add_option("--k-max", ca.k_max, "number of steps (kappa)");
  construct->add_option("--n", ca.ns, "exponents (bm)")->delimiter(',');
  construct->add_option("--n-max", ca.n_max, "use exponents 1..n-max (bm)");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run a verification corpus");
  verify->add_option("suite", va.suite,
                     "sandwich, liouville, image, hprime, arch-upper, rootunity, padic, zero or all")
      ->required();
  verify->add_option("--cases", va.cases, "cases per randomized suite");
  verify->add_option("--max-degree", va.max_degree, "maximum degree of random polynomials");
  verify->add_option("--coeff-bound", va.coeff_bound, "coefficient bound of random polynomials");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    o.run.precision_bits = static_cast<mpfr_prec_t>(prec);
    finish_config(o);
    if (*height) return cmd_height(o, ha);
    if (*average) return cmd_average(o, aa);
    if (*construct) return cmd_construct(o, ca);
    return cmd_verify(o, va);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.is_resource()) return kExitResource;
    if (e.kind() == ErrorKind::parse || e.kind() == ErrorKind::precondition) return kExitUsage;
    return kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
}
