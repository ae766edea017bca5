#include "equilog/report.hpp"

#include "equilog/error.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

namespace equilog {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

Json exact_list(const std::vector<ExactAssertion>& xs) {
  Json out = Json::array();
  for (const auto& e : xs) out.push_back(Json{{"id", e.id}, {"passed", e.passed}});
  return out;
}

Json assertion_list(const std::vector<Assertion>& xs) {
  Json out = Json::array();
  for (const auto& a : xs) out.push_back(to_json(a));
  return out;
}

}  // namespace

Json to_json(const RealBall& b) {
  return Json{{"mid", b.mid_string()}, {"rad", b.rad_string()}, {"bits", b.prec()}};
}

Json to_json(const mpz_class& z) { return z.get_str(); }

Json to_json(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  return Json{{"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}};
}

Json to_json(const IntPoly& p) {
  Json out = Json::array();
  for (const auto& c : p.coeffs()) out.push_back(c.get_str());
  return out;
}

Json to_json(const Assertion& a) {
  return Json{{"id", a.id},
              {"lhs", to_json(a.lhs)},
              {"rhs", to_json(a.rhs)},
              {"strict", a.strict},
              {"passed", a.passed}};
}

Json to_json(const SequenceStep& s) {
  Json j;
  j["k"] = s.k;
  j["n"] = s.n;
  j["A"] = to_json(s.A);
  j["R"] = to_json(s.R);
  j["S"] = to_json(s.S);
  j["T"] = to_json(s.T);
  j["deg_T"] = s.T.is_zero() ? 0 : s.T.deg();
  j["q"] = to_json(s.q);
  j["delta"] = s.delta;
  j["eisenstein_e"] = s.eisenstein_e;
  j["aux_prime"] = to_json(s.aux_prime);
  j["A_value"] = to_json(s.A_value);
  j["A_bound"] = to_json(s.A_bound);
  j["f"] = s.f;
  j["A_valuation"] = s.A_valuation ? to_json(*s.A_valuation) : Json(nullptr);
  j["Lambda"] = to_json(s.Lambda);
  j["widened"] = s.widened;
  j["enumeration"] = Json{{"nodes", s.stats.nodes}, {"final_radius_sq", s.stats.final_radius_sq}};
  j["avg"] = to_json(s.avg);
  j["avg_log_p"] = s.avg_log_p ? to_json(*s.avg_log_p) : Json(nullptr);
  j["height_alpha"] = to_json(s.height_alpha);
  j["envelopes"] =
      Json{{"upper", to_json(s.env.upper)}, {"lower", to_json(s.env.lower)}, {"height", to_json(s.env.height)}};
  j["assertions"] = assertion_list(s.assertions);
  j["exact"] = exact_list(s.exact);
  j["all_passed"] = s.all_passed();
  return j;
}

Json to_json(const BmStep& s) {
  Json j;
  j["n"] = s.n;
  j["reciprocal"] = s.reciprocal;
  j["Q"] = to_json(s.Q);
  j["l"] = to_json(s.l);
  j["minpoly"] = to_json(s.minpoly);
  j["eisenstein_e"] = s.eisenstein_e;
  j["avg"] = to_json(s.avg);
  j["closed_form"] = to_json(s.closed_form);
  j["reference"] = to_json(s.reference);
  j["error"] = to_json(s.error);
  j["limit"] = to_json(s.limit);
  j["height_alpha"] = to_json(s.height_alpha);
  j["height_bound"] = to_json(s.height_bound);
  j["assertions"] = assertion_list(s.assertions);
  j["exact"] = exact_list(s.exact);
  j["all_passed"] = s.all_passed();
  return j;
}

Json to_json(const CheckReport& r) {
  return Json{{"check_id", r.check_id},
              {"inputs", r.inputs},
              {"digest", r.digest},
              {"lhs", to_json(r.lhs)},
              {"rhs", to_json(r.rhs)},
              {"verdict", to_string(r.verdict)},
              {"slack", to_json(r.slack)},
              {"precision_used", r.precision_used},
              {"escalations", r.escalations}};
}

Json to_json(const SuiteSummary& s) {
  return Json{{"check_id", s.check_id},
              {"pass", s.pass},
              {"fail", s.fail},
              {"indeterminate", s.indeterminate},
              {"escalated", s.escalated},
              {"min_slack", s.min_slack ? to_json(*s.min_slack) : Json(nullptr)},
              {"max_slack", s.max_slack ? to_json(*s.max_slack) : Json(nullptr)}};
}

std::string steps_csv(const std::vector<SequenceStep>& steps) {
  std::ostringstream out;
  out << "k,n,deg_T,q,delta,f,eisenstein_e,avg_mid,avg_rad,lower_envelope,upper_envelope,"
         "height_alpha,height_bound,nodes,all_passed\n";
  for (const auto& s : steps) {
    out << s.k << ',' << s.n << ',' << (s.T.is_zero() ? 0 : s.T.deg()) << ',' << s.q << ','
        << s.delta << ',' << s.f << ',' << s.eisenstein_e << ',' << s.avg.mid_string() << ','
        << s.avg.rad_string() << ',' << s.env.lower.mid_string() << ',' << s.env.upper.mid_string()
        << ',' << s.height_alpha.mid_string() << ',' << s.env.height.mid_string() << ','
        << s.stats.nodes << ',' << (s.all_passed() ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string bm_csv(const std::vector<BmStep>& steps) {
  std::ostringstream out;
  out << "n,reciprocal,l,deg_alpha,avg_mid,avg_rad,reference,error_mid,error_rad,limit,"
         "height_alpha,all_passed\n";
  for (const auto& s : steps) {
    out << s.n << ',' << (s.reciprocal ? 1 : 0) << ',' << s.l << ',' << s.minpoly.deg() << ','
        << s.avg.mid_string() << ',' << s.avg.rad_string() << ',' << s.reference.mid_string()
        << ',' << s.error.mid_string() << ',' << s.error.rad_string() << ','
        << s.limit.mid_string() << ',' << s.height_alpha.mid_string() << ','
        << (s.all_passed() ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string reports_csv(const std::vector<CheckReport>& reports) {
  std::ostringstream out;
  out << "check_id,digest,inputs,verdict,lhs_mid,lhs_rad,rhs_mid,rhs_rad,slack_mid,"
         "precision_used,escalations\n";
  for (const auto& r : reports) {
    out << r.check_id << ',' << r.digest << ',' << csv_field(r.inputs) << ',' << to_string(r.verdict)
        << ',' << r.lhs.mid_string() << ',' << r.lhs.rad_string() << ',' << r.rhs.mid_string()
        << ',' << r.rhs.rad_string() << ',' << r.slack.mid_string() << ',' << r.precision_used
        << ',' << r.escalations << '\n';
  }
  return out.str();
}

std::string summary_csv(const std::vector<SuiteSummary>& rows) {
  std::ostringstream out;
  out << "check_id,pass,fail,indeterminate,escalated,min_slack,max_slack\n";
  for (const auto& s : rows) {
    out << s.check_id << ',' << s.pass << ',' << s.fail << ',' << s.indeterminate << ','
        << s.escalated << ',' << (s.min_slack ? s.min_slack->mid_string() : "") << ','
        << (s.max_slack ? s.max_slack->mid_string() : "") << '\n';
  }
  return out.str();
}

std::string_view to_string(Format f) { return f == Format::json ? "json" : "csv"; }

std::optional<Format> parse_format(std::string_view name) {
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  return std::nullopt;
}

void validate(const RunConfig& c) {
  require(c.precision_bits >= 16 && c.precision_bits <= (1 << 20), ErrorKind::precondition,
          "precision must be in [16, 2^20] bits");
  require(c.enumeration_budget > 0, ErrorKind::precondition, "budget must be positive");
  require(c.padic_precision_exponent > 0, ErrorKind::precondition, "p-adic precision must be positive");
  require(c.corpus_seed > 0, ErrorKind::precondition, "seed must be positive");
  require(c.jobs > 0, ErrorKind::precondition, "jobs must be positive");
  require(!c.output_dir.empty(), ErrorKind::precondition, "output directory must be nonempty");
}

Json to_json(const RunConfig& c) {
  return Json{{"precision_bits", c.precision_bits},
              {"enumeration_budget", c.enumeration_budget},
              {"padic_precision_exponent", c.padic_precision_exponent},
              {"corpus_seed", c.corpus_seed},
              {"format", to_string(c.format)}};
}

std::string config_hash(const RunConfig& c, const Json& command) {
  Json j{{"config", to_json(c)}, {"command", command}};
  return sha256_hex(j.dump()).substr(0, 12);
}

std::string utc_timestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%SZ", &tm);
  return buf;
}

std::filesystem::path create_run_dir(const RunConfig& c, const Json& command,
                                     const std::string& timestamp) {
  namespace fs = std::filesystem;
  const fs::path base = fs::path(c.output_dir) / ("run-" + timestamp + "-" + config_hash(c, command));
  fs::create_directories(c.output_dir);
  fs::path dir = base;
  for (int i = 1; !fs::create_directory(dir); ++i) dir = base.string() + "-" + std::to_string(i);
  return dir;
}

std::string write_file(const std::filesystem::path& dir, const std::string& name,
                       const std::string& text) {
  const auto path = dir / name;
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  require(static_cast<bool>(out), ErrorKind::internal, "cannot write " + path.string());
  return sha256_hex(text);
}

void write_manifest(const std::filesystem::path& dir, const RunConfig& c, const Json& command,
                    const std::string& timestamp,
                    const std::vector<std::pair<std::string, std::string>>& files) {
  Json listing = Json::array();
  for (const auto& [name, digest] : files) listing.push_back(Json{{"name", name}, {"sha256", digest}});
  Json m{{"tool", "equilog"},
         {"created", timestamp},
         {"config_hash", config_hash(c, command)},
         {"command", command},
         {"config", to_json(c)},
         {"jobs", c.jobs},
         {"files", listing}};
  write_file(dir, "manifest.json", dump(m));
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace equilog
