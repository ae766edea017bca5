#include "doctest.h"

#include "equilog/error.hpp"
#include "equilog/report.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace equilog;

TEST_CASE("json shapes") {
  Json b = to_json(RealBall(128, mpq_class(1, 4)));
  CHECK(b["bits"] == 128);
  CHECK(b["rad"] == "0");
  CHECK(std::stod(b["mid"].get<std::string>()) == 0.25);
  CHECK(to_json(mpq_class(-6, 4)) == Json{{"num", "-3"}, {"den", "2"}});
  CHECK(to_json(parse_poly("5X^2 - 6X + 5")) == Json::array({"5", "-6", "5"}));
  CHECK(to_json(mpz_class("123456789012345678901234567890")) == "123456789012345678901234567890");

  auto reports = check_sandwich(parse_poly("X - 2"));
  Json r = to_json(reports[0]);
  CHECK(r["check_id"] == "sandwich_lower");
  CHECK(r["verdict"] == "pass");
  CHECK(r.begin().key() == "check_id");
  CHECK(r["digest"].get<std::string>().size() == 16);
}

TEST_CASE("csv quoting and summaries") {
  CheckReport r = certify("id", "a,\"b\"", 64, [](mpfr_prec_t w) {
    return std::pair{RealBall(w, 1L), RealBall(w, 2L)};
  });
  std::string csv = reports_csv({r});
  CHECK(csv.find(",\"a,\"\"b\"\"\",pass,") != std::string::npos);
  std::string s = summary_csv(summarize({r, r}));
  CHECK(s.find("id,2,0,0,0,") != std::string::npos);
}

TEST_CASE("serialization is deterministic") {
  const AlgebraicNumber k13(parse_poly("5X^2 - 6X + 5"), PadicEmbedding{13, 0});
  auto a = build_kappa_sequence(k13, Place::prime(13), 2);
  auto b = build_kappa_sequence(k13, Place::prime(13), 2);
  Json ja = Json::array(), jb = Json::array();
  for (const auto& s : a) ja.push_back(to_json(s));
  for (const auto& s : b) jb.push_back(to_json(s));
  CHECK(dump(ja) == dump(jb));
  CHECK(ja[0]["avg_log_p"].is_object());
  CHECK(ja[0]["all_passed"] == true);
}

TEST_CASE("run config and run directory") {
  RunConfig c;
  CHECK_NOTHROW(validate(c));
  RunConfig bad = c;
  bad.precision_bits = 8;
  CHECK_THROWS_AS(validate(bad), Error);
  bad = c;
  bad.jobs = 0;
  CHECK_THROWS_AS(validate(bad), Error);
  CHECK(parse_format("csv") == Format::csv);
  CHECK_FALSE(parse_format("xml").has_value());

  Json cmd{{"subcommand", "verify"}};
  RunConfig other = c;
  other.jobs = 4;
  other.output_dir = "elsewhere";
  CHECK(config_hash(c, cmd) == config_hash(other, cmd));
  other.precision_bits = 512;
  CHECK(config_hash(c, cmd) != config_hash(other, cmd));

  namespace fs = std::filesystem;
  c.output_dir = (fs::temp_directory_path() / "equilog_report_test").string();
  fs::remove_all(c.output_dir);
  const std::string ts = "20240101T000000Z";
  fs::path d1 = create_run_dir(c, cmd, ts);
  fs::path d2 = create_run_dir(c, cmd, ts);
  CHECK(d1.filename() == "run-" + ts + "-" + config_hash(c, cmd));
  CHECK(d2 != d1);
  std::string digest = write_file(d1, "x.txt", "abc");
  CHECK(digest == sha256_hex("abc"));
  write_manifest(d1, c, cmd, ts, {{"x.txt", digest}});
  std::ifstream in(d1 / "manifest.json");
  std::stringstream buf;
  buf << in.rdbuf();
  Json m = Json::parse(buf.str());
  CHECK(m["files"][0]["sha256"] == digest);
  CHECK(m["config"]["precision_bits"] == 256);
  fs::remove_all(c.output_dir);
}
