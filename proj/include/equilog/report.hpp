#pragma once

// JSON and CSV serialization of balls, polynomials, construction steps and
// check reports, plus the run-directory layout shared by the CLI and the
// acceptance driver. Output is deterministic for fixed inputs.

#include "equilog/ball.hpp"
#include "equilog/construct.hpp"
#include "equilog/intpoly.hpp"
#include "equilog/verify.hpp"

#include "json.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace equilog {

// Insertion-ordered keys keep the serialized field order stable.
using Json = nlohmann::ordered_json;

Json to_json(const RealBall& b);       // {mid, rad, bits}
Json to_json(const mpz_class& z);      // decimal string
Json to_json(const mpq_class& q);      // {num, den}
Json to_json(const IntPoly& p);        // [a_0, ..., a_d] as decimal strings
Json to_json(const Assertion& a);
Json to_json(const SequenceStep& s);
Json to_json(const BmStep& s);
Json to_json(const CheckReport& r);
Json to_json(const SuiteSummary& s);

std::string steps_csv(const std::vector<SequenceStep>& steps);
std::string bm_csv(const std::vector<BmStep>& steps);
std::string reports_csv(const std::vector<CheckReport>& reports);
std::string summary_csv(const std::vector<SuiteSummary>& rows);

enum class Format { json, csv };

std::string_view to_string(Format f);
std::optional<Format> parse_format(std::string_view name);

struct RunConfig {
  mpfr_prec_t precision_bits = kDefaultPrecision;
  std::uint64_t enumeration_budget = kDefaultEnumerationBudget;
  unsigned padic_precision_exponent = kDefaultPadicPrecision;
  std::uint64_t corpus_seed = kDefaultCorpusSeed;
  std::string output_dir = "out";
  Format format = Format::json;
  int jobs = 1;
};

// Throws precondition unless every numeric field is positive and the
// precision is within MPFR's range.
void validate(const RunConfig& c);

// The reproducibility-relevant fields (output_dir and jobs excluded, since
// neither changes any result).
Json to_json(const RunConfig& c);

// First 12 hex digits of SHA-256 over the config and command JSON.
std::string config_hash(const RunConfig& c, const Json& command);

// UTC time as YYYYMMDDTHHMMSSZ.
std::string utc_timestamp();

// Creates output_dir/run-<timestamp>-<hash>/ (with a numeric suffix if that
// directory already exists) and returns its path.
std::filesystem::path create_run_dir(const RunConfig& c, const Json& command,
                                     const std::string& timestamp);

// Writes `text` to dir/name and returns the file's SHA-256.
std::string write_file(const std::filesystem::path& dir, const std::string& name,
                       const std::string& text);

// manifest.json: command, config, timestamp and the SHA-256 of every output.
void write_manifest(const std::filesystem::path& dir, const RunConfig& c, const Json& command,
                    const std::string& timestamp,
                    const std::vector<std::pair<std::string, std::string>>& files);

// Canonical pretty-printed form used for every JSON file.
std::string dump(const Json& j);

}  // namespace equilog
