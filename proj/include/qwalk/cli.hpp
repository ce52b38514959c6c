#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "qwalk/ring.hpp"
#include "qwalk/walk.hpp"

namespace qwalk::cli {

enum class RunMode { Ideal, Jones, Ring, Coherent, Hom };
enum class OutputFormat { Csv, Json };

/// Exit code 1.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exit code 2.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  RunMode mode = RunMode::Ideal;
  int steps = 100;
  double q = 0.5;
  std::string coin = "symmetric";
  double qwp_angle = kPi / 4;
  double mu = 0.5;
  DetectorConfig detector;
  Complex alpha{1.0, 0.0};
  std::string output;  // empty: stdout
  std::optional<OutputFormat> format;
  std::uint64_t seed = 0;

  /// Kebab-case names of the fields that were set explicitly (flags or config file).
  std::set<std::string> explicit_fields;

  void validate() const;
  OutputFormat effective_format() const;
};

RunMode parse_mode(const std::string& s);
std::string to_string(RunMode mode);
OutputFormat parse_format(const std::string& s);

/// Preset name (symmetric, up, down, random) or "re,im,re,im". "random" draws from `seed`.
CoinVector parse_coin(const std::string& spec, std::uint64_t seed);
Complex parse_complex(const std::string& spec);

/// Overlays keys of a JSON config object (same kebab-case names as the flags) onto `cfg`.
void apply_config_json(RunConfig& cfg, const nlohmann::json& j);

StepParams step_params(const RunConfig& cfg);

/// Per-iteration records for the ideal, jones, ring and coherent modes.
std::vector<IterationRecord> simulate(const RunConfig& cfg);
nlohmann::json hom_report(const RunConfig& cfg);

/// CSV: iteration,ell,probability_or_power[,detected_power,clipped_power]. JSON: array of records.
void emit_spectrum_table(std::ostream& out, const std::vector<IterationRecord>& records, OutputFormat format,
                         bool ring_columns);

nlohmann::json records_to_json(const std::vector<IterationRecord>& records);
std::vector<IterationRecord> records_from_json(const nlohmann::json& j);

int run_cli(const std::vector<std::string>& args);

}  // namespace qwalk::cli

namespace qwalk {
int run_cli(int argc, char** argv);
}
