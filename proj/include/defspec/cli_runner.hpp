#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "defspec/spectrum.hpp"

namespace defspec {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitVerification = 4;

struct RunConfig {
  std::string command;  // spectra | curve | envelope | bracket | verify | sample
  std::string model = "momentum";
  double length = 1.0;
  double theta = 0.0;
  int truncation = 64;
  double eps = 1e-3;
  std::optional<double> lambda;
  double t_lo = -10.0;
  double t_hi = 10.0;
  int t_count = 201;
  bool t_range_set = false;
  int theta_count = 64;
  IntegerRange k_window{-200, 200};
  std::optional<Interval> window;
  std::vector<double> coeffs{1.0};
  std::uint64_t seed = 0;
  std::string suite = "all";
  std::string out = ".";
  std::string config_file;
  std::vector<std::string> warnings;
};

/// argv plus the optional --config file (flat key = value, flags win).
/// Throws Error(ErrorKind::Usage) for unknown flags or keys, malformed
/// numbers and out-of-range values. --help prints and throws nothing; the
/// returned config then has an empty command.
RunConfig parse(int argc, const char* const* argv, std::ostream& out);

/// Dispatches one command, writes <out>/<command>.csv or report.json plus
/// manifest.json, and returns the exit status.
int run(const RunConfig& config, std::ostream& log);

/// parse + run with error-to-exit-status mapping.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace defspec
