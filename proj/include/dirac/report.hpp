#pragma once

// Run configuration, job planning and report serialization for the dirac_sharp CLI.

#include "dirac/spectral.hpp"
#include "dirac/verification.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dirac {

inline constexpr int kReportSchema = 1;
inline constexpr std::uint64_t kDefaultSeed = 0xD1AC;

enum class Format { json, csv, text };
Format parse_format(const std::string& s);

struct RunConfig {
  std::string command;              // spectrum, verify, identities
  std::optional<int> n;             // unset: command default
  std::optional<int> k;             // unset: every k in the default range
  std::optional<int> m_max;         // spectrum only; unset: default_mmax
  int band_limit = 3;
  int trials = 1000;
  std::uint64_t seed = kDefaultSeed;
  std::string suite = "all";        // sphere, euclidean, kernels, all
  std::string identity = "all";
  std::string map = "cayley";
  Tolerances tol;
  std::string out;                  // empty: stdout
  Format format = Format::text;
};

// Thrown for configurations outside the supported ranges; the CLI maps it to exit 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

void validate(const RunConfig& c);

using RowJob = std::function<ReportRow()>;
// Independent row computations in report order.
std::vector<RowJob> plan_verify(const RunConfig& c);
std::vector<RowJob> plan_identities(const RunConfig& c);

struct VerificationReport {
  RunConfig config;
  std::vector<ReportRow> rows;

  // Every row's pass flag recomputed from its checks.
  bool pass() const;
};

VerificationReport run_report(const RunConfig& c);

std::string render_report(const VerificationReport& r);
std::string render_spectrum(const RunConfig& c, const SpectrumTable& t);

// RFC 4180 field: quoted when it holds a comma, quote, CR or LF.
std::string csv_field(const std::string& s);

std::string tool_version();

}  // namespace dirac
