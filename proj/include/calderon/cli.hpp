#pragma once

#include "calderon/ensemble.hpp"
#include "calderon/inequalities.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace calderon::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitPropertyFailure = 1;
inline constexpr int kExitUsage = 2;

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

enum class Command { Check, Estimate, Compare, Certificate };
enum class Format { Json, Csv };

struct RunConfig {
  Command command = Command::Check;
  std::string system = "cyclic:64";
  std::string op = "osmax:8";
  double p = 2.0;
  std::string r = "2";
  std::size_t j_count = 4;
  std::size_t trials = 200;
  std::uint64_t seed = kDefaultSeed;
  std::optional<std::size_t> n_max;
  /// Truncation radii; empty selects the command default (compare: 16, certificate: 8,32).
  std::vector<long> a;
  std::optional<long> window;
  InequalityKind kind = InequalityKind::Strong;
  ValueDistribution distribution = ValueDistribution::Mixed;
  std::size_t line_support = 64;
  LambdaGrid grid;
  Format format = Format::Json;
  std::string out;
  unsigned threads = 1;
};

/// Parses and runs one command. Reports go to --out when given, otherwise to `out`;
/// diagnostics go to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Executes an already-validated configuration and returns the rendered report.
/// Throws calderon::Error subclasses for configuration problems.
std::string execute(const RunConfig& config, int& exit_code);

} // namespace calderon::cli
