#pragma once

#include "calderon/check_report.hpp"
#include "calderon/inequalities.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace calderon {

/// Bumped whenever a field is renamed or removed from any JSON report.
inline constexpr int kSchemaVersion = 1;

/// Fixed CSV columns shared by every command.
inline constexpr const char* kCsvHeader = "trial,seed,p,r,J,ratio_line,ratio_sys,slack,pass";

/// Shortest text that round-trips to the same double.
std::string format_double(double v);

/// Exponents serialize as numbers, the infinite one as the string "inf".
nlohmann::json exponent_json(const Exponent& e);

nlohmann::json to_json(const CheckReport& report);
nlohmann::json to_json(const ConstantEstimate& estimate);
nlohmann::json to_json(const CertificateReport& report);
nlohmann::json to_json(const ComparisonReport& report);

/// One CSV record; empty optionals render as empty cells.
struct CsvRow {
  std::size_t trial = 0;
  std::optional<std::uint64_t> seed;
  std::optional<double> p;
  std::optional<Exponent> r;
  std::optional<std::size_t> j_count;
  std::optional<double> ratio_line;
  std::optional<double> ratio_sys;
  std::optional<double> slack;
  bool pass = true;
};

std::string to_csv(const std::vector<CsvRow>& rows);

} // namespace calderon
