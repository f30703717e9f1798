#include "calderon/report_io.hpp"

#include <array>
#include <charconv>
#include <sstream>

namespace calderon {

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return ec == std::errc() ? std::string(buf.data(), ptr) : std::string("nan");
}

nlohmann::json exponent_json(const Exponent& e) {
  if (e.is_infinite()) return "inf";
  return e.value();
}

nlohmann::json to_json(const CheckReport& report) {
  return {{"name", report.name},
          {"checked", report.checked},
          {"pass", report.passed()},
          {"violations", report.violations}};
}

nlohmann::json to_json(const ConstantEstimate& est) {
  nlohmann::json trials = nlohmann::json::array();
  for (const auto& t : est.trials) {
    trials.push_back({{"trial", t.trial}, {"seed", t.seed}, {"ratio", t.ratio}, {"degenerate", t.degenerate}});
  }
  return {{"label", "empirical"},
          {"kind", to_string(est.kind)},
          {"p", est.p},
          {"r", exponent_json(est.r)},
          {"J", est.j_count},
          {"value", est.value},
          {"n_trials", est.n_trials},
          {"n_degenerate", est.n_degenerate},
          {"ensemble_seed", est.ensemble_seed},
          {"operator", est.operator_descriptor},
          {"space", est.space_descriptor},
          {"trials", std::move(trials)}};
}

nlohmann::json to_json(const CertificateReport& rep) {
  nlohmann::json links = nlohmann::json::array();
  for (const auto& l : rep.links) {
    links.push_back({{"name", l.name},
                     {"lhs", l.lhs},
                     {"rhs", l.rhs},
                     {"relation", l.equality ? "==" : "<="},
                     {"pass", l.pass}});
  }
  nlohmann::json j = {{"trial", rep.trial},
                      {"kind", to_string(rep.kind)},
                      {"a", rep.a},
                      {"epsilon", rep.epsilon},
                      {"p", rep.p},
                      {"r", exponent_json(rep.r)},
                      {"line_constant", rep.line_constant},
                      {"slack_factor", rep.slack},
                      {"pass", rep.passed()},
                      {"links", std::move(links)}};
  if (rep.lambda) {
    j["lambda"] = *rep.lambda;
    j["trivial"] = rep.trivial;
  }
  return j;
}

nlohmann::json to_json(const ComparisonReport& rep) {
  nlohmann::json trials = nlohmann::json::array();
  for (const auto& t : rep.trials) {
    trials.push_back({{"trial", t.trial},
                      {"seed", t.seed},
                      {"degenerate", t.degenerate},
                      {"line_strong", t.line_strong},
                      {"sys_strong", t.sys_strong},
                      {"line_weak", t.line_weak},
                      {"sys_weak", t.sys_weak},
                      {"strong_pass", t.strong_pass},
                      {"weak_pass", t.weak_pass}});
  }
  return {{"label", "empirical"},
          {"operator", rep.operator_descriptor},
          {"system", rep.system_descriptor},
          {"p", rep.p},
          {"r", exponent_json(rep.r)},
          {"J", rep.j_count},
          {"a", rep.a},
          {"epsilon", rep.epsilon},
          {"slack", rep.slack},
          {"ensemble_seed", rep.ensemble_seed},
          {"summary",
           {{"c_line_strong", rep.c_line_strong},
            {"c_sys_strong", rep.c_sys_strong},
            {"c_line_weak", rep.c_line_weak},
            {"c_sys_weak", rep.c_sys_weak},
            {"strong_violations", rep.strong_violations},
            {"weak_violations", rep.weak_violations},
            {"pass", rep.passed()}}},
          {"trials", std::move(trials)}};
}

std::string to_csv(const std::vector<CsvRow>& rows) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  auto num = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  for (const auto& row : rows) {
    out << row.trial << ',' << (row.seed ? std::to_string(*row.seed) : "") << ',' << num(row.p) << ','
        << (row.r ? row.r->to_string() : "") << ','
        << (row.j_count ? std::to_string(*row.j_count) : "") << ',' << num(row.ratio_line) << ','
        << num(row.ratio_sys) << ',' << num(row.slack) << ',' << (row.pass ? "true" : "false")
        << '\n';
  }
  return out.str();
}

} // namespace calderon
