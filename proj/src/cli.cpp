#include "calderon/cli.hpp"

#include "calderon/dynamics.hpp"
#include "calderon/errors.hpp"
#include "calderon/report_io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>

namespace calderon::cli {

namespace {

const char* command_name(Command c) {
  switch (c) {
  case Command::Check: return "check";
  case Command::Estimate: return "estimate";
  case Command::Compare: return "compare";
  case Command::Certificate: return "certificate";
  }
  return "?";
}

constexpr const char* kCsvHelp =
    "CSV columns (fixed): trial,seed,p,r,J,ratio_line,ratio_sys,slack,pass\n"
    "  check:       one row per trial index; ratios empty; pass = no suite failed that trial\n"
    "  estimate:    ratio_line / ratio_sys = line and transferred ratios of trial i;\n"
    "               slack empty; pass = trial non-degenerate on both sides\n"
    "  compare:     ratios of the --kind selected; slack on ratio scale; pass = bound held\n"
    "  certificate: one row per (trial, a) in sweep order; ratio_line = measured line\n"
    "               constant, ratio_sys = system ratio, slack on ratio scale; pass = all links held\n"
    "Exit codes: 0 pass, 1 property failure, 2 usage/config error.";

struct Resolved {
  PermutationSystem system;
  LineOperatorSpec op;
  ExponentPair pr;
  EnsembleSpec ensemble;
  Parallelism par;
};

Resolved resolve(const RunConfig& c) {
  auto op = parse_operator_spec(c.op);
  if (c.n_max) op = LineOperatorSpec(op.kind(), *c.n_max);
  EnsembleSpec ensemble;
  ensemble.n_trials = c.trials;
  ensemble.seed = c.seed;
  ensemble.j_count = c.j_count;
  ensemble.distribution = c.distribution;
  ensemble.line_support = c.line_support;
  if (c.trials == 0) throw InvalidArgument("--trials must be >= 1");
  if (c.j_count == 0) throw InvalidArgument("--j must be >= 1");
  for (long a : c.a) {
    if (a < 1) throw InvalidArgument("--a values must be >= 1");
  }
  c.grid.validate();
  return {parse_system_spec(c.system), op, ExponentPair(c.p, parse_exponent(c.r)), ensemble,
          Parallelism{std::max(1u, c.threads)}};
}

nlohmann::json config_json(const RunConfig& c, const Resolved& res) {
  nlohmann::json a = c.a;
  return {{"system", res.system.descriptor()},
          {"operator", res.op.to_string()},
          {"p", res.pr.p()},
          {"r", exponent_json(res.pr.r())},
          {"J", c.j_count},
          {"trials", c.trials},
          {"seed", c.seed},
          {"kind", to_string(c.kind)},
          {"distribution", to_string(c.distribution)},
          {"a", a},
          {"lambda_grid",
           {{"min", c.grid.min_fraction}, {"max", c.grid.max_fraction}, {"points", c.grid.points}}}};
}

nlohmann::json envelope(const RunConfig& c, const Resolved& res) {
  return {{"schema_version", kSchemaVersion},
          {"command", command_name(c.command)},
          {"config", config_json(c, res)}};
}

std::string render(const RunConfig& c, const nlohmann::json& doc, const std::vector<CsvRow>& rows) {
  if (c.format == Format::Csv) return to_csv(rows);
  return doc.dump(2) + "\n";
}

std::string run_check(const RunConfig& c, const Resolved& res, int& exit_code) {
  std::vector<CheckReport> suites;
  suites.push_back(check_operator_axioms(res.op, c.trials, c.seed));
  suites.push_back(check_equimeasurability(res.system, res.op, c.j_count, c.trials, c.seed));
  suites.push_back(check_transfer_oracle(res.system, res.op.parameter(), c.j_count, c.trials, c.seed));

  bool pass = true;
  auto doc = envelope(c, res);
  doc["suites"] = nlohmann::json::array();
  for (const auto& s : suites) {
    pass = pass && s.passed();
    doc["suites"].push_back(to_json(s));
  }
  doc["pass"] = pass;

  std::vector<CsvRow> rows;
  for (std::size_t i = 0; i < c.trials; ++i) {
    const bool ok = std::none_of(suites.begin(), suites.end(),
                                 [&](const CheckReport& s) { return s.failed_trials.count(i) > 0; });
    rows.push_back({i, trial_seed(c.seed, i), res.pr.p(), res.pr.r(), c.j_count, {}, {}, {}, ok});
  }
  exit_code = pass ? kExitPass : kExitPropertyFailure;
  return render(c, doc, rows);
}

std::string run_estimate(const RunConfig& c, const Resolved& res, int& exit_code) {
  const auto line = estimate_constant(res.op, res.ensemble, res.pr, c.kind, c.grid, res.par);
  const auto sys = estimate_constant(TransferredOperator(res.op, res.system), res.ensemble, res.pr,
                                     c.kind, c.grid, res.par);
  auto doc = envelope(c, res);
  doc["line"] = to_json(line);
  doc["system"] = to_json(sys);

  std::vector<CsvRow> rows;
  for (std::size_t i = 0; i < c.trials; ++i) {
    const auto& l = line.trials[i];
    const auto& s = sys.trials[i];
    CsvRow row{i, s.seed, res.pr.p(), res.pr.r(), c.j_count, {}, {}, {}, !l.degenerate && !s.degenerate};
    if (!l.degenerate) row.ratio_line = l.ratio;
    if (!s.degenerate) row.ratio_sys = s.ratio;
    rows.push_back(row);
  }
  exit_code = kExitPass;
  return render(c, doc, rows);
}

std::string run_compare(const RunConfig& c, const Resolved& res, int& exit_code) {
  const long a = c.a.empty() ? 16 : c.a.front();
  const auto rep = transfer_comparison(res.op, res.system, res.ensemble, res.pr, c.grid, a, res.par);
  auto doc = envelope(c, res);
  doc["comparison"] = to_json(rep);
  doc["pass"] = rep.passed();

  const bool strong = c.kind == InequalityKind::Strong;
  std::vector<CsvRow> rows;
  for (const auto& t : rep.trials) {
    CsvRow row{t.trial, t.seed, res.pr.p(), res.pr.r(), c.j_count, {}, {}, rep.slack,
               strong ? t.strong_pass : t.weak_pass};
    if (!t.degenerate) {
      row.ratio_line = strong ? t.line_strong : t.line_weak;
      row.ratio_sys = strong ? t.sys_strong : t.sys_weak;
    }
    rows.push_back(row);
  }
  exit_code = rep.passed() ? kExitPass : kExitPropertyFailure;
  return render(c, doc, rows);
}

double pow_inv(double x, double p) { return p == 1.0 ? x : std::pow(x, 1.0 / p); }

struct SweepEntry {
  std::vector<CertificateReport> reports;
  double ratio_line = 0.0;
  double ratio_sys = 0.0;
  bool pass = true;
};

std::string run_certificate(const RunConfig& c, const Resolved& res, int& exit_code) {
  std::vector<long> sweep = c.a.empty() ? std::vector<long>{8, 32} : c.a;
  // Reject an undersized window before doing any work.
  if (c.window) {
    for (long a : sweep) {
      const long minimum = certificate_min_window(res.op, a);
      if (*c.window < minimum) {
        throw ConfigurationError("--window " + std::to_string(*c.window) + " is too small for a=" +
                                 std::to_string(a) + "; minimum window is " + std::to_string(minimum));
      }
    }
  }
  const double p = res.pr.p();
  const auto& weights = res.system.space()->weights();
  std::vector<std::vector<SweepEntry>> entries(c.trials, std::vector<SweepEntry>(sweep.size()));

  parallel_for(c.trials, res.par, [&](std::size_t i) {
    Rng rng(trial_seed(c.seed, i));
    const auto field = random_field(res.system.space(), c.j_count,
                                    trial_distribution(c.distribution, i), rng);
    for (std::size_t k = 0; k < sweep.size(); ++k) {
      const OrbitNorms norms(res.op, res.system, field, res.pr.r(), sweep[k], c.window);
      auto& e = entries[i][k];
      double at_zero = 0.0;
      double mass = 0.0;
      double max_norm = 0.0;
      for (std::size_t x = 0; x < weights.size(); ++x) {
        const double g0 = norms.untruncated()[x][static_cast<std::size_t>(sweep[k])];
        at_zero += weights[x] * std::pow(g0, p);
        mass += weights[x] * std::pow(norms.field_norms()[x], p);
        max_norm = std::max(max_norm, g0);
      }
      if (c.kind == InequalityKind::Strong) {
        auto rep = strong_certificate(norms, *res.system.space(), p, i);
        e.ratio_line = rep.line_constant;
        e.ratio_sys = mass > 0.0 ? pow_inv(at_zero / mass, p) : 0.0;
        e.pass = rep.passed();
        e.reports.push_back(std::move(rep));
      } else {
        const auto levels = c.grid.levels(max_norm);
        for (double lambda : levels) {
          auto rep = weak_certificate(norms, *res.system.space(), p, lambda, i);
          e.ratio_line = std::max(e.ratio_line, rep.line_constant);
          double level = 0.0;
          for (std::size_t x = 0; x < weights.size(); ++x) {
            if (norms.untruncated()[x][static_cast<std::size_t>(sweep[k])] > lambda) level += weights[x];
          }
          if (mass > 0.0) e.ratio_sys = std::max(e.ratio_sys, pow_inv(std::pow(lambda, p) * level / mass, p));
          e.pass = e.pass && rep.passed();
          e.reports.push_back(std::move(rep));
        }
      }
    }
  });

  auto doc = envelope(c, res);
  doc["reports"] = nlohmann::json::array();
  std::vector<CsvRow> rows;
  std::size_t failed = 0;
  for (std::size_t i = 0; i < c.trials; ++i) {
    for (std::size_t k = 0; k < sweep.size(); ++k) {
      const auto& e = entries[i][k];
      const double slack = slack_factor(sweep[k], res.op.semilocal_radius());
      nlohmann::json certs = nlohmann::json::array();
      for (const auto& rep : e.reports) certs.push_back(to_json(rep));
      doc["reports"].push_back({{"trial", i},
                                {"seed", trial_seed(c.seed, i)},
                                {"a", sweep[k]},
                                {"slack_factor", slack},
                                {"pass", e.pass},
                                {"certificates", std::move(certs)}});
      rows.push_back({i, trial_seed(c.seed, i), p, res.pr.r(), c.j_count, e.ratio_line, e.ratio_sys,
                      pow_inv(slack, p), e.pass});
      if (!e.pass) ++failed;
    }
  }
  doc["failed_reports"] = failed;
  doc["pass"] = failed == 0;
  exit_code = failed == 0 ? kExitPass : kExitPropertyFailure;
  return render(c, doc, rows);
}

} // namespace

std::string execute(const RunConfig& config, int& exit_code) {
  const auto res = resolve(config);
  switch (config.command) {
  case Command::Check: return run_check(config, res, exit_code);
  case Command::Estimate: return run_estimate(config, res, exit_code);
  case Command::Compare: return run_compare(config, res, exit_code);
  case Command::Certificate: return run_certificate(config, res, exit_code);
  }
  throw InvalidArgument("unknown command");
}

namespace {

void add_common(CLI::App& sub, RunConfig& c, std::string& kind, std::string& format,
                std::string& distribution) {
  sub.add_option("--system", c.system, "cyclic:N | rotation:q,a | random:N,seed")->capture_default_str();
  sub.add_option("--op", c.op, "osmax:n_max | hl:n_max | avg:m")->capture_default_str();
  sub.add_option("--p", c.p, "integrability exponent, 1 <= p < inf")->capture_default_str();
  sub.add_option("--r", c.r, "vector exponent, r >= 1 or 'inf'")->capture_default_str();
  sub.add_option("--j", c.j_count, "number of components J")->capture_default_str();
  sub.add_option("--trials", c.trials, "ensemble size")->capture_default_str();
  sub.add_option("--seed", c.seed, "master seed (default 0xC0FFEE)")->capture_default_str();
  sub.add_option("--n-max", c.n_max, "override the operator parameter");
  sub.add_option("--a", c.a, "truncation radius; certificate accepts a comma list")->delimiter(',');
  sub.add_option("--window", c.window, "certificate trace half-width (default: minimum)");
  sub.add_option("--kind", kind, "strong | weak")->capture_default_str();
  sub.add_option("--distribution", distribution, "uniform | sparse | mixed")->capture_default_str();
  sub.add_option("--line-support", c.line_support, "support length of line-side inputs")
      ->capture_default_str();
  sub.add_option("--lambda-min", c.grid.min_fraction, "smallest level, as a fraction of the output max")
      ->capture_default_str();
  sub.add_option("--lambda-max", c.grid.max_fraction, "largest level, as a fraction of the output max")
      ->capture_default_str();
  sub.add_option("--lambda-points", c.grid.points, "number of log-spaced levels")->capture_default_str();
  sub.add_option("--format", format, "json | csv")->capture_default_str();
  sub.add_option("--out", c.out, "output file (default: stdout)");
  sub.add_option("--threads", c.threads, "worker threads; output does not depend on it")
      ->capture_default_str();
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Vector-valued transference laboratory", "calderon-lab"};
  app.footer(kCsvHelp);
  app.require_subcommand(1);

  RunConfig config;
  std::string kind = "strong";
  std::string format = "json";
  std::string distribution = "mixed";
  const std::vector<std::pair<Command, const char*>> commands = {
      {Command::Check, "operator axioms, equimeasurability and transfer-oracle suites"},
      {Command::Estimate, "empirical strong/weak constants on the line and on the system"},
      {Command::Compare, "per-trial system constants against line constants"},
      {Command::Certificate, "per-trial certificates of the transfer inequality chain"}};
  for (const auto& [cmd, help] : commands) {
    auto* sub = app.add_subcommand(command_name(cmd), help);
    add_common(*sub, config, kind, format, distribution);
    sub->callback([&config, cmd = cmd] { config.command = cmd; });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  std::string report;
  int exit_code = kExitPass;
  try {
    config.kind = parse_kind(kind);
    config.distribution = parse_distribution(distribution);
    if (format == "json") {
      config.format = Format::Json;
    } else if (format == "csv") {
      config.format = Format::Csv;
    } else {
      throw ParseError("--format must be json or csv");
    }
    report = execute(config, exit_code);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (config.out.empty()) {
    out << report;
  } else {
    std::ofstream file(config.out, std::ios::binary);
    file << report;
    if (!file) {
      err << "error: cannot write " << config.out << '\n';
      return kExitUsage;
    }
  }
  return exit_code;
}

} // namespace calderon::cli
