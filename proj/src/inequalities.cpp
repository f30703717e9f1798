#include "calderon/inequalities.hpp"

#include "calderon/errors.hpp"

#include <algorithm>
#include <cmath>

namespace calderon {

std::string to_string(InequalityKind kind) {
  return kind == InequalityKind::Strong ? "strong" : "weak";
}

InequalityKind parse_kind(const std::string& text) {
  if (text == "strong") return InequalityKind::Strong;
  if (text == "weak") return InequalityKind::Weak;
  throw ParseError("inequality kind must be 'strong' or 'weak', got '" + text + "'");
}

namespace {

double pow_p(double x, double p) {
  if (p == 1.0) return x;
  if (p == 2.0) return x * x;
  return std::pow(x, p);
}

double root_p(double x, double p) {
  if (p == 1.0) return x;
  if (p == 2.0) return std::sqrt(x);
  return std::pow(x, 1.0 / p);
}

double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

} // namespace

double strong_ratio(const VectorField& output, const VectorField& input, const ExponentPair& pr) {
  if (!(output.space() == input.space())) throw InvalidArgument("fields live on different spaces");
  const double denom = lp_power(lr_norm_pointwise(input, pr.r()), input.space(), pr.p());
  if (denom == 0.0) throw DegenerateInput("strong ratio of an identically zero input");
  const double num = lp_power(lr_norm_pointwise(output, pr.r()), output.space(), pr.p());
  return root_p(num / denom, pr.p());
}

double strong_ratio(const SampledSequence& output, const SampledSequence& input,
                    const ExponentPair& pr) {
  const double denom = lp_power(lr_norm_pointwise(input, pr.r()), pr.p());
  if (denom == 0.0) throw DegenerateInput("strong ratio of an identically zero input");
  const double num = lp_power(lr_norm_pointwise(output, pr.r()), pr.p());
  return root_p(num / denom, pr.p());
}

double weak_ratio(const SampledSequence& output, const SampledSequence& input,
                  const ExponentPair& pr, double lambda) {
  const double denom = lp_power(lr_norm_pointwise(input, pr.r()), pr.p());
  if (denom == 0.0) throw DegenerateInput("weak ratio of an identically zero input");
  const double level = distribution_measure(lr_norm_pointwise(output, pr.r()), lambda);
  if (level == 0.0) return 0.0;
  return root_p(pow_p(lambda, pr.p()) * level / denom, pr.p());
}

namespace {

struct TrialOutcome {
  double ratio = 0.0;
  bool degenerate = false;
};

double weak_sup(const std::vector<double>& levels, auto&& ratio_at) {
  double best = 0.0;
  for (double lambda : levels) best = std::max(best, ratio_at(lambda));
  return best;
}

} // namespace

ConstantEstimate estimate_constant(const OperatorTarget& target, const EnsembleSpec& ensemble,
                                   const ExponentPair& pr, InequalityKind kind,
                                   const LambdaGrid& grid, Parallelism par) {
  if (ensemble.n_trials == 0) throw InvalidArgument("ensemble needs at least one trial");
  if (ensemble.j_count == 0) throw InvalidArgument("ensemble needs J >= 1");
  if (kind == InequalityKind::Weak) grid.validate();

  ConstantEstimate est;
  est.kind = kind;
  est.p = pr.p();
  est.r = pr.r();
  est.n_trials = ensemble.n_trials;
  est.ensemble_seed = ensemble.seed;
  est.j_count = ensemble.j_count;

  std::vector<TrialOutcome> outcomes(ensemble.n_trials);

  if (const auto* line = std::get_if<LineOperatorSpec>(&target)) {
    est.operator_descriptor = line->to_string();
    est.space_descriptor = "line:" + std::to_string(ensemble.line_support);
    parallel_for(ensemble.n_trials, par, [&](std::size_t i) {
      Rng rng(trial_seed(ensemble.seed, i));
      const auto input = random_line_input(*line, ensemble.j_count, ensemble.line_support,
                                           trial_distribution(ensemble.distribution, i), rng);
      if (lp_power(lr_norm_pointwise(input, pr.r()), pr.p()) == 0.0) {
        outcomes[i].degenerate = true;
        return;
      }
      const auto output = apply_componentwise(*line, input);
      if (kind == InequalityKind::Strong) {
        outcomes[i].ratio = strong_ratio(output, input, pr);
      } else {
        const auto levels = grid.levels(max_of(lr_norm_pointwise(output, pr.r())));
        outcomes[i].ratio =
            weak_sup(levels, [&](double lambda) { return weak_ratio(output, input, pr, lambda); });
      }
    });
  } else {
    const auto& top = std::get<TransferredOperator>(target);
    est.operator_descriptor = top.line_op().to_string() + "#";
    est.space_descriptor = top.system().descriptor();
    parallel_for(ensemble.n_trials, par, [&](std::size_t i) {
      Rng rng(trial_seed(ensemble.seed, i));
      const auto input = random_field(top.system().space(), ensemble.j_count,
                                      trial_distribution(ensemble.distribution, i), rng);
      if (lp_power(lr_norm_pointwise(input, pr.r()), input.space(), pr.p()) == 0.0) {
        outcomes[i].degenerate = true;
        return;
      }
      const auto output = transfer_apply(top, input);
      if (kind == InequalityKind::Strong) {
        outcomes[i].ratio = strong_ratio(output, input, pr);
      } else {
        const auto levels = grid.levels(max_of(lr_norm_pointwise(output, pr.r())));
        outcomes[i].ratio = weak_sup(
            levels, [&](double lambda) { return calderon::weak_ratio(output, input, pr, lambda); });
      }
    });
  }

  est.trials.reserve(ensemble.n_trials);
  for (std::size_t i = 0; i < ensemble.n_trials; ++i) {
    est.trials.push_back({i, trial_seed(ensemble.seed, i), outcomes[i].ratio, outcomes[i].degenerate});
    if (outcomes[i].degenerate) {
      ++est.n_degenerate;
    } else {
      est.value = std::max(est.value, outcomes[i].ratio);
    }
  }
  return est;
}

double slack_factor(long a, long epsilon) {
  return static_cast<double>(2 * (a + epsilon) + 1) / static_cast<double>(2 * a + 1);
}

long certificate_min_window(const LineOperatorSpec& op, long a) {
  return a + 2 * op.semilocal_radius() + std::max(op.left_reach(), op.right_reach());
}

OrbitNorms::OrbitNorms(const LineOperatorSpec& op, const PermutationSystem& system,
                       const VectorField& field, const Exponent& r, long a,
                       std::optional<long> window)
    : a_(a), epsilon_(op.semilocal_radius()), r_(r) {
  if (a < 1) throw InvalidArgument("truncation radius a must be >= 1");
  const long minimum = certificate_min_window(op, a);
  const long w = window.value_or(minimum);
  if (w < minimum) {
    throw ConfigurationError("trace window half-width " + std::to_string(w) + " is too small for a=" +
                             std::to_string(a) + " with " + op.to_string() +
                             "; minimum window is " + std::to_string(minimum));
  }
  const std::size_t n = system.n_atoms();
  g_.resize(n);
  g_tr_.resize(n);
  f_tr_.resize(n);
  f0_ = lr_norm_pointwise(field, r);
  // The discrete truncation keeps |t| <= a + eps, i.e. |t| < a + eps + 1.
  const long keep = a + epsilon_ + 1;
  for (std::size_t x = 0; x < n; ++x) {
    const auto trace = orbit_trace(system, field, x, -w, w);
    const auto g = apply_componentwise(op, trace);
    const auto g_norms = lr_norm_pointwise(g, r);
    const auto first = static_cast<std::size_t>(-a - g.offset());
    g_[x].assign(g_norms.begin() + static_cast<long>(first),
                 g_norms.begin() + static_cast<long>(first) + 2 * a + 1);

    const auto truncated = truncate_trace(trace, keep);
    const auto g_tr = apply_componentwise(op, truncated);
    truncated_offset_ = g_tr.offset();
    g_tr_[x] = lr_norm_pointwise(g_tr, r);
    f_tr_[x] = lr_norm_pointwise(truncated, r);
  }
}

double OrbitNorms::line_strong_constant(double p) const {
  double best = 0.0;
  for (std::size_t x = 0; x < f_tr_.size(); ++x) {
    const double denom = lp_power(f_tr_[x], p);
    if (denom == 0.0) continue;
    best = std::max(best, lp_power(g_tr_[x], p) / denom);
  }
  return root_p(best, p);
}

double OrbitNorms::line_weak_constant(double p, double lambda) const {
  double best = 0.0;
  for (std::size_t x = 0; x < f_tr_.size(); ++x) {
    const double denom = lp_power(f_tr_[x], p);
    if (denom == 0.0) continue;
    best = std::max(best, distribution_measure(g_tr_[x], lambda) / denom);
  }
  return root_p(pow_p(lambda, p) * best, p);
}

bool CertificateReport::passed() const noexcept {
  return std::all_of(links.begin(), links.end(), [](const CertificateLink& l) { return l.pass; });
}

namespace {

CertificateLink inequality_link(std::string name, double lhs, double rhs, bool extra_ok = true) {
  return {std::move(name), lhs, rhs, false, extra_ok && lhs <= rhs + kLinkTolerance};
}

CertificateLink equality_link(std::string name, double lhs, double rhs) {
  return {std::move(name), lhs, rhs, true, std::fabs(lhs - rhs) <= kLinkTolerance};
}

// sum_x mu_x sum_t ||F^tr(t, x)||^p, and its identity against the field integral.
CertificateLink input_averaging_link(const OrbitNorms& norms, std::span<const double> weights,
                                     double p, double& total_input, double& field_integral) {
  total_input = 0.0;
  field_integral = 0.0;
  for (std::size_t x = 0; x < weights.size(); ++x) {
    total_input += weights[x] * lp_power(norms.input()[x], p);
    field_integral += weights[x] * pow_p(norms.field_norms()[x], p);
  }
  const double count = static_cast<double>(2 * (norms.a() + norms.epsilon()) + 1);
  return equality_link("input_averaging_identity", total_input, count * field_integral);
}

} // namespace

CertificateReport strong_certificate(const OrbitNorms& norms, const WeightedSpace& space, double p,
                                     std::size_t trial) {
  CertificateReport rep;
  rep.trial = trial;
  rep.kind = InequalityKind::Strong;
  rep.a = norms.a();
  rep.epsilon = norms.epsilon();
  rep.p = p;
  rep.r = norms.r();
  rep.slack = slack_factor(rep.a, rep.epsilon);

  const auto weights = space.weights();
  const std::size_t n = weights.size();
  const long a = norms.a();
  const auto span = static_cast<std::size_t>(2 * a + 1);
  const auto tr_shift = static_cast<std::size_t>(-a - norms.truncated_offset());

  double at_zero = 0.0;
  for (std::size_t x = 0; x < n; ++x) at_zero += weights[x] * pow_p(norms.untruncated()[x][a], p);

  double averaged = 0.0;
  double dominated = 0.0;
  bool pointwise_ok = true;
  bool per_time_ok = true;
  for (std::size_t k = 0; k < span; ++k) {
    double g_sum = 0.0;
    double g_tr_sum = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      const double g = norms.untruncated()[x][k];
      const double g_tr = norms.truncated()[x][k + tr_shift];
      if (g > g_tr + kLinkTolerance) pointwise_ok = false;
      g_sum += weights[x] * pow_p(g, p);
      g_tr_sum += weights[x] * pow_p(g_tr, p);
    }
    if (g_sum > g_tr_sum + kLinkTolerance) per_time_ok = false;
    averaged += g_sum;
    dominated += g_tr_sum;
  }
  rep.links.push_back(equality_link("output_averaging_identity", averaged,
                                    static_cast<double>(span) * at_zero));
  rep.links.push_back(inequality_link("truncation_domination", averaged, dominated,
                                      pointwise_ok && per_time_ok));

  double ratio_p = 0.0;
  for (std::size_t x = 0; x < n; ++x) {
    const double denom = lp_power(norms.input()[x], p);
    if (denom > 0.0) ratio_p = std::max(ratio_p, lp_power(norms.truncated()[x], p) / denom);
  }
  rep.line_constant = root_p(ratio_p, p);

  double line_lhs = 0.0;
  bool per_atom_ok = true;
  for (std::size_t x = 0; x < n; ++x) {
    double local = 0.0;
    for (std::size_t k = 0; k < span; ++k) local += pow_p(norms.truncated()[x][k + tr_shift], p);
    const double bound = ratio_p * lp_power(norms.input()[x], p);
    if (local > bound + kLinkTolerance) per_atom_ok = false;
    line_lhs += weights[x] * local;
  }
  double total_input = 0.0;
  double field_integral = 0.0;
  auto identity = input_averaging_link(norms, weights, p, total_input, field_integral);
  rep.links.push_back(inequality_link("line_inequality", line_lhs, ratio_p * total_input, per_atom_ok));
  rep.links.push_back(std::move(identity));
  rep.links.push_back(
      inequality_link("final_bound", at_zero, rep.slack * ratio_p * field_integral));
  return rep;
}

CertificateReport weak_certificate(const OrbitNorms& norms, const WeightedSpace& space, double p,
                                   double lambda, std::size_t trial) {
  if (!(lambda > 0.0)) throw InvalidArgument("level lambda must be positive");
  CertificateReport rep;
  rep.trial = trial;
  rep.kind = InequalityKind::Weak;
  rep.a = norms.a();
  rep.epsilon = norms.epsilon();
  rep.p = p;
  rep.r = norms.r();
  rep.lambda = lambda;
  rep.slack = slack_factor(rep.a, rep.epsilon);

  const auto weights = space.weights();
  const std::size_t n = weights.size();
  const long a = norms.a();
  const auto span = static_cast<std::size_t>(2 * a + 1);
  const auto tr_shift = static_cast<std::size_t>(-a - norms.truncated_offset());

  double level_measure = 0.0;
  double sections = 0.0;
  std::vector<double> section(n, 0.0);
  for (std::size_t x = 0; x < n; ++x) {
    if (norms.untruncated()[x][a] > lambda) level_measure += weights[x];
    for (std::size_t k = 0; k < span; ++k) {
      if (norms.truncated()[x][k + tr_shift] > lambda) section[x] += 1.0;
    }
    sections += weights[x] * section[x];
  }
  rep.trivial = level_measure == 0.0 && sections == 0.0;

  // Weak line constant at this level, kept as count / input mass so lambda^p cancels.
  double count_ratio = 0.0;
  for (std::size_t x = 0; x < n; ++x) {
    const double denom = lp_power(norms.input()[x], p);
    if (denom > 0.0) {
      count_ratio = std::max(count_ratio, distribution_measure(norms.truncated()[x], lambda) / denom);
    }
  }
  rep.line_constant = root_p(pow_p(lambda, p) * count_ratio, p);

  bool per_atom_ok = true;
  for (std::size_t x = 0; x < n; ++x) {
    if (section[x] > count_ratio * lp_power(norms.input()[x], p) + kLinkTolerance) per_atom_ok = false;
  }
  double total_input = 0.0;
  double field_integral = 0.0;
  auto identity = input_averaging_link(norms, weights, p, total_input, field_integral);

  rep.links.push_back(inequality_link("level_set_averaging",
                                      static_cast<double>(span) * level_measure, sections));
  rep.links.push_back(
      inequality_link("line_weak_bound", sections, count_ratio * total_input, per_atom_ok));
  rep.links.push_back(std::move(identity));
  rep.links.push_back(
      inequality_link("final_bound", level_measure, rep.slack * count_ratio * field_integral));
  return rep;
}

CertificateReport strong_certificate(const LineOperatorSpec& op, const PermutationSystem& system,
                                     const VectorField& field, const ExponentPair& pr, long a,
                                     std::optional<long> window) {
  const OrbitNorms norms(op, system, field, pr.r(), a, window);
  return strong_certificate(norms, *system.space(), pr.p());
}

CertificateReport weak_certificate(const LineOperatorSpec& op, const PermutationSystem& system,
                                   const VectorField& field, const ExponentPair& pr, double lambda,
                                   long a, std::optional<long> window) {
  const OrbitNorms norms(op, system, field, pr.r(), a, window);
  return weak_certificate(norms, *system.space(), pr.p(), lambda);
}

ComparisonReport transfer_comparison(const LineOperatorSpec& op, const PermutationSystem& system,
                                     const EnsembleSpec& ensemble, const ExponentPair& pr,
                                     const LambdaGrid& grid, long a, Parallelism par) {
  if (ensemble.n_trials == 0) throw InvalidArgument("ensemble needs at least one trial");
  grid.validate();
  ComparisonReport rep;
  rep.operator_descriptor = op.to_string();
  rep.system_descriptor = system.descriptor();
  rep.p = pr.p();
  rep.r = pr.r();
  rep.j_count = ensemble.j_count;
  rep.a = a;
  rep.epsilon = op.semilocal_radius();
  rep.slack = root_p(slack_factor(a, rep.epsilon), pr.p());
  rep.ensemble_seed = ensemble.seed;
  rep.trials.resize(ensemble.n_trials);

  const TransferredOperator top(op, system);
  parallel_for(ensemble.n_trials, par, [&](std::size_t i) {
    auto& trial = rep.trials[i];
    trial.trial = i;
    trial.seed = trial_seed(ensemble.seed, i);
    Rng rng(trial.seed);
    const auto field = random_field(system.space(), ensemble.j_count,
                                    trial_distribution(ensemble.distribution, i), rng);
    if (lp_power(lr_norm_pointwise(field, pr.r()), field.space(), pr.p()) == 0.0) {
      trial.degenerate = true;
      return;
    }
    const auto output = transfer_apply(top, field);
    trial.sys_strong = strong_ratio(output, field, pr);
    const auto levels = grid.levels(max_of(lr_norm_pointwise(output, pr.r())));
    trial.sys_weak =
        weak_sup(levels, [&](double lambda) { return weak_ratio(output, field, pr, lambda); });

    const OrbitNorms norms(op, system, field, pr.r(), a);
    trial.line_strong = norms.line_strong_constant(pr.p());
    trial.line_weak = weak_sup(
        levels, [&](double lambda) { return norms.line_weak_constant(pr.p(), lambda); });
    trial.strong_pass = trial.sys_strong <= rep.slack * trial.line_strong + kLinkTolerance;
    trial.weak_pass = trial.sys_weak <= rep.slack * trial.line_weak + kLinkTolerance;
  });

  for (const auto& t : rep.trials) {
    if (t.degenerate) continue;
    rep.c_line_strong = std::max(rep.c_line_strong, t.line_strong);
    rep.c_sys_strong = std::max(rep.c_sys_strong, t.sys_strong);
    rep.c_line_weak = std::max(rep.c_line_weak, t.line_weak);
    rep.c_sys_weak = std::max(rep.c_sys_weak, t.sys_weak);
    if (!t.strong_pass) ++rep.strong_violations;
    if (!t.weak_pass) ++rep.weak_violations;
  }
  return rep;
}

} // namespace calderon
