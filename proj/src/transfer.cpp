#include "calderon/transfer.hpp"

#include "calderon/errors.hpp"
#include "calderon/random.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace calderon {

TransferredOperator::TransferredOperator(LineOperatorSpec line_op, PermutationSystem system,
                                         std::optional<long> window_halfwidth)
    : line_op_(line_op), system_(std::move(system)),
      window_(window_halfwidth.value_or(default_window(line_op))) {
  if (window_ < minimum_window(line_op_)) {
    throw ConfigurationError("window half-width " + std::to_string(window_) + " too small for " +
                             line_op_.to_string() + "; minimum is " +
                             std::to_string(minimum_window(line_op_)));
  }
}

long TransferredOperator::default_window(const LineOperatorSpec& op) {
  return minimum_window(op) + 1;
}

long TransferredOperator::minimum_window(const LineOperatorSpec& op) {
  return op.semilocal_radius() + static_cast<long>(op.parameter());
}

VectorField transfer_apply(const TransferredOperator& top, const VectorField& field) {
  const auto& system = top.system();
  if (!(field.space() == *system.space())) throw InvalidArgument("field does not live on the system");
  const long w = top.window_halfwidth();
  const std::size_t n = system.n_atoms();
  const std::size_t j_count = field.j_count();
  std::vector<double> values(j_count * n);
  for (std::size_t x = 0; x < n; ++x) {
    const auto g = apply_componentwise(top.line_op(), orbit_trace(system, field, x, -w, w));
    for (std::size_t j = 0; j < j_count; ++j) values[j * n + x] = g.at(j, 0);
  }
  return VectorField(field.space_ptr(), j_count, std::move(values));
}

VectorField ergodic_maximal(const PermutationSystem& system, const VectorField& field,
                            std::size_t n_max) {
  if (n_max == 0) throw InvalidArgument("n_max must be >= 1");
  if (!(field.space() == *system.space())) throw InvalidArgument("field does not live on the system");
  const std::size_t n = system.n_atoms();
  const std::size_t j_count = field.j_count();
  const auto forward = system.forward_map();
  std::vector<double> values(j_count * n);
  for (std::size_t j = 0; j < j_count; ++j) {
    const auto f = field.component(j);
    for (std::size_t x = 0; x < n; ++x) {
      double sum = 0.0;
      double best = 0.0;
      std::size_t y = x;
      for (std::size_t k = 1; k <= n_max; ++k) {
        sum += std::fabs(f[y]);
        best = std::max(best, sum / static_cast<double>(k));
        y = forward[y];
      }
      values[j * n + x] = best;
    }
  }
  return VectorField(field.space_ptr(), j_count, std::move(values));
}

SampledSequence truncate_trace(const SampledSequence& seq, long a) {
  if (a < 1) throw InvalidArgument("truncation radius must be >= 1");
  std::vector<double> values(seq.values().begin(), seq.values().end());
  for (std::size_t j = 0; j < seq.j_count(); ++j) {
    for (std::size_t i = 0; i < seq.width(); ++i) {
      const long t = seq.offset() + static_cast<long>(i);
      if (std::labs(t) >= a) values[j * seq.width() + i] = 0.0;
    }
  }
  return SampledSequence(seq.j_count(), seq.offset(), seq.width(), std::move(values));
}

SampledSequence transferred_trace(const LineOperatorSpec& op, const PermutationSystem& system,
                                  const VectorField& field, std::size_t x, long t_lo, long t_hi) {
  if (t_lo > t_hi) throw InvalidArgument("empty time range");
  const long lo = std::min(t_lo - op.left_reach(), 0L);
  const long hi = std::max(t_hi + op.right_reach(), 0L);
  const auto g = apply_componentwise(op, orbit_trace(system, field, x, lo, hi));
  const std::size_t width = static_cast<std::size_t>(t_hi - t_lo + 1);
  std::vector<double> values(g.j_count() * width);
  for (std::size_t j = 0; j < g.j_count(); ++j) {
    for (std::size_t i = 0; i < width; ++i) values[j * width + i] = g.at(j, t_lo + static_cast<long>(i));
  }
  return SampledSequence(g.j_count(), t_lo, width, std::move(values));
}

namespace {

std::vector<std::pair<double, double>> weighted_distribution(std::span<const double> values,
                                                             std::span<const double> weights) {
  std::vector<std::pair<double, double>> d;
  d.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) d.emplace_back(values[i], weights[i]);
  std::sort(d.begin(), d.end());
  return d;
}

} // namespace

CheckReport check_equimeasurability(const PermutationSystem& system, const VectorField& field,
                                    const LineOperatorSpec& op, long s, long t_radius,
                                    std::size_t trial_id) {
  CheckReport report;
  report.name = "equimeasurability[" + op.to_string() + "]";
  const std::size_t n = system.n_atoms();
  const long reach = t_radius + std::labs(s);
  std::vector<SampledSequence> traces;
  traces.reserve(n);
  for (std::size_t x = 0; x < n; ++x) {
    traces.push_back(transferred_trace(op, system, field, x, -reach, reach));
  }

  for (std::size_t x = 0; x < n; ++x) {
    const auto& moved = traces[system.iterate(x, s)];
    for (long t = -t_radius; t <= t_radius; ++t) {
      for (std::size_t j = 0; j < field.j_count(); ++j) {
        if (moved.at(j, t) != traces[x].at(j, t + s)) {
          report.fail(trial_id, "G(" + std::to_string(t) + ", tau^" + std::to_string(s) + " " +
                                    std::to_string(x) + ") != G(t+s, x), component " + std::to_string(j));
        }
      }
    }
  }

  const auto weights = system.space()->weights();
  std::vector<double> at_time(n);
  for (std::size_t j = 0; j < field.j_count(); ++j) {
    for (std::size_t x = 0; x < n; ++x) at_time[x] = traces[x].at(j, 0);
    const auto reference = weighted_distribution(at_time, weights);
    for (long t = -t_radius; t <= t_radius; ++t) {
      for (std::size_t x = 0; x < n; ++x) at_time[x] = traces[x].at(j, t);
      if (weighted_distribution(at_time, weights) != reference) {
        report.fail(trial_id, "distribution of G(" + std::to_string(t) +
                                  ", .) differs from G(0, .), component " + std::to_string(j));
      }
    }
  }
  report.checked = 1;
  return report;
}

CheckReport check_equimeasurability(const PermutationSystem& system, const LineOperatorSpec& op,
                                    std::size_t j_count, std::size_t n_trials,
                                    std::uint64_t seed, long t_radius) {
  CheckReport report;
  report.name = "equimeasurability[" + op.to_string() + "]";
  const std::size_t n = system.n_atoms();
  for (std::size_t trial = 0; trial < n_trials; ++trial) {
    Rng rng(trial_seed(seed, trial));
    std::vector<double> values(j_count * n);
    for (double& v : values) v = 2.0 * unit_double(rng) - 1.0;
    const VectorField field(system.space(), j_count, std::move(values));
    const long bound = static_cast<long>(n) + 2;
    const long s = uniform_int(rng, -bound, bound);
    auto one = check_equimeasurability(system, field, op, s, t_radius, trial);
    for (auto& v : one.violations) report.violations.push_back(std::move(v));
    report.failed_trials.insert(one.failed_trials.begin(), one.failed_trials.end());
    ++report.checked;
  }
  return report;
}

CheckReport check_transfer_oracle(const PermutationSystem& system, std::size_t n_max,
                                  std::size_t j_count, std::size_t n_trials, std::uint64_t seed) {
  CheckReport report;
  report.name = "transfer_oracle[osmax:" + std::to_string(n_max) + "]";
  const TransferredOperator top(LineOperatorSpec::one_sided(n_max), system);
  const std::size_t n = system.n_atoms();
  for (std::size_t trial = 0; trial < n_trials; ++trial) {
    Rng rng(trial_seed(seed, trial));
    std::vector<double> values(j_count * n);
    for (double& v : values) v = dyadic_unit(rng, 8);
    const VectorField field(system.space(), j_count, std::move(values));
    const auto via_transfer = transfer_apply(top, field);
    const auto direct = ergodic_maximal(system, field, n_max);
    for (std::size_t i = 0; i < via_transfer.values().size(); ++i) {
      if (via_transfer.values()[i] != direct.values()[i]) {
        report.fail(trial, "mismatch at component " + std::to_string(i / n) + ", atom " +
                               std::to_string(i % n));
      }
    }
    ++report.checked;
  }
  return report;
}

} // namespace calderon
