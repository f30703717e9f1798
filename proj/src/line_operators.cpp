#include "calderon/line_operators.hpp"

#include "calderon/errors.hpp"
#include "calderon/random.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <vector>

namespace calderon {

LineOperatorSpec::LineOperatorSpec(LineOperatorKind kind, std::size_t parameter)
    : kind_(kind), parameter_(parameter) {
  if (parameter_ == 0) throw InvalidArgument("operator parameter must be >= 1");
}

long LineOperatorSpec::semilocal_radius() const noexcept {
  const long n = static_cast<long>(parameter_);
  return kind_ == LineOperatorKind::UncenteredMaximal ? n : n - 1;
}

long LineOperatorSpec::left_reach() const noexcept {
  return kind_ == LineOperatorKind::UncenteredMaximal ? static_cast<long>(parameter_) : 0;
}

long LineOperatorSpec::right_reach() const noexcept {
  const long n = static_cast<long>(parameter_);
  return kind_ == LineOperatorKind::UncenteredMaximal ? n : n - 1;
}

std::string LineOperatorSpec::to_string() const {
  switch (kind_) {
  case LineOperatorKind::OneSidedAverage: return "avg:" + std::to_string(parameter_);
  case LineOperatorKind::OneSidedMaximal: return "osmax:" + std::to_string(parameter_);
  case LineOperatorKind::UncenteredMaximal: return "hl:" + std::to_string(parameter_);
  }
  return "?";
}

LineOperatorSpec parse_operator_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw ParseError("malformed operator spec '" + spec + "'");
  const std::string kind = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), value);
  if (arg.empty() || ec != std::errc() || ptr != arg.data() + arg.size() || value == 0) {
    throw ParseError("malformed operator spec '" + spec + "'");
  }
  if (kind == "avg") return LineOperatorSpec::average(value);
  if (kind == "osmax") return LineOperatorSpec::one_sided(value);
  if (kind == "hl") return LineOperatorSpec::uncentered(value);
  throw ParseError("unknown operator kind in '" + spec + "'");
}

namespace {

using Kernel = void (*)(std::span<const double> in, std::size_t parameter, std::span<double> out);

void average_kernel(std::span<const double> in, std::size_t m, std::span<double> out) {
  const double len = static_cast<double>(m);
  for (std::size_t i = 0; i < out.size(); ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < m; ++k) s += std::fabs(in[i + k]);
    out[i] = s / len;
  }
}

// Running sums restart at every t, so the value at t depends only on the
// samples it reads: shifting the window never changes a single bit.
void one_sided_kernel(std::span<const double> in, std::size_t n_max, std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    double s = 0.0;
    double best = 0.0;
    for (std::size_t m = 1; m <= n_max; ++m) {
      s += std::fabs(in[i + m - 1]);
      best = std::max(best, s / static_cast<double>(m));
    }
    out[i] = best;
  }
}

void uncentered_kernel(std::span<const double> in, std::size_t n_max, std::span<double> out) {
  std::vector<double> left(n_max + 1);
  std::vector<double> right(n_max + 1);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::size_t c = i + n_max;
    left[0] = 0.0;
    right[0] = std::fabs(in[c]);
    for (std::size_t k = 1; k <= n_max; ++k) {
      left[k] = left[k - 1] + std::fabs(in[c - k]);
      right[k] = right[k - 1] + std::fabs(in[c + k]);
    }
    double best = 0.0;
    for (std::size_t a = 0; a <= n_max; ++a) {
      for (std::size_t b = 0; b <= n_max; ++b) {
        best = std::max(best, (left[a] + right[b]) / static_cast<double>(a + b + 1));
      }
    }
    out[i] = best;
  }
}

SampledSequence run(const LineOperatorSpec& op, const SampledSequence& seq) {
  const long width = static_cast<long>(seq.width()) - op.left_reach() - op.right_reach();
  if (width <= 0) {
    throw EmptyWindow(op.to_string() + " cannot be evaluated anywhere on a window of width " +
                      std::to_string(seq.width()));
  }
  Kernel kernel = nullptr;
  switch (op.kind()) {
  case LineOperatorKind::OneSidedAverage: kernel = average_kernel; break;
  case LineOperatorKind::OneSidedMaximal: kernel = one_sided_kernel; break;
  case LineOperatorKind::UncenteredMaximal: kernel = uncentered_kernel; break;
  }
  const auto out_width = static_cast<std::size_t>(width);
  std::vector<double> values(seq.j_count() * out_width);
  for (std::size_t j = 0; j < seq.j_count(); ++j) {
    kernel(seq.component(j), op.parameter(),
           std::span<double>(values).subspan(j * out_width, out_width));
  }
  return SampledSequence(seq.j_count(), seq.offset() + op.left_reach(), out_width,
                         std::move(values));
}

} // namespace

SampledSequence one_sided_average(const SampledSequence& seq, std::size_t m) {
  return run(LineOperatorSpec::average(m), seq);
}

SampledSequence one_sided_maximal(const SampledSequence& seq, std::size_t n_max) {
  return run(LineOperatorSpec::one_sided(n_max), seq);
}

SampledSequence uncentered_maximal(const SampledSequence& seq, std::size_t n_max) {
  return run(LineOperatorSpec::uncentered(n_max), seq);
}

SampledSequence apply_componentwise(const LineOperatorSpec& op, const SampledSequence& seq) {
  return run(op, seq);
}

namespace {

// Random values on a random interval of length <= max_len, each entry zero with
// probability 1/4 so that supports have holes.
std::vector<double> random_block(Rng& rng, std::size_t max_len) {
  const auto len = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<long>(max_len)));
  std::vector<double> block(len);
  for (double& v : block) v = unit_double(rng) < 0.25 ? 0.0 : 2.0 * unit_double(rng) - 1.0;
  return block;
}

SampledSequence place(std::span<const double> block, std::size_t at, std::size_t width) {
  std::vector<double> values(width, 0.0);
  std::copy(block.begin(), block.end(), values.begin() + static_cast<long>(at));
  return SampledSequence(1, 0, width, std::move(values));
}

} // namespace

CheckReport check_operator_axioms(const LineOperatorSpec& op, std::size_t n_inputs,
                                  std::uint64_t seed, double tolerance) {
  CheckReport report;
  report.name = "operator_axioms[" + op.to_string() + "]";
  const long eps = op.semilocal_radius();
  const long margin = eps + op.left_reach() + op.right_reach() + 1;
  constexpr std::size_t block_len = 24;
  constexpr long max_shift = 7;
  const auto width = static_cast<std::size_t>(2 * margin + static_cast<long>(block_len) + max_shift);

  for (std::size_t trial = 0; trial < n_inputs; ++trial) {
    Rng rng(trial_seed(seed, trial));
    const auto f = random_block(rng, block_len);
    auto g = random_block(rng, block_len);
    g.resize(f.size(), 0.0);
    const auto at = static_cast<std::size_t>(margin);

    const auto tf = apply_componentwise(op, place(f, at, width));
    const auto tg = apply_componentwise(op, place(g, at, width));
    std::vector<double> sum(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) sum[i] = f[i] + g[i];
    const auto tsum = apply_componentwise(op, place(sum, at, width));

    const auto out_f = tf.component(0);
    for (std::size_t i = 0; i < out_f.size(); ++i) {
      const double lhs = tsum.component(0)[i];
      const double rhs = out_f[i] + tg.component(0)[i];
      if (lhs > rhs + tolerance) {
        report.fail(trial, "sublinearity fails at t=" + std::to_string(tf.offset() + static_cast<long>(i)));
      }
      if (out_f[i] < 0.0) report.fail(trial, "negative output");
    }

    const long shift = uniform_int(rng, 1, max_shift);
    const auto shifted = apply_componentwise(op, place(f, at + static_cast<std::size_t>(shift), width));
    for (long t = tf.t_min(); t <= tf.t_max(); ++t) {
      if (!shifted.contains(t + shift)) continue;
      if (std::fabs(tf.at(0, t) - shifted.at(0, t + shift)) > tolerance) {
        report.fail(trial, "translation commutation fails at t=" + std::to_string(t));
      }
    }

    std::vector<long> support;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f[i] != 0.0) support.push_back(margin + static_cast<long>(i));
    }
    for (long t = tf.t_min(); t <= tf.t_max(); ++t) {
      if (tf.at(0, t) == 0.0) continue;
      const bool near = std::any_of(support.begin(), support.end(),
                                    [&](long s) { return std::labs(t - s) <= eps; });
      if (!near) report.fail(trial, "output at t=" + std::to_string(t) + " outside eps-neighbourhood");
    }
    ++report.checked;
  }

  const auto zero = apply_componentwise(op, SampledSequence::zeros(1, 0, width));
  for (double v : zero.values()) {
    if (v != 0.0) {
      report.violations.push_back("zero input produced a nonzero output");
      break;
    }
  }
  return report;
}

} // namespace calderon
