#include "calderon/ensemble.hpp"

#include "calderon/errors.hpp"

#include <cmath>

namespace calderon {

std::string to_string(ValueDistribution d) {
  switch (d) {
  case ValueDistribution::Uniform: return "uniform";
  case ValueDistribution::Sparse: return "sparse";
  case ValueDistribution::Mixed: return "mixed";
  }
  return "?";
}

ValueDistribution parse_distribution(const std::string& text) {
  if (text == "uniform") return ValueDistribution::Uniform;
  if (text == "sparse") return ValueDistribution::Sparse;
  if (text == "mixed") return ValueDistribution::Mixed;
  throw ParseError("unknown value distribution '" + text + "'");
}

ValueDistribution trial_distribution(ValueDistribution d, std::size_t index) {
  if (d != ValueDistribution::Mixed) return d;
  return index % 2 == 0 ? ValueDistribution::Uniform : ValueDistribution::Sparse;
}

namespace {

double draw(ValueDistribution d, Rng& rng) {
  if (d == ValueDistribution::Sparse) {
    const bool hit = unit_double(rng) < 0.1;
    const double v = unit_double(rng);
    return hit ? v : 0.0;
  }
  return 2.0 * unit_double(rng) - 1.0;
}

} // namespace

VectorField random_field(const std::shared_ptr<const WeightedSpace>& space, std::size_t j_count,
                         ValueDistribution d, Rng& rng) {
  if (d == ValueDistribution::Mixed) throw InvalidArgument("resolve Mixed per trial first");
  std::vector<double> values(j_count * space->n_atoms());
  for (double& v : values) v = draw(d, rng);
  return VectorField(space, j_count, std::move(values));
}

SampledSequence random_line_input(const LineOperatorSpec& op, std::size_t j_count,
                                  std::size_t support, ValueDistribution d, Rng& rng) {
  if (d == ValueDistribution::Mixed) throw InvalidArgument("resolve Mixed per trial first");
  if (support == 0) throw InvalidArgument("line support must be >= 1");
  const long pad = op.semilocal_radius() + std::max(op.left_reach(), op.right_reach());
  const std::size_t width = support + 2 * static_cast<std::size_t>(pad);
  std::vector<double> values(j_count * width, 0.0);
  for (std::size_t j = 0; j < j_count; ++j) {
    for (std::size_t i = 0; i < support; ++i) {
      values[j * width + static_cast<std::size_t>(pad) + i] = draw(d, rng);
    }
  }
  return SampledSequence(j_count, -pad, width, std::move(values));
}

void LambdaGrid::validate() const {
  if (points == 0) throw InvalidArgument("lambda grid is empty");
  if (!(min_fraction > 0.0) || !(max_fraction > 0.0) || min_fraction > max_fraction ||
      !std::isfinite(max_fraction)) {
    throw InvalidArgument("lambda grid fractions must satisfy 0 < min <= max");
  }
}

std::vector<double> LambdaGrid::levels(double max_value) const {
  validate();
  std::vector<double> out;
  if (!(max_value > 0.0)) return out;
  out.reserve(points);
  if (points == 1) {
    out.push_back(max_fraction * max_value);
    return out;
  }
  const double lo = std::log(min_fraction);
  const double hi = std::log(max_fraction);
  for (std::size_t i = 0; i < points; ++i) {
    const double frac = i == 0              ? min_fraction
                        : i + 1 == points ? max_fraction
                                          : std::exp(lo + (hi - lo) * static_cast<double>(i) /
                                                static_cast<double>(points - 1));
    out.push_back(frac * max_value);
  }
  return out;
}

} // namespace calderon
