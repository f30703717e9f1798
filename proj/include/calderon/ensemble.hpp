#pragma once

#include "calderon/function_spaces.hpp"
#include "calderon/line_operators.hpp"
#include "calderon/random.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace calderon {

enum class ValueDistribution {
  Uniform, ///< i.i.d. uniform on [-1, 1]
  Sparse,  ///< nonnegative, each entry nonzero with probability 0.1, uniform on [0, 1)
  Mixed,   ///< even trials Uniform, odd trials Sparse
};

std::string to_string(ValueDistribution d);
ValueDistribution parse_distribution(const std::string& text);

struct EnsembleSpec {
  std::size_t n_trials = 200;
  std::uint64_t seed = 0xC0FFEE;
  std::size_t j_count = 4;
  ValueDistribution distribution = ValueDistribution::Mixed;
  /// Support length of line-side inputs.
  std::size_t line_support = 64;
};

/// Distribution used by trial `index` (resolves Mixed).
ValueDistribution trial_distribution(ValueDistribution d, std::size_t index);

VectorField random_field(const std::shared_ptr<const WeightedSpace>& space, std::size_t j_count,
                         ValueDistribution d, Rng& rng);

/// Random values on [0, support) surrounded by enough zeros that the whole
/// output support of `op` can be evaluated.
SampledSequence random_line_input(const LineOperatorSpec& op, std::size_t j_count,
                                  std::size_t support, ValueDistribution d, Rng& rng);

/// Relative level grid: `points` logarithmically spaced fractions in
/// [min_fraction, max_fraction] of the output's largest pointwise norm.
struct LambdaGrid {
  double min_fraction = 0.01;
  double max_fraction = 1.0;
  std::size_t points = 32;

  /// Throws InvalidArgument for non-positive fractions or min > max.
  void validate() const;
  /// Empty when max_value is zero.
  [[nodiscard]] std::vector<double> levels(double max_value) const;
};

} // namespace calderon
