#pragma once

#include "calderon/function_spaces.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace calderon {

/// Invertible measure-preserving map on a finite weighted atom space.
///
/// The map is a permutation tau of {0, ..., N-1}; the weights must be constant
/// along every cycle so that mu(tau^{-1} A) = mu(A) holds exactly. Powers
/// tau^s for any integer s are answered in O(1) from the cycle decomposition.
class PermutationSystem {
public:
  /// Throws InvalidArgument if forward_map is not a bijection or weights are not invariant.
  PermutationSystem(std::vector<std::size_t> forward_map, WeightedSpace weights,
                    std::string descriptor = "custom");

  [[nodiscard]] std::size_t n_atoms() const noexcept { return forward_.size(); }
  [[nodiscard]] const std::shared_ptr<const WeightedSpace>& space() const noexcept { return space_; }
  [[nodiscard]] std::span<const std::size_t> forward_map() const noexcept { return forward_; }
  [[nodiscard]] std::span<const std::size_t> inverse_map() const noexcept { return inverse_; }
  [[nodiscard]] const std::string& descriptor() const noexcept { return descriptor_; }

  /// tau^s(x); negative s iterates the inverse.
  [[nodiscard]] std::size_t iterate(std::size_t x, long s) const;

  [[nodiscard]] std::size_t cycle_count() const noexcept { return cycles_.size(); }
  [[nodiscard]] std::vector<std::size_t> cycle_lengths() const;
  /// Length of the cycle containing x.
  [[nodiscard]] std::size_t period(std::size_t x) const { return cycles_[cycle_of_.at(x)].size(); }

private:
  std::vector<std::size_t> forward_;
  std::vector<std::size_t> inverse_;
  std::shared_ptr<const WeightedSpace> space_;
  std::string descriptor_;
  std::vector<std::vector<std::size_t>> cycles_;
  std::vector<std::size_t> cycle_of_;
  std::vector<std::size_t> position_;
};

/// tau(i) = i + 1 mod N with uniform weights.
PermutationSystem cyclic_system(std::size_t n);
/// tau(i) = i + a mod q with uniform weights; a may be negative.
PermutationSystem rotation_system(std::size_t q, long a);
/// Uniform random permutation from a seeded Fisher-Yates shuffle, uniform weights.
PermutationSystem random_permutation_system(std::size_t n, std::uint64_t seed);

/// Parses "cyclic:N", "rotation:q,a" or "random:N,seed".
PermutationSystem parse_system_spec(const std::string& spec);

/// The sequence t -> f(tau^t x) for t in [t_min, t_max].
SampledSequence orbit_trace(const PermutationSystem& system, const VectorField& field,
                            std::size_t x, long t_min, long t_max);

} // namespace calderon
