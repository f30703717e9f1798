#pragma once

#include "calderon/check_report.hpp"
#include "calderon/dynamics.hpp"
#include "calderon/function_spaces.hpp"
#include "calderon/line_operators.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>

namespace calderon {

/// A line operator carried to a permutation system along orbits.
///
/// For each atom x the orbit trace t -> f(tau^t x) is sampled on [-w, w], the
/// line operator is applied componentwise, and the value at t = 0 is read off.
/// The window must satisfy w >= semilocal radius + operator parameter so the
/// value at t = 0 never depends on w.
class TransferredOperator {
public:
  TransferredOperator(LineOperatorSpec line_op, PermutationSystem system,
                      std::optional<long> window_halfwidth = std::nullopt);

  [[nodiscard]] const LineOperatorSpec& line_op() const noexcept { return line_op_; }
  [[nodiscard]] const PermutationSystem& system() const noexcept { return system_; }
  [[nodiscard]] long window_halfwidth() const noexcept { return window_; }

  /// semilocal radius + parameter + 1.
  static long default_window(const LineOperatorSpec& op);
  /// semilocal radius + parameter.
  static long minimum_window(const LineOperatorSpec& op);

private:
  LineOperatorSpec line_op_;
  PermutationSystem system_;
  long window_;
};

VectorField transfer_apply(const TransferredOperator& top, const VectorField& field);

/// sup_{1<=n<=n_max} (1/n) sum_{k<n} |f_j(tau^k x)|, evaluated directly on the system.
VectorField ergodic_maximal(const PermutationSystem& system, const VectorField& field,
                            std::size_t n_max);

/// Zeroes every sample with |t| >= a; the window is unchanged.
SampledSequence truncate_trace(const SampledSequence& seq, long a);

/// G(t, x) = (line op applied to the orbit trace of x) at t, for t in [t_lo, t_hi].
SampledSequence transferred_trace(const LineOperatorSpec& op, const PermutationSystem& system,
                                  const VectorField& field, std::size_t x, long t_lo, long t_hi);

/// Checks G(t, tau^s x) == G(t + s, x) bit for bit for |t| <= t_radius and
/// that every x -> G_j(t, x) has the same weighted value distribution as x -> G_j(0, x).
CheckReport check_equimeasurability(const PermutationSystem& system, const VectorField& field,
                                    const LineOperatorSpec& op, long s, long t_radius = 3,
                                    std::size_t trial_id = 0);

/// Seeded ensemble of (field, shift) pairs on one system; uniform [-1, 1] values.
CheckReport check_equimeasurability(const PermutationSystem& system, const LineOperatorSpec& op,
                                    std::size_t j_count, std::size_t n_trials,
                                    std::uint64_t seed, long t_radius = 3);

/// transfer_apply(one-sided maximal) against ergodic_maximal, required bit-exact.
CheckReport check_transfer_oracle(const PermutationSystem& system, std::size_t n_max,
                                  std::size_t j_count, std::size_t n_trials, std::uint64_t seed);

} // namespace calderon
