#pragma once

#include "calderon/check_report.hpp"
#include "calderon/function_spaces.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

namespace calderon {

enum class LineOperatorKind { OneSidedAverage, OneSidedMaximal, UncenteredMaximal };

/// A positive, sublinear, translation-commuting, semilocal operator on integer sequences.
///
/// OneSidedAverage(m):    A_m f(t) = (1/m) sum_{k<m} |f(t+k)|
/// OneSidedMaximal(n):    max_{1<=m<=n} A_m f(t)
/// UncenteredMaximal(n):  sup of averages of |f| over [t-a, t+b], 0 <= a, b <= n
class LineOperatorSpec {
public:
  LineOperatorSpec(LineOperatorKind kind, std::size_t parameter);

  static LineOperatorSpec average(std::size_t m) { return {LineOperatorKind::OneSidedAverage, m}; }
  static LineOperatorSpec one_sided(std::size_t n_max) {
    return {LineOperatorKind::OneSidedMaximal, n_max};
  }
  static LineOperatorSpec uncentered(std::size_t n_max) {
    return {LineOperatorKind::UncenteredMaximal, n_max};
  }

  [[nodiscard]] LineOperatorKind kind() const noexcept { return kind_; }
  /// m for averages, n_max for the maximal kinds.
  [[nodiscard]] std::size_t parameter() const noexcept { return parameter_; }
  /// Output support lies within this distance of the input support.
  [[nodiscard]] long semilocal_radius() const noexcept;
  /// Samples needed to the left / right of t to evaluate the operator at t.
  [[nodiscard]] long left_reach() const noexcept;
  [[nodiscard]] long right_reach() const noexcept;
  [[nodiscard]] bool positive() const noexcept { return true; }
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const LineOperatorSpec&, const LineOperatorSpec&) = default;

private:
  LineOperatorKind kind_;
  std::size_t parameter_;
};

/// Parses "avg:m", "osmax:n_max" or "hl:n_max".
LineOperatorSpec parse_operator_spec(const std::string& spec);

// Outputs cover only the times where every required sample exists; the window
// shrinks instead of being padded. EmptyWindow is thrown when nothing remains.
SampledSequence one_sided_average(const SampledSequence& seq, std::size_t m);
SampledSequence one_sided_maximal(const SampledSequence& seq, std::size_t n_max);
SampledSequence uncentered_maximal(const SampledSequence& seq, std::size_t n_max);

/// Applies the scalar operator to each component independently.
SampledSequence apply_componentwise(const LineOperatorSpec& op, const SampledSequence& seq);

/// Randomized verification of sublinearity, translation commutation and
/// semilocality (plus positivity) on `n_inputs` seeded inputs.
CheckReport check_operator_axioms(const LineOperatorSpec& op, std::size_t n_inputs,
                                  std::uint64_t seed, double tolerance = 1e-12);

} // namespace calderon
