#pragma once

#include "calderon/dynamics.hpp"
#include "calderon/ensemble.hpp"
#include "calderon/function_spaces.hpp"
#include "calderon/line_operators.hpp"
#include "calderon/parallel.hpp"
#include "calderon/transfer.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace calderon {

/// Absolute tolerance for every certificate link and comparison bound.
inline constexpr double kLinkTolerance = 1e-9;

enum class InequalityKind { Strong, Weak };

std::string to_string(InequalityKind kind);
InequalityKind parse_kind(const std::string& text);

/// ||(||out||_r)||_{L^p} / ||(||in||_r)||_{L^p}. Throws DegenerateInput for a zero input.
double strong_ratio(const VectorField& output, const VectorField& input, const ExponentPair& pr);
/// Counting-measure version on integer windows.
double strong_ratio(const SampledSequence& output, const SampledSequence& input,
                    const ExponentPair& pr);
double weak_ratio(const SampledSequence& output, const SampledSequence& input,
                  const ExponentPair& pr, double lambda);

struct TrialRatio {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double ratio = 0.0;
  bool degenerate = false;
};

/// Empirical constant: the largest ratio seen over a seeded ensemble. A lower
/// bound on the operator norm, never a claim of sharpness.
struct ConstantEstimate {
  InequalityKind kind = InequalityKind::Strong;
  double p = 1.0;
  Exponent r{1.0};
  double value = 0.0;
  std::size_t n_trials = 0;
  std::size_t n_degenerate = 0;
  std::uint64_t ensemble_seed = 0;
  std::size_t j_count = 0;
  std::string operator_descriptor;
  std::string space_descriptor;
  std::vector<TrialRatio> trials;
};

/// Either a line operator acting on compactly supported sequences, or a transferred operator.
using OperatorTarget = std::variant<LineOperatorSpec, TransferredOperator>;

ConstantEstimate estimate_constant(const OperatorTarget& target, const EnsembleSpec& ensemble,
                                   const ExponentPair& pr, InequalityKind kind,
                                   const LambdaGrid& grid = {}, Parallelism par = {});

/// (2(a+eps)+1) / (2a+1): lattice points kept by the truncation over lattice points averaged.
double slack_factor(long a, long epsilon);

/// Smallest trace half-width for which the truncated traces' full line output is visible.
long certificate_min_window(const LineOperatorSpec& op, long a);

/// Pointwise norms along the orbit of every atom, as used by the transfer argument.
///
/// With F the orbit trace and F^tr its restriction to |t| <= a + eps:
///   untruncated[x][t + a] = ||G(t, x)||_r        for |t| <= a
///   truncated[x]          = ||S F^tr(t, x)||_r   over the whole output support
///   input[x]              = ||F^tr(t, x)||_r     over the trace window
class OrbitNorms {
public:
  OrbitNorms(const LineOperatorSpec& op, const PermutationSystem& system, const VectorField& field,
             const Exponent& r, long a, std::optional<long> window = std::nullopt);

  [[nodiscard]] long a() const noexcept { return a_; }
  [[nodiscard]] long epsilon() const noexcept { return epsilon_; }
  [[nodiscard]] const Exponent& r() const noexcept { return r_; }
  [[nodiscard]] long truncated_offset() const noexcept { return truncated_offset_; }
  [[nodiscard]] const std::vector<std::vector<double>>& untruncated() const noexcept { return g_; }
  [[nodiscard]] const std::vector<std::vector<double>>& truncated() const noexcept { return g_tr_; }
  [[nodiscard]] const std::vector<std::vector<double>>& input() const noexcept { return f_tr_; }
  /// ||f(x)||_r for every atom.
  [[nodiscard]] const std::vector<double>& field_norms() const noexcept { return f0_; }

  /// max over atoms of the line strong ratio on the truncated traces.
  [[nodiscard]] double line_strong_constant(double p) const;
  /// max over atoms of the line weak ratio at lambda on the truncated traces.
  [[nodiscard]] double line_weak_constant(double p, double lambda) const;

private:
  long a_;
  long epsilon_;
  Exponent r_;
  long truncated_offset_ = 0;
  std::vector<std::vector<double>> g_;
  std::vector<std::vector<double>> g_tr_;
  std::vector<std::vector<double>> f_tr_;
  std::vector<double> f0_;
};

struct CertificateLink {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool equality = false;
  bool pass = false;
};

struct CertificateReport {
  std::size_t trial = 0;
  InequalityKind kind = InequalityKind::Strong;
  long a = 0;
  long epsilon = 0;
  double p = 1.0;
  Exponent r{1.0};
  std::optional<double> lambda;
  /// Line constant measured on the truncated traces (strong or weak at lambda).
  double line_constant = 0.0;
  double slack = 1.0;
  /// Weak branch only: every level set was empty.
  bool trivial = false;
  std::vector<CertificateLink> links;

  [[nodiscard]] bool passed() const noexcept;
};

CertificateReport strong_certificate(const OrbitNorms& norms, const WeightedSpace& space,
                                     double p, std::size_t trial = 0);
CertificateReport weak_certificate(const OrbitNorms& norms, const WeightedSpace& space, double p,
                                   double lambda, std::size_t trial = 0);

/// Throws ConfigurationError if window is below certificate_min_window(op, a).
CertificateReport strong_certificate(const LineOperatorSpec& op, const PermutationSystem& system,
                                     const VectorField& field, const ExponentPair& pr, long a,
                                     std::optional<long> window = std::nullopt);
CertificateReport weak_certificate(const LineOperatorSpec& op, const PermutationSystem& system,
                                   const VectorField& field, const ExponentPair& pr, double lambda,
                                   long a, std::optional<long> window = std::nullopt);

struct ComparisonTrial {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  bool degenerate = false;
  double line_strong = 0.0;
  double sys_strong = 0.0;
  double line_weak = 0.0;
  double sys_weak = 0.0;
  bool strong_pass = true;
  bool weak_pass = true;
};

struct ComparisonReport {
  std::string operator_descriptor;
  std::string system_descriptor;
  double p = 1.0;
  Exponent r{1.0};
  std::size_t j_count = 0;
  long a = 0;
  long epsilon = 0;
  /// Ratio-scale slack: slack_factor(a, eps)^(1/p).
  double slack = 1.0;
  std::uint64_t ensemble_seed = 0;
  double c_line_strong = 0.0;
  double c_sys_strong = 0.0;
  double c_line_weak = 0.0;
  double c_sys_weak = 0.0;
  std::size_t strong_violations = 0;
  std::size_t weak_violations = 0;
  std::vector<ComparisonTrial> trials;

  [[nodiscard]] bool passed() const noexcept {
    return strong_violations == 0 && weak_violations == 0;
  }
};

/// Per trial: system constants of the transferred operator against line
/// constants measured on the same field's truncated orbit traces.
ComparisonReport transfer_comparison(const LineOperatorSpec& op, const PermutationSystem& system,
                                     const EnsembleSpec& ensemble, const ExponentPair& pr,
                                     const LambdaGrid& grid = {}, long a = 16, Parallelism par = {});

} // namespace calderon
