#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace calderon {

/// Integrability exponent. Infinity is a distinguished value, not a large double.
class Exponent {
public:
  /// Throws InvalidArgument unless value >= 1 (infinity allowed).
  explicit Exponent(double value);

  static Exponent infinity();

  [[nodiscard]] bool is_infinite() const noexcept { return infinite_; }
  /// Finite value; +inf for the infinite exponent.
  [[nodiscard]] double value() const noexcept;
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const Exponent&, const Exponent&) = default;

private:
  Exponent() = default;
  double value_ = 1.0;
  bool infinite_ = false;
};

/// Parses "inf", "infinity" or a real >= 1.
Exponent parse_exponent(const std::string& text);

/// Integrability exponent p (finite) and vector exponent r (possibly infinite).
class ExponentPair {
public:
  ExponentPair(double p, Exponent r);
  ExponentPair(double p, double r) : ExponentPair(p, Exponent(r)) {}

  [[nodiscard]] double p() const noexcept { return p_; }
  [[nodiscard]] const Exponent& r() const noexcept { return r_; }

private:
  double p_;
  Exponent r_;
};

/// Finite space of weighted atoms.
class WeightedSpace {
public:
  explicit WeightedSpace(std::vector<double> weights);

  /// N atoms of mass 1/N each.
  static WeightedSpace uniform_probability(std::size_t n_atoms);

  [[nodiscard]] std::size_t n_atoms() const noexcept { return weights_.size(); }
  [[nodiscard]] std::span<const double> weights() const noexcept { return weights_; }
  [[nodiscard]] double weight(std::size_t i) const { return weights_.at(i); }
  [[nodiscard]] double total_measure() const noexcept { return total_; }

  friend bool operator==(const WeightedSpace& a, const WeightedSpace& b) {
    return a.weights_ == b.weights_;
  }

private:
  std::vector<double> weights_;
  double total_ = 0.0;
};

/// J real components over the atoms of a WeightedSpace, stored component-major.
class VectorField {
public:
  VectorField(std::shared_ptr<const WeightedSpace> space, std::size_t j_count,
              std::vector<double> values);

  static VectorField zeros(std::shared_ptr<const WeightedSpace> space, std::size_t j_count);

  [[nodiscard]] std::size_t j_count() const noexcept { return j_count_; }
  [[nodiscard]] std::size_t n_atoms() const noexcept { return space_->n_atoms(); }
  [[nodiscard]] const WeightedSpace& space() const noexcept { return *space_; }
  [[nodiscard]] const std::shared_ptr<const WeightedSpace>& space_ptr() const noexcept {
    return space_;
  }

  [[nodiscard]] double at(std::size_t j, std::size_t atom) const {
    return values_[j * n_atoms() + atom];
  }
  [[nodiscard]] std::span<const double> component(std::size_t j) const {
    return std::span<const double>(values_).subspan(j * n_atoms(), n_atoms());
  }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

  /// Every entry multiplied by c.
  [[nodiscard]] VectorField scaled(double c) const;

private:
  std::shared_ptr<const WeightedSpace> space_;
  std::size_t j_count_;
  std::vector<double> values_;
};

/// J real components sampled at the consecutive integer times
/// offset, offset+1, ..., offset+width-1. Stored component-major.
class SampledSequence {
public:
  SampledSequence(std::size_t j_count, long offset, std::size_t width,
                  std::vector<double> values);

  static SampledSequence zeros(std::size_t j_count, long offset, std::size_t width);

  [[nodiscard]] std::size_t j_count() const noexcept { return j_count_; }
  [[nodiscard]] long offset() const noexcept { return offset_; }
  [[nodiscard]] std::size_t width() const noexcept { return width_; }
  [[nodiscard]] long t_min() const noexcept { return offset_; }
  [[nodiscard]] long t_max() const noexcept { return offset_ + static_cast<long>(width_) - 1; }
  [[nodiscard]] bool contains(long t) const noexcept { return t >= t_min() && t <= t_max(); }

  /// Component j at absolute time t. Throws InvalidArgument outside the window.
  [[nodiscard]] double at(std::size_t j, long t) const;
  [[nodiscard]] std::span<const double> component(std::size_t j) const {
    return std::span<const double>(values_).subspan(j * width_, width_);
  }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

  [[nodiscard]] SampledSequence scaled(double c) const;

private:
  std::size_t j_count_;
  long offset_;
  std::size_t width_;
  std::vector<double> values_;
};

/// Pointwise vector norm across components, one value per atom.
std::vector<double> lr_norm_pointwise(const VectorField& field, const Exponent& r);
/// Pointwise vector norm across components, one value per sample (index 0 is t = offset).
std::vector<double> lr_norm_pointwise(const SampledSequence& seq, const Exponent& r);
/// Norm of a single vector of component values.
double lr_norm(std::span<const double> components, const Exponent& r);

/// Weighted p-th power sum: sum_i mu_i |g_i|^p.
double lp_power(std::span<const double> g, const WeightedSpace& space, double p);
/// Counting-measure p-th power sum (unit mass per lattice point).
double lp_power(std::span<const double> g, double p);

double lp_norm(std::span<const double> g, const WeightedSpace& space, double p);
double lp_norm(std::span<const double> g, double p);

/// Measure of {i : g_i > lambda}. Throws InvalidArgument unless lambda > 0.
double distribution_measure(std::span<const double> g, double lambda, const WeightedSpace& space);
/// Number of lattice points with g_i > lambda.
double distribution_measure(std::span<const double> g, double lambda);

/// Smallest C with lambda^p mu{|out| > lambda} <= C^p * integral |in|^p at this lambda.
/// Throws DegenerateInput when the input vanishes.
double weak_ratio(const VectorField& output, const VectorField& input, const ExponentPair& pr,
                  double lambda);

} // namespace calderon
