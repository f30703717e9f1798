#include "calderon/function_spaces.hpp"

#include "calderon/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <array>
#include <charconv>

namespace calderon {

namespace {

double abs_pow(double x, double p) {
  const double a = std::fabs(x);
  if (p == 1.0) return a;
  if (p == 2.0) return a * a;
  return std::pow(a, p);
}

double root(double s, double p) {
  if (p == 1.0) return s;
  if (p == 2.0) return std::sqrt(s);
  return std::pow(s, 1.0 / p);
}

void require_p(double p) {
  if (!std::isfinite(p) || p < 1.0) {
    throw InvalidArgument("p must be finite and >= 1, got " + std::to_string(p));
  }
}

void require_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) throw InvalidArgument(std::string(what) + ": non-finite entry");
  }
}

} // namespace

Exponent::Exponent(double value) : value_(value) {
  if (std::isnan(value) || value < 1.0) {
    throw InvalidArgument("exponent must be >= 1, got " + std::to_string(value));
  }
  infinite_ = std::isinf(value);
}

Exponent Exponent::infinity() {
  Exponent e;
  e.infinite_ = true;
  e.value_ = std::numeric_limits<double>::infinity();
  return e;
}

double Exponent::value() const noexcept {
  return infinite_ ? std::numeric_limits<double>::infinity() : value_;
}

std::string Exponent::to_string() const {
  if (infinite_) return "inf";
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value_);
  return std::string(buf.data(), ptr);
}

Exponent parse_exponent(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return Exponent::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ParseError("not an exponent: '" + text + "'");
  }
  if (used != text.size()) throw ParseError("not an exponent: '" + text + "'");
  return Exponent(v);
}

ExponentPair::ExponentPair(double p, Exponent r) : p_(p), r_(r) { require_p(p); }

WeightedSpace::WeightedSpace(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw InvalidArgument("weighted space needs at least one atom");
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) throw InvalidArgument("atom weights must be positive and finite");
    total_ += w;
  }
}

WeightedSpace WeightedSpace::uniform_probability(std::size_t n_atoms) {
  if (n_atoms == 0) throw InvalidArgument("weighted space needs at least one atom");
  return WeightedSpace(std::vector<double>(n_atoms, 1.0 / static_cast<double>(n_atoms)));
}

VectorField::VectorField(std::shared_ptr<const WeightedSpace> space, std::size_t j_count,
                         std::vector<double> values)
    : space_(std::move(space)), j_count_(j_count), values_(std::move(values)) {
  if (!space_) throw InvalidArgument("vector field needs a space");
  if (j_count_ == 0) throw InvalidArgument("vector field needs J >= 1");
  if (values_.size() != j_count_ * space_->n_atoms()) {
    throw InvalidArgument("vector field value count does not match J x atoms");
  }
  require_finite(values_, "vector field");
}

VectorField VectorField::zeros(std::shared_ptr<const WeightedSpace> space, std::size_t j_count) {
  const std::size_t n = space ? space->n_atoms() : 0;
  return VectorField(std::move(space), j_count, std::vector<double>(j_count * n, 0.0));
}

VectorField VectorField::scaled(double c) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= c;
  return VectorField(space_, j_count_, std::move(v));
}

SampledSequence::SampledSequence(std::size_t j_count, long offset, std::size_t width,
                                 std::vector<double> values)
    : j_count_(j_count), offset_(offset), width_(width), values_(std::move(values)) {
  if (j_count_ == 0) throw InvalidArgument("sampled sequence needs J >= 1");
  if (width_ == 0) throw InvalidArgument("sampled sequence needs width >= 1");
  if (values_.size() != j_count_ * width_) {
    throw InvalidArgument("sampled sequence value count does not match J x width");
  }
  require_finite(values_, "sampled sequence");
}

SampledSequence SampledSequence::zeros(std::size_t j_count, long offset, std::size_t width) {
  return SampledSequence(j_count, offset, width, std::vector<double>(j_count * width, 0.0));
}

double SampledSequence::at(std::size_t j, long t) const {
  if (j >= j_count_ || !contains(t)) {
    throw InvalidArgument("sample (" + std::to_string(j) + ", " + std::to_string(t) +
                          ") outside the sequence window");
  }
  return values_[j * width_ + static_cast<std::size_t>(t - offset_)];
}

SampledSequence SampledSequence::scaled(double c) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= c;
  return SampledSequence(j_count_, offset_, width_, std::move(v));
}

double lr_norm(std::span<const double> components, const Exponent& r) {
  double largest = 0.0;
  for (double v : components) largest = std::max(largest, std::fabs(v));
  if (r.is_infinite() || largest == 0.0) return largest;
  const double q = r.value();
  if (q == 1.0) {
    double s = 0.0;
    for (double v : components) s += std::fabs(v);
    return s;
  }
  // Scaling by the largest entry keeps single-component norms exact.
  double s = 0.0;
  for (double v : components) s += abs_pow(v / largest, q);
  return largest * root(s, q);
}

namespace {

template <typename Getter>
std::vector<double> pointwise(std::size_t j_count, std::size_t points, const Exponent& r,
                              Getter get) {
  std::vector<double> out(points);
  std::vector<double> scratch(j_count);
  for (std::size_t i = 0; i < points; ++i) {
    for (std::size_t j = 0; j < j_count; ++j) scratch[j] = get(j, i);
    out[i] = lr_norm(scratch, r);
  }
  return out;
}

} // namespace

std::vector<double> lr_norm_pointwise(const VectorField& field, const Exponent& r) {
  const std::size_t n = field.n_atoms();
  const auto values = field.values();
  return pointwise(field.j_count(), n, r,
                   [&](std::size_t j, std::size_t i) { return values[j * n + i]; });
}

std::vector<double> lr_norm_pointwise(const SampledSequence& seq, const Exponent& r) {
  const std::size_t w = seq.width();
  const auto values = seq.values();
  return pointwise(seq.j_count(), w, r,
                   [&](std::size_t j, std::size_t i) { return values[j * w + i]; });
}

double lp_power(std::span<const double> g, const WeightedSpace& space, double p) {
  if (g.size() != space.n_atoms()) throw InvalidArgument("function does not live on this space");
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) s += space.weights()[i] * abs_pow(g[i], p);
  return s;
}

double lp_power(std::span<const double> g, double p) {
  double s = 0.0;
  for (double v : g) s += abs_pow(v, p);
  return s;
}

double lp_norm(std::span<const double> g, const WeightedSpace& space, double p) {
  require_p(p);
  return root(lp_power(g, space, p), p);
}

double lp_norm(std::span<const double> g, double p) {
  require_p(p);
  return root(lp_power(g, p), p);
}

double distribution_measure(std::span<const double> g, double lambda, const WeightedSpace& space) {
  if (!(lambda > 0.0)) throw InvalidArgument("level lambda must be positive");
  if (g.size() != space.n_atoms()) throw InvalidArgument("function does not live on this space");
  double m = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] > lambda) m += space.weights()[i];
  }
  return m;
}

double distribution_measure(std::span<const double> g, double lambda) {
  if (!(lambda > 0.0)) throw InvalidArgument("level lambda must be positive");
  return static_cast<double>(std::count_if(g.begin(), g.end(), [&](double v) { return v > lambda; }));
}

double weak_ratio(const VectorField& output, const VectorField& input, const ExponentPair& pr,
                  double lambda) {
  if (!(output.space() == input.space())) throw InvalidArgument("fields live on different spaces");
  const double denom = lp_power(lr_norm_pointwise(input, pr.r()), input.space(), pr.p());
  if (denom == 0.0) throw DegenerateInput("weak ratio of an identically zero input");
  const double level = distribution_measure(lr_norm_pointwise(output, pr.r()), lambda, output.space());
  if (level == 0.0) return 0.0;
  return root(std::pow(lambda, pr.p()) * level / denom, pr.p());
}

} // namespace calderon
