#include "calderon/dynamics.hpp"

#include "calderon/errors.hpp"

#include <charconv>
#include <limits>
#include <random>
#include <string_view>

namespace calderon {

PermutationSystem::PermutationSystem(std::vector<std::size_t> forward_map, WeightedSpace weights,
                                     std::string descriptor)
    : forward_(std::move(forward_map)),
      space_(std::make_shared<const WeightedSpace>(std::move(weights))),
      descriptor_(std::move(descriptor)) {
  const std::size_t n = forward_.size();
  if (n == 0) throw InvalidArgument("system needs at least one atom");
  if (space_->n_atoms() != n) throw InvalidArgument("weights and map disagree on atom count");

  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  inverse_.assign(n, unset);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t y = forward_[i];
    if (y >= n || inverse_[y] != unset) throw InvalidArgument("forward map is not a bijection");
    inverse_[y] = i;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (space_->weight(forward_[i]) != space_->weight(i)) {
      throw InvalidArgument("weights are not invariant under the map");
    }
  }

  cycle_of_.assign(n, unset);
  position_.assign(n, 0);
  for (std::size_t start = 0; start < n; ++start) {
    if (cycle_of_[start] != unset) continue;
    std::vector<std::size_t> cycle;
    std::size_t x = start;
    do {
      cycle_of_[x] = cycles_.size();
      position_[x] = cycle.size();
      cycle.push_back(x);
      x = forward_[x];
    } while (x != start);
    cycles_.push_back(std::move(cycle));
  }
}

std::size_t PermutationSystem::iterate(std::size_t x, long s) const {
  const auto& cycle = cycles_[cycle_of_.at(x)];
  const long len = static_cast<long>(cycle.size());
  long k = (static_cast<long>(position_[x]) + s % len) % len;
  if (k < 0) k += len;
  return cycle[static_cast<std::size_t>(k)];
}

std::vector<std::size_t> PermutationSystem::cycle_lengths() const {
  std::vector<std::size_t> lengths;
  lengths.reserve(cycles_.size());
  for (const auto& c : cycles_) lengths.push_back(c.size());
  return lengths;
}

PermutationSystem cyclic_system(std::size_t n) {
  if (n == 0) throw InvalidArgument("cyclic system needs N >= 1");
  std::vector<std::size_t> map(n);
  for (std::size_t i = 0; i < n; ++i) map[i] = (i + 1) % n;
  return PermutationSystem(std::move(map), WeightedSpace::uniform_probability(n),
                           "cyclic:" + std::to_string(n));
}

PermutationSystem rotation_system(std::size_t q, long a) {
  if (q == 0) throw InvalidArgument("rotation system needs q >= 1");
  const long ql = static_cast<long>(q);
  long shift = a % ql;
  if (shift < 0) shift += ql;
  std::vector<std::size_t> map(q);
  for (std::size_t i = 0; i < q; ++i) map[i] = (i + static_cast<std::size_t>(shift)) % q;
  return PermutationSystem(std::move(map), WeightedSpace::uniform_probability(q),
                           "rotation:" + std::to_string(q) + "," + std::to_string(a));
}

PermutationSystem random_permutation_system(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("random system needs N >= 1");
  std::vector<std::size_t> map(n);
  for (std::size_t i = 0; i < n; ++i) map[i] = i;
  std::mt19937_64 rng(seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    // Rejection sampling keeps the draw unbiased and independent of the standard library.
    const std::uint64_t bound = static_cast<std::uint64_t>(i) + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t draw = rng();
    while (draw >= limit) draw = rng();
    std::swap(map[i], map[static_cast<std::size_t>(draw % bound)]);
  }
  return PermutationSystem(std::move(map), WeightedSpace::uniform_probability(n),
                           "random:" + std::to_string(n) + "," + std::to_string(seed));
}

namespace {

template <typename Int>
Int parse_int(std::string_view text, const std::string& spec) {
  Int value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw ParseError("malformed system spec '" + spec + "'");
  }
  return value;
}

} // namespace

PermutationSystem parse_system_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw ParseError("malformed system spec '" + spec + "'");
  const std::string_view kind(spec.data(), colon);
  const std::string_view args(spec.data() + colon + 1, spec.size() - colon - 1);
  const auto comma = args.find(',');

  if (kind == "cyclic") {
    if (comma != std::string_view::npos) throw ParseError("cyclic takes one argument: '" + spec + "'");
    const auto n = parse_int<std::size_t>(args, spec);
    if (n == 0) throw ParseError("cyclic system needs N >= 1");
    return cyclic_system(n);
  }
  if (comma == std::string_view::npos) throw ParseError("malformed system spec '" + spec + "'");
  const auto first = args.substr(0, comma);
  const auto second = args.substr(comma + 1);
  if (kind == "rotation") {
    const auto q = parse_int<std::size_t>(first, spec);
    if (q == 0) throw ParseError("rotation system needs q >= 1");
    return rotation_system(q, parse_int<long>(second, spec));
  }
  if (kind == "random") {
    const auto n = parse_int<std::size_t>(first, spec);
    if (n == 0) throw ParseError("random system needs N >= 1");
    return random_permutation_system(n, parse_int<std::uint64_t>(second, spec));
  }
  throw ParseError("unknown system kind in '" + spec + "'");
}

SampledSequence orbit_trace(const PermutationSystem& system, const VectorField& field,
                            std::size_t x, long t_min, long t_max) {
  if (x >= system.n_atoms()) throw InvalidArgument("atom index out of range");
  if (t_min > 0 || t_max < 0) throw InvalidArgument("orbit window must contain t = 0");
  if (!(field.space() == *system.space())) throw InvalidArgument("field does not live on the system");
  const std::size_t width = static_cast<std::size_t>(t_max - t_min + 1);
  const std::size_t j_count = field.j_count();
  std::vector<double> values(j_count * width);
  for (std::size_t i = 0; i < width; ++i) {
    const std::size_t y = system.iterate(x, t_min + static_cast<long>(i));
    for (std::size_t j = 0; j < j_count; ++j) values[j * width + i] = field.at(j, y);
  }
  return SampledSequence(j_count, t_min, width, std::move(values));
}

} // namespace calderon
