#include "calderon/errors.hpp"
#include "calderon/function_spaces.hpp"
#include "calderon/random.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <memory>

using namespace calderon;

namespace {

std::shared_ptr<const WeightedSpace> uniform(std::size_t n) {
  return std::make_shared<const WeightedSpace>(WeightedSpace::uniform_probability(n));
}

const std::vector<Exponent> kExponents = {Exponent(1.0), Exponent(1.5), Exponent(2.0),
                                          Exponent(4.0), Exponent::infinity()};

} // namespace

TEST_CASE("exponents reject values below one") {
  CHECK_THROWS_AS(Exponent(0.5), InvalidArgument);
  CHECK_THROWS_AS(Exponent(std::nan("")), InvalidArgument);
  CHECK(Exponent(std::numeric_limits<double>::infinity()).is_infinite());
  CHECK(Exponent::infinity() == Exponent(std::numeric_limits<double>::infinity()));
  CHECK_THROWS_AS(ExponentPair(std::numeric_limits<double>::infinity(), 2.0), InvalidArgument);
  CHECK_THROWS_AS(ExponentPair(0.99, 2.0), InvalidArgument);
  CHECK(ExponentPair(1.0, Exponent::infinity()).r().is_infinite());
  CHECK(parse_exponent("inf").is_infinite());
  CHECK(parse_exponent("1.5").value() == 1.5);
  CHECK_THROWS_AS(parse_exponent("2x"), ParseError);
  CHECK(Exponent(1.5).to_string() == "1.5");
}

TEST_CASE("weighted spaces and fields validate their invariants") {
  CHECK_THROWS_AS(WeightedSpace({0.5, 0.0}), InvalidArgument);
  CHECK_THROWS_AS(WeightedSpace({}), InvalidArgument);
  const auto space = WeightedSpace::uniform_probability(4);
  CHECK(space.weight(2) == 0.25);
  CHECK(space.total_measure() == 1.0);

  CHECK_THROWS_AS(VectorField(uniform(2), 0, {}), InvalidArgument);
  CHECK_THROWS_AS(VectorField(uniform(2), 1, {1.0, std::nan("")}), InvalidArgument);
  CHECK_THROWS_AS(VectorField(uniform(2), 1, {1.0}), InvalidArgument);
  CHECK_THROWS_AS(SampledSequence(1, 0, 0, {}), InvalidArgument);
  CHECK_THROWS_AS(SampledSequence(1, 0, 1, {std::numeric_limits<double>::infinity()}),
                  InvalidArgument);

  const SampledSequence seq(2, -1, 3, {1, 2, 3, 4, 5, 6});
  CHECK(seq.at(0, -1) == 1);
  CHECK(seq.at(1, 1) == 6);
  CHECK_THROWS_AS(static_cast<void>(seq.at(0, 2)), InvalidArgument);
}

TEST_CASE("lr norm examples") {
  for (const auto& r : kExponents) {
    CHECK(lr_norm(std::vector<double>{-3.0}, r) == 3.0);
  }
  CHECK(lr_norm(std::vector<double>{3.0, 4.0, 0.0, 0.0}, Exponent(2.0)) == 5.0);
  CHECK(lr_norm(std::vector<double>(8, 1.0), Exponent::infinity()) == 1.0);
  CHECK(lr_norm(std::vector<double>{0.0, 0.0}, Exponent(3.0)) == 0.0);

  const VectorField f(uniform(2), 2, {3.0, -1.0, 4.0, 0.0});
  const auto norms = lr_norm_pointwise(f, Exponent(2.0));
  CHECK(norms[0] == 5.0);
  CHECK(norms[1] == 1.0);
}

TEST_CASE("lp norm examples") {
  const auto space = WeightedSpace::uniform_probability(5);
  const std::vector<double> twos(5, 2.0);
  for (double p : {1.0, 1.5, 2.0, 3.0, 7.0}) {
    CHECK(lp_norm(twos, space, p) == doctest::Approx(2.0).epsilon(1e-12));
  }
  CHECK(lp_norm(std::vector<double>{0.0, 1.0, 0.0}, 1.0) == 1.0);
  CHECK(lp_norm(std::vector<double>{1.0, 2.0}, WeightedSpace({0.5, 0.5}), 2.0) ==
        doctest::Approx(std::sqrt(2.5)).epsilon(1e-12));
}

TEST_CASE("distribution measure uses a strict level set") {
  const auto space = WeightedSpace::uniform_probability(3);
  CHECK(distribution_measure(std::vector<double>(3, 0.7), 0.7, space) == 0.0);
  CHECK(distribution_measure(std::vector<double>{0.1, 0.5, 0.9}, 0.4, space) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(distribution_measure(std::vector<double>(3, 0.7), 0.2, space) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(distribution_measure(std::vector<double>(3, 0.7), 0.0, space), InvalidArgument);
  CHECK(distribution_measure(std::vector<double>{0.5, 2.0, 3.0}, 1.0) == 2.0);
}

TEST_CASE("weak ratio examples") {
  const auto space = uniform(10);
  std::vector<double> indicator(10, 0.0);
  indicator[3] = 1.0;
  const VectorField input(space, 1, indicator);
  const ExponentPair pr(1.0, 2.0);

  CHECK(weak_ratio(VectorField::zeros(space, 1), input, pr, 0.5) == 0.0);
  // 0.5 * mu{1 > 0.5} / 0.1 = 0.5 * 0.1 / 0.1
  CHECK(weak_ratio(input, input, pr, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
  // lambda^p mu{...} / integral, at lambda -> 1^- the ratio tends to 1.
  CHECK(weak_ratio(input, input, pr, 1.0 - 1e-12) == doctest::Approx(1.0).epsilon(1e-11));
  CHECK(weak_ratio(input, input, pr, 1.0) == 0.0);
  CHECK(weak_ratio(input, input, pr, 7.0) == 0.0);
  CHECK_THROWS_AS(weak_ratio(input, VectorField::zeros(space, 1), pr, 0.5), DegenerateInput);
  CHECK_THROWS_AS(weak_ratio(input, VectorField::zeros(uniform(3), 1), pr, 0.5), InvalidArgument);
}

TEST_CASE("property: pointwise lr norms are monotone, subadditive and nonincreasing in r") {
  Rng rng(20240611);
  for (int trial = 0; trial < 500; ++trial) {
    const auto j = static_cast<std::size_t>(uniform_int(rng, 1, 12));
    std::vector<double> f(j), g(j), bigger(j), sum(j);
    for (std::size_t k = 0; k < j; ++k) {
      f[k] = 4.0 * unit_double(rng) - 2.0;
      g[k] = 4.0 * unit_double(rng) - 2.0;
      bigger[k] = (std::fabs(f[k]) + unit_double(rng)) * (unit_double(rng) < 0.5 ? -1 : 1);
      sum[k] = f[k] + g[k];
    }
    double previous = std::numeric_limits<double>::infinity();
    for (const auto& r : kExponents) {
      const double nf = lr_norm(f, r);
      CHECK(nf >= 0.0);
      CHECK(nf <= lr_norm(bigger, r) * (1 + 1e-12));
      CHECK(lr_norm(sum, r) <= (nf + lr_norm(g, r)) * (1 + 1e-12) + 1e-12);
      CHECK(nf <= previous * (1 + 1e-12));
      previous = nf;
    }
  }
}

TEST_CASE("property: lp norm vanishes exactly on the zero function") {
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<std::size_t>(uniform_int(rng, 1, 20));
    std::vector<double> weights(n), g(n, 0.0);
    for (double& w : weights) w = 0.1 + unit_double(rng);
    const WeightedSpace space(weights);
    const double p = 1.0 + 3.0 * unit_double(rng);
    CHECK(lp_norm(g, space, p) == 0.0);
    g[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(n) - 1))] = 1e-3;
    CHECK(lp_norm(g, space, p) > 0.0);
  }
}

TEST_CASE("property: distribution measure is nonincreasing and right-continuous") {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> g(16);
    for (double& v : g) v = static_cast<double>(uniform_int(rng, 0, 8)) / 4.0;
    const auto space = WeightedSpace::uniform_probability(g.size());
    double previous = 2.0;
    for (int k = 1; k <= 40; ++k) {
      const double lambda = k / 16.0;
      const double m = distribution_measure(g, lambda, space);
      CHECK(m <= previous);
      previous = m;
      // Values sit on a grid of 1/4, so lambda + 1/64 lies before the next jump.
      CHECK(distribution_measure(g, lambda + 1.0 / 64.0, space) == m);
    }
  }
}
