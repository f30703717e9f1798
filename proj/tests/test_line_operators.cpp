#include "calderon/errors.hpp"
#include "calderon/line_operators.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace calderon;
using calderon::testing::delta_sequence;
using calderon::testing::random_sequence;

namespace {

// Brute-force oracles: every average is summed from scratch over its interval.
double interval_average(std::span<const double> v, long lo, long hi) {
  double s = 0.0;
  for (long i = lo; i <= hi; ++i) s += std::fabs(v[static_cast<std::size_t>(i)]);
  return s / static_cast<double>(hi - lo + 1);
}

std::vector<double> naive_one_sided(std::span<const double> v, long n_max) {
  std::vector<double> out;
  for (long t = 0; t + n_max - 1 < static_cast<long>(v.size()); ++t) {
    double best = 0.0;
    for (long m = 1; m <= n_max; ++m) best = std::max(best, interval_average(v, t, t + m - 1));
    out.push_back(best);
  }
  return out;
}

std::vector<double> naive_uncentered(std::span<const double> v, long n_max) {
  std::vector<double> out;
  for (long t = n_max; t + n_max < static_cast<long>(v.size()); ++t) {
    double best = 0.0;
    for (long a = 0; a <= n_max; ++a) {
      for (long b = 0; b <= n_max; ++b) best = std::max(best, interval_average(v, t - a, t + b));
    }
    out.push_back(best);
  }
  return out;
}

std::vector<LineOperatorSpec> all_ops(std::size_t n) {
  return {LineOperatorSpec::average(n), LineOperatorSpec::one_sided(n), LineOperatorSpec::uncentered(n)};
}

} // namespace

TEST_CASE("operator specs") {
  CHECK(LineOperatorSpec::average(3).semilocal_radius() == 2);
  CHECK(LineOperatorSpec::one_sided(8).semilocal_radius() == 7);
  CHECK(LineOperatorSpec::uncentered(8).semilocal_radius() == 8);
  CHECK(parse_operator_spec("osmax:8") == LineOperatorSpec::one_sided(8));
  CHECK(parse_operator_spec("hl:2") == LineOperatorSpec::uncentered(2));
  CHECK(parse_operator_spec("avg:1") == LineOperatorSpec::average(1));
  CHECK(parse_operator_spec("hl:5").to_string() == "hl:5");
  for (const char* bad : {"osmax:", "osmax:0", "hl", "max:3", "avg:-1", "avg:2.5"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_operator_spec(bad), ParseError);
  }
  CHECK_THROWS_AS(LineOperatorSpec::one_sided(0), InvalidArgument);
}

TEST_CASE("one-sided averages") {
  const SampledSequence seq(1, -2, 4, {-1.0, 2.0, -0.5, 0.0});
  const auto id = one_sided_average(seq, 1);
  CHECK(id.offset() == -2);
  CHECK(id.width() == 4);
  CHECK(id.at(0, -2) == 1.0);
  CHECK(id.at(0, 0) == 0.5);

  const auto avg = one_sided_average(delta_sequence(-5, 5), 3);
  CHECK(avg.t_min() == -5);
  CHECK(avg.t_max() == 3);
  for (long t = -5; t <= 3; ++t) CHECK(avg.at(0, t) == (t >= -2 && t <= 0 ? 1.0 / 3.0 : 0.0));

  const SampledSequence flat(1, 0, 6, std::vector<double>(6, 0.75));
  const auto out_values = one_sided_average(flat, 4);
  for (double v : out_values.values()) CHECK(v == 0.75);
  CHECK_THROWS_AS(one_sided_average(flat, 7), EmptyWindow);
}

TEST_CASE("one-sided maximal") {
  const auto out = one_sided_maximal(delta_sequence(-10, 10), 8);
  for (long d = 0; d <= 7; ++d) CHECK(out.at(0, -d) == 1.0 / static_cast<double>(d + 1));
  CHECK(out.at(0, -8) == 0.0);
  CHECK(out.at(0, 1) == 0.0);

  const SampledSequence flat(1, 0, 12, std::vector<double>(12, 0.25));
  const auto out_values = one_sided_maximal(flat, 5);
  for (double v : out_values.values()) CHECK(v == 0.25);
  CHECK_THROWS_AS(one_sided_maximal(flat, 13), EmptyWindow);
}

TEST_CASE("uncentered maximal") {
  const long n = 6;
  const auto out = uncentered_maximal(delta_sequence(-2 * n, 2 * n), n);
  CHECK(out.t_min() == -n);
  CHECK(out.t_max() == n);
  for (long t = -n; t <= n; ++t) CHECK(out.at(0, t) == 1.0 / static_cast<double>(std::labs(t) + 1));

  // Unit masses at 0 and 2: the interval [0, 2] averages 2/3 at t = 1.
  std::vector<double> two(9, 0.0);
  two[4] = 1.0;
  two[6] = 1.0;
  const auto pair = uncentered_maximal(SampledSequence(1, -4, 9, two), 2);
  CHECK(pair.at(0, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  const SampledSequence flat(1, 0, 12, std::vector<double>(12, 2.0));
  const auto out_values = uncentered_maximal(flat, 3);
  for (double v : out_values.values()) CHECK(v == 2.0);
  CHECK_THROWS_AS(uncentered_maximal(flat, 6), EmptyWindow);
}

TEST_CASE("componentwise application") {
  Rng rng(4);
  const auto scalar = random_sequence(1, 0, 30, rng);
  for (const auto& op : all_ops(4)) {
    const auto direct = op.kind() == LineOperatorKind::OneSidedAverage ? one_sided_average(scalar, 4)
                        : op.kind() == LineOperatorKind::OneSidedMaximal
                            ? one_sided_maximal(scalar, 4)
                            : uncentered_maximal(scalar, 4);
    const auto via = apply_componentwise(op, scalar);
    CHECK(std::equal(direct.values().begin(), direct.values().end(), via.values().begin()));

    std::vector<double> with_zero(scalar.values().begin(), scalar.values().end());
    with_zero.resize(60, 0.0);
    const auto out = apply_componentwise(op, SampledSequence(2, 0, 30, with_zero));
    CHECK(std::equal(out.component(0).begin(), out.component(0).end(), direct.values().begin()));
    for (double v : out.component(1)) CHECK(v == 0.0);

    std::vector<double> twice(scalar.values().begin(), scalar.values().end());
    twice.insert(twice.end(), scalar.values().begin(), scalar.values().end());
    const auto same = apply_componentwise(op, SampledSequence(2, 0, 30, twice));
    CHECK(std::equal(same.component(0).begin(), same.component(0).end(), same.component(1).begin()));
  }
}

TEST_CASE("axiom checker") {
  const auto report = check_operator_axioms(LineOperatorSpec::one_sided(4), 100, 1);
  CHECK(report.checked == 100);
  CHECK(report.passed());
  for (std::size_t n : {1u, 3u, 8u}) {
    for (const auto& op : all_ops(n)) CHECK(check_operator_axioms(op, 100, n).passed());
  }

  // The declared radius of the uncentered maximal operator is attained.
  for (long n : {1L, 4L, 8L}) {
    const auto out = uncentered_maximal(delta_sequence(-3 * n, 3 * n), static_cast<std::size_t>(n));
    for (long t = out.t_min(); t <= out.t_max(); ++t) CHECK((out.at(0, t) > 0.0) == (std::labs(t) <= n));
  }
  for (const auto& op : all_ops(5)) {
    const auto out_values = apply_componentwise(op, SampledSequence::zeros(2, -20, 40));
    for (double v : out_values.values()) CHECK(v == 0.0);
  }
}

TEST_CASE("property: production kernels match brute force on dyadic inputs") {
  Rng rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const auto n = static_cast<std::size_t>(uniform_int(rng, 1, 8));
    const auto width = static_cast<std::size_t>(uniform_int(rng, 2 * static_cast<long>(n) + 1, 64));
    const auto seq = random_sequence(1, uniform_int(rng, -30, 30), width, rng, true);
    const auto os = one_sided_maximal(seq, n);
    const auto os_oracle = naive_one_sided(seq.values(), static_cast<long>(n));
    REQUIRE(os.width() == os_oracle.size());
    CHECK(std::equal(os.values().begin(), os.values().end(), os_oracle.begin()));
    const auto hl = uncentered_maximal(seq, n);
    const auto hl_oracle = naive_uncentered(seq.values(), static_cast<long>(n));
    REQUIRE(hl.width() == hl_oracle.size());
    CHECK(std::equal(hl.values().begin(), hl.values().end(), hl_oracle.begin()));
  }
}

TEST_CASE("property: monotone, homogeneous, nested and ordered") {
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<std::size_t>(uniform_int(rng, 1, 8));
    const auto f = random_sequence(2, -20, 48, rng);
    std::vector<double> bigger(f.values().begin(), f.values().end());
    for (double& v : bigger) v = (std::fabs(v) + unit_double(rng)) * (unit_double(rng) < 0.5 ? -1.0 : 1.0);
    const SampledSequence g(2, -20, 48, bigger);
    const double c = 8.0 * unit_double(rng) - 4.0;

    for (const auto& op : all_ops(n)) {
      const auto tf = apply_componentwise(op, f);
      const auto tg = apply_componentwise(op, g);
      const auto tc = apply_componentwise(op, f.scaled(c));
      for (std::size_t i = 0; i < tf.values().size(); ++i) {
        CHECK(tf.values()[i] <= tg.values()[i] + 1e-12);
        CHECK(tc.values()[i] == doctest::Approx(std::fabs(c) * tf.values()[i]).epsilon(1e-12));
      }
    }

    const auto os = one_sided_maximal(f, n);
    const auto hl = uncentered_maximal(f, n);
    for (long t = hl.t_min(); t <= hl.t_max(); ++t) {
      for (std::size_t j = 0; j < 2; ++j) CHECK(os.at(j, t) <= hl.at(j, t));
    }
    const auto os_next = one_sided_maximal(f, n + 1);
    const auto hl_next = uncentered_maximal(f, n + 1);
    for (long t = os_next.t_min(); t <= os_next.t_max(); ++t) CHECK(os.at(0, t) <= os_next.at(0, t));
    for (long t = hl_next.t_min(); t <= hl_next.t_max(); ++t) CHECK(hl.at(1, t) <= hl_next.at(1, t));
  }
}
