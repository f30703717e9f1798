#include "calderon/report_io.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cstdlib>

using namespace calderon;

TEST_CASE("doubles round-trip through their text form") {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const double v = (unit_double(rng) - 0.5) * std::pow(10.0, uniform_int(rng, -20, 20));
    CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(2.0) == "2");
}

TEST_CASE("infinite exponents serialize as a string") {
  CHECK(exponent_json(Exponent::infinity()) == "inf");
  CHECK(exponent_json(Exponent(1.5)) == 1.5);
}

TEST_CASE("csv rows use the fixed header and empty cells") {
  std::vector<CsvRow> rows;
  rows.push_back({0, 7u, 2.0, Exponent::infinity(), 3u, 1.25, 1.0, 1.5, true});
  rows.push_back({1, {}, {}, {}, {}, {}, {}, {}, false});
  CHECK(to_csv(rows) ==
        "trial,seed,p,r,J,ratio_line,ratio_sys,slack,pass\n"
        "0,7,2,inf,3,1.25,1,1.5,true\n"
        "1,,,,,,,,false\n");
}

TEST_CASE("certificate json carries every link") {
  const auto sys = cyclic_system(12);
  const auto f = calderon::testing::uniform_field(sys, 2, 1);
  const auto rep = weak_certificate(LineOperatorSpec::one_sided(3), sys, f, ExponentPair(1.0, 2.0), 0.2, 4);
  const auto j = to_json(rep);
  CHECK(j["kind"] == "weak");
  CHECK(j["links"].size() == rep.links.size());
  CHECK(j["lambda"] == 0.2);
  CHECK(j["pass"] == rep.passed());
  CHECK(j["links"][0]["relation"] == "<=");
}
