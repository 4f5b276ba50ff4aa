#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"

#include "bowlforge/error.hpp"
#include "bowlforge/speed.hpp"
#include "bowlforge/speed_expr.hpp"

using namespace bowlforge;

namespace {

double at(const std::string& src, std::vector<double> z) {
  return parse_speed(src, static_cast<int>(z.size())).evaluate(z);
}

std::size_t error_offset(const std::string& src, int dim) {
  try {
    parse_speed(src, dim);
  } catch (const ParseError& e) {
    return e.offset();
  } catch (const DimensionError& e) {
    return e.offset();
  }
  FAIL("no error for " << src);
  return 0;
}

}  // namespace

TEST_CASE("atoms") {
  const std::vector<double> z{1, 2, 3};
  CHECK(at("S1", z) == doctest::Approx(6));
  CHECK(at("S2", z) == doctest::Approx(11));
  CHECK(at("S3", z) == doctest::Approx(6));
  CHECK(at("K", z) == doctest::Approx(6));
  CHECK(at("H", z) == doctest::Approx(2));
  CHECK(at("n", z) == doctest::Approx(3));
}

TEST_CASE("precedence and associativity") {
  const std::vector<double> z{1, 2};  // S1 = 3, S2 = 2
  CHECK(at("S1 + S2 * 2", z) == doctest::Approx(7));
  CHECK(at("(S1 + S2) * 2", z) == doctest::Approx(10));
  CHECK(at("S1 - S2 - 0.5", z) == doctest::Approx(0.5));
  CHECK(at("S1 / S2 / 3", z) == doctest::Approx(0.5));
  CHECK(at("S1^2", z) == doctest::Approx(9));
  CHECK(at("2 - -S2", z) == doctest::Approx(4));
  CHECK(at("S1^(1/2)", z) == doctest::Approx(std::sqrt(3.0)));
  CHECK(at("S2^-1", z) == doctest::Approx(0.5));
  CHECK(at("S1^(n/4)", z) == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("unary minus binds looser than power") {
  CHECK(at("10 - S1^2 + 2*S1^2", {1, 2}) == doctest::Approx(19));
  CHECK_THROWS_AS(at("-S1^2", {1, 2}), DomainError);
}

TEST_CASE("positioned parse errors") {
  CHECK(error_offset("S1+", 2) == 3);
  CHECK(error_offset("S1 + * S2", 2) == 5);
  CHECK(error_offset("(S1", 2) == 3);
  CHECK(error_offset("S1 S2", 2) == 3);
  CHECK(error_offset("", 2) == 0);
  CHECK(error_offset("S1 + x", 2) == 5);
  CHECK(error_offset("S1^S2", 2) == 3);
  CHECK(error_offset("S1 + S3", 2) == 5);
}

TEST_CASE("parse errors list the expected tokens") {
  try {
    parse_speed("S1+", 2);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK_FALSE(e.expected().empty());
  }
}

TEST_CASE("dimension errors") {
  CHECK_THROWS_AS(parse_speed("S3", 2), DimensionError);
  CHECK_NOTHROW(parse_speed("S3", 3));
}

TEST_CASE("domain errors are raised, not returned") {
  CHECK_THROWS_AS(at("S1 - S1", {1, 2}), DomainError);
  CHECK_THROWS_AS(at("(S1 - 4)^(1/2)", {1, 2}), DomainError);
}

TEST_CASE("homogeneity is measured") {
  CHECK(measure_homogeneity(parse_speed("S1", 3)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(measure_homogeneity(parse_speed("S2/S1", 3)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(measure_homogeneity(parse_speed("K^(1/2)", 2)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(measure_homogeneity(parse_speed("S3", 3)) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK_THROWS_AS(measure_homogeneity(parse_speed("S1 + S2", 3)), NotHomogeneous);
  CHECK_THROWS_AS(measure_homogeneity(parse_speed("S1 - S2", 2)), AdmissibilityError);
}

TEST_CASE("expressions agree with hand-coded built-ins") {
  struct Pair {
    std::string source;
    SpeedFunction builtin;
  };
  const int n = 3;
  const std::vector<Pair> pairs{
      {"S1", speeds::mean_curvature(n)},
      {"K/S2", speeds::harmonic_mean(n)},
      {"(2*S2)^(1/2)", speeds::scalar_curvature(n)},
      {"K^(2/3)", speeds::gauss_power(n, 2.0)},
      {"(S1*K)^(1/4)", SpeedFunction("oracle", n, 1.0, [](std::span<const double> z) {
         return std::pow((z[0] + z[1] + z[2]) * z[0] * z[1] * z[2], 0.25);
       })},
  };
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> logu(-2.0, 2.0);
  for (const auto& [src, builtin] : pairs) {
    CAPTURE(src);
    const SpeedFunction f = to_speed_function(parse_speed(src, n));
    CHECK(f.alpha() == doctest::Approx(builtin.alpha()).epsilon(1e-10));
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      std::vector<double> z(n);
      for (double& zi : z) zi = std::pow(10.0, logu(rng));
      worst = std::max(worst, std::abs(f.evaluate(z) / builtin.evaluate(z) - 1.0));
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("to_string renders a fully parenthesized tree") {
  const auto e = parse_speed("S1 + S2 * 2", 2);
  const auto again = parse_speed(e.to_string(), 2);
  const std::vector<double> z{0.3, 1.7};
  CHECK(again.evaluate(z) == doctest::Approx(e.evaluate(z)));
}
