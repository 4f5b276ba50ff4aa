#include <cmath>
#include <vector>

#include "doctest.h"

#include "bowlforge/numerics.hpp"

using namespace bowlforge::numerics;

TEST_CASE("bracket_increasing finds a sign change in both directions") {
  auto f = [](double x) { return x * x * x - 2.0; };
  auto up = bracket_increasing(f, 1e-3);
  REQUIRE(up);
  CHECK(up->lo < std::cbrt(2.0));
  CHECK(up->hi > std::cbrt(2.0));
  CHECK(up->f_lo <= 0.0);
  CHECK(up->f_hi >= 0.0);

  auto down = bracket_increasing(f, 1e3);
  REQUIRE(down);
  CHECK(down->lo <= std::cbrt(2.0));
  CHECK(down->hi >= std::cbrt(2.0));
}

TEST_CASE("bracket_increasing gives up outside its range") {
  auto never = [](double) { return -1.0; };
  CHECK_FALSE(bracket_increasing(never, 1.0));
  auto always = [](double) { return 1.0; };
  CHECK_FALSE(bracket_increasing(always, 1.0));
}

TEST_CASE("brent_root converges to machine precision") {
  auto f = [](double x) { return x * x * x - 2.0; };
  const auto br = bracket_increasing(f, 1.0);
  REQUIRE(br);
  CHECK(brent_root(f, *br) == doctest::Approx(std::cbrt(2.0)).epsilon(1e-15));

  auto g = [](double x) { return std::log(x) - 3.0; };
  const auto br2 = bracket_increasing(g, 1.0);
  REQUIRE(br2);
  CHECK(brent_root(g, *br2) == doctest::Approx(std::exp(3.0)).epsilon(1e-14));
}

TEST_CASE("brent_root returns exact endpoint zeros") {
  auto f = [](double x) { return x - 1.0; };
  CHECK(brent_root(f, Bracket{1.0, 2.0, 0.0, 1.0}) == 1.0);
}

TEST_CASE("extrapolate_limit recovers geometric approaches") {
  std::vector<double> seq;
  for (int k = 1; k <= 12; ++k) seq.push_back(3.0 + 0.7 * std::pow(0.1, k));
  const auto est = extrapolate_limit(seq);
  CHECK(est.stabilized);
  CHECK_FALSE(est.diverging);
  CHECK(est.value == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("extrapolate_limit handles slow power-law approaches") {
  // f(s) = 1 + sqrt(s) sampled at s = 10^-k: ratio 10^-1/2 per step
  std::vector<double> seq;
  for (int k = 1; k <= 12; ++k) seq.push_back(1.0 + std::sqrt(std::pow(10.0, -k)));
  const auto est = extrapolate_limit(seq);
  CHECK(est.value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("extrapolate_limit flags divergence") {
  std::vector<double> seq;
  for (int k = 1; k <= 12; ++k) seq.push_back(std::pow(10.0, k));
  const auto est = extrapolate_limit(seq);
  CHECK(est.diverging);
  CHECK(std::isinf(est.value));
}

TEST_CASE("fit_line is exact on lines and reports residuals") {
  const std::vector<double> xs{0, 1, 2, 3, 4};
  std::vector<double> ys;
  for (double x : xs) ys.push_back(2.5 * x - 1.0);
  const auto fit = fit_line(xs, ys);
  CHECK(fit.slope == doctest::Approx(2.5));
  CHECK(fit.intercept == doctest::Approx(-1.0));
  CHECK(fit.rms_residual < 1e-14);

  ys[2] += 1.0;
  CHECK(fit_line(xs, ys).rms_residual > 0.1);
}
