#include <cmath>
#include <limits>

#include "doctest.h"

#include "bowlforge/constraint.hpp"
#include "bowlforge/error.hpp"
#include "bowlforge/profile.hpp"
#include "bowlforge/speed.hpp"
#include "bowlforge/translator_ode.hpp"

using namespace bowlforge;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Profile with no dense output, so u comes from the corrected trapezoid rule.
ProfileSolution hand_built(double (*v)(double), double (*vp)(double), double r0, double r1, int n) {
  ProfileSolution p;
  p.tip_slope = kNaN;
  p.status.kind = Termination::ReachedHorizon;
  for (int i = 0; i <= n; ++i) {
    const double r = r0 + (r1 - r0) * i / n;
    p.samples.push_back({r, v(r), vp(r)});
  }
  return p;
}

IntegrationConfig horizon(double r_max) {
  IntegrationConfig c;
  c.r_max = r_max;
  c.check_start_halving = false;
  return c;
}

}  // namespace

TEST_CASE("principal curvatures of a graph") {
  const auto [k1, krot] = curvatures(1.0, 1.0, 1.0);
  CHECK(k1 == doctest::Approx(std::pow(2.0, -1.5)));
  CHECK(krot == doctest::Approx(1.0 / std::sqrt(2.0)));
  const auto [a, b] = curvatures(2.0, 0.0, 3.0);
  CHECK(a == doctest::Approx(3.0));
  CHECK(b == 0.0);
  CHECK_THROWS_AS(curvatures(0.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("residual is the defect of the translator equation") {
  const SpeedFunction f = speeds::mean_curvature(2);
  const double r = 1.5, v = 0.8, vp = 0.4;
  const double w = 1.0 + v * v;
  const double expected = std::abs(vp / std::pow(w, 1.5) + v / (r * std::sqrt(w)) - 1.0 / std::sqrt(w));
  CHECK(residual(f, r, v, vp) == doctest::Approx(expected).epsilon(1e-14));
  CHECK_THROWS_AS(residual(f, r, v, -1.0), DomainError);

  // an exact solution point perturbed in v' by 0.1 kappa_1 (1+v^2)^(3/2)
  const ConstraintContext ctx(f);
  const double vp0 = rhs(ctx, r, v);
  CHECK(residual(f, r, v, vp0) < 1e-14);
  const double k1 = curvatures(r, v, vp0).first;
  CHECK(residual(f, r, v, 1.1 * vp0) == doctest::Approx(0.1 * k1).epsilon(1e-12));
}

TEST_CASE("u from hand-built profiles starting at the origin") {
  SUBCASE("v = r gives u = r^2 / 2") {
    const auto p = hand_built([](double r) { return r; }, [](double) { return 1.0; }, 0.0, 3.0, 30);
    const BowlProfile bowl = recover_u(p);
    CHECK(bowl.samples.front().u == 0.0);
    CHECK(bowl.samples.front().kappa_rot == 1.0);
    for (const auto& s : bowl.samples) CHECK(s.u == doctest::Approx(0.5 * s.r * s.r).epsilon(1e-13));
    CHECK(std::isnan(bowl.samples.back().residual));
  }
  SUBCASE("constant v gives a cone") {
    const auto p = hand_built([](double) { return 2.0; }, [](double) { return 0.0; }, 0.0, 1.0, 10);
    const BowlProfile bowl = recover_u(p);
    CHECK(bowl.samples.back().u == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(std::isinf(bowl.samples.front().kappa_rot));
  }
  SUBCASE("cubic v is integrated exactly by the corrected trapezoid rule") {
    const auto p = hand_built([](double r) { return r * r * r; }, [](double r) { return 3.0 * r * r; }, 0.0, 2.0, 7);
    CHECK(recover_u(p).samples.back().u == doctest::Approx(4.0).epsilon(1e-13));
  }
}

TEST_CASE("u of a mean-curvature bowl agrees with a tighter run") {
  const SpeedFunction f = speeds::mean_curvature(2);
  IntegrationConfig loose = horizon(10.0);
  IntegrationConfig tight = loose;
  tight.rel_tol /= 10;
  tight.abs_tol /= 10;
  const BowlProfile a = recover_u(integrate(f, loose), f);
  const BowlProfile b = recover_u(integrate(f, tight), f);
  const double ua = a.samples.back().u, ub = b.samples.back().u;
  CHECK(ua / 50.0 >= 0.9);
  CHECK(ua / 50.0 <= 1.0);
  CHECK(ua == doctest::Approx(ub).epsilon(1e-8));
  for (const auto& s : a.samples) CHECK(s.residual < 1e-10);
}

TEST_CASE("asymptotic fits for nondegenerate speeds") {
  SUBCASE("mean, n=3") {
    const SpeedFunction f = speeds::mean_curvature(3);
    const BowlProfile bowl = recover_u(integrate(f, horizon(1e3)), f);
    const AsymptoticFit fit = fit_asymptotics(bowl, compute_invariants(f));
    CHECK(fit.expected_exponent == 2.0);
    CHECK(fit.expected_constant == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(fit.exponent == doctest::Approx(2.0).epsilon(1e-2));
    CHECK(fit.constant == doctest::Approx(0.25).epsilon(1e-2));
  }
  SUBCASE("scalar, n=3") {
    const SpeedFunction f = speeds::scalar_curvature(3);
    const BowlProfile bowl = recover_u(integrate(f, horizon(1e3)), f);
    const AsymptoticFit fit = fit_asymptotics(bowl, compute_invariants(f));
    CHECK(fit.exponent == doctest::Approx(2.0).epsilon(1e-2));
    CHECK(fit.constant == doctest::Approx(1.0 / (2.0 * std::sqrt(2.0))).epsilon(1e-2));
  }
}

TEST_CASE("asymptotic fit refuses what it cannot do") {
  const SpeedFunction g = speeds::gauss_power(3, 0.75);
  const BowlProfile bowl = recover_u(integrate(g, horizon(1e3)), g);
  CHECK_THROWS_AS(fit_asymptotics(bowl, compute_invariants(g)), NotApplicable);

  const SpeedFunction f = speeds::mean_curvature(2);
  const BowlProfile shortrun = recover_u(integrate(f, horizon(10.0)), f);
  CHECK_THROWS_AS(fit_asymptotics(shortrun, compute_invariants(f)), NotApplicable);
}

TEST_CASE("convexity") {
  const SpeedFunction f = speeds::mean_curvature(2);
  const ProfileSolution sol = integrate(f, horizon(20.0));
  const ConvexityReport ok = check_convexity(recover_u(sol, f));
  CHECK(ok.passed);
  CHECK_FALSE(ok.witness);
  CHECK(ok.min_vprime > 0.0);
  // near the tip v/r is essentially gamma
  CHECK(ok.min_v_over_r >= 0.5 * (1.0 - 1e-6));

  auto bad = hand_built([](double r) { return std::sin(r); }, [](double r) { return std::cos(r); }, 0.5, 3.0, 25);
  const ConvexityReport fail = check_convexity(recover_u(bad));
  CHECK_FALSE(fail.passed);
  REQUIRE(fail.witness);
  CHECK(bad.samples[*fail.witness].v_prime <= 0.0);
  CHECK(bad.samples[*fail.witness - 1].v_prime > 0.0);
}

TEST_CASE("barriers and tip curvature") {
  const ConstraintContext ctx(speeds::scalar_curvature(3));
  const ProfileSolution sol = integrate(ctx, horizon(30.0));
  const BarrierReport rep = check_barriers(ctx, sol);
  CHECK(rep.sub_passed);
  CHECK(rep.super_passed);
  CHECK(rep.min_sub_margin >= -1e-12);
  REQUIRE(rep.max_super_excess);
  CHECK(*rep.max_super_excess < 0.0);
  CHECK(tip_curvature_deviation(ctx, sol) < 1e-4);

  ProfileSolution dented = sol;
  dented.samples[1].v *= 0.9;  // near the tip v is close to w_gamma
  const BarrierReport broken = check_barriers(ctx, dented);
  CHECK_FALSE(broken.sub_passed);
  CHECK(*broken.sub_witness == 1);
}
