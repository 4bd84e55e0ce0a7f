#include <doctest.h>

#include <cmath>

#include "excesslab/errors.hpp"
#include "excesslab/extremal.hpp"
#include "excesslab/generate.hpp"
#include "excesslab/rng.hpp"

using namespace excesslab;

TEST_CASE("moment specs") {
  const Exponents e = make_exponents(1.5, 1);
  CHECK(make_moment_spec(1, 2, 1, 2, e).feasible());
  CHECK_FALSE(make_moment_spec(2, 1, 1, 2, e).feasible());
  CHECK_THROWS_AS(make_moment_spec(0, 1, 1, 1, e), DomainError);
  CHECK_THROWS_AS(make_moment_spec(1, 1, 1, std::nan(""), e), DomainError);
}

TEST_CASE("compactification identity") {
  Rng rng(31);
  for (int i = 0; i < 300; ++i) {
    const JointDistribution d = random_joint(rng, {});
    const Exponents e = make_exponents(rng.uniform(1.05, 3.0), 1.0);
    double mx = 0, my = 0;
    for (const Atom& a : d.atoms()) {
      mx += a.x * a.w;
      my += a.y * a.w;
    }
    if (mx == 0.0 || my == 0.0) {
      CHECK_THROWS_AS(compactify(d, e), DomainError);
      continue;
    }
    const Compactified c = compactify(d, e);
    const double dp = delta(d, e);
    CHECK(std::abs(objective_tilde(c.point, c.spec, e) - dp) <=
          1e-10 * std::max(1.0, std::abs(dp)) * 10);
    CHECK(feasibility_residual(c.point, c.spec, e) <= 1e-12);
    const MassExtraction ex = extract_mass_at_infinity(c.point, e);
    CHECK(ex.mass.a == 0.0);
    CHECK(ex.mass.b == 0.0);
    CHECK(same_distribution(ex.dist, d, 1e-12 * 10 * 10));
  }
}

TEST_CASE("mass at infinity") {
  const Exponents e = make_exponents(2.0, 1.0);
  CompactifiedPoint pt{{0.5, 0.2}, {0.5, 0.1}, {1.0, 0.0}};
  const MassExtraction ex = extract_mass_at_infinity(pt, e);
  CHECK(ex.mass.b == doctest::Approx(0.2));
  CHECK(ex.mass.c == doctest::Approx(0.1));
  CHECK(ex.mass.a == doctest::Approx(std::sqrt(0.02)));
  CHECK(ex.indices == std::vector<std::size_t>{0});
  CHECK(ex.mass.a <= std::sqrt(ex.mass.b * ex.mass.c) + 1e-12);
  // identity between the compactified objective and the perturbed gap
  Rng rng(41);
  for (int i = 0; i < 200; ++i) {
    const double p = rng.uniform(1.1, 2.5);
    const Exponents ep = make_exponents(p, 1.0);
    CompactifiedPoint q;
    double sw = 0.0;
    for (int k = 0; k < 5; ++k) {
      q.u.push_back(rng.uniform(0.0, 2.0));
      q.v.push_back(rng.uniform(0.0, 2.0));
      q.w.push_back(k < 2 ? 0.0 : rng.uniform(0.1, 1.0));
      sw += q.w.back();
    }
    for (double& w : q.w) w /= sw;
    const MassExtraction m = extract_mass_at_infinity(q, ep);
    const double lhs = objective_tilde_intrinsic(q, ep);
    const double rhs = delta_abc(m.dist, ep, m.mass);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)));
    CHECK(m.mass.a <= std::pow(m.mass.b, 1 / ep.q()) * std::pow(m.mass.c, 1 / p) + 1e-12);
    CHECK(lhs <= delta(m.dist, ep) + 1e-9);
  }
}

TEST_CASE("Lagrange residuals") {
  const Exponents e = make_exponents(1.5, 1.0);
  // X constant pre-image: lambda, tau matched, others zero
  const double x = 2.0;
  CompactifiedPoint pt{{std::pow(x, 1.5) * 0.4, std::pow(x, 1.5) * 0.6},
                       {0.4, 0.6 * std::pow(3.0, 1.5)},
                       {0.4, 0.6}};
  LagrangeMultipliers m;
  m.lambda = 1.0;
  m.nu = -std::pow(x, -0.5);
  m.tau = -std::pow(std::pow(x, 1.5), 1.0 / 1.5);
  const LagrangeResiduals r = lagrange_residuals(pt, m, e);
  CHECK(r.max_abs() <= 1e-12);
  CHECK(r.eq1.size() == 2);
  CHECK_THROWS_AS(lagrange_residuals(pt, LagrangeMultipliers{}, e), DomainError);
  // multiplied forms below the singularity guard
  CompactifiedPoint tiny{{1e-14, 1.0}, {1.0, 1.0}, {0.5, 0.5}};
  const LagrangeResiduals rt = lagrange_residuals(tiny, m, e);
  CHECK(rt.eq1[0].multiplied);
  CHECK_FALSE(rt.eq1[1].multiplied);
}

TEST_CASE("maximize stays nonpositive below p = 2 and finds gains beyond") {
  Rng rng(51);
  for (int i = 0; i < 4; ++i) {
    const JointDistribution d = random_joint(rng, {4, 10.0, 0.0});
    const Exponents e = make_exponents(1.5, 1.0);
    const Compactified c = compactify(d, e);
    const MaximizeResult r = maximize(c.spec, e, {4, 16, 7, 1});
    REQUIRE(r.feasible);
    CHECK(r.value <= 1e-6);
    CHECK(r.value >= delta(d, e) - 1e-6);
    CHECK(r.feasibility_residual <= 1e-8);
    CHECK(r.multipliers.scaled_residual <= 1e-4);
  }
  const Exponents e3 = make_exponents(3.0, 1.0);
  const JointDistribution shift = make_joint({{0, 0.1, 0.5}, {1, 1.1, 0.5}});
  const MaximizeResult r3 = maximize(compactify(shift, e3).spec, e3, {6, 16, 0, 1});
  CHECK(r3.value > 0.0);
}

TEST_CASE("maximize determinism and monotone restarts") {
  const Exponents e = make_exponents(1.25, 1.0);
  const MomentSpec s = make_moment_spec(1.0, 1.6, 2.0, 3.5, e);
  const MaximizeResult a = maximize(s, e, {5, 8, 3, 1});
  const MaximizeResult b = maximize(s, e, {5, 8, 3, 2});
  const MaximizeResult c = maximize(s, e, {5, 12, 3, 1});
  CHECK(a.value == b.value);
  CHECK(a.point.u == b.point.u);
  CHECK(c.value >= a.value);
}

TEST_CASE("maximize infeasible spec and small supports") {
  const Exponents e = make_exponents(1.5, 1.0);
  const MaximizeResult r = maximize(make_moment_spec(2.0, 1.0, 1.0, 2.0, e), e);
  CHECK_FALSE(r.feasible);
  CHECK(std::isinf(r.value));
  const MaximizeResult small = maximize(make_moment_spec(1.0, 1.5, 1.0, 1.3, e), e, {2, 8, 0, 1});
  REQUIRE(small.feasible);
  CHECK(small.restarts.front().derivative_free);
  CHECK(small.value <= 1e-6);
  CHECK(small.feasibility_residual <= 1e-8);
  CHECK_THROWS_AS(maximize(make_moment_spec(1.0, 1.5, 1.0, 1.3, e), e, {1, 8, 0, 1}),
                  DomainError);
}

TEST_CASE("multiplier fit at optimizer output") {
  const Exponents e = make_exponents(1.5, 1.0);
  const MomentSpec s = make_moment_spec(1.0, 1.4, 1.0, 2.2, e);
  const MaximizeResult r = maximize(s, e, {6, 16, 1, 1});
  REQUIRE(r.feasible);
  const MultiplierFit f = fit_multipliers(r.point, e);
  CHECK(f.scaled_residual <= 1e-5);
  CHECK(f.multipliers.max_abs() == doctest::Approx(1.0));
}

TEST_CASE("degenerate classification") {
  const Exponents e = make_exponents(1.5, 1.0);
  // Subcase 1.1: x^{p-1} y == 0
  CompactifiedPoint a{{1.0, 0.0}, {0.0, 1.0}, {0.5, 0.5}};
  LagrangeMultipliers m1;
  m1.alpha = 1.0;
  m1.lambda = 0.3;
  const DegenerateClassification c1 = classify_degenerate(a, m1, e);
  CHECK(c1.which == DegenerateCase::zero_mixed_moment);
  CHECK(c1.verified);
  CHECK(*c1.delta <= 1e-12);
  // Subcase 2.1: Y = 2X
  CompactifiedPoint b;
  for (double x : {0.5, 1.0, 3.0}) {
    b.u.push_back(std::pow(x, 1.5) / 3);
    b.v.push_back(std::pow(2 * x, 1.5) / 3);
    b.w.push_back(1.0 / 3);
  }
  LagrangeMultipliers m2;
  m2.rho = 1.0;
  m2.nu = 0.5;
  m2.alpha = 0.2;
  const DegenerateClassification c2 = classify_degenerate(b, m2, e);
  CHECK(c2.which == DegenerateCase::y_proportional);
  CHECK(c2.proportionality == doctest::Approx(2.0));
  CHECK(c2.verified);
  CHECK(std::abs(*c2.delta) <= 1e-12);
  // 1.2.2a and 2.2: X constant
  CompactifiedPoint cst{{0.5, 0.5}, {0.1, 2.0}, {0.5, 0.5}};
  LagrangeMultipliers m3;
  m3.lambda = 1.0;
  CHECK(classify_degenerate(cst, m3, e).which == DegenerateCase::x_constant_lambda);
  CHECK(classify_degenerate(cst, m3, e).verified);
  m3.rho = 1.0;
  CHECK(classify_degenerate(cst, m3, e).which == DegenerateCase::x_constant_rho);
  // 1.2.2b: X = 0
  CompactifiedPoint zx{{0.0, 0.0}, {0.1, 2.0}, {0.5, 0.5}};
  LagrangeMultipliers m4;
  m4.nu = 1.0;
  CHECK(classify_degenerate(zx, m4, e).which == DegenerateCase::x_zero);
  CHECK(classify_degenerate(zx, m4, e).verified);
  // 1.2.1: only tau survives
  LagrangeMultipliers m5;
  m5.tau = 1.0;
  CHECK(classify_degenerate(zx, m5, e).which == DegenerateCase::contradiction);
  // rejections
  CHECK_THROWS_AS(classify_degenerate(zx, LagrangeMultipliers{}, e), DomainError);
  LagrangeMultipliers mu;
  mu.mu = 1.0;
  CHECK_THROWS_AS(classify_degenerate(zx, mu, e), DomainError);
}

TEST_CASE("maximize seeds specs that need a light atom") {
  const Exponents e = make_exponents(1.25, 1.0);
  const MaximizeResult r = maximize(make_moment_spec(1, 7.5, 1, 6.9, e), e, {6, 4, 0, 1});
  REQUIRE(r.feasible);
  CHECK(r.feasibility_residual <= 1e-8);
  CHECK(r.value <= 1e-6);
}
