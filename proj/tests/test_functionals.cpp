#include <doctest.h>

#include <cmath>

#include "excesslab/errors.hpp"
#include "excesslab/functionals.hpp"
#include "excesslab/generate.hpp"
#include "excesslab/rng.hpp"

using namespace excesslab;

namespace {
JointDistribution bern() { return make_joint({{0, 0, 0.5}, {1, 1, 0.5}}); }
// Fixed four-atom instance; reference values computed at 40 digits.
JointDistribution inst() {
  return make_joint({{0.3, 2, 0.25}, {1.7, 0.5, 0.25}, {4, 3, 0.3}, {0, 1, 0.2}});
}
}  // namespace

TEST_CASE("norms and moments") {
  CHECK(p_norm(bern(), Axis::X, 2.0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(p_norm(make_joint({{3, 1, 1}}), Axis::X, 3.7) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(p_norm(bern(), Axis::X, 1.0) == doctest::Approx(0.5));
  CHECK_THROWS_AS(p_norm(bern(), Axis::X, 0.5), DomainError);
  CHECK(moment(inst(), Axis::X, 0.0) == doctest::Approx(1.0));
  CHECK(std::isinf(moment(bern(), Axis::X, -1.0)));
  CHECK(moment(make_joint({{1, 0, 0.5}, {3, 0, 0.5}}), Axis::X, 2.0) == doctest::Approx(5.0));
}

TEST_CASE("excess") {
  const Exponents e0 = make_exponents(2.5, 0.0);
  CHECK(excess(inst(), Axis::X, e0) == doctest::Approx(p_norm(inst(), Axis::X, 2.5)));
  CHECK(excess(make_joint({{2.5, 1, 1}}), Axis::X, make_exponents(1.7, 1.0)) == 0.0);
  CHECK(excess(bern(), Axis::X, make_exponents(2.0, 1.0)) == doctest::Approx(0.5));
  const Exponents e = make_exponents(1.5, 0.7);
  CHECK(excess(inst(), Axis::X, e) == doctest::Approx(1.422767594446566050971).epsilon(1e-13));
  CHECK(excess(inst(), Axis::Y, e) == doctest::Approx(1.146407743110286221669).epsilon(1e-13));
}

TEST_CASE("cov_like and delta") {
  const JointDistribution d13 = make_joint({{1, 1, 0.5}, {3, 3, 0.5}});
  CHECK(cov_like(d13, make_exponents(2, 1)) == doctest::Approx(1.0));
  CHECK(cov_like(make_joint({{2, 2, 1}}), make_exponents(1.3, 1)) == doctest::Approx(0.0));
  CHECK(cov_like(bern(), make_exponents(1.5, 0)) == doctest::Approx(0.5));
  CHECK(std::abs(delta(d13, make_exponents(1.6, 1))) <= 1e-12);
  CHECK(std::abs(delta(bern(), make_exponents(1.5, 0))) <= 1e-12);
  const JointDistribution shift = make_joint({{0, 0.1, 0.5}, {1, 1.1, 0.5}});
  CHECK(delta(shift, make_exponents(3, 1)) ==
        doctest::Approx(0.0015030365565208298795).epsilon(1e-10));
  CHECK(delta(inst(), make_exponents(1.5, 0.7)) ==
        doctest::Approx(-0.4478187647257001135).epsilon(1e-12));
  CHECK(delta(inst(), make_exponents(3, 0.5)) ==
        doctest::Approx(-1.431030317159410921).epsilon(1e-12));
}

TEST_CASE("delta_abc") {
  const Exponents e = make_exponents(1.5, 1.0);
  CHECK(delta_abc(inst(), e, {}) == doctest::Approx(delta(inst(), e)).epsilon(1e-14));
  CHECK(delta_abc(inst(), e, {0.3, 0, 0}) == doctest::Approx(delta(inst(), e) + 0.3));
  CHECK(delta_abc(inst(), e, {0.1, 0.2, 0.3}) ==
        doctest::Approx(-0.6097055436916136661).epsilon(1e-12));
  // theta is ignored
  CHECK(delta_abc(inst(), e.with_theta(0.2), {0.1, 0.2, 0.3}) ==
        doctest::Approx(delta_abc(inst(), e, {0.1, 0.2, 0.3})));
  CHECK_THROWS_AS(delta_abc(inst(), e, {-0.1, 0, 0}), DomainError);
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const JointDistribution d = random_joint(rng, {});
    const double b = rng.uniform(0, 5), c = rng.uniform(0, 5);
    const double a1 = rng.uniform(0, 2), a2 = a1 + rng.uniform(0, 2);
    CHECK(delta_abc(d, e, {a1, b, c}) <= delta_abc(d, e, {a2, b, c}) + 1e-12);
  }
}

TEST_CASE("minkowski g and g'") {
  const Exponents e = make_exponents(1.5, 0.7);
  CHECK(minkowski_g(inst(), e, 0.0) == doctest::Approx(0.0));
  CHECK(minkowski_g(inst(), e, 1.0) ==
        doctest::Approx(-0.16333919978436506992).epsilon(1e-12));
  CHECK(*minkowski_g_prime(inst(), e, 0.5) ==
        doctest::Approx(-0.14177235958855355250).epsilon(1e-10));
  CHECK(*minkowski_g_prime(inst(), make_exponents(3, 0.5), 0.5) ==
        doctest::Approx(-0.13562115909385215703).epsilon(1e-10));
  CHECK(minkowski_g(bern(), make_exponents(1.5, 1), 1.0) <= 1e-12);
  CHECK_THROWS_AS(minkowski_g(inst(), e, -1.0), DomainError);
  // Y = X at theta = 1: derivative vanishes
  const JointDistribution xx = make_joint({{1, 1, 0.3}, {2, 2, 0.7}});
  CHECK(std::abs(*minkowski_g_prime(xx, make_exponents(1.7, 1), 0.0)) <= 1e-12);
  // degenerate: excess of a point mass is 0
  CHECK_FALSE(minkowski_g_prime(make_joint({{2, 2, 1}}), make_exponents(1.5, 1), 0.0));
}

TEST_CASE("classical and structural properties on random instances") {
  Rng rng(99);
  for (int i = 0; i < 300; ++i) {
    const JointDistribution d = random_joint(rng, {});
    const double p = rng.uniform(1.01, 2.0);
    const double t = rng.uniform(0.0, 3.0);
    CHECK(minkowski_g(d, make_exponents(p, 0.0), t) <= 1e-9 * (1 + t) * 10);
    CHECK(delta(d, make_exponents(2.0, 1.0)) <= 1e-9 * 100);
    const double c = rng.uniform(0.1, 3.0);
    const Exponents e1 = make_exponents(p, 1.0);
    const double base = delta(d, e1);
    CHECK(delta(d.scaled(c, c), e1) ==
          doctest::Approx(std::pow(c, p) * base).epsilon(1e-9).scale(100));
    const Exponents et = make_exponents(p, rng.uniform(0, 1));
    CHECK(minkowski_g(d.scaled(c, c), et, t) ==
          doctest::Approx(c * minkowski_g(d, et, t)).epsilon(1e-9).scale(10));
  }
}

TEST_CASE("gap reports") {
  const GapReport r = make_gap_report("x", 1.0, 1.0 + 1e-10);
  CHECK(r.holds);
  CHECK(r.tol == doctest::Approx(1e-9 * (1.0 + 1e-10)));
  CHECK_FALSE(make_gap_report("x", 2.0, 1.0).holds);
  CHECK(make_identity_report("i", 1.0, 1.0 + 1e-12, std::nullopt, 1e-11).holds);
  CHECK_FALSE(make_identity_report("i", 1.0, 1.1, std::nullopt, 1e-11).holds);
}
