#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "excesslab/core.hpp"
#include "excesslab/errors.hpp"
#include "excesslab/generate.hpp"
#include "excesslab/rng.hpp"

using namespace excesslab;

TEST_CASE("make_exponents computes the conjugate") {
  CHECK(make_exponents(2.0, 1.0).q() == doctest::Approx(2.0));
  CHECK(make_exponents(1.5, 0.0).q() == doctest::Approx(3.0));
  CHECK_THROWS_AS(make_exponents(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(make_exponents(0.5, 0.5), DomainError);
  CHECK_THROWS_AS(make_exponents(2.0, -0.1), DomainError);
  CHECK_THROWS_AS(make_exponents(2.0, 1.5), DomainError);
  CHECK_THROWS_AS(make_exponents(std::nan(""), 0.5), DomainError);
  const Exponents e = make_exponents(3.0, 0.25);
  CHECK(std::abs(1.0 / e.p() + 1.0 / e.q() - 1.0) <= kConjugateTolerance);
  CHECK(e.with_theta(0.75).theta() == 0.75);
  CHECK(e.with_theta(0.75).p() == 3.0);
}

TEST_CASE("make_joint validation") {
  const JointDistribution b = make_joint({{0, 0, 0.5}, {1, 1, 0.5}});
  CHECK(b.size() == 2);
  CHECK(make_joint({{1, 2, 1.0}}).size() == 1);
  CHECK_THROWS_AS(make_joint({{1, 1, 0.5}, {2, 2, 0.6}}), DomainError);
  CHECK_THROWS_AS(make_joint({}), DomainError);
  CHECK_THROWS_AS(make_joint({{-1, 1, 1.0}}), DomainError);
  CHECK_THROWS_AS(make_joint({{1, 1, 0.5}, {1, 1, -0.0001}, {2, 2, 0.5001}}),
                  DomainError);
  CHECK_THROWS_AS(make_joint({{1, 1, 1.0 - 1e-16}, {2, 2, 1e-16}}), DomainError);
  CHECK_THROWS_AS(make_joint({{std::numeric_limits<double>::infinity(), 1, 1.0}}),
                  DomainError);
  // exact zero weights are dropped
  const JointDistribution d = make_joint({{1, 1, 0.5}, {7, 7, 0.0}, {2, 2, 0.5}});
  CHECK(d.size() == 2);
  // near-unit sums are renormalized
  const JointDistribution r = make_joint({{1, 1, 0.5 + 2e-10}, {2, 2, 0.5}});
  double s = 0.0;
  for (const Atom& a : r.atoms()) s += a.w;
  CHECK(std::abs(s - 1.0) <= 1e-12);
}

TEST_CASE("atom order preserved and multiset equality") {
  const JointDistribution a = make_joint({{1, 2, 0.25}, {3, 4, 0.75}});
  const JointDistribution b = make_joint({{3, 4, 0.75}, {1, 2, 0.25}});
  CHECK(a.atoms()[0].x == 1.0);
  CHECK(b.atoms()[0].x == 3.0);
  CHECK(same_distribution(a, b));
  CHECK_FALSE(same_distribution(a, make_joint({{1, 2, 0.25}, {3, 4.1, 0.75}})));
  CHECK(same_distribution(a.swapped().swapped(), a));
}

TEST_CASE("power conventions") {
  CHECK(power(0.0, 0.0) == 1.0);
  CHECK(std::isinf(power(0.0, -0.5)));
  CHECK(power(4.0, 0.5) == doctest::Approx(2.0));
  CHECK(mul_convention(0.0, std::numeric_limits<double>::infinity()) == 0.0);
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const double a = rng.uniform(0, 10), b = rng.uniform(0, 10), e = rng.uniform(0.01, 5);
    if (a < b) CHECK(power(a, e) <= power(b, e));
  }
}

TEST_CASE("support index") {
  const std::vector<double> pos{1, 2, 3};
  const std::vector<double> zero{0, 0, 0};
  CHECK(support_of(pos).size() == 3);
  CHECK(support_of(zero).empty());
  const std::vector<double> mix{0, 2, 0, 1};
  const SupportIndex s = support_of(mix);
  CHECK(s.indices == std::vector<std::size_t>{1, 3});
  CHECK(s.contains(3));
  CHECK_FALSE(s.contains(0));
  const std::vector<double> other{1, 1, 0, 0};
  CHECK(intersect(s, support_of(other)).indices == std::vector<std::size_t>{1});
}

TEST_CASE("marginals and affine pairs") {
  const Marginal x = make_marginal({{0.0, 0.5}, {1.0, 0.5}});
  CHECK(x.min_value() == 0.0);
  const JointDistribution d = x.affine_pair(2.0, 0.5);
  CHECK(d.atoms()[1].y == doctest::Approx(2.5));
  CHECK_THROWS_AS(x.affine_pair(-1.0, 0.5), DomainError);
  const Marginal back = marginal(d, Axis::Y);
  CHECK(back.atoms()[0].z == doctest::Approx(0.5));
}

TEST_CASE("random instances satisfy the invariants") {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const JointDistribution d = random_joint(rng, {});
    double s = 0.0;
    for (const Atom& a : d.atoms()) {
      CHECK(std::isfinite(a.x));
      CHECK(a.w > 0.0);
      s += a.w;
    }
    CHECK(std::abs(s - 1.0) <= 1e-12);
    CHECK(d.size() <= 8);
  }
}

TEST_CASE("substreams are deterministic") {
  Rng a = Rng::substream(5, 3), b = Rng::substream(5, 3), c = Rng::substream(5, 4);
  const double va = a.uniform();
  CHECK(va == b.uniform());
  CHECK(va != c.uniform());
}
