#include "excesslab/generate.hpp"

#include <vector>

#include "excesslab/errors.hpp"

namespace excesslab {

namespace {

std::vector<double> random_weights(Rng& rng, std::size_t n) {
  std::vector<double> w(n);
  double sum = 0.0;
  for (double& v : w) {
    // Keep weights well away from the admissible floor.
    v = rng.exponential() + 1e-6;
    sum += v;
  }
  for (double& v : w) v /= sum;
  return w;
}

double coordinate(Rng& rng, const InstanceShape& shape) {
  if (rng.bernoulli(shape.zero_probability)) return 0.0;
  return shape.value_scale * rng.uniform();
}

}  // namespace

JointDistribution random_joint(Rng& rng, const InstanceShape& shape) {
  if (shape.max_atoms < 1) throw DomainError("max_atoms must be >= 1");
  const std::size_t n = rng.index(1, shape.max_atoms);
  const std::vector<double> w = random_weights(rng, n);
  std::vector<Atom> atoms;
  atoms.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = coordinate(rng, shape);
    const double y = coordinate(rng, shape);
    atoms.push_back({x, y, w[i]});
  }
  return make_joint(std::move(atoms));
}

Marginal random_marginal(Rng& rng, const InstanceShape& shape,
                         bool positive_only) {
  if (shape.max_atoms < 1) throw DomainError("max_atoms must be >= 1");
  const std::size_t n = rng.index(1, shape.max_atoms);
  const std::vector<double> w = random_weights(rng, n);
  std::vector<MarginalAtom> atoms;
  atoms.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    double z = positive_only ? shape.value_scale * rng.uniform(1e-3, 1.0)
                             : coordinate(rng, shape);
    atoms.push_back({z, w[i]});
  }
  return make_marginal(std::move(atoms));
}

}  // namespace excesslab
