#pragma once

#include <cstddef>

#include "excesslab/core.hpp"
#include "excesslab/rng.hpp"

namespace excesslab {

/// Shape of randomly generated joint distributions.
struct InstanceShape {
  std::size_t max_atoms = 8;
  double value_scale = 10.0;
  /// Probability that a coordinate is exactly zero.
  double zero_probability = 0.2;
};

/// Atom count uniform in [1, max_atoms]; coordinates scale*U[0,1], each
/// replaced by an exact 0 with zero_probability; weights are normalized
/// exponentials.
JointDistribution random_joint(Rng& rng, const InstanceShape& shape);

/// Same recipe for a single variable with strictly positive values when
/// positive_only is set.
Marginal random_marginal(Rng& rng, const InstanceShape& shape,
                         bool positive_only = false);

}  // namespace excesslab
