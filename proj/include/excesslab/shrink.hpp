#pragma once

#include <functional>

#include "excesslab/core.hpp"

namespace excesslab {

/// Returns true while a candidate still exhibits the property being shrunk
/// (typically: the violation persists).
using ShrinkPredicate = std::function<bool(const JointDistribution&)>;

/// Greedy shrinking to a locally minimal instance. Passes, repeated until
/// nothing changes: drop an atom; set a coordinate to 0; round a coordinate
/// to 1..6 significant digits; make all weights uniform; round a weight to
/// 1..4 significant digits. A move is kept only if `keep` still accepts the
/// result. `keep(start)` must be true.
JointDistribution shrink(const JointDistribution& start,
                         const ShrinkPredicate& keep);

}  // namespace excesslab
