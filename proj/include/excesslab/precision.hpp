#pragma once

#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "excesslab/core.hpp"

namespace excesslab {

/// 50 significant decimal digits, expression templates off so it behaves like
/// a plain value type inside the shared kernels.
using Wide = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<50>,
    boost::multiprecision::et_off>;

inline constexpr int kWideDigits = 50;

/// lhs - rhs of the excess Hoelder inequality evaluated in Wide arithmetic
/// from the exact binary64 inputs.
Wide holder_gap_wide(const JointDistribution& dist, const Exponents& e);

/// lhs - rhs of the excess Minkowski inequality in Wide arithmetic.
Wide minkowski_gap_wide(const JointDistribution& dist, const Exponents& e);

/// Delta_{p,theta}(X, X + t) in Wide arithmetic for a marginal X and a
/// shift t given as a Wide value (so that tiny steps stay exact).
Wide shifted_delta_wide(const Marginal& x, const Exponents& e, const Wide& t);

/// Decimal rendering with the given number of significant digits.
std::string to_decimal(const Wide& v, int digits = 35);

}  // namespace excesslab
