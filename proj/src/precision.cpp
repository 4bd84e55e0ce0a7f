#include "excesslab/precision.hpp"

#include <sstream>

#include "excesslab/detail/kernels.hpp"

namespace excesslab {

Wide holder_gap_wide(const JointDistribution& dist, const Exponents& e) {
  const auto c = detail::columns<Wide>(dist);
  const auto s = detail::holder_sides(c, Wide(e.p()), Wide(e.theta()));
  return s.lhs - s.rhs;
}

Wide minkowski_gap_wide(const JointDistribution& dist, const Exponents& e) {
  const auto c = detail::columns<Wide>(dist);
  const auto s = detail::minkowski_sides(c, Wide(e.p()), Wide(e.theta()));
  return s.lhs - s.rhs;
}

Wide shifted_delta_wide(const Marginal& x, const Exponents& e, const Wide& t) {
  detail::Columns<Wide> c;
  for (const MarginalAtom& a : x.atoms()) {
    c.x.emplace_back(a.z);
    c.y.push_back(Wide(a.z) + t);
    c.w.emplace_back(a.w);
  }
  return detail::delta(c, Wide(e.p()), Wide(e.theta()));
}

std::string to_decimal(const Wide& v, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << v;
  return os.str();
}

}  // namespace excesslab
