#include "excesslab/functionals.hpp"

#include <algorithm>
#include <cmath>

#include "excesslab/detail/kernels.hpp"
#include "excesslab/errors.hpp"

namespace excesslab {

double default_tolerance(double lhs, double rhs) {
  return 1e-9 * std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

GapReport make_gap_report(std::string label, double lhs, double rhs,
                          std::optional<Exponents> e) {
  return make_gap_report(std::move(label), lhs, rhs, e,
                         default_tolerance(lhs, rhs));
}

GapReport make_gap_report(std::string label, double lhs, double rhs,
                          std::optional<Exponents> e, double tol) {
  GapReport r;
  r.label = std::move(label);
  r.lhs = lhs;
  r.rhs = rhs;
  r.gap = lhs - rhs;
  r.tol = tol;
  r.holds = r.gap <= tol;
  r.kind = GapKind::upper_bound;
  r.exponents = e;
  return r;
}

GapReport make_identity_report(std::string label, double lhs, double rhs,
                               std::optional<Exponents> e, double tol) {
  GapReport r = make_gap_report(std::move(label), lhs, rhs, e, tol);
  r.kind = GapKind::identity;
  r.holds = std::abs(r.gap) <= tol;
  return r;
}

namespace {

const std::vector<double>& pick(const detail::Columns<double>& c, Axis axis) {
  return axis == Axis::X ? c.x : c.y;
}

}  // namespace

double p_norm(const JointDistribution& dist, Axis axis, double r) {
  if (!(r >= 1.0)) throw DomainError("p_norm requires r >= 1");
  const auto c = detail::columns<double>(dist);
  return std::pow(detail::moment(pick(c, axis), c.w, r), 1.0 / r);
}

double moment(const JointDistribution& dist, Axis axis, double r) {
  const auto c = detail::columns<double>(dist);
  return detail::moment(pick(c, axis), c.w, r);
}

double excess(const JointDistribution& dist, Axis axis, const Exponents& e) {
  const auto c = detail::columns<double>(dist);
  return detail::excess(pick(c, axis), c.w, e.p(), e.theta());
}

double cov_like(const JointDistribution& dist, const Exponents& e) {
  return detail::cov_like(detail::columns<double>(dist), e.p(), e.theta());
}

double delta(const JointDistribution& dist, const Exponents& e) {
  return detail::delta(detail::columns<double>(dist), e.p(), e.theta());
}

double delta_abc(const JointDistribution& dist, const Exponents& e,
                 const MassAtInfinity& m) {
  if (!(m.a >= 0.0) || !(m.b >= 0.0) || !(m.c >= 0.0)) {
    throw DomainError("masses at infinity must be nonnegative");
  }
  return detail::delta_abc(detail::columns<double>(dist), e.p(), m.a, m.b,
                           m.c);
}

double minkowski_g(const JointDistribution& dist, const Exponents& e,
                   double t) {
  if (!(t >= 0.0)) throw DomainError("minkowski_g requires t >= 0");
  const JointDistribution sum = dist.with_x_plus_ty(t);
  return excess(sum, Axis::X, e) - excess(dist, Axis::X, e) -
         t * excess(dist, Axis::Y, e);
}

std::optional<double> minkowski_g_prime(const JointDistribution& dist,
                                        const Exponents& e, double t) {
  if (!(t >= 0.0)) throw DomainError("minkowski_g_prime requires t >= 0");
  const JointDistribution sum = dist.with_x_plus_ty(t);
  const auto c = detail::columns<double>(sum);
  const double radicand = detail::excess_radicand(c.x, c.w, e.p(), e.theta());
  const double scale = detail::moment(c.x, c.w, e.p());
  if (radicand <= 1e-12 * std::max(1.0, scale)) return std::nullopt;
  const double ex = std::pow(radicand, 1.0 / e.p());
  return cov_like(sum, e) * std::pow(ex, 1.0 - e.p()) -
         excess(dist, Axis::Y, e);
}

}  // namespace excesslab
