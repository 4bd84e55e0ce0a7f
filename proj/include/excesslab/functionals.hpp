#pragma once

#include <optional>
#include <string>

#include "excesslab/core.hpp"

namespace excesslab {

enum class GapKind {
  /// Inequality lhs <= rhs; holds when gap <= tol.
  upper_bound,
  /// Identity lhs == rhs; holds when |gap| <= tol.
  identity,
};

/// Outcome of checking one inequality or identity instance.
struct GapReport {
  std::string label;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  double tol = 0.0;
  bool holds = true;
  GapKind kind = GapKind::upper_bound;
  std::optional<Exponents> exponents;
};

/// 1e-9 * max(1, |lhs|, |rhs|).
double default_tolerance(double lhs, double rhs);

GapReport make_gap_report(std::string label, double lhs, double rhs,
                          std::optional<Exponents> e = std::nullopt);
GapReport make_gap_report(std::string label, double lhs, double rhs,
                          std::optional<Exponents> e, double tol);
GapReport make_identity_report(std::string label, double lhs, double rhs,
                               std::optional<Exponents> e, double tol);

/// "Masses at infinity" collected from indices with zero weight.
struct MassAtInfinity {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

/// (E Z^r)^{1/r} for r >= 1.
double p_norm(const JointDistribution& dist, Axis axis, double r);

/// E Z^r under the 0^0 = 1, 0^a = inf (a < 0) conventions.
double moment(const JointDistribution& dist, Axis axis, double r);

/// (||Z||_p^p - theta^p ||Z||_1^p)^{1/p}.
double excess(const JointDistribution& dist, Axis axis, const Exponents& e);

/// E X^{p-1} Y - theta^p (E X)^{p-1} E Y.
double cov_like(const JointDistribution& dist, const Exponents& e);

/// cov_like - excess(X)^{p-1} excess(Y); nonpositive for p <= 2.
double delta(const JointDistribution& dist, const Exponents& e);

/// The theta = 1 gap perturbed by masses at infinity (A, B, C). The theta
/// component of e is ignored.
double delta_abc(const JointDistribution& dist, const Exponents& e,
                 const MassAtInfinity& m);

/// g(t) = E(X + tY) - E(X) - t E(Y) with E the (p,theta)-excess.
double minkowski_g(const JointDistribution& dist, const Exponents& e, double t);

/// Closed-form g'(t) = C(X+tY, Y) E(X+tY)^{1-p} - E(Y). Returns nullopt when
/// E(X+tY) vanishes (up to rounding of its radicand), where g'(t) is not
/// defined.
std::optional<double> minkowski_g_prime(const JointDistribution& dist,
                                        const Exponents& e, double t);

}  // namespace excesslab
