#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "excesslab/core.hpp"
#include "excesslab/functionals.hpp"

namespace excesslab {

inline constexpr const char* kLabelHolder = "excess_holder";
inline constexpr const char* kLabelMinkowski = "excess_minkowski";

/// C_{p,theta}(X,Y) <= E_{p,theta}(X)^{p-1} E_{p,theta}(Y).
GapReport check_excess_holder(const JointDistribution& dist, const Exponents& e);

/// E_{p,theta}(X+Y) <= E_{p,theta}(X) + E_{p,theta}(Y), the sum taken atomwise.
GapReport check_excess_minkowski(const JointDistribution& dist,
                                 const Exponents& e);

/// ||Z||_1 <= ||Z||_r.
GapReport check_norm_order(const JointDistribution& dist, Axis axis, double r);

struct LyapunovResult {
  /// The triple with the largest relative gap m_mid - m_a^l m_b^{1-l}.
  GapReport worst;
  /// Triples skipped because a moment was infinite.
  std::size_t infinite_triples = 0;
};

/// Log-convexity of r -> E Z^r over consecutive triples of a sorted grid:
/// m(r_k) <= m(r_{k-1})^l m(r_{k+1})^{1-l}, l = (r_{k+1}-r_k)/(r_{k+1}-r_{k-1}).
/// For an evenly spaced grid this is m_mid^2 <= m_a m_b.
LyapunovResult check_lyapunov(const JointDistribution& dist, Axis axis,
                              std::span<const double> r_grid);

/// E f(Z) E g(Z) <= E f(Z) g(Z) for f, g nondecreasing along z. Tables that
/// are not nondecreasing (after sorting by z) are rejected with DomainError.
GapReport check_chebyshev_integral(std::span<const double> z,
                                   std::span<const double> f,
                                   std::span<const double> g,
                                   std::span<const double> weights);

/// ab <= a^p/p + b^q/q.
GapReport check_young(double a, double b, const Exponents& e);

struct LemmaAbcReport {
  /// Largest forward slope (d(B_{k+1}) - d(B_k)) / (B_{k+1} - B_k) vs 0.
  GapReport monotone;
  /// max_B d(B) vs d(0) = Delta_p, tolerance at least 1e-9 gamma max B.
  GapReport bound;
  /// Largest closed-form d'(B) over the grid vs 0.
  GapReport derivative_sign;
  /// Largest |closed-form d'(B) - central difference| over interior points,
  /// relative to max(1, |d'|).
  double derivative_mismatch = 0.0;

  bool holds() const {
    return monotone.holds && bound.holds && derivative_sign.holds;
  }
};

/// d(B) = Delta_{p; gamma B, B, gamma^p B}(X, Y) along an increasing grid of
/// B > 0.
LemmaAbcReport check_lemma_abc_monotone(const JointDistribution& dist,
                                        const Exponents& e, double gamma,
                                        std::span<const double> b_grid);

/// d(B) and its closed-form derivative.
double lemma_abc_d(const JointDistribution& dist, const Exponents& e,
                   double gamma, double b);
double lemma_abc_d_prime(const JointDistribution& dist, const Exponents& e,
                         double gamma, double b);

struct ThetaReductionReport {
  /// Delta_{p,theta}(X,Y) == Delta_{p;A,B,C}(theta X, theta Y).
  GapReport identity;
  /// Delta_{p,theta}(X,Y) <= Delta_p(theta X, theta Y).
  GapReport bound;
  MassAtInfinity masses;

  bool holds() const { return identity.holds && bound.holds; }
};

ThetaReductionReport check_theta_reduction(const JointDistribution& dist,
                                           const Exponents& e);

struct NegativeSlopeReport {
  /// E X^{p-1} Y <= E X^{p-1} E Y (Chebyshev, Y nonincreasing in X).
  GapReport chebyshev_step;
  /// E X^{p-1} E Y <= (E X)^{p-1} E Y (Lyapunov, p <= 2).
  GapReport lyapunov_step;
  /// Delta_p(X, kX + t) <= 0.
  GapReport delta;

  bool holds() const {
    return chebyshev_step.holds && lyapunov_step.holds && delta.holds;
  }
};

/// Y = kX + t with k <= 0. Throws DomainError if k > 0 or Y < 0 somewhere.
NegativeSlopeReport check_negative_slope_reduction(const Marginal& x, double k,
                                                   double t,
                                                   const Exponents& e);

struct Interval {
  double lo;
  double hi;
};

struct SweepConfig {
  std::size_t trials = 1000;
  std::size_t max_atoms = 8;
  Interval p_range{1.01, 2.0};
  Interval theta_range{0.0, 1.0};
  std::uint64_t seed = 0;
  double value_scale = 10.0;
  std::optional<unsigned> threads;
  /// Shrink the worst violating instance before reporting it.
  bool shrink_worst = true;
};

/// Throws DomainError on an invalid configuration.
void validate(const SweepConfig& config);

struct SweepInstance {
  JointDistribution dist;
  Exponents exponents;
  std::string label;
  GapReport report;
};

struct SweepSummary {
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  /// Trials where either inequality failed in binary64 and the failure
  /// survived the extended-precision recheck.
  std::size_t violations = 0;
  /// binary64 failures that the recheck did not confirm.
  std::size_t unconfirmed = 0;
  std::size_t holder_violations = 0;
  std::size_t minkowski_violations = 0;
  /// Largest gap / max(1, |lhs|, |rhs|) over all trials and both checks.
  double worst_relative_gap = 0.0;
  /// Raw gap of that instance.
  double worst_gap = 0.0;
  std::optional<SweepInstance> worst;
  /// Locally minimal version of the worst confirmed violation, if any.
  std::optional<SweepInstance> shrunk_violation;
};

/// Property sweep of both excess inequalities. Deterministic in the seed and
/// independent of the worker count.
SweepSummary sweep(const SweepConfig& config);

/// The exponent and instance drawn by trial `index` of a sweep.
struct SweepTrial {
  JointDistribution dist;
  Exponents exponents;
};
SweepTrial sweep_trial(const SweepConfig& config, std::size_t index);

}  // namespace excesslab
