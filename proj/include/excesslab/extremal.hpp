#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "excesslab/core.hpp"
#include "excesslab/functionals.hpp"

namespace excesslab {

/// Target moments m11 = E X, m1p = E X^p, m21 = E Y, m2p = E Y^p of the
/// extremal problem. All strictly positive; feasibility (Lyapunov:
/// m1p >= m11^p, m2p >= m21^p) is recorded, not enforced.
class MomentSpec {
 public:
  double m11() const noexcept { return m11_; }
  double m1p() const noexcept { return m1p_; }
  double m21() const noexcept { return m21_; }
  double m2p() const noexcept { return m2p_; }
  double p() const noexcept { return p_; }
  bool feasible() const noexcept { return feasible_; }

  friend MomentSpec make_moment_spec(double m11, double m1p, double m21,
                                     double m2p, const Exponents& e);

 private:
  MomentSpec(double m11, double m1p, double m21, double m2p, double p,
             bool feasible)
      : m11_(m11), m1p_(m1p), m21_(m21), m2p_(m2p), p_(p), feasible_(feasible) {}

  double m11_, m1p_, m21_, m2p_, p_;
  bool feasible_;
};

/// Throws DomainError unless all four moments are finite and > 0.
MomentSpec make_moment_spec(double m11, double m1p, double m21, double m2p,
                            const Exponents& e);

/// Point (U, V, W) of the compactified feasible set: u_i = x_i^p w_i,
/// v_i = y_i^p w_i, with w_i allowed to vanish while u_i or v_i does not.
struct CompactifiedPoint {
  std::vector<double> u;
  std::vector<double> v;
  std::vector<double> w;

  std::size_t size() const noexcept { return w.size(); }
};

/// Throws DomainError on mismatched lengths, negative or non-finite entries.
void validate(const CompactifiedPoint& point);

struct Compactified {
  CompactifiedPoint point;
  MomentSpec spec;
};

Compactified compactify(const JointDistribution& dist, const Exponents& e);

/// The four moment sums realized by a point (Sigma u, Sigma v and the two
/// dot products), together with Sigma w.
struct PointMoments {
  double sum_w;
  double m11, m1p, m21, m2p;
};
PointMoments moments_of(const CompactifiedPoint& point, const Exponents& e);

/// max_j |constraint_j| / max(1e-300, target_j) over the five constraints.
double feasibility_residual(const CompactifiedPoint& point,
                            const MomentSpec& spec, const Exponents& e);

/// I_U and I_W intersect, and I_V and I_W intersect.
bool supports_overlap(const CompactifiedPoint& point);

/// U^{1/q}.V^{1/p} - m11^{p-1} m21 - (m1p - m11^p)^{1/q} (m2p - m21^p)^{1/p}
/// with the moments taken from spec. Throws DomainError for infeasible specs.
double objective_tilde(const CompactifiedPoint& point, const MomentSpec& spec,
                       const Exponents& e);

/// Same functional with the moments realized by the point itself.
double objective_tilde_intrinsic(const CompactifiedPoint& point,
                                 const Exponents& e);

/// Multipliers of the Lagrange system; tau stands for the multiplier of the
/// constraint Sigma w = 1.
struct LagrangeMultipliers {
  double alpha = 0.0;
  double lambda = 0.0;
  double mu = 0.0;
  double nu = 0.0;
  double rho = 0.0;
  double tau = 0.0;

  double max_abs() const;
};

struct IndexedResidual {
  std::size_t index;
  double value;
  /// True when the multiplied form was used because u_i or v_i < 1e-12.
  bool multiplied;
};

struct LagrangeResiduals {
  /// Stationarity in u on I_U, in v on I_V and in w on I_W.
  std::vector<IndexedResidual> eq1;
  std::vector<IndexedResidual> eq2;
  std::vector<IndexedResidual> eq3;

  double max_abs() const;
};

/// Residuals of the stationarity equations for the given multipliers.
/// Throws DomainError if all multipliers are zero.
LagrangeResiduals lagrange_residuals(const CompactifiedPoint& point,
                                     const LagrangeMultipliers& mult,
                                     const Exponents& e);

struct MultiplierFit {
  /// Unit-norm (in column-scaled coordinates) least-squares multipliers.
  LagrangeMultipliers multipliers;
  /// Largest residual of the multiplied stationarity equations (each
  /// multiplier column scaled to unit norm); dimensionless.
  double scaled_residual = 0.0;
};

/// Least-squares fit of all six multipliers, normalized to unit length, to
/// the stationarity system with the u, v and w equations multiplied
/// through by u_i, v_i and w_i.
MultiplierFit fit_multipliers(const CompactifiedPoint& point,
                              const Exponents& e);

struct MassExtraction {
  /// (X, Y) reconstructed on I_W.
  JointDistribution dist;
  /// Original positions of the atoms of dist.
  std::vector<std::size_t> indices;
  MassAtInfinity mass;
};

MassExtraction extract_mass_at_infinity(const CompactifiedPoint& point,
                                        const Exponents& e);

enum class DegenerateCase {
  zero_mixed_moment,     // rho = 0 != alpha: E X^{p-1} Y = 0
  contradiction,         // rho = alpha = lambda = nu = 0
  x_constant_lambda,     // rho = alpha = 0 != lambda: X constant
  x_zero,                // rho = alpha = lambda = 0 != nu: X = 0
  y_proportional,        // rho != 0 = lambda: Y = cX
  x_constant_rho,        // rho != 0 != lambda: X constant
};

struct DegenerateClassification {
  DegenerateCase which;
  std::string label;
  std::string conclusion;
  /// The structural conclusion holds on the reconstructed (X, Y).
  bool verified = false;
  /// Fitted c for y_proportional, else 0.
  double proportionality = 0.0;
  /// Delta_p of the reconstructed pair (absent for a contradiction).
  std::optional<double> delta;
};

/// Classifies a multiplier vector with mu ~ 0. zero_tol defaults to
/// 1e-7 * max|multiplier|. Throws DomainError if every multiplier is ~0 or
/// if mu is not ~0.
DegenerateClassification classify_degenerate(
    const CompactifiedPoint& point, const LagrangeMultipliers& mult,
    const Exponents& e, std::optional<double> zero_tol = std::nullopt);

struct MaximizeOptions {
  std::size_t n_support = 6;
  std::size_t restarts = 64;
  std::uint64_t seed = 0;
  std::optional<unsigned> threads;
};

struct RestartOutcome {
  bool ok = false;
  double value = 0.0;
  double feasibility_residual = 0.0;
  bool derivative_free = false;
};

struct MaximizeResult {
  /// False when no feasible point was found; value is then -inf.
  bool feasible = false;
  CompactifiedPoint point;
  double value = 0.0;
  double feasibility_residual = 0.0;
  MultiplierFit multipliers;
  std::size_t best_restart = 0;
  std::vector<RestartOutcome> restarts;
};

/// Multi-start local maximization of objective_tilde over the compactified
/// feasible set. Deterministic in the seed; restart r uses substream r, so
/// the best value is nondecreasing in the restart count.
MaximizeResult maximize(const MomentSpec& spec, const Exponents& e,
                        const MaximizeOptions& options = {});

}  // namespace excesslab
