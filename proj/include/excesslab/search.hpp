#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "excesslab/core.hpp"
#include "excesslab/functionals.hpp"

namespace excesslab {

inline constexpr const char* kConstructionBernoulli = "bernoulli_shift";
inline constexpr const char* kConstructionBernoulliScaled = "bernoulli_shift_scaled";
inline constexpr const char* kConstructionRandom = "random_search";

/// Replayable witness that an excess inequality fails.
struct ViolationCertificate {
  JointDistribution dist;
  Exponents exponents;
  /// kLabelHolder or kLabelMinkowski.
  std::string inequality;
  double gap = 0.0;
  /// Tolerance of the checker for this instance; gap > 10 tol.
  double tol = 0.0;
  /// The gap recomputed in extended precision, and its decimal rendering.
  double recheck_gap = 0.0;
  std::string recheck_decimal;
  std::string construction;
  std::uint64_t seed = 0;
  /// Shift c of the Bernoulli pair (X, X + c), when applicable.
  std::optional<double> shift;
  /// Scale t of the second variable in the Minkowski certificate.
  std::optional<double> scale;
  /// Second-order prediction delta''(0+) c^2 / 2.
  std::optional<double> predicted_gap;
};

/// The report of the certificate's checker on its stored instance.
GapReport replay(const ViolationCertificate& cert);

/// X ~ Bernoulli(1/2) and Y = X + c with c scanned over 0.5, 0.25, ... until
/// Delta_{p,theta}(X, Y) > 10 tol. Requires p > 2 and theta in (0,1]; throws
/// NumericFault after 60 halvings.
ViolationCertificate paper_counterexample(const Exponents& e);

/// Pairs (X, t(X + c)) with c over 0.5, 0.25, ... and, for each c, t over
/// 1, 1/2, ..., 2^-60; the first with E(X + tY) > E(X) + t E(Y) by more than
/// 10 tol is certified. Same preconditions and fault as paper_counterexample.
ViolationCertificate minkowski_counterexample(const Exponents& e);

struct SearchOptions {
  std::size_t trials = 1000;
  std::size_t max_atoms = 8;
  double value_scale = 10.0;
  std::uint64_t seed = 0;
  std::optional<unsigned> threads;
};

/// Random instances checked against both inequalities; the instance with
/// the largest relative gap among those exceeding 10 tol (ties to the lowest
/// trial) is shrunk and certified. Requires p > 2 and theta in (0,1].
std::optional<ViolationCertificate> random_violation_search(
    const Exponents& e, const SearchOptions& options = {});

}  // namespace excesslab
