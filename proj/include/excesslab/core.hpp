#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace excesslab {

/// Largest tolerated deviation of 1/p + 1/q from 1.
inline constexpr double kConjugateTolerance = 1e-12;
/// Weight sums within this distance of 1 are renormalized; others rejected.
inline constexpr double kWeightSumTolerance = 1e-9;
/// Smallest admissible positive atom weight.
inline constexpr double kMinAtomWeight = 1e-15;

/// The exponent triple (p, q, theta): p > 1, q its Hoelder conjugate and
/// theta in [0,1] the interpolation weight between the p-norm and the
/// p-excess.
class Exponents {
 public:
  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }
  double theta() const noexcept { return theta_; }

  /// Same p with a different interpolation weight.
  Exponents with_theta(double theta) const;

  friend Exponents make_exponents(double p, double theta);

 private:
  Exponents(double p, double q, double theta) noexcept
      : p_(p), q_(q), theta_(theta) {}

  double p_;
  double q_;
  double theta_;
};

/// Throws DomainError when p <= 1 or theta is outside [0,1].
Exponents make_exponents(double p, double theta);

enum class Axis { X, Y };

struct Atom {
  double x;
  double y;
  double w;
};

/// A pair of nonnegative random variables on a finite probability space,
/// stored as atoms (x, y, w) with strictly positive weights summing to 1.
/// Atom order is preserved.
class JointDistribution {
 public:
  std::span<const Atom> atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }

  std::vector<double> values(Axis axis) const;
  std::vector<double> weights() const;

  /// Atoms (x + t*y, y).
  JointDistribution with_x_plus_ty(double t) const;
  /// Atoms (a*x, b*y).
  JointDistribution scaled(double a, double b) const;
  /// Atoms (x, y) -> (y, x).
  JointDistribution swapped() const;

  friend JointDistribution make_joint(std::vector<Atom> atoms);
  /// Accepts any finite nonnegative coordinates and positive weights whose
  /// sum is within kWeightSumTolerance of 1, without the kMinAtomWeight
  /// floor. Used for distributions reconstructed from compactified points.
  static JointDistribution from_positive_weights(std::vector<Atom> atoms);

 private:
  explicit JointDistribution(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {}

  std::vector<Atom> atoms_;
};

/// Validates and normalizes a list of atoms. Atoms with weight exactly 0 are
/// dropped; negative or non-finite entries, weights in (0, 1e-15) and weight
/// sums farther than 1e-9 from 1 are rejected with DomainError.
JointDistribution make_joint(std::vector<Atom> atoms);

/// Multiset equality of atoms, each field within tol.
bool same_distribution(const JointDistribution& a, const JointDistribution& b,
                       double tol = 1e-12);

/// Distribution of a single nonnegative random variable.
struct MarginalAtom {
  double z;
  double w;
};

class Marginal {
 public:
  std::span<const MarginalAtom> atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  double min_value() const;

  /// Joint law of (X, k*X + t). Throws DomainError if k*X + t < 0 somewhere.
  JointDistribution affine_pair(double k, double t) const;

  friend Marginal make_marginal(std::vector<MarginalAtom> atoms);

 private:
  explicit Marginal(std::vector<MarginalAtom> atoms) : atoms_(std::move(atoms)) {}

  std::vector<MarginalAtom> atoms_;
};

/// Same validation rules as make_joint.
Marginal make_marginal(std::vector<MarginalAtom> atoms);
Marginal marginal(const JointDistribution& dist, Axis axis);

/// base^exponent with 0^0 = 1 and 0^a = +inf for a < 0. Requires base >= 0.
double power(double base, double exponent);

/// a*b with 0*inf = 0.
double mul_convention(double a, double b);

/// Positions whose value is strictly positive.
struct SupportIndex {
  std::vector<std::size_t> indices;

  bool contains(std::size_t i) const;
  std::size_t size() const noexcept { return indices.size(); }
  bool empty() const noexcept { return indices.empty(); }
};

SupportIndex support_of(std::span<const double> values);
SupportIndex intersect(const SupportIndex& a, const SupportIndex& b);

}  // namespace excesslab
