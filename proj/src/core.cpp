#include "excesslab/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "excesslab/errors.hpp"

namespace excesslab {

Exponents make_exponents(double p, double theta) {
  if (!std::isfinite(p) || !(p > 1.0)) {
    throw DomainError("exponent p must be a finite real > 1, got " +
                      std::to_string(p));
  }
  if (!std::isfinite(theta) || theta < 0.0 || theta > 1.0) {
    throw DomainError("theta must lie in [0,1], got " + std::to_string(theta));
  }
  const double q = p / (p - 1.0);
  if (std::abs(1.0 / p + 1.0 / q - 1.0) > kConjugateTolerance) {
    throw DomainError("conjugate exponent is numerically unstable for p = " +
                      std::to_string(p));
  }
  return Exponents(p, q, theta);
}

Exponents Exponents::with_theta(double theta) const {
  return make_exponents(p_, theta);
}

namespace {

void require_coordinate(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw DomainError(std::string("non-finite coordinate ") + name);
  }
  if (v < 0.0) {
    throw DomainError(std::string("negative coordinate ") + name + " = " +
                      std::to_string(v));
  }
}

// Drops zero weights, validates the rest and renormalizes the sum to 1.
template <class A, class Check>
std::vector<A> normalize_atoms(std::vector<A> atoms, double min_weight,
                               Check check) {
  std::vector<A> kept;
  kept.reserve(atoms.size());
  for (const A& a : atoms) {
    check(a);
    if (!std::isfinite(a.w)) throw DomainError("non-finite weight");
    if (a.w < 0.0) {
      throw DomainError("negative weight " + std::to_string(a.w));
    }
    if (a.w == 0.0) continue;
    if (a.w < min_weight) {
      throw DomainError("weight " + std::to_string(a.w) +
                        " is below the admissible floor");
    }
    kept.push_back(a);
  }
  if (kept.empty()) throw DomainError("distribution has no atoms");
  double sum = 0.0;
  for (const A& a : kept) sum += a.w;
  if (std::abs(sum - 1.0) > kWeightSumTolerance) {
    throw DomainError("weights sum to " + std::to_string(sum) + ", not 1");
  }
  for (A& a : kept) a.w /= sum;
  return kept;
}

void check_atom(const Atom& a) {
  require_coordinate(a.x, "x");
  require_coordinate(a.y, "y");
}

}  // namespace

JointDistribution make_joint(std::vector<Atom> atoms) {
  return JointDistribution(
      normalize_atoms(std::move(atoms), kMinAtomWeight, check_atom));
}

JointDistribution JointDistribution::from_positive_weights(
    std::vector<Atom> atoms) {
  return JointDistribution(normalize_atoms(
      std::move(atoms), std::numeric_limits<double>::min(), check_atom));
}

std::vector<double> JointDistribution::values(Axis axis) const {
  std::vector<double> out;
  out.reserve(atoms_.size());
  for (const Atom& a : atoms_) out.push_back(axis == Axis::X ? a.x : a.y);
  return out;
}

std::vector<double> JointDistribution::weights() const {
  std::vector<double> out;
  out.reserve(atoms_.size());
  for (const Atom& a : atoms_) out.push_back(a.w);
  return out;
}

JointDistribution JointDistribution::with_x_plus_ty(double t) const {
  std::vector<Atom> out(atoms_);
  for (Atom& a : out) {
    a.x += t * a.y;
    require_coordinate(a.x, "x + t*y");
  }
  return JointDistribution(std::move(out));
}

JointDistribution JointDistribution::scaled(double a, double b) const {
  if (!(a >= 0.0) || !(b >= 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("scale factors must be finite and nonnegative");
  }
  std::vector<Atom> out(atoms_);
  for (Atom& at : out) {
    at.x *= a;
    at.y *= b;
  }
  return JointDistribution(std::move(out));
}

JointDistribution JointDistribution::swapped() const {
  std::vector<Atom> out(atoms_);
  for (Atom& a : out) std::swap(a.x, a.y);
  return JointDistribution(std::move(out));
}

bool same_distribution(const JointDistribution& a, const JointDistribution& b,
                       double tol) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const Atom& x : a.atoms()) {
    bool matched = false;
    for (std::size_t j = 0; j < b.size(); ++j) {
      const Atom& y = b.atoms()[j];
      if (!used[j] && std::abs(x.x - y.x) <= tol &&
          std::abs(x.y - y.y) <= tol && std::abs(x.w - y.w) <= tol) {
        used[j] = true;
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

Marginal make_marginal(std::vector<MarginalAtom> atoms) {
  return Marginal(normalize_atoms(
      std::move(atoms), kMinAtomWeight,
      [](const MarginalAtom& a) { require_coordinate(a.z, "z"); }));
}

Marginal marginal(const JointDistribution& dist, Axis axis) {
  std::vector<MarginalAtom> atoms;
  atoms.reserve(dist.size());
  for (const Atom& a : dist.atoms()) {
    atoms.push_back({axis == Axis::X ? a.x : a.y, a.w});
  }
  return make_marginal(std::move(atoms));
}

double Marginal::min_value() const {
  double m = atoms_.front().z;
  for (const MarginalAtom& a : atoms_) m = std::min(m, a.z);
  return m;
}

JointDistribution Marginal::affine_pair(double k, double t) const {
  std::vector<Atom> out;
  out.reserve(atoms_.size());
  for (const MarginalAtom& a : atoms_) {
    double y = k * a.z + t;
    // k*x + t is exactly representable as 0 only up to rounding.
    if (y < 0.0 && y > -1e-14 * (1.0 + std::abs(t))) y = 0.0;
    if (!(y >= 0.0)) {
      throw DomainError("k*X + t is negative on the support");
    }
    out.push_back({a.z, y, a.w});
  }
  return JointDistribution::from_positive_weights(std::move(out));
}

double power(double base, double exponent) {
  if (base == 0.0) {
    if (exponent == 0.0) return 1.0;
    if (exponent < 0.0) return std::numeric_limits<double>::infinity();
    return 0.0;
  }
  return std::pow(base, exponent);
}

double mul_convention(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  return a * b;
}

bool SupportIndex::contains(std::size_t i) const {
  return std::binary_search(indices.begin(), indices.end(), i);
}

SupportIndex support_of(std::span<const double> values) {
  SupportIndex s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] > 0.0) s.indices.push_back(i);
  }
  return s;
}

SupportIndex intersect(const SupportIndex& a, const SupportIndex& b) {
  SupportIndex s;
  std::set_intersection(a.indices.begin(), a.indices.end(), b.indices.begin(),
                        b.indices.end(), std::back_inserter(s.indices));
  return s;
}

}  // namespace excesslab
