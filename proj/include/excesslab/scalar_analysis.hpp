#pragma once

#include <vector>

#include "excesslab/core.hpp"
#include "excesslab/functionals.hpp"
#include "excesslab/precision.hpp"

namespace excesslab {

/// Delta_{p,theta}(X, X + t) with theta taken from e. Requires t >= -min X.
double delta_t(const Marginal& x, const Exponents& e, double t);

/// One-sided slope of t -> delta_t at 0+ from delta(0), delta(h), delta(2h),
/// delta(4h). Atoms at 0 contribute a t^p term, so the stencil fits
/// a t + b t^p + c t^2 (a t + b t^2 + c t^3 when |p - 2| < 0.05) and
/// returns a.
double delta_slope_at_zero(const Marginal& x, const Exponents& e,
                           double h = 1e-5);

/// (E(X+t)^p - (E X + t)^p)^{1/p}. Requires t >= -min X.
double f_of_t(const Marginal& x, double p, double t);

/// Moments of orders p, p-1, p-2 of a positive r.v. normalized to E Y = 1.
struct MomentQuad {
  double m_p = 1.0;
  double m_pm1 = 1.0;
  double m_pm2 = 1.0;

  /// Requires every atom of y to be strictly positive.
  static MomentQuad from_distribution(const Marginal& y, double p);

  /// m_pm1 <= 1 <= m_pm1^{p-1} m_p^{2-p} and 1 <= m_pm2^{p-1} m_pm1^{2-p},
  /// each within tol.
  bool lyapunov_chain_holds(double p, double tol = 1e-12) const;
};

/// (m_p - 1)(m_pm2 - 1) - (1 - m_pm1)^2.
double H_quad(const MomentQuad& m, double p);

/// m_p^{-(2-p)/(p-1)}; p in (1,2), m_p >= 1.
double m_star(double m_p, double p);
/// m_pm2^{-(p-1)/(2-p)}; p in (1,2), m_pm2 >= 1.
double m_star_star(double m_pm2, double p);

/// (m_p - 1)(m_p^{(2-p)^2/(p-1)^2} - 1) - (1 - m_star)^2.
double H_star(double m_p, double p);
/// (m_pm2^{(p-1)^2/(2-p)^2} - 1)(m_pm2 - 1) - (1 - m_star_star)^2.
double H_star_star(double m_pm2, double p);

/// m_pm2 with m_p^{(2-p)^2} = m_pm2^{(p-1)^2}.
double corresponding_m_pm2(double m_p, double p);

/// sum_k coef_k exp(rate_k s).
struct ExpTerm {
  double coef;
  double rate;
};

class ExpSum {
 public:
  ExpSum() = default;
  explicit ExpSum(std::vector<ExpTerm> terms) : terms_(std::move(terms)) {}

  double operator()(double s) const;
  /// Termwise derivative.
  ExpSum derivative() const;
  /// Multiplication by exp(k s).
  ExpSum shifted(double k) const;
  const std::vector<ExpTerm>& terms() const noexcept { return terms_; }

 private:
  std::vector<ExpTerm> terms_;
};

struct HChainSums {
  ExpSum h, h1, h2, h2_prime;
};

/// The exponential sums h, h1 = h' e^{(p-2)(p-1)s},
/// h2 = h1' e^{-(p^2-3p+3)s} and h2'. Requires p in (1,2).
HChainSums h_chain_sums(double p);

struct HChain {
  double h, h1, h2, h2_prime;
};

/// Values of the chain at s >= 0.
HChain h_chain(double p, double s);

/// Closed form of h2' as printed: (2-p)^2 (p-1)^2 (p e^{-(p-1)^2 s} +
/// (3-p) e^{-(2-p)^2 s}).
double h2_prime_closed_form(double p, double s);

/// H_star(e^{(p-1)^2 s}) e^{-2(p-2)(p-1)s} against h(s), tolerance
/// 1e-10 (1 + |h|).
GapReport substitution_identity(double p, double s);

/// delta''(0+) of t -> Delta_{p,theta}(X, X+t) for X ~ Bernoulli(1/2):
/// (p-1) theta^p / (2^p - 2 theta^p) for p > 2, -(1-theta^2)/(2-theta^2) at
/// p = 2 and -inf for p < 2. Requires theta in (0,1].
double bernoulli_second_derivative(const Exponents& e);

/// One-sided second difference (2 d(0) - 5 d(h) + 4 d(2h) - d(3h)) / h^2 of
/// delta_t for X ~ Bernoulli(1/2), evaluated in Wide arithmetic.
double measured_second_derivative(const Exponents& e, double h = 1e-12);

}  // namespace excesslab
