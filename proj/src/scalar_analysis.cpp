#include "excesslab/scalar_analysis.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "excesslab/errors.hpp"

namespace excesslab {
namespace {

void require_t_in_T(const Marginal& x, double t) {
  if (!std::isfinite(t) || t < -x.min_value()) {
    throw DomainError("t must satisfy X + t >= 0");
  }
}

void require_open_unit_p(double p) {
  if (!(p > 1.0 && p < 2.0)) throw DomainError("p must lie in (1,2)");
}

}  // namespace

double delta_t(const Marginal& x, const Exponents& e, double t) {
  require_t_in_T(x, t);
  return delta(x.affine_pair(1.0, t), e);
}

double delta_slope_at_zero(const Marginal& x, const Exponents& e, double h) {
  if (!(h > 0.0)) throw DomainError("step must be positive");
  const double p = e.p();
  const bool smooth = std::abs(p - 2.0) < 0.05;
  const double d0 = delta_t(x, e, 0.0);
  Eigen::Matrix3d a;
  Eigen::Vector3d b;
  int row = 0;
  for (double k : {1.0, 2.0, 4.0}) {
    const double t = k * h;
    a(row, 0) = t;
    a(row, 1) = smooth ? t * t : std::pow(t, p);
    a(row, 2) = smooth ? t * t * t : t * t;
    b(row) = delta_t(x, e, t) - d0;
    ++row;
  }
  // Column scaling keeps the solve well conditioned.
  const Eigen::Vector3d s = a.colwise().norm().transpose();
  const Eigen::Vector3d c = (a * s.cwiseInverse().asDiagonal()).fullPivLu().solve(b);
  return c(0) / s(0);
}

double f_of_t(const Marginal& x, double p, double t) {
  require_t_in_T(x, t);
  return excess(x.affine_pair(1.0, t), Axis::Y, make_exponents(p, 1.0));
}

MomentQuad MomentQuad::from_distribution(const Marginal& y, double p) {
  double m1 = 0.0;
  for (const MarginalAtom& a : y.atoms()) {
    if (!(a.z > 0.0)) throw DomainError("moment quad needs a positive r.v.");
    m1 += a.w * a.z;
  }
  MomentQuad q{0.0, 0.0, 0.0};
  for (const MarginalAtom& a : y.atoms()) {
    const double z = a.z / m1;
    q.m_p += a.w * std::pow(z, p);
    q.m_pm1 += a.w * std::pow(z, p - 1.0);
    q.m_pm2 += a.w * std::pow(z, p - 2.0);
  }
  return q;
}

bool MomentQuad::lyapunov_chain_holds(double p, double tol) const {
  return m_pm1 <= 1.0 + tol &&
         std::pow(m_pm1, p - 1.0) * std::pow(m_p, 2.0 - p) >= 1.0 - tol &&
         std::pow(m_pm2, p - 1.0) * std::pow(m_pm1, 2.0 - p) >= 1.0 - tol;
}

double H_quad(const MomentQuad& m, double /*p*/) {
  const double d = 1.0 - m.m_pm1;
  return (m.m_p - 1.0) * (m.m_pm2 - 1.0) - d * d;
}

double m_star(double m_p, double p) {
  require_open_unit_p(p);
  if (!(m_p >= 1.0)) throw DomainError("m_p must be >= 1");
  return std::pow(m_p, -(2.0 - p) / (p - 1.0));
}

double m_star_star(double m_pm2, double p) {
  require_open_unit_p(p);
  if (!(m_pm2 >= 1.0)) throw DomainError("m_{p-2} must be >= 1");
  return std::pow(m_pm2, -(p - 1.0) / (2.0 - p));
}

double H_star(double m_p, double p) {
  const double ms = m_star(m_p, p);
  const double r = (2.0 - p) * (2.0 - p) / ((p - 1.0) * (p - 1.0));
  return (m_p - 1.0) * (std::pow(m_p, r) - 1.0) - (1.0 - ms) * (1.0 - ms);
}

double H_star_star(double m_pm2, double p) {
  const double ms = m_star_star(m_pm2, p);
  const double r = (p - 1.0) * (p - 1.0) / ((2.0 - p) * (2.0 - p));
  return (std::pow(m_pm2, r) - 1.0) * (m_pm2 - 1.0) - (1.0 - ms) * (1.0 - ms);
}

double corresponding_m_pm2(double m_p, double p) {
  require_open_unit_p(p);
  return std::pow(m_p, (2.0 - p) * (2.0 - p) / ((p - 1.0) * (p - 1.0)));
}

double ExpSum::operator()(double s) const {
  double v = 0.0;
  for (const ExpTerm& t : terms_) {
    if (t.coef != 0.0) v += t.coef * std::exp(t.rate * s);
  }
  return v;
}

ExpSum ExpSum::derivative() const {
  std::vector<ExpTerm> out;
  for (const ExpTerm& t : terms_) {
    if (t.coef * t.rate != 0.0) out.push_back({t.coef * t.rate, t.rate});
  }
  return ExpSum(std::move(out));
}

ExpSum ExpSum::shifted(double k) const {
  std::vector<ExpTerm> out;
  for (const ExpTerm& t : terms_) out.push_back({t.coef, t.rate + k});
  return ExpSum(std::move(out));
}

HChainSums h_chain_sums(double p) {
  require_open_unit_p(p);
  HChainSums c;
  c.h = ExpSum({{2.0, (2.0 - p) * (p - 1.0)},
                {-1.0, (3.0 - p) * (p - 1.0)},
                {-1.0, (2.0 - p) * p},
                {1.0, 1.0},
                {-1.0, 0.0}});
  c.h1 = c.h.derivative().shifted((p - 2.0) * (p - 1.0));
  c.h2 = c.h1.derivative().shifted(-(p * p - 3.0 * p + 3.0));
  c.h2_prime = c.h2.derivative();
  return c;
}

HChain h_chain(double p, double s) {
  if (!(s >= 0.0)) throw DomainError("s must be >= 0");
  const HChainSums c = h_chain_sums(p);
  return {c.h(s), c.h1(s), c.h2(s), c.h2_prime(s)};
}

double h2_prime_closed_form(double p, double s) {
  require_open_unit_p(p);
  const double a = (2.0 - p) * (p - 1.0);
  return a * a *
         (p * std::exp(-(p - 1.0) * (p - 1.0) * s) +
          (3.0 - p) * std::exp(-(2.0 - p) * (2.0 - p) * s));
}

GapReport substitution_identity(double p, double s) {
  if (!(s >= 0.0)) throw DomainError("s must be >= 0");
  const double m_p = std::exp((p - 1.0) * (p - 1.0) * s);
  const double lhs =
      H_star(m_p, p) * std::exp(-2.0 * (p - 2.0) * (p - 1.0) * s);
  const double rhs = h_chain_sums(p).h(s);
  return make_identity_report("substitution_identity", lhs, rhs,
                              make_exponents(p, 1.0),
                              1e-10 * (1.0 + std::abs(rhs)));
}

double bernoulli_second_derivative(const Exponents& e) {
  const double p = e.p();
  const double th = e.theta();
  if (!(th > 0.0)) throw DomainError("theta must lie in (0,1]");
  if (p > 2.0) {
    const double den = std::pow(2.0, p) - 2.0 * std::pow(th, p);
    if (!(den > 0.0)) throw DomainError("2^p - 2 theta^p must be positive");
    return (p - 1.0) * std::pow(th, p) / den;
  }
  if (p == 2.0) return -(1.0 - th * th) / (2.0 - th * th);
  return -std::numeric_limits<double>::infinity();
}

double measured_second_derivative(const Exponents& e, double h) {
  if (!(h > 0.0)) throw DomainError("step must be positive");
  const Marginal x = make_marginal({{0.0, 0.5}, {1.0, 0.5}});
  const Wide step(h);
  auto d = [&](int k) { return shifted_delta_wide(x, e, step * k); };
  const Wide v = (2 * d(0) - 5 * d(1) + 4 * d(2) - d(3)) / (step * step);
  return static_cast<double>(v);
}

}  // namespace excesslab
