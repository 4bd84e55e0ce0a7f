#pragma once

// Scalar kernels shared by the binary64 path and the extended-precision
// recheck. Real is double or a boost::multiprecision float.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "excesslab/core.hpp"
#include "excesslab/errors.hpp"

namespace excesslab::detail {

template <class Real>
struct Columns {
  std::vector<Real> x;
  std::vector<Real> y;
  std::vector<Real> w;
};

template <class Real>
Columns<Real> columns(const JointDistribution& dist) {
  Columns<Real> c;
  c.x.reserve(dist.size());
  c.y.reserve(dist.size());
  c.w.reserve(dist.size());
  for (const Atom& a : dist.atoms()) {
    c.x.emplace_back(a.x);
    c.y.emplace_back(a.y);
    c.w.emplace_back(a.w);
  }
  return c;
}

template <class Real>
Real pow_conv(const Real& base, const Real& e) {
  using std::pow;
  if (base == 0) {
    if (e == 0) return Real(1);
    if (e < 0) return std::numeric_limits<Real>::infinity();
    return Real(0);
  }
  return pow(base, e);
}

template <class Real, class F>
Real expect(const std::vector<Real>& w, F&& f) {
  Real s = 0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * f(i);
  return s;
}

template <class Real>
Real moment(const std::vector<Real>& z, const std::vector<Real>& w,
            const Real& r) {
  return expect(w, [&](std::size_t i) { return pow_conv(z[i], r); });
}

/// Clamps a radicand that is negative only by rounding; faults otherwise.
template <class Real>
Real clamp_radicand(const Real& value, const Real& scale) {
  using std::abs;
  if (value >= 0) return value;
  const Real slack = Real(1e-12) * std::max(Real(1), abs(scale));
  if (value >= -slack) return Real(0);
  throw NumericFault("negative radicand beyond rounding tolerance");
}

/// E Z^p - theta^p (E Z)^p, together with the magnitude used for clamping.
template <class Real>
Real excess_radicand(const std::vector<Real>& z, const std::vector<Real>& w,
                     const Real& p, const Real& theta) {
  using std::pow;
  const Real mp = moment(z, w, p);
  const Real m1 = moment(z, w, Real(1));
  const Real r = mp - pow(theta, p) * pow(m1, p);
  return clamp_radicand(r, mp);
}

template <class Real>
Real excess(const std::vector<Real>& z, const std::vector<Real>& w,
            const Real& p, const Real& theta) {
  using std::pow;
  const Real r = excess_radicand(z, w, p, theta);
  if (r == 0) return Real(0);
  return pow(r, Real(1) / p);
}

template <class Real>
Real cov_like(const Columns<Real>& c, const Real& p, const Real& theta) {
  using std::pow;
  const Real mixed = expect(c.w, [&](std::size_t i) {
    return pow_conv(c.x[i], p - 1) * c.y[i];
  });
  const Real ex = moment(c.x, c.w, Real(1));
  const Real ey = moment(c.y, c.w, Real(1));
  return mixed - pow(theta, p) * pow_conv(ex, p - 1) * ey;
}

template <class Real>
struct HolderSides {
  Real lhs;
  Real rhs;
};

/// Sides of C_{p,theta}(X,Y) <= E_{p,theta}(X)^{p-1} E_{p,theta}(Y).
template <class Real>
HolderSides<Real> holder_sides(const Columns<Real>& c, const Real& p,
                               const Real& theta) {
  const Real ex = excess(c.x, c.w, p, theta);
  const Real ey = excess(c.y, c.w, p, theta);
  return {cov_like(c, p, theta), pow_conv(ex, p - 1) * ey};
}

/// Sides of E_{p,theta}(X+Y) <= E_{p,theta}(X) + E_{p,theta}(Y).
template <class Real>
HolderSides<Real> minkowski_sides(const Columns<Real>& c, const Real& p,
                                  const Real& theta) {
  std::vector<Real> sum(c.x.size());
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = c.x[i] + c.y[i];
  return {excess(sum, c.w, p, theta),
          excess(c.x, c.w, p, theta) + excess(c.y, c.w, p, theta)};
}

template <class Real>
Real delta(const Columns<Real>& c, const Real& p, const Real& theta) {
  const HolderSides<Real> s = holder_sides(c, p, theta);
  return s.lhs - s.rhs;
}

template <class Real>
Real delta_abc(const Columns<Real>& c, const Real& p, const Real& a,
               const Real& b, const Real& cc) {
  using std::pow;
  const Real q = p / (p - 1);
  const Real mixed = expect(c.w, [&](std::size_t i) {
    return pow_conv(c.x[i], p - 1) * c.y[i];
  });
  const Real ex = moment(c.x, c.w, Real(1));
  const Real ey = moment(c.y, c.w, Real(1));
  const Real exp_ = moment(c.x, c.w, p);
  const Real eyp = moment(c.y, c.w, p);
  const Real rx = clamp_radicand(b + exp_ - pow(ex, p), b + exp_);
  const Real ry = clamp_radicand(cc + eyp - pow(ey, p), cc + eyp);
  return a + mixed - pow_conv(ex, p - 1) * ey -
         pow_conv(rx, 1 / q) * pow_conv(ry, 1 / p);
}

}  // namespace excesslab::detail
