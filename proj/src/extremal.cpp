#include "excesslab/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "excesslab/errors.hpp"

namespace excesslab {

MomentSpec make_moment_spec(double m11, double m1p, double m21, double m2p,
                            const Exponents& e) {
  for (double m : {m11, m1p, m21, m2p}) {
    if (!(m > 0.0) || !std::isfinite(m)) {
      throw DomainError("moment targets must be finite and strictly positive");
    }
  }
  const double p = e.p();
  // Lyapunov: m1p >= m11^p; allow rounding of targets computed from data.
  const bool fx = m1p >= std::pow(m11, p) * (1.0 - 1e-12);
  const bool fy = m2p >= std::pow(m21, p) * (1.0 - 1e-12);
  return MomentSpec(m11, m1p, m21, m2p, p, fx && fy);
}

void validate(const CompactifiedPoint& point) {
  const std::size_t n = point.w.size();
  if (n == 0 || point.u.size() != n || point.v.size() != n) {
    throw DomainError("compactified point needs equally sized nonempty U, V, W");
  }
  for (const auto* vec : {&point.u, &point.v, &point.w}) {
    for (double x : *vec) {
      if (!(x >= 0.0) || !std::isfinite(x)) {
        throw DomainError("compactified coordinates must be finite and >= 0");
      }
    }
  }
}

Compactified compactify(const JointDistribution& dist, const Exponents& e) {
  const double p = e.p();
  CompactifiedPoint pt;
  double m11 = 0.0, m1p = 0.0, m21 = 0.0, m2p = 0.0;
  for (const Atom& a : dist.atoms()) {
    const double xp = power(a.x, p);
    const double yp = power(a.y, p);
    pt.u.push_back(xp * a.w);
    pt.v.push_back(yp * a.w);
    pt.w.push_back(a.w);
    m11 += a.w * a.x;
    m21 += a.w * a.y;
    m1p += a.w * xp;
    m2p += a.w * yp;
  }
  return {std::move(pt), make_moment_spec(m11, m1p, m21, m2p, e)};
}

PointMoments moments_of(const CompactifiedPoint& point, const Exponents& e) {
  validate(point);
  const double ip = 1.0 / e.p();
  const double iq = 1.0 / e.q();
  PointMoments m{0.0, 0.0, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < point.size(); ++i) {
    const double wq = power(point.w[i], iq);
    m.sum_w += point.w[i];
    m.m1p += point.u[i];
    m.m2p += point.v[i];
    m.m11 += power(point.u[i], ip) * wq;
    m.m21 += power(point.v[i], ip) * wq;
  }
  return m;
}

double feasibility_residual(const CompactifiedPoint& point,
                            const MomentSpec& spec, const Exponents& e) {
  const PointMoments m = moments_of(point, e);
  return std::max({std::abs(m.sum_w - 1.0),
                   std::abs(m.m1p - spec.m1p()) / spec.m1p(),
                   std::abs(m.m2p - spec.m2p()) / spec.m2p(),
                   std::abs(m.m11 - spec.m11()) / spec.m11(),
                   std::abs(m.m21 - spec.m21()) / spec.m21()});
}

bool supports_overlap(const CompactifiedPoint& point) {
  const SupportIndex iw = support_of(point.w);
  return !intersect(support_of(point.u), iw).empty() &&
         !intersect(support_of(point.v), iw).empty();
}

namespace {

double dot_term(const CompactifiedPoint& point, const Exponents& e) {
  const double ip = 1.0 / e.p();
  const double iq = 1.0 / e.q();
  double s = 0.0;
  for (std::size_t i = 0; i < point.size(); ++i) {
    s += power(point.u[i], iq) * power(point.v[i], ip);
  }
  return s;
}

double tilde_from_moments(double dot, double m11, double m1p, double m21,
                          double m2p, const Exponents& e) {
  const double p = e.p();
  double rx = m1p - std::pow(m11, p);
  double ry = m2p - std::pow(m21, p);
  if (rx < 0.0) {
    if (rx < -1e-12 * m1p) throw DomainError("infeasible spec: m1p < m11^p");
    rx = 0.0;
  }
  if (ry < 0.0) {
    if (ry < -1e-12 * m2p) throw DomainError("infeasible spec: m2p < m21^p");
    ry = 0.0;
  }
  return dot - std::pow(m11, p - 1.0) * m21 -
         power(rx, 1.0 / e.q()) * power(ry, 1.0 / p);
}

}  // namespace

double objective_tilde(const CompactifiedPoint& point, const MomentSpec& spec,
                       const Exponents& e) {
  validate(point);
  return tilde_from_moments(dot_term(point, e), spec.m11(), spec.m1p(),
                            spec.m21(), spec.m2p(), e);
}

double objective_tilde_intrinsic(const CompactifiedPoint& point,
                                 const Exponents& e) {
  const PointMoments m = moments_of(point, e);
  return tilde_from_moments(dot_term(point, e), m.m11, m.m1p, m.m21, m.m2p, e);
}

double LagrangeMultipliers::max_abs() const {
  return std::max({std::abs(alpha), std::abs(lambda), std::abs(mu),
                   std::abs(nu), std::abs(rho), std::abs(tau)});
}

double LagrangeResiduals::max_abs() const {
  double m = 0.0;
  for (const auto* fam : {&eq1, &eq2, &eq3}) {
    for (const IndexedResidual& r : *fam) m = std::max(m, std::abs(r.value));
  }
  return m;
}

namespace {
constexpr double kSingularGuard = 1e-12;
}

LagrangeResiduals lagrange_residuals(const CompactifiedPoint& point,
                                     const LagrangeMultipliers& m,
                                     const Exponents& e) {
  validate(point);
  if (m.max_abs() == 0.0) {
    throw DomainError("Lagrange multipliers must not all vanish");
  }
  const double p = e.p();
  const double ip = 1.0 / p;
  const double iq = 1.0 / e.q();
  LagrangeResiduals r;
  for (std::size_t i = 0; i < point.size(); ++i) {
    const double u = point.u[i];
    const double v = point.v[i];
    const double w = point.w[i];
    if (u > 0.0) {
      if (u >= kSingularGuard) {
        const double val = m.alpha * (p - 1.0) * std::pow(v / u, ip) -
                           m.lambda * std::pow(w / u, iq) - m.nu;
        r.eq1.push_back({i, val, false});
      } else {
        const double val =
            m.alpha * (p - 1.0) * std::pow(u, iq) * std::pow(v, ip) -
            m.lambda * std::pow(u, ip) * std::pow(w, iq) - m.nu * u;
        r.eq1.push_back({i, val, true});
      }
    }
    if (v > 0.0) {
      if (v >= kSingularGuard) {
        const double val = m.alpha * std::pow(u / v, iq) -
                           m.mu * std::pow(w / v, iq) - m.rho;
        r.eq2.push_back({i, val, false});
      } else {
        const double val = m.alpha * std::pow(u, iq) * std::pow(v, ip) -
                           m.mu * std::pow(v, ip) * std::pow(w, iq) - m.rho * v;
        r.eq2.push_back({i, val, true});
      }
    }
    if (w > 0.0) {
      if (w >= kSingularGuard) {
        const double val = m.lambda * std::pow(u / w, ip) +
                           m.mu * std::pow(v / w, ip) + m.tau;
        r.eq3.push_back({i, val, false});
      } else {
        const double val = m.lambda * std::pow(u, ip) * std::pow(w, iq) +
                           m.mu * std::pow(v, ip) * std::pow(w, iq) + m.tau * w;
        r.eq3.push_back({i, val, true});
      }
    }
  }
  return r;
}

MultiplierFit fit_multipliers(const CompactifiedPoint& point,
                              const Exponents& e) {
  validate(point);
  const double p = e.p();
  const double ip = 1.0 / p;
  const double iq = 1.0 / e.q();
  std::vector<std::array<double, 6>> rows;
  for (std::size_t i = 0; i < point.size(); ++i) {
    const double u = point.u[i];
    const double v = point.v[i];
    const double w = point.w[i];
    const double uv = std::pow(u, iq) * std::pow(v, ip);
    const double uw = std::pow(u, ip) * std::pow(w, iq);
    const double vw = std::pow(v, ip) * std::pow(w, iq);
    // columns: alpha, lambda, mu, nu, rho, tau
    if (u > 0.0) rows.push_back({(p - 1.0) * uv, -uw, 0.0, -u, 0.0, 0.0});
    if (v > 0.0) rows.push_back({uv, 0.0, -vw, 0.0, -v, 0.0});
    if (w > 0.0) rows.push_back({0.0, uw, vw, 0.0, 0.0, w});
  }
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), 6);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (int c = 0; c < 6; ++c) m(static_cast<Eigen::Index>(r), c) = rows[r][c];
  }
  Eigen::VectorXd norms = m.colwise().norm().transpose();

  Eigen::VectorXd scaled_mult(6);
  double residual = 0.0;
  Eigen::Index zero_col = -1;
  for (Eigen::Index c = 0; c < 6; ++c) {
    if (norms(c) == 0.0) {
      zero_col = c;
      break;
    }
  }
  if (zero_col >= 0) {
    // A multiplier with no coefficients solves the system on its own.
    scaled_mult.setZero();
    scaled_mult(zero_col) = 1.0;
    norms(zero_col) = 1.0;
  } else {
    for (Eigen::Index c = 0; c < 6; ++c) m.col(c) /= norms(c);
    if (m.rows() < 6) {
      // Underdetermined: an exact null vector exists.
      Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
      scaled_mult = lu.kernel().col(0).normalized();
    } else {
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
      scaled_mult = svd.matrixV().col(5);
    }
    residual = (m * scaled_mult).cwiseAbs().maxCoeff();
  }
  Eigen::VectorXd raw = scaled_mult.cwiseQuotient(norms);
  if (raw(0) < 0.0 || (raw(0) == 0.0 && raw.sum() < 0.0)) raw = -raw;
  raw /= raw.cwiseAbs().maxCoeff();

  MultiplierFit fit;
  fit.multipliers = {raw(0), raw(1), raw(2), raw(3), raw(4), raw(5)};
  fit.scaled_residual = residual;
  return fit;
}

MassExtraction extract_mass_at_infinity(const CompactifiedPoint& point,
                                        const Exponents& e) {
  validate(point);
  const double ip = 1.0 / e.p();
  const double iq = 1.0 / e.q();
  std::vector<Atom> atoms;
  MassExtraction out{JointDistribution::from_positive_weights({{0, 0, 1}}),
                     {},
                     {}};
  for (std::size_t i = 0; i < point.size(); ++i) {
    const double u = point.u[i];
    const double v = point.v[i];
    const double w = point.w[i];
    if (w > 0.0) {
      atoms.push_back({std::pow(u / w, ip), std::pow(v / w, ip), w});
      out.indices.push_back(i);
    } else {
      out.mass.a += power(u, iq) * power(v, ip);
      out.mass.b += u;
      out.mass.c += v;
    }
  }
  if (atoms.empty()) throw DomainError("point has no mass on I_W");
  out.dist = JointDistribution::from_positive_weights(std::move(atoms));
  return out;
}

namespace {

const char* case_label(DegenerateCase c) {
  switch (c) {
    case DegenerateCase::zero_mixed_moment: return "subcase_1.1";
    case DegenerateCase::contradiction: return "subsubcase_1.2.1";
    case DegenerateCase::x_constant_lambda: return "subsubcase_1.2.2a";
    case DegenerateCase::x_zero: return "subsubcase_1.2.2b";
    case DegenerateCase::y_proportional: return "subcase_2.1";
    case DegenerateCase::x_constant_rho: return "subcase_2.2";
  }
  return "unknown";
}

bool x_is_constant(const JointDistribution& d) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const Atom& a : d.atoms()) {
    lo = std::min(lo, a.x);
    hi = std::max(hi, a.x);
  }
  return hi - lo <= 1e-9 * std::max(1.0, hi);
}

}  // namespace

DegenerateClassification classify_degenerate(const CompactifiedPoint& point,
                                             const LagrangeMultipliers& mult,
                                             const Exponents& e,
                                             std::optional<double> zero_tol) {
  const double scale = mult.max_abs();
  const double tol = zero_tol.value_or(1e-7 * scale);
  if (!(scale > tol)) {
    throw DomainError("all Lagrange multipliers vanish within tolerance");
  }
  if (std::abs(mult.mu) > tol) {
    throw DomainError("mu is nonzero: Y = kX + t, use the affine branch");
  }
  auto zero = [tol](double v) { return std::abs(v) <= tol; };

  DegenerateClassification out;
  if (zero(mult.rho)) {
    if (!zero(mult.alpha)) {
      out.which = DegenerateCase::zero_mixed_moment;
    } else if (!zero(mult.lambda)) {
      out.which = DegenerateCase::x_constant_lambda;
    } else if (!zero(mult.nu)) {
      out.which = DegenerateCase::x_zero;
    } else {
      out.which = DegenerateCase::contradiction;
    }
  } else {
    out.which = zero(mult.lambda) ? DegenerateCase::y_proportional
                                  : DegenerateCase::x_constant_rho;
  }
  out.label = case_label(out.which);

  if (out.which == DegenerateCase::contradiction) {
    out.conclusion = "the Lagrange system forces tau = 0, contradicting a "
                     "nonzero multiplier vector";
    out.verified = !zero(mult.tau) || scale > tol;
    return out;
  }

  const MassExtraction ex = extract_mass_at_infinity(point, e);
  const JointDistribution& d = ex.dist;
  const Exponents e1 = e.with_theta(1.0);
  const double dp = delta(d, e1);
  out.delta = dp;
  const double dtol = default_tolerance(cov_like(d, e1), 0.0);

  switch (out.which) {
    case DegenerateCase::zero_mixed_moment: {
      double mixed = 0.0, scale_xy = 0.0;
      for (const Atom& a : d.atoms()) {
        const double t = power(a.x, e.p() - 1.0) * a.y;
        mixed += a.w * t;
        scale_xy = std::max({scale_xy, a.x, a.y});
      }
      out.conclusion = "E X^{p-1} Y = 0, hence Delta_p <= 0";
      out.verified =
          mixed <= 1e-12 * std::max(1.0, std::pow(scale_xy, e.p())) &&
          dp <= dtol;
      break;
    }
    case DegenerateCase::x_constant_lambda:
    case DegenerateCase::x_constant_rho:
      out.conclusion = "X is constant, hence Delta_p = 0";
      out.verified = x_is_constant(d) && std::abs(dp) <= dtol;
      break;
    case DegenerateCase::x_zero: {
      double hi = 0.0;
      for (const Atom& a : d.atoms()) hi = std::max(hi, a.x);
      out.conclusion = "X = 0, hence Delta_p = 0";
      out.verified = hi <= 1e-12 && std::abs(dp) <= dtol;
      break;
    }
    case DegenerateCase::y_proportional: {
      double sxy = 0.0, sxx = 0.0, scale_y = 0.0;
      for (const Atom& a : d.atoms()) {
        sxy += a.w * a.x * a.y;
        sxx += a.w * a.x * a.x;
        scale_y = std::max(scale_y, a.y);
      }
      const double c = sxx > 0.0 ? sxy / sxx : 0.0;
      double dev = 0.0;
      for (const Atom& a : d.atoms()) dev = std::max(dev, std::abs(a.y - c * a.x));
      out.proportionality = c;
      out.conclusion = "Y = cX, hence Delta_p = 0";
      out.verified = dev <= 1e-9 * std::max(1.0, scale_y) && std::abs(dp) <= dtol;
      break;
    }
    case DegenerateCase::contradiction:
      break;
  }
  return out;
}

}  // namespace excesslab
