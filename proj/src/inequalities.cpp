#include "excesslab/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "excesslab/errors.hpp"
#include "excesslab/generate.hpp"
#include "excesslab/parallel.hpp"
#include "excesslab/precision.hpp"
#include "excesslab/rng.hpp"
#include "excesslab/shrink.hpp"

namespace excesslab {

GapReport check_excess_holder(const JointDistribution& dist,
                              const Exponents& e) {
  const double lhs = cov_like(dist, e);
  const double rhs = std::pow(excess(dist, Axis::X, e), e.p() - 1.0) *
                     excess(dist, Axis::Y, e);
  return make_gap_report(kLabelHolder, lhs, rhs, e);
}

GapReport check_excess_minkowski(const JointDistribution& dist,
                                 const Exponents& e) {
  const double lhs = excess(dist.with_x_plus_ty(1.0), Axis::X, e);
  const double rhs = excess(dist, Axis::X, e) + excess(dist, Axis::Y, e);
  return make_gap_report(kLabelMinkowski, lhs, rhs, e);
}

GapReport check_norm_order(const JointDistribution& dist, Axis axis,
                           double r) {
  return make_gap_report("norm_order", p_norm(dist, axis, 1.0),
                         p_norm(dist, axis, r));
}

LyapunovResult check_lyapunov(const JointDistribution& dist, Axis axis,
                              std::span<const double> r_grid) {
  if (r_grid.size() < 3) throw DomainError("Lyapunov grid needs >= 3 points");
  if (!std::is_sorted(r_grid.begin(), r_grid.end()) ||
      std::adjacent_find(r_grid.begin(), r_grid.end()) != r_grid.end()) {
    throw DomainError("Lyapunov grid must be strictly increasing");
  }
  std::vector<double> m(r_grid.size());
  for (std::size_t k = 0; k < r_grid.size(); ++k) {
    m[k] = moment(dist, axis, r_grid[k]);
  }
  LyapunovResult result;
  result.worst = make_gap_report("lyapunov", 0.0, 0.0);
  double worst_rel = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k + 1 < r_grid.size(); ++k) {
    if (!std::isfinite(m[k - 1]) || !std::isfinite(m[k]) ||
        !std::isfinite(m[k + 1])) {
      ++result.infinite_triples;
      continue;
    }
    const double l =
        (r_grid[k + 1] - r_grid[k]) / (r_grid[k + 1] - r_grid[k - 1]);
    const double rhs = std::pow(m[k - 1], l) * std::pow(m[k + 1], 1.0 - l);
    GapReport r = make_gap_report("lyapunov", m[k], rhs);
    const double rel = r.gap / std::max({1.0, std::abs(r.lhs), std::abs(r.rhs)});
    if (rel > worst_rel) {
      worst_rel = rel;
      result.worst = r;
    }
  }
  return result;
}

GapReport check_chebyshev_integral(std::span<const double> z,
                                   std::span<const double> f,
                                   std::span<const double> g,
                                   std::span<const double> weights) {
  const std::size_t n = z.size();
  if (n == 0 || f.size() != n || g.size() != n || weights.size() != n) {
    throw DomainError("Chebyshev tables must be nonempty and equally sized");
  }
  double wsum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw DomainError("Chebyshev weights must be positive and finite");
    }
    wsum += w;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return z[a] < z[b];
  });
  for (std::size_t k = 1; k < n; ++k) {
    const std::size_t a = order[k - 1];
    const std::size_t b = order[k];
    if (z[a] == z[b] && (f[a] != f[b] || g[a] != g[b])) {
      throw DomainError("Chebyshev tables assign two values to one z");
    }
    if (f[b] < f[a] || g[b] < g[a]) {
      throw DomainError("Chebyshev tables must be nondecreasing in z");
    }
  }
  double ef = 0.0, eg = 0.0, efg = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = weights[i] / wsum;
    ef += w * f[i];
    eg += w * g[i];
    efg += w * f[i] * g[i];
  }
  return make_gap_report("chebyshev_integral", ef * eg, efg);
}

GapReport check_young(double a, double b, const Exponents& e) {
  if (!(a >= 0.0) || !(b >= 0.0)) {
    throw DomainError("Young's inequality needs a, b >= 0");
  }
  return make_gap_report(
      "young", a * b, std::pow(a, e.p()) / e.p() + std::pow(b, e.q()) / e.q(),
      e);
}

double lemma_abc_d(const JointDistribution& dist, const Exponents& e,
                   double gamma, double b) {
  return delta_abc(dist, e,
                   MassAtInfinity{gamma * b, b, std::pow(gamma, e.p()) * b});
}

double lemma_abc_d_prime(const JointDistribution& dist, const Exponents& e,
                         double gamma, double b) {
  const double p = e.p();
  const double q = e.q();
  const double vx = moment(dist, Axis::X, p) -
                    std::pow(moment(dist, Axis::X, 1.0), p);
  const double vy = moment(dist, Axis::Y, p) -
                    std::pow(moment(dist, Axis::Y, 1.0), p);
  const double c = std::pow((std::pow(gamma, p) * b + vy) / (b + vx), 1.0 / p);
  return gamma - c / q - std::pow(gamma, p) * std::pow(c, -p / q) / p;
}

LemmaAbcReport check_lemma_abc_monotone(const JointDistribution& dist,
                                        const Exponents& e, double gamma,
                                        std::span<const double> b_grid) {
  if (!(gamma > 0.0)) throw DomainError("gamma must be > 0");
  if (b_grid.empty()) throw DomainError("empty B grid");
  for (std::size_t k = 0; k < b_grid.size(); ++k) {
    if (!(b_grid[k] > 0.0) || (k > 0 && !(b_grid[k] > b_grid[k - 1]))) {
      throw DomainError("B grid must be positive and strictly increasing");
    }
  }
  const Exponents e1 = e.with_theta(1.0);
  const double d0 = delta(dist, e1);
  std::vector<double> d(b_grid.size());
  for (std::size_t k = 0; k < b_grid.size(); ++k) {
    d[k] = lemma_abc_d(dist, e1, gamma, b_grid[k]);
  }

  double max_slope = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < d.size(); ++k) {
    max_slope = std::max(max_slope,
                         (d[k + 1] - d[k]) / (b_grid[k + 1] - b_grid[k]));
  }
  // A single point only checks the bound against d(0).
  const double slope_or_zero = d.size() > 1 ? max_slope : (d[0] - d0) / b_grid[0];

  LemmaAbcReport r;
  r.monotone =
      make_gap_report("lemma_abc_slope", slope_or_zero, 0.0, e1, 1e-8);
  // d(B) is a difference of terms of size ~ gamma B, so the tolerance
  // follows the terms rather than the result.
  const double dmax = *std::max_element(d.begin(), d.end());
  r.bound = make_gap_report(
      "lemma_abc_bound", dmax, d0, e1,
      std::max(default_tolerance(dmax, d0), 1e-9 * gamma * b_grid.back()));

  double max_dprime = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < b_grid.size(); ++k) {
    const double b = b_grid[k];
    const double dp = lemma_abc_d_prime(dist, e1, gamma, b);
    max_dprime = std::max(max_dprime, dp);
    const double h = 1e-5 * b;
    const double fd = (lemma_abc_d(dist, e1, gamma, b + h) -
                       lemma_abc_d(dist, e1, gamma, b - h)) /
                      (2.0 * h);
    r.derivative_mismatch = std::max(
        r.derivative_mismatch, std::abs(fd - dp) / std::max(1.0, std::abs(dp)));
  }
  r.derivative_sign = make_gap_report("lemma_abc_derivative", max_dprime, 0.0,
                                      e1, 1e-9 * std::max(1.0, gamma));
  return r;
}

ThetaReductionReport check_theta_reduction(const JointDistribution& dist,
                                           const Exponents& e) {
  const double p = e.p();
  const double th = e.theta();
  const double f = 1.0 - std::pow(th, p);
  ThetaReductionReport r;
  r.masses.a = f * [&] {
    double s = 0.0;
    for (const Atom& at : dist.atoms()) {
      s += at.w * power(at.x, p - 1.0) * at.y;
    }
    return s;
  }();
  r.masses.b = f * moment(dist, Axis::X, p);
  r.masses.c = f * moment(dist, Axis::Y, p);

  const double lhs = delta(dist, e);
  const JointDistribution shrunk = dist.scaled(th, th);
  const double rhs = delta_abc(shrunk, e, r.masses);
  r.identity = make_identity_report("theta_reduction_identity", lhs, rhs, e,
                                    1e-10 * std::max({1.0, std::abs(lhs),
                                                      std::abs(rhs)}));
  r.bound = make_gap_report("theta_reduction_bound", lhs,
                            delta(shrunk, e.with_theta(1.0)), e);
  return r;
}

NegativeSlopeReport check_negative_slope_reduction(const Marginal& x, double k,
                                                   double t,
                                                   const Exponents& e) {
  if (!(k <= 0.0)) throw DomainError("negative slope reduction needs k <= 0");
  const JointDistribution pair = x.affine_pair(k, t);
  const Exponents e1 = e.with_theta(1.0);
  const double p = e.p();
  double mixed = 0.0;
  for (const Atom& a : pair.atoms()) mixed += a.w * power(a.x, p - 1.0) * a.y;
  const double ex_pm1 = moment(pair, Axis::X, p - 1.0);
  const double ey = moment(pair, Axis::Y, 1.0);
  const double ex = moment(pair, Axis::X, 1.0);

  NegativeSlopeReport r;
  r.chebyshev_step = make_gap_report("negative_slope_chebyshev", mixed,
                                     ex_pm1 * ey, e1);
  r.lyapunov_step = make_gap_report("negative_slope_lyapunov", ex_pm1 * ey,
                                    power(ex, p - 1.0) * ey, e1);
  const double d = delta(pair, e1);
  r.delta = make_gap_report("negative_slope_delta", d, 0.0, e1,
                            default_tolerance(cov_like(pair, e1), 0.0));
  return r;
}

void validate(const SweepConfig& c) {
  if (c.trials < 1) throw DomainError("sweep needs trials >= 1");
  if (c.max_atoms < 1) throw DomainError("sweep needs max_atoms >= 1");
  if (!(c.p_range.lo > 1.0) || !(c.p_range.hi >= c.p_range.lo) ||
      !std::isfinite(c.p_range.hi)) {
    throw DomainError("p range must satisfy 1 < lo <= hi < inf");
  }
  if (!(c.theta_range.lo >= 0.0) || !(c.theta_range.hi <= 1.0) ||
      !(c.theta_range.hi >= c.theta_range.lo)) {
    throw DomainError("theta range must lie within [0,1]");
  }
  if (!(c.value_scale > 0.0) || !std::isfinite(c.value_scale)) {
    throw DomainError("value scale must be positive and finite");
  }
}

namespace {

double draw(Rng& rng, Interval i) {
  return i.lo == i.hi ? i.lo : rng.uniform(i.lo, i.hi);
}

double relative_gap(const GapReport& r) {
  return r.gap / std::max({1.0, std::abs(r.lhs), std::abs(r.rhs)});
}

// A binary64 failure counts as a violation only if the extended-precision
// gap also exceeds the tolerance.
bool confirmed(const GapReport& r, const JointDistribution& dist,
               const Exponents& e) {
  if (r.holds) return false;
  const Wide g = r.label == kLabelHolder ? holder_gap_wide(dist, e)
                                         : minkowski_gap_wide(dist, e);
  return g > Wide(r.tol);
}

struct TrialOutcome {
  double rel = -std::numeric_limits<double>::infinity();
  double gap = 0.0;
  bool holder_failed = false;
  bool minkowski_failed = false;
  bool unconfirmed = false;
  bool worst_is_holder = true;
};

}  // namespace

SweepTrial sweep_trial(const SweepConfig& config, std::size_t index) {
  Rng rng = Rng::substream(config.seed, index);
  const double p = draw(rng, config.p_range);
  const double theta = draw(rng, config.theta_range);
  InstanceShape shape;
  shape.max_atoms = config.max_atoms;
  shape.value_scale = config.value_scale;
  JointDistribution dist = random_joint(rng, shape);
  return {std::move(dist), make_exponents(p, theta)};
}

SweepSummary sweep(const SweepConfig& config) {
  validate(config);
  std::vector<TrialOutcome> outcomes(config.trials);
  parallel_for(config.trials, resolve_threads(config.threads),
               [&](std::size_t i) {
                 const SweepTrial t = sweep_trial(config, i);
                 const GapReport h = check_excess_holder(t.dist, t.exponents);
                 const GapReport m = check_excess_minkowski(t.dist, t.exponents);
                 TrialOutcome& o = outcomes[i];
                 const double rh = relative_gap(h);
                 const double rm = relative_gap(m);
                 o.worst_is_holder = rh >= rm;
                 o.rel = std::max(rh, rm);
                 o.gap = o.worst_is_holder ? h.gap : m.gap;
                 const bool hc = confirmed(h, t.dist, t.exponents);
                 const bool mc = confirmed(m, t.dist, t.exponents);
                 o.holder_failed = hc;
                 o.minkowski_failed = mc;
                 o.unconfirmed = (!h.holds && !hc) || (!m.holds && !mc);
               });

  SweepSummary s;
  s.trials = config.trials;
  s.seed = config.seed;
  std::size_t worst_index = 0;
  std::optional<std::size_t> worst_violation;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const TrialOutcome& o = outcomes[i];
    if (o.holder_failed || o.minkowski_failed) {
      ++s.violations;
      if (!worst_violation || o.rel > outcomes[*worst_violation].rel) {
        worst_violation = i;
      }
    }
    s.holder_violations += o.holder_failed ? 1 : 0;
    s.minkowski_violations += o.minkowski_failed ? 1 : 0;
    s.unconfirmed += o.unconfirmed ? 1 : 0;
    if (o.rel > outcomes[worst_index].rel) worst_index = i;
  }
  s.worst_relative_gap = outcomes[worst_index].rel;
  s.worst_gap = outcomes[worst_index].gap;

  const SweepTrial t = sweep_trial(config, worst_index);
  const bool holder = outcomes[worst_index].worst_is_holder;
  GapReport report = holder ? check_excess_holder(t.dist, t.exponents)
                            : check_excess_minkowski(t.dist, t.exponents);
  s.worst = SweepInstance{t.dist, t.exponents, report.label, report};

  if (config.shrink_worst && worst_violation) {
    const SweepTrial v = sweep_trial(config, *worst_violation);
    const bool vh = outcomes[*worst_violation].holder_failed;
    const Exponents e = v.exponents;
    auto still_fails = [&](const JointDistribution& d) {
      const GapReport r =
          vh ? check_excess_holder(d, e) : check_excess_minkowski(d, e);
      return confirmed(r, d, e);
    };
    const JointDistribution small = shrink(v.dist, still_fails);
    GapReport r = vh ? check_excess_holder(small, e)
                     : check_excess_minkowski(small, e);
    s.shrunk_violation = SweepInstance{small, e, r.label, r};
  }
  return s;
}

}  // namespace excesslab
