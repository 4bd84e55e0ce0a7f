// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <string>
#include <vector>

#include "excesslab/core.hpp"
#include "excesslab/errors.hpp"
#include "excesslab/extremal.hpp"
#include "excesslab/functionals.hpp"
#include "excesslab/generate.hpp"
#include "excesslab/inequalities.hpp"
#include "excesslab/rng.hpp"
#include "excesslab/scalar_analysis.hpp"
#include "excesslab/search.hpp"

using namespace excesslab;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

int significant_digits(const std::string& s) {
  int n = 0;
  bool leading = true;
  for (char c : s) {
    if (c == 'e' || c == 'E') break;
    if (c < '0' || c > '9') continue;
    if (leading && c == '0') continue;
    leading = false;
    ++n;
  }
  return n;
}

void criterion1() {
  SweepConfig cfg;
  cfg.trials = 100000;
  cfg.seed = 1;
  const auto t0 = std::chrono::steady_clock::now();
  const SweepSummary s = sweep(cfg);
  const double secs = seconds_since(t0);
  report(1, s.violations == 0 && s.unconfirmed == 0 && secs <= 60.0,
         "trials=" + std::to_string(s.trials) +
             " violations=" + std::to_string(s.violations) +
             " unconfirmed=" + std::to_string(s.unconfirmed) +
             fmt(" worst_rel_gap=%.3g", s.worst_relative_gap) +
             fmt(" seconds=%.1f", secs));
}

bool certificate_ok(const ViolationCertificate& c) {
  const GapReport r = replay(c);
  return r.gap > 10.0 * r.tol && c.gap > 10.0 * c.tol && c.recheck_gap > 0.0 &&
         significant_digits(c.recheck_decimal) >= 30 &&
         c.recheck_decimal.front() != '-';
}

void criterion2() {
  std::string failed;
  double worst_d2 = 0.0;
  for (double p : {2.5, 3.0, 4.0, 10.0}) {
    for (double th : {0.25, 0.5, 1.0}) {
      const Exponents e = make_exponents(p, th);
      const std::string cell = fmt("(%g,", p) + fmt("%g)", th);
      try {
        if (!certificate_ok(paper_counterexample(e))) failed += " holder" + cell;
      } catch (const std::exception&) {
        failed += " holder" + cell;
      }
      try {
        if (!certificate_ok(minkowski_counterexample(e))) failed += " minkowski" + cell;
      } catch (const std::exception&) {
        failed += " minkowski" + cell;
      }
      const double want = bernoulli_second_derivative(e);
      const double rel = std::abs(measured_second_derivative(e) - want) / want;
      worst_d2 = std::max(worst_d2, rel);
      if (!(rel <= 1e-3)) failed += " d2" + cell;
    }
  }
  const Exponents e3 = make_exponents(3.0, 1.0);
  const double third = bernoulli_second_derivative(e3);
  if (std::abs(third - 1.0 / 3.0) > 1e-15) failed += " d2_p3_closed";
  if (std::abs(measured_second_derivative(e3) - 1.0 / 3.0) > 1e-3 / 3.0) {
    failed += " d2_p3_measured";
  }
  report(2, failed.empty(),
         fmt("worst_d2_rel=%.3g", worst_d2) +
             (failed.empty() ? std::string() : " failing:" + failed));
}

void criterion3() {
  bool ok = true;
  double min_h = std::numeric_limits<double>::infinity();
  double min_h2p = std::numeric_limits<double>::infinity();
  double max_h0 = 0.0;
  int identity_failures = 0;
  for (int i = 0; i < 19; ++i) {
    const double p = 1.05 + 0.05 * i;
    max_h0 = std::max(max_h0, std::abs(h_chain(p, 0.0).h));
    for (int k = 0; k < 2000; ++k) {
      const double s = 50.0 * k / 1999.0;
      const HChain c = h_chain(p, s);
      min_h = std::min(min_h, c.h);
      min_h2p = std::min(min_h2p, c.h2_prime);
      if (!substitution_identity(p, s).holds) ++identity_failures;
    }
  }
  ok = min_h >= -1e-12 && max_h0 <= 4 * std::numeric_limits<double>::epsilon() &&
       min_h2p > 0.0 && identity_failures == 0;
  report(3, ok,
         fmt("min_h=%.3g", min_h) + fmt(" max|h(0)|=%.3g", max_h0) +
             fmt(" min_h2'=%.3g", min_h2p) +
             " identity_failures=" + std::to_string(identity_failures));
}

void criterion4() {
  Rng rng(4);
  int mono_fail = 0, bound_fail = 0;
  double worst_slope = -std::numeric_limits<double>::infinity();
  double worst_bound = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 1000; ++i) {
    const JointDistribution d = random_joint(rng, {});
    const Exponents e = make_exponents(rng.uniform(1.01, 2.0), 1.0);
    const double gamma = std::exp(rng.uniform(-3.0, 3.0));
    std::vector<double> grid(25);
    const double lo = rng.uniform(-4.0, 0.0);
    for (std::size_t k = 0; k < grid.size(); ++k) grid[k] = std::pow(10.0, lo + 0.25 * k);
    const LemmaAbcReport r = check_lemma_abc_monotone(d, e, gamma, grid);
    worst_slope = std::max(worst_slope, r.monotone.lhs);
    if (!r.monotone.holds) ++mono_fail;
    if (!r.bound.holds) ++bound_fail;

    const double d0 = delta(d, e);
    for (int j = 0; j < 5; ++j) {
      MassAtInfinity m;
      m.b = std::exp(rng.uniform(-5.0, 5.0));
      m.c = std::exp(rng.uniform(-5.0, 5.0));
      m.a = rng.uniform() * std::pow(m.b, 1.0 / e.q()) * std::pow(m.c, 1.0 / e.p());
      const double dm = delta_abc(d, e, m);
      const double gap = dm - d0;
      worst_bound = std::max(worst_bound, gap / std::max({1.0, std::abs(dm), std::abs(d0)}));
      if (gap > default_tolerance(dm, d0)) ++bound_fail;
    }
  }
  report(4, mono_fail == 0 && bound_fail == 0,
         "monotone_failures=" + std::to_string(mono_fail) +
             " bound_failures=" + std::to_string(bound_fail) +
             fmt(" worst_slope=%.3g", worst_slope) +
             fmt(" worst_bound_rel=%.3g", worst_bound));
}

void criterion5() {
  Rng rng(5);
  int done = 0, id_fail = 0, trip_fail = 0;
  double worst = 0.0, worst_trip = 0.0;
  while (done < 1000) {
    const JointDistribution d = random_joint(rng, {});
    const Exponents e = make_exponents(rng.uniform(1.01, 4.0), 1.0);
    double mx = 0.0, my = 0.0;
    for (const Atom& a : d.atoms()) {
      mx += a.x * a.w;
      my += a.y * a.w;
    }
    if (mx == 0.0 || my == 0.0) continue;
    ++done;
    const Compactified c = compactify(d, e);
    const double want = delta(d, e);
    const double got = objective_tilde(c.point, c.spec, e);
    const double rel = std::abs(got - want) / std::max(1.0, std::abs(want));
    worst = std::max(worst, rel);
    if (rel > 1e-10) ++id_fail;

    // Every compactified weight is positive, so nothing escapes to infinity.
    const MassExtraction ex = extract_mass_at_infinity(c.point, e);
    bool trip = ex.mass.a == 0.0 && ex.mass.b == 0.0 && ex.mass.c == 0.0 &&
                ex.dist.size() == d.size();
    for (std::size_t k = 0; trip && k < d.size(); ++k) {
      const Atom& a = d.atoms()[k];
      const Atom& b = ex.dist.atoms()[k];
      const double err = std::max({std::abs(a.x - b.x) / std::max(1.0, a.x),
                                   std::abs(a.y - b.y) / std::max(1.0, a.y),
                                   std::abs(a.w - b.w)});
      worst_trip = std::max(worst_trip, err);
      trip = err <= 1e-13;
    }
    if (!trip) ++trip_fail;
  }
  report(5, id_fail == 0 && trip_fail == 0,
         "identity_failures=" + std::to_string(id_fail) +
             " roundtrip_failures=" + std::to_string(trip_fail) +
             fmt(" worst_rel=%.3g", worst) + fmt(" worst_roundtrip=%.3g", worst_trip));
}

void criterion6() {
  Rng rng(6);
  const double ps[] = {1.25, 1.5, 1.75};
  double best = -std::numeric_limits<double>::infinity();
  double worst_feas = 0.0, worst_lagr = 0.0;
  int infeasible = 0;
  const MaximizeOptions opt{6, 64, 6, std::nullopt};
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < 100; ++i) {
    const double p = ps[i % 3];
    const Exponents e = make_exponents(p, 1.0);
    const double m11 = std::exp(rng.uniform(-1.0, 1.0));
    const double m21 = std::exp(rng.uniform(-1.0, 1.0));
    const double m1p = std::pow(m11, p) * (1.0 + std::exp(rng.uniform(-3.0, 2.0)));
    const double m2p = std::pow(m21, p) * (1.0 + std::exp(rng.uniform(-3.0, 2.0)));
    const MaximizeResult r = maximize(make_moment_spec(m11, m1p, m21, m2p, e), e, opt);
    if (!r.feasible) {
      ++infeasible;
      continue;
    }
    best = std::max(best, r.value);
    worst_feas = std::max(worst_feas, r.feasibility_residual);
    worst_lagr = std::max(worst_lagr, r.multipliers.scaled_residual);
  }
  const Exponents e3 = make_exponents(3.0, 1.0);
  const ViolationCertificate cert = paper_counterexample(e3);
  const MaximizeResult r3 = maximize(compactify(cert.dist, e3).spec, e3, opt);
  worst_feas = std::max(worst_feas, r3.feasibility_residual);
  worst_lagr = std::max(worst_lagr, r3.multipliers.scaled_residual);
  const bool ok = infeasible == 0 && best <= 1e-6 && r3.feasible &&
                  r3.value > 0.0 && worst_feas <= 1e-8 && worst_lagr <= 1e-4;
  report(6, ok,
         fmt("best_value=%.3g", best) + fmt(" p3_value=%.6g", r3.value) +
             fmt(" worst_feasibility=%.3g", worst_feas) +
             fmt(" worst_lagrange=%.3g", worst_lagr) +
             " infeasible=" + std::to_string(infeasible) +
             fmt(" seconds=%.1f", seconds_since(t0)));
}

void criterion7() {
  Rng rng(7);
  int gp_fail = 0, done = 0;
  double worst_gp = 0.0;
  while (done < 100) {
    const JointDistribution d = random_joint(rng, {});
    const Exponents e = make_exponents(rng.uniform(1.01, 2.0), rng.uniform());
    const double t = rng.uniform(0.1, 2.0);
    const auto gp = minkowski_g_prime(d, e, t);
    if (!gp) continue;
    // Skip instances where E(X + tY) is nearly degenerate nearby.
    if (!minkowski_g_prime(d, e, t - 1e-3) || !minkowski_g_prime(d, e, t + 1e-3)) {
      continue;
    }
    ++done;
    const double h = 1e-5;
    const double fd = (minkowski_g(d, e, t + h) - minkowski_g(d, e, t - h)) / (2 * h);
    const double err = std::abs(fd - *gp);
    const double tol = std::max(1e-6, 1e-4 * std::abs(*gp));
    worst_gp = std::max(worst_gp, err / tol);
    if (err > tol) ++gp_fail;
  }

  int d_fail = 0;
  double worst_d = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Marginal x = random_marginal(rng, {});
    const Exponents e = make_exponents(rng.uniform(1.01, 2.0), rng.uniform());
    double mp = 0.0;
    for (const MarginalAtom& a : x.atoms()) mp += a.w * std::pow(a.z, e.p());
    const double scale = std::max(1.0, mp);
    const double d0 = std::abs(delta_t(x, e, 0.0)) / scale;
    const double d1 = std::abs(delta_slope_at_zero(x, e)) / scale;
    worst_d = std::max({worst_d, d0, d1});
    if (d0 > 1e-4 || d1 > 1e-4) ++d_fail;
  }

  int f_fail = 0;
  double worst_f = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 100; ++i) {
    const Marginal x = random_marginal(rng, {});
    const double p = rng.uniform(1.01, 1.99);
    const double h = 0.01;
    for (int k = 1; k < 1000; ++k) {
      const double t = k * h;
      const double sd = f_of_t(x, p, t + h) - 2 * f_of_t(x, p, t) + f_of_t(x, p, t - h);
      worst_f = std::min(worst_f, sd);
      if (sd < -1e-8) {
        ++f_fail;
        break;
      }
    }
  }
  report(7, gp_fail == 0 && d_fail == 0 && f_fail == 0,
         "g'_failures=" + std::to_string(gp_fail) + fmt(" worst_g'_err/tol=%.3g", worst_gp) +
             " delta_failures=" + std::to_string(d_fail) +
             fmt(" worst_delta/scale=%.3g", worst_d) +
             " f_failures=" + std::to_string(f_fail) + fmt(" min_second_diff=%.3g", worst_f));
}

void criterion8() {
  constexpr int kTrials = 10000;
  Rng rng(8);
  int holder = 0, minkowski = 0, lyapunov = 0, young = 0, chebyshev = 0;
  for (int i = 0; i < kTrials; ++i) {
    const JointDistribution d = random_joint(rng, {});
    const Exponents e = make_exponents(rng.uniform(1.01, 6.0), 0.0);
    if (!check_excess_holder(d, e).holds) ++holder;
    if (!check_excess_minkowski(d, e).holds) ++minkowski;

    std::vector<double> grid(7);
    const double r0 = rng.uniform(0.0, 2.0);
    const double step = rng.uniform(0.1, 1.0);
    for (std::size_t k = 0; k < grid.size(); ++k) grid[k] = r0 + step * k;
    if (!check_lyapunov(d, Axis::X, grid).worst.holds) ++lyapunov;

    const double a = rng.uniform(0.0, 10.0);
    const double b = rng.uniform(0.0, 10.0);
    if (!check_young(a, b, make_exponents(rng.uniform(1.01, 6.0), 0.0)).holds) ++young;

    const std::size_t n = rng.index(1, 8);
    std::vector<double> z(n), f(n), g(n), w(n);
    double sw = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      z[k] = rng.uniform(0.0, 10.0);
      w[k] = rng.exponential();
      sw += w[k];
    }
    std::sort(z.begin(), z.end());
    double fc = rng.normal(), gc = rng.normal();
    for (std::size_t k = 0; k < n; ++k) {
      fc += rng.exponential();
      gc += rng.exponential();
      f[k] = fc;
      g[k] = gc;
      w[k] /= sw;
    }
    if (!check_chebyshev_integral(z, f, g, w).holds) ++chebyshev;
  }
  report(8, holder + minkowski + lyapunov + young + chebyshev == 0,
         "trials=" + std::to_string(kTrials) + " holder=" + std::to_string(holder) +
             " minkowski=" + std::to_string(minkowski) +
             " lyapunov=" + std::to_string(lyapunov) + " young=" + std::to_string(young) +
             " chebyshev=" + std::to_string(chebyshev));
}

template <class F>
void guarded(int id, F f) {
  try {
    f();
  } catch (const std::exception& ex) {
    report(id, false, std::string("exception: ") + ex.what());
  }
}

}  // namespace

int main() {
  guarded(1, criterion1);
  guarded(2, criterion2);
  guarded(3, criterion3);
  guarded(4, criterion4);
  guarded(5, criterion5);
  guarded(6, criterion6);
  guarded(7, criterion7);
  guarded(8, criterion8);
  return failures == 0 ? 0 : 1;
}
