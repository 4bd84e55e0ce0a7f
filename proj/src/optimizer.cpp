#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "excesslab/errors.hpp"
#include "excesslab/extremal.hpp"
#include "excesslab/parallel.hpp"
#include "excesslab/rng.hpp"

namespace excesslab {
namespace {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Normalized problem: E X = E Y = 1, so the dot-product targets are 1 and the
// power-sum targets are P = m1p / m11^p, Q = m2p / m21^p. Layout of z is
// [u (n) | v (n) | w (n)].
struct Problem {
  double p, q, P, Q;
  std::size_t n;
};

constexpr int kNumConstraints = 5;
constexpr double kFeasTarget = 1e-14;

double block_scale(const Problem& pr, std::size_t k) {
  const std::size_t b = k / pr.n;
  return b == 0 ? pr.P : (b == 1 ? pr.Q : 1.0);
}

double dot_sum(const Problem& pr, const Vec& z) {
  double s = 0.0;
  for (std::size_t i = 0; i < pr.n; ++i) {
    const double u = z[i], v = z[pr.n + i];
    if (u > 0.0 && v > 0.0) s += std::pow(u, 1.0 / pr.q) * std::pow(v, 1.0 / pr.p);
  }
  return s;
}

std::array<double, kNumConstraints> constraints(const Problem& pr, const Vec& z) {
  double su = 0, sv = 0, sw = 0, d1 = 0, d2 = 0;
  for (std::size_t i = 0; i < pr.n; ++i) {
    const double u = z[i], v = z[pr.n + i], w = z[2 * pr.n + i];
    su += u;
    sv += v;
    sw += w;
    if (w > 0.0) {
      const double wq = std::pow(w, 1.0 / pr.q);
      if (u > 0.0) d1 += std::pow(u, 1.0 / pr.p) * wq;
      if (v > 0.0) d2 += std::pow(v, 1.0 / pr.p) * wq;
    }
  }
  return {(su - pr.P) / pr.P, (sv - pr.Q) / pr.Q, sw - 1.0, d1 - 1.0, d2 - 1.0};
}

double inf_norm(const std::array<double, kNumConstraints>& c) {
  double m = 0.0;
  for (double x : c) m = std::max(m, std::abs(x));
  return m;
}

// Gradient of S and the constraint Jacobian in log coordinates
// (d/d log z_k = z_k d/dz_k), restricted to the columns in `active`.
void log_derivatives(const Problem& pr, const Vec& z,
                     const std::vector<std::size_t>& active, Vec& g, Mat& J) {
  const std::size_t n = pr.n;
  Vec gf = Vec::Zero(3 * n);
  Mat Jf = Mat::Zero(kNumConstraints, 3 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = z[i], v = z[n + i], w = z[2 * n + i];
    const double a = (u > 0 && v > 0) ? std::pow(u, 1 / pr.q) * std::pow(v, 1 / pr.p) : 0.0;
    const double wq = w > 0 ? std::pow(w, 1 / pr.q) : 0.0;
    const double b = u > 0 ? std::pow(u, 1 / pr.p) * wq : 0.0;
    const double c = v > 0 ? std::pow(v, 1 / pr.p) * wq : 0.0;
    gf[i] = a / pr.q;
    gf[n + i] = a / pr.p;
    Jf(0, i) = u / pr.P;
    Jf(1, n + i) = v / pr.Q;
    Jf(2, 2 * n + i) = w;
    Jf(3, i) = b / pr.p;
    Jf(3, 2 * n + i) = b / pr.q;
    Jf(4, n + i) = c / pr.p;
    Jf(4, 2 * n + i) = c / pr.q;
  }
  const auto m = static_cast<Eigen::Index>(active.size());
  g.resize(m);
  J.resize(kNumConstraints, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    g[k] = gf[active[k]];
    J.col(k) = Jf.col(active[k]);
  }
}

Vec with_log_step(const Vec& z, const std::vector<std::size_t>& active,
                  const Vec& step) {
  Vec out = z;
  for (std::size_t k = 0; k < active.size(); ++k) {
    out[active[k]] = z[active[k]] * std::exp(step[static_cast<Eigen::Index>(k)]);
  }
  return out;
}

// Gauss-Newton minimum-norm steps in log coordinates back onto the feasible
// manifold. Returns false if the constraint residual stops decreasing.
bool restore(const Problem& pr, Vec& z, const std::vector<std::size_t>& active) {
  auto c = constraints(pr, z);
  double norm = inf_norm(c);
  Vec g;
  Mat J;
  for (int it = 0; it < 60 && norm > kFeasTarget; ++it) {
    log_derivatives(pr, z, active, g, J);
    Vec rhs(kNumConstraints);
    for (int j = 0; j < kNumConstraints; ++j) rhs[j] = -c[j];
    Vec step = J.completeOrthogonalDecomposition().solve(rhs);
    if (!step.allFinite()) return false;
    const double big = step.cwiseAbs().maxCoeff();
    if (big > 2.0) step *= 2.0 / big;
    bool moved = false;
    for (int half = 0; half < 40; ++half) {
      Vec trial = with_log_step(z, active, step);
      const auto ct = constraints(pr, trial);
      const double nt = inf_norm(ct);
      if (nt < norm) {
        z = std::move(trial);
        c = ct;
        norm = nt;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return norm <= 1e-12;
}

std::vector<std::size_t> active_set(const Problem& pr, const Vec& z) {
  std::vector<std::size_t> a;
  for (std::size_t k = 0; k < 3 * pr.n; ++k) {
    if (z[static_cast<Eigen::Index>(k)] > 0.0) a.push_back(k);
  }
  return a;
}

// Zeroes entries that are negligible relative to their block, keeping at
// least one entry per block.
bool drop_negligible(const Problem& pr, Vec& z) {
  bool dropped = false;
  for (std::size_t b = 0; b < 3; ++b) {
    std::size_t alive = 0;
    for (std::size_t i = 0; i < pr.n; ++i) alive += z[b * pr.n + i] > 0.0;
    for (std::size_t i = 0; i < pr.n && alive > 1; ++i) {
      const std::size_t k = b * pr.n + i;
      if (z[k] > 0.0 && z[k] < 1e-13 * block_scale(pr, k)) {
        z[k] = 0.0;
        --alive;
        dropped = true;
      }
    }
  }
  return dropped;
}

// Tries to zero small coordinates one at a time; a removal is kept when the
// restored point does not lower S.
bool try_drops(const Problem& pr, Vec& z, double& S) {
  std::vector<std::size_t> cand;
  for (std::size_t k = 0; k < 3 * pr.n; ++k) {
    if (z[k] > 0.0 && z[k] < 1e-5 * block_scale(pr, k)) cand.push_back(k);
  }
  std::sort(cand.begin(), cand.end(), [&](std::size_t a, std::size_t b) {
    return z[a] / block_scale(pr, a) < z[b] / block_scale(pr, b);
  });
  bool any = false;
  for (std::size_t k : cand) {
    const std::size_t b = k / pr.n;
    std::size_t alive = 0;
    for (std::size_t i = 0; i < pr.n; ++i) alive += z[b * pr.n + i] > 0.0;
    if (alive <= 1) continue;
    Vec trial = z;
    trial[k] = 0.0;
    if (!restore(pr, trial, active_set(pr, trial))) continue;
    const double St = dot_sum(pr, trial);
    if (St >= S - 1e-15 * std::abs(S)) {
      z = std::move(trial);
      S = St;
      any = true;
    }
  }
  return any;
}

// Feasible-path ascent on the positive coordinates: tangent-projected
// gradient in log coordinates with Barzilai-Borwein steps, followed by
// restoration. z must be feasible on entry.
void polish(const Problem& pr, Vec& z, int max_iter = 800) {
  std::vector<std::size_t> active = active_set(pr, z);
  Vec g, d, prev_zeta, prev_d;
  Mat J;
  double s = 1e-2;
  double S = dot_sum(pr, z);
  bool have_prev = false;
  for (int it = 0; it < max_iter; ++it) {
    log_derivatives(pr, z, active, g, J);
    const Vec y = J.transpose().completeOrthogonalDecomposition().solve(g);
    d = g - J.transpose() * y;
    const double gscale = std::max(g.cwiseAbs().maxCoeff(), 1e-300);
    if (d.cwiseAbs().maxCoeff() <= 1e-10 * gscale) break;

    Vec zeta(static_cast<Eigen::Index>(active.size()));
    for (std::size_t k = 0; k < active.size(); ++k) {
      zeta[static_cast<Eigen::Index>(k)] = std::log(z[active[k]]);
    }
    if (have_prev && prev_zeta.size() == zeta.size()) {
      const Vec dz = zeta - prev_zeta;
      const Vec dd = d - prev_d;
      const double denom = -dz.dot(dd);
      if (denom > 0.0) s = std::clamp(dz.squaredNorm() / denom, 1e-10, 1e4);
    }
    const double dmax = d.cwiseAbs().maxCoeff();
    if (s * dmax > 1.0) s = 1.0 / dmax;

    bool accepted = false;
    for (int half = 0; half < 50; ++half) {
      Vec trial = with_log_step(z, active, s * d);
      if (restore(pr, trial, active)) {
        const double St = dot_sum(pr, trial);
        if (St >= S + 1e-4 * s * d.squaredNorm() ||
            (St >= S && s * dmax < 1e-12)) {
          z = std::move(trial);
          S = St;
          accepted = true;
          break;
        }
      }
      s *= 0.5;
    }
    if (!accepted) break;
    prev_zeta = zeta;
    prev_d = d;
    have_prev = true;
    if (it % 20 == 19 && try_drops(pr, z, S)) {
      active = active_set(pr, z);
      have_prev = false;
      continue;
    }
    if (drop_negligible(pr, z)) {
      active = active_set(pr, z);
      restore(pr, z, active);
      S = dot_sum(pr, z);
      have_prev = false;
    }
  }
}

// Euclidean projection onto {x >= 0, sum x = total}.
void project_simplex(double* x, std::size_t n, double total) {
  std::vector<double> s(x, x + n);
  std::sort(s.begin(), s.end(), std::greater<>());
  double cum = 0.0, shift = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    cum += s[k];
    const double t = (cum - total) / static_cast<double>(k + 1);
    if (k + 1 == n || s[k + 1] <= t) {
      shift = t;
      break;
    }
  }
  for (std::size_t k = 0; k < n; ++k) x[k] = std::max(x[k] - shift, 0.0);
}

void project(const Problem& pr, Vec& z) {
  project_simplex(z.data(), pr.n, pr.P);
  project_simplex(z.data() + pr.n, pr.n, pr.Q);
  project_simplex(z.data() + 2 * pr.n, pr.n, 1.0);
}

// Augmented Lagrangian merit for the two dot-product constraints:
// -S + y.c + rho/2 |c|^2.
struct Merit {
  const Problem& pr;
  std::array<double, 2> y{0.0, 0.0};
  double rho = 10.0;

  double value(const Vec& z) const {
    const auto c = constraints(pr, z);
    return -dot_sum(pr, z) + y[0] * c[3] + y[1] * c[4] +
           0.5 * rho * (c[3] * c[3] + c[4] * c[4]);
  }

  Vec gradient(const Vec& z) const {
    const std::size_t n = pr.n;
    const auto c = constraints(pr, z);
    const double k1 = y[0] + rho * c[3];
    const double k2 = y[1] + rho * c[4];
    Vec gr = Vec::Zero(3 * n);
    for (std::size_t i = 0; i < n; ++i) {
      const double u = std::max(z[i], 1e-14 * pr.P);
      const double v = std::max(z[n + i], 1e-14 * pr.Q);
      const double w = std::max(z[2 * n + i], 1e-14);
      const double vu = std::pow(v / u, 1 / pr.p);
      const double wu = std::pow(w / u, 1 / pr.q);
      const double wv = std::pow(w / v, 1 / pr.q);
      const double uw = std::pow(u / w, 1 / pr.p);
      const double vw = std::pow(v / w, 1 / pr.p);
      const double uv = std::pow(u / v, 1 / pr.q);
      gr[i] = -vu / pr.q + k1 * wu / pr.p;
      gr[n + i] = -uv / pr.p + k2 * wv / pr.p;
      gr[2 * n + i] = (k1 * uw + k2 * vw) / pr.q;
    }
    return gr.cwiseMax(-1e8).cwiseMin(1e8);
  }
};

void projected_descent(const Merit& merit, Vec& z, int iters) {
  double s = 1e-2;
  Vec grad = merit.gradient(z);
  double phi = merit.value(z);
  for (int it = 0; it < iters; ++it) {
    bool accepted = false;
    Vec trial;
    for (int half = 0; half < 40; ++half) {
      trial = z - s * grad;
      project(merit.pr, trial);
      const double pt = merit.value(trial);
      if (pt <= phi + 1e-4 * grad.dot(trial - z)) {
        phi = pt;
        accepted = true;
        break;
      }
      s *= 0.5;
    }
    if (!accepted) return;
    const Vec g_new = merit.gradient(trial);
    const Vec dz = trial - z;
    const Vec dg = g_new - grad;
    z = std::move(trial);
    grad = g_new;
    const double denom = dz.dot(dg);
    if (dz.squaredNorm() < 1e-30) return;
    s = denom > 0 ? std::clamp(dz.squaredNorm() / denom, 1e-12, 1e6) : s * 2.0;
  }
}

// Softmax parametrization of the product of scaled simplices for the
// derivative-free fallback.
Vec from_softmax(const Problem& pr, const Vec& a) {
  Vec z(3 * pr.n);
  const double totals[3] = {pr.P, pr.Q, 1.0};
  for (std::size_t b = 0; b < 3; ++b) {
    const auto seg = a.segment(static_cast<Eigen::Index>(b * pr.n),
                               static_cast<Eigen::Index>(pr.n));
    const double mx = seg.maxCoeff();
    Vec e = (seg.array() - mx).exp();
    z.segment(static_cast<Eigen::Index>(b * pr.n),
              static_cast<Eigen::Index>(pr.n)) = totals[b] * e / e.sum();
  }
  return z;
}

Vec to_softmax(const Problem& pr, const Vec& z) {
  Vec a(3 * pr.n);
  for (std::size_t k = 0; k < 3 * pr.n; ++k) {
    a[k] = std::log(std::max(z[k] / block_scale(pr, k), 1e-30));
  }
  return a;
}

void nelder_mead(const Merit& merit, Vec& z, int max_evals) {
  const Problem& pr = merit.pr;
  const Eigen::Index dim = static_cast<Eigen::Index>(3 * pr.n);
  auto f = [&](const Vec& a) { return merit.value(from_softmax(pr, a)); };
  std::vector<Vec> simplex(static_cast<std::size_t>(dim + 1), to_softmax(pr, z));
  for (Eigen::Index k = 0; k < dim; ++k) simplex[k + 1][k] += 0.5;
  std::vector<double> fv(simplex.size());
  for (std::size_t k = 0; k < simplex.size(); ++k) fv[k] = f(simplex[k]);
  int evals = static_cast<int>(simplex.size());
  std::vector<std::size_t> order(simplex.size());
  while (evals < max_evals) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t best = order.front(), worst = order.back();
    const std::size_t second = order[order.size() - 2];
    if (std::abs(fv[worst] - fv[best]) <= 1e-15 * (1.0 + std::abs(fv[best]))) break;
    Vec centroid = Vec::Zero(dim);
    for (std::size_t k = 0; k + 1 < order.size(); ++k) centroid += simplex[order[k]];
    centroid /= static_cast<double>(dim);
    const Vec refl = centroid + (centroid - simplex[worst]);
    const double fr = f(refl);
    ++evals;
    if (fr < fv[best]) {
      const Vec exp = centroid + 2.0 * (centroid - simplex[worst]);
      const double fe = f(exp);
      ++evals;
      if (fe < fr) {
        simplex[worst] = exp;
        fv[worst] = fe;
      } else {
        simplex[worst] = refl;
        fv[worst] = fr;
      }
    } else if (fr < fv[second]) {
      simplex[worst] = refl;
      fv[worst] = fr;
    } else {
      const Vec con = centroid + 0.5 * (simplex[worst] - centroid);
      const double fc = f(con);
      ++evals;
      if (fc < fv[worst]) {
        simplex[worst] = con;
        fv[worst] = fc;
      } else {
        for (std::size_t k = 0; k < simplex.size(); ++k) {
          if (k == best) continue;
          simplex[k] = simplex[best] + 0.5 * (simplex[k] - simplex[best]);
          fv[k] = f(simplex[k]);
          ++evals;
        }
      }
    }
  }
  const auto it = std::min_element(fv.begin(), fv.end());
  z = from_softmax(pr, simplex[static_cast<std::size_t>(it - fv.begin())]);
}

void augmented_lagrangian(const Problem& pr, Vec& z, bool derivative_free) {
  Merit merit{pr};
  double prev = std::numeric_limits<double>::infinity();
  for (int outer = 0; outer < 6; ++outer) {
    if (derivative_free) {
      nelder_mead(merit, z, 400 * static_cast<int>(pr.n));
    } else {
      projected_descent(merit, z, 60);
    }
    const auto c = constraints(pr, z);
    const double cn = std::max(std::abs(c[3]), std::abs(c[4]));
    merit.y[0] += merit.rho * c[3];
    merit.y[1] += merit.rho * c[4];
    if (cn > 0.25 * prev) merit.rho = std::min(merit.rho * 10.0, 1e8);
    prev = cn;
    if (cn < 1e-10) break;
  }
}

// x = 1 + beta (shape - E shape) with E x^p = target, beta found by
// bisection on the range keeping x >= 0.
std::optional<std::vector<double>> fit_axis(const std::vector<double>& w,
                                            const std::vector<double>& shape,
                                            double p, double target) {
  const std::size_t n = w.size();
  double mean = 0.0, lo_z = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    mean += w[i] * shape[i];
    lo_z = std::min(lo_z, shape[i]);
  }
  auto build = [&](double beta) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = std::max(0.0, 1.0 + beta * (shape[i] - mean));
    }
    return x;
  };
  auto pmean = [&](const std::vector<double>& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += w[i] * std::pow(x[i], p);
    return s;
  };
  if (target <= 1.0) return build(0.0);
  if (mean - lo_z <= 0.0) return std::nullopt;
  double hi = 1.0 / (mean - lo_z);
  if (pmean(build(hi)) < target) return std::nullopt;
  double lo = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (pmean(build(mid)) < target ? lo : hi) = mid;
  }
  return build(0.5 * (lo + hi));
}

std::optional<Vec> feasible_seed(const Problem& pr, Rng& rng) {
  const std::size_t n = pr.n;
  const double p = pr.p;
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<double> w(n), zx(n), zy(n);
    if (attempt % 2 == 0) {
      for (std::size_t i = 0; i < n; ++i) {
        w[i] = rng.exponential() + 1e-3;
        zx[i] = rng.bernoulli(0.2) ? 0.0 : rng.exponential();
        zy[i] = rng.bernoulli(0.2) ? 0.0 : rng.exponential();
      }
    } else {
      // One light atom carrying a large value reaches any finite target.
      const std::size_t ix = rng.index(0, n - 1);
      const std::size_t iy = rng.index(0, n - 1);
      const double cap = 0.5 * std::min(std::pow(pr.P, -1.0 / (p - 1.0)),
                                         std::pow(pr.Q, -1.0 / (p - 1.0)));
      const double light = cap * rng.uniform(0.2, 1.0);
      // Heavy shapes stay well below the light weight so the mean, and with
      // it the reachable E x^p ~ light^{1-p}, is set by the light atom.
      double heavy = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        w[i] = rng.exponential() + 1e-3;
        zx[i] = i == ix ? 1.0 : rng.uniform(0.0, 0.01 * light);
        zy[i] = i == iy ? 1.0 : rng.uniform(0.0, 0.01 * light);
        if (i != ix && i != iy) heavy += w[i];
      }
      const std::size_t n_light = ix == iy ? 1 : 2;
      if (heavy <= 0.0) {
        if (n_light == n) continue;
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (i == ix || i == iy) {
          w[i] = light;
        } else {
          w[i] *= (1.0 - static_cast<double>(n_light) * light) / heavy;
        }
      }
    }
    const double ws = std::accumulate(w.begin(), w.end(), 0.0);
    for (double& x : w) x /= ws;
    const auto x = fit_axis(w, zx, p, pr.P);
    const auto y = fit_axis(w, zy, p, pr.Q);
    if (!x || !y) continue;
    Vec z(3 * n);
    for (std::size_t i = 0; i < n; ++i) {
      z[i] = std::pow((*x)[i], p) * w[i];
      z[n + i] = std::pow((*y)[i], p) * w[i];
      z[2 * n + i] = w[i];
    }
    if (!z.allFinite()) continue;
    return z;
  }
  return std::nullopt;
}

struct LocalResult {
  bool ok = false;
  Vec z;
  double S = -std::numeric_limits<double>::infinity();
};

LocalResult local_run(const Problem& pr, std::uint64_t seed, std::size_t index) {
  Rng rng = Rng::substream(seed, index);
  LocalResult out;
  auto seed_point = feasible_seed(pr, rng);
  if (!seed_point) return out;
  Vec z = *seed_point;
  const bool dfo = pr.n <= 3;
  augmented_lagrangian(pr, z, dfo);
  drop_negligible(pr, z);
  if (!restore(pr, z, active_set(pr, z))) {
    // The penalty phase wandered off; fall back to the exact seed.
    z = *seed_point;
    if (!restore(pr, z, active_set(pr, z))) return out;
  }
  polish(pr, z);
  const auto c = constraints(pr, z);
  if (!(inf_norm(c) <= 1e-10) || !z.allFinite()) return out;
  out.ok = true;
  out.S = dot_sum(pr, z);
  out.z = std::move(z);
  return out;
}

}  // namespace

MaximizeResult maximize(const MomentSpec& spec, const Exponents& e,
                        const MaximizeOptions& options) {
  if (options.n_support < 2) throw DomainError("n_support must be >= 2");
  if (options.restarts < 1) throw DomainError("restarts must be >= 1");
  MaximizeResult result;
  result.value = -std::numeric_limits<double>::infinity();
  if (!spec.feasible()) return result;

  const double p = e.p();
  const double sx = spec.m11(), sy = spec.m21();
  Problem pr{p, e.q(), std::max(1.0, spec.m1p() / std::pow(sx, p)),
             std::max(1.0, spec.m2p() / std::pow(sy, p)), options.n_support};

  const std::size_t runs = options.restarts;
  std::vector<LocalResult> local(runs);
  parallel_for(runs, resolve_threads(options.threads),
               [&](std::size_t r) { local[r] = local_run(pr, options.seed, r); });

  auto to_point = [&](const Vec& z) {
    CompactifiedPoint pt;
    const double ux = std::pow(sx, p), uy = std::pow(sy, p);
    for (std::size_t i = 0; i < pr.n; ++i) {
      pt.u.push_back(z[i] * ux);
      pt.v.push_back(z[pr.n + i] * uy);
      pt.w.push_back(z[2 * pr.n + i]);
    }
    return pt;
  };

  result.restarts.resize(runs);
  std::optional<std::size_t> best;
  for (std::size_t r = 0; r < runs; ++r) {
    RestartOutcome& o = result.restarts[r];
    o.derivative_free = pr.n <= 3;
    if (!local[r].ok) continue;
    const CompactifiedPoint pt = to_point(local[r].z);
    o.feasibility_residual = feasibility_residual(pt, spec, e);
    o.value = objective_tilde(pt, spec, e);
    o.ok = o.feasibility_residual <= 1e-8;
    if (o.ok && (!best || o.value > result.restarts[*best].value)) best = r;
  }
  if (!best) return result;

  result.feasible = true;
  result.best_restart = *best;
  result.point = to_point(local[*best].z);
  result.value = result.restarts[*best].value;
  result.feasibility_residual = result.restarts[*best].feasibility_residual;
  result.multipliers = fit_multipliers(result.point, e);
  return result;
}

}  // namespace excesslab
