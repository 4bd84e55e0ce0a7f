#include "excesslab/search.hpp"

#include <cmath>
#include <vector>

#include "excesslab/errors.hpp"
#include "excesslab/generate.hpp"
#include "excesslab/inequalities.hpp"
#include "excesslab/parallel.hpp"
#include "excesslab/precision.hpp"
#include "excesslab/rng.hpp"
#include "excesslab/scalar_analysis.hpp"
#include "excesslab/shrink.hpp"

namespace excesslab {
namespace {

constexpr int kMaxHalvings = 60;
constexpr double kMargin = 10.0;

void require_violation_regime(const Exponents& e) {
  if (!(e.p() > 2.0)) throw DomainError("counterexamples need p > 2");
  if (!(e.theta() > 0.0)) throw DomainError("counterexamples need theta in (0,1]");
}

GapReport check(const std::string& inequality, const JointDistribution& d,
                const Exponents& e) {
  return inequality == kLabelHolder ? check_excess_holder(d, e)
                                    : check_excess_minkowski(d, e);
}

Wide wide_gap(const std::string& inequality, const JointDistribution& d,
              const Exponents& e) {
  return inequality == kLabelHolder ? holder_gap_wide(d, e)
                                    : minkowski_gap_wide(d, e);
}

std::optional<ViolationCertificate> certify(const std::string& inequality,
                                            const JointDistribution& d,
                                            const Exponents& e) {
  const GapReport r = check(inequality, d, e);
  if (!(r.gap > kMargin * r.tol)) return std::nullopt;
  const Wide g = wide_gap(inequality, d, e);
  if (!(g > 0)) return std::nullopt;
  return ViolationCertificate{.dist = d,
                              .exponents = e,
                              .inequality = inequality,
                              .gap = r.gap,
                              .tol = r.tol,
                              .recheck_gap = static_cast<double>(g),
                              .recheck_decimal = to_decimal(g),
                              .construction = {},
                              .seed = 0,
                              .shift = std::nullopt,
                              .scale = std::nullopt,
                              .predicted_gap = std::nullopt};
}

Marginal bernoulli_half() { return make_marginal({{0.0, 0.5}, {1.0, 0.5}}); }

}  // namespace

GapReport replay(const ViolationCertificate& cert) {
  return check(cert.inequality, cert.dist, cert.exponents);
}

// Scales t = 1, 1/2, ... for the Minkowski scan.
constexpr double kMaxScale = 1.0;
constexpr int kScaleSteps = kMaxHalvings;

ViolationCertificate paper_counterexample(const Exponents& e) {
  require_violation_regime(e);
  const Marginal x = bernoulli_half();
  const double d2 = bernoulli_second_derivative(e);
  double c = 0.5;
  for (int k = 0; k <= kMaxHalvings; ++k, c *= 0.5) {
    auto cert = certify(kLabelHolder, x.affine_pair(1.0, c), e);
    if (cert) {
      cert->construction = kConstructionBernoulli;
      cert->shift = c;
      cert->predicted_gap = 0.5 * d2 * c * c;
      return *cert;
    }
  }
  throw NumericFault("no Bernoulli shift c >= 0.5 * 2^-60 clears the margin");
}

ViolationCertificate minkowski_counterexample(const Exponents& e) {
  require_violation_regime(e);
  const Marginal x = bernoulli_half();
  // The best shift for the Hoelder gap is often a poor one here, so both
  // the shift and the scale are scanned.
  double c = 0.5;
  for (int k = 0; k <= kMaxHalvings; ++k, c *= 0.5) {
    const JointDistribution pair = x.affine_pair(1.0, c);
    double t = kMaxScale;
    for (int j = 0; j <= kScaleSteps; ++j, t *= 0.5) {
      auto cert = certify(kLabelMinkowski, pair.scaled(1.0, t), e);
      if (cert) {
        cert->construction = kConstructionBernoulliScaled;
        cert->shift = c;
        cert->scale = t;
        return *cert;
      }
    }
  }
  throw NumericFault("no shift and scale pair clears the margin");
}

std::optional<ViolationCertificate> random_violation_search(
    const Exponents& e, const SearchOptions& options) {
  require_violation_regime(e);
  if (options.max_atoms < 1 || !(options.value_scale > 0.0)) {
    throw DomainError("search needs max_atoms >= 1 and a positive value scale");
  }
  const InstanceShape shape{options.max_atoms, options.value_scale, 0.2};
  struct Outcome {
    double score = -1.0;
    const char* inequality = nullptr;
  };
  std::vector<Outcome> out(options.trials);
  auto instance = [&](std::size_t i) {
    Rng rng = Rng::substream(options.seed, i);
    return random_joint(rng, shape);
  };
  parallel_for(options.trials, resolve_threads(options.threads),
               [&](std::size_t i) {
                 const JointDistribution d = instance(i);
                 for (const char* label : {kLabelHolder, kLabelMinkowski}) {
                   const GapReport r = check(label, d, e);
                   if (r.gap > kMargin * r.tol) {
                     const double score = r.gap / r.tol;
                     if (score > out[i].score) out[i] = {score, label};
                   }
                 }
               });
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].inequality && (!best || out[i].score > out[*best].score)) best = i;
  }
  if (!best) return std::nullopt;
  const std::string label = out[*best].inequality;
  const JointDistribution start = instance(*best);
  if (!certify(label, start, e)) return std::nullopt;
  const JointDistribution small = shrink(
      start, [&](const JointDistribution& d) { return certify(label, d, e).has_value(); });
  auto cert = certify(label, small, e);
  cert->construction = kConstructionRandom;
  cert->seed = options.seed;
  return cert;
}

}  // namespace excesslab
