#include "kolmo/regularity.hpp"

#include <cmath>
#include <string>

#include "kolmo/fitting.hpp"
#include "kolmo/paths.hpp"
#include "kolmo/rng.hpp"

namespace kolmo {

namespace {

constexpr int kDeltaCount = 25;  // log grid over [1e-6, 1]

double delta_at(int j) { return std::pow(10.0, -6.0 + 6.0 * j / (kDeltaCount - 1)); }

Point sample_point(const Region& region, const HashRng& rng, std::uint64_t base, int d) {
  Point z;
  z.t = rng.uniform(base, region.center.t - region.halfwidth, region.center.t + region.halfwidth);
  z.x.resize(d);
  for (int j = 0; j < d; ++j)
    z.x(j) = rng.uniform(base + 1 + j, region.center.x(j) - region.halfwidth,
                         region.center.x(j) + region.halfwidth);
  return z;
}

Point apply_flow(const GroupSpec& g, FieldId field, double delta, const Point& z) {
  return field.is_Y ? flow_Y(g, delta, z) : flow_X(g, field.i, delta, z);
}

void fit_trend(SeminormEstimate& est) {
  std::vector<double> xs, ys;
  for (const auto& [delta, q] : est.per_delta) {
    if (delta <= 1e-3 && q > 0.0) {
      xs.push_back(std::log10(delta));
      ys.push_back(std::log10(q));
    }
  }
  if (xs.size() >= 3) {
    est.trend_slope = fit_line(xs, ys).slope;
    est.saturated = est.trend_slope < -0.05;
  }
}

}  // namespace

SeminormEstimate seminorm_X(const GroupSpec& g, const ScalarField& u, FieldId field, double alpha,
                            const Region& region, long samples, std::uint64_t seed) {
  const double m = field.formal_degree();
  if (!(alpha > 0.0) || alpha > m)
    fail(ErrorCode::AlphaOutOfRange, "seminorm_X: alpha = " + std::to_string(alpha) +
                                         " outside (0, " + std::to_string(m) + "]");
  if (!field.is_Y && (field.i < 1 || field.i > g.layers()[0]))
    fail(ErrorCode::FieldIndexOutOfRange, "seminorm_X: X_" + std::to_string(field.i));
  if (region.center.dim() != g.d())
    fail(ErrorCode::DimensionMismatch, "seminorm_X: region dimension != d");

  SeminormEstimate est;
  est.alpha = alpha;
  est.arg_field = field;
  est.per_delta.resize(kDeltaCount);
  for (int j = 0; j < kDeltaCount; ++j) est.per_delta[j] = {delta_at(j), 0.0};

  HashRng rng(seed, field.is_Y ? 0u : static_cast<std::uint64_t>(field.i));
  const double expo = alpha / m;
  for (long i = 0; i < samples; ++i) {
    const Point z = sample_point(region, rng, static_cast<std::uint64_t>(i) * (g.d() + 1), g.d());
    const double uz = u.eval(z);
    for (int j = 0; j < kDeltaCount; ++j) {
      const double delta = delta_at(j);
      for (double sign : {1.0, -1.0}) {
        const double q =
            std::abs(u.eval(apply_flow(g, field, sign * delta, z)) - uz) / std::pow(delta, expo);
        if (q > est.per_delta[j].second) est.per_delta[j].second = q;
        if (q > est.value) {
          est.value = q;
          est.arg_z = z;
          est.arg_delta = sign * delta;
        }
      }
    }
  }
  est.sample_count = samples;
  fit_trend(est);
  return est;
}

HolderClassification classify_C0alpha(const GroupSpec& g, const ScalarField& u, double alpha,
                                      const Region& region, long samples, std::uint64_t seed) {
  if (!(alpha > 0.0) || alpha > 1.0)
    fail(ErrorCode::AlphaOutOfRange, "classify_C0alpha: alpha outside (0, 1]");

  HolderClassification out;
  out.parts.push_back(seminorm_X(g, u, FieldId::Y(), alpha, region, samples, seed));
  for (int i = 1; i <= g.layers()[0]; ++i)
    out.parts.push_back(seminorm_X(g, u, FieldId::X(i), alpha, region, samples, seed));

  out.combined.alpha = alpha;
  for (const auto& part : out.parts) {
    out.combined.value += part.value;
    out.combined.sample_count += part.sample_count;
    out.combined.saturated = out.combined.saturated || part.saturated;
    if (part.trend_slope < out.combined.trend_slope)
      out.combined.trend_slope = part.trend_slope;
  }

  // Pair-quotient cross-check in the sense of the remainder bound at n = 0.
  SeminormEstimate& pq = out.pair_quotient;
  pq.alpha = alpha;
  pq.pair = true;
  HashRng rng(seed, 0xABu);
  for (long i = 0; i < samples; ++i) {
    const std::uint64_t base = static_cast<std::uint64_t>(i) * 2 * (g.d() + 1);
    const Point z = sample_point(region, rng, base, g.d());
    const Point zeta = sample_point(region, rng, base + g.d() + 1, g.d());
    const double dist = norm(g, compose(g, inverse(g, zeta), z));
    if (dist < 1e-12) continue;
    const double q = std::abs(u.eval(z) - u.eval(zeta)) / std::pow(dist, alpha);
    if (q > pq.value) {
      pq.value = q;
      pq.arg_z = z;
      pq.arg_z2 = zeta;
    }
  }
  pq.sample_count = samples;
  return out;
}

double reevaluate(const GroupSpec& g, const ScalarField& u, const SeminormEstimate& est) {
  if (est.pair) {
    const double dist = norm(g, compose(g, inverse(g, est.arg_z2), est.arg_z));
    return std::abs(u.eval(est.arg_z) - u.eval(est.arg_z2)) / std::pow(dist, est.alpha);
  }
  const double m = est.arg_field.formal_degree();
  const Point w = apply_flow(g, est.arg_field, est.arg_delta, est.arg_z);
  return std::abs(u.eval(w) - u.eval(est.arg_z)) /
         std::pow(std::abs(est.arg_delta), est.alpha / m);
}

}  // namespace kolmo
