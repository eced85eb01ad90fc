#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "kolmo/calculus.hpp"

namespace kolmo {

/// Axis-aligned sampling box in (t, x).
struct Region {
  Point center;
  double halfwidth = 1.0;
};

/// Empirical sup of an intrinsic difference quotient.  An empirical sup can
/// refute boundedness but never certify it, so the estimate carries the
/// quotient trend as delta -> 0: `saturated` marks a sup still growing there
/// (membership failure), `trend_slope` is the fitted log-log slope of the
/// per-delta sup on the small-delta end.
struct SeminormEstimate {
  double value = 0.0;
  long sample_count = 0;
  double alpha = 0.0;
  FieldId arg_field = FieldId::Y();
  Point arg_z;
  double arg_delta = 0.0;  // signed; 0 for pair quotients
  Point arg_z2;            // second point when the estimate is a pair quotient
  bool pair = false;
  bool saturated = false;
  double trend_slope = 0.0;
  std::vector<std::pair<double, double>> per_delta;  // (delta, sup quotient)
};

/// sup over sampled (z, delta) of |u(e^{delta X} z) - u(z)| / |delta|^{alpha/m_X},
/// delta on a log grid in [1e-6, 1] (both signs), z uniform in `region`.
SeminormEstimate seminorm_X(const GroupSpec& g, const ScalarField& u, FieldId field, double alpha,
                            const Region& region, long samples, std::uint64_t seed);

struct HolderClassification {
  SeminormEstimate combined;               // value = Y estimate + sum of X_i estimates
  std::vector<SeminormEstimate> parts;     // Y first, then X_1..X_{p_0}
  SeminormEstimate pair_quotient;          // sup |u(z)-u(zeta)| / ||zeta^{-1} o z||^alpha
};

HolderClassification classify_C0alpha(const GroupSpec& g, const ScalarField& u, double alpha,
                                      const Region& region, long samples, std::uint64_t seed);

/// Re-evaluates the quotient recorded in `est` (seminorm or pair form).
double reevaluate(const GroupSpec& g, const ScalarField& u, const SeminormEstimate& est);

}  // namespace kolmo
