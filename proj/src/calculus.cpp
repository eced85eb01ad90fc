#include "kolmo/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kolmo/paths.hpp"

namespace kolmo {

namespace {

constexpr double kEps = 2.220446049250313e-16;

double ipow(double base, int e) {
  double acc = 1.0;
  for (int i = 0; i < e; ++i) acc *= base;
  return acc;
}

double binom(int n, int k) {
  double acc = 1.0;
  for (int i = 1; i <= k; ++i) acc = acc * (n - k + i) / i;
  return acc;
}

using Evaluator = std::function<double(const Point&)>;

// Nested central stencils for d^beta; one m-point stencil per coordinate with
// a nonzero entry.  Step eps^{1/(|beta|+2)} scaled by the coordinate size.
double fd_partial(const Evaluator& f, const MultiIndex& beta, int total_len, const Point& z) {
  int j = -1;
  for (std::size_t c = 0; c < beta.size(); ++c)
    if (beta[c] > 0) {
      j = static_cast<int>(c);
      break;
    }
  if (j < 0) return f(z);

  const int m = beta[j];
  MultiIndex rest = beta;
  rest[j] = 0;
  const double h = std::pow(kEps, 1.0 / (total_len + 2)) * (1.0 + std::abs(z.x(j)));
  double acc = 0.0;
  for (int i = 0; i <= m; ++i) {
    Point shifted = z;
    shifted.x(j) += (0.5 * m - i) * h;
    const double w = binom(m, i) * ((i % 2) ? -1.0 : 1.0);
    acc += w * fd_partial(f, rest, total_len, shifted);
  }
  return acc / ipow(h, m);
}

// One Richardson-extrapolated Y difference; noise is the absolute error
// expected from the inner evaluator and fixes the step.
double fd_Y(const GroupSpec& g, const Evaluator& f, const Point& z, double noise) {
  const double h = std::clamp(std::pow(noise, 0.2), 1e-4, 0.25);
  auto diff = [&](double s) {
    return (f(flow_Y(g, s, z)) - f(flow_Y(g, -s, z))) / (2.0 * s);
  };
  return (4.0 * diff(h / 2) - diff(h)) / 3.0;
}

double fd_mixed(const GroupSpec& g, const ScalarField& u, int k, const MultiIndex& beta,
                const Point& zeta) {
  const int len = length(beta);
  const double scale = 1.0 + std::abs(u.eval(zeta));
  double noise = (len == 0) ? 1e-14 * scale : std::pow(kEps, 2.0 / (len + 2)) * scale;

  Evaluator f;
  if (len == 0) {
    f = u.eval;
  } else {
    f = [&u, beta, len](const Point& z) { return fd_partial(u.eval, beta, len, z); };
  }
  for (int level = 0; level < k; ++level) {
    Evaluator inner = f;
    const double lnoise = noise;
    f = [&g, inner, lnoise](const Point& z) { return fd_Y(g, inner, z, lnoise); };
    noise = std::pow(noise, 0.8);
  }
  return f(zeta);
}

}  // namespace

double lie_derivative_fd(const GroupSpec& g, const ScalarField& u, FieldId field, const Point& z,
                         double h) {
  if (!(h > 0.0)) fail(ErrorCode::NonpositiveLambda, "lie_derivative_fd: h must be positive");
  Point plus = field.is_Y ? flow_Y(g, h, z) : flow_X(g, field.i, h, z);
  Point minus = field.is_Y ? flow_Y(g, -h, z) : flow_X(g, field.i, -h, z);
  return (u.eval(plus) - u.eval(minus)) / (2.0 * h);
}

double mixed_derivative(const GroupSpec& g, const ScalarField& u, int k, const MultiIndex& beta,
                        const Point& zeta) {
  if (static_cast<int>(beta.size()) != g.d())
    fail(ErrorCode::DimensionMismatch, "mixed_derivative: multi-index size != d");
  if (k < 0) fail(ErrorCode::OrderOutOfRange, "mixed_derivative: k < 0");
  const int border = 2 * k + b_length(g, beta);
  if (border > u.smooth_order)
    fail(ErrorCode::InsufficientSmoothness,
         "mixed_derivative: B-order " + std::to_string(border) + " exceeds the declared " +
             std::to_string(u.smooth_order) + " (" + u.smoothness_tag + ")");
  if (u.has_oracle()) return u.derivative_oracle(k, beta, zeta);
  return fd_mixed(g, u, k, beta, zeta);
}

TaylorPoly taylor_poly(const GroupSpec& g, const ScalarField& u, int n, const Point& zeta) {
  if (n < 0) fail(ErrorCode::OrderOutOfRange, "taylor_poly: n < 0");
  TaylorPoly poly;
  poly.anchor = zeta;
  poly.order = n;
  poly.terms = enumerate_terms(g, n);
  poly.coefficients.reserve(poly.terms.size());
  for (const auto& term : poly.terms) {
    const double deriv = mixed_derivative(g, u, term.k, term.beta, zeta);
    poly.coefficients.push_back(deriv / (factorial(term.k) * multi_factorial(term.beta)));
  }
  return poly;
}

double taylor_eval(const GroupSpec& g, const TaylorPoly& poly, const Point& z) {
  if (z.dim() != g.d() || poly.anchor.dim() != g.d())
    fail(ErrorCode::DimensionMismatch, "taylor_eval: point dimension != d");
  const double dt = z.t - poly.anchor.t;
  // Increment taken directly as x - e^{(t-s)B} xi; equals the spatial part of
  // zeta^{-1} o z without the extra compose round-trip.
  const Eigen::VectorXd w = z.x - g.exp_B(dt) * poly.anchor.x;
  double acc = 0.0;
  for (std::size_t i = 0; i < poly.terms.size(); ++i) {
    const auto& term = poly.terms[i];
    acc += poly.coefficients[i] * ipow(dt, term.k) * monomial(g, term.beta, w);
  }
  return acc;
}

double remainder(const GroupSpec& g, const ScalarField& u, int n, const Point& zeta,
                 const Point& z) {
  return u.eval(z) - taylor_eval(g, taylor_poly(g, u, n, zeta), z);
}

double time_derivative(const GroupSpec& g, const ScalarField& u, const Point& z) {
  MultiIndex zero(g.d(), 0);
  const double Yu = mixed_derivative(g, u, 1, zero, z);
  Eigen::VectorXd grad(g.d());
  for (int j = 0; j < g.d(); ++j) {
    MultiIndex beta(g.d(), 0);
    beta[j] = 1;
    grad(j) = mixed_derivative(g, u, 0, beta, z);
  }
  return Yu - (g.B() * z.x).dot(grad);
}

double bonfiglioli_prototype(const GroupSpec& g, const ScalarField& u, int n, const Point& zeta,
                             const Point& z) {
  if (!is_prototype(g))
    fail(ErrorCode::UnsupportedGroup, "bonfiglioli_prototype: prototype group only");
  if (n < 0 || n > 4)
    fail(ErrorCode::OrderOutOfRange, "bonfiglioli_prototype: n = " + std::to_string(n));

  auto M = [&](int k, int b1, int b2) { return mixed_derivative(g, u, k, {b1, b2}, zeta); };

  const double dt = z.t - zeta.t;
  const double d1 = z.x(0) - zeta.x(0);
  const double d2 = z.x(1) - zeta.x(1) - dt * zeta.x(0);  // group increment
  const double log2 = d2 - 0.5 * dt * d1;                 // Log component

  double acc = M(0, 0, 0);
  if (n >= 1) acc += M(0, 1, 0) * d1;
  if (n >= 2) acc += 0.5 * M(0, 2, 0) * d1 * d1 + M(1, 0, 0) * dt;
  if (n >= 3) {
    // (Y d1 + d1 Y)/2! reduces to Y d1 + d2/2.
    acc += (M(1, 1, 0) + 0.5 * M(0, 0, 1)) * d1 * dt;
    acc += M(0, 3, 0) * d1 * d1 * d1 / 6.0;
    acc += M(0, 0, 1) * log2;
  }
  if (n >= 4) {
    acc += 0.5 * M(2, 0, 0) * dt * dt;
    acc += M(0, 4, 0) * ipow(d1, 4) / 24.0;
    // (Y d1^2 + d1 Y d1 + d1^2 Y)/3! reduces to (Y d1^2 + d2 d1)/2.
    acc += 0.5 * (M(1, 2, 0) + M(0, 1, 1)) * d1 * d1 * dt;
    acc += M(0, 1, 1) * d1 * log2;
  }
  return acc;
}

namespace {

// Ordered sequences over (Y, d_{x1}, d_{x2}) with weights (2, 1, 3).
long count_sequences(int budget) {
  static const int weights[3] = {2, 1, 3};
  long acc = 0;
  for (int w : weights)
    if (w <= budget) acc += 1 + count_sequences(budget - w);
  return acc;
}

}  // namespace

long bonfiglioli_term_count(int n) {
  if (n < 0) fail(ErrorCode::OrderOutOfRange, "bonfiglioli_term_count");
  return 1 + count_sequences(n);
}

}  // namespace kolmo
