#include "kolmo/fields_builtin.hpp"

#include <cmath>
#include <string>

namespace kolmo {

namespace {

constexpr double kAbsOffset = 0.5;
constexpr double kHalfPi = 1.5707963267948966;

double dsin(double x, int m) { return std::sin(x + m * kHalfPi); }
double dcos(double x, int m) { return std::cos(x + m * kHalfPi); }

double ipow(double base, int e) {
  double acc = 1.0;
  for (int i = 0; i < e; ++i) acc *= base;
  return acc;
}

void require_prototype(const GroupSpec& g, const std::string& name) {
  if (!is_prototype(g))
    fail(ErrorCode::UnsupportedGroup, "field '" + name + "' is a prototype-group fixture");
}

ScalarField make_sin_cos_poly(const GroupSpec& g) {
  require_prototype(g, "sin_cos_poly");
  ScalarField u;
  u.eval = [](const Point& z) {
    return std::sin(z.x(0)) + std::cos(z.x(1)) + z.t * z.t;
  };
  // Y = x1 d_{x2} + d_t, so Y^k f(x2) = x1^k f^{(k)}(x2) and Y annihilates
  // pure functions of x1.
  u.derivative_oracle = [](int k, const MultiIndex& beta, const Point& z) {
    const int b1 = beta[0], b2 = beta[1];
    if (b1 > 0 && b2 > 0) return 0.0;
    if (b1 > 0) return k == 0 ? dsin(z.x(0), b1) : 0.0;
    double acc = ipow(z.x(0), k) * dcos(z.x(1), b2 + k);
    if (b2 == 0) {
      if (k == 0) acc += std::sin(z.x(0)) + z.t * z.t;
      if (k == 1) acc += 2.0 * z.t;
      if (k == 2) acc += 2.0;
    }
    return acc;
  };
  return u;
}

ScalarField make_abs_x2(const GroupSpec& g) {
  require_prototype(g, "abs_x2");
  ScalarField u;
  u.eval = [](const Point& z) { return std::abs(z.x(1) - kAbsOffset); };
  // Off the kink u = s (x2 - c) with s = sgn(x2 - c) locally constant.
  u.derivative_oracle = [](int k, const MultiIndex& beta, const Point& z) {
    const double s = (z.x(1) >= kAbsOffset) ? 1.0 : -1.0;
    if (beta[0] > 0) return 0.0;
    if (beta[1] == 0 && k == 0) return std::abs(z.x(1) - kAbsOffset);
    if (beta[1] == 0 && k == 1) return s * z.x(0);
    if (beta[1] == 1 && k == 0) return s;
    return 0.0;
  };
  u.smoothness_tag = "kink at x2 = c";
  u.singular_distance = [](const Point& z) { return std::abs(z.x(1) - kAbsOffset); };
  return u;
}

ScalarField make_abs_x2_3half(const GroupSpec& g) {
  require_prototype(g, "abs_x2_3half");
  ScalarField u;
  u.eval = [](const Point& z) { return std::pow(std::abs(z.x(1) - kAbsOffset), 1.5); };
  // Y^k d_{x2}^m |w|^{3/2} = x1^k D^{m+k}, D^j = prod_{i<j}(3/2 - i) |w|^{3/2-j} s^j.
  u.derivative_oracle = [](int k, const MultiIndex& beta, const Point& z) {
    if (beta[0] > 0) return 0.0;
    const double w = z.x(1) - kAbsOffset;
    const double s = (w >= 0) ? 1.0 : -1.0;
    const int j = beta[1] + k;
    double coeff = 1.0;
    for (int i = 0; i < j; ++i) coeff *= (1.5 - i);
    const double sj = (j % 2) ? s : 1.0;
    return ipow(z.x(0), k) * coeff * std::pow(std::abs(w), 1.5 - j) * sj;
  };
  u.smoothness_tag = "kink at x2 = c";
  u.singular_distance = [](const Point& z) { return std::abs(z.x(1) - kAbsOffset); };
  return u;
}

ScalarField make_transport(const GroupSpec& g) {
  require_prototype(g, "transport");
  ScalarField u;
  u.eval = [](const Point& z) { return std::sin(z.x(1) - z.t * z.x(0)); };
  u.smoothness_tag = "constant along Y";
  return u;
}

ScalarField make_gauss_smoothed_abs(const GroupSpec& g) {
  require_prototype(g, "gauss_smoothed_abs");
  ScalarField u;
  // Mean of |N(x2, x1^4)|: x2 erf(x2 / (sqrt(2) x1^2)) + x1^2 sqrt(2/pi) e^{-x2^2/(2 x1^4)}.
  u.eval = [](const Point& z) {
    const double s = z.x(0) * z.x(0);
    const double m = z.x(1);
    if (s == 0.0) return std::abs(m);
    const double a = m / (s * 1.4142135623730951);
    return m * std::erf(a) + s * 0.7978845608028654 * std::exp(-a * a);
  };
  u.smoothness_tag = "Euclidean kink at x1 = 0";
  u.singular_distance = [](const Point& z) { return std::abs(z.x(0)); };
  return u;
}

ScalarField make_mono(const GroupSpec& g, const std::string& name) {
  // mono:<beta>:<k>, beta comma-separated with d entries.
  const auto c1 = name.find(':');
  const auto c2 = name.rfind(':');
  if (c1 == std::string::npos || c2 == c1)
    fail(ErrorCode::ConfigError, "monomial field needs the form mono:<beta>:<k>, got '" + name + "'");
  MultiIndex beta;
  std::string spec = name.substr(c1 + 1, c2 - c1 - 1);
  std::size_t pos = 0;
  try {
    while (pos < spec.size()) {
      std::size_t used = 0;
      beta.push_back(std::stoi(spec.substr(pos), &used));
      pos += used;
      if (pos < spec.size()) {
        if (spec[pos] != ',') throw std::invalid_argument(spec);
        ++pos;
      }
    }
    if (static_cast<int>(beta.size()) != g.d())
      fail(ErrorCode::ConfigError, "field '" + name + "' has " + std::to_string(beta.size()) +
                                       " exponents, group dimension is " + std::to_string(g.d()));
    for (int b : beta)
      if (b < 0) throw std::invalid_argument(spec);
    const int k = std::stoi(name.substr(c2 + 1));
    if (k < 0) throw std::invalid_argument(name);
    return make_polynomial_field(g, Polynomial::monomial(g.d(), k, beta));
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(ErrorCode::ConfigError, "cannot parse monomial field '" + name + "'");
  }
}

}  // namespace

ScalarField make_polynomial_field(const GroupSpec& g, Polynomial p) {
  if (p.dim() != g.d()) fail(ErrorCode::DimensionMismatch, "make_polynomial_field");
  ScalarField u;
  u.eval = [p](const Point& z) { return p.eval(z); };
  u.derivative_oracle = [p, g](int k, const MultiIndex& beta, const Point& z) {
    return p.derivative(k, beta, g).eval(z);
  };
  u.smoothness_tag = "polynomial";
  return u;
}

ScalarField make_field(const GroupSpec& g, const std::string& name) {
  if (name == "sin_cos_poly") return make_sin_cos_poly(g);
  if (name == "abs_x2") return make_abs_x2(g);
  if (name == "abs_x2_3half") return make_abs_x2_3half(g);
  if (name == "transport") return make_transport(g);
  if (name == "gauss_smoothed_abs") return make_gauss_smoothed_abs(g);
  if (name.rfind("mono:", 0) == 0) return make_mono(g, name);
  fail(ErrorCode::ConfigError, "unknown field '" + name + "'");
}

std::vector<std::string> builtin_field_names() {
  return {"sin_cos_poly", "abs_x2", "abs_x2_3half", "transport", "gauss_smoothed_abs",
          "mono:<beta>:<k>"};
}

double abs_field_offset() { return kAbsOffset; }

}  // namespace kolmo
