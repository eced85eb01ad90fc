#include "kolmo/polynomial.hpp"

#include <string>

namespace kolmo {

Polynomial Polynomial::monomial(int d, int tpow, const MultiIndex& xpow, double coeff) {
  Polynomial p(d);
  p.add_term(tpow, xpow, coeff);
  return p;
}

void Polynomial::add_term(int tpow, const MultiIndex& xpow, double coeff) {
  if (static_cast<int>(xpow.size()) != d_ || tpow < 0)
    fail(ErrorCode::DimensionMismatch, "Polynomial::add_term");
  if (coeff == 0.0) return;
  Key key{tpow, xpow};
  double& slot = terms_[key];
  slot += coeff;
  if (slot == 0.0) terms_.erase(key);
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [key, c] : other.terms_) add_term(key.tpow, key.xpow, c);
  return *this;
}

double Polynomial::eval(const Point& z) const {
  double acc = 0.0;
  for (const auto& [key, c] : terms_) {
    double term = c;
    for (int e = 0; e < key.tpow; ++e) term *= z.t;
    for (int j = 0; j < d_; ++j)
      for (int e = 0; e < key.xpow[j]; ++e) term *= z.x(j);
    acc += term;
  }
  return acc;
}

Polynomial Polynomial::dt() const {
  Polynomial out(d_);
  for (const auto& [key, c] : terms_)
    if (key.tpow > 0) out.add_term(key.tpow - 1, key.xpow, c * key.tpow);
  return out;
}

Polynomial Polynomial::dx(int j) const {
  Polynomial out(d_);
  for (const auto& [key, c] : terms_) {
    if (key.xpow[j] > 0) {
      MultiIndex xp = key.xpow;
      --xp[j];
      out.add_term(key.tpow, xp, c * key.xpow[j]);
    }
  }
  return out;
}

Polynomial Polynomial::apply_Y(const GroupSpec& g) const {
  // <Bx, grad p> + d_t p
  Polynomial out = dt();
  for (int i = 0; i < d_; ++i) {
    Polynomial di = dx(i);
    if (di.empty()) continue;
    for (const auto& [key, c] : di.terms_) {
      for (int j = 0; j < d_; ++j) {
        const double b = g.B()(i, j);
        if (b == 0.0) continue;
        MultiIndex xp = key.xpow;
        ++xp[j];
        out.add_term(key.tpow, xp, c * b);
      }
    }
  }
  return out;
}

Polynomial Polynomial::derivative(int k, const MultiIndex& beta, const GroupSpec& g) const {
  Polynomial out = *this;
  for (int j = 0; j < d_; ++j)
    for (int e = 0; e < beta[j]; ++e) out = out.dx(j);
  for (int i = 0; i < k; ++i) out = out.apply_Y(g);
  return out;
}

int Polynomial::b_degree(const GroupSpec& g) const {
  int deg = 0;
  for (const auto& [key, c] : terms_) {
    int w = 2 * key.tpow;
    for (int j = 0; j < d_; ++j) w += g.dilation_exponents()[j] * key.xpow[j];
    if (w > deg) deg = w;
  }
  return deg;
}

}  // namespace kolmo
