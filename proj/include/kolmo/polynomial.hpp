#pragma once

#include <map>
#include <vector>

#include "kolmo/group.hpp"
#include "kolmo/multi_index.hpp"

namespace kolmo {

/// Sparse polynomial in (t, x_1..x_d).  Small helper used to build scalar
/// fields with exact mixed-derivative oracles: d/dt, d/dx_j and the drift
/// action Y p = <Bx, grad p> + d_t p all stay inside the class.
class Polynomial {
public:
  explicit Polynomial(int d) : d_(d) {}

  static Polynomial monomial(int d, int tpow, const MultiIndex& xpow, double coeff = 1.0);

  int dim() const { return d_; }
  bool empty() const { return terms_.empty(); }

  void add_term(int tpow, const MultiIndex& xpow, double coeff);
  Polynomial& operator+=(const Polynomial& other);

  double eval(const Point& z) const;

  Polynomial dt() const;
  Polynomial dx(int j) const;  // 0-based coordinate
  Polynomial derivative(int k, const MultiIndex& beta, const GroupSpec& g) const;  // Y^k d^beta
  Polynomial apply_Y(const GroupSpec& g) const;

  /// Max over terms of 2*tpow + sum_j q_j xpow_j.
  int b_degree(const GroupSpec& g) const;

private:
  struct Key {
    int tpow;
    std::vector<int> xpow;
    bool operator<(const Key& o) const {
      if (tpow != o.tpow) return tpow < o.tpow;
      return xpow < o.xpow;
    }
  };

  int d_;
  std::map<Key, double> terms_;
};

}  // namespace kolmo
