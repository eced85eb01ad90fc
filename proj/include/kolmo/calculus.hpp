#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "kolmo/group.hpp"
#include "kolmo/multi_index.hpp"

namespace kolmo {

/// One of the fields spanning the group: Y or a generator X_i.
struct FieldId {
  bool is_Y = true;
  int i = 0;  // 1-based generator index when !is_Y

  static FieldId Y() { return FieldId{true, 0}; }
  static FieldId X(int i) { return FieldId{false, i}; }

  /// Formal degree: 1 for X_i, 2 for Y.
  double formal_degree() const { return is_Y ? 2.0 : 1.0; }
};

/// Scalar function on the group.  `derivative_oracle`, when present, returns
/// the mixed derivative Y^k d^beta u analytically and must agree with `eval`
/// at (k, beta) = (0, 0).  Fields with kinks set `singular_distance` so that
/// samplers needing classical derivatives can stay clear of the singular set.
struct ScalarField {
  std::function<double(const Point&)> eval;
  std::function<double(int, const MultiIndex&, const Point&)> derivative_oracle;
  std::string smoothness_tag = "smooth";
  std::function<double(const Point&)> singular_distance;
  int smooth_order = std::numeric_limits<int>::max();  // declared max B-order

  double operator()(const Point& z) const { return eval(z); }
  bool has_oracle() const { return static_cast<bool>(derivative_oracle); }
};

/// Central difference (u(e^{hX} z) - u(e^{-hX} z)) / 2h; the caller owns h.
double lie_derivative_fd(const GroupSpec& g, const ScalarField& u, FieldId field, const Point& z,
                         double h);

/// Mixed derivative Y^k d^beta u at zeta: analytic when the field carries an
/// oracle, otherwise nested central stencils for d^beta followed by
/// Richardson-extrapolated differences along the Y flow.
double mixed_derivative(const GroupSpec& g, const ScalarField& u, int k, const MultiIndex& beta,
                        const Point& zeta);

/// Taylor polynomial around `anchor`: coefficient of the term (k, beta) is
/// Y^k d^beta u(anchor) / (k! beta!); term order is enumerate_terms(g, order).
struct TaylorPoly {
  Point anchor;
  int order = 0;
  std::vector<TaylorTermIndex> terms;
  std::vector<double> coefficients;
};

TaylorPoly taylor_poly(const GroupSpec& g, const ScalarField& u, int n, const Point& zeta);

/// Sum of coefficient * (t-s)^k * (x - e^{(t-s)B} xi)^beta.
double taylor_eval(const GroupSpec& g, const TaylorPoly& poly, const Point& z);

/// u(z) - T_n u(zeta, z).
double remainder(const GroupSpec& g, const ScalarField& u, int n, const Point& zeta,
                 const Point& z);

/// Reconstructed d_t u = Yu - <Bx, grad u>.
double time_derivative(const GroupSpec& g, const ScalarField& u, const Point& z);

/// Permutation-form Taylor polynomial on the prototype group, n <= 4,
/// evaluated through the Log increments with the symmetrized operator sums;
/// composite operators are reduced to the Y^k d^beta basis through
/// d_{x1} Y = Y d_{x1} + d_{x2}.  Agrees with taylor_eval for n <= 2 exactly
/// and for n <= 4 algebraically.
double bonfiglioli_prototype(const GroupSpec& g, const ScalarField& u, int n, const Point& zeta,
                             const Point& z);

/// Number of terms of the permutation-form polynomial of order n on the
/// prototype group (ordered derivative sequences with total weight <= n,
/// plus the constant term).  Reported next to the compact count.
long bonfiglioli_term_count(int n);

}  // namespace kolmo
