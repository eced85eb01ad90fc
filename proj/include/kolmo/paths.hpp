#pragma once

#include <vector>

#include <Eigen/Dense>

#include "kolmo/group.hpp"

namespace kolmo {

/// Straight flow e^{delta X_i}(z) = (t, x + delta e_i); i is the 1-based
/// generator index, 1 <= i <= p_0.
Point flow_X(const GroupSpec& g, int i, double delta, const Point& z);

/// Drift flow e^{delta Y}(z) = (t + delta, e^{delta B} x).
Point flow_Y(const GroupSpec& g, double delta, const Point& z);

/// B^n v for v supported on layer 0; the result lies in V_n.
Eigen::VectorXd commutator_vector(const GroupSpec& g, int n, const Eigen::VectorXd& v);

/// Pivot columns making B^n : V_{0,n} -> V_n a bijection.
struct PivotSet {
  std::vector<int> columns;  // 0-based layer-0 coordinates, |columns| = p_n
  Eigen::MatrixXd basis;     // d x p_n, unit columns e_j for j in `columns`
};

/// Greedy left-to-right selection of the first p_n independent columns of
/// prod_{j=1..n} B_j, rank growth tested at relative tolerance 1e-10.
PivotSet pivot_columns(const GroupSpec& g, int n);

struct PathResult {
  Point endpoint;
  std::vector<Point> waypoints;  // starts at the input point, ends at endpoint
  int segment_count = 0;         // elementary straight / Y flow maps applied
};

/// Switching path gamma^{(n,k)}_{v,delta}(z).  Level n = -1 is an alias for
/// n = 0; base case is the single straight step (t, x + delta^{2n+1} B^n v),
/// one recursion level wraps the level-k path as
///   e^{-delta^2 Y} o gamma_{-delta} o e^{delta^2 Y} o gamma_{+delta}.
/// v must be supported on layer 0; v = 0 yields the constant path.
PathResult gamma_iterative(const GroupSpec& g, int n, int k, const Eigen::VectorXd& v,
                           double delta, const Point& z);

/// Closed form of the endpoint shift: gamma^{(n,k)}_{v,delta}(t,x) =
/// (t, x + S_{n,k}(delta) v).
Eigen::MatrixXd S_closed_form(const GroupSpec& g, int n, int k, double delta);

/// Spillover part S_{n,k}(delta) - delta^{2k+1} B^k; maps V_0 into the layers
/// above k, and vanishes for k = n and k = r.
Eigen::MatrixXd S_tilde(const GroupSpec& g, int n, int k, double delta);

struct ConnectionResult {
  std::vector<Point> points;                // zeta_{n-1}, ..., zeta_r
  std::vector<double> deltas;               // delta_n, ..., delta_r (>= 0)
  std::vector<Eigen::VectorXd> directions;  // v_n, ..., v_r (unit, or zero when skipped)
  std::vector<PathResult> segments;         // gamma path realizing each step
};

/// Moves zeta to zeta + (0, y) along the paths gamma^{(n-1,k)}, k = n..r.
/// y must be supported on layers >= n; the level-k step solves
/// B^k w_k = y^{[k]} + xi^{[k]} - xi_{k-1}^{[k]} in V_{0,k} and runs the path
/// with v_k = w_k/|w_k|, delta_k = |w_k|^{1/(2k+1)}.  Zero increments are
/// skipped (delta_k = 0, zeta_k = zeta_{k-1}).
ConnectionResult connect(const GroupSpec& g, int n, const Point& zeta, const Eigen::VectorXd& y);

}  // namespace kolmo
