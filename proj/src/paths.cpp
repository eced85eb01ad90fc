#include "kolmo/paths.hpp"

#include <cmath>
#include <string>

#include <Eigen/SVD>

#include "kolmo/multi_index.hpp"

namespace kolmo {

namespace {

double ipow(double base, int e) {
  double acc = 1.0;
  for (int i = 0; i < e; ++i) acc *= base;
  return acc;
}

void check_layer0_support(const GroupSpec& g, const Eigen::VectorXd& v, const char* who) {
  if (v.size() != g.d()) fail(ErrorCode::DimensionMismatch, std::string(who) + ": |v| != d");
  for (int j = g.cum_layer(0); j < g.d(); ++j)
    if (v(j) != 0.0)
      fail(ErrorCode::UnsupportedDirection,
           std::string(who) + ": direction has a component outside layer 0");
}

}  // namespace

Point flow_X(const GroupSpec& g, int i, double delta, const Point& z) {
  if (z.dim() != g.d()) fail(ErrorCode::DimensionMismatch, "flow_X: point dimension != d");
  if (i < 1 || i > g.layers()[0])
    fail(ErrorCode::FieldIndexOutOfRange,
         "flow_X: X_" + std::to_string(i) + " is not a generator (p_0 = " +
             std::to_string(g.layers()[0]) + ")");
  Point out = z;
  out.x(i - 1) += delta;
  return out;
}

Point flow_Y(const GroupSpec& g, double delta, const Point& z) {
  if (z.dim() != g.d()) fail(ErrorCode::DimensionMismatch, "flow_Y: point dimension != d");
  return Point{z.t + delta, g.exp_B(delta) * z.x};
}

Eigen::VectorXd commutator_vector(const GroupSpec& g, int n, const Eigen::VectorXd& v) {
  check_layer0_support(g, v, "commutator_vector");
  if (n < 0) fail(ErrorCode::LevelOutOfRange, "commutator_vector: n < 0");
  return g.matrix_power(n) * v;
}

PivotSet pivot_columns(const GroupSpec& g, int n) {
  if (n < 1 || n > g.r())
    fail(ErrorCode::LevelOutOfRange, "pivot_columns: n = " + std::to_string(n));
  const int p0 = g.layers()[0];
  const int pn = g.layers()[n];
  // Columns of prod_{j=1..n} B_j = layer-n row block of B^n restricted to V_0.
  Eigen::MatrixXd block = g.matrix_power(n).block(g.cum_layer(n - 1), 0, pn, p0);
  const double scale = block.cwiseAbs().maxCoeff();

  PivotSet out;
  Eigen::MatrixXd selected(pn, pn);
  int count = 0;
  for (int c = 0; c < p0 && count < pn; ++c) {
    Eigen::VectorXd cand = block.col(c);
    // Residual after projecting onto the span of the selected columns.
    if (count > 0) {
      Eigen::MatrixXd sel = selected.leftCols(count);
      cand -= sel * sel.colPivHouseholderQr().solve(block.col(c));
    }
    if (cand.norm() > GroupSpec::kRankTolRel * scale) {
      selected.col(count) = block.col(c);
      out.columns.push_back(c);
      ++count;
    }
  }
  // Full-rank blocks guarantee p_n independent columns exist.
  if (count != pn) throw std::logic_error("pivot_columns: rank defect after validation");

  out.basis = Eigen::MatrixXd::Zero(g.d(), pn);
  for (int c = 0; c < pn; ++c) out.basis(out.columns[c], c) = 1.0;
  return out;
}

namespace {

// Applies one elementary map and records the waypoint.
void step_straight(const Eigen::VectorXd& shift, PathResult& path) {
  Point next = path.endpoint;
  next.x += shift;
  path.endpoint = next;
  path.waypoints.push_back(next);
  ++path.segment_count;
}

void step_Y(const GroupSpec& g, double delta, PathResult& path) {
  path.endpoint = flow_Y(g, delta, path.endpoint);
  path.waypoints.push_back(path.endpoint);
  ++path.segment_count;
}

void run_gamma(const GroupSpec& g, int n, int k, const Eigen::VectorXd& v, double delta,
               PathResult& path) {
  if (k == n) {
    step_straight(ipow(delta, 2 * n + 1) * (g.matrix_power(n) * v), path);
    return;
  }
  run_gamma(g, n, k - 1, v, delta, path);
  step_Y(g, delta * delta, path);
  run_gamma(g, n, k - 1, v, -delta, path);
  step_Y(g, -delta * delta, path);
}

}  // namespace

PathResult gamma_iterative(const GroupSpec& g, int n, int k, const Eigen::VectorXd& v,
                           double delta, const Point& z) {
  if (z.dim() != g.d()) fail(ErrorCode::DimensionMismatch, "gamma_iterative: point dim != d");
  check_layer0_support(g, v, "gamma_iterative");
  if (n < -1 || n > g.r())
    fail(ErrorCode::LevelOutOfRange, "gamma_iterative: n = " + std::to_string(n));
  const int base = std::max(n, 0);
  if (k < base || k > g.r())
    fail(ErrorCode::LevelOutOfRange, "gamma_iterative: k = " + std::to_string(k));

  PathResult path;
  path.endpoint = z;
  path.waypoints.push_back(z);
  if (v.isZero(0.0)) return path;  // constant path
  run_gamma(g, base, k, v, delta, path);
  return path;
}

Eigen::MatrixXd S_closed_form(const GroupSpec& g, int n, int k, double delta) {
  if (n < -1 || n > g.r()) fail(ErrorCode::LevelOutOfRange, "S_closed_form: n");
  const int base = std::max(n, 0);
  if (k < base || k > g.r()) fail(ErrorCode::LevelOutOfRange, "S_closed_form: k");

  if (k == base) return ipow(delta, 2 * base + 1) * g.matrix_power(base);
  // S_{n,k} = (-1)^{k-n} delta^{2n+1} B^n ( sum_{j>=1} (-B)^j delta^{2j} / j! )^{k-n};
  // the factor power is expanded brute force over h in N^{k-n}, |h| <= r.
  const int m = k - base;
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(g.d(), g.d());
  std::vector<int> h(m, 1);
  while (true) {
    int tot = 0;
    for (int e : h) tot += e;
    if (tot <= g.r()) {
      double c = ipow(delta, 2 * tot) * ((tot % 2) ? -1.0 : 1.0);
      for (int e : h) c /= factorial(e);
      acc += c * g.matrix_power(tot);
    }
    // next tuple in {1..r}^m
    int pos = m - 1;
    while (pos >= 0 && h[pos] == g.r()) h[pos--] = 1;
    if (pos < 0) break;
    ++h[pos];
  }
  const double sign = (m % 2) ? -1.0 : 1.0;
  return sign * ipow(delta, 2 * base + 1) * (g.matrix_power(base) * acc);
}

Eigen::MatrixXd S_tilde(const GroupSpec& g, int n, int k, double delta) {
  Eigen::MatrixXd s = S_closed_form(g, n, k, delta);
  return s - ipow(delta, 2 * k + 1) * g.matrix_power(k);
}

ConnectionResult connect(const GroupSpec& g, int n, const Point& zeta, const Eigen::VectorXd& y) {
  if (zeta.dim() != g.d() || y.size() != g.d())
    fail(ErrorCode::DimensionMismatch, "connect: dimension mismatch");
  if (n < 0 || n > g.r()) fail(ErrorCode::LevelOutOfRange, "connect: n = " + std::to_string(n));
  for (int j = 0; j < g.cum_layer(n - 1); ++j)
    if (y(j) != 0.0)
      fail(ErrorCode::UnsupportedIncrement,
           "connect: y has a component on layer " + std::to_string(g.layer_of(j)) +
               " below the starting level " + std::to_string(n));

  ConnectionResult out;
  out.points.push_back(zeta);  // zeta_{n-1}
  Point cur = zeta;
  for (int k = n; k <= g.r(); ++k) {
    const int lo = g.cum_layer(k - 1);
    const int pk = g.layers()[k];
    // Layer-k gap still to be realized: y^{[k]} + xi^{[k]} - xi_{k-1}^{[k]}.
    Eigen::VectorXd gap = y.segment(lo, pk) + zeta.x.segment(lo, pk) - cur.x.segment(lo, pk);

    Eigen::VectorXd w = Eigen::VectorXd::Zero(g.d());
    if (k == 0) {
      w.head(g.layers()[0]) = gap;
    } else {
      PivotSet piv = pivot_columns(g, k);
      Eigen::MatrixXd sub(pk, pk);
      for (int c = 0; c < pk; ++c)
        sub.col(c) = g.matrix_power(k).block(lo, 0, pk, g.layers()[0]).col(piv.columns[c]);
      Eigen::VectorXd coeff = sub.colPivHouseholderQr().solve(gap);
      for (int c = 0; c < pk; ++c) w(piv.columns[c]) = coeff(c);
    }

    const double wn = w.norm();
    if (wn == 0.0) {
      // Increment already achieved; skip the step.
      out.deltas.push_back(0.0);
      out.directions.push_back(w);
      out.segments.push_back(PathResult{cur, {cur}, 0});
      out.points.push_back(cur);
      continue;
    }
    const double dk = std::pow(wn, 1.0 / (2 * k + 1));
    Eigen::VectorXd vk = w / wn;
    PathResult seg = gamma_iterative(g, n - 1, k, vk, dk, cur);
    cur = seg.endpoint;
    out.deltas.push_back(dk);
    out.directions.push_back(vk);
    out.segments.push_back(std::move(seg));
    out.points.push_back(cur);
  }
  return out;
}

}  // namespace kolmo
