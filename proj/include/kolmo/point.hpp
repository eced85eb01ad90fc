#pragma once

#include <Eigen/Dense>

namespace kolmo {

/// Group element z = (t, x) of R x R^d.
struct Point {
  double t = 0.0;
  Eigen::VectorXd x;

  static Point zero(int d) { return Point{0.0, Eigen::VectorXd::Zero(d)}; }

  int dim() const { return static_cast<int>(x.size()); }
};

}  // namespace kolmo
