#pragma once

#include <vector>

#include <Eigen/Dense>

#include "kolmo/errors.hpp"
#include "kolmo/point.hpp"

namespace kolmo {

/// Homogeneous group determined by a nilpotent block matrix B together with
/// the layer sizes (p_0, ..., p_r).  Construction goes through validate(),
/// which checks the block structure (only full-rank sub-diagonal blocks, all
/// other blocks null) and caches the powers B^0..B^r.  Instances are
/// immutable; every operation below is a pure function.
class GroupSpec {
public:
  /// Off-band entries above this magnitude reject the matrix.
  static constexpr double kStarBlockTol = 1e-12;
  /// Relative singular-value cutoff for the block rank test.
  static constexpr double kRankTolRel = 1e-10;

  static GroupSpec validate(const Eigen::MatrixXd& B, const std::vector<int>& layers);

  /// The d = 2 group with B = [[0,0],[1,0]], layers (1,1), dilations
  /// (lambda^2, lambda, lambda^3).
  static GroupSpec prototype();

  const Eigen::MatrixXd& B() const { return B_; }
  int d() const { return d_; }
  int r() const { return r_; }
  const std::vector<int>& layers() const { return layers_; }

  /// Cumulative layer size p_0 + ... + p_i; cum_layer(-1) = 0.
  int cum_layer(int i) const;

  /// Dilation exponents q_1..q_d (2i+1 on layer i); q[0] belongs to x_1.
  const std::vector<int>& dilation_exponents() const { return q_; }

  /// Layer index of the 0-based spatial coordinate j.
  int layer_of(int j) const;

  /// B^n, the zero matrix for n > r.
  const Eigen::MatrixXd& matrix_power(int n) const;

  /// e^{delta B} as the exact finite sum over the cached powers.
  Eigen::MatrixXd exp_B(double delta) const;

private:
  GroupSpec() = default;

  Eigen::MatrixXd B_;
  std::vector<int> layers_;
  std::vector<int> cum_;       // cum_[i] = p_0 + ... + p_i
  std::vector<int> q_;
  std::vector<int> layer_of_;  // coordinate -> layer
  int d_ = 0;
  int r_ = 0;
  std::vector<Eigen::MatrixXd> powers_;  // B^0 .. B^r
  Eigen::MatrixXd zero_;
};

/// zeta o z = (s + t, x + e^{tB} xi) for zeta = (s, xi), z = (t, x).
Point compose(const GroupSpec& g, const Point& zeta, const Point& z);

/// z^{-1} = (-t, -e^{-tB} x).
Point inverse(const GroupSpec& g, const Point& z);

/// Anisotropic dilation (lambda^2 t, lambda^{q_1} x_1, ..., lambda^{q_d} x_d).
Point dilate(const GroupSpec& g, double lambda, const Point& z);

/// Homogeneous quasi-norm |t|^{1/2} + sum_j |x_j|^{1/q_j}.
double norm(const GroupSpec& g, const Point& z);

/// Membership in the quasi-ball of radius rho centered at zeta.
bool in_ball(const GroupSpec& g, const Point& zeta, const Point& z, double rho);

/// True when g is the d = 2 prototype group.
bool is_prototype(const GroupSpec& g);

}  // namespace kolmo
