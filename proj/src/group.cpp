#include "kolmo/group.hpp"

#include <cmath>
#include <string>

#include <Eigen/SVD>

namespace kolmo {

namespace {

double ipow(double base, int e) {
  double acc = 1.0;
  for (int i = 0; i < e; ++i) acc *= base;
  return acc;
}

}  // namespace

GroupSpec GroupSpec::validate(const Eigen::MatrixXd& B, const std::vector<int>& layers) {
  if (layers.empty()) fail(ErrorCode::DimensionMismatch, "layers must be nonempty");
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (layers[i] < 1)
      fail(ErrorCode::NonMonotoneLayers,
           "layer sizes must satisfy p_0 >= ... >= p_r >= 1, got p_" + std::to_string(i) + " = " +
               std::to_string(layers[i]));
    if (i > 0 && layers[i] > layers[i - 1])
      fail(ErrorCode::NonMonotoneLayers,
           "layer sizes must be non-increasing, got p_" + std::to_string(i - 1) + " < p_" +
               std::to_string(i));
  }

  GroupSpec g;
  g.layers_ = layers;
  g.r_ = static_cast<int>(layers.size()) - 1;
  g.cum_.resize(layers.size());
  int acc = 0;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    acc += layers[i];
    g.cum_[i] = acc;
  }
  g.d_ = acc;

  if (B.rows() != g.d_ || B.cols() != g.d_)
    fail(ErrorCode::DimensionMismatch, "B is " + std::to_string(B.rows()) + "x" +
                                           std::to_string(B.cols()) + " but layers sum to " +
                                           std::to_string(g.d_));

  g.layer_of_.resize(g.d_);
  g.q_.resize(g.d_);
  for (int i = 0, j = 0; i <= g.r_; ++i) {
    for (int c = 0; c < layers[i]; ++c, ++j) {
      g.layer_of_[j] = i;
      g.q_[j] = 2 * i + 1;
    }
  }

  // Everything outside the sub-diagonal band must vanish; band entries are
  // kept as given, the rest is stored as exact zeros so the cached powers are
  // structurally nilpotent.
  g.B_ = Eigen::MatrixXd::Zero(g.d_, g.d_);
  for (int row = 0; row < g.d_; ++row) {
    for (int col = 0; col < g.d_; ++col) {
      const int ib = g.layer_of_[row];
      const int jb = g.layer_of_[col];
      if (jb == ib - 1) {
        g.B_(row, col) = B(row, col);
      } else if (std::abs(B(row, col)) > kStarBlockTol) {
        fail(ErrorCode::NonzeroStarBlock,
             "entry (" + std::to_string(row + 1) + "," + std::to_string(col + 1) +
                 ") lies outside the sub-diagonal blocks but is " + std::to_string(B(row, col)));
      }
    }
  }

  for (int j = 1; j <= g.r_; ++j) {
    const int rows = layers[j];
    const int cols = layers[j - 1];
    Eigen::MatrixXd block = g.B_.block(g.cum_[j - 1], j >= 2 ? g.cum_[j - 2] : 0, rows, cols);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(block);
    const auto& sv = svd.singularValues();
    if (sv(0) <= 0.0 || sv(rows - 1) <= kRankTolRel * sv(0))
      fail(ErrorCode::RankDeficientBlock,
           "block B_" + std::to_string(j) + " has rank < " + std::to_string(rows));
  }

  g.powers_.resize(g.r_ + 1);
  g.powers_[0] = Eigen::MatrixXd::Identity(g.d_, g.d_);
  for (int h = 1; h <= g.r_; ++h) g.powers_[h] = g.powers_[h - 1] * g.B_;
  g.zero_ = Eigen::MatrixXd::Zero(g.d_, g.d_);

  // Nilpotency B^{r+1} = 0 is structural once the band check passed.
  if (((g.powers_[g.r_] * g.B_).cwiseAbs().maxCoeff()) != 0.0)
    throw std::logic_error("B^{r+1} != 0 after validation");

  return g;
}

GroupSpec GroupSpec::prototype() {
  Eigen::MatrixXd B(2, 2);
  B << 0, 0, 1, 0;
  return validate(B, {1, 1});
}

int GroupSpec::cum_layer(int i) const {
  if (i < 0) return 0;
  if (i > r_) fail(ErrorCode::LevelOutOfRange, "cum_layer(" + std::to_string(i) + ")");
  return cum_[i];
}

int GroupSpec::layer_of(int j) const {
  if (j < 0 || j >= d_) fail(ErrorCode::DimensionMismatch, "coordinate " + std::to_string(j));
  return layer_of_[j];
}

const Eigen::MatrixXd& GroupSpec::matrix_power(int n) const {
  if (n < 0) fail(ErrorCode::LevelOutOfRange, "matrix_power(" + std::to_string(n) + ")");
  if (n > r_) return zero_;
  return powers_[n];
}

Eigen::MatrixXd GroupSpec::exp_B(double delta) const {
  Eigen::MatrixXd m = powers_[0];
  double c = 1.0;
  for (int h = 1; h <= r_; ++h) {
    c *= delta / h;
    m += c * powers_[h];
  }
  return m;
}

Point compose(const GroupSpec& g, const Point& zeta, const Point& z) {
  if (zeta.dim() != g.d() || z.dim() != g.d())
    fail(ErrorCode::DimensionMismatch, "compose: point dimension != d");
  return Point{zeta.t + z.t, z.x + g.exp_B(z.t) * zeta.x};
}

Point inverse(const GroupSpec& g, const Point& z) {
  if (z.dim() != g.d()) fail(ErrorCode::DimensionMismatch, "inverse: point dimension != d");
  return Point{-z.t, -(g.exp_B(-z.t) * z.x)};
}

Point dilate(const GroupSpec& g, double lambda, const Point& z) {
  if (!(lambda > 0.0)) fail(ErrorCode::NonpositiveLambda, "lambda = " + std::to_string(lambda));
  if (z.dim() != g.d()) fail(ErrorCode::DimensionMismatch, "dilate: point dimension != d");
  Point out;
  out.t = lambda * lambda * z.t;
  out.x.resize(g.d());
  const auto& q = g.dilation_exponents();
  for (int j = 0; j < g.d(); ++j) out.x(j) = ipow(lambda, q[j]) * z.x(j);
  return out;
}

double norm(const GroupSpec& g, const Point& z) {
  if (z.dim() != g.d()) fail(ErrorCode::DimensionMismatch, "norm: point dimension != d");
  double acc = std::sqrt(std::abs(z.t));
  const auto& q = g.dilation_exponents();
  for (int j = 0; j < g.d(); ++j) {
    const double a = std::abs(z.x(j));
    acc += (q[j] == 1) ? a : std::pow(a, 1.0 / q[j]);
  }
  return acc;
}

bool in_ball(const GroupSpec& g, const Point& zeta, const Point& z, double rho) {
  return norm(g, compose(g, inverse(g, zeta), z)) < rho;
}

bool is_prototype(const GroupSpec& g) {
  if (g.d() != 2 || g.r() != 1) return false;
  Eigen::MatrixXd proto(2, 2);
  proto << 0, 0, 1, 0;
  return (g.B() - proto).cwiseAbs().maxCoeff() < 1e-12;
}

}  // namespace kolmo
