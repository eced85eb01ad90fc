#include "kolmo/multi_index.hpp"

#include <algorithm>
#include <string>

namespace kolmo {

int length(const MultiIndex& beta) {
  int acc = 0;
  for (int b : beta) acc += b;
  return acc;
}

double factorial(int n) {
  double acc = 1.0;
  for (int i = 2; i <= n; ++i) acc *= i;
  return acc;
}

double multi_factorial(const MultiIndex& beta) {
  double acc = 1.0;
  for (int b : beta) acc *= factorial(b);
  return acc;
}

int b_length(const GroupSpec& g, const MultiIndex& beta) {
  if (static_cast<int>(beta.size()) != g.d())
    fail(ErrorCode::DimensionMismatch, "b_length: multi-index has " +
                                           std::to_string(beta.size()) + " entries, d = " +
                                           std::to_string(g.d()));
  int acc = 0;
  for (int j = 0; j < g.d(); ++j) acc += g.dilation_exponents()[j] * beta[j];
  return acc;
}

MultiIndex level_project(const GroupSpec& g, const MultiIndex& beta, int level) {
  if (static_cast<int>(beta.size()) != g.d())
    fail(ErrorCode::DimensionMismatch, "level_project: multi-index size != d");
  if (level < 0 || level > g.r())
    fail(ErrorCode::LevelOutOfRange, "level_project: level " + std::to_string(level));
  MultiIndex out(beta.size(), 0);
  for (int j = g.cum_layer(level - 1); j < g.cum_layer(level); ++j) out[j] = beta[j];
  return out;
}

namespace {

// Appends every beta over coordinates [j, d) with weighted length <= budget.
void enumerate_betas(const GroupSpec& g, int j, int budget, MultiIndex& beta,
                     std::vector<MultiIndex>& out) {
  if (j == g.d()) {
    out.push_back(beta);
    return;
  }
  const int q = g.dilation_exponents()[j];
  for (int e = 0; e * q <= budget; ++e) {
    beta[j] = e;
    enumerate_betas(g, j + 1, budget - e * q, beta, out);
  }
  beta[j] = 0;
}

}  // namespace

std::vector<TaylorTermIndex> enumerate_terms(const GroupSpec& g, int n) {
  std::vector<TaylorTermIndex> terms;
  for (int k = 0; 2 * k <= n; ++k) {
    std::vector<MultiIndex> betas;
    MultiIndex scratch(g.d(), 0);
    enumerate_betas(g, 0, n - 2 * k, scratch, betas);
    for (auto& b : betas) terms.push_back(TaylorTermIndex{k, std::move(b)});
  }
  std::sort(terms.begin(), terms.end(), [&](const TaylorTermIndex& a, const TaylorTermIndex& b) {
    const int wa = 2 * a.k + b_length(g, a.beta);
    const int wb = 2 * b.k + b_length(g, b.beta);
    if (wa != wb) return wa < wb;
    if (a.k != b.k) return a.k < b.k;
    return std::lexicographical_compare(a.beta.begin(), a.beta.end(), b.beta.begin(),
                                        b.beta.end());
  });
  return terms;
}

double monomial(const GroupSpec& g, const MultiIndex& beta, const Eigen::VectorXd& v) {
  if (static_cast<int>(beta.size()) != g.d() || v.size() != g.d())
    fail(ErrorCode::DimensionMismatch, "monomial: size mismatch");
  double acc = 1.0;
  for (int j = 0; j < g.d(); ++j)
    for (int e = 0; e < beta[j]; ++e) acc *= v(j);
  return acc;
}

}  // namespace kolmo
