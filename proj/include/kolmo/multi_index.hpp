#pragma once

#include <vector>

#include "kolmo/group.hpp"

namespace kolmo {

/// Spatial multi-index beta, one entry per coordinate.
using MultiIndex = std::vector<int>;

/// Index (k, beta) of one Taylor term; enumeration keeps 2k + |beta|_B <= n.
struct TaylorTermIndex {
  int k = 0;
  MultiIndex beta;

  bool operator==(const TaylorTermIndex&) const = default;
};

/// |beta| = sum_j beta_j.
int length(const MultiIndex& beta);

/// beta! as a double (orders stay small).
double factorial(int n);
double multi_factorial(const MultiIndex& beta);

/// Weighted length |beta|_B = sum_i (2i+1) |beta^{[i]}|.
int b_length(const GroupSpec& g, const MultiIndex& beta);

/// beta^{[level]}: entries of layer `level` kept, all others zeroed.
MultiIndex level_project(const GroupSpec& g, const MultiIndex& beta, int level);

/// All (k, beta) with 2k + |beta|_B <= n, ordered by ascending 2k + |beta|_B,
/// then k, then lexicographic beta.  The order is part of the contract.
std::vector<TaylorTermIndex> enumerate_terms(const GroupSpec& g, int n);

/// v^beta with 0^0 = 1.
double monomial(const GroupSpec& g, const MultiIndex& beta, const Eigen::VectorXd& v);

}  // namespace kolmo
