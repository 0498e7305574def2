#pragma once

#include <functional>
#include <vector>

namespace bosefold {

/// log(n!) via lgamma.
double log_factorial(int n);

/// log C(n, k).
double log_binomial(int n, int k);

/// Gauss-Legendre nodes and weights on [-1, 1] (Newton iteration on P_n).
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(int order);

}  // namespace bosefold
