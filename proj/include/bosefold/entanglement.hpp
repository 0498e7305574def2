#pragma once

#include <Eigen/Dense>

namespace bosefold {

/// Logarithmic negativity in bits, tagged with how it was obtained.
struct EntanglementResult {
  enum class Method { PureSchmidt, PartialTranspose, BinomialExact, BinomialAsymptotic };

  double value = 0.0;
  Method method = Method::PureSchmidt;
};

/// 2 log2(sum lambda) for a normalized Schmidt vector.
EntanglementResult logneg_pure(const Eigen::VectorXd& schmidt);

/// log2 of the trace norm of the partial transpose of a two-site density matrix
/// indexed (n_A * d + n_B). The transpose acts on A when transpose_first is set.
EntanglementResult logneg_partial_transpose(const Eigen::MatrixXcd& rho, bool transpose_first = true);

/// 2 log2 sum_k sqrt(C(M, k) / 2^M).
EntanglementResult binomial_end_entanglement_exact(int m);

/// log2(2 pi) / 2 + log2(M) / 2.
EntanglementResult binomial_end_entanglement_asymptotic(int m);

/// (n_1 + n_N) / M.
double collection_fraction(const Eigen::VectorXd& occupations, double m);

}  // namespace bosefold
