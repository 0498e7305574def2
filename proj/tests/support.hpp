#pragma once

#include "bosefold/mps.hpp"
#include "bosefold/oracle/dense_fock.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <random>
#include <vector>

namespace testing_support {

inline double amplitude_deviation(const bosefold::BlockDecimationState& state,
                                  const bosefold::oracle::SparseState& ref, int m) {
  double worst = 0.0;
  for (const auto& cfg : bosefold::oracle::fock_basis(state.n_sites(), m)) {
    const auto it = ref.find(cfg);
    const std::complex<double> expected = it == ref.end() ? 0.0 : it->second;
    worst = std::max(worst, std::abs(state.amplitude(cfg) - expected));
  }
  return worst;
}

inline Eigen::VectorXcd random_unit(int n, std::mt19937& rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXcd v(n);
  for (int k = 0; k < n; ++k) v(k) = {normal(rng), normal(rng)};
  return v.normalized();
}

inline Eigen::VectorXcd unit(int n, int site) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
  v(site - 1) = 1.0;
  return v;
}

/// Haar-like random number-conserving two-mode unitary: exp(i H_s) with a random
/// Hermitian H_s inside every total-occupation sector.
inline bosefold::TwoModeGate random_two_mode_gate(int bond, int d, std::mt19937& rng) {
  bosefold::TwoModeGate g;
  g.bond = bond;
  g.local_dim = d;
  g.matrix = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (int total = 0; total <= 2 * (d - 1); ++total) {
    std::vector<int> idx;
    for (int a = 0; a < d; ++a)
      if (total - a >= 0 && total - a < d) idx.push_back(a * d + (total - a));
    const int n = static_cast<int>(idx.size());
    const Eigen::MatrixXcd h = bosefold::oracle::random_hermitian(n, rng);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    const Eigen::VectorXcd phases = (std::complex<double>(0, 1) * es.eigenvalues().cast<std::complex<double>>()).array().exp();
    const Eigen::MatrixXcd u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) g.matrix(idx[r], idx[c]) = u(r, c);
  }
  return g;
}

/// Full amplitude table of an MPS as a sparse state (entries below 1e-15 skipped).
inline bosefold::oracle::SparseState to_sparse(const bosefold::BlockDecimationState& state) {
  bosefold::oracle::SparseState out;
  const int n = state.n_sites();
  const int d = state.local_dim();
  std::vector<int> cfg(n, 0);
  while (true) {
    const auto a = state.amplitude(cfg);
    if (std::abs(a) > 1e-15) out[cfg] = a;
    int k = n - 1;
    while (k >= 0 && ++cfg[k] == d) cfg[k--] = 0;
    if (k < 0) break;
  }
  return out;
}

inline double sparse_deviation(const bosefold::BlockDecimationState& state, const bosefold::oracle::SparseState& ref) {
  const auto got = to_sparse(state);
  double worst = 0.0;
  for (const auto& [cfg, a] : got) {
    const auto it = ref.find(cfg);
    worst = std::max(worst, std::abs(a - (it == ref.end() ? 0.0 : it->second)));
  }
  for (const auto& [cfg, a] : ref)
    if (!got.count(cfg)) worst = std::max(worst, std::abs(a));
  return worst;
}

}  // namespace testing_support
