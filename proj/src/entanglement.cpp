#include "bosefold/entanglement.hpp"

#include "bosefold/errors.hpp"
#include "bosefold/model.hpp"
#include "bosefold/special.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <vector>

namespace bosefold {

namespace {

constexpr double kNormTol = 1e-8;

double trace_norm_hermitian(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericError("eigensolver failed in trace norm");
  return solver.eigenvalues().cwiseAbs().sum();
}

}  // namespace

EntanglementResult logneg_pure(const Eigen::VectorXd& schmidt) {
  if (schmidt.size() == 0) throw InvalidInput("empty Schmidt vector");
  if ((schmidt.array() < 0.0).any()) throw InvalidInput("negative Schmidt value");
  if (std::abs(schmidt.squaredNorm() - 1.0) > kNormTol)
    throw InvalidInput("Schmidt vector is not normalized");
  return {2.0 * std::log2(schmidt.sum()), EntanglementResult::Method::PureSchmidt};
}

EntanglementResult logneg_partial_transpose(const Eigen::MatrixXcd& rho, bool transpose_first) {
  const auto dim = rho.rows();
  const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(dim))));
  if (rho.cols() != dim || d * d != dim) throw InvalidInput("two-site density matrix must be d^2 x d^2");
  if (!is_hermitian(rho, 1e-10)) throw InvalidInput("density matrix is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > kNormTol) throw InvalidInput("density matrix trace is not 1");

  Eigen::MatrixXcd pt(dim, dim);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int ap = 0; ap < d; ++ap)
        for (int bp = 0; bp < d; ++bp) {
          const auto v = rho(a * d + b, ap * d + bp);
          if (transpose_first)
            pt(ap * d + b, a * d + bp) = v;
          else
            pt(a * d + bp, ap * d + b) = v;
        }

  // Number-conserving states only couple entries with equal n_A - n_B; use those
  // blocks when every other entry vanishes.
  std::map<int, std::vector<Eigen::Index>> blocks;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) blocks[a - b].push_back(a * d + b);
  bool blocked = true;
  for (Eigen::Index r = 0; r < dim && blocked; ++r)
    for (Eigen::Index c = 0; c < dim; ++c)
      if ((r / d - r % d) != (c / d - c % d) && std::abs(pt(r, c)) > 1e-13) {
        blocked = false;
        break;
      }

  double trace_norm = 0.0;
  if (blocked) {
    for (const auto& [key, idx] : blocks) trace_norm += trace_norm_hermitian(pt(idx, idx));
  } else {
    trace_norm = trace_norm_hermitian(pt);
  }
  return {std::log2(trace_norm), EntanglementResult::Method::PartialTranspose};
}

EntanglementResult binomial_end_entanglement_exact(int m) {
  if (m < 1) throw InvalidInput("boson number must be >= 1");
  if (m > 1'000'000) throw InvalidInput("boson number above supported range");
  // sum_k exp(0.5 * (log C(M,k) - M log 2)), accumulated relative to the central term.
  const double log2m = m * std::numbers::ln2;
  const double peak = 0.5 * (log_binomial(m, m / 2) - log2m);
  double sum = 0.0;
  for (int k = 0; k <= m; ++k) sum += std::exp(0.5 * (log_binomial(m, k) - log2m) - peak);
  const double log_sum = std::log(sum) + peak;
  return {2.0 * log_sum / std::numbers::ln2, EntanglementResult::Method::BinomialExact};
}

EntanglementResult binomial_end_entanglement_asymptotic(int m) {
  if (m < 1) throw InvalidInput("boson number must be >= 1");
  return {0.5 * std::log2(2.0 * std::numbers::pi) + 0.5 * std::log2(static_cast<double>(m)),
          EntanglementResult::Method::BinomialAsymptotic};
}

double collection_fraction(const Eigen::VectorXd& occupations, double m) {
  if (occupations.size() < 2) throw InvalidInput("need at least two sites");
  if (!(m > 0.0)) throw InvalidInput("boson number must be positive");
  return (occupations(0) + occupations(occupations.size() - 1)) / m;
}

}  // namespace bosefold
