#include "bosefold/heisenberg.hpp"

#include "bosefold/errors.hpp"

#include <cmath>
#include <set>
#include <string>

namespace bosefold {

namespace {
constexpr double kDegeneracyGap = 1e-12;
constexpr double kOrthonormalTol = 1e-10;
}  // namespace

void fix_phase(Eigen::Ref<Eigen::VectorXcd> v) {
  Eigen::Index best = 0;
  double best_abs = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    // Small relative slack so near-ties resolve to the first index deterministically.
    const double a = std::abs(v(i));
    if (a > best_abs * (1.0 + 1e-10)) {
      best_abs = a;
      best = i;
    }
  }
  if (best_abs <= 0.0) return;
  v *= std::conj(v(best)) / best_abs;
  v(best) = best_abs;
}

Spectrum spectral_decompose(const CouplingMatrix& r) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(r.entries());
  if (solver.info() != Eigen::Success) throw NumericError("eigensolver failed to converge");
  Spectrum s{solver.eigenvalues(), solver.eigenvectors()};
  for (Eigen::Index c = 0; c < s.eigenvectors.cols(); ++c) fix_phase(s.eigenvectors.col(c));
  return s;
}

PropagatorMatrix propagate(const Spectrum& spec, double t) {
  PropagatorMatrix a;
  a.time = t;
  const int n = spec.n_sites();
  if (t == 0.0) {
    a.entries = Eigen::MatrixXcd::Identity(n, n);
    return a;
  }
  Eigen::VectorXcd phases(n);
  for (int i = 0; i < n; ++i) phases(i) = std::polar(1.0, -spec.eigenvalues(i) * t);
  a.entries = spec.eigenvectors * phases.asDiagonal() * spec.eigenvectors.adjoint();
  return a;
}

GroundMode ground_mode(const Spectrum& spec) {
  GroundMode g;
  g.mode.coefficients = spec.eigenvectors.col(0);
  g.energy = spec.eigenvalues(0);
  g.gap = spec.n_sites() > 1 ? spec.eigenvalues(1) - spec.eigenvalues(0) : 0.0;
  g.degenerate = g.gap < kDegeneracyGap;
  return g;
}

std::vector<Packet> packet_modes(const std::vector<std::pair<int, int>>& initial,
                                 const PropagatorMatrix& a) {
  const int n = static_cast<int>(a.entries.rows());
  std::set<int> seen;
  std::vector<Packet> packets;
  packets.reserve(initial.size());
  for (const auto& [site, count] : initial) {
    if (site < 1 || site > n) throw InvalidInput("packet site " + std::to_string(site) + " out of range");
    if (count < 1) throw InvalidInput("packet boson count must be >= 1");
    if (!seen.insert(site).second) throw InvalidInput("duplicate packet site " + std::to_string(site));
    packets.push_back(Packet{ModeAmplitudes{a.entries.col(site - 1)}, count});
  }
  return packets;
}

Eigen::VectorXd occupations_oracle(const std::vector<Packet>& packets) {
  if (packets.empty()) throw InvalidInput("no packets");
  const auto n = packets.front().mode.coefficients.size();
  for (std::size_t p = 0; p < packets.size(); ++p) {
    const auto& cp = packets[p].mode.coefficients;
    if (cp.size() != n) throw InvalidInput("packet dimension mismatch");
    for (std::size_t q = p; q < packets.size(); ++q) {
      const std::complex<double> overlap = cp.dot(packets[q].mode.coefficients);
      const double expected = p == q ? 1.0 : 0.0;
      if (std::abs(overlap - expected) > kOrthonormalTol)
        throw PreconditionError("occupation closed form needs orthonormal packet modes");
    }
  }
  Eigen::VectorXd occ = Eigen::VectorXd::Zero(n);
  for (const auto& p : packets) occ += p.count * p.mode.coefficients.cwiseAbs2();
  return occ;
}

}  // namespace bosefold
