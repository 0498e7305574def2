#include "bosefold/errors.hpp"
#include "bosefold/heisenberg.hpp"
#include "bosefold/oracle/dense_fock.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace bosefold;

namespace {
CouplingMatrix real2(double a, double b, double c) {
  Eigen::MatrixXcd m(2, 2);
  m << a, b, b, c;
  return CouplingMatrix(m);
}
}  // namespace

TEST(Spectrum, DiagonalMatrix) {
  const auto s = spectral_decompose(real2(1, 0, 2));
  EXPECT_NEAR(s.eigenvalues(0), 1.0, 1e-15);
  EXPECT_NEAR(s.eigenvalues(1), 2.0, 1e-15);
  EXPECT_TRUE(s.eigenvectors.isApprox(Eigen::MatrixXcd::Identity(2, 2)));
}

TEST(Spectrum, TwoSiteHopping) {
  const auto g = ground_mode(spectral_decompose(real2(0, -1, 0)));
  EXPECT_NEAR(g.energy, -1.0, 1e-14);
  EXPECT_NEAR(std::abs(g.mode.coefficients(0) - 1 / std::sqrt(2.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(g.mode.coefficients(1) - 1 / std::sqrt(2.0)), 0.0, 1e-14);
  EXPECT_FALSE(g.degenerate);
}

TEST(Spectrum, JxLadder) {
  const auto s = spectral_decompose(build_jx(4));
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(s.eigenvalues(i), -1.5 + i, 1e-10);
}

TEST(Spectrum, RandomHermitianProperties) {
  std::mt19937 rng(7);
  const CouplingMatrix r(oracle::random_hermitian(8, rng));
  const auto s = spectral_decompose(r);
  const auto& v = s.eigenvectors;
  EXPECT_LT((v.adjoint() * v - Eigen::MatrixXcd::Identity(8, 8)).norm(), 1e-12);
  EXPECT_LT((r.entries() * v - v * s.eigenvalues.cast<std::complex<double>>().asDiagonal()).norm(),
            1e-10 * r.norm());
  const auto g = ground_mode(s);
  EXPECT_LT((r.entries() * g.mode.coefficients - g.energy * g.mode.coefficients).norm(), 1e-10 * r.norm());
}

TEST(Spectrum, DiagonalGroundMode) {
  Eigen::MatrixXcd m = Eigen::Vector3cd(5, 1, 3).asDiagonal();
  const auto g = ground_mode(spectral_decompose(CouplingMatrix(m)));
  EXPECT_LT((g.mode.coefficients - Eigen::Vector3cd(0, 1, 0)).norm(), 1e-15);
}

TEST(Spectrum, DegenerateGroundFlagged) {
  Eigen::MatrixXcd m = Eigen::Vector3cd(1, 1, 3).asDiagonal();
  EXPECT_TRUE(ground_mode(spectral_decompose(CouplingMatrix(m))).degenerate);
}

TEST(Spectrum, ReflectionSymmetricGround) {
  ModelSpec spec;
  spec.n_sites = 9;
  spec.base = InverseDistanceBase{0.3};
  spec.trap = Trap{0.05, 5.0};
  const auto c = ground_mode(spectral_decompose(build_model(spec))).mode.coefficients;
  for (int k = 0; k < 9; ++k) EXPECT_NEAR(std::abs(c(k)), std::abs(c(8 - k)), 1e-10);
}

TEST(Propagator, IdentityAtZeroAndUnitary) {
  std::mt19937 rng(3);
  const auto s = spectral_decompose(CouplingMatrix(oracle::random_hermitian(6, rng)));
  EXPECT_EQ(propagate(s, 0.0).entries, Eigen::MatrixXcd::Identity(6, 6));
  const auto a = propagate(s, 1.3).entries;
  EXPECT_LT((a * a.adjoint() - Eigen::MatrixXcd::Identity(6, 6)).norm(), 1e-10);
  // A(s) A(t) = A(s + t)
  EXPECT_LT((propagate(s, 0.4).entries * propagate(s, 0.9).entries - a).norm(), 1e-10);
}

TEST(Propagator, TwoSiteTransfer) {
  // exp(-i t sigma_x / 2): off-diagonal -i sin(t/2).
  const auto a = propagate(spectral_decompose(build_jx(2)), 1.1).entries;
  EXPECT_NEAR(std::abs(a(0, 1) - std::complex<double>(0, -std::sin(0.55))), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(propagate(spectral_decompose(build_jx(2)), std::numbers::pi).entries(0, 1)), 1.0, 1e-14);
}

TEST(Propagator, PerfectTransferJx) {
  for (int n : {2, 3, 7, 16, 30}) {
    const auto a = propagate(spectral_decompose(build_jx(n)), std::numbers::pi).entries;
    EXPECT_NEAR(std::abs(a(0, n - 1)), 1.0, 1e-10) << "N=" << n;
  }
}

TEST(Packets, IdentityAndTransfer) {
  const PropagatorMatrix id{0.0, Eigen::MatrixXcd::Identity(5, 5)};
  const auto p = packet_modes({{1, 4}}, id);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0].count, 4);
  EXPECT_EQ(p[0].mode.coefficients, Eigen::VectorXcd::Unit(5, 0));

  const auto a = propagate(spectral_decompose(build_jx(5)), std::numbers::pi);
  const auto q = packet_modes({{1, 2}, {5, 2}}, a);
  EXPECT_NEAR(std::abs(q[0].mode.coefficients(4)), 1.0, 1e-10);
  for (int k = 0; k < 5; ++k)
    EXPECT_NEAR(std::abs(q[0].mode.coefficients(k)), std::abs(q[1].mode.coefficients(4 - k)), 1e-10);

  EXPECT_THROW(packet_modes({{1, 1}, {1, 1}}, a), InvalidInput);
  EXPECT_THROW(packet_modes({{6, 1}}, a), InvalidInput);
  EXPECT_THROW(packet_modes({{2, 0}}, a), InvalidInput);
}

TEST(Packets, ColumnConventionMatchesEvolution) {
  // The evolved creation operator of site k has coefficients A e_k, so the
  // single-boson amplitude on site m after time t is A(m, k).
  std::mt19937 rng(11);
  const Eigen::MatrixXcd r = oracle::random_hermitian(4, rng);
  const auto a = propagate(spectral_decompose(CouplingMatrix(r)), 0.8);
  const auto basis = oracle::fock_basis(4, 1);
  auto index_of = [&](int site) {
    oracle::Config cfg(4, 0);
    cfg[site - 1] = 1;
    return std::find(basis.begin(), basis.end(), cfg) - basis.begin();
  };
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
  psi(index_of(1)) = 1.0;
  const Eigen::VectorXcd out = oracle::evolve(r, basis, psi, 0.8);
  const auto mode = packet_modes({{1, 1}}, a)[0].mode.coefficients;
  for (int m = 1; m <= 4; ++m) EXPECT_NEAR(std::abs(out(index_of(m)) - mode(m - 1)), 0.0, 1e-12);
}

TEST(Occupations, Oracle) {
  const PropagatorMatrix id{0.0, Eigen::MatrixXcd::Identity(3, 3)};
  const auto occ = occupations_oracle(packet_modes({{1, 5}}, id));
  EXPECT_EQ(occ, Eigen::Vector3d(5, 0, 0));

  const auto a = propagate(spectral_decompose(build_jx(2)), std::numbers::pi / 2);
  const auto half = occupations_oracle(packet_modes({{1, 4}}, a));
  EXPECT_NEAR(half(0), 2.0, 1e-12);
  EXPECT_NEAR(half(1), 2.0, 1e-12);

  std::mt19937 rng(5);
  const auto b = propagate(spectral_decompose(CouplingMatrix(oracle::random_hermitian(6, rng))), 2.0);
  EXPECT_NEAR(occupations_oracle(packet_modes({{1, 3}, {4, 7}}, b)).sum(), 10.0, 1e-10);

  Packet bad{ModeAmplitudes{Eigen::VectorXcd::Ones(3)}, 1};
  EXPECT_THROW(occupations_oracle({bad}), PreconditionError);
}
