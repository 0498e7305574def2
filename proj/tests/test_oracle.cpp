// Sanity checks of the dense reference itself, against hand-derived values.
#include "bosefold/oracle/dense_fock.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace orc = bosefold::oracle;

TEST(Oracle, BasisSize) {
  EXPECT_EQ(orc::fock_basis(4, 2).size(), 10u);
  EXPECT_EQ(orc::fock_basis(6, 3).size(), 56u);
}

TEST(Oracle, EqualPairCondensate) {
  Eigen::VectorXcd c(2);
  c << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  const auto psi = orc::condensate_multinomial(c, 2);
  EXPECT_NEAR(std::abs(psi.at({2, 0}) - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(psi.at({1, 1}) - 1 / std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(psi.at({0, 2}) - 0.5), 0.0, 1e-15);
}

TEST(Oracle, MultinomialEqualsRepeatedApplication) {
  std::mt19937 rng(1);
  const Eigen::VectorXcd c = testing_support::random_unit(4, rng);
  auto psi = orc::vacuum(4);
  for (int i = 0; i < 3; ++i) psi = orc::apply_creation_sum(psi, c);
  orc::normalize(psi);
  const auto ref = orc::condensate_multinomial(c, 3);
  for (const auto& [cfg, a] : ref) EXPECT_NEAR(std::abs(psi.at(cfg) - a), 0.0, 1e-13);
}

TEST(Oracle, CreationPower) {
  auto psi = orc::apply_creation_power(orc::vacuum(2), 1, 3);
  EXPECT_NEAR(std::abs(psi.at({3, 0}) - std::sqrt(6.0)), 0.0, 1e-13);
}

TEST(Oracle, DistinctModesCommute) {
  const auto psi = orc::two_sum_state(testing_support::unit(3, 1), 1, testing_support::unit(3, 2), 1);
  ASSERT_EQ(psi.size(), 1u);
  EXPECT_NEAR(std::abs(psi.at({1, 1, 0}) - 1.0), 0.0, 1e-15);
}

TEST(Oracle, SingleParticleHamiltonianIsR) {
  std::mt19937 rng(2);
  const Eigen::MatrixXcd r = orc::random_hermitian(4, rng);
  const auto basis = orc::fock_basis(4, 1);
  const Eigen::MatrixXcd h = orc::number_sector_hamiltonian(r, basis);
  auto site = [&](std::size_t i) { return std::find(basis[i].begin(), basis[i].end(), 1) - basis[i].begin(); };
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(std::abs(h(i, j) - r(site(i), site(j))), 0.0, 1e-15);
}

TEST(Oracle, EvolutionIsUnitary) {
  std::mt19937 rng(3);
  const Eigen::MatrixXcd r = orc::random_hermitian(4, rng);
  const auto basis = orc::fock_basis(4, 3);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
  psi(0) = 1.0;
  EXPECT_NEAR(orc::evolve(r, basis, psi, 2.3).norm(), 1.0, 1e-12);
}

TEST(Oracle, SchmidtAndOccupations) {
  Eigen::VectorXcd c(2);
  c << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  const auto psi = orc::condensate_multinomial(c, 2);
  const Eigen::VectorXd lam = orc::schmidt_values(psi, 1);
  EXPECT_NEAR(lam(0), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(lam(1), 0.5, 1e-15);
  EXPECT_NEAR(orc::occupations(psi, 2)(0), 1.0, 1e-15);
  const Eigen::MatrixXcd rho = orc::reduced_density(psi, 1, 2, 3);
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-15);
}
