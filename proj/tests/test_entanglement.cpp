#include "bosefold/entanglement.hpp"
#include "bosefold/errors.hpp"
#include "bosefold/mps.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace bosefold;

namespace {

Eigen::MatrixXcd projector(const Eigen::VectorXcd& v) { return v * v.adjoint(); }

Eigen::VectorXd binomial_schmidt(int m) {
  Eigen::VectorXd lam(m + 1);
  for (int k = 0; k <= m; ++k) lam(k) = std::sqrt(std::exp(std::lgamma(m + 1.0) - std::lgamma(k + 1.0) -
                                                           std::lgamma(m - k + 1.0)) / std::pow(2.0, m));
  return lam;
}

}  // namespace

TEST(LognegPure, SimpleSpectra) {
  EXPECT_NEAR(logneg_pure(Eigen::VectorXd::Ones(1)).value, 0.0, 1e-15);
  EXPECT_NEAR(logneg_pure(Eigen::Vector2d(1, 1) / std::sqrt(2.0)).value, 1.0, 1e-14);
  // sum sqrt(C(4,k)/16) = (6 + sqrt6) / 4
  const double expect = 2 * std::log2((6 + std::sqrt(6.0)) / 4);
  EXPECT_NEAR(logneg_pure(binomial_schmidt(4)).value, expect, 1e-13);
  EXPECT_NEAR((6 + std::sqrt(6.0)) / 4, 2.112372, 1e-6);
  EXPECT_NEAR(expect, 2.1577, 1e-4);
  for (int r : {3, 5, 8}) EXPECT_NEAR(logneg_pure(Eigen::VectorXd::Ones(r) / std::sqrt(r)).value, std::log2(r), 1e-13);
  EXPECT_THROW(logneg_pure(Eigen::Vector2d(1, 1)), InvalidInput);
}

TEST(LognegPartialTranspose, ReferenceStates) {
  // d = 2, index n_A * 2 + n_B
  EXPECT_NEAR(logneg_partial_transpose(projector(Eigen::Vector4cd(0, 0, 1, 0))).value, 0.0, 1e-14);
  const Eigen::Vector4cd bell(0, 1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 0);
  EXPECT_NEAR(logneg_partial_transpose(projector(bell)).value, 1.0, 1e-14);
  EXPECT_NEAR(logneg_partial_transpose(projector(bell), false).value, 1.0, 1e-14);
  Eigen::MatrixXcd mixed = Eigen::MatrixXcd::Zero(4, 4);
  mixed(0, 0) = mixed(3, 3) = 0.5;
  EXPECT_NEAR(logneg_partial_transpose(mixed).value, 0.0, 1e-14);

  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(4, 4);
  EXPECT_THROW(logneg_partial_transpose(bad), InvalidInput);
  EXPECT_THROW(logneg_partial_transpose(Eigen::MatrixXcd::Identity(3, 3) / 3.0), InvalidInput);
}

TEST(LognegPartialTranspose, AgreesWithSchmidtOnPureTwoSiteStates) {
  std::mt19937 rng(1);
  for (int trial = 0; trial < 4; ++trial) {
    const Eigen::VectorXcd z = testing_support::random_unit(2, rng);
    const Eigen::VectorXcd c = testing_support::random_unit(2, rng);
    const auto s = build_condensate_state(ModeAmplitudes{z}, 2, ModeAmplitudes{c}, 2);
    const Eigen::MatrixXcd rho = s.reduced_density_two_sites(1, 2);
    const double pure = logneg_pure(s.schmidt_values(1)).value;
    EXPECT_NEAR(logneg_partial_transpose(rho).value, pure, 1e-8);
    EXPECT_NEAR(logneg_partial_transpose(rho, false).value, pure, 1e-8);
  }
}

TEST(LognegPartialTranspose, BothSidesAgreeOnMixedEndPair) {
  std::mt19937 rng(2);
  const auto s = build_condensate_state(ModeAmplitudes{testing_support::random_unit(5, rng)}, 2,
                                        ModeAmplitudes{testing_support::random_unit(5, rng)}, 2);
  const Eigen::MatrixXcd rho = s.reduced_density_two_sites(1, 5);
  const double a = logneg_partial_transpose(rho, true).value;
  EXPECT_NEAR(a, logneg_partial_transpose(rho, false).value, 1e-8);
  EXPECT_GE(a, -1e-10);
}

TEST(Binomial, ExactValues) {
  EXPECT_NEAR(binomial_end_entanglement_exact(1).value, 1.0, 1e-14);
  EXPECT_NEAR(binomial_end_entanglement_exact(4).value, 2 * std::log2((6 + std::sqrt(6.0)) / 4), 1e-13);
  double prev = 0.0;
  for (int m = 1; m <= 1024; ++m) {
    const double v = binomial_end_entanglement_exact(m).value;
    EXPECT_GT(v, prev) << m;
    prev = v;
  }
  EXPECT_THROW(binomial_end_entanglement_exact(-1), InvalidInput);
}

TEST(Binomial, AsymptoticLaw) {
  const double half_log_2pi = 0.5 * std::log2(2 * std::numbers::pi);
  EXPECT_NEAR(binomial_end_entanglement_asymptotic(1).value, half_log_2pi, 1e-14);
  EXPECT_NEAR(binomial_end_entanglement_asymptotic(4).value, half_log_2pi + 1.0, 1e-14);
  EXPECT_LT(std::abs(binomial_end_entanglement_exact(100).value - binomial_end_entanglement_asymptotic(100).value),
            0.05);
  double prev = 1e300;
  for (int m : {4, 16, 64, 256}) {
    const double gap =
        std::abs(binomial_end_entanglement_exact(m).value - binomial_end_entanglement_asymptotic(m).value);
    EXPECT_LT(gap, prev);
    prev = gap;
  }
}

TEST(CollectionFraction, Values) {
  Eigen::VectorXd ends = Eigen::VectorXd::Zero(6);
  ends(0) = 3;
  ends(5) = 5;
  EXPECT_DOUBLE_EQ(collection_fraction(ends, 8), 1.0);
  EXPECT_DOUBLE_EQ(collection_fraction(Eigen::VectorXd::Ones(10), 10), 0.2);
}
