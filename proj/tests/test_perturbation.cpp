#include "bosefold/errors.hpp"
#include "bosefold/heisenberg.hpp"
#include "bosefold/perturbation.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

using namespace bosefold;

constexpr double kPi = std::numbers::pi;

TEST(ExactTransfer, UnperturbedIsPerfect) {
  const Eigen::VectorXcd v = exact_transfer(21, 0.0, 2.0);
  EXPECT_NEAR(std::abs(v(20)), 1.0, 1e-10);
  EXPECT_LT(v.head(20).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(ExactTransfer, UniformShiftIsGlobalPhase) {
  const double eps = 0.37;
  const Eigen::VectorXcd base = exact_transfer(9, 0.0, 0.0);
  const Eigen::VectorXcd shifted = exact_transfer(9, eps, 0.0);
  EXPECT_LT((shifted - std::polar(1.0, -kPi * eps) * base).norm(), 1e-10);
}

TEST(ExactTransfer, UnitNormRows) {
  for (double beta : {0.0, 0.5, 2.0, 10.0})
    for (double eps : {1e-3, 0.2}) EXPECT_NEAR(exact_transfer(21, eps, beta).norm(), 1.0, 1e-10);
}

TEST(FirstOrder, BetaZeroIsMinusIPiTimesTransfer) {
  const Eigen::VectorXcd f = first_order_numeric(21, 0.0);
  const Eigen::VectorXcd base = exact_transfer(21, 0.0, 0.0);
  EXPECT_LT((f - std::complex<double>(0, -kPi) * base).norm(), 1e-8);
  EXPECT_NEAR(std::abs(f(20)), kPi, 1e-8);
}

TEST(FirstOrder, MatchesFiniteDifference) {
  QuadratureInfo info;
  const Eigen::VectorXcd f = first_order_numeric(21, 2.0, &info);
  EXPECT_LT(info.last_change, 1e-10);
  EXPECT_GT(info.panels, 0);
  const Eigen::VectorXcd e0 = exact_transfer(21, 0.0, 2.0);
  auto residual = [&](double eps) { return ((exact_transfer(21, eps, 2.0) - e0) / eps - f).norm(); };
  EXPECT_LT(residual(1e-4) / f.norm(), 0.05);
  const double ratio = residual(1e-3) / residual(1e-4);
  EXPECT_GE(ratio, 5.0);
  EXPECT_LE(ratio, 20.0);
}

TEST(FirstOrder, LargeBetaConcentratesOnEnds) {
  const int n = 21;
  const Eigen::VectorXcd f = first_order_numeric(n, 0.5 * (n - 1));
  const double ends = std::norm(f(0)) + std::norm(f(n - 1));
  const double interior = f.squaredNorm() - ends;
  EXPECT_GT(ends, interior);
}

TEST(ClosedForm, EndCoefficientIsMinusIPi) {
  for (int n : {3, 8, 21}) {
    const auto s = closed_form_series(n, 0.3);
    EXPECT_NEAR(std::abs(s.correction(n - 1) - std::complex<double>(0, -kPi)), 0.0, 1e-12);
  }
}

TEST(ClosedForm, BetaZeroLeavesOnlyEndTerm) {
  const auto s = closed_form_series(11, 0.0);
  EXPECT_LT(s.correction.head(10).cwiseAbs().maxCoeff(), 1e-300);
  EXPECT_NEAR(std::abs(s.correction(10)), kPi, 1e-12);
  EXPECT_TRUE(s.in_regime);
}

TEST(ClosedForm, SmallBetaDecaysAwayFromEnd) {
  for (double beta : {0.01, 0.05}) {
    const auto s = closed_form_series(21, beta);
    EXPECT_TRUE(s.in_regime);
    for (int k = 20; k > 0; --k) EXPECT_LT(std::abs(s.correction(k - 1)), std::abs(s.correction(k))) << k;
  }
  // Not monotone everywhere below beta = 1: the term next to the end exceeds pi.
  const auto s = closed_form_series(21, 0.5);
  EXPECT_GT(std::abs(s.correction(19)), kPi);
  EXPECT_FALSE(closed_form_series(21, 2.0).in_regime);
}

TEST(TransferReport, CsvLayout) {
  const auto r = make_transfer_report(5, 1e-3, 2.0);
  std::ostringstream os;
  write_transfer_csv(os, r);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "k,exact_re,exact_im,first_order_re,first_order_im,closed_form_re,closed_form_im");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  EXPECT_EQ(rows, 5);
}
