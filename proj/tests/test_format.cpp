#include "bosefold/errors.hpp"
#include "bosefold/format.hpp"
#include "bosefold/special.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace bosefold;

TEST(Format, SeventeenSignificantDigits) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(format_double(-0.0), "0");
  EXPECT_EQ(parse_double(format_double(std::numbers::pi)), std::numbers::pi);
}

TEST(Format, StrictParsing) {
  EXPECT_EQ(parse_double("+2.5"), 2.5);
  EXPECT_EQ(parse_int("+7"), 7);
  EXPECT_THROW(parse_double("2.5x"), InvalidInput);
  EXPECT_THROW(parse_double(""), InvalidInput);
  EXPECT_THROW(parse_int("3.0"), InvalidInput);
}

TEST(Special, LogFactorialAndBinomial) {
  EXPECT_NEAR(log_factorial(0), 0.0, 1e-15);
  EXPECT_NEAR(log_factorial(5), std::log(120.0), 1e-13);
  EXPECT_NEAR(std::exp(log_binomial(10, 3)), 120.0, 1e-10);
}

TEST(Special, GaussLegendreIntegratesPolynomialsExactly) {
  const auto rule = gauss_legendre(16);
  ASSERT_EQ(rule.nodes.size(), 16u);
  double w = 0.0, x30 = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    w += rule.weights[i];
    x30 += rule.weights[i] * std::pow(rule.nodes[i], 30);
  }
  EXPECT_NEAR(w, 2.0, 1e-14);
  EXPECT_NEAR(x30, 2.0 / 31.0, 1e-14);
}
