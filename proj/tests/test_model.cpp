#include "bosefold/errors.hpp"
#include "bosefold/model.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace bosefold;

TEST(Model, RejectsNonHermitianAndTinyChains) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(CouplingMatrix{m}, InvalidInput);
  EXPECT_THROW(CouplingMatrix::zeros(1), InvalidInput);
  EXPECT_THROW(build_jx(1), InvalidInput);
}

TEST(Model, InverseDistanceHopping) {
  const auto r = build_inverse_distance(5, 0.3);
  EXPECT_DOUBLE_EQ(r(1, 2).real(), 0.3);
  EXPECT_DOUBLE_EQ(r(1, 4).real(), 0.1);
  EXPECT_DOUBLE_EQ(r(5, 1).real(), 0.075);
  EXPECT_EQ(r(3, 3), 0.0);
}

TEST(Model, JxLadderElements) {
  // j = 3/2: sqrt(3)/2, 1, sqrt(3)/2 on the off-diagonal.
  const auto r = build_jx(4);
  EXPECT_NEAR(r(1, 2).real(), std::sqrt(3.0) / 2, 1e-15);
  EXPECT_NEAR(r(2, 3).real(), 1.0, 1e-15);
  EXPECT_NEAR(r(3, 4).real(), std::sqrt(3.0) / 2, 1e-15);
  EXPECT_EQ(r(1, 3), 0.0);
  EXPECT_DOUBLE_EQ(site_m(4, 1), 1.5);
  EXPECT_DOUBLE_EQ(site_m(4, 4), -1.5);
}

TEST(Model, DiagonalTerms) {
  auto r = add_parabolic_trap(CouplingMatrix::zeros(4), 2.0, 2.5);
  EXPECT_DOUBLE_EQ(r(1, 1).real(), 4.5);
  EXPECT_DOUBLE_EQ(r(2, 2).real(), 0.5);
  r = add_onsite_barrier(r, 2, 3, 10.0);
  EXPECT_DOUBLE_EQ(r(2, 2).real(), 10.5);
  EXPECT_DOUBLE_EQ(r(4, 4).real(), 4.5);
  EXPECT_THROW(add_onsite_barrier(r, 3, 5, 1.0), InvalidInput);

  // m = 0 at the center of an odd chain.
  const auto p = add_gaussian_center_perturbation(CouplingMatrix::zeros(5), 0.5, 1.0);
  EXPECT_DOUBLE_EQ(p(3, 3).real(), 0.5);
  EXPECT_DOUBLE_EQ(p(1, 1).real(), 0.5 * std::exp(-4.0));
}

TEST(Model, BuildFromSpec) {
  ModelSpec spec;
  spec.n_sites = 6;
  spec.base = InverseDistanceBase{0.3};
  spec.trap = Trap{0.01, 3.5};
  spec.barriers.push_back({3, 4, 100.0});
  const auto r = build_model(spec);
  EXPECT_NEAR(r(3, 3).real(), 100.0 + 0.01 * 0.25, 1e-12);
  EXPECT_NEAR(r(1, 6).real(), 0.06, 1e-15);

  spec.barriers.push_back({0, 2, 1.0});
  EXPECT_THROW(build_model(spec), InvalidInput);
}

TEST(Model, ComplexCsvRoundTrip) {
  Eigen::MatrixXcd m(2, 2);
  m << 1.0, std::complex<double>(0.1, -0.7), std::complex<double>(0.1, 0.7), -2.0;
  std::stringstream ss;
  write_complex_csv(ss, m);
  EXPECT_EQ(read_complex_csv(ss), m);
}
