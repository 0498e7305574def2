#pragma once

#include <Eigen/Dense>

#include <iosfwd>

namespace bosefold {

// Transfer model R = J_x + epsilon * exp(-beta J_z^2) evaluated at the transfer time t = pi.

/// Coefficients of alpha_1(pi) in the site basis (spectral propagation).
Eigen::VectorXcd exact_transfer(int n_sites, double epsilon, double beta);

struct QuadratureInfo {
  int panels = 0;
  double last_change = 0.0;
};

/// d/d(epsilon) of exact_transfer at epsilon = 0, i.e.
///   -i int_0^pi exp(-i (pi - t) J_x) exp(-beta J_z^2) exp(-i t J_x) e_1 dt,
/// by composite Gauss-Legendre with panel doubling until successive results agree to 1e-10.
Eigen::VectorXcd first_order_numeric(int n_sites, double beta, QuadratureInfo* info = nullptr);

struct ClosedFormSeries {
  Eigen::VectorXcd correction;  // per unit epsilon, site k + 1 holds the k-th term
  bool in_regime = false;       // beta small against j / 2
};

/// Asymptotic first-order series
///   -i sqrt(C(2j, k)) Gamma(p + 1/2)^2 / Gamma(p + 1) beta^p,  p = (2j - k) / 2.
ClosedFormSeries closed_form_series(int n_sites, double beta);

struct TransferReport {
  int n_sites = 0;
  double epsilon = 0.0;
  double beta = 0.0;
  double j = 0.0;
  Eigen::VectorXcd exact_row;
  Eigen::VectorXcd first_order;
  ClosedFormSeries closed_form;
};

TransferReport make_transfer_report(int n_sites, double epsilon, double beta);

/// Header `k,exact_re,exact_im,first_order_re,first_order_im,closed_form_re,closed_form_im`.
void write_transfer_csv(std::ostream& os, const TransferReport& report);

}  // namespace bosefold
