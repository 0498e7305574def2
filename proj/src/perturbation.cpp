#include "bosefold/perturbation.hpp"

#include "bosefold/errors.hpp"
#include "bosefold/format.hpp"
#include "bosefold/heisenberg.hpp"
#include "bosefold/model.hpp"
#include "bosefold/special.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

namespace bosefold {

namespace {

constexpr double kTransferTime = std::numbers::pi;
constexpr double kQuadratureTol = 1e-10;
constexpr int kGaussOrder = 16;
constexpr int kMaxDoublings = 14;

void require_model(int n_sites, double beta) {
  if (n_sites < 2) throw InvalidInput("chain needs at least 2 sites");
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw InvalidInput("beta must be finite and >= 0");
}

}  // namespace

Eigen::VectorXcd exact_transfer(int n_sites, double epsilon, double beta) {
  require_model(n_sites, beta);
  const auto r = add_gaussian_center_perturbation(build_jx(n_sites), epsilon, beta);
  const auto a = propagate(spectral_decompose(r), kTransferTime);
  return a.entries.col(0);
}

Eigen::VectorXcd first_order_numeric(int n_sites, double beta, QuadratureInfo* info) {
  require_model(n_sites, beta);
  const Spectrum jx = spectral_decompose(build_jx(n_sites));
  const Eigen::MatrixXcd& v = jx.eigenvectors;
  const Eigen::VectorXd& w = jx.eigenvalues;
  Eigen::VectorXd gauss(n_sites);
  for (int k = 1; k <= n_sites; ++k) gauss(k - 1) = std::exp(-beta * site_m(n_sites, k) * site_m(n_sites, k));
  // Everything in the J_x eigenbasis: integrand = -i V exp(-i(pi-t)w) W exp(-i t w) u.
  const Eigen::MatrixXcd coupling = v.adjoint() * gauss.asDiagonal() * v;
  const Eigen::VectorXcd u = v.adjoint().col(0);

  auto integrand = [&](double t) -> Eigen::VectorXcd {
    Eigen::VectorXcd x(n_sites);
    for (int i = 0; i < n_sites; ++i) x(i) = std::polar(1.0, -t * w(i)) * u(i);
    Eigen::VectorXcd y = coupling * x;
    for (int i = 0; i < n_sites; ++i) y(i) *= std::polar(1.0, -(kTransferTime - t) * w(i));
    return y;
  };

  const GaussLegendreRule rule = gauss_legendre(kGaussOrder);
  auto composite = [&](int panels) {
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(n_sites);
    const double h = kTransferTime / panels;
    for (int p = 0; p < panels; ++p) {
      const double mid = (p + 0.5) * h;
      for (int q = 0; q < kGaussOrder; ++q)
        acc += (0.5 * h * rule.weights[q]) * integrand(mid + 0.5 * h * rule.nodes[q]);
    }
    return acc;
  };

  int panels = 1;
  Eigen::VectorXcd previous = composite(panels);
  for (int doubling = 0; doubling < kMaxDoublings; ++doubling) {
    panels *= 2;
    Eigen::VectorXcd current = composite(panels);
    const double change = (current - previous).cwiseAbs().maxCoeff();
    previous = std::move(current);
    if (change < kQuadratureTol) {
      if (info) *info = {panels, change};
      return std::complex<double>(0.0, -1.0) * (v * previous);
    }
  }
  throw NumericError("first-order quadrature did not converge");
}

ClosedFormSeries closed_form_series(int n_sites, double beta) {
  require_model(n_sites, beta);
  const int two_j = n_sites - 1;
  ClosedFormSeries out;
  out.correction = Eigen::VectorXcd::Zero(n_sites);
  out.in_regime = beta < 0.1 * (0.5 * two_j / 2.0);
  for (int k = 0; k <= two_j; ++k) {
    const double p = 0.5 * (two_j - k);
    if (p > 0.0 && beta == 0.0) continue;
    double log_mag = 0.5 * log_binomial(two_j, k) + 2.0 * std::lgamma(p + 0.5) - std::lgamma(p + 1.0);
    if (p > 0.0) log_mag += p * std::log(beta);
    out.correction(k) = std::complex<double>(0.0, -std::exp(log_mag));
  }
  return out;
}

TransferReport make_transfer_report(int n_sites, double epsilon, double beta) {
  TransferReport r;
  r.n_sites = n_sites;
  r.epsilon = epsilon;
  r.beta = beta;
  r.j = 0.5 * (n_sites - 1);
  r.exact_row = exact_transfer(n_sites, epsilon, beta);
  r.first_order = first_order_numeric(n_sites, beta);
  r.closed_form = closed_form_series(n_sites, beta);
  return r;
}

void write_transfer_csv(std::ostream& os, const TransferReport& report) {
  os << "k,exact_re,exact_im,first_order_re,first_order_im,closed_form_re,closed_form_im\n";
  for (int k = 0; k < report.n_sites; ++k) {
    os << k + 1 << ',' << format_double(report.exact_row(k).real()) << ','
       << format_double(report.exact_row(k).imag()) << ','
       << format_double(report.first_order(k).real()) << ','
       << format_double(report.first_order(k).imag()) << ','
       << format_double(report.closed_form.correction(k).real()) << ','
       << format_double(report.closed_form.correction(k).imag()) << '\n';
  }
}

}  // namespace bosefold
