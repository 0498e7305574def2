#include "bosefold/model.hpp"

#include "bosefold/errors.hpp"
#include "bosefold/format.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace bosefold {

namespace {

void require_sites(int n_sites) {
  if (n_sites < 2) throw InvalidInput("chain needs at least 2 sites, got " + std::to_string(n_sites));
}

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw InvalidInput(std::string(what) + " must be finite");
}

}  // namespace

bool is_hermitian(const Eigen::MatrixXcd& m, double tol) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index k = 0; k < m.rows(); ++k)
    for (Eigen::Index l = k; l < m.cols(); ++l)
      if (std::abs(m(k, l) - std::conj(m(l, k))) > tol) return false;
  return m.allFinite();
}

CouplingMatrix::CouplingMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) throw InvalidInput("coupling matrix must be square");
  require_sites(static_cast<int>(entries_.rows()));
  if (!is_hermitian(entries_)) throw InvalidInput("coupling matrix is not Hermitian");
}

CouplingMatrix CouplingMatrix::zeros(int n_sites) {
  require_sites(n_sites);
  return CouplingMatrix(Eigen::MatrixXcd::Zero(n_sites, n_sites));
}

CouplingMatrix build_inverse_distance(int n_sites, double j1) {
  require_sites(n_sites);
  require_finite(j1, "J1");
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(n_sites, n_sites);
  for (int k = 0; k < n_sites; ++k)
    for (int l = 0; l < n_sites; ++l)
      if (k != l) r(k, l) = j1 / std::abs(k - l);
  return CouplingMatrix(std::move(r));
}

CouplingMatrix build_jx(int n_sites) {
  require_sites(n_sites);
  const double j = 0.5 * (n_sites - 1);
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(n_sites, n_sites);
  for (int k = 1; k < n_sites; ++k) {
    // <m_k | J_x | m_k - 1> with m_k = j - k + 1.
    const double m = site_m(n_sites, k);
    const double v = 0.5 * std::sqrt(j * (j + 1) - m * (m - 1));
    r(k - 1, k) = v;
    r(k, k - 1) = v;
  }
  return CouplingMatrix(std::move(r));
}

CouplingMatrix add_parabolic_trap(const CouplingMatrix& r, double omega, double center) {
  require_finite(omega, "trap strength");
  require_finite(center, "trap center");
  Eigen::MatrixXcd m = r.entries();
  for (int k = 1; k <= r.n_sites(); ++k) m(k - 1, k - 1) += omega * (k - center) * (k - center);
  return CouplingMatrix(std::move(m));
}

CouplingMatrix add_onsite_barrier(const CouplingMatrix& r, int first, int last, double height) {
  require_finite(height, "barrier height");
  if (first < 1 || last > r.n_sites() || first > last) {
    std::ostringstream msg;
    msg << "barrier site range " << first << "-" << last << " outside chain 1-" << r.n_sites();
    throw InvalidInput(msg.str());
  }
  Eigen::MatrixXcd m = r.entries();
  for (int k = first; k <= last; ++k) m(k - 1, k - 1) += height;
  return CouplingMatrix(std::move(m));
}

CouplingMatrix add_gaussian_center_perturbation(const CouplingMatrix& r, double epsilon,
                                                double beta) {
  require_finite(epsilon, "epsilon");
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw InvalidInput("beta must be finite and >= 0");
  Eigen::MatrixXcd m = r.entries();
  for (int k = 1; k <= r.n_sites(); ++k) {
    const double mk = site_m(r.n_sites(), k);
    m(k - 1, k - 1) += epsilon * std::exp(-beta * mk * mk);
  }
  return CouplingMatrix(std::move(m));
}

void validate(const ModelSpec& spec) {
  require_sites(spec.n_sites);
  if (const auto* b = std::get_if<InverseDistanceBase>(&spec.base)) require_finite(b->j1, "j1");
  if (const auto* c = std::get_if<CustomBase>(&spec.base)) {
    if (c->matrix.rows() != spec.n_sites || c->matrix.cols() != spec.n_sites)
      throw InvalidInput("custom matrix size does not match n_sites");
    if (!is_hermitian(c->matrix)) throw InvalidInput("custom matrix is not Hermitian");
  }
  if (spec.trap) {
    require_finite(spec.trap->omega, "trap omega");
    require_finite(spec.trap->center, "trap center");
  }
  for (const auto& b : spec.barriers) {
    require_finite(b.height, "barrier height");
    if (b.first < 1 || b.last > spec.n_sites || b.first > b.last)
      throw InvalidInput("barrier site range " + std::to_string(b.first) + "-" +
                         std::to_string(b.last) + " outside chain");
  }
  if (spec.perturbation) {
    require_finite(spec.perturbation->epsilon, "perturbation epsilon");
    if (!(spec.perturbation->beta >= 0.0) || !std::isfinite(spec.perturbation->beta))
      throw InvalidInput("perturbation beta must be finite and >= 0");
  }
}

CouplingMatrix build_model(const ModelSpec& spec) {
  validate(spec);
  CouplingMatrix r = std::visit(
      [&](const auto& base) -> CouplingMatrix {
        using T = std::decay_t<decltype(base)>;
        if constexpr (std::is_same_v<T, InverseDistanceBase>) {
          return build_inverse_distance(spec.n_sites, base.j1);
        } else if constexpr (std::is_same_v<T, JxBase>) {
          return build_jx(spec.n_sites);
        } else {
          return CouplingMatrix(base.matrix);
        }
      },
      spec.base);
  if (spec.trap) r = add_parabolic_trap(r, spec.trap->omega, spec.trap->center);
  for (const auto& b : spec.barriers) r = add_onsite_barrier(r, b.first, b.last, b.height);
  if (spec.perturbation)
    r = add_gaussian_center_perturbation(r, spec.perturbation->epsilon, spec.perturbation->beta);
  return r;
}

void write_complex_csv(std::ostream& os, const Eigen::MatrixXcd& m) {
  for (Eigen::Index k = 0; k < m.rows(); ++k) {
    for (Eigen::Index l = 0; l < m.cols(); ++l) {
      if (l > 0) os << ',';
      os << format_double(m(k, l).real()) << ',' << format_double(m(k, l).imag());
    }
    os << '\n';
  }
}

Eigen::MatrixXcd read_complex_csv(std::istream& is) {
  std::vector<std::vector<std::complex<double>>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> values;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      const auto a = cell.find_first_not_of(" \t");
      const auto b = cell.find_last_not_of(" \t");
      if (a == std::string::npos) throw InvalidInput("empty cell on line " + std::to_string(line_no));
      values.push_back(parse_double(cell.substr(a, b - a + 1)));
    }
    if (values.size() % 2 != 0)
      throw InvalidInput("odd number of values on line " + std::to_string(line_no));
    std::vector<std::complex<double>> row;
    for (std::size_t i = 0; i < values.size(); i += 2) row.emplace_back(values[i], values[i + 1]);
    rows.push_back(std::move(row));
  }
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (static_cast<Eigen::Index>(rows[k].size()) != n)
      throw InvalidInput("complex CSV matrix is not square");
    for (Eigen::Index l = 0; l < n; ++l) m(k, l) = rows[k][l];
  }
  return m;
}

}  // namespace bosefold
