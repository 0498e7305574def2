#include "bosefold/oracle/dense_fock.hpp"

#include <cmath>
#include <stdexcept>

namespace bosefold::oracle {

namespace {

void enumerate(int site, int remaining, Config& current, std::vector<Config>& out) {
  const int n = static_cast<int>(current.size());
  if (site == n - 1) {
    current[site] = remaining;
    out.push_back(current);
    return;
  }
  for (int k = remaining; k >= 0; --k) {
    current[site] = k;
    enumerate(site + 1, remaining - k, current, out);
  }
}

}  // namespace

std::vector<Config> fock_basis(int n_sites, int n_bosons) {
  std::vector<Config> out;
  Config current(n_sites, 0);
  enumerate(0, n_bosons, current, out);
  return out;
}

SparseState vacuum(int n_sites) { return SparseState{{Config(n_sites, 0), 1.0}}; }

SparseState apply_creation_sum(const SparseState& psi, const Eigen::VectorXcd& c) {
  SparseState out;
  for (const auto& [config, amp] : psi) {
    for (int k = 0; k < static_cast<int>(c.size()); ++k) {
      if (c(k) == 0.0) continue;
      Config next = config;
      next[k] += 1;
      out[next] += c(k) * amp * std::sqrt(static_cast<double>(next[k]));
    }
  }
  return out;
}

SparseState apply_creation_power(const SparseState& psi, int site, int power) {
  SparseState out;
  for (const auto& [config, amp] : psi) {
    Config next = config;
    double factor = 1.0;
    for (int p = 0; p < power; ++p) {
      next[site - 1] += 1;
      factor *= std::sqrt(static_cast<double>(next[site - 1]));
    }
    out[next] += amp * factor;
  }
  return out;
}

void normalize(SparseState& psi) {
  double n2 = 0.0;
  for (const auto& [c, a] : psi) n2 += std::norm(a);
  const double n = std::sqrt(n2);
  for (auto& [c, a] : psi) a /= n;
}

SparseState condensate_multinomial(const Eigen::VectorXcd& c, int m) {
  const int n = static_cast<int>(c.size());
  SparseState out;
  for (const auto& config : fock_basis(n, m)) {
    // M! / prod n_k! * prod c_k^{n_k} * sqrt(prod n_k!)
    std::complex<double> amp = std::exp(std::lgamma(m + 1.0));
    for (int k = 0; k < n; ++k) {
      for (int p = 0; p < config[k]; ++p) amp *= c(k);
      amp /= std::sqrt(std::exp(std::lgamma(config[k] + 1.0)));
    }
    if (amp != 0.0) out[config] = amp;
  }
  normalize(out);
  return out;
}

SparseState two_sum_state(const Eigen::VectorXcd& z, int m1, const Eigen::VectorXcd& c, int m2) {
  SparseState psi = vacuum(static_cast<int>(z.size()));
  for (int i = 0; i < m1; ++i) psi = apply_creation_sum(psi, z);
  for (int i = 0; i < m2; ++i) psi = apply_creation_sum(psi, c);
  normalize(psi);
  return psi;
}

Eigen::VectorXcd to_vector(const SparseState& psi, const std::vector<Config>& basis) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto it = psi.find(basis[i]);
    if (it != psi.end()) v(static_cast<Eigen::Index>(i)) = it->second;
  }
  return v;
}

Eigen::MatrixXcd number_sector_hamiltonian(const Eigen::MatrixXcd& r, const std::vector<Config>& basis) {
  std::map<Config, Eigen::Index> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = static_cast<Eigen::Index>(i);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  const int n = static_cast<int>(r.rows());
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const Config& cfg = basis[col];
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        if (r(k, l) == 0.0 || cfg[l] == 0) continue;
        Config next = cfg;
        double f = std::sqrt(static_cast<double>(next[l]));
        next[l] -= 1;
        next[k] += 1;
        f *= std::sqrt(static_cast<double>(next[k]));
        h(index.at(next), col) += r(k, l) * f;
      }
  }
  return h;
}

Eigen::VectorXcd evolve(const Eigen::MatrixXcd& r, const std::vector<Config>& basis,
                        const Eigen::VectorXcd& psi, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(number_sector_hamiltonian(r, basis));
  Eigen::VectorXcd phases(solver.eigenvalues().size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) phases(i) = std::polar(1.0, -solver.eigenvalues()(i) * t);
  return solver.eigenvectors() * phases.asDiagonal() * (solver.eigenvectors().adjoint() * psi);
}

Eigen::MatrixXcd reduced_density(const SparseState& psi, int k, int l, int local_dim) {
  const int d = local_dim;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d * d, d * d);
  // Group by environment configuration (all sites except k and l).
  std::map<Config, std::vector<std::pair<int, std::complex<double>>>> env;
  for (const auto& [cfg, amp] : psi) {
    if (cfg[k - 1] >= d || cfg[l - 1] >= d) throw std::out_of_range("occupation exceeds local_dim");
    Config e = cfg;
    e[k - 1] = -1;
    e[l - 1] = -1;
    env[e].emplace_back(cfg[k - 1] * d + cfg[l - 1], amp);
  }
  for (const auto& [e, entries] : env)
    for (const auto& [a, x] : entries)
      for (const auto& [b, y] : entries) rho(a, b) += x * std::conj(y);
  return rho;
}

Eigen::VectorXd schmidt_values(const SparseState& psi, int bond) {
  std::map<Config, Eigen::Index> left, right;
  for (const auto& [cfg, amp] : psi) {
    left.emplace(Config(cfg.begin(), cfg.begin() + bond), 0);
    right.emplace(Config(cfg.begin() + bond, cfg.end()), 0);
  }
  Eigen::Index i = 0;
  for (auto& [c, idx] : left) idx = i++;
  i = 0;
  for (auto& [c, idx] : right) idx = i++;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(left.size()),
                                              static_cast<Eigen::Index>(right.size()));
  for (const auto& [cfg, amp] : psi)
    m(left.at(Config(cfg.begin(), cfg.begin() + bond)), right.at(Config(cfg.begin() + bond, cfg.end()))) = amp;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues();
}

Eigen::VectorXd occupations(const SparseState& psi, int n_sites) {
  Eigen::VectorXd occ = Eigen::VectorXd::Zero(n_sites);
  for (const auto& [cfg, amp] : psi)
    for (int k = 0; k < n_sites; ++k) occ(k) += cfg[k] * std::norm(amp);
  return occ;
}

Eigen::MatrixXcd random_hermitian(int n, std::mt19937& rng, bool real_only) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXcd a(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const double re = normal(rng);
      a(r, c) = {re, real_only ? 0.0 : normal(rng)};
    }
  return 0.5 * (a + a.adjoint());
}

}  // namespace bosefold::oracle
