#include "bosefold/mps.hpp"

#include "bosefold/errors.hpp"
#include "bosefold/special.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace bosefold {

using Eigen::Index;
using Eigen::MatrixXcd;
using Eigen::VectorXd;
using IndexList = std::vector<Index>;

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidInput(what);
}

// Sector-restricted generator -(phi/2)(a2^dag a1 - a1^dag a2), exponentiated.
MatrixXcd rotation_sector(int total, int lo, int hi, double phi) {
  const int m = hi - lo + 1;
  MatrixXcd h = MatrixXcd::Zero(m, m);  // h = i * X, Hermitian
  const std::complex<double> i_unit(0.0, 1.0);
  for (int n1 = lo; n1 <= hi; ++n1) {
    const int n2 = total - n1;
    if (n1 - 1 >= lo) h(n1 - 1 - lo, n1 - lo) += i_unit * (-0.5 * phi * std::sqrt(double(n1) * (n2 + 1)));
    if (n1 + 1 <= hi) h(n1 + 1 - lo, n1 - lo) += i_unit * (0.5 * phi * std::sqrt(double(n1 + 1) * n2));
  }
  Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(h);
  Eigen::VectorXcd phases(m);
  for (int k = 0; k < m; ++k) phases(k) = std::polar(1.0, -solver.eigenvalues()(k));
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

}  // namespace

SingleModeGate build_phase_gate(int site, double theta, int local_dim) {
  require(local_dim >= 1, "local dimension must be >= 1");
  SingleModeGate g{site, MatrixXcd::Zero(local_dim, local_dim)};
  for (int n = 0; n < local_dim; ++n) g.matrix(n, n) = std::polar(1.0, -theta * n);
  return g;
}

TwoModeGate build_pair_rotation_gate(int bond, double phi, int local_dim) {
  require(local_dim >= 1, "local dimension must be >= 1");
  const int d = local_dim;
  TwoModeGate g{bond, d, MatrixXcd::Zero(d * d, d * d)};
  for (int total = 0; total <= 2 * (d - 1); ++total) {
    const int lo = std::max(0, total - (d - 1));
    const int hi = std::min(total, d - 1);
    const MatrixXcd block = rotation_sector(total, lo, hi, phi);
    for (int a = lo; a <= hi; ++a)
      for (int b = lo; b <= hi; ++b)
        g.matrix(a * d + (total - a), b * d + (total - b)) = block(a - lo, b - lo);
  }
  return g;
}

void validate_gate(const TwoModeGate& gate, double tol) {
  const int d = gate.local_dim;
  require(gate.matrix.rows() == d * d && gate.matrix.cols() == d * d, "two-mode gate has wrong size");
  for (int a = 0; a < d * d; ++a)
    for (int b = 0; b < d * d; ++b)
      if ((a / d + a % d) != (b / d + b % d) && gate.matrix(a, b) != 0.0)
        throw InvalidInput("two-mode gate mixes total-occupation sectors");
  const double err =
      (gate.matrix * gate.matrix.adjoint() - MatrixXcd::Identity(d * d, d * d)).cwiseAbs().maxCoeff();
  if (err > tol) throw InvalidInput("two-mode gate is not unitary");
}

// --- construction ---------------------------------------------------------------------

BlockDecimationState BlockDecimationState::from_fock(std::span<const int> occupations,
                                                     int local_dim, int chi_max,
                                                     double trunc_tol) {
  const int n = static_cast<int>(occupations.size());
  require(n >= 2, "chain needs at least 2 sites");
  require(local_dim >= 1, "local dimension must be >= 1");
  require(chi_max >= 1, "chi_max must be >= 1");
  require(trunc_tol >= 0.0, "trunc_tol must be >= 0");
  for (int k = 0; k < n; ++k) {
    require(occupations[k] >= 0, "negative occupation");
    if (occupations[k] >= local_dim)
      throw CutoffError("occupation " + std::to_string(occupations[k]) + " on site " +
                        std::to_string(k + 1) + " does not fit local dimension " +
                        std::to_string(local_dim));
  }
  BlockDecimationState s;
  s.n_sites_ = n;
  s.local_dim_ = local_dim;
  s.chi_max_ = chi_max;
  s.trunc_tol_ = trunc_tol;
  s.charged_ = true;
  s.gammas_.assign(n, std::vector<MatrixXcd>(local_dim, MatrixXcd::Zero(1, 1)));
  s.lambdas_.assign(n + 1, VectorXd::Ones(1));
  s.charges_.assign(n + 1, std::vector<int>{0});
  int running = 0;
  for (int k = 0; k < n; ++k) {
    s.gammas_[k][occupations[k]](0, 0) = 1.0;
    running += occupations[k];
    s.charges_[k + 1][0] = running;
  }
  return s;
}

BlockDecimationState BlockDecimationState::from_product(const std::vector<Eigen::VectorXcd>& sites,
                                                        int chi_max, double trunc_tol) {
  const int n = static_cast<int>(sites.size());
  require(n >= 2, "chain needs at least 2 sites");
  const int d = static_cast<int>(sites.front().size());
  std::vector<int> definite(n, -1);
  for (int k = 0; k < n; ++k) {
    require(sites[k].size() == d, "site vectors must share the local dimension");
    require(sites[k].norm() > 0.0, "zero site vector");
    int nonzero = 0;
    for (int m = 0; m < d; ++m)
      if (sites[k](m) != 0.0) {
        ++nonzero;
        definite[k] = m;
      }
    if (nonzero != 1) definite[k] = -1;
  }
  const bool all_definite = std::all_of(definite.begin(), definite.end(), [](int v) { return v >= 0; });
  BlockDecimationState s = from_fock(std::vector<int>(n, 0), d, chi_max, trunc_tol);
  for (int k = 0; k < n; ++k) {
    const Eigen::VectorXcd v = sites[k] / sites[k].norm();
    for (int m = 0; m < d; ++m) s.gammas_[k][m](0, 0) = v(m);
  }
  if (all_definite) {
    int running = 0;
    for (int k = 0; k < n; ++k) {
      running += definite[k];
      s.charges_[k + 1][0] = running;
    }
  } else {
    s.charged_ = false;
  }
  return s;
}

int BlockDecimationState::max_bond_dim() const {
  int chi = 1;
  for (const auto& l : lambdas_) chi = std::max(chi, static_cast<int>(l.size()));
  return chi;
}

BlockDecimationState::Groups BlockDecimationState::groups(int bond) const {
  Groups g;
  const auto& q = charges_[bond];
  for (Index i = 0; i < static_cast<Index>(q.size()); ++i) g[charged_ ? q[i] : 0].push_back(i);
  return g;
}

// --- gates ----------------------------------------------------------------------------

void BlockDecimationState::apply_single(const SingleModeGate& gate) {
  require(gate.site >= 1 && gate.site <= n_sites_, "gate site out of range");
  require(gate.matrix.rows() == local_dim_ && gate.matrix.cols() == local_dim_,
          "single-site gate dimension does not match local dimension");
  auto& g = gammas_[gate.site - 1];
  std::vector<MatrixXcd> out(local_dim_, MatrixXcd::Zero(g[0].rows(), g[0].cols()));
  bool diagonal = true;
  for (int a = 0; a < local_dim_; ++a)
    for (int b = 0; b < local_dim_; ++b) {
      const auto u = gate.matrix(a, b);
      if (u == 0.0) continue;
      if (a != b) diagonal = false;
      out[a] += u * g[b];
    }
  g = std::move(out);
  if (!diagonal && charged_) {
    charged_ = false;
    for (auto& q : charges_) std::fill(q.begin(), q.end(), 0);
  }
}

void BlockDecimationState::apply_two(const TwoModeGate& gate) {
  require(gate.bond >= 1 && gate.bond < n_sites_, "gate bond out of range");
  require(gate.local_dim == local_dim_ && gate.matrix.rows() == local_dim_ * local_dim_ &&
              gate.matrix.cols() == local_dim_ * local_dim_,
          "two-site gate dimension does not match local dimension");
  two_site_update(gate.bond, &gate.matrix);
}

void BlockDecimationState::two_site_update(int bond, const MatrixXcd* gate) {
  const int d = local_dim_;
  const int s = bond - 1;  // 0-based left site
  const VectorXd& lam_l = lambdas_[bond - 1];
  const VectorXd& lam_m = lambdas_[bond];
  const VectorXd& lam_r = lambdas_[bond + 1];
  const Index chi_l = lam_l.size();
  const Index chi_r = lam_r.size();
  const Groups gl = groups(bond - 1);
  const Groups gm = groups(bond);
  const Groups gr = groups(bond + 1);

  // theta[i * d + j] = diag(lam_l) G_s^i diag(lam_m) G_{s+1}^j diag(lam_r)
  std::vector<MatrixXcd> theta(d * d, MatrixXcd::Zero(chi_l, chi_r));
  for (const auto& [q, rows] : gl) {
    for (int i = 0; i < d; ++i) {
      const auto mid = gm.find(q + shift(i));
      if (mid == gm.end()) continue;
      const IndexList& g = mid->second;
      const MatrixXcd left = lam_l(rows).asDiagonal() * MatrixXcd(gammas_[s][i](rows, g)) *
                             lam_m(g).asDiagonal();
      if (left.cwiseAbs().maxCoeff() == 0.0) continue;
      for (int j = 0; j < d; ++j) {
        const auto right = gr.find(q + shift(i) + shift(j));
        if (right == gr.end()) continue;
        const IndexList& cols = right->second;
        theta[i * d + j](rows, cols) +=
            left * MatrixXcd(gammas_[s + 1][j](g, cols)) * lam_r(cols).asDiagonal();
      }
    }
  }

  if (gate != nullptr) {
    std::vector<MatrixXcd> mixed(d * d, MatrixXcd::Zero(chi_l, chi_r));
    for (int total = 0; total <= 2 * (d - 1); ++total) {
      const int lo = std::max(0, total - (d - 1));
      const int hi = std::min(total, d - 1);
      for (int a = lo; a <= hi; ++a) {
        const int out = a * d + (total - a);
        for (int b = lo; b <= hi; ++b) {
          const int in = b * d + (total - b);
          const auto u = (*gate)(out, in);
          if (u != 0.0) mixed[out] += u * theta[in];
        }
      }
    }
    theta = std::move(mixed);
  }

  // Sector-blocked SVD: row (i, alpha) has left charge q_l(alpha) + i, column (j, beta)
  // has q_r(beta) - j; only equal charges couple.
  struct Slot {
    int n;
    Index bond_index;
  };
  std::map<int, std::vector<Slot>> row_sets;
  std::map<int, std::vector<Slot>> col_sets;
  for (int i = 0; i < d; ++i)
    for (Index a = 0; a < chi_l; ++a)
      row_sets[charged_ ? charges_[bond - 1][a] + i : 0].push_back({i, a});
  for (int j = 0; j < d; ++j)
    for (Index b = 0; b < chi_r; ++b)
      col_sets[charged_ ? charges_[bond + 1][b] - j : 0].push_back({j, b});

  struct Block {
    int charge;
    const std::vector<Slot>* rows;
    const std::vector<Slot>* cols;
    MatrixXcd u;
    MatrixXcd v;
    VectorXd sigma;
  };
  std::vector<Block> blocks;
  for (const auto& [q, rs] : row_sets) {
    const auto cs = col_sets.find(q);
    if (cs == col_sets.end()) continue;
    MatrixXcd m(rs.size(), cs->second.size());
    for (Index r = 0; r < m.rows(); ++r)
      for (Index c = 0; c < m.cols(); ++c) {
        const Slot& row = rs[r];
        const Slot& col = cs->second[c];
        m(r, c) = theta[row.n * d + col.n](row.bond_index, col.bond_index);
      }
    if (m.cwiseAbs().maxCoeff() == 0.0) continue;
    Eigen::BDCSVD<MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    blocks.push_back({q, &rs, &cs->second, svd.matrixU(), svd.matrixV(), svd.singularValues()});
  }

  struct Candidate {
    double sigma;
    int charge;
    std::size_t block;
    Index k;
  };
  std::vector<Candidate> cand;
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (Index k = 0; k < blocks[b].sigma.size(); ++k)
      cand.push_back({blocks[b].sigma(k), blocks[b].charge, b, k});
  std::sort(cand.begin(), cand.end(), [](const Candidate& x, const Candidate& y) {
    if (x.sigma != y.sigma) return x.sigma > y.sigma;
    if (x.charge != y.charge) return x.charge < y.charge;
    return x.k < y.k;
  });

  std::vector<Candidate> kept;
  for (const auto& c : cand) {
    if (static_cast<int>(kept.size()) < chi_max_ && c.sigma * c.sigma >= trunc_tol_ &&
        c.sigma > kLambdaFloor) {
      kept.push_back(c);
    } else if (c.sigma > kLambdaFloor) {
      discarded_weight_ += c.sigma * c.sigma;  // values at the floor are exact zeros, not truncation
    }
  }
  if (kept.empty()) throw NumericError("two-site update annihilated the state");

  const Index chi = static_cast<Index>(kept.size());
  VectorXd lam(chi);
  for (Index g = 0; g < chi; ++g) lam(g) = kept[g].sigma;
  lam /= lam.norm();

  std::vector<MatrixXcd> left(d, MatrixXcd::Zero(chi_l, chi));
  std::vector<MatrixXcd> right(d, MatrixXcd::Zero(chi, chi_r));
  std::vector<int> charges(chi);
  for (Index g = 0; g < chi; ++g) {
    const Block& blk = blocks[kept[g].block];
    charges[g] = charged_ ? blk.charge : 0;
    for (Index r = 0; r < static_cast<Index>(blk.rows->size()); ++r) {
      const Slot& row = (*blk.rows)[r];
      left[row.n](row.bond_index, g) = blk.u(r, kept[g].k) / lam_l(row.bond_index);
    }
    for (Index c = 0; c < static_cast<Index>(blk.cols->size()); ++c) {
      const Slot& col = (*blk.cols)[c];
      right[col.n](g, col.bond_index) = std::conj(blk.v(c, kept[g].k)) / lam_r(col.bond_index);
    }
  }
  gammas_[s] = std::move(left);
  gammas_[s + 1] = std::move(right);
  lambdas_[bond] = std::move(lam);
  charges_[bond] = std::move(charges);
}

void BlockDecimationState::canonicalize_from(int first_bond) {
  for (int b = first_bond; b < n_sites_; ++b) two_site_update(b, nullptr);
}

void BlockDecimationState::sort_bond(int bond) {
  VectorXd& lam = lambdas_[bond];
  IndexList order(lam.size());
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return lam(a) > lam(b); });
  while (!order.empty() && lam(order.back()) <= kLambdaFloor) order.pop_back();
  if (order.empty()) throw NumericError("bond lost all Schmidt weight");
  VectorXd new_lam = lam(order);
  new_lam /= new_lam.norm();
  const IndexList all_l = [&] {
    IndexList v(gammas_[bond - 1][0].rows());
    std::iota(v.begin(), v.end(), Index{0});
    return v;
  }();
  const IndexList all_r = [&] {
    IndexList v(gammas_[bond][0].cols());
    std::iota(v.begin(), v.end(), Index{0});
    return v;
  }();
  for (auto& g : gammas_[bond - 1]) g = MatrixXcd(g(all_l, order));
  for (auto& g : gammas_[bond]) g = MatrixXcd(g(order, all_r));
  std::vector<int> q(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) q[i] = charges_[bond][order[i]];
  charges_[bond] = std::move(q);
  lam = std::move(new_lam);
}

// --- lifting ----------------------------------------------------------------------------

void BlockDecimationState::lift_first_site(int m2) {
  require(m2 >= 0, "lift count must be >= 0");
  if (m2 == 0) return;
  const int d = local_dim_;
  const Index chi = lambdas_[1].size();
  const auto& g = gammas_[0];
  constexpr double kNoise = 1e-14;
  constexpr double kDefiniteTol = 1e-10;

  // log of the (a^dag)^m2 matrix element sqrt((j + m2)! / j!), shifted for stability.
  std::vector<double> log_factor(d);
  double max_log = -1e300;
  for (int j = 0; j < d; ++j) {
    log_factor[j] = 0.5 * (log_factorial(j + m2) - log_factorial(j));
    bool used = false;
    for (Index c = 0; c < chi; ++c) used = used || std::abs(g[j](0, c)) > kNoise;
    if (!used) continue;
    if (j + m2 >= d)
      throw CutoffError("lifting occupation " + std::to_string(j) + " by " + std::to_string(m2) +
                        " exceeds local dimension " + std::to_string(d));
    max_log = std::max(max_log, log_factor[j]);
  }

  std::vector<MatrixXcd> lifted(d, MatrixXcd::Zero(1, chi));
  VectorXd lam = lambdas_[1];
  for (Index c = 0; c < chi; ++c) {
    double total = 0.0;
    double largest = 0.0;
    for (int j = 0; j < d; ++j) {
      const double w = std::norm(g[j](0, c));
      total += w;
      largest = std::max(largest, w);
    }
    if (chi > 1 && largest < (1.0 - kDefiniteTol) * total)
      throw PreconditionError("Schmidt vector " + std::to_string(c) +
                              " of bond 1 has no definite site-1 occupation");
    double col_norm2 = 0.0;
    for (int j = 0; j + m2 < d; ++j) {
      if (std::abs(g[j](0, c)) <= kNoise) continue;
      const auto v = g[j](0, c) * std::exp(log_factor[j] - max_log);
      lifted[j + m2](0, c) = v;
      col_norm2 += std::norm(v);
    }
    const double col_norm = std::sqrt(col_norm2);
    for (int j = 0; j < d; ++j) lifted[j](0, c) /= col_norm;
    lam(c) *= col_norm;
  }
  gammas_[0] = std::move(lifted);
  lambdas_[1] = lam / lam.norm();
  if (charged_)
    for (int b = 1; b <= n_sites_; ++b)
      for (auto& q : charges_[b]) q += m2;
  sort_bond(1);

  // Bond-1 data is already a valid Schmidt decomposition. Deeper bonds only need
  // refreshing when the left block carried entanglement across them.
  bool deeper = false;
  for (int b = 2; b < n_sites_; ++b) deeper = deeper || lambdas_[b].size() > 1;
  if (deeper) canonicalize_from(2);
}

void BlockDecimationState::apply_global_phase(std::complex<double> phase) {
  for (auto& g : gammas_[0]) g *= phase;
}

// --- observables ----------------------------------------------------------------------

std::complex<double> BlockDecimationState::amplitude(std::span<const int> config) const {
  require(static_cast<int>(config.size()) == n_sites_, "configuration length mismatch");
  Eigen::RowVectorXcd v = Eigen::RowVectorXcd::Ones(1);
  for (int k = 0; k < n_sites_; ++k) {
    const int n = config[k];
    require(n >= 0 && n < local_dim_, "configuration entry outside local dimension");
    v = v.cwiseProduct(lambdas_[k].transpose().cast<std::complex<double>>()) * gammas_[k][n];
  }
  return v(0) * lambdas_[n_sites_](0);
}

double BlockDecimationState::site_occupation(int site) const {
  require(site >= 1 && site <= n_sites_, "site out of range");
  const auto& g = gammas_[site - 1];
  const VectorXd& ll = lambdas_[site - 1];
  const VectorXd& lr = lambdas_[site];
  double occ = 0.0;
  for (int n = 1; n < local_dim_; ++n)
    occ += n * (ll.asDiagonal() * g[n] * lr.asDiagonal()).squaredNorm();
  return occ;
}

Eigen::VectorXd BlockDecimationState::occupations() const {
  VectorXd occ(n_sites_);
  for (int k = 1; k <= n_sites_; ++k) occ(k - 1) = site_occupation(k);
  return occ;
}

Eigen::VectorXd BlockDecimationState::schmidt_values(int bond) const {
  require(bond >= 1 && bond < n_sites_, "bond out of range");
  return lambdas_[bond];
}

Eigen::MatrixXcd BlockDecimationState::reduced_density_two_sites(int k, int l) const {
  require(k >= 1 && l <= n_sites_ && k < l, "need sites 1 <= k < l <= N");
  const int d = local_dim_;

  // c[i * d + i'](g, g') = sum_a A_i(a, g) conj(A_i'(a, g')), A_i = diag(lam_{k-1}) Gamma_k^i
  const Index chi_k = lambdas_[k].size();
  std::vector<MatrixXcd> c(d * d, MatrixXcd::Zero(chi_k, chi_k));
  {
    const Groups gl = groups(k - 1);
    const Groups gk = groups(k);
    for (const auto& [q, rows] : gl) {
      std::vector<MatrixXcd> a(d);
      std::vector<const IndexList*> cols(d, nullptr);
      for (int i = 0; i < d; ++i) {
        const auto it = gk.find(q + shift(i));
        if (it == gk.end()) continue;
        cols[i] = &it->second;
        a[i] = lambdas_[k - 1](rows).asDiagonal() * MatrixXcd(gammas_[k - 1][i](rows, it->second));
      }
      for (int i = 0; i < d; ++i)
        for (int ip = 0; ip < d; ++ip)
          if (cols[i] && cols[ip]) c[i * d + ip](*cols[i], *cols[ip]) += a[i].transpose() * a[ip].conjugate();
    }
  }

  // Transfer through the sites strictly between k and l.
  for (int m = k + 1; m < l; ++m) {
    const Groups gl = groups(m - 1);
    const Groups gr = groups(m);
    const Index chi_r = lambdas_[m].size();
    // b[j] restricted per left group: diag(lam_{m-1}) Gamma_m^j
    std::vector<MatrixXcd> next(d * d, MatrixXcd::Zero(chi_r, chi_r));
    for (int i = 0; i < d; ++i)
      for (int ip = 0; ip < d; ++ip) {
        const MatrixXcd& cur = c[i * d + ip];
        MatrixXcd& out = next[i * d + ip];
        for (const auto& [q, rows] : gl) {
          const auto qp_it = gl.find(q + shift(ip) - shift(i));
          if (qp_it == gl.end()) continue;
          const IndexList& rows_p = qp_it->second;
          const MatrixXcd block = cur(rows, rows_p);
          if (block.cwiseAbs().maxCoeff() == 0.0) continue;
          for (int j = 0; j < d; ++j) {
            const auto r1 = gr.find(q + shift(j));
            const auto r2 = gr.find(qp_it->first + shift(j));
            if (r1 == gr.end() || r2 == gr.end()) continue;
            const MatrixXcd b1 =
                lambdas_[m - 1](rows).asDiagonal() * MatrixXcd(gammas_[m - 1][j](rows, r1->second));
            const MatrixXcd b2 =
                lambdas_[m - 1](rows_p).asDiagonal() * MatrixXcd(gammas_[m - 1][j](rows_p, r2->second));
            out(r1->second, r2->second) += b1.transpose() * block * b2.conjugate();
          }
        }
      }
    c = std::move(next);
  }

  // p[j * d + j'] = F_j F_j'^dag, F_j = diag(lam_{l-1}) Gamma_l^j diag(lam_l)
  std::vector<MatrixXcd> f(d);
  for (int j = 0; j < d; ++j)
    f[j] = lambdas_[l - 1].asDiagonal() * gammas_[l - 1][j] * lambdas_[l].asDiagonal();
  MatrixXcd rho = MatrixXcd::Zero(d * d, d * d);
  for (int j = 0; j < d; ++j)
    for (int jp = 0; jp < d; ++jp) {
      const MatrixXcd p = f[j] * f[jp].adjoint();
      if (p.cwiseAbs().maxCoeff() == 0.0) continue;
      for (int i = 0; i < d; ++i)
        for (int ip = 0; ip < d; ++ip) {
          if (charged_ && i + j != ip + jp) continue;
          rho(i * d + j, ip * d + jp) = c[i * d + ip].cwiseProduct(p).sum();
        }
    }
  return rho;
}

double BlockDecimationState::norm() const {
  MatrixXcd x = MatrixXcd::Ones(1, 1);
  for (int k = 0; k < n_sites_; ++k) {
    MatrixXcd y = MatrixXcd::Zero(lambdas_[k + 1].size(), lambdas_[k + 1].size());
    for (int n = 0; n < local_dim_; ++n) {
      const MatrixXcd a = lambdas_[k].asDiagonal() * gammas_[k][n];
      y += a.adjoint() * x * a;
    }
    x = std::move(y);
  }
  return std::sqrt(std::abs(x(0, 0)) * lambdas_[n_sites_](0) * lambdas_[n_sites_](0));
}

double BlockDecimationState::canonical_error() const {
  double err = 0.0;
  for (int k = 0; k < n_sites_; ++k) {
    const Index cl = lambdas_[k].size();
    const Index cr = lambdas_[k + 1].size();
    MatrixXcd left = MatrixXcd::Zero(cr, cr);
    MatrixXcd right = MatrixXcd::Zero(cl, cl);
    for (int n = 0; n < local_dim_; ++n) {
      const MatrixXcd a = lambdas_[k].asDiagonal() * gammas_[k][n];
      const MatrixXcd b = gammas_[k][n] * lambdas_[k + 1].asDiagonal();
      left += a.adjoint() * a;
      right += b * b.adjoint();
    }
    err = std::max(err, (left - MatrixXcd::Identity(cr, cr)).cwiseAbs().maxCoeff());
    err = std::max(err, (right - MatrixXcd::Identity(cl, cl)).cwiseAbs().maxCoeff());
  }
  return err;
}

// --- pipelines --------------------------------------------------------------------------

void replay_plan(BlockDecimationState& state, const FoldPlan& plan) {
  require(plan.n_sites == state.n_sites(), "plan and state sizes differ");
  for (const auto& op : plan.ops) {
    if (op.angle == 0.0) continue;
    if (op.kind == ElementaryModeOp::Kind::Phase)
      state.apply_single(build_phase_gate(op.site, op.angle, state.local_dim()));
    else
      state.apply_two(build_pair_rotation_gate(op.site, op.angle, state.local_dim()));
  }
}

namespace {

int resolve_local_dim(const MpsOptions& o, int total) {
  const int d = o.local_dim > 0 ? o.local_dim : total + 1;
  if (total >= d)
    throw CutoffError("boson number " + std::to_string(total) + " needs local dimension > " +
                      std::to_string(total) + ", got " + std::to_string(d));
  return d;
}

}  // namespace

BlockDecimationState build_condensate_state(const ModeAmplitudes& c, int m,
                                            const MpsOptions& options) {
  require(m >= 0, "boson number must be >= 0");
  const int d = resolve_local_dim(options, m);
  const int chi = options.chi_max > 0 ? options.chi_max : 4 * (m + 1);
  const FoldPlan plan = fold_single(c);
  std::vector<int> seed(c.n_sites(), 0);
  seed[0] = m;
  auto state = BlockDecimationState::from_fock(seed, d, chi, options.trunc_tol);
  replay_plan(state, invert_plan(plan));
  return state;
}

BlockDecimationState build_two_sum_state(const TwoSumPlan& plan, const MpsOptions& options) {
  const int total = plan.m1 + plan.m2;
  const int d = resolve_local_dim(options, total);
  const int chi = options.chi_max > 0 ? options.chi_max
                                      : std::max(4 * (total + 1), (plan.m1 + 1) * (plan.m2 + 1));
  std::vector<int> seed(plan.plan1.n_sites, 0);
  seed[0] = plan.m1;
  auto state = BlockDecimationState::from_fock(seed, d, chi, options.trunc_tol);
  // (a_1^dag)^{M2} G(phi) |M1, 0, ...>, then G(phi)^dag undoes the bridging rotation.
  if (plan.bridging_angle != 0.0)
    state.apply_two(build_pair_rotation_gate(1, plan.bridging_angle, d));
  state.lift_first_site(plan.m2);
  if (plan.bridging_angle != 0.0)
    state.apply_two(build_pair_rotation_gate(1, -plan.bridging_angle, d));
  replay_plan(state, invert_plan(plan.plan2_partial));
  replay_plan(state, invert_plan(plan.plan1));
  state.apply_global_phase(std::polar(1.0, plan.seed_phase));
  return state;
}

BlockDecimationState build_condensate_state(const ModeAmplitudes& z, int m1,
                                            const ModeAmplitudes& c, int m2,
                                            const MpsOptions& options) {
  require(m1 >= 0 && m2 >= 0, "boson numbers must be >= 0");
  return build_two_sum_state(fold_two(z, c, m1, m2), options);
}

}  // namespace bosefold
