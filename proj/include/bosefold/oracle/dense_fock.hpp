#pragma once

// Brute-force Fock-space reference used by the tests and the `selftest` command.
// Nothing here goes through folding, gates or tensor trains.

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <random>
#include <vector>

namespace bosefold::oracle {

using Config = std::vector<int>;

/// Sparse state over Fock configurations of arbitrary total number.
using SparseState = std::map<Config, std::complex<double>>;

/// All configurations of n_sites with exactly n_bosons, lexicographic order.
std::vector<Config> fock_basis(int n_sites, int n_bosons);

SparseState vacuum(int n_sites);

/// sum_k c_k a_k^dag applied to a state.
SparseState apply_creation_sum(const SparseState& psi, const Eigen::VectorXcd& c);

/// (a_site^dag)^power, site 1-based.
SparseState apply_creation_power(const SparseState& psi, int site, int power);

void normalize(SparseState& psi);

/// (sum c a^dag)^M |0> normalized, via the multinomial formula.
SparseState condensate_multinomial(const Eigen::VectorXcd& c, int m);

/// (sum c a^dag)^{M2} (sum z a^dag)^{M1} |0> normalized, by repeated operator application.
SparseState two_sum_state(const Eigen::VectorXcd& z, int m1, const Eigen::VectorXcd& c, int m2);

/// Amplitudes in fock_basis order (missing configurations are zero).
Eigen::VectorXcd to_vector(const SparseState& psi, const std::vector<Config>& basis);

/// H = sum_{kl} R_kl a_k^dag a_l restricted to the fixed-number basis.
Eigen::MatrixXcd number_sector_hamiltonian(const Eigen::MatrixXcd& r, const std::vector<Config>& basis);

/// exp(-i H t) psi on the fixed-number basis.
Eigen::VectorXcd evolve(const Eigen::MatrixXcd& r, const std::vector<Config>& basis,
                        const Eigen::VectorXcd& psi, double t);

/// rho over sites k < l (1-based), indexed n_k * d + n_l.
Eigen::MatrixXcd reduced_density(const SparseState& psi, int k, int l, int local_dim);

/// Schmidt values across the bond after `bond` sites, descending.
Eigen::VectorXd schmidt_values(const SparseState& psi, int bond);

Eigen::VectorXd occupations(const SparseState& psi, int n_sites);

/// Hermitian matrix with independent standard-normal real and imaginary parts (real if
/// `real_only`), scaled by 1/2 after symmetrization.
Eigen::MatrixXcd random_hermitian(int n, std::mt19937& rng, bool real_only = false);

}  // namespace bosefold::oracle
