#pragma once

#include "bosefold/folding.hpp"
#include "bosefold/heisenberg.hpp"

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <span>
#include <vector>

namespace bosefold {

/// d x d unitary acting on one site.
struct SingleModeGate {
  int site = 1;
  Eigen::MatrixXcd matrix;
};

/// d^2 x d^2 unitary on sites (bond, bond + 1); row/column index n_k * d + n_{k+1}.
/// Block diagonal in n_k + n_{k+1}.
struct TwoModeGate {
  int bond = 1;
  int local_dim = 0;
  Eigen::MatrixXcd matrix;
};

/// diag(exp(-i theta n)), n = 0..d-1.
SingleModeGate build_phase_gate(int site, double theta, int local_dim);

/// exp(-i phi Q) with Q = (a_{k+1}^dag a_k - a_k^dag a_{k+1}) / (2i), exponentiated
/// exactly inside every total-occupation sector of the truncated two-mode space.
TwoModeGate build_pair_rotation_gate(int bond, double phi, int local_dim);

/// Throws InvalidInput unless the gate is unitary and number conserving.
void validate_gate(const TwoModeGate& gate, double tol = 1e-12);

struct MpsOptions {
  int local_dim = 0;         // 0: total boson number + 1
  int chi_max = 0;           // 0: generous default derived from the boson numbers
  double trunc_tol = 1e-12;  // discard singular values with sigma^2 below this
};

/// Vidal-form chain  lambda[0] Gamma[1] lambda[1] ... Gamma[N] lambda[N].
///
/// Every bond index carries the number of bosons to its left. States built from Fock
/// configurations with number-conserving gates keep these labels exact, which makes
/// two-site SVDs block diagonal and each Schmidt vector an occupation eigenstate.
/// States from generic product vectors drop the labels and fall back to dense SVDs.
class BlockDecimationState {
 public:
  /// Singular values at or below this are treated as exact zeros and dropped.
  static constexpr double kLambdaFloor = 1e-14;

  static BlockDecimationState from_fock(std::span<const int> occupations, int local_dim,
                                        int chi_max, double trunc_tol);

  /// Product of normalized single-site vectors (each of length local_dim).
  static BlockDecimationState from_product(const std::vector<Eigen::VectorXcd>& sites,
                                           int chi_max, double trunc_tol);

  int n_sites() const { return n_sites_; }
  int local_dim() const { return local_dim_; }
  int chi_max() const { return chi_max_; }
  double trunc_tol() const { return trunc_tol_; }
  double discarded_weight() const { return discarded_weight_; }
  bool number_definite() const { return charged_; }
  /// Total boson number; only meaningful for number-definite states.
  int total_bosons() const { return charges_.back().front(); }

  /// Bond b in 0..N (0 and N are the trivial boundaries); site k in 1..N.
  const Eigen::VectorXd& lambda(int bond) const { return lambdas_.at(bond); }
  const std::vector<int>& bond_charges(int bond) const { return charges_.at(bond); }
  const std::vector<Eigen::MatrixXcd>& gamma(int site) const { return gammas_.at(site - 1); }
  int bond_dim(int bond) const { return static_cast<int>(lambdas_.at(bond).size()); }
  int max_bond_dim() const;

  void apply_single(const SingleModeGate& gate);
  void apply_two(const TwoModeGate& gate);

  /// Applies (a_1^dag)^m2 and renormalizes. Each Schmidt vector of bond 1 must have a
  /// definite site-1 occupation (or bond 1 must have rank one).
  void lift_first_site(int m2);

  /// Multiplies the whole state by a unit-modulus factor.
  void apply_global_phase(std::complex<double> phase);

  std::complex<double> amplitude(std::span<const int> config) const;
  double site_occupation(int site) const;
  Eigen::VectorXd occupations() const;
  Eigen::VectorXd schmidt_values(int bond) const;

  /// rho[(n_k * d + n_l), (n_k' * d + n_l')] for sites k < l.
  Eigen::MatrixXcd reduced_density_two_sites(int k, int l) const;

  /// sqrt(<psi|psi>) by full contraction.
  double norm() const;

  /// Largest deviation from the left/right orthonormality conditions over all sites.
  double canonical_error() const;

 private:
  using Groups = std::map<int, std::vector<Eigen::Index>>;

  BlockDecimationState() = default;

  Groups groups(int bond) const;
  int shift(int n) const { return charged_ ? n : 0; }
  void sort_bond(int bond);
  void canonicalize_from(int first_bond);
  void two_site_update(int bond, const Eigen::MatrixXcd* gate);

  int n_sites_ = 0;
  int local_dim_ = 0;
  int chi_max_ = 0;
  double trunc_tol_ = 0.0;
  double discarded_weight_ = 0.0;
  bool charged_ = true;
  std::vector<std::vector<Eigen::MatrixXcd>> gammas_;  // [site][n] : chi_left x chi_right
  std::vector<Eigen::VectorXd> lambdas_;               // [bond 0..N]
  std::vector<std::vector<int>> charges_;              // [bond 0..N][index]
};

/// Replays a plan as phase and pair-rotation gates; zero-angle ops are identities and skipped.
void replay_plan(BlockDecimationState& state, const FoldPlan& plan);

/// (sum_k c_k a_k^dag)^M |0>, normalized: Fock seed |M,0,...,0> followed by the inverse fold.
BlockDecimationState build_condensate_state(const ModeAmplitudes& c, int m,
                                            const MpsOptions& options = {});

/// (S2)^{M2} (S1)^{M1} |0>, normalized, with S1 = sum z_k a_k^dag and S2 = sum c_k a_k^dag.
BlockDecimationState build_condensate_state(const ModeAmplitudes& z, int m1,
                                            const ModeAmplitudes& c, int m2,
                                            const MpsOptions& options = {});

/// Same, from an already computed two-sum plan.
BlockDecimationState build_two_sum_state(const TwoSumPlan& plan, const MpsOptions& options = {});

}  // namespace bosefold
