#pragma once

#include <Eigen/Dense>

#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace bosefold {

/// Hermitian single-particle coupling matrix R of H = sum_{k,l} R_{kl} a_k^dag a_l.
/// Energies are in units of a reference energy E_R, hbar = 1. Site indices are 1-based
/// in every public interface; the underlying Eigen matrix is 0-based.
class CouplingMatrix {
 public:
  static constexpr double kHermitianTol = 1e-12;

  /// Validates size (N >= 2) and Hermiticity; throws InvalidInput otherwise.
  explicit CouplingMatrix(Eigen::MatrixXcd entries);

  /// N x N zero matrix.
  static CouplingMatrix zeros(int n_sites);

  int n_sites() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXcd& entries() const { return entries_; }

  /// 1-based element access.
  std::complex<double> operator()(int k, int l) const { return entries_(k - 1, l - 1); }

  double norm() const { return entries_.norm(); }

 private:
  Eigen::MatrixXcd entries_;
};

bool is_hermitian(const Eigen::MatrixXcd& m, double tol = CouplingMatrix::kHermitianTol);

CouplingMatrix build_inverse_distance(int n_sites, double j1);
CouplingMatrix build_jx(int n_sites);

/// Diagonal += omega * (k - center)^2.
CouplingMatrix add_parabolic_trap(const CouplingMatrix& r, double omega, double center);

/// Diagonal += height on sites first..last (inclusive, 1-based).
CouplingMatrix add_onsite_barrier(const CouplingMatrix& r, int first, int last, double height);

/// Diagonal += epsilon * exp(-beta * m_k^2) with m_k = j - k + 1, j = (N-1)/2.
CouplingMatrix add_gaussian_center_perturbation(const CouplingMatrix& r, double epsilon,
                                                double beta);

/// Magnetic quantum number m_k = (N-1)/2 - k + 1 carried by site k of the J_x chain.
inline double site_m(int n_sites, int k) { return 0.5 * (n_sites - 1) - k + 1; }

// Declarative description ----------------------------------------------------------

struct InverseDistanceBase {
  double j1 = 0.0;
  bool operator==(const InverseDistanceBase&) const = default;
};
struct JxBase {
  bool operator==(const JxBase&) const = default;
};
struct CustomBase {
  Eigen::MatrixXcd matrix;
  std::string source;  // file the matrix was read from, if any
  bool operator==(const CustomBase& o) const { return source == o.source && matrix == o.matrix; }
};

using ModelBase = std::variant<InverseDistanceBase, JxBase, CustomBase>;

struct Trap {
  double omega = 0.0;
  double center = 0.0;
  bool operator==(const Trap&) const = default;
};

struct Barrier {
  int first = 1;
  int last = 1;
  double height = 0.0;
  bool operator==(const Barrier&) const = default;
};

struct CenterPerturbation {
  double epsilon = 0.0;
  double beta = 0.0;
  bool operator==(const CenterPerturbation&) const = default;
};

struct ModelSpec {
  int n_sites = 2;
  ModelBase base = InverseDistanceBase{};
  std::optional<Trap> trap;
  std::vector<Barrier> barriers;
  std::optional<CenterPerturbation> perturbation;

  bool operator==(const ModelSpec&) const = default;
};

/// Throws InvalidInput when a field violates its range.
void validate(const ModelSpec& spec);

/// Base, then trap, barriers, perturbation.
CouplingMatrix build_model(const ModelSpec& spec);

/// One row per matrix row; each entry written as "re,im" pairs separated by commas.
void write_complex_csv(std::ostream& os, const Eigen::MatrixXcd& m);
Eigen::MatrixXcd read_complex_csv(std::istream& is);

}  // namespace bosefold
