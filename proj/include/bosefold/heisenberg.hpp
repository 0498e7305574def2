#pragma once

#include "bosefold/model.hpp"

#include <Eigen/Dense>

#include <utility>
#include <vector>

namespace bosefold {

/// Eigen-decomposition of a coupling matrix, cached for repeated propagation.
struct Spectrum {
  Eigen::VectorXd eigenvalues;    // ascending
  Eigen::MatrixXcd eigenvectors;  // columns; largest-magnitude entry real positive

  int n_sites() const { return static_cast<int>(eigenvalues.size()); }
};

/// Mode propagator A(t) = exp(-i R t).
///
/// A condensate sum sum_k c_k a_k^dag evolves into sum_k (A c)_k a_k^dag, so the
/// Heisenberg-evolved creation operator of site k has coefficient vector A e_k.
struct PropagatorMatrix {
  double time = 0.0;
  Eigen::MatrixXcd entries;
};

/// Coefficients of one condensate sum sum_k c_k a_k^dag.
struct ModeAmplitudes {
  Eigen::VectorXcd coefficients;

  int n_sites() const { return static_cast<int>(coefficients.size()); }
  double norm() const { return coefficients.norm(); }
  bool operator==(const ModeAmplitudes&) const = default;
};

struct GroundMode {
  ModeAmplitudes mode;
  double energy = 0.0;
  double gap = 0.0;
  /// Set when the two lowest levels are closer than 1e-12; the mode is then one
  /// arbitrary (but deterministic) vector of the ground eigenspace.
  bool degenerate = false;
};

/// A condensate packet: mode plus its boson count.
struct Packet {
  ModeAmplitudes mode;
  int count = 0;
};

Spectrum spectral_decompose(const CouplingMatrix& r);

PropagatorMatrix propagate(const Spectrum& spec, double t);

GroundMode ground_mode(const Spectrum& spec);

/// Packets generated from an initial Fock configuration given as (site, count) pairs
/// with 1-based sites. Each packet's mode is column `site` of A, which equals row
/// `site` whenever R is real (A is then complex symmetric).
std::vector<Packet> packet_modes(const std::vector<std::pair<int, int>>& initial,
                                 const PropagatorMatrix& a);

/// <n_m> = sum_p count_p |c_m^(p)|^2; valid for mutually orthonormal packet modes.
Eigen::VectorXd occupations_oracle(const std::vector<Packet>& packets);

/// Makes the largest-magnitude component real positive (first index on ties).
void fix_phase(Eigen::Ref<Eigen::VectorXcd> v);

}  // namespace bosefold
