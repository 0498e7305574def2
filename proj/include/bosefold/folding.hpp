#pragma once

#include "bosefold/heisenberg.hpp"

#include <iosfwd>
#include <vector>

namespace bosefold {

/// One elementary mode-space operation of a fold.
///
/// Phase(k, theta): the unitary exp(-i theta n_k); it maps a_k^dag -> e^{-i theta} a_k^dag.
/// Rotation(k, phi): the unitary exp(-i phi Q_k) on modes (k, k+1) with
/// Q_k = (a_{k+1}^dag a_k - a_k^dag a_{k+1}) / (2i); on coefficients it acts as
///   v'_{k+1} = v_{k+1} cos(phi/2) - v_k sin(phi/2)
///   v'_k     = v_{k+1} sin(phi/2) + v_k cos(phi/2).
struct ElementaryModeOp {
  enum class Kind { Phase, Rotation };

  Kind kind = Kind::Phase;
  int site = 1;  // site for Phase, left site of the bond for Rotation (1-based)
  double angle = 0.0;

  static ElementaryModeOp phase(int k, double theta) { return {Kind::Phase, k, theta}; }
  static ElementaryModeOp rotation(int k, double phi) { return {Kind::Rotation, k, phi}; }

  bool operator==(const ElementaryModeOp&) const = default;
};

/// Ordered list of ops (application order) that sends a condensate mode to e_1.
struct FoldPlan {
  int n_sites = 0;
  std::vector<ElementaryModeOp> ops;
  int target_mode = 1;

  bool operator==(const FoldPlan&) const = default;
};

/// Two-sum fold of (S2)^{M2} (S1)^{M1} |0>.
///
/// plan1 folds S1 onto e_1. plan2_partial strips the phases of the transformed S2
/// (site 1 included) and folds it onto span{e_1, e_2} using bonds N-1..2. The
/// bridging rotation on bond 1 then folds S2 onto e_1 and unfolds S1. The site-1
/// phase leaves S1 = e^{-i theta_1} a_1^dag, so the folded state carries the global
/// phase exp(i seed_phase) with seed_phase = -theta_1 * M1.
struct TwoSumPlan {
  FoldPlan plan1;
  FoldPlan plan2_partial;
  double bridging_angle = 0.0;
  double seed_phase = 0.0;
  int m1 = 0;
  int m2 = 0;
};

/// phi = 2 atan2(c_{k+1}, c_k); throws InvalidInput when both are exactly zero.
double pair_rotation_angle(double ck, double ck1);

/// Phases on sites 1..N followed by rotations on bonds N-1..1; always 2N-1 ops.
FoldPlan fold_single(const ModeAmplitudes& c);

ModeAmplitudes apply_plan_to_modes(const FoldPlan& plan, const ModeAmplitudes& v);

/// Reverse order, negated angles. Phase angles are wrapped back into (-pi, pi].
FoldPlan invert_plan(const FoldPlan& plan);

TwoSumPlan fold_two(const ModeAmplitudes& z, const ModeAmplitudes& c, int m1, int m2);

/// `P k theta` / `R k phi` per line, 17 significant digits.
void write_plan(std::ostream& os, const FoldPlan& plan);
FoldPlan read_plan(std::istream& is, int n_sites);

}  // namespace bosefold
