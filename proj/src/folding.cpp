#include "bosefold/folding.hpp"

#include "bosefold/errors.hpp"
#include "bosefold/format.hpp"

#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

namespace bosefold {

namespace {

constexpr double kFoldNoise = 1e-14;

double wrap_phase(double theta) {
  // exp(-i theta n) has period 2 pi; keep (-pi, pi].
  if (theta <= -std::numbers::pi) theta += 2.0 * std::numbers::pi;
  if (theta > std::numbers::pi) theta -= 2.0 * std::numbers::pi;
  return theta;
}

void apply_op(const ElementaryModeOp& op, Eigen::VectorXcd& v) {
  const Eigen::Index k = op.site - 1;
  if (op.kind == ElementaryModeOp::Kind::Phase) {
    v(k) *= std::polar(1.0, -op.angle);
    return;
  }
  const double cs = std::cos(0.5 * op.angle);
  const double sn = std::sin(0.5 * op.angle);
  const std::complex<double> vk = v(k);
  const std::complex<double> vk1 = v(k + 1);
  v(k + 1) = vk1 * cs - vk * sn;
  v(k) = vk1 * sn + vk * cs;
}

// Phase ops for every site, leaving the components of v real and non-negative.
void strip_phases(Eigen::VectorXcd& v, std::vector<ElementaryModeOp>& ops) {
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const double theta = wrap_phase(std::arg(v(k)));
    ops.push_back(ElementaryModeOp::phase(static_cast<int>(k + 1), theta));
    v(k) = std::abs(v(k));
  }
}

// Rotations on bonds from..to (descending), folding weight toward the left.
void fold_bonds(Eigen::VectorXcd& v, int from, int to, std::vector<ElementaryModeOp>& ops) {
  for (int k = from; k >= to; --k) {
    const double ck = v(k - 1).real();
    const double ck1 = v(k).real();
    const double phi = (ck == 0.0 && ck1 == 0.0) ? 0.0 : pair_rotation_angle(ck, ck1);
    const auto op = ElementaryModeOp::rotation(k, phi);
    apply_op(op, v);
    v(k) = 0.0;  // cancelled exactly by construction
    ops.push_back(op);
  }
}

void require_nonzero(const ModeAmplitudes& c, const char* what) {
  if (c.n_sites() < 2) throw InvalidInput(std::string(what) + ": need at least 2 modes");
  if (!c.coefficients.allFinite()) throw InvalidInput(std::string(what) + ": non-finite amplitudes");
  if (c.coefficients.squaredNorm() == 0.0) throw InvalidInput(std::string(what) + ": zero mode vector");
}

}  // namespace

double pair_rotation_angle(double ck, double ck1) {
  if (ck == 0.0 && ck1 == 0.0) throw InvalidInput("rotation angle undefined for a zero pair");
  return 2.0 * std::atan2(ck1, ck);
}

FoldPlan fold_single(const ModeAmplitudes& c) {
  require_nonzero(c, "fold_single");
  FoldPlan plan;
  plan.n_sites = c.n_sites();
  plan.ops.reserve(2 * plan.n_sites - 1);
  Eigen::VectorXcd v = c.coefficients;
  strip_phases(v, plan.ops);
  fold_bonds(v, plan.n_sites - 1, 1, plan.ops);
  return plan;
}

ModeAmplitudes apply_plan_to_modes(const FoldPlan& plan, const ModeAmplitudes& v) {
  if (v.n_sites() != plan.n_sites)
    throw InvalidInput("plan has " + std::to_string(plan.n_sites) + " modes, vector has " +
                       std::to_string(v.n_sites()));
  Eigen::VectorXcd out = v.coefficients;
  for (const auto& op : plan.ops) apply_op(op, out);
  return ModeAmplitudes{std::move(out)};
}

FoldPlan invert_plan(const FoldPlan& plan) {
  FoldPlan inv;
  inv.n_sites = plan.n_sites;
  inv.target_mode = plan.target_mode;
  inv.ops.reserve(plan.ops.size());
  for (auto it = plan.ops.rbegin(); it != plan.ops.rend(); ++it) {
    ElementaryModeOp op = *it;
    op.angle = -op.angle;
    if (op.kind == ElementaryModeOp::Kind::Phase) op.angle = wrap_phase(op.angle);
    inv.ops.push_back(op);
  }
  return inv;
}

TwoSumPlan fold_two(const ModeAmplitudes& z, const ModeAmplitudes& c, int m1, int m2) {
  require_nonzero(z, "fold_two (S1)");
  require_nonzero(c, "fold_two (S2)");
  if (z.n_sites() != c.n_sites()) throw InvalidInput("fold_two: dimension mismatch");
  if (m1 < 0 || m2 < 0) throw InvalidInput("fold_two: negative boson count");

  TwoSumPlan out;
  out.m1 = m1;
  out.m2 = m2;
  out.plan1 = fold_single(z);

  Eigen::VectorXcd v = apply_plan_to_modes(out.plan1, c).coefficients;
  // Round-off left by plan1 would otherwise set arbitrary phases and angles.
  const double floor = kFoldNoise * v.norm();
  for (auto& x : v)
    if (std::abs(x) <= floor) x = 0.0;
  out.plan2_partial.n_sites = z.n_sites();
  strip_phases(v, out.plan2_partial.ops);
  fold_bonds(v, z.n_sites() - 1, 2, out.plan2_partial.ops);

  const double c1 = v(0).real();
  const double c2 = v(1).real();
  out.bridging_angle = (c1 == 0.0 && c2 == 0.0) ? 0.0 : pair_rotation_angle(c1, c2);
  out.seed_phase = -out.plan2_partial.ops.front().angle * m1;
  return out;
}

void write_plan(std::ostream& os, const FoldPlan& plan) {
  for (const auto& op : plan.ops) {
    os << (op.kind == ElementaryModeOp::Kind::Phase ? 'P' : 'R') << ' ' << op.site << ' '
       << format_double(op.angle) << '\n';
  }
}

FoldPlan read_plan(std::istream& is, int n_sites) {
  FoldPlan plan;
  plan.n_sites = n_sites;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string tag, site, angle, extra;
    if (!(ss >> tag >> site >> angle) || (ss >> extra) || (tag != "P" && tag != "R"))
      throw InvalidInput("plan line " + std::to_string(line_no) + ": expected 'P|R site angle'");
    const int k = parse_int(site);
    const int max_site = tag == "P" ? n_sites : n_sites - 1;
    if (k < 1 || k > max_site)
      throw InvalidInput("plan line " + std::to_string(line_no) + ": site out of range");
    plan.ops.push_back(tag == "P" ? ElementaryModeOp::phase(k, parse_double(angle))
                                  : ElementaryModeOp::rotation(k, parse_double(angle)));
  }
  return plan;
}

}  // namespace bosefold
