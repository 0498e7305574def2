#include "bosefold/scenario.hpp"

#include "bosefold/entanglement.hpp"
#include "bosefold/errors.hpp"
#include "bosefold/folding.hpp"
#include "bosefold/format.hpp"
#include "bosefold/heisenberg.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ostream>
#include <thread>

namespace bosefold::cli {

namespace {

ModeAmplitudes evolve_mode(const Spectrum& spec, const ModeAmplitudes& c, double t) {
  return ModeAmplitudes{propagate(spec, t).entries * c.coefficients};
}

MpsOptions options_for(const ScenarioSpec& spec) {
  MpsOptions o = spec.numerics;
  if (o.local_dim == 0) o.local_dim = spec.bosons + 1;
  return o;
}

}  // namespace

QuenchResult run_quench(const ScenarioSpec& spec) {
  validate(spec);
  const GroundMode g = ground_mode(spectral_decompose(build_model(pre_quench_model(spec))));
  const Spectrum post = spectral_decompose(build_model(post_quench_model(spec)));
  const int n = spec.model.n_sites;
  const double m = spec.bosons;

  QuenchResult out;
  out.degenerate_ground = g.degenerate;
  out.times = spec.time.times();
  out.occupations.resize(static_cast<Eigen::Index>(out.times.size()), n);
  for (std::size_t i = 0; i < out.times.size(); ++i) {
    const ModeAmplitudes c = evolve_mode(post, g.mode, out.times[i]);
    out.occupations.row(static_cast<Eigen::Index>(i)) = m * c.coefficients.cwiseAbs2().transpose();
  }

  const MpsOptions opts = options_for(spec);
  for (double t : spec.snapshots) {
    const ModeAmplitudes c = evolve_mode(post, g.mode, t);
    const BlockDecimationState state = build_condensate_state(c, spec.bosons, opts);
    SnapshotCheck s;
    s.time = t;
    s.closed_form = m * c.coefficients.cwiseAbs2();
    s.mps = state.occupations();
    s.max_deviation = (s.closed_form - s.mps).cwiseAbs().maxCoeff();
    s.discarded_weight = state.discarded_weight();
    out.snapshots.push_back(std::move(s));
  }
  return out;
}

SweepRecord collision_point(const ScenarioSpec& spec, double mu_over_n) {
  const auto start = std::chrono::steady_clock::now();
  const int n = spec.model.n_sites;
  const double mu = mu_over_n * n;
  ModelSpec model = spec.model;
  model.barriers.push_back(Barrier{n / 2, n / 2 + 1, mu});
  const PropagatorMatrix a = propagate(spectral_decompose(build_model(model)), spec.evolution_time);

  const int half = spec.bosons / 2;
  const auto packets = packet_modes({{1, half}, {n, half}}, a);
  const TwoSumPlan plan = fold_two(packets[0].mode, packets[1].mode, half, half);
  const BlockDecimationState state = build_two_sum_state(plan, options_for(spec));

  SweepRecord r;
  r.mu = mu;
  r.mu_over_n = mu_over_n;
  r.entanglement_bits = logneg_partial_transpose(state.reduced_density_two_sites(1, n)).value;
  r.collection_fraction = collection_fraction(state.occupations(), spec.bosons);
  r.discarded_weight = state.discarded_weight();
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<SweepRecord> run_collision_sweep(const ScenarioSpec& spec, int threads) {
  validate(spec);
  const std::size_t count = spec.mu_over_n.size();
  std::vector<SweepRecord> out(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        out[i] = collision_point(spec, spec.mu_over_n[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int pool = std::clamp(threads, 1, static_cast<int>(std::max<std::size_t>(count, 1)));
  if (pool == 1) {
    worker();
  } else {
    std::vector<std::jthread> workers;
    for (int i = 0; i < pool; ++i) workers.emplace_back(worker);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

GroundSummary run_ground_state(const ScenarioSpec& spec) {
  validate(spec);
  const GroundMode g = ground_mode(spectral_decompose(build_model(spec.model)));
  const BlockDecimationState state = build_condensate_state(g.mode, spec.bosons, options_for(spec));
  GroundSummary s;
  s.energy = g.energy;
  s.degenerate = g.degenerate;
  s.mode = g.mode;
  s.occupations = state.occupations();
  for (int b = 1; b < spec.model.n_sites; ++b) s.schmidt.push_back(state.schmidt_values(b));
  s.discarded_weight = state.discarded_weight();
  return s;
}

void write_occupations_csv(std::ostream& os, const std::vector<double>& times,
                           const Eigen::MatrixXd& occupations) {
  os << "t,site,n\n";
  for (std::size_t i = 0; i < times.size(); ++i)
    for (Eigen::Index k = 0; k < occupations.cols(); ++k)
      os << format_double(times[i]) << ',' << k + 1 << ','
         << format_double(occupations(static_cast<Eigen::Index>(i), k)) << '\n';
}

void write_snapshots_csv(std::ostream& os, const std::vector<SnapshotCheck>& snapshots) {
  os << "t,site,closed_form,mps\n";
  for (const auto& s : snapshots)
    for (Eigen::Index k = 0; k < s.mps.size(); ++k)
      os << format_double(s.time) << ',' << k + 1 << ',' << format_double(s.closed_form(k)) << ','
         << format_double(s.mps(k)) << '\n';
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
  os << "mu,mu_over_N,E_N_bits,collection_fraction,discarded_weight\n";
  for (const auto& r : records)
    os << format_double(r.mu) << ',' << format_double(r.mu_over_n) << ',' << format_double(r.entanglement_bits)
       << ',' << format_double(r.collection_fraction) << ',' << format_double(r.discarded_weight) << '\n';
}

void write_schmidt_csv(std::ostream& os, const std::vector<Eigen::VectorXd>& schmidt) {
  os << "bond,index,lambda\n";
  for (std::size_t b = 0; b < schmidt.size(); ++b)
    for (Eigen::Index i = 0; i < schmidt[b].size(); ++i)
      os << b + 1 << ',' << i + 1 << ',' << format_double(schmidt[b](i)) << '\n';
}

}  // namespace bosefold::cli
