// bosefold command-line driver.

#include "bosefold/errors.hpp"
#include "bosefold/folding.hpp"
#include "bosefold/format.hpp"
#include "bosefold/heisenberg.hpp"
#include "bosefold/perturbation.hpp"
#include "bosefold/scenario.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace bosefold;

namespace {

enum ExitCode { kOk = 0, kConfig = 2, kNumeric = 3, kIo = 4 };

struct Options {
  std::string config;
  std::string out_dir = ".";
  std::string dump_plan;
  int threads = 1;
  bool verbose = false;
};

template <class F>
void write_file(const fs::path& path, F&& body) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write '" + path.string() + "'");
  body(os);
  if (!os) throw IoError("write failed for '" + path.string() + "'");
}

void dump_plan(const Options& opt, const FoldPlan& plan) {
  if (opt.dump_plan.empty()) return;
  write_file(opt.dump_plan, [&](std::ostream& os) { write_plan(os, plan); });
}

cli::ScenarioSpec load(const Options& opt, std::initializer_list<cli::ScenarioKind> allowed) {
  cli::ScenarioSpec spec = cli::parse_config(opt.config);
  for (auto k : allowed)
    if (spec.kind == k) return spec;
  throw cli::ConfigError(cli::ConfigError::Kind::Constraint, opt.config, 0,
                         std::string("scenario kind '") + cli::to_string(spec.kind) +
                             "' does not match this subcommand");
}

int run_quench(const Options& opt) {
  const auto spec = load(opt, {cli::ScenarioKind::QuenchRelease, cli::ScenarioKind::QuenchRaise});
  const auto result = cli::run_quench(spec);
  if (result.degenerate_ground) std::cerr << "warning: pre-quench ground level is degenerate\n";
  dump_plan(opt, fold_single(ground_mode(spectral_decompose(build_model(cli::pre_quench_model(spec)))).mode));
  const fs::path dir(opt.out_dir);
  write_file(dir / spec.outputs.occupations,
             [&](std::ostream& os) { cli::write_occupations_csv(os, result.times, result.occupations); });
  if (!result.snapshots.empty())
    write_file(dir / spec.outputs.snapshots, [&](std::ostream& os) { cli::write_snapshots_csv(os, result.snapshots); });
  if (opt.verbose)
    for (const auto& s : result.snapshots)
      std::cerr << "snapshot t=" << format_double(s.time) << " max |mps - closed form| = "
                << format_double(s.max_deviation) << '\n';
  return kOk;
}

int run_sweep(const Options& opt) {
  const auto spec = load(opt, {cli::ScenarioKind::CollisionSweep});
  const auto records = cli::run_collision_sweep(spec, opt.threads);
  if (!opt.dump_plan.empty()) {
    // plan for the first sweep point's first packet
    const int n = spec.model.n_sites;
    ModelSpec model = spec.model;
    model.barriers.push_back(Barrier{n / 2, n / 2 + 1, spec.mu_over_n.front() * n});
    const auto a = propagate(spectral_decompose(build_model(model)), spec.evolution_time);
    dump_plan(opt, fold_single(packet_modes({{1, 1}}, a).front().mode));
  }
  write_file(fs::path(opt.out_dir) / spec.outputs.sweep, [&](std::ostream& os) { cli::write_sweep_csv(os, records); });
  if (opt.verbose)
    for (const auto& r : records)
      std::cerr << "mu/N=" << format_double(r.mu_over_n) << " E_N=" << format_double(r.entanglement_bits)
                << " fraction=" << format_double(r.collection_fraction) << " (" << r.wall_time << " s)\n";
  return kOk;
}

int run_ground(const Options& opt) {
  const auto spec = load(opt, {cli::ScenarioKind::GroundState});
  const auto summary = cli::run_ground_state(spec);
  if (summary.degenerate) std::cerr << "warning: ground level is degenerate\n";
  dump_plan(opt, fold_single(summary.mode));
  const fs::path dir(opt.out_dir);
  Eigen::MatrixXd occ = summary.occupations.transpose();
  write_file(dir / spec.outputs.occupations, [&](std::ostream& os) { cli::write_occupations_csv(os, {0.0}, occ); });
  write_file(dir / spec.outputs.schmidt, [&](std::ostream& os) { cli::write_schmidt_csv(os, summary.schmidt); });
  if (opt.verbose)
    std::cerr << "energy=" << format_double(summary.energy)
              << " discarded_weight=" << format_double(summary.discarded_weight) << '\n';
  return kOk;
}

int run_transfer(const Options& opt) {
  const auto spec = load(opt, {cli::ScenarioKind::TransferReport});
  const auto report = make_transfer_report(spec.model.n_sites, spec.epsilon, spec.beta);
  write_file(fs::path(opt.out_dir) / spec.outputs.transfer,
             [&](std::ostream& os) { write_transfer_csv(os, report); });
  if (opt.verbose && !report.closed_form.in_regime)
    std::cerr << "note: beta is outside the closed-form series regime\n";
  return kOk;
}

int run_selftest() {
  bool ok = true;
  for (const auto& line : cli::run_selftest()) {
    std::cout << (line.passed ? "PASS " : "FAIL ") << line.name << " deviation=" << format_double(line.deviation)
              << " tol=" << format_double(line.tolerance) << '\n';
    ok = ok && line.passed;
  }
  return ok ? kOk : kNumeric;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact boson-chain states in block-decimation form"};
  app.require_subcommand(1);
  Options opt;
  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", opt.config, "scenario config file");
    if (needs_config) c->required();
    sub->add_option("--out-dir", opt.out_dir, "directory for CSV outputs");
    sub->add_option("--dump-plan", opt.dump_plan, "write the fold plan to this file");
    sub->add_option("--threads", opt.threads, "worker threads for sweeps")->check(CLI::PositiveNumber);
    sub->add_flag("--verbose", opt.verbose, "progress on stderr");
  };
  auto* quench = app.add_subcommand("quench", "barrier quench time series");
  auto* sweep = app.add_subcommand("sweep", "collision sweep over the barrier height");
  auto* ground = app.add_subcommand("ground", "ground-state occupations and Schmidt spectra");
  auto* transfer = app.add_subcommand("transfer", "perturbed state-transfer report");
  auto* selftest = app.add_subcommand("selftest", "oracle-equivalence checks");
  for (auto* s : {quench, sweep, ground, transfer}) add_common(s, true);
  add_common(selftest, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*selftest) return run_selftest();
    if (!opt.out_dir.empty() && !fs::exists(opt.out_dir)) {
      std::error_code ec;
      fs::create_directories(opt.out_dir, ec);
      if (ec) throw IoError("cannot create '" + opt.out_dir + "': " + ec.message());
    }
    if (*quench) return run_quench(opt);
    if (*sweep) return run_sweep(opt);
    if (*ground) return run_ground(opt);
    return run_transfer(opt);
  } catch (const cli::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return kConfig;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kNumeric;
  }
}
