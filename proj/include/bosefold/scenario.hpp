#pragma once

#include "bosefold/model.hpp"
#include "bosefold/mps.hpp"

#include <Eigen/Dense>

#include <filesystem>
#include <iosfwd>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace bosefold::cli {

enum class ScenarioKind { QuenchRelease, QuenchRaise, CollisionSweep, GroundState, TransferReport };

const char* to_string(ScenarioKind kind);

/// Times t_start + i (t_end - t_start) / steps for i = 0..steps.
struct TimeGrid {
  double t_start = 0.0;
  double t_end = 0.0;
  int steps = 1;

  std::vector<double> times() const;
  bool operator==(const TimeGrid&) const = default;
};

struct OutputFiles {
  std::string occupations = "occupations.csv";
  std::string sweep = "sweep.csv";
  std::string schmidt = "schmidt.csv";
  std::string transfer = "transfer.csv";
  std::string snapshots = "snapshots.csv";
  bool operator==(const OutputFiles&) const = default;
};

struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::GroundState;
  ModelSpec model;
  /// Barriers switched off (quench_release) or on (quench_raise) at t = 0.
  std::vector<Barrier> quench_barriers;
  int bosons = 0;
  TimeGrid time;
  std::vector<double> snapshots;
  std::vector<double> mu_over_n;
  double evolution_time = std::numbers::pi;
  double epsilon = 1e-3;
  double beta = 2.0;
  MpsOptions numerics;
  OutputFiles outputs;

  bool operator==(const ScenarioSpec& o) const;
};

ModelSpec pre_quench_model(const ScenarioSpec& spec);
ModelSpec post_quench_model(const ScenarioSpec& spec);

class ConfigError : public std::runtime_error {
 public:
  enum class Kind { Syntax, UnknownKey, Constraint };

  ConfigError(Kind kind, const std::string& where, int line, const std::string& message);

  Kind kind() const { return kind_; }
  int line() const { return line_; }

 private:
  Kind kind_;
  int line_;
};

ScenarioSpec parse_config(const std::filesystem::path& path);
/// `origin` names the source in error messages; relative custom-matrix paths resolve against base_dir.
ScenarioSpec parse_config_text(const std::string& text, const std::string& origin = "<config>",
                               const std::filesystem::path& base_dir = {});
std::string serialize_config(const ScenarioSpec& spec);

/// Checks cross-field constraints; throws ConfigError(Constraint) with line 0.
void validate(const ScenarioSpec& spec);

// --- runners --------------------------------------------------------------------

struct SnapshotCheck {
  double time = 0.0;
  Eigen::VectorXd closed_form;
  Eigen::VectorXd mps;
  double max_deviation = 0.0;
  double discarded_weight = 0.0;
};

struct QuenchResult {
  std::vector<double> times;
  Eigen::MatrixXd occupations;  // times x sites
  std::vector<SnapshotCheck> snapshots;
  bool degenerate_ground = false;
};

struct SweepRecord {
  double mu = 0.0;
  double mu_over_n = 0.0;
  double entanglement_bits = 0.0;
  double collection_fraction = 0.0;
  double discarded_weight = 0.0;
  double wall_time = 0.0;
};

struct GroundSummary {
  double energy = 0.0;
  bool degenerate = false;
  ModeAmplitudes mode;
  Eigen::VectorXd occupations;
  std::vector<Eigen::VectorXd> schmidt;  // bonds 1..N-1
  double discarded_weight = 0.0;
};

QuenchResult run_quench(const ScenarioSpec& spec);
std::vector<SweepRecord> run_collision_sweep(const ScenarioSpec& spec, int threads = 1);
GroundSummary run_ground_state(const ScenarioSpec& spec);

/// One sweep point: two packets of M/2 bosons from the chain ends, barrier mu on the
/// two central sites, evolved for spec.evolution_time.
SweepRecord collision_point(const ScenarioSpec& spec, double mu_over_n);

void write_occupations_csv(std::ostream& os, const std::vector<double>& times,
                           const Eigen::MatrixXd& occupations);
void write_snapshots_csv(std::ostream& os, const std::vector<SnapshotCheck>& snapshots);
void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records);
void write_schmidt_csv(std::ostream& os, const std::vector<Eigen::VectorXd>& schmidt);

// --- selftest ---------------------------------------------------------------------

struct SelftestLine {
  std::string name;
  bool passed = false;
  double deviation = 0.0;
  double tolerance = 0.0;
};

/// Small-size oracle-equivalence checks against the dense Fock-space reference.
std::vector<SelftestLine> run_selftest(unsigned seed = 12345);

}  // namespace bosefold::cli
