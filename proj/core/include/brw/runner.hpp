#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "brw/engine.hpp"
#include "brw/lattice.hpp"
#include "brw/medium.hpp"
#include "brw/stats.hpp"

namespace brw {

inline constexpr const char* kVersion = "0.1.0";
// Seed derivation rule identifier recorded in every manifest; bump when the
// mixing scheme changes.
inline constexpr const char* kSeedRule = "splitmix64-combine-v1";

struct SeedPair {
  std::uint64_t medium_seed;
  std::uint64_t replicate_seed;
};

// Collision-resistant mixing of (master, medium k, replicate i); independent
// of execution order, identical across platforms and processes.
SeedPair derive_seeds(std::uint64_t master_seed, std::int64_t medium_index,
                      std::int64_t replicate_index);

struct ExperimentConfig {
  std::optional<int> model_id;  // registry id 1..10; otherwise inline medium
  int dimension = 1;
  MediumSpec medium;

  int lattice_side = 100;
  BoundaryPolicy boundary_policy = BoundaryPolicy::Error;
  EngineParams engine;

  int replicates = 200;   // M: trajectories per medium
  int media_count = 50;   // M1: medium realizations (or repetitions)
  std::vector<double> snapshot_times = {2.5, 10.0};
  std::uint64_t master_seed = 1;
  int workers = 0;  // 0 = hardware concurrency
  std::filesystem::path output_dir = "out";

  double report_grid_dt = 0.1;
  double fit_grid_dt = 0.05;
  double trim_fraction = 0.01;
  std::vector<int> powers = {1, 2};
  std::vector<int> orders = {1, 2};
  double lyapunov_beta = 1.0;
  double lyapunov_window_fraction = 0.3;
  double oracle_dt = 1e-3;
  int oracle_window_side = 101;

  // Applies the model registry (if model_id is set) and validates.
  void resolve();
  bool medium_is_random() const { return medium.is_random(); }
  int effective_workers() const;
};

struct RunCounts {
  std::int64_t capped = 0;
  std::int64_t extinct = 0;
  std::int64_t reached_horizon = 0;
  std::int64_t boundary_exits = 0;  // excluded from moment estimates
  std::int64_t boundary_kills = 0;  // KillWithFlag deaths at the rim
};

struct RunManifest {
  std::string version;
  std::string seed_rule;
  std::uint64_t master_seed = 0;
  std::vector<std::uint64_t> medium_seeds;
  RunCounts counts;
  std::int64_t total_trajectories = 0;
  std::int64_t total_events = 0;
  double wall_seconds = 0.0;
  std::filesystem::path output_dir;
};

struct ExperimentResult {
  RunManifest manifest;
  std::vector<MomentCurve> m1_per_medium;  // order-1 quenched curves
  std::vector<MomentCurve> m2_per_medium;  // order-2 quenched curves
  AnnealedSummary annealed;                // n=1 over the medium ensemble
  std::vector<double> lyapunov_ratios;     // one per configured power
};

// Full experiment: media x replicates, quenched and annealed estimation,
// CSV artifacts, SVG report, manifest.json. Output bytes are a pure
// function of (config, master_seed), whatever the worker count.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Engine-vs-ODE comparison for one medium realization: Monte Carlo mean of
// mu(t) against the integrated first moment, with standard errors.
struct OracleComparison {
  std::vector<double> times;
  std::vector<double> engine_mean;
  std::vector<double> engine_sem;
  std::vector<double> oracle_m1;

  double max_abs_z() const;
};

OracleComparison compare_engine_oracle(
    const MediumRealization& medium, const EngineParams& params,
    const LatticeWindow& engine_window, const std::vector<double>& probe_times,
    int replicates, double fit_grid_dt, double oracle_dt, int oracle_side,
    std::uint64_t seed, int workers);

}  // namespace brw
