// brwsim command line: simulate single trajectories, run full experiments,
// validate the growth regression, cross-check the engine against the ODE
// oracle, and re-render SVG reports from existing CSV artifacts.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "brw/config.hpp"
#include "brw/csv.hpp"
#include "brw/engine.hpp"
#include "brw/extrapolate.hpp"
#include "brw/registry.hpp"
#include "brw/report.hpp"
#include "brw/runner.hpp"

namespace {

using namespace brw;

// One machine-readable line on stderr, nonzero exit.
int fail(const std::string& key, const std::string& message) {
  nlohmann::json j;
  j["error"] = message;
  if (!key.empty()) j["key"] = key;
  std::cerr << "error: " << j.dump() << '\n';
  return 1;
}

struct CommonOpts {
  std::optional<int> model;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> m;
  std::optional<int> m1;
  std::optional<double> tmax;
  std::optional<int> workers;
  std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_counts = true,
                bool with_out = true) {
  cmd->add_option("--model", o.model, "built-in model id (1..10)");
  cmd->add_option("--config", o.config_path, "JSON config file");
  cmd->add_option("--seed", o.seed, "master seed");
  if (with_counts) {
    cmd->add_option("--m", o.m, "trajectories per medium");
    cmd->add_option("--m1", o.m1, "number of medium realizations");
  }
  cmd->add_option("--tmax", o.tmax, "simulation horizon");
  cmd->add_option("--workers", o.workers, "worker threads (0 = auto)");
  if (with_out) cmd->add_option("--out", o.out, "output directory");
}

ExperimentConfig build_config(const CommonOpts& o) {
  ExperimentConfig cfg;
  if (!o.config_path.empty()) {
    cfg = load_config(o.config_path);
  } else if (o.model) {
    try {
      model_registry(*o.model);
    } catch (const std::domain_error& e) {
      throw ConfigError("model", e.what());
    }
    cfg.model_id = *o.model;
  } else {
    throw ConfigError("model", "either --model or --config is required");
  }
  if (o.model && !o.config_path.empty())
    throw ConfigError("model", "--model and --config are mutually exclusive");
  if (o.seed) cfg.master_seed = *o.seed;
  if (o.m) cfg.replicates = *o.m;
  if (o.m1) cfg.media_count = *o.m1;
  if (o.tmax) cfg.engine.t_max = *o.tmax;
  if (o.workers) cfg.workers = *o.workers;
  if (!o.out.empty()) cfg.output_dir = o.out;
  cfg.resolve();
  return cfg;
}

const char* event_name(EventKind k) {
  switch (k) {
    case EventKind::Jump: return "jump";
    case EventKind::Split: return "split";
    case EventKind::Die: return "die";
  }
  return "?";
}

const char* status_name(TrajectoryStatus s) {
  switch (s) {
    case TrajectoryStatus::Extinct: return "extinct";
    case TrajectoryStatus::ReachedHorizon: return "reached_horizon";
    case TrajectoryStatus::Capped: return "capped";
    case TrajectoryStatus::BoundaryExit: return "boundary_exit";
  }
  return "?";
}

void export_trajectory(const Trajectory& traj, const LatticeWindow& w,
                       const std::filesystem::path& path) {
  csv::Writer out(path);
  std::vector<std::string> header = {"time", "event"};
  for (int a = 0; a < w.dimension(); ++a)
    header.push_back("x" + std::to_string(a));
  header.push_back("mu_after");
  out.header(header);
  std::int64_t mu = 1;
  for (const Event& ev : traj.events) {
    if (ev.kind == EventKind::Split) ++mu;
    if (ev.kind == EventKind::Die) --mu;
    out.field(ev.time).field(std::string(event_name(ev.kind)));
    for (std::int32_t c : w.unindex(ev.site)) out.field(std::int64_t{c});
    out.field(mu);
    out.end_row();
  }
}

void export_medium(const MediumRealization& medium,
                   const std::filesystem::path& path) {
  csv::Writer out(path);
  const LatticeWindow& w = medium.window();
  std::vector<std::string> header = {"point_index"};
  for (int a = 0; a < w.dimension(); ++a)
    header.push_back("x" + std::to_string(a));
  header.push_back("xi_plus");
  header.push_back("xi_minus");
  out.header(header);
  auto row = [&](std::int64_t idx) {
    const auto [xp, xm] = medium.rates_at(idx);
    out.field(idx);
    for (std::int32_t c : w.unindex(idx)) out.field(std::int64_t{c});
    out.field(xp).field(xm);
    out.end_row();
  };
  if (medium.every_point())
    for (std::int64_t i = 0; i < w.size(); ++i) row(i);
  else
    for (std::int64_t i : medium.finite_source_indices()) row(i);
}

int cmd_simulate(const CommonOpts& o, int medium_index, int replicate_index,
                 const std::string& traj_out, const std::string& medium_out) {
  ExperimentConfig cfg = build_config(o);
  const LatticeWindow w(cfg.dimension, cfg.lattice_side, cfg.boundary_policy);
  const SeedPair seeds =
      derive_seeds(cfg.master_seed, medium_index, replicate_index);
  const MediumRealization medium =
      sample_medium(cfg.medium, seeds.medium_seed, w);
  const LatticePoint origin(static_cast<std::size_t>(w.dimension()), 0);
  const Trajectory traj =
      simulate(medium, cfg.engine, w, origin, seeds.replicate_seed);

  std::printf("status=%s events=%zu final_mu=%d", status_name(traj.status),
              traj.events.size(), traj.final_mu());
  if (traj.t_100) std::printf(" t_100=%.6g", *traj.t_100);
  if (traj.t_stop) std::printf(" t_stop=%.6g", *traj.t_stop);
  std::printf("\n");

  if (!traj_out.empty()) export_trajectory(traj, w, traj_out);
  if (!medium_out.empty()) export_medium(medium, medium_out);
  return 0;
}

int cmd_run(const CommonOpts& o, bool full_scale) {
  ExperimentConfig cfg = build_config(o);
  if (full_scale) {
    if (!o.m) cfg.replicates = 1000;
    if (!o.m1) cfg.media_count = 250;
  }
  const ExperimentResult result = run_experiment(cfg);
  const RunManifest& m = result.manifest;
  std::printf(
      "wrote %s: %lld trajectories, %lld events, %.1fs "
      "(capped=%lld extinct=%lld horizon=%lld boundary_exits=%lld)\n",
      m.output_dir.string().c_str(),
      static_cast<long long>(m.total_trajectories),
      static_cast<long long>(m.total_events), m.wall_seconds,
      static_cast<long long>(m.counts.capped),
      static_cast<long long>(m.counts.extinct),
      static_cast<long long>(m.counts.reached_horizon),
      static_cast<long long>(m.counts.boundary_exits));
  return 0;
}

int cmd_validate_regression(int n_traj, std::uint64_t seed, int workers,
                            double grid_dt, const std::string& out) {
  MediumSpec spec;
  spec.sources = SourceConfiguration::every_point();
  spec.split_law = IntensityLaw::constant(2.0);
  spec.death_law = IntensityLaw::constant(1.0);
  EngineParams params;  // kappa 1, t_max 10, cap 1000
  const LatticeWindow w(1, 100, BoundaryPolicy::Error);
  const ValidationReport rep =
      validate_regression(spec, n_traj, params, w, grid_dt, seed, workers);
  std::printf(
      "n=%d capped=%d mean_r2=%.6f min_r2=%.6f mean_abs_err=%.4f "
      "max_abs_err=%.4f\n",
      rep.n_trajectories, rep.n_capped, rep.mean_r2, rep.min_r2,
      rep.mean_abs_err, rep.max_abs_err);
  if (!out.empty()) {
    csv::Writer wtr(out);
    wtr.header({"n_trajectories", "n_capped", "mean_r2", "min_r2",
                "mean_abs_err", "max_abs_err"});
    wtr.field(rep.n_trajectories)
        .field(rep.n_capped)
        .field(rep.mean_r2)
        .field(rep.min_r2)
        .field(rep.mean_abs_err)
        .field(rep.max_abs_err);
    wtr.end_row();
  }
  return 0;
}

int cmd_oracle(const CommonOpts& o, int replicates, const std::string& times,
               std::optional<double> oracle_dt, std::optional<int> oracle_side,
               const std::string& out) {
  ExperimentConfig cfg = build_config(o);
  if (oracle_dt) cfg.oracle_dt = *oracle_dt;
  if (oracle_side) cfg.oracle_window_side = *oracle_side;
  std::vector<double> probes;
  {
    std::stringstream ss(times);
    std::string tok;
    while (std::getline(ss, tok, ',')) probes.push_back(std::stod(tok));
  }
  const LatticeWindow w(cfg.dimension, cfg.lattice_side, cfg.boundary_policy);
  const SeedPair seeds = derive_seeds(cfg.master_seed, 0, 0);
  const MediumRealization medium =
      sample_medium(cfg.medium, seeds.medium_seed, w);
  EngineParams params = cfg.engine;
  params.t_max = *std::max_element(probes.begin(), probes.end());
  const OracleComparison cmp = compare_engine_oracle(
      medium, params, w, probes, replicates, cfg.fit_grid_dt, cfg.oracle_dt,
      cfg.oracle_window_side, cfg.master_seed, cfg.effective_workers());
  std::printf("t,engine_mean,engine_sem,oracle_m1,abs_z\n");
  for (std::size_t i = 0; i < cmp.times.size(); ++i) {
    const double z = cmp.engine_sem[i] > 0.0
                         ? std::fabs(cmp.engine_mean[i] - cmp.oracle_m1[i]) /
                               cmp.engine_sem[i]
                         : 0.0;
    std::printf("%g,%.12g,%.12g,%.12g,%.4f\n", cmp.times[i],
                cmp.engine_mean[i], cmp.engine_sem[i], cmp.oracle_m1[i], z);
  }
  if (!out.empty()) {
    csv::Writer wtr(out);
    wtr.header({"t", "engine_mean", "engine_sem", "oracle_m1", "abs_z"});
    for (std::size_t i = 0; i < cmp.times.size(); ++i) {
      const double z = cmp.engine_sem[i] > 0.0
                           ? std::fabs(cmp.engine_mean[i] - cmp.oracle_m1[i]) /
                                 cmp.engine_sem[i]
                           : 0.0;
      wtr.field(cmp.times[i])
          .field(cmp.engine_mean[i])
          .field(cmp.engine_sem[i])
          .field(cmp.oracle_m1[i])
          .field(z);
      wtr.end_row();
    }
  }
  std::printf("max_abs_z=%.4f\n", cmp.max_abs_z());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"branching random walk simulator and analysis toolkit"};
  app.require_subcommand(1);

  CommonOpts sim_opts;
  int medium_index = 0, replicate_index = 0;
  std::string traj_out, medium_out;
  CLI::App* sim = app.add_subcommand(
      "simulate", "simulate one trajectory and export its event list");
  add_common(sim, sim_opts, false, false);
  sim->add_option("--medium-index", medium_index, "medium index k");
  sim->add_option("--replicate-index", replicate_index, "replicate index i");
  sim->add_option("--traj-out", traj_out, "trajectory CSV path");
  sim->add_option("--export-medium", medium_out, "medium realization CSV path");

  CommonOpts run_opts;
  bool full_scale = false;
  CLI::App* run = app.add_subcommand("run", "run a full experiment");
  add_common(run, run_opts);
  run->add_flag("--full-scale", full_scale,
                "reference counts M=1000, M1=250 instead of desk scale");

  int vr_n = 5000;
  std::uint64_t vr_seed = 1;
  int vr_workers = 0;
  double vr_grid_dt = 0.05;
  std::string vr_out;
  CLI::App* vr = app.add_subcommand(
      "validate-regression",
      "regression-quality protocol on the constant (2,1) homogeneous medium");
  vr->add_option("--n", vr_n, "number of trajectories");
  vr->add_option("--seed", vr_seed, "master seed");
  vr->add_option("--workers", vr_workers, "worker threads (0 = auto)");
  vr->add_option("--grid-dt", vr_grid_dt, "regression sampling step");
  vr->add_option("--out", vr_out, "CSV output path");

  CommonOpts or_opts;
  int or_m = 1000;
  std::string or_times = "1,2,5";
  std::optional<double> or_dt;
  std::optional<int> or_side;
  std::string or_out;
  CLI::App* orc = app.add_subcommand(
      "oracle", "compare engine means against the integrated first moment");
  add_common(orc, or_opts, false, false);
  orc->add_option("--m", or_m, "replicates for the Monte Carlo side");
  orc->add_option("--times", or_times, "comma-separated probe times");
  orc->add_option("--oracle-dt", or_dt, "RK4 step");
  orc->add_option("--oracle-side", or_side, "oracle window side");
  orc->add_option("--out", or_out, "comparison CSV path");

  std::string rep_dir = "out";
  double rep_trim = 0.01;
  CLI::App* rep = app.add_subcommand(
      "report", "re-render SVG figures from existing CSV artifacts");
  rep->add_option("--out", rep_dir, "directory holding the CSV artifacts");
  rep->add_option("--trim", rep_trim, "trim fraction used for bar figures");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed())
      return cmd_simulate(sim_opts, medium_index, replicate_index, traj_out,
                          medium_out);
    if (run->parsed()) return cmd_run(run_opts, full_scale);
    if (vr->parsed())
      return cmd_validate_regression(vr_n, vr_seed, vr_workers, vr_grid_dt,
                                     vr_out);
    if (orc->parsed())
      return cmd_oracle(or_opts, or_m, or_times, or_dt, or_side, or_out);
    if (rep->parsed()) {
      render_reports(rep_dir, rep_trim);
      std::printf("re-rendered SVG figures in %s\n", rep_dir.c_str());
      return 0;
    }
  } catch (const ConfigError& e) {
    return fail(e.key, e.what());
  } catch (const std::exception& e) {
    return fail("", e.what());
  }
  return fail("", "no subcommand given");
}
