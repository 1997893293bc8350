#include "brw/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <thread>

#include <json.hpp>

#include "brw/config.hpp"
#include "brw/csv.hpp"
#include "brw/oracle.hpp"
#include "brw/parallel.hpp"
#include "brw/registry.hpp"
#include "brw/report.hpp"
#include "brw/rng.hpp"
#include "brw/shapiro_wilk.hpp"

namespace brw {

namespace {
constexpr std::uint64_t kMediumTag = 0x6d656469756dULL;     // "medium"
constexpr std::uint64_t kReplicateTag = 0x7265706cULL;      // "repl"
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}  // namespace

SeedPair derive_seeds(std::uint64_t master_seed, std::int64_t medium_index,
                      std::int64_t replicate_index) {
  SeedPair out;
  out.medium_seed = rng::combine(
      master_seed,
      rng::combine(kMediumTag, static_cast<std::uint64_t>(medium_index)));
  out.replicate_seed = rng::combine(
      out.medium_seed,
      rng::combine(kReplicateTag, static_cast<std::uint64_t>(replicate_index)));
  return out;
}

void ExperimentConfig::resolve() {
  if (model_id) {
    const ModelDefinition def = model_registry(*model_id);
    dimension = def.dimension;
    medium = def.medium;
  }
  engine.validate();
  if (replicates < 1) throw std::invalid_argument("m must be >= 1");
  if (media_count < 1) throw std::invalid_argument("m1 must be >= 1");
  if (!(report_grid_dt > 0.0) || !(fit_grid_dt > 0.0))
    throw std::invalid_argument("grid steps must be positive");
  if (trim_fraction < 0.0 || trim_fraction >= 1.0)
    throw std::invalid_argument("trim_fraction must lie in [0,1)");
  if (powers.empty() || powers.front() != 1)
    throw std::invalid_argument("stats.powers must start with 1");
  if (orders.empty() || orders.front() != 1)
    throw std::invalid_argument("stats.orders must start with 1");
  if (!(lyapunov_window_fraction > 0.0) || lyapunov_window_fraction > 1.0)
    throw std::invalid_argument("lyapunov_window_fraction must be in (0,1]");

  const std::vector<double> grid = uniform_grid(engine.t_max, report_grid_dt);
  for (double s : snapshot_times) {
    bool on_grid = false;
    for (double t : grid) on_grid |= std::fabs(t - s) <= 1e-9;
    if (!on_grid)
      throw std::invalid_argument(
          "snapshot_times must lie on the report grid (multiples of "
          "report.grid_dt within [0, t_max])");
  }
}

int ExperimentConfig::effective_workers() const {
  if (workers > 0) return workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

struct MediumOutcome {
  std::uint64_t medium_seed = 0;
  std::vector<MomentCurve> curves;  // one per configured order
  RunCounts counts;
  std::int64_t events = 0;
};

// Fits a capped trajectory, shrinking the sampling step if the observation
// window is too short for two grid points.
RegressionFit fit_with_retry(const Trajectory& traj, double grid_dt) {
  for (int attempt = 0; attempt < 6; ++attempt) {
    try {
      return fit_growth(traj, grid_dt);
    } catch (const FitUnavailable&) {
      grid_dt /= 10.0;
    }
  }
  return fit_growth(traj, grid_dt);
}

MediumOutcome run_medium(const ExperimentConfig& cfg, const LatticeWindow& w,
                         const std::vector<double>& grid,
                         std::int64_t medium_index) {
  MediumOutcome out;
  out.medium_seed = derive_seeds(cfg.master_seed, medium_index, 0).medium_seed;
  const MediumRealization medium =
      sample_medium(cfg.medium, out.medium_seed, w);
  const LatticePoint origin(static_cast<std::size_t>(w.dimension()), 0);

  std::vector<Trajectory> kept;
  std::vector<std::optional<RegressionFit>> fits;
  kept.reserve(static_cast<std::size_t>(cfg.replicates));
  fits.reserve(static_cast<std::size_t>(cfg.replicates));

  for (int i = 0; i < cfg.replicates; ++i) {
    const std::uint64_t seed =
        derive_seeds(cfg.master_seed, medium_index, i).replicate_seed;
    Trajectory traj = simulate(medium, cfg.engine, w, origin, seed);
    out.events += static_cast<std::int64_t>(traj.events.size());
    out.counts.boundary_kills += traj.boundary_kills;
    switch (traj.status) {
      case TrajectoryStatus::Capped: ++out.counts.capped; break;
      case TrajectoryStatus::Extinct: ++out.counts.extinct; break;
      case TrajectoryStatus::ReachedHorizon: ++out.counts.reached_horizon; break;
      case TrajectoryStatus::BoundaryExit: ++out.counts.boundary_exits; break;
    }
    if (traj.status == TrajectoryStatus::BoundaryExit) continue;
    std::optional<RegressionFit> fit;
    if (traj.status == TrajectoryStatus::Capped)
      fit = fit_with_retry(traj, cfg.fit_grid_dt);
    kept.push_back(std::move(traj));
    fits.push_back(fit);
  }

  if (kept.empty())
    throw std::runtime_error(
        "every trajectory of medium " + std::to_string(medium_index) +
        " exited the lattice window; enlarge lattice.side");

  for (int n : cfg.orders) {
    MomentCurve curve = quenched_moment(kept, fits, n, grid);
    curve.medium_id = static_cast<int>(medium_index);
    out.curves.push_back(std::move(curve));
  }
  return out;
}

void write_manifest(const ExperimentConfig& cfg, const RunManifest& manifest) {
  nlohmann::json j;
  j["version"] = manifest.version;
  j["seed_rule"] = manifest.seed_rule;
  j["master_seed"] = manifest.master_seed;
  j["config"] = config_to_json(cfg);
  j["medium_seeds"] = manifest.medium_seeds;
  j["replicate_seed_rule"] =
      "replicate_seed = combine(medium_seed, combine(0x7265706c, i)); "
      "medium_seed = combine(master_seed, combine(0x6d656469756d, k)); "
      "combine(a, b) = mix64(a ^ mix64(b)) with the splitmix64 finalizer";
  j["counts"] = {{"capped", manifest.counts.capped},
                 {"extinct", manifest.counts.extinct},
                 {"reached_horizon", manifest.counts.reached_horizon},
                 {"boundary_exits", manifest.counts.boundary_exits},
                 {"boundary_kills", manifest.counts.boundary_kills}};
  j["total_trajectories"] = manifest.total_trajectories;
  j["total_events"] = manifest.total_events;
  j["wall_seconds"] = manifest.wall_seconds;
  std::ofstream out(manifest.output_dir / "manifest.json", std::ios::binary);
  if (!out) throw std::runtime_error("cannot write manifest.json");
  out << j.dump(2) << '\n';
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& raw_cfg) {
  ExperimentConfig cfg = raw_cfg;
  cfg.resolve();
  const auto t_begin = std::chrono::steady_clock::now();

  const LatticeWindow window(cfg.dimension, cfg.lattice_side,
                             cfg.boundary_policy);
  const std::vector<double> grid =
      uniform_grid(cfg.engine.t_max, cfg.report_grid_dt);

  std::filesystem::create_directories(cfg.output_dir);

  std::vector<MediumOutcome> outcomes(
      static_cast<std::size_t>(cfg.media_count));
  parallel_for(cfg.media_count, cfg.effective_workers(), [&](std::int64_t k) {
    outcomes[static_cast<std::size_t>(k)] = run_medium(cfg, window, grid, k);
  });

  // Fixed-order aggregation: results are identical for any worker count.
  RunManifest manifest;
  manifest.version = kVersion;
  manifest.seed_rule = kSeedRule;
  manifest.master_seed = cfg.master_seed;
  manifest.output_dir = cfg.output_dir;
  manifest.total_trajectories =
      static_cast<std::int64_t>(cfg.media_count) * cfg.replicates;

  std::vector<MomentCurve> m1_curves, m2_curves;
  for (const MediumOutcome& oc : outcomes) {
    manifest.medium_seeds.push_back(oc.medium_seed);
    manifest.counts.capped += oc.counts.capped;
    manifest.counts.extinct += oc.counts.extinct;
    manifest.counts.reached_horizon += oc.counts.reached_horizon;
    manifest.counts.boundary_exits += oc.counts.boundary_exits;
    manifest.counts.boundary_kills += oc.counts.boundary_kills;
    manifest.total_events += oc.events;
    for (std::size_t oi = 0; oi < cfg.orders.size(); ++oi) {
      if (cfg.orders[oi] == 1) m1_curves.push_back(oc.curves[oi]);
      if (cfg.orders[oi] == 2) m2_curves.push_back(oc.curves[oi]);
    }
  }

  AnnealedSummary annealed(m1_curves, cfg.powers, cfg.trim_fraction);

  std::vector<double> lyap(cfg.powers.size(), kNaN);
  try {
    lyap = lyapunov_ratio_estimate(
        annealed, cfg.lyapunov_beta,
        cfg.engine.t_max * (1.0 - cfg.lyapunov_window_fraction),
        cfg.engine.t_max);
  } catch (const std::domain_error&) {
    // zero moments inside the tail window (e.g. tiny all-extinct runs)
  }

  const bool have_p2 =
      std::find(cfg.powers.begin(), cfg.powers.end(), 2) != cfg.powers.end();

  {
    csv::Writer w(cfg.output_dir / "moments.csv");
    w.header({"t", "medium_id", "n", "m_hat"});
    for (const MediumOutcome& oc : outcomes)
      for (std::size_t oi = 0; oi < cfg.orders.size(); ++oi)
        for (std::size_t j = 0; j < grid.size(); ++j) {
          w.field(grid[j])
              .field(*oc.curves[oi].medium_id)
              .field(cfg.orders[oi])
              .field(oc.curves[oi].values[j]);
          w.end_row();
        }
  }

  {
    csv::Writer w(cfg.output_dir / "annealed.csv");
    w.header({"t", "n", "p", "annealed", "trimmed", "R"});
    for (std::size_t j = 0; j < grid.size(); ++j)
      for (int p : cfg.powers) {
        const double mean = annealed.mean(p, grid[j]);
        double trimmed = kNaN, ratio = kNaN;
        if (annealed.trim_available()) {
          trimmed = annealed.mean_trimmed(p, grid[j]);
          if (trimmed > 0.0)
            ratio = std::exp(annealed.log_mean(p, grid[j]) -
                             annealed.log_mean_trimmed(p, grid[j]));
        }
        w.field(grid[j]).field(1).field(p).field(mean).field(trimmed).field(
            ratio);
        w.end_row();
      }
  }

  {
    csv::Writer w(cfg.output_dir / "diagnostics.csv");
    std::vector<std::string> header = {"t", "gap"};
    for (int p : cfg.powers)
      header.push_back("lyapunov_ratio_p" + std::to_string(p));
    w.header(header);
    for (std::size_t j = 0; j < grid.size(); ++j) {
      double gap = kNaN;
      if (have_p2) {
        try {
          gap = log_moment_gap(annealed, grid[j]);
        } catch (const std::domain_error&) {
        }
      }
      w.field(grid[j]).field(gap);
      for (double r : lyap) w.field(r);
      w.end_row();
    }
  }

  {
    csv::Writer w(cfg.output_dir / "normality.csv");
    w.header({"t", "W", "p_value"});
    for (double s : cfg.snapshot_times) {
      const int j = annealed.time_index(s);
      std::vector<double> values;
      values.reserve(m1_curves.size());
      for (const MomentCurve& c : m1_curves)
        values.push_back(c.values[static_cast<std::size_t>(j)]);
      double sw_w = kNaN, sw_p = kNaN;
      try {
        const ShapiroWilkResult r = shapiro_wilk(values);
        sw_w = r.w;
        sw_p = r.p_value;
      } catch (const std::domain_error&) {
        // degenerate or undersized sample; leave nan
      }
      w.field(s).field(sw_w).field(sw_p);
      w.end_row();
    }
  }

  {
    csv::Writer w(cfg.output_dir / "table2.csv");
    w.header({"model", "m1_tmax", "m1_tmax_trimmed", "R_tmax"});
    const double t_end = grid.back();
    double trimmed = kNaN, ratio = kNaN;
    if (annealed.trim_available()) {
      trimmed = annealed.mean_trimmed(1, t_end);
      try {
        ratio = intermittency_ratio(annealed, t_end);
      } catch (const RatioUndefined&) {
      }
    }
    w.field(cfg.model_id ? *cfg.model_id : 0)
        .field(annealed.mean(1, t_end))
        .field(trimmed)
        .field(ratio);
    w.end_row();
  }

  render_reports(cfg.output_dir, cfg.trim_fraction);

  manifest.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin)
          .count();
  write_manifest(cfg, manifest);

  ExperimentResult result{std::move(manifest), std::move(m1_curves),
                          std::move(m2_curves), std::move(annealed),
                          std::move(lyap)};
  return result;
}

double OracleComparison::max_abs_z() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double diff = std::fabs(engine_mean[i] - oracle_m1[i]);
    if (engine_sem[i] > 0.0)
      worst = std::max(worst, diff / engine_sem[i]);
    else if (diff > 1e-12)
      worst = std::numeric_limits<double>::infinity();
  }
  return worst;
}

OracleComparison compare_engine_oracle(
    const MediumRealization& medium, const EngineParams& params,
    const LatticeWindow& engine_window, const std::vector<double>& probe_times,
    int replicates, double fit_grid_dt, double oracle_dt, int oracle_side,
    std::uint64_t seed, int workers) {
  if (probe_times.empty())
    throw std::invalid_argument("probe_times must be nonempty");
  OracleComparison cmp;
  cmp.times = probe_times;

  const LatticePoint origin(static_cast<std::size_t>(engine_window.dimension()),
                            0);
  std::vector<std::vector<double>> samples(
      static_cast<std::size_t>(replicates));
  parallel_for(replicates, workers, [&](std::int64_t i) {
    const std::uint64_t s = rng::combine(seed, static_cast<std::uint64_t>(i));
    const Trajectory traj = simulate(medium, params, engine_window, origin, s);
    if (traj.status == TrajectoryStatus::BoundaryExit)
      throw std::runtime_error("boundary exit during oracle comparison");
    std::optional<RegressionFit> fit;
    if (traj.status == TrajectoryStatus::Capped)
      fit = fit_with_retry(traj, fit_grid_dt);
    auto& row = samples[static_cast<std::size_t>(i)];
    row.reserve(probe_times.size());
    for (double t : probe_times)
      row.push_back(trajectory_count_at(traj, fit, t));
  });

  for (std::size_t j = 0; j < probe_times.size(); ++j) {
    double sum = 0.0;
    for (const auto& row : samples) sum += row[j];
    const double mean = sum / static_cast<double>(replicates);
    double ss = 0.0;
    for (const auto& row : samples) {
      const double d = row[j] - mean;
      ss += d * d;
    }
    const double sd =
        replicates > 1 ? std::sqrt(ss / static_cast<double>(replicates - 1))
                       : 0.0;
    cmp.engine_mean.push_back(mean);
    cmp.engine_sem.push_back(sd / std::sqrt(static_cast<double>(replicates)));
  }

  // Independent route: integrate the first-moment equation.
  const LatticeWindow oracle_window(engine_window.dimension(), oracle_side,
                                    BoundaryPolicy::Error);
  const OperatorSpec op =
      make_operator_spec(medium, oracle_window, params.kappa);
  double vmax = 0.0;
  for (double v : op.potential) vmax = std::max(vmax, std::fabs(v));
  const double dt =
      std::min(oracle_dt, 0.25 / (params.kappa + vmax));
  const double t_end = *std::max_element(probe_times.begin(), probe_times.end());
  const M1Solution sol = solve_m1(op, InitialCondition::TotalCount, t_end, dt,
                                  oracle_window.origin_index());
  for (double t : probe_times) {
    // linear interpolation between steps
    const double h = sol.times.size() > 1 ? sol.times[1] - sol.times[0] : 1.0;
    const auto lo = static_cast<std::size_t>(
        std::clamp(std::floor(t / h), 0.0,
                   static_cast<double>(sol.times.size() - 1)));
    const std::size_t hi = std::min(lo + 1, sol.times.size() - 1);
    const double w = hi == lo ? 0.0 : (t - sol.times[lo]) / h;
    cmp.oracle_m1.push_back((1.0 - w) * sol.m1_at_start[lo] +
                            w * sol.m1_at_start[hi]);
  }
  return cmp;
}

}  // namespace brw
