#include "brw/extrapolate.hpp"

#include <algorithm>
#include <cmath>

#include "brw/parallel.hpp"
#include "brw/rng.hpp"

namespace brw {

namespace {
constexpr double kGridEps = 1e-12;

std::vector<double> fit_grid(double begin, double end, double dt) {
  std::vector<double> ts;
  for (int j = 0;; ++j) {
    const double t = begin + j * dt;
    if (t > end + kGridEps) break;
    ts.push_back(std::min(t, end));
  }
  return ts;
}
}  // namespace

RegressionFit fit_growth(const Trajectory& traj, double grid_dt) {
  if (!(grid_dt > 0.0)) throw std::invalid_argument("grid_dt must be positive");
  if (traj.status != TrajectoryStatus::Capped || !traj.t_100 || !traj.t_stop)
    throw FitUnavailable("fit_growth requires a capped trajectory with t_100");

  const std::vector<double> ts = fit_grid(*traj.t_100, *traj.t_stop, grid_dt);
  const int n = static_cast<int>(ts.size());
  if (n < 2) throw FitUnavailable("fewer than 2 regression grid points");

  double sum_t = 0.0, sum_y = 0.0;
  std::vector<double> ys(ts.size());
  for (std::size_t j = 0; j < ts.size(); ++j) {
    ys[j] = std::log(static_cast<double>(mu_at(traj, ts[j])));
    sum_t += ts[j];
    sum_y += ys[j];
  }
  const double mean_t = sum_t / n;
  const double mean_y = sum_y / n;
  double stt = 0.0, sty = 0.0, syy = 0.0;
  for (std::size_t j = 0; j < ts.size(); ++j) {
    const double dt = ts[j] - mean_t;
    const double dy = ys[j] - mean_y;
    stt += dt * dt;
    sty += dt * dy;
    syy += dy * dy;
  }

  RegressionFit fit;
  fit.slope = sty / stt;
  fit.intercept = mean_y - fit.slope * mean_t;
  fit.n_points = n;
  fit.window_begin = *traj.t_100;
  fit.window_end = *traj.t_stop;
  double ss_res = 0.0;
  for (std::size_t j = 0; j < ts.size(); ++j) {
    const double r = ys[j] - (fit.intercept + fit.slope * ts[j]);
    ss_res += r * r;
  }
  // A response that is flat to rounding noise fits exactly; define R^2 = 1.
  const double flat_tol =
      1e-24 * n * std::max(1.0, mean_y * mean_y);
  if (syy <= flat_tol) {
    fit.slope = 0.0;
    fit.intercept = mean_y;
    fit.r_squared = 1.0;
  } else {
    fit.r_squared = 1.0 - ss_res / syy;
  }
  return fit;
}

double extrapolated_mu(const Trajectory& traj, const RegressionFit& fit,
                       double t) {
  if (t > traj.t_max)
    throw std::domain_error("extrapolated_mu: t beyond the horizon");
  if (t <= traj.end_time) return static_cast<double>(mu_at(traj, t));
  return std::exp(fit.intercept + fit.slope * t);
}

ValidationReport validate_regression(const MediumSpec& spec, int n_traj,
                                     const EngineParams& params,
                                     const LatticeWindow& w, double grid_dt,
                                     std::uint64_t master_seed,
                                     int workers) {
  if (n_traj < 100)
    throw std::invalid_argument("validate_regression needs n_traj >= 100");
  const MediumRealization medium =
      sample_medium(spec, rng::combine(master_seed, 0x6d6564), w);
  const LatticePoint origin(static_cast<std::size_t>(w.dimension()), 0);

  struct PerTraj {
    bool capped = false;
    double r2 = 0.0;
    double bias = 0.0;  // mean over the window of observed - fitted
  };
  std::vector<PerTraj> rows(static_cast<std::size_t>(n_traj));

  parallel_for(n_traj, workers, [&](std::int64_t i) {
    const std::uint64_t seed =
        rng::combine(master_seed, static_cast<std::uint64_t>(i));
    const Trajectory traj = simulate(medium, params, w, origin, seed);
    if (traj.status != TrajectoryStatus::Capped) return;
    PerTraj& row = rows[static_cast<std::size_t>(i)];
    const RegressionFit fit = fit_growth(traj, grid_dt);
    row.capped = true;
    row.r2 = fit.r_squared;
    double err_sum = 0.0;
    std::int64_t n_points = 0;
    for (double t : fit_grid(*traj.t_100, *traj.t_stop, grid_dt)) {
      const double observed = static_cast<double>(mu_at(traj, t));
      const double fitted = std::exp(fit.intercept + fit.slope * t);
      err_sum += observed - fitted;
      ++n_points;
    }
    row.bias = err_sum / static_cast<double>(n_points);
  });

  ValidationReport rep;
  rep.n_trajectories = n_traj;
  double sum_r2 = 0.0, sum_abs = 0.0;
  rep.min_r2 = 1.0;
  for (const PerTraj& row : rows) {
    if (!row.capped) continue;
    ++rep.n_capped;
    sum_r2 += row.r2;
    rep.min_r2 = std::min(rep.min_r2, row.r2);
    sum_abs += std::fabs(row.bias);
    rep.max_abs_err = std::max(rep.max_abs_err, std::fabs(row.bias));
  }
  if (rep.n_capped == 0)
    throw ValidationUnavailable("no trajectory reached the particle cap");
  rep.mean_r2 = sum_r2 / rep.n_capped;
  rep.mean_abs_err = sum_abs / rep.n_capped;
  return rep;
}

}  // namespace brw
