#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "brw/engine.hpp"

namespace brw {

struct FitUnavailable : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ValidationUnavailable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exponential growth fit log mu(t) = intercept + slope * t on the window
// [t_100, t_stop], sampled on a uniform grid.
struct RegressionFit {
  double slope = 0.0;      // growth rate per unit time
  double intercept = 0.0;  // log scale
  double r_squared = 1.0;
  int n_points = 0;
  double window_begin = 0.0;  // t_100
  double window_end = 0.0;    // t_stop
};

// OLS of ln mu on t over the grid {t_100, t_100+grid_dt, ..., <= t_stop}.
// Requires a capped trajectory with t_100 set and at least 2 grid points;
// throws FitUnavailable otherwise.
RegressionFit fit_growth(const Trajectory& traj, double grid_dt);

// Observed count for t <= t_stop, exp(intercept + slope*t) beyond.
// Throws std::domain_error for t > traj.t_max.
double extrapolated_mu(const Trajectory& traj, const RegressionFit& fit,
                       double t);

// Error statistics are per-trajectory prediction biases in particles: each
// capped trajectory contributes mean_t(observed - fitted) over its window,
// and the report aggregates |bias| across trajectories. Pointwise absolute
// residuals scale with the cap and say little about fit quality; the bias
// measures whether the exponential regression systematically mispredicts
// counts.
struct ValidationReport {
  double mean_r2 = 0.0;
  double min_r2 = 0.0;
  double mean_abs_err = 0.0;  // mean over trajectories of |bias|
  double max_abs_err = 0.0;   // max over trajectories of |bias|
  int n_trajectories = 0;
  int n_capped = 0;
};

// Regression-quality protocol: simulates n_traj trajectories of the given
// medium spec, fits the capped ones, and compares observed vs fitted counts
// on [t_100, t_stop]. Throws ValidationUnavailable if nothing capped.
ValidationReport validate_regression(const MediumSpec& spec, int n_traj,
                                     const EngineParams& params,
                                     const LatticeWindow& w, double grid_dt,
                                     std::uint64_t master_seed,
                                     int workers = 1);

}  // namespace brw
