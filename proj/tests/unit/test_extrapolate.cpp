#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "brw/extrapolate.hpp"

using namespace brw;

namespace {

// Capped trajectory whose count follows floor(100 * exp(rate*(t - t0)))
// exactly at its own step times.
Trajectory synthetic_exponential(double rate, double t0, std::int32_t top,
                                 double scale = 1.0) {
  Trajectory traj;
  traj.t_max = 12.0;
  traj.status = TrajectoryStatus::Capped;
  traj.t_100 = t0;
  traj.mu_steps.push_back({0.0, 1});
  traj.mu_steps.push_back({t0, static_cast<std::int32_t>(100 * scale)});
  for (std::int32_t v = 101; v <= top; ++v) {
    const double t = t0 + std::log(v / 100.0) / rate;
    traj.mu_steps.push_back({t, static_cast<std::int32_t>(v * scale)});
  }
  traj.t_stop = t0 + std::log(top / 100.0) / rate;
  traj.end_time = *traj.t_stop;
  return traj;
}

// Exactly exponential on the sampling grid: mu doubles every grid step.
Trajectory synthetic_geometric(double t0, double grid_dt, int doublings) {
  Trajectory traj;
  traj.t_max = 12.0;
  traj.status = TrajectoryStatus::Capped;
  traj.t_100 = t0;
  traj.mu_steps.push_back({0.0, 1});
  for (int j = 0; j <= doublings; ++j)
    traj.mu_steps.push_back(
        {t0 + j * grid_dt, static_cast<std::int32_t>(100ll << j)});
  traj.t_stop = t0 + doublings * grid_dt;
  traj.end_time = *traj.t_stop;
  return traj;
}

}  // namespace

TEST_CASE("fit recovers the slope of a synthetic exponential trajectory") {
  const Trajectory traj = synthetic_exponential(0.5, 2.0, 1000);
  const RegressionFit fit = fit_growth(traj, 0.05);
  CHECK(fit.slope == doctest::Approx(0.5).epsilon(0.02));
  CHECK(std::fabs(fit.slope - 0.5) < 0.01);
  CHECK(fit.r_squared > 0.999);
  CHECK(fit.window_begin == 2.0);
  CHECK(fit.n_points >= 2);
}

TEST_CASE("noiseless grid-aligned exponential fits perfectly") {
  const Trajectory traj = synthetic_geometric(2.0, 0.05, 20);
  const RegressionFit fit = fit_growth(traj, 0.05);
  CHECK(std::fabs(fit.r_squared - 1.0) < 1e-9);
  CHECK(fit.slope == doctest::Approx(std::log(2.0) / 0.05).epsilon(1e-9));
  CHECK(fit.intercept ==
        doctest::Approx(std::log(100.0) - 2.0 * fit.slope).epsilon(1e-9));
}

TEST_CASE("flat response gives slope zero and intercept log(100)") {
  Trajectory traj;
  traj.t_max = 12.0;
  traj.status = TrajectoryStatus::Capped;
  traj.t_100 = 1.0;
  traj.t_stop = 3.0;
  traj.end_time = 3.0;
  traj.mu_steps.push_back({0.0, 1});
  traj.mu_steps.push_back({1.0, 100});
  const RegressionFit fit = fit_growth(traj, 0.05);
  CHECK(fit.slope == doctest::Approx(0.0));
  CHECK(fit.intercept == doctest::Approx(std::log(100.0)));
  CHECK(fit.r_squared == 1.0);
}

TEST_CASE("slope is scale-equivariant") {
  const Trajectory base = synthetic_exponential(0.5, 2.0, 300);
  const Trajectory scaled = synthetic_exponential(0.5, 2.0, 300, 7.0);
  const RegressionFit f1 = fit_growth(base, 0.05);
  const RegressionFit f2 = fit_growth(scaled, 0.05);
  CHECK(f2.slope == doctest::Approx(f1.slope).epsilon(1e-12));
  CHECK(f2.r_squared == doctest::Approx(f1.r_squared).epsilon(1e-12));
  CHECK(f2.intercept - f1.intercept ==
        doctest::Approx(std::log(7.0)).epsilon(1e-12));
}

TEST_CASE("extrapolation semantics") {
  const Trajectory traj = synthetic_geometric(2.0, 0.05, 20);
  const RegressionFit fit = fit_growth(traj, 0.05);
  const double t_stop = *traj.t_stop;

  // continuity at t_stop+ for a perfect fit
  const double just_after = std::nextafter(t_stop, 100.0);
  const double observed = static_cast<double>(mu_at(traj, t_stop));
  CHECK(extrapolated_mu(traj, fit, just_after) ==
        doctest::Approx(observed).epsilon(0.01));

  // doubling the lead time multiplies by exp(slope * delta)
  const double d = 0.4;
  const double a = extrapolated_mu(traj, fit, t_stop + d);
  const double b = extrapolated_mu(traj, fit, t_stop + 2 * d);
  CHECK(b / a == doctest::Approx(std::exp(fit.slope * d)).epsilon(1e-9));

  // observed data always wins below t_stop
  CHECK(extrapolated_mu(traj, fit, 2.0) == 100.0);
  CHECK_THROWS_AS(extrapolated_mu(traj, fit, traj.t_max + 0.5),
                  std::domain_error);

  // slope-zero fit extrapolates a constant
  RegressionFit flat;
  flat.slope = 0.0;
  flat.intercept = std::log(42.0);
  CHECK(extrapolated_mu(traj, flat, t_stop + 1.0) == doctest::Approx(42.0));
}

TEST_CASE("fit preconditions") {
  Trajectory not_capped;
  not_capped.t_max = 10.0;
  not_capped.status = TrajectoryStatus::Extinct;
  not_capped.end_time = 10.0;
  not_capped.mu_steps.push_back({0.0, 1});
  CHECK_THROWS_AS(fit_growth(not_capped, 0.05), FitUnavailable);

  // window shorter than one grid step -> fewer than 2 points
  Trajectory tiny = synthetic_geometric(2.0, 0.01, 2);
  CHECK_THROWS_AS(fit_growth(tiny, 0.05), FitUnavailable);
  CHECK_THROWS_AS(fit_growth(synthetic_geometric(2.0, 0.05, 20), -1.0),
                  std::invalid_argument);
}

TEST_CASE("regression validation protocol on the reference medium") {
  MediumSpec spec;
  spec.sources = SourceConfiguration::every_point();
  spec.split_law = IntensityLaw::constant(2.0);
  spec.death_law = IntensityLaw::constant(1.0);
  EngineParams params;
  const LatticeWindow w(1, 100);
  const ValidationReport rep =
      validate_regression(spec, 600, params, w, 0.05, 314, 1);
  CHECK(rep.n_capped > 100);
  CHECK(rep.mean_r2 > 0.98);
  CHECK(rep.min_r2 > 0.8);
  CHECK(rep.mean_abs_err < rep.max_abs_err);

  CHECK_THROWS_AS(validate_regression(spec, 50, params, w, 0.05, 314, 1),
                  std::invalid_argument);

  // critical medium with an unreachable cap: nothing to validate
  MediumSpec crit = spec;
  crit.split_law = IntensityLaw::constant(1.0);
  EngineParams high_cap;
  high_cap.particle_cap = 100000;
  high_cap.t_max = 3.0;
  CHECK_THROWS_AS(validate_regression(crit, 200, high_cap, w, 0.05, 314, 1),
                  ValidationUnavailable);
}
