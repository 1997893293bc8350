#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "brw/engine.hpp"
#include "brw/extrapolate.hpp"

namespace brw {

struct TrimUnavailable : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct RatioUndefined : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Uniform time grid {0, dt, 2dt, ..., t_end} (last point snapped to t_end).
std::vector<double> uniform_grid(double t_end, double dt);

// Per-trajectory count at time t: observed while data is valid, regression
// extrapolation beyond t_stop for capped trajectories.
double trajectory_count_at(const Trajectory& traj,
                           const std::optional<RegressionFit>& fit, double t);

// Quenched Monte Carlo estimate m_hat_n(t) = (1/M) sum mu_i(t)^n on a grid.
struct MomentCurve {
  std::vector<double> times;
  std::vector<double> values;
  int order = 1;
  int replicates = 0;               // M
  std::optional<int> medium_id;     // none for non-random media
};

MomentCurve quenched_moment(const std::vector<Trajectory>& trajectories,
                            const std::vector<std::optional<RegressionFit>>& fits,
                            int order, const std::vector<double>& times);

// Mean after removing ceil(trim_fraction*n/2) values from each end, so 1%
// of 250 removes the two largest and two smallest. Throws TrimUnavailable
// when nothing would remain.
double trimmed_mean(std::vector<double> values, double trim_fraction);

// Medium-ensemble averages <m_n^p(t)> of per-medium quenched estimates,
// with 1%-trimmed variants. Stored in the log domain (log-sum-exp) so
// production-scale powers cannot overflow intermediates; pseudo-annealed moments
// for non-random media use identical arithmetic.
class AnnealedSummary {
 public:
  AnnealedSummary(std::vector<MomentCurve> per_medium, std::vector<int> powers,
                  double trim_fraction);

  const std::vector<double>& times() const noexcept { return times_; }
  int order() const noexcept { return order_; }
  const std::vector<int>& powers() const noexcept { return powers_; }
  int medium_count() const noexcept { return static_cast<int>(per_medium_.size()); }
  double trim_fraction() const noexcept { return trim_fraction_; }
  bool trim_available() const noexcept { return trim_available_; }
  const std::vector<MomentCurve>& per_medium() const noexcept {
    return per_medium_;
  }

  // Natural-log ensemble means; -inf encodes a zero moment.
  double log_mean(int p, double t) const;
  double log_mean_trimmed(int p, double t) const;
  double mean(int p, double t) const { return std::exp(log_mean(p, t)); }
  double mean_trimmed(int p, double t) const {
    return std::exp(log_mean_trimmed(p, t));
  }

  int time_index(double t) const;  // throws std::domain_error if absent

 private:
  std::vector<double> times_;
  int order_;
  std::vector<int> powers_;
  double trim_fraction_;
  bool trim_available_;
  std::vector<MomentCurve> per_medium_;
  std::vector<std::vector<double>> log_mean_;          // [p_idx][t_idx]
  std::vector<std::vector<double>> log_mean_trimmed_;  // [p_idx][t_idx]

  int power_index(int p) const;
};

inline AnnealedSummary annealed_moment(std::vector<MomentCurve> per_medium,
                                       std::vector<int> powers,
                                       double trim_fraction = 0.01) {
  return AnnealedSummary(std::move(per_medium), std::move(powers),
                         trim_fraction);
}

// R(t): untrimmed over trimmed first annealed (or pseudo-annealed) moment.
// Throws RatioUndefined when the trimmed value is zero or unavailable.
double intermittency_ratio(const AnnealedSummary& summary, double t);

// log10<m1^2(t)> - log10<m1(t)>^2; throws std::domain_error on nonpositive
// moments.
double log_moment_gap(const AnnealedSummary& summary, double t);

// Normalized Lyapunov-exponent estimates: least-squares slope of
// ln<m1^p(t)> against t^beta over [window_begin, window_end], divided by p.
// One entry per power in summary order.
std::vector<double> lyapunov_ratio_estimate(const AnnealedSummary& summary,
                                            double beta, double window_begin,
                                            double window_end);

}  // namespace brw
