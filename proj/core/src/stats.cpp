#include "brw/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace brw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTimeEps = 1e-9;

// log(sum(exp(v))) over a range; tolerates -inf entries (zero terms).
double log_sum_exp(const double* v, std::size_t n) {
  double top = -kInf;
  for (std::size_t i = 0; i < n; ++i) top = std::max(top, v[i]);
  if (top == -kInf) return -kInf;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::exp(v[i] - top);
  return top + std::log(acc);
}

int trim_per_end(double trim_fraction, std::size_t n) {
  if (trim_fraction == 0.0) return 0;
  return static_cast<int>(
      std::ceil(trim_fraction * static_cast<double>(n) / 2.0));
}

}  // namespace

std::vector<double> uniform_grid(double t_end, double dt) {
  if (!(t_end > 0.0) || !(dt > 0.0))
    throw std::invalid_argument("uniform_grid needs positive t_end and dt");
  std::vector<double> ts;
  for (int j = 0;; ++j) {
    const double t = j * dt;
    if (t > t_end + kTimeEps) break;
    ts.push_back(std::min(t, t_end));
  }
  if (ts.back() < t_end - kTimeEps) ts.push_back(t_end);
  return ts;
}

double trajectory_count_at(const Trajectory& traj,
                           const std::optional<RegressionFit>& fit, double t) {
  if (t <= traj.end_time) return static_cast<double>(mu_at(traj, t));
  if (traj.status == TrajectoryStatus::Capped) {
    if (!fit)
      throw std::invalid_argument(
          "capped trajectory needs a regression fit beyond t_stop");
    return extrapolated_mu(traj, *fit, t);
  }
  throw std::domain_error("time beyond the trajectory's valid range");
}

MomentCurve quenched_moment(const std::vector<Trajectory>& trajectories,
                            const std::vector<std::optional<RegressionFit>>& fits,
                            int order, const std::vector<double>& times) {
  if (trajectories.empty())
    throw std::domain_error("quenched_moment needs at least one trajectory");
  if (fits.size() != trajectories.size())
    throw std::invalid_argument("one fit slot per trajectory required");
  if (order < 0) throw std::invalid_argument("moment order must be >= 0");

  MomentCurve curve;
  curve.times = times;
  curve.order = order;
  curve.replicates = static_cast<int>(trajectories.size());
  curve.values.assign(times.size(), 0.0);
  if (order == 0) {  // m_0 is identically 1
    std::fill(curve.values.begin(), curve.values.end(), 1.0);
    return curve;
  }

  for (std::size_t i = 0; i < trajectories.size(); ++i) {
    const Trajectory& traj = trajectories[i];
    if (traj.status == TrajectoryStatus::BoundaryExit)
      throw std::invalid_argument(
          "BoundaryExit trajectory passed to quenched_moment");
    if (traj.t_max != trajectories.front().t_max)
      throw std::invalid_argument("trajectories disagree on t_max");
    for (std::size_t j = 0; j < times.size(); ++j) {
      double v = trajectory_count_at(traj, fits[i], times[j]);
      double p = v;
      for (int k = 1; k < order; ++k) p *= v;
      curve.values[j] += p;
    }
  }
  const double inv = 1.0 / static_cast<double>(trajectories.size());
  for (double& v : curve.values) v *= inv;
  return curve;
}

double trimmed_mean(std::vector<double> values, double trim_fraction) {
  if (values.empty()) throw TrimUnavailable("empty sample");
  if (trim_fraction < 0.0 || trim_fraction >= 1.0)
    throw std::invalid_argument("trim_fraction must lie in [0,1)");
  const int cut = trim_per_end(trim_fraction, values.size());
  const std::int64_t kept =
      static_cast<std::int64_t>(values.size()) - 2 * cut;
  if (kept < 1) throw TrimUnavailable("trimming would discard every value");
  std::sort(values.begin(), values.end());
  double acc = 0.0;
  for (std::int64_t i = cut; i < cut + kept; ++i)
    acc += values[static_cast<std::size_t>(i)];
  return acc / static_cast<double>(kept);
}

AnnealedSummary::AnnealedSummary(std::vector<MomentCurve> per_medium,
                                 std::vector<int> powers, double trim_fraction)
    : powers_(std::move(powers)),
      trim_fraction_(trim_fraction),
      per_medium_(std::move(per_medium)) {
  if (per_medium_.empty())
    throw std::domain_error("annealed_moment needs at least one curve");
  if (powers_.empty()) throw std::invalid_argument("no powers requested");
  if (trim_fraction_ < 0.0 || trim_fraction_ >= 1.0)
    throw std::invalid_argument("trim_fraction must lie in [0,1)");
  times_ = per_medium_.front().times;
  order_ = per_medium_.front().order;
  for (const MomentCurve& c : per_medium_) {
    if (c.order != order_)
      throw std::domain_error("mixed moment orders in annealed_moment");
    if (c.times.size() != times_.size())
      throw std::domain_error("mixed time grids in annealed_moment");
    for (std::size_t j = 0; j < times_.size(); ++j)
      if (std::fabs(c.times[j] - times_[j]) > kTimeEps)
        throw std::domain_error("mixed time grids in annealed_moment");
  }

  const std::size_t m1 = per_medium_.size();
  const int cut = trim_per_end(trim_fraction_, m1);
  trim_available_ = static_cast<std::int64_t>(m1) - 2 * cut >= 1;

  const double log_m1 = std::log(static_cast<double>(m1));
  const double log_kept =
      trim_available_ ? std::log(static_cast<double>(m1 - 2 * cut)) : 0.0;

  log_mean_.assign(powers_.size(), std::vector<double>(times_.size(), -kInf));
  log_mean_trimmed_.assign(powers_.size(),
                           std::vector<double>(times_.size(), -kInf));

  std::vector<double> logs(m1);
  std::vector<double> scaled(m1);
  for (std::size_t j = 0; j < times_.size(); ++j) {
    for (std::size_t k = 0; k < m1; ++k) {
      const double v = per_medium_[k].values[j];
      if (v < 0.0)
        throw std::domain_error("negative quenched moment value");
      logs[k] = v > 0.0 ? std::log(v) : -kInf;
    }
    // Trimming acts on the per-medium values; powers are monotone on
    // nonnegative inputs, so the same entries are removed for every p.
    std::sort(logs.begin(), logs.end());
    for (std::size_t pi = 0; pi < powers_.size(); ++pi) {
      const double p = powers_[pi];
      for (std::size_t k = 0; k < m1; ++k) scaled[k] = p * logs[k];
      log_mean_[pi][j] = log_sum_exp(scaled.data(), m1) - log_m1;
      if (trim_available_)
        log_mean_trimmed_[pi][j] =
            log_sum_exp(scaled.data() + cut, m1 - 2 * static_cast<std::size_t>(cut)) -
            log_kept;
    }
  }
}

int AnnealedSummary::power_index(int p) const {
  for (std::size_t i = 0; i < powers_.size(); ++i)
    if (powers_[i] == p) return static_cast<int>(i);
  throw std::domain_error("power not present in annealed summary");
}

int AnnealedSummary::time_index(double t) const {
  for (std::size_t j = 0; j < times_.size(); ++j)
    if (std::fabs(times_[j] - t) <= kTimeEps) return static_cast<int>(j);
  throw std::domain_error("time not on the annealed summary grid");
}

double AnnealedSummary::log_mean(int p, double t) const {
  return log_mean_[static_cast<std::size_t>(power_index(p))]
                  [static_cast<std::size_t>(time_index(t))];
}

double AnnealedSummary::log_mean_trimmed(int p, double t) const {
  if (!trim_available_)
    throw TrimUnavailable("medium ensemble too small to trim");
  return log_mean_trimmed_[static_cast<std::size_t>(power_index(p))]
                          [static_cast<std::size_t>(time_index(t))];
}

double intermittency_ratio(const AnnealedSummary& summary, double t) {
  if (!summary.trim_available())
    throw RatioUndefined("trimmed moment unavailable");
  const double lu = summary.log_mean(1, t);
  const double lt = summary.log_mean_trimmed(1, t);
  if (lt == -kInf) throw RatioUndefined("trimmed moment is zero");
  return std::exp(lu - lt);
}

double log_moment_gap(const AnnealedSummary& summary, double t) {
  const double l1 = summary.log_mean(1, t);
  const double l2 = summary.log_mean(2, t);
  if (l1 == -kInf || l2 == -kInf)
    throw std::domain_error("log_moment_gap needs positive moments");
  return (l2 - 2.0 * l1) / std::numbers::ln10;
}

std::vector<double> lyapunov_ratio_estimate(const AnnealedSummary& summary,
                                            double beta, double window_begin,
                                            double window_end) {
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < summary.times().size(); ++j) {
    const double t = summary.times()[j];
    if (t >= window_begin - kTimeEps && t <= window_end + kTimeEps)
      idx.push_back(j);
  }
  if (idx.size() < 2)
    throw std::domain_error("lyapunov window covers fewer than 2 grid points");

  std::vector<double> out;
  out.reserve(summary.powers().size());
  for (int p : summary.powers()) {
    double sx = 0.0, sy = 0.0;
    for (std::size_t j : idx) {
      const double lv = summary.log_mean(p, summary.times()[j]);
      if (lv == -kInf)
        throw std::domain_error("nonpositive moment inside lyapunov window");
      sx += std::pow(summary.times()[j], beta);
      sy += lv;
    }
    const double mx = sx / static_cast<double>(idx.size());
    const double my = sy / static_cast<double>(idx.size());
    double stt = 0.0, sty = 0.0;
    for (std::size_t j : idx) {
      const double dx = std::pow(summary.times()[j], beta) - mx;
      const double dy = summary.log_mean(p, summary.times()[j]) - my;
      stt += dx * dx;
      sty += dx * dy;
    }
    out.push_back(sty / stt / static_cast<double>(p));
  }
  return out;
}

}  // namespace brw
