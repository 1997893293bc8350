#include <doctest.h>

#include <cmath>
#include <map>
#include <stdexcept>

#include "brw/engine.hpp"
#include "brw/rng.hpp"

using namespace brw;

namespace {

MediumSpec homogeneous(double split, double death) {
  MediumSpec s;
  s.sources = SourceConfiguration::every_point();
  s.split_law = IntensityLaw::constant(split);
  s.death_law = IntensityLaw::constant(death);
  return s;
}

// Independent accounting: replay the event list.
void check_count_conservation(const Trajectory& traj) {
  std::int64_t splits = 0, dies = 0;
  double prev = -1.0;
  for (const Event& ev : traj.events) {
    CHECK(ev.time >= prev);
    prev = ev.time;
    if (ev.kind == EventKind::Split) ++splits;
    if (ev.kind == EventKind::Die) ++dies;
    CHECK(mu_at(traj, std::min(ev.time, traj.end_time)) == 1 + splits - dies);
  }
  CHECK(traj.final_mu() == 1 + splits - dies);
}

}  // namespace

TEST_CASE("pure walk keeps a single particle forever") {
  const LatticeWindow w(1, 101);
  const MediumRealization m = sample_medium(homogeneous(0.0, 0.0), 1, w);
  EngineParams params;
  params.t_max = 10.0;
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const Trajectory traj = simulate(m, params, w, {0}, seed);
    CHECK(traj.status == TrajectoryStatus::ReachedHorizon);
    CHECK(mu_at(traj, 0.0) == 1);
    CHECK(mu_at(traj, 5.0) == 1);
    CHECK(mu_at(traj, 10.0) == 1);
    for (const Event& ev : traj.events) CHECK(ev.kind == EventKind::Jump);
  }
}

TEST_CASE("identical seeds give byte-identical event lists") {
  const LatticeWindow w(1, 101);
  const MediumRealization m = sample_medium(homogeneous(2.0, 1.0), 9, w);
  EngineParams params;
  params.t_max = 5.0;
  const Trajectory a = simulate(m, params, w, {0}, 4242);
  const Trajectory b = simulate(m, params, w, {0}, 4242);
  REQUIRE(a.events.size() == b.events.size());
  for (std::size_t i = 0; i < a.events.size(); ++i) {
    CHECK(a.events[i].time == b.events[i].time);
    CHECK(a.events[i].kind == b.events[i].kind);
    CHECK(a.events[i].site == b.events[i].site);
  }
  CHECK(a.status == b.status);

  const Trajectory c = simulate(m, params, w, {0}, 4243);
  CHECK((c.events.size() != a.events.size() ||
         c.events.front().time != a.events.front().time));
}

TEST_CASE("supercritical homogeneous mean matches the analytic first moment") {
  // E mu(t) = exp((xi+ - xi-) t) for the constant homogeneous medium
  const LatticeWindow w(1, 101);
  const MediumRealization m = sample_medium(homogeneous(2.0, 1.0), 1, w);
  EngineParams params;
  params.t_max = 2.0;
  const int n = 3000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const Trajectory traj =
        simulate(m, params, w, {0}, rng::combine(555, static_cast<std::uint64_t>(i)));
    REQUIRE(traj.status != TrajectoryStatus::BoundaryExit);
    REQUIRE(traj.status != TrajectoryStatus::Capped);
    const auto v = static_cast<double>(mu_at(traj, 2.0));
    sum += v;
    sumsq += v * v;
  }
  const double mean = sum / n;
  const double sd = std::sqrt((sumsq - n * mean * mean) / (n - 1));
  const double expected = std::exp(2.0);
  CHECK(std::fabs(mean - expected) < 3.0 * sd / std::sqrt(n));
}

TEST_CASE("critical homogeneous mean stays near one") {
  const LatticeWindow w(1, 101);
  const MediumRealization m = sample_medium(homogeneous(1.0, 1.0), 1, w);
  EngineParams params;
  params.t_max = 10.0;
  const int n = 3000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const Trajectory traj =
        simulate(m, params, w, {0}, rng::combine(777, static_cast<std::uint64_t>(i)));
    const auto v = static_cast<double>(mu_at(traj, 10.0));
    sum += v;
    sumsq += v * v;
  }
  const double mean = sum / n;
  const double sd = std::sqrt((sumsq - n * mean * mean) / (n - 1));
  CHECK(std::fabs(mean - 1.0) < 3.0 * sd / std::sqrt(n));
}

TEST_CASE("walk-rate-only holding times slow the growth to exp(t/4)") {
  // Exp(kappa) holding with selection probabilities (1/4, 1/2, 1/4) is a
  // birth-death chain with effective rates (1/2, 1/4).
  const LatticeWindow w(1, 101);
  const MediumRealization m = sample_medium(homogeneous(2.0, 1.0), 1, w);
  EngineParams params;
  params.t_max = 6.0;
  params.holding_time_mode = HoldingTimeMode::WalkRateOnly;
  const int n = 3000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const Trajectory traj =
        simulate(m, params, w, {0}, rng::combine(901, static_cast<std::uint64_t>(i)));
    const auto v = static_cast<double>(mu_at(traj, 6.0));
    sum += v;
    sumsq += v * v;
  }
  const double mean = sum / n;
  const double sd = std::sqrt((sumsq - n * mean * mean) / (n - 1));
  const double expected = std::exp(6.0 / 4.0);
  CHECK(std::fabs(mean - expected) < 3.0 * sd / std::sqrt(n));
  // and nowhere near the total-rate growth exp(6)
  CHECK(mean < 0.5 * std::exp(6.0));
}

TEST_CASE("count conservation on a mixed bag of trajectories") {
  const LatticeWindow w(1, 101);
  const MediumRealization m = sample_medium(homogeneous(2.0, 1.0), 3, w);
  EngineParams params;
  params.t_max = 6.0;
  params.particle_cap = 200;
  int capped = 0, extinct = 0;
  for (int i = 0; i < 200; ++i) {
    const Trajectory traj =
        simulate(m, params, w, {0}, rng::combine(31337, static_cast<std::uint64_t>(i)));
    check_count_conservation(traj);
    capped += traj.status == TrajectoryStatus::Capped;
    extinct += traj.status == TrajectoryStatus::Extinct;
    if (traj.status == TrajectoryStatus::Capped) {
      REQUIRE(traj.t_stop.has_value());
      REQUIRE(traj.t_100.has_value());
      CHECK(*traj.t_100 <= *traj.t_stop);
      // max mu over [0, t_stop] equals the cap
      std::int32_t peak = 1;
      for (const MuStep& s : traj.mu_steps) peak = std::max(peak, s.mu_after);
      CHECK(peak == params.particle_cap);
    }
  }
  CHECK(capped > 0);
  CHECK(extinct > 0);
}

TEST_CASE("mu_at semantics") {
  const LatticeWindow w(1, 101);
  const MediumRealization m = sample_medium(homogeneous(0.5, 3.0), 3, w);
  EngineParams params;
  params.t_max = 8.0;
  // strongly subcritical: extinction is almost certain
  const Trajectory traj = simulate(m, params, w, {0}, 11);
  REQUIRE(traj.status == TrajectoryStatus::Extinct);
  CHECK(mu_at(traj, 0.0) == 1);
  CHECK(mu_at(traj, 8.0) == 0);
  const double t_ext = traj.mu_steps.back().time;
  CHECK(mu_at(traj, t_ext) == 0);              // right-continuous at the event
  CHECK(mu_at(traj, std::nextafter(t_ext, 0.0)) > 0);
  CHECK_THROWS_AS(mu_at(traj, -0.1), std::domain_error);
  CHECK_THROWS_AS(mu_at(traj, 8.1), std::domain_error);
}

TEST_CASE("boundary exit aborts under the error policy") {
  const LatticeWindow w(1, 3, BoundaryPolicy::Error);
  const MediumRealization m = sample_medium(homogeneous(0.0, 0.0), 1, w);
  EngineParams params;
  params.t_max = 50.0;
  const Trajectory traj = simulate(m, params, w, {0}, 5);
  CHECK(traj.status == TrajectoryStatus::BoundaryExit);
}

TEST_CASE("kill-with-flag boundary policy kills the walker and flags it") {
  const LatticeWindow w(1, 3, BoundaryPolicy::KillWithFlag);
  const MediumRealization m = sample_medium(homogeneous(0.0, 0.0), 1, w);
  EngineParams params;
  params.t_max = 50.0;
  const Trajectory traj = simulate(m, params, w, {0}, 5);
  CHECK(traj.status == TrajectoryStatus::Extinct);
  CHECK(traj.boundary_kills == 1);
  CHECK(traj.final_mu() == 0);
}

TEST_CASE("t_100 is the first time the count reaches one hundred") {
  const LatticeWindow w(1, 101);
  const MediumRealization m = sample_medium(homogeneous(3.0, 0.0), 1, w);
  EngineParams params;
  params.t_max = 10.0;
  params.particle_cap = 500;
  const Trajectory traj = simulate(m, params, w, {0}, 21);
  REQUIRE(traj.status == TrajectoryStatus::Capped);
  REQUIRE(traj.t_100.has_value());
  CHECK(mu_at(traj, *traj.t_100) == 100);
  CHECK(mu_at(traj, std::nextafter(*traj.t_100, 0.0)) == 99);
}

TEST_CASE("parameter validation") {
  EngineParams params;
  params.kappa = 0.0;
  CHECK_THROWS_AS(params.validate(), std::invalid_argument);
  params.kappa = 1.0;
  params.particle_cap = 0;
  CHECK_THROWS_AS(params.validate(), std::invalid_argument);

  const LatticeWindow w(1, 11);
  const MediumRealization m = sample_medium(homogeneous(1.0, 1.0), 1, w);
  EngineParams ok;
  CHECK_THROWS_AS(simulate(m, ok, w, {99}, 1), std::domain_error);
  const LatticeWindow other(1, 13);
  CHECK_THROWS_AS(simulate(m, ok, other, {0}, 1), std::invalid_argument);
}
