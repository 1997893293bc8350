#include "brw/engine.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

#include "brw/rng.hpp"

namespace brw {

void EngineParams::validate() const {
  if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
  if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
  if (particle_cap < 1)
    throw std::invalid_argument("particle_cap must be >= 1");
}

namespace {

// Pending tuple: a particle whose death time is still unknown.
struct Pending {
  double t_birth;
  std::int64_t id;
  std::int64_t site;
};
struct PendingLater {
  bool operator()(const Pending& a, const Pending& b) const {
    if (a.t_birth != b.t_birth) return a.t_birth > b.t_birth;
    return a.id > b.id;  // ties (split siblings) broken by smaller id
  }
};

// Generated event waiting to be applied to the chronological count.
struct BufEvent {
  double time;
  std::int64_t seq;
  EventKind kind;
  std::int64_t site;
};
struct BufLater {
  bool operator()(const BufEvent& a, const BufEvent& b) const {
    if (a.time != b.time) return a.time > b.time;
    return a.seq > b.seq;
  }
};

constexpr int delta_of(EventKind k) {
  switch (k) {
    case EventKind::Split: return +1;
    case EventKind::Die: return -1;
    default: return 0;
  }
}

}  // namespace

Trajectory simulate(const MediumRealization& medium, const EngineParams& params,
                    const LatticeWindow& w, const LatticePoint& start,
                    std::uint64_t replicate_seed) {
  params.validate();
  if (medium.window().dimension() != w.dimension() ||
      medium.window().side() != w.side())
    throw std::invalid_argument("medium realization window does not match");
  if (!w.contains(start))
    throw std::domain_error("start point outside lattice window");

  rng::SplitMix64 gen(replicate_seed);

  Trajectory traj;
  traj.t_max = params.t_max;
  traj.replicate_seed = replicate_seed;
  traj.mu_steps.push_back({0.0, 1});

  std::priority_queue<Pending, std::vector<Pending>, PendingLater> pending;
  std::priority_queue<BufEvent, std::vector<BufEvent>, BufLater> buffer;

  pending.push({0.0, 1, w.index(start)});
  traj.total_records = 1;

  std::int64_t mu_now = 1;
  std::int64_t next_seq = 0;
  bool capped = false;
  bool boundary_exit = false;
  double abort_time = 0.0;

  // Applies buffered events with time <= frontier in chronological order.
  // Returns false once the cap is crossed (the crossing event is dropped so
  // max mu over [0, t_stop] stays at the cap).
  auto flush = [&](double frontier) -> bool {
    while (!buffer.empty() && buffer.top().time <= frontier) {
      BufEvent ev = buffer.top();
      const int delta = delta_of(ev.kind);
      if (delta > 0 && mu_now + delta > params.particle_cap) {
        capped = true;
        traj.t_stop = ev.time;
        return false;
      }
      buffer.pop();
      traj.events.push_back({ev.time, ev.kind, ev.site});
      if (delta != 0) {
        mu_now += delta;
        traj.mu_steps.push_back({ev.time, static_cast<std::int32_t>(mu_now)});
        if (!traj.t_100 && mu_now >= 100) traj.t_100 = ev.time;
      }
    }
    return true;
  };

  auto emit = [&](double time, EventKind kind, std::int64_t site) {
    buffer.push({time, next_seq++, kind, site});
  };

  const int two_d = 2 * w.dimension();

  while (!pending.empty()) {
    const Pending cur = pending.top();
    if (!flush(cur.t_birth)) break;
    if (cur.t_birth > params.t_max) break;  // all remaining are later still
    pending.pop();

    const auto [xi_plus, xi_minus] = medium.rates_at(cur.site);
    const double total_rate = params.kappa + xi_plus + xi_minus;
    const double holding_rate =
        params.holding_time_mode == HoldingTimeMode::TotalRate ? total_rate
                                                               : params.kappa;
    const double t_death = cur.t_birth + gen.next_exponential(holding_rate);
    if (t_death > params.t_max) continue;  // survives past the horizon

    const double u = gen.next_open01() * total_rate;
    if (u < params.kappa) {
      // jump to a uniformly chosen neighbor
      const auto pick = gen.next_below(static_cast<std::uint64_t>(two_d));
      const int axis = static_cast<int>(pick >> 1);
      const int dir = (pick & 1) ? +1 : -1;
      const std::int64_t dest = w.neighbor_index(cur.site, axis, dir);
      if (dest < 0) {
        if (w.boundary_policy() == BoundaryPolicy::Error) {
          boundary_exit = true;
          abort_time = cur.t_birth;  // data complete through the frontier
          break;
        }
        ++traj.boundary_kills;
        emit(t_death, EventKind::Die, cur.site);
      } else {
        pending.push({t_death, ++traj.total_records, dest});
        emit(t_death, EventKind::Jump, dest);
      }
    } else if (u < params.kappa + xi_plus) {
      pending.push({t_death, ++traj.total_records, cur.site});
      pending.push({t_death, ++traj.total_records, cur.site});
      emit(t_death, EventKind::Split, cur.site);
    } else {
      emit(t_death, EventKind::Die, cur.site);
    }
  }

  if (!capped && !boundary_exit) flush(params.t_max);

  if (capped) {
    traj.status = TrajectoryStatus::Capped;
    traj.end_time = *traj.t_stop;
  } else if (boundary_exit) {
    traj.status = TrajectoryStatus::BoundaryExit;
    traj.end_time = abort_time;
  } else if (mu_now == 0) {
    traj.status = TrajectoryStatus::Extinct;
    traj.end_time = params.t_max;
  } else {
    traj.status = TrajectoryStatus::ReachedHorizon;
    traj.end_time = params.t_max;
  }
  return traj;
}

std::int64_t mu_at(const Trajectory& traj, double t) {
  if (!(t >= 0.0) || t > traj.end_time)
    throw std::domain_error("mu_at: time outside the trajectory's valid range");
  auto it = std::upper_bound(
      traj.mu_steps.begin(), traj.mu_steps.end(), t,
      [](double v, const MuStep& s) { return v < s.time; });
  return std::prev(it)->mu_after;
}

}  // namespace brw
