#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "brw/lattice.hpp"
#include "brw/medium.hpp"

namespace brw {

enum class HoldingTimeMode {
  // Holding time Exp(D) with D = kappa + xi+ + xi-; the consistent
  // continuous-time Markov chain and the default.
  TotalRate,
  // Holding time Exp(kappa) regardless of branching rates, with the same
  // jump/split/die selection probabilities. Not a consistent chain; kept
  // so the effect of the convention can be audited.
  WalkRateOnly,
};

struct EngineParams {
  double kappa = 1.0;
  double t_max = 10.0;
  int particle_cap = 1000;
  HoldingTimeMode holding_time_mode = HoldingTimeMode::TotalRate;

  void validate() const;
};

// Internal particle tuple (id, birth time, death time, position index).
// Death time is NaN until the particle has been processed.
struct ParticleRecord {
  std::int64_t id;
  double t_birth;
  double t_death;  // NaN when unknown
  std::int64_t site;

  static constexpr double unknown_death() {
    return std::numeric_limits<double>::quiet_NaN();
  }
};

enum class EventKind : std::uint8_t { Jump, Split, Die };

struct Event {
  double time;
  EventKind kind;
  std::int64_t site;  // destination for Jump, event location otherwise
};

enum class TrajectoryStatus : std::uint8_t {
  Extinct,        // population hit zero before t_max
  ReachedHorizon, // live particles remain at t_max
  Capped,         // live count would exceed the cap; data valid to t_stop
  BoundaryExit,   // walk left the window under BoundaryPolicy::Error
};

// Piecewise-constant total-count change; mu is right-continuous.
struct MuStep {
  double time;
  std::int32_t mu_after;
};

struct Trajectory {
  std::vector<Event> events;     // chronological, truncated at end_time
  std::vector<MuStep> mu_steps;  // starts with {0, 1}
  TrajectoryStatus status = TrajectoryStatus::Extinct;
  std::optional<double> t_100;   // first time mu >= 100
  std::optional<double> t_stop;  // set when status == Capped
  double end_time = 0.0;         // last time mu_at is defined
  double t_max = 0.0;
  std::uint64_t replicate_seed = 0;
  std::int64_t boundary_kills = 0;  // KillWithFlag deaths at the rim
  std::int64_t total_records = 0;   // particle tuples ever created

  std::int32_t final_mu() const {
    return mu_steps.empty() ? 1 : mu_steps.back().mu_after;
  }
};

// Simulates one BRW trajectory for a fixed medium realization.
// Deterministic in (medium, params, start, replicate_seed).
Trajectory simulate(const MediumRealization& medium, const EngineParams& params,
                    const LatticeWindow& w, const LatticePoint& start,
                    std::uint64_t replicate_seed);

// Evaluates the total-count step function; right-continuous at event times.
// Throws std::domain_error outside [0, traj.end_time].
std::int64_t mu_at(const Trajectory& traj, double t);

}  // namespace brw
