#include "brw/oracle.hpp"

#include <cmath>

namespace brw {

OperatorSpec::OperatorSpec(LatticeWindow w, double kappa_, Field v)
    : window(std::move(w)), kappa(kappa_), potential(std::move(v)) {
  if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
  if (static_cast<std::int64_t>(potential.size()) != window.size())
    throw std::invalid_argument("potential size does not match window");
  for (double v_ : potential)
    if (!std::isfinite(v_))
      throw std::invalid_argument("potential must be finite everywhere");
}

OperatorSpec make_operator_spec(const MediumRealization& medium,
                                const LatticeWindow& oracle_window,
                                double kappa) {
  Field v(static_cast<std::size_t>(oracle_window.size()), 0.0);
  if (medium.every_point()) {
    if (oracle_window.dimension() != medium.window().dimension() ||
        oracle_window.side() != medium.window().side())
      throw std::invalid_argument(
          "EveryPoint medium requires the oracle window to match");
    for (std::int64_t i = 0; i < oracle_window.size(); ++i) {
      const auto [xp, xm] = medium.rates_at(i);
      v[static_cast<std::size_t>(i)] = xp - xm;
    }
  } else {
    for (std::int64_t idx : medium.finite_source_indices()) {
      const LatticePoint p = medium.window().unindex(idx);
      if (!oracle_window.contains(p)) continue;
      const auto [xp, xm] = medium.rates_at(idx);
      v[static_cast<std::size_t>(oracle_window.index(p))] = xp - xm;
    }
  }
  return OperatorSpec(oracle_window, kappa, std::move(v));
}

Field apply_generator(const OperatorSpec& spec, const Field& f) {
  if (f.size() != spec.potential.size())
    throw std::invalid_argument("field size does not match window");
  const LatticeWindow& w = spec.window;
  const int d = w.dimension();
  const double inv2d = 1.0 / (2.0 * d);
  Field out(f.size());
  for (std::int64_t i = 0; i < w.size(); ++i) {
    double acc = 0.0;
    for (int axis = 0; axis < d; ++axis) {
      const std::int64_t lo = w.neighbor_index(i, axis, -1);
      const std::int64_t hi = w.neighbor_index(i, axis, +1);
      if (lo >= 0) acc += f[static_cast<std::size_t>(lo)];
      if (hi >= 0) acc += f[static_cast<std::size_t>(hi)];
    }
    out[static_cast<std::size_t>(i)] =
        spec.kappa * (inv2d * acc - f[static_cast<std::size_t>(i)]);
  }
  return out;
}

namespace {

// Right-hand side A f + V f, written into out.
void rhs(const OperatorSpec& spec, const Field& f, Field& out) {
  const LatticeWindow& w = spec.window;
  const int d = w.dimension();
  const double inv2d = 1.0 / (2.0 * d);
  for (std::int64_t i = 0; i < w.size(); ++i) {
    double acc = 0.0;
    for (int axis = 0; axis < d; ++axis) {
      const std::int64_t lo = w.neighbor_index(i, axis, -1);
      const std::int64_t hi = w.neighbor_index(i, axis, +1);
      if (lo >= 0) acc += f[static_cast<std::size_t>(lo)];
      if (hi >= 0) acc += f[static_cast<std::size_t>(hi)];
    }
    const auto ui = static_cast<std::size_t>(i);
    out[ui] = spec.kappa * (inv2d * acc - f[ui]) + spec.potential[ui] * f[ui];
  }
}

}  // namespace

M1Solution solve_m1(const OperatorSpec& spec, InitialCondition initial,
                    double t_end, double dt, std::int64_t start_index,
                    std::int64_t delta_index) {
  if (!(t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
  if (start_index < 0 || start_index >= spec.window.size())
    throw std::invalid_argument("start index outside window");

  double vmax = 0.0;
  for (double v : spec.potential) vmax = std::max(vmax, std::fabs(v));
  const double dt_bound = 1.0 / (2.0 * (spec.kappa + vmax));
  if (!(dt > 0.0) || dt >= dt_bound)
    throw StepSizeError("dt violates the RK4 stability guard; use dt < " +
                            std::to_string(dt_bound),
                        0.5 * dt_bound);

  const auto n = static_cast<std::size_t>(spec.window.size());
  Field f(n, 0.0);
  if (initial == InitialCondition::TotalCount) {
    std::fill(f.begin(), f.end(), 1.0);
  } else {
    if (delta_index < 0 || delta_index >= spec.window.size())
      throw std::invalid_argument("delta index outside window");
    f[static_cast<std::size_t>(delta_index)] = 1.0;
  }

  const auto steps = static_cast<std::int64_t>(std::ceil(t_end / dt - 1e-12));
  const double h = t_end / static_cast<double>(steps);

  M1Solution sol;
  sol.times.reserve(static_cast<std::size_t>(steps) + 1);
  sol.m1_at_start.reserve(static_cast<std::size_t>(steps) + 1);
  sol.times.push_back(0.0);
  sol.m1_at_start.push_back(f[static_cast<std::size_t>(start_index)]);

  Field k1(n), k2(n), k3(n), k4(n), tmp(n);
  for (std::int64_t s = 0; s < steps; ++s) {
    rhs(spec, f, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = f[i] + 0.5 * h * k1[i];
    rhs(spec, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = f[i] + 0.5 * h * k2[i];
    rhs(spec, tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = f[i] + h * k3[i];
    rhs(spec, tmp, k4);
    for (std::size_t i = 0; i < n; ++i)
      f[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    sol.times.push_back(static_cast<double>(s + 1) * h);
    sol.m1_at_start.push_back(f[static_cast<std::size_t>(start_index)]);
  }
  sol.final_field = std::move(f);
  return sol;
}

}  // namespace brw
