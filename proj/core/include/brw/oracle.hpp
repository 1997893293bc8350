#pragma once

#include <stdexcept>
#include <vector>

#include "brw/lattice.hpp"
#include "brw/medium.hpp"

namespace brw {

struct StepSizeError : std::runtime_error {
  StepSizeError(const std::string& msg, double suggested)
      : std::runtime_error(msg), suggested_dt(suggested) {}
  double suggested_dt;
};

// Real field on a lattice window, dense, indexed by point index.
using Field = std::vector<double>;

// kappa * (lattice Laplacian) + V, Dirichlet zero outside the window.
struct OperatorSpec {
  LatticeWindow window;
  double kappa = 1.0;
  Field potential;  // V(x) per window point

  OperatorSpec(LatticeWindow w, double kappa_, Field v);
};

// Builds the operator for a medium realization; the potential is copied by
// coordinates, so the oracle window may differ from the simulation window
// (off-window sources contribute nothing).
OperatorSpec make_operator_spec(const MediumRealization& medium,
                                const LatticeWindow& oracle_window,
                                double kappa);

// (A f)(x) = kappa * ((1/2d) * sum_neighbors f(y) - f(x)), zero outside.
Field apply_generator(const OperatorSpec& spec, const Field& f);

enum class InitialCondition { TotalCount, LocalDelta };

struct M1Solution {
  std::vector<double> times;        // every accepted step, starting at 0
  std::vector<double> m1_at_start;  // m1(t, start point)
  Field final_field;                // solution at t_end
};

// Integrates d/dt m1 = A m1 + V m1 with classical RK4.
// TotalCount starts from f = 1; LocalDelta from the indicator of delta_site.
// Enforces the stability guard dt < 1/(2(kappa + max|V|)).
M1Solution solve_m1(const OperatorSpec& spec, InitialCondition initial,
                    double t_end, double dt, std::int64_t start_index,
                    std::int64_t delta_index = 0);

}  // namespace brw
