#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "nsconv/force.hpp"

namespace nsconv {

/// Thrown when a solution field stops being finite.
struct SolverAbort : std::runtime_error {
  int step;
  double time;
  SolverAbort(int step_, double time_)
      : std::runtime_error("solver aborted: non-finite field at step " +
                           std::to_string(step_) + ", t = " + std::to_string(time_)),
        step(step_),
        time(time_) {}
};

/// Thinned record of a velocity evolution.  Spectral snapshots are kept at
/// step 0, every stride-th step and the final step; max_speed covers every
/// step of the walk, not just the stored ones.
struct VelocityHistory {
  GridSpec grid;
  TimeGrid time_grid;
  int stride = 5;
  std::vector<int> stored_steps;
  std::vector<SpectralVectorField> snapshots;
  double max_speed = 0.0;

  double time_at(std::size_t idx) const { return time_grid.time(stored_steps[idx]); }
  const SpectralVectorField& last() const { return snapshots.back(); }
};

/// March the forced Stokes equation u_t = nu Lap u + P f from u(0) = 0.
///
/// Each mode follows the Duhamel form
///   u(t+dt) = E u(t) + int_t^(t+dt) e^(-nu |k|^2 (t+dt-s)) Pf(s) ds,
///   E = e^(-nu |k|^2 dt),
/// with the integral approximated by the trapezoid rule in s.  The force
/// provider is projected before use, so every iterate is divergence-free by
/// construction.
VelocityHistory stokes_solve(const SpectralForce& force, double viscosity,
                             const GridSpec& grid, const TimeGrid& time_grid,
                             int stride = 5);

}  // namespace nsconv
