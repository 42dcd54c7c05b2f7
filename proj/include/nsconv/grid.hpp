#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace nsconv {

/// Uniform periodic grid on the square box [-L, L)^2.
///
/// Point (i, j) sits at x = -L + i*dx, y = -L + j*dx with dx = 2L/N, so the
/// origin is a grid point (i = j = N/2).  Spectral mode indices m run over
/// [-N/2, N/2) with wavenumber k = pi*m/L.
struct GridSpec {
  double half_width = 8.0;
  int resolution = 256;

  GridSpec() = default;
  GridSpec(double half_width_, int resolution_)
      : half_width(half_width_), resolution(resolution_) {
    if (!(half_width > 0.0))
      throw std::invalid_argument("GridSpec: half_width must be positive");
    if (resolution < 16 || resolution % 2 != 0)
      throw std::invalid_argument("GridSpec: resolution must be even and >= 16");
  }

  double dx() const { return 2.0 * half_width / resolution; }
  double coord(int i) const { return -half_width + i * dx(); }

  // mode index for array index j, in [-N/2, N/2)
  int mode(int j) const { return j < resolution / 2 ? j : j - resolution; }
  double wavenumber(int j) const { return M_PI * mode(j) / half_width; }

  std::size_t size() const {
    return static_cast<std::size_t>(resolution) * resolution;
  }

  bool operator==(const GridSpec&) const = default;
};

/// Uniform time discretization of [0, t_final] with timestamps t_m = m*dt.
struct TimeGrid {
  double t_final = 1.0;
  int steps = 200;

  TimeGrid() = default;
  TimeGrid(double t_final_, int steps_) : t_final(t_final_), steps(steps_) {
    if (!(t_final > 0.0))
      throw std::invalid_argument("TimeGrid: t_final must be positive");
    if (steps < 1) throw std::invalid_argument("TimeGrid: steps must be >= 1");
  }

  double dt() const { return t_final / steps; }
  double time(int m) const { return t_final * m / steps; }

  bool operator==(const TimeGrid&) const = default;
};

}  // namespace nsconv
