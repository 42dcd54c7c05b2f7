#include "nsconv/stokes.hpp"

#include <cmath>

#include "nsconv/spectral.hpp"

namespace nsconv {

VelocityHistory stokes_solve(const SpectralForce& force, double viscosity,
                             const GridSpec& grid, const TimeGrid& time_grid,
                             int stride) {
  if (!(viscosity > 0.0)) throw std::invalid_argument("stokes_solve: viscosity must be positive");
  if (stride < 1) throw std::invalid_argument("stokes_solve: stride must be >= 1");

  const int n = grid.resolution;
  const std::size_t sz = grid.size();
  const double dt = time_grid.dt();
  const Fft& fft = fft_for(grid);

  // integrating factor per mode
  std::vector<double> decay(sz);
  for (int ix = 0; ix < n; ++ix) {
    const double kx = grid.wavenumber(ix);
    for (int iy = 0; iy < n; ++iy) {
      const double ky = grid.wavenumber(iy);
      decay[static_cast<std::size_t>(ix) * n + iy] =
          std::exp(-viscosity * (kx * kx + ky * ky) * dt);
    }
  }

  VelocityHistory hist;
  hist.grid = grid;
  hist.time_grid = time_grid;
  hist.stride = stride;

  SpectralVectorField u(grid);
  SpectralVectorField f_cur(grid), f_next(grid);
  force.fill(0.0, f_cur);
  leray_project(f_cur);

  hist.stored_steps.push_back(0);
  hist.snapshots.push_back(u);

  VectorField phys(grid);
  for (int m = 0; m < time_grid.steps; ++m) {
    force.fill(time_grid.time(m + 1), f_next);
    leray_project(f_next);
    const double h = 0.5 * dt;
    for (std::size_t i = 0; i < sz; ++i) {
      const double e = decay[i];
      u.x.c[i] = e * (u.x.c[i] + h * f_cur.x.c[i]) + h * f_next.x.c[i];
      u.y.c[i] = e * (u.y.c[i] + h * f_cur.y.c[i]) + h * f_next.y.c[i];
    }
    fft.inverse_pair(u.x, u.y, phys.x, phys.y);
    double m2 = 0.0;
    for (std::size_t i = 0; i < sz; ++i) {
      const double s2 = phys.x.v[i] * phys.x.v[i] + phys.y.v[i] * phys.y.v[i];
      // negated comparison so NaN (unordered against any max) reaches the
      // finiteness check instead of being skipped
      if (!(s2 <= m2)) {
        if (!std::isfinite(s2)) throw SolverAbort(m + 1, time_grid.time(m + 1));
        m2 = s2;
      }
    }
    hist.max_speed = std::max(hist.max_speed, std::sqrt(m2));
    if ((m + 1) % stride == 0 || m + 1 == time_grid.steps) {
      if (hist.stored_steps.back() != m + 1) {
        hist.stored_steps.push_back(m + 1);
        hist.snapshots.push_back(u);
      }
    }
    std::swap(f_cur, f_next);
  }
  return hist;
}

}  // namespace nsconv
