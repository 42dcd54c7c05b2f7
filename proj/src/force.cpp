#include "nsconv/force.hpp"

#include <cmath>

namespace nsconv {

VectorField evaluate_force(const ForceParams& p, double t, const GridSpec& grid) {
  if (t < 0.0) throw std::invalid_argument("evaluate_force: t must be >= 0");
  VectorField f(grid);
  const int n = grid.resolution;
  const double scale = p.amplitude / p.kernel(t);
  const double mu2 = p.width * p.width;
  for (int i = 0; i < n; ++i) {
    const double x = grid.coord(i);
    for (int j = 0; j < n; ++j) {
      const double y = grid.coord(j);
      // r^n cos(n phi) = Re((x + iy)^n), entire in (x, y)
      Complex z(1.0, 0.0);
      for (int q = 0; q < p.mode; ++q) z *= Complex(x, y);
      const double radial = scale * z.real() * std::exp(-mu2 * (x * x + y * y));
      f.x.at(i, j) = radial * x;
      f.y.at(i, j) = radial * y;
    }
  }
  return f;
}

RadialForce::RadialForce(const ForceParams& p, const GridSpec& grid)
    : params_(p), base_(grid) {
  VectorField f = evaluate_force(p, 0.0, grid);
  fft_for(grid).forward_pair(f.x, f.y, base_.x, base_.y);
}

void RadialForce::fill(double t, SpectralVectorField& out) const {
  if (t < 0.0) throw std::invalid_argument("RadialForce: t must be >= 0");
  require_same_grid(out.x.grid, base_.x.grid);
  const double s = 1.0 / params_.kernel(t);
  for (std::size_t i = 0; i < base_.x.c.size(); ++i) {
    out.x.c[i] = base_.x.c[i] * s;
    out.y.c[i] = base_.y.c[i] * s;
  }
}

}  // namespace nsconv
