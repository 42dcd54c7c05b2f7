#include "nsconv/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nsconv {

namespace {

// The unpaired m = -N/2 mode has no real-valued first derivative; every
// first-order operator (derivative, divergence, projection) treats it as
// zero so they agree on the divergence-free subspace.
double deriv_wavenumber(const GridSpec& g, int idx) {
  const int m = g.mode(idx);
  return m == -g.resolution / 2 ? 0.0 : M_PI * m / g.half_width;
}

}  // namespace

SpectralField derivative(const SpectralField& f, int axis) {
  if (axis != 0 && axis != 1) throw std::invalid_argument("derivative: axis must be 0 or 1");
  const GridSpec& g = f.grid;
  const int n = g.resolution;
  SpectralField out(g);
  for (int ix = 0; ix < n; ++ix) {
    for (int iy = 0; iy < n; ++iy) {
      const double k = deriv_wavenumber(g, axis == 0 ? ix : iy);
      const std::size_t id = static_cast<std::size_t>(ix) * n + iy;
      out.c[id] = Complex(0.0, k) * f.c[id];
    }
  }
  return out;
}

void leray_project(SpectralVectorField& u) {
  const GridSpec& g = u.grid();
  require_same_grid(u.x.grid, u.y.grid);
  const int n = g.resolution;
  for (int ix = 0; ix < n; ++ix) {
    const double kx = deriv_wavenumber(g, ix);
    for (int iy = 0; iy < n; ++iy) {
      const double ky = deriv_wavenumber(g, iy);
      const double k2 = kx * kx + ky * ky;
      if (k2 == 0.0) continue;
      const std::size_t id = static_cast<std::size_t>(ix) * n + iy;
      const Complex d = (kx * u.x.c[id] + ky * u.y.c[id]) / k2;
      u.x.c[id] -= kx * d;
      u.y.c[id] -= ky * d;
    }
  }
}

SpectralVectorField leray_projected(const SpectralVectorField& u) {
  SpectralVectorField out = u;
  leray_project(out);
  return out;
}

ScalarField divergence(const SpectralVectorField& u) {
  SpectralField div = derivative(u.x, 0);
  SpectralField dy = derivative(u.y, 1);
  for (std::size_t i = 0; i < div.c.size(); ++i) div.c[i] += dy.c[i];
  return transform_inverse(div);
}

bool dealias_keeps(const GridSpec& g, int ix, int iy) {
  const int mx = std::abs(g.mode(ix));
  const int my = std::abs(g.mode(iy));
  return 3 * std::max(mx, my) <= g.resolution;
}

void dealias(SpectralField& f) {
  const int n = f.grid.resolution;
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy)
      if (!dealias_keeps(f.grid, ix, iy))
        f.c[static_cast<std::size_t>(ix) * n + iy] = Complex(0.0, 0.0);
}

void dealias(SpectralVectorField& u) {
  dealias(u.x);
  dealias(u.y);
}

SpectralVectorField convective_term(const SpectralVectorField& u) {
  const GridSpec& g = u.grid();
  const Fft& fft = fft_for(g);

  SpectralField dxux = derivative(u.x, 0);
  SpectralField dxuy = derivative(u.y, 0);
  SpectralField dyux = derivative(u.x, 1);
  SpectralField dyuy = derivative(u.y, 1);

  ScalarField ux(g), uy(g), gxux(g), gxuy(g), gyux(g), gyuy(g);
  fft.inverse_pair(u.x, u.y, ux, uy);
  fft.inverse_pair(dxux, dxuy, gxux, gxuy);
  fft.inverse_pair(dyux, dyuy, gyux, gyuy);

  ScalarField cx(g), cy(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    cx.v[i] = ux.v[i] * gxux.v[i] + uy.v[i] * gyux.v[i];
    cy.v[i] = ux.v[i] * gxuy.v[i] + uy.v[i] * gyuy.v[i];
  }

  SpectralVectorField out(g);
  fft.forward_pair(cx, cy, out.x, out.y);
  dealias(out);
  return out;
}

VectorField convective_term_physical(const VectorField& u) {
  const GridSpec& g = u.grid();
  const Fft& fft = fft_for(g);
  SpectralVectorField uh(g);
  fft.forward_pair(u.x, u.y, uh.x, uh.y);
  SpectralVectorField ch = convective_term(uh);
  VectorField out(g);
  fft.inverse_pair(ch.x, ch.y, out.x, out.y);
  return out;
}

double max_speed(const VectorField& u) {
  require_same_grid(u.x.grid, u.y.grid);
  double m2 = 0.0;
  for (std::size_t i = 0; i < u.x.v.size(); ++i) {
    const double s2 = u.x.v[i] * u.x.v[i] + u.y.v[i] * u.y.v[i];
    if (s2 > m2) m2 = s2;
  }
  return std::sqrt(m2);
}

double max_speed(const SpectralVectorField& u) {
  const GridSpec& g = u.grid();
  VectorField phys(g);
  fft_for(g).inverse_pair(u.x, u.y, phys.x, phys.y);
  return max_speed(phys);
}

double conjugate_symmetry_defect(const SpectralField& f) {
  const int n = f.grid.resolution;
  double worst = 0.0;
  for (int ix = 0; ix < n; ++ix) {
    const int rx = ix == 0 ? 0 : n - ix;
    for (int iy = 0; iy < n; ++iy) {
      const int ry = iy == 0 ? 0 : n - iy;
      const Complex d = f.c[static_cast<std::size_t>(ix) * n + iy] -
                        std::conj(f.c[static_cast<std::size_t>(rx) * n + ry]);
      worst = std::max(worst, std::abs(d));
    }
  }
  return worst;
}

}  // namespace nsconv
