#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "nsconv/grid.hpp"

namespace nsconv {

using Complex = std::complex<double>;

/// Real scalar samples on a GridSpec, row-major: index(i, j) = i*N + j where
/// i is the x index and j the y index.
struct ScalarField {
  GridSpec grid;
  std::vector<double> v;

  ScalarField() = default;
  explicit ScalarField(const GridSpec& g) : grid(g), v(g.size(), 0.0) {}

  double& at(int i, int j) { return v[static_cast<std::size_t>(i) * grid.resolution + j]; }
  double at(int i, int j) const { return v[static_cast<std::size_t>(i) * grid.resolution + j]; }
};

/// Spectral coefficients c(m) on the same index layout as ScalarField; the
/// array index j corresponds to mode grid.mode(j).  Coefficients follow the
/// mean-preserving convention: c(0) equals the field average, and a field
/// cos(pi*m0*x/L) has c = 1/2 at modes +-m0.
struct SpectralField {
  GridSpec grid;
  std::vector<Complex> c;

  SpectralField() = default;
  explicit SpectralField(const GridSpec& g) : grid(g), c(g.size(), Complex(0.0, 0.0)) {}

  Complex& at(int i, int j) { return c[static_cast<std::size_t>(i) * grid.resolution + j]; }
  Complex at(int i, int j) const { return c[static_cast<std::size_t>(i) * grid.resolution + j]; }
};

struct VectorField {
  ScalarField x, y;

  VectorField() = default;
  explicit VectorField(const GridSpec& g) : x(g), y(g) {}
  const GridSpec& grid() const { return x.grid; }
};

struct SpectralVectorField {
  SpectralField x, y;

  SpectralVectorField() = default;
  explicit SpectralVectorField(const GridSpec& g) : x(g), y(g) {}
  const GridSpec& grid() const { return x.grid; }
};

inline void require_same_grid(const GridSpec& a, const GridSpec& b) {
  if (!(a == b)) throw std::invalid_argument("grid mismatch between operands");
}

}  // namespace nsconv
