#pragma once

#include <functional>

#include "nsconv/fft.hpp"

namespace nsconv {

/// Parameters of the radial applied force
///   f_r = F r^(n+1) exp(-mu^2 r^2) cos(n phi) / (4 mu^2 nu t + 1)^2,
///   f_phi = 0.
struct ForceParams {
  int mode = 1;            // angular wavenumber n
  double amplitude = 1.0;  // F
  double width = 1.0;      // mu (inverse length scale)
  double viscosity = 1.0;  // nu

  ForceParams() = default;
  ForceParams(int n, double F, double mu, double nu)
      : mode(n), amplitude(F), width(mu), viscosity(nu) {
    if (mode < 1) throw std::invalid_argument("ForceParams: mode must be >= 1");
    if (!(amplitude >= 0.0)) throw std::invalid_argument("ForceParams: amplitude must be >= 0");
    if (!(width > 0.0)) throw std::invalid_argument("ForceParams: width must be positive");
    if (!(viscosity > 0.0)) throw std::invalid_argument("ForceParams: viscosity must be positive");
  }

  // time decay factor (4 mu^2 nu t + 1)^2
  double kernel(double t) const {
    const double a = 4.0 * width * width * viscosity * t + 1.0;
    return a * a;
  }
};

/// Force samples on the grid at time t; rejects t < 0.
VectorField evaluate_force(const ForceParams& p, double t, const GridSpec& grid);

/// Spectral force provider consumed by the Stokes stepper.  fill() writes the
/// coefficients of f(., t) into out, which the caller has sized to its grid.
class SpectralForce {
 public:
  virtual ~SpectralForce() = default;
  virtual void fill(double t, SpectralVectorField& out) const = 0;
};

/// The radial force above; separable in space and time, so the spatial
/// transform is done once at construction and fill() only rescales it.
class RadialForce final : public SpectralForce {
 public:
  RadialForce(const ForceParams& p, const GridSpec& grid);
  void fill(double t, SpectralVectorField& out) const override;
  const ForceParams& params() const { return params_; }

 private:
  ForceParams params_;
  SpectralVectorField base_;
};

/// Adapter for closed-form or test forces.
class FunctionForce final : public SpectralForce {
 public:
  explicit FunctionForce(std::function<void(double, SpectralVectorField&)> fn)
      : fn_(std::move(fn)) {}
  void fill(double t, SpectralVectorField& out) const override { fn_(t, out); }

 private:
  std::function<void(double, SpectralVectorField&)> fn_;
};

}  // namespace nsconv
