#pragma once

#include <optional>

#include "nsconv/stokes.hpp"

namespace nsconv {

/// First iterate: Stokes flow driven by the applied radial force.
VelocityHistory first_iterate(const ForceParams& p, const GridSpec& grid,
                              const TimeGrid& tg, int stride = 5);

/// Second-step increment u2* (so the second iterate is u1 + u2*): Stokes flow
/// driven by -(u1.grad)u1.  The convective term is evaluated on the stored
/// snapshots of u1 and linearly interpolated in time at the quadrature nodes.
VelocityHistory second_increment(const VelocityHistory& u1, const ForceParams& p,
                                 const GridSpec& grid, const TimeGrid& tg);

struct IterationResult {
  VelocityHistory u1_history;
  VelocityHistory u2star_history;
  double max_u1 = 0.0;
  double max_u2star = 0.0;
  std::optional<double> ratio;  // max_u2star/max_u1, absent when max_u1 = 0
  bool degenerate = false;      // zero response to a nonzero force
};

IterationResult run_iteration(const ForceParams& p, const GridSpec& grid,
                              const TimeGrid& tg, int stride = 5);

struct ProfileSample {
  double radius = 0.0;
  double angle = 0.0;
  double amp1 = 0.0;  // |u1| at (r cos phi, r sin phi), final timestamp
  double amp2 = 0.0;  // |u2*| there
};

/// Bilinear samples of the final-time amplitude fields at polar points,
/// ordered radius-major.  Radii must lie in [0, L - dx], angles in [0, pi].
std::vector<ProfileSample> extract_profiles(const IterationResult& res,
                                            const std::vector<double>& radii,
                                            const std::vector<double>& angles);

/// Bilinear interpolation of a scalar field at (x, y), periodic wrap.
double bilinear_sample(const ScalarField& f, double x, double y);

/// Pointwise sqrt(ux^2 + uy^2) of the last stored snapshot.
ScalarField amplitude_field(const VelocityHistory& h);

}  // namespace nsconv
