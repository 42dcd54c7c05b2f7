#include "nsconv/picard.hpp"

#include <algorithm>
#include <cmath>

#include "nsconv/spectral.hpp"

namespace nsconv {

namespace {

// Piecewise-linear interpolant of precomputed snapshots, negated: the
// second-step forcing -(u1.grad)u1 at arbitrary quadrature times.
class NegatedSnapshotForce final : public SpectralForce {
 public:
  NegatedSnapshotForce(std::vector<double> times, std::vector<SpectralVectorField> snaps)
      : times_(std::move(times)), snaps_(std::move(snaps)) {}

  void fill(double t, SpectralVectorField& out) const override {
    const auto hi = std::upper_bound(times_.begin(), times_.end(), t);
    std::size_t i1 = std::min<std::size_t>(hi - times_.begin(), times_.size() - 1);
    std::size_t i0 = i1 == 0 ? 0 : i1 - 1;
    double w = 0.0;
    if (i1 > i0) w = (t - times_[i0]) / (times_[i1] - times_[i0]);
    w = std::clamp(w, 0.0, 1.0);
    const SpectralVectorField& a = snaps_[i0];
    const SpectralVectorField& b = snaps_[i1];
    const double wa = -(1.0 - w), wb = -w;
    for (std::size_t i = 0; i < a.x.c.size(); ++i) {
      out.x.c[i] = wa * a.x.c[i] + wb * b.x.c[i];
      out.y.c[i] = wa * a.y.c[i] + wb * b.y.c[i];
    }
  }

 private:
  std::vector<double> times_;
  std::vector<SpectralVectorField> snaps_;
};

}  // namespace

VelocityHistory first_iterate(const ForceParams& p, const GridSpec& grid,
                              const TimeGrid& tg, int stride) {
  RadialForce force(p, grid);
  return stokes_solve(force, p.viscosity, grid, tg, stride);
}

VelocityHistory second_increment(const VelocityHistory& u1, const ForceParams& p,
                                 const GridSpec& grid, const TimeGrid& tg) {
  require_same_grid(u1.grid, grid);
  if (!(u1.time_grid == tg))
    throw std::invalid_argument("second_increment: time grid mismatch with history");

  std::vector<double> times(u1.stored_steps.size());
  std::vector<SpectralVectorField> conv;
  conv.reserve(u1.snapshots.size());
  for (std::size_t i = 0; i < u1.snapshots.size(); ++i) {
    times[i] = u1.time_at(i);
    conv.push_back(convective_term(u1.snapshots[i]));
  }
  NegatedSnapshotForce force(std::move(times), std::move(conv));
  return stokes_solve(force, p.viscosity, grid, tg, u1.stride);
}

IterationResult run_iteration(const ForceParams& p, const GridSpec& grid,
                              const TimeGrid& tg, int stride) {
  IterationResult res;
  res.u1_history = first_iterate(p, grid, tg, stride);
  res.u2star_history = second_increment(res.u1_history, p, grid, tg);
  res.max_u1 = res.u1_history.max_speed;
  res.max_u2star = res.u2star_history.max_speed;
  if (res.max_u1 > 0.0) res.ratio = res.max_u2star / res.max_u1;
  res.degenerate = (res.max_u1 == 0.0 && p.amplitude > 0.0);
  return res;
}

double bilinear_sample(const ScalarField& f, double x, double y) {
  const GridSpec& g = f.grid;
  const int n = g.resolution;
  const double fx = (x + g.half_width) / g.dx();
  const double fy = (y + g.half_width) / g.dx();
  const int ix = static_cast<int>(std::floor(fx));
  const int iy = static_cast<int>(std::floor(fy));
  const double ax = fx - ix, ay = fy - iy;
  const int i0 = ((ix % n) + n) % n, j0 = ((iy % n) + n) % n;
  const int i1 = (i0 + 1) % n, j1 = (j0 + 1) % n;
  return (1.0 - ax) * ((1.0 - ay) * f.at(i0, j0) + ay * f.at(i0, j1)) +
         ax * ((1.0 - ay) * f.at(i1, j0) + ay * f.at(i1, j1));
}

ScalarField amplitude_field(const VelocityHistory& h) {
  VectorField phys(h.grid);
  fft_for(h.grid).inverse_pair(h.last().x, h.last().y, phys.x, phys.y);
  ScalarField amp(h.grid);
  for (std::size_t i = 0; i < amp.v.size(); ++i)
    amp.v[i] = std::hypot(phys.x.v[i], phys.y.v[i]);
  return amp;
}

std::vector<ProfileSample> extract_profiles(const IterationResult& res,
                                            const std::vector<double>& radii,
                                            const std::vector<double>& angles) {
  const GridSpec& g = res.u1_history.grid;
  const double r_max = g.half_width - g.dx();
  for (double r : radii)
    if (!(r >= 0.0 && r <= r_max))
      throw std::invalid_argument("extract_profiles: radius outside grid");
  for (double a : angles)
    if (!(a >= 0.0 && a <= M_PI))
      throw std::invalid_argument("extract_profiles: angle outside [0, pi]");

  ScalarField amp1 = amplitude_field(res.u1_history);
  ScalarField amp2 = amplitude_field(res.u2star_history);

  std::vector<ProfileSample> out;
  out.reserve(radii.size() * angles.size());
  for (double r : radii) {
    for (double a : angles) {
      const double x = r * std::cos(a), y = r * std::sin(a);
      ProfileSample s;
      s.radius = r;
      s.angle = a;
      s.amp1 = bilinear_sample(amp1, x, y);
      s.amp2 = bilinear_sample(amp2, x, y);
      out.push_back(s);
    }
  }
  return out;
}

}  // namespace nsconv
