#include "nsconv/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>

namespace nsconv {

namespace {

// FFTW planner functions are not thread-safe; execution on distinct buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

inline double checkerboard(std::size_t i, int n) {
  std::size_t ix = i / n, iy = i % n;
  return ((ix + iy) & 1u) ? -1.0 : 1.0;
}

}  // namespace

Fft::Fft(const GridSpec& grid) : grid_(grid), buf_(grid.size()) {
  const int n = grid_.resolution;
  auto* ptr = reinterpret_cast<fftw_complex*>(buf_.data());
  std::lock_guard<std::mutex> lock(planner_mutex());
  plan_fwd_ = fftw_plan_dft_2d(n, n, ptr, ptr, FFTW_FORWARD, FFTW_ESTIMATE);
  plan_bwd_ = fftw_plan_dft_2d(n, n, ptr, ptr, FFTW_BACKWARD, FFTW_ESTIMATE);
}

Fft::~Fft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
}

void Fft::forward(const ScalarField& in, SpectralField& out) const {
  require_same_grid(in.grid, grid_);
  const int n = grid_.resolution;
  const std::size_t sz = grid_.size();
  if (out.grid != grid_) out = SpectralField(grid_);
  for (std::size_t i = 0; i < sz; ++i) buf_[i] = Complex(in.v[i], 0.0);
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  const double norm = 1.0 / static_cast<double>(sz);
  for (std::size_t i = 0; i < sz; ++i) out.c[i] = buf_[i] * (checkerboard(i, n) * norm);
}

void Fft::inverse(const SpectralField& in, ScalarField& out) const {
  require_same_grid(in.grid, grid_);
  const int n = grid_.resolution;
  const std::size_t sz = grid_.size();
  if (out.grid != grid_) out = ScalarField(grid_);
  for (std::size_t i = 0; i < sz; ++i) buf_[i] = in.c[i] * checkerboard(i, n);
  fftw_execute(static_cast<fftw_plan>(plan_bwd_));
  for (std::size_t i = 0; i < sz; ++i) out.v[i] = buf_[i].real();
}

SpectralField Fft::forward(const ScalarField& in) const {
  SpectralField out(grid_);
  forward(in, out);
  return out;
}

ScalarField Fft::inverse(const SpectralField& in) const {
  ScalarField out(grid_);
  inverse(in, out);
  return out;
}

void Fft::forward_pair(const ScalarField& a, const ScalarField& b,
                       SpectralField& out_a, SpectralField& out_b) const {
  require_same_grid(a.grid, grid_);
  require_same_grid(b.grid, grid_);
  const int n = grid_.resolution;
  const std::size_t sz = grid_.size();
  if (out_a.grid != grid_) out_a = SpectralField(grid_);
  if (out_b.grid != grid_) out_b = SpectralField(grid_);
  for (std::size_t i = 0; i < sz; ++i) buf_[i] = Complex(a.v[i], b.v[i]);
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  // F(a + ib)(m) = A(m) + i B(m); recover via F(-m) using hermitian split.
  const double norm = 1.0 / static_cast<double>(sz);
  for (int ix = 0; ix < n; ++ix) {
    const int rx = ix == 0 ? 0 : n - ix;
    for (int iy = 0; iy < n; ++iy) {
      const int ry = iy == 0 ? 0 : n - iy;
      const std::size_t id = static_cast<std::size_t>(ix) * n + iy;
      const std::size_t rid = static_cast<std::size_t>(rx) * n + ry;
      const Complex f = buf_[id];
      const Complex g = std::conj(buf_[rid]);
      const double s = checkerboard(id, n) * norm;
      out_a.c[id] = 0.5 * s * (f + g);
      out_b.c[id] = Complex(0.0, -0.5) * (s * (f - g));
    }
  }
}

void Fft::inverse_pair(const SpectralField& a, const SpectralField& b,
                       ScalarField& out_a, ScalarField& out_b) const {
  require_same_grid(a.grid, grid_);
  require_same_grid(b.grid, grid_);
  const int n = grid_.resolution;
  const std::size_t sz = grid_.size();
  if (out_a.grid != grid_) out_a = ScalarField(grid_);
  if (out_b.grid != grid_) out_b = ScalarField(grid_);
  for (std::size_t i = 0; i < sz; ++i)
    buf_[i] = (a.c[i] + Complex(0.0, 1.0) * b.c[i]) * checkerboard(i, n);
  fftw_execute(static_cast<fftw_plan>(plan_bwd_));
  for (std::size_t i = 0; i < sz; ++i) {
    out_a.v[i] = buf_[i].real();
    out_b.v[i] = buf_[i].imag();
  }
}

const Fft& fft_for(const GridSpec& grid) {
  thread_local std::map<std::pair<double, int>, std::unique_ptr<Fft>> cache;
  auto key = std::make_pair(grid.half_width, grid.resolution);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, std::make_unique<Fft>(grid)).first;
  return *it->second;
}

SpectralField transform_forward(const ScalarField& f) { return fft_for(f.grid).forward(f); }

ScalarField transform_inverse(const SpectralField& f) { return fft_for(f.grid).inverse(f); }

}  // namespace nsconv
