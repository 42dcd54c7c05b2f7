#pragma once

#include "nsconv/field.hpp"

namespace nsconv {

/// FFTW-backed transforms between ScalarField and SpectralField.
///
/// Conventions: f(x) = sum_m c(m) exp(i k_m . x) with k = pi*m/L and x
/// measured from the box center.  Because the grid starts at -L, the raw DFT
/// picks up a (-1)^(mx+my) phase which is folded in here, together with the
/// 1/N^2 normalization on the forward side.  Transforms of real data produce
/// conjugate-symmetric spectra; inverse() returns the real part.
///
/// An Fft instance owns its plans and scratch buffer and must not be shared
/// across threads; use fft_for() for a per-thread cached instance.
class Fft {
 public:
  explicit Fft(const GridSpec& grid);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  const GridSpec& grid() const { return grid_; }

  void forward(const ScalarField& in, SpectralField& out) const;
  void inverse(const SpectralField& in, ScalarField& out) const;
  SpectralField forward(const ScalarField& in) const;
  ScalarField inverse(const SpectralField& in) const;

  // Two real transforms in one complex pass (a + i*b trick).
  void forward_pair(const ScalarField& a, const ScalarField& b,
                    SpectralField& out_a, SpectralField& out_b) const;
  void inverse_pair(const SpectralField& a, const SpectralField& b,
                    ScalarField& out_a, ScalarField& out_b) const;

 private:
  GridSpec grid_;
  mutable std::vector<Complex> buf_;
  void* plan_fwd_ = nullptr;
  void* plan_bwd_ = nullptr;
};

/// Thread-local cache of plans keyed by grid.
const Fft& fft_for(const GridSpec& grid);

SpectralField transform_forward(const ScalarField& f);
ScalarField transform_inverse(const SpectralField& f);

}  // namespace nsconv
