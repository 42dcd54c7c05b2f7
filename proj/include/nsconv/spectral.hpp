#pragma once

#include "nsconv/fft.hpp"

namespace nsconv {

/// d/dx (axis 0) or d/dy (axis 1) as multiplication by i*k.
SpectralField derivative(const SpectralField& f, int axis);

/// Project onto divergence-free fields: u - k (k.u)/|k|^2, identity at k = 0.
void leray_project(SpectralVectorField& u);
SpectralVectorField leray_projected(const SpectralVectorField& u);

/// Physical-space divergence of a spectral vector field.
ScalarField divergence(const SpectralVectorField& u);

/// Zero every mode with max(|mx|, |my|) > N/3 (2/3 rule).
void dealias(SpectralField& f);
void dealias(SpectralVectorField& u);
bool dealias_keeps(const GridSpec& g, int ix, int iy);

/// (u.grad)u evaluated pseudo-spectrally; products formed in physical space,
/// result transformed back and dealiased.
SpectralVectorField convective_term(const SpectralVectorField& u);
VectorField convective_term_physical(const VectorField& u);

/// max over grid points of sqrt(ux^2 + uy^2).
double max_speed(const VectorField& u);
double max_speed(const SpectralVectorField& u);

/// Largest deviation from conjugate symmetry c(-m) = conj(c(m)).
double conjugate_symmetry_defect(const SpectralField& f);

}  // namespace nsconv
