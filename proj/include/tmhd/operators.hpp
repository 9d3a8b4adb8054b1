#pragma once

#include "tmhd/field.hpp"

namespace tmhd {

// Spectral differential and projection operators. All inputs must be in
// Fourier representation; all are exact multiplier applications. Odd
// derivatives (gradient, divergence, curl) use a zero multiplier on the
// unpaired Nyquist plane.

VectorField gradient(const ScalarField& f);
ScalarField divergence(const VectorField& u);
ScalarField laplacian(const ScalarField& f);
VectorField laplacian(const VectorField& u);
VectorField curl(const VectorField& u);

// Leray-Helmholtz projection: multiplier (delta_ij - k_i k_j / |k|^2) per
// mode, mean mode passed through unchanged. Idempotent; output divergence
// vanishes to rounding.
VectorField leray_project(const VectorField& u);
SpectralState leray_project(const SpectralState& y);

// Two-thirds rule: zero every coefficient with any 3|k_i| > n.
ScalarField dealias(const ScalarField& f);
VectorField dealias(const VectorField& u);

// Max |coefficient| of the spectral divergence; the divergence-free
// diagnostic used everywhere.
double max_divergence(const VectorField& u);

// Zero the unpaired Nyquist planes (|k_i| = n/2); state hygiene applied to
// assembled nonlinear terms so trajectories stay in the cleanly
// differentiable mode set.
void zero_nyquist(VectorField& u);

}  // namespace tmhd
