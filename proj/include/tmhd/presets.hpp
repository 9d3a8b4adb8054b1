#pragma once

#include <cstdint>
#include <string>

#include "tmhd/field.hpp"

namespace tmhd {

// Taylor-Green vortex, purely hydrodynamic (B = 0):
//   v = a (sin x cos y cos z, -cos x sin y cos z, 0)
SpectralState taylor_green(const Grid& grid, double amplitude);

// Three-dimensional Orszag-Tang configuration:
//   v = a (-2 sin y, 2 sin x, 0)
//   B = 0.8 a (-2 sin 2y + sin z, 2 sin x + sin z, sin x + sin y)
SpectralState orszag_tang_3d(const Grid& grid, double amplitude);

// Seeded random divergence-free state: unit-normal Fourier coefficients on
// 0 < |k_i| <= k_max (conjugate-symmetrized, projected), rescaled so the
// pointwise magnitude maximum equals `amplitude`.
SpectralState random_band(const Grid& grid, std::uint64_t seed, int k_max, double amplitude);

// Div-free random state without amplitude normalization; test plumbing for
// property sweeps (coefficients scaled by `scale`).
SpectralState random_band_raw(const Grid& grid, std::uint64_t seed, int k_max, double scale);

// Forcing presets (time-independent, divergence-free, Fourier):
//   none        zero
//   constant_v  f_v = a e_1, f_B = 0
//   sin_shear   f_v = a (0, sin x, 0), f_B = 0
StateFields make_forcing(const Grid& grid, const std::string& preset, double amplitude);

}  // namespace tmhd
