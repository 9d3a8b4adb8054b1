#pragma once

#include <cstddef>
#include <numbers>
#include <stdexcept>

namespace tmhd {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Uniform periodic grid on [0, L)^3 with n points per axis. Fourier modes
// carry integer wavenumbers k in [-n/2, n/2); physical wavenumbers are
// kappa = 2*pi*k / L. The two-thirds mask keeps a mode iff 3*|k_i| <= n on
// every axis.
struct Grid {
    int n = 0;
    double box_length = kTwoPi;

    bool operator==(const Grid&) const = default;

    static Grid make(int n, double box_length = kTwoPi) {
        if (n < 8 || n % 2 != 0) throw std::invalid_argument("grid: n must be even and >= 8");
        if (!(box_length > 0.0)) throw std::invalid_argument("grid: box_length must be positive");
        return Grid{n, box_length};
    }

    std::size_t size() const { return static_cast<std::size_t>(n) * n * n; }
    double dx() const { return box_length / n; }
    double cell_volume() const { return dx() * dx() * dx(); }
    double volume() const { return box_length * box_length * box_length; }

    // Integer wavenumber for FFT index i in [0, n).
    int wavenumber(int idx) const { return idx <= n / 2 - 1 ? idx : idx - n; }

    double kappa(int idx) const { return wavenumber(idx) * (kTwoPi / box_length); }

    // Odd-derivative multiplier: the unpaired Nyquist mode gets zero.
    double kappa_odd(int idx) const {
        const int k = wavenumber(idx);
        return 2 * k == -n ? 0.0 : k * (kTwoPi / box_length);
    }

    bool dealias_keep(int kx, int ky, int kz) const {
        return 3 * std::abs(kx) <= n && 3 * std::abs(ky) <= n && 3 * std::abs(kz) <= n;
    }

    std::size_t flat(int ix, int iy, int iz) const {
        return (static_cast<std::size_t>(ix) * n + iy) * n + iz;
    }

    double coord(int idx) const { return box_length * idx / n; }
};

}  // namespace tmhd
