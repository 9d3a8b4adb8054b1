#include "tmhd/operators.hpp"

#include <cmath>

#include "tmhd/parallel.hpp"

namespace tmhd {
namespace {

const cplx kI{0.0, 1.0};

// Visit every mode: body(flat, kappa_x, kappa_y, kappa_z) with odd-derivative
// (Nyquist-safe) wavenumbers.
template <typename F>
void for_modes(const Grid& g, F&& body) {
    const int n = g.n;
    parallel_for(static_cast<std::size_t>(n) * n, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t xy = lo; xy < hi; ++xy) {
            const int ix = static_cast<int>(xy) / n;
            const int iy = static_cast<int>(xy) % n;
            const double kx = g.kappa_odd(ix);
            const double ky = g.kappa_odd(iy);
            std::size_t flat = xy * n;
            for (int iz = 0; iz < n; ++iz, ++flat) body(flat, kx, ky, g.kappa_odd(iz));
        }
    });
}

void require_fourier(Rep rep) {
    if (rep != Rep::fourier) throw std::logic_error("spectral operator: field must be in Fourier representation");
}

}  // namespace

VectorField gradient(const ScalarField& f) {
    require_fourier(f.rep());
    const Grid& g = f.grid();
    VectorField out(g, Rep::fourier);
    const auto& src = f.spec();
    auto& ox = out[0].spec();
    auto& oy = out[1].spec();
    auto& oz = out[2].spec();
    for_modes(g, [&](std::size_t i, double kx, double ky, double kz) {
        const cplx ic = kI * src[i];
        ox[i] = kx * ic;
        oy[i] = ky * ic;
        oz[i] = kz * ic;
    });
    return out;
}

ScalarField divergence(const VectorField& u) {
    require_fourier(u.rep());
    const Grid& g = u.grid();
    ScalarField out(g, Rep::fourier);
    const auto& sx = u[0].spec();
    const auto& sy = u[1].spec();
    const auto& sz = u[2].spec();
    auto& dst = out.spec();
    for_modes(g, [&](std::size_t i, double kx, double ky, double kz) {
        dst[i] = kI * (kx * sx[i] + ky * sy[i] + kz * sz[i]);
    });
    return out;
}

ScalarField laplacian(const ScalarField& f) {
    require_fourier(f.rep());
    const Grid& g = f.grid();
    ScalarField out(g, Rep::fourier);
    const auto& src = f.spec();
    auto& dst = out.spec();
    const int n = g.n;
    parallel_for(static_cast<std::size_t>(n) * n, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t xy = lo; xy < hi; ++xy) {
            const int ix = static_cast<int>(xy) / n;
            const int iy = static_cast<int>(xy) % n;
            const double kx = g.kappa(ix);
            const double ky = g.kappa(iy);
            std::size_t flat = xy * n;
            for (int iz = 0; iz < n; ++iz, ++flat) {
                const double kz = g.kappa(iz);
                dst[flat] = -(kx * kx + ky * ky + kz * kz) * src[flat];
            }
        }
    });
    return out;
}

VectorField laplacian(const VectorField& u) {
    VectorField out;
    for (int c = 0; c < 3; ++c) out.comp[c] = laplacian(u[c]);
    return out;
}

VectorField curl(const VectorField& u) {
    require_fourier(u.rep());
    const Grid& g = u.grid();
    VectorField out(g, Rep::fourier);
    const auto& sx = u[0].spec();
    const auto& sy = u[1].spec();
    const auto& sz = u[2].spec();
    auto& ox = out[0].spec();
    auto& oy = out[1].spec();
    auto& oz = out[2].spec();
    for_modes(g, [&](std::size_t i, double kx, double ky, double kz) {
        ox[i] = kI * (ky * sz[i] - kz * sy[i]);
        oy[i] = kI * (kz * sx[i] - kx * sz[i]);
        oz[i] = kI * (kx * sy[i] - ky * sx[i]);
    });
    return out;
}

VectorField leray_project(const VectorField& u) {
    require_fourier(u.rep());
    const Grid& g = u.grid();
    VectorField out(g, Rep::fourier);
    const auto& sx = u[0].spec();
    const auto& sy = u[1].spec();
    const auto& sz = u[2].spec();
    auto& ox = out[0].spec();
    auto& oy = out[1].spec();
    auto& oz = out[2].spec();
    for_modes(g, [&](std::size_t i, double kx, double ky, double kz) {
        const double k2 = kx * kx + ky * ky + kz * kz;
        if (k2 == 0.0) {
            ox[i] = sx[i];
            oy[i] = sy[i];
            oz[i] = sz[i];
            return;
        }
        const cplx kdotu = (kx * sx[i] + ky * sy[i] + kz * sz[i]) / k2;
        ox[i] = sx[i] - kx * kdotu;
        oy[i] = sy[i] - ky * kdotu;
        oz[i] = sz[i] - kz * kdotu;
    });
    return out;
}

SpectralState leray_project(const SpectralState& y) {
    SpectralState out;
    out.v = leray_project(y.v);
    out.B = leray_project(y.B);
    out.time = y.time;
    return out;
}

ScalarField dealias(const ScalarField& f) {
    require_fourier(f.rep());
    const Grid& g = f.grid();
    ScalarField out = f;
    auto& dst = out.spec();
    const int n = g.n;
    parallel_for(static_cast<std::size_t>(n) * n, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t xy = lo; xy < hi; ++xy) {
            const int ix = static_cast<int>(xy) / n;
            const int iy = static_cast<int>(xy) % n;
            const int kx = g.wavenumber(ix);
            const int ky = g.wavenumber(iy);
            std::size_t flat = xy * n;
            for (int iz = 0; iz < n; ++iz, ++flat) {
                if (!g.dealias_keep(kx, ky, g.wavenumber(iz))) dst[flat] = cplx{0.0, 0.0};
            }
        }
    });
    return out;
}

VectorField dealias(const VectorField& u) {
    VectorField out;
    for (int c = 0; c < 3; ++c) out.comp[c] = dealias(u[c]);
    return out;
}

double max_divergence(const VectorField& u) {
    ScalarField div = divergence(u);
    double mx = 0.0;
    for (const cplx& c : div.spec()) mx = std::max(mx, std::abs(c));
    return mx;
}

void zero_nyquist(VectorField& u) {
    const Grid& g = u.grid();
    const int n = g.n;
    const int nyq = n / 2;
    for (int c = 0; c < 3; ++c) {
        auto& dst = u[c].spec();
        for (int ix = 0; ix < n; ++ix)
            for (int iy = 0; iy < n; ++iy)
                for (int iz = 0; iz < n; ++iz) {
                    if (ix == nyq || iy == nyq || iz == nyq) dst[g.flat(ix, iy, iz)] = cplx{0.0, 0.0};
                }
    }
}

}  // namespace tmhd
