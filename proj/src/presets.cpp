#include "tmhd/presets.hpp"

#include <cmath>
#include <stdexcept>

#include "tmhd/norms.hpp"
#include "tmhd/operators.hpp"
#include "tmhd/rng.hpp"

namespace tmhd {
namespace {

template <typename F>
void fill_physical(ScalarField& f, const Grid& g, F&& fn) {
    auto& dst = f.phys();
    for (int ix = 0; ix < g.n; ++ix) {
        const double x = g.coord(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            const double y = g.coord(iy);
            for (int iz = 0; iz < g.n; ++iz) {
                dst[g.flat(ix, iy, iz)] = fn(x, y, g.coord(iz));
            }
        }
    }
}

SpectralState to_spectral(SpectralState phys_state) {
    SpectralState out = transform(phys_state, Rep::fourier);
    return leray_project(out);
}

}  // namespace

SpectralState taylor_green(const Grid& g, double a) {
    SpectralState s(g, Rep::physical);
    fill_physical(s.v[0], g, [a](double x, double y, double z) { return a * std::sin(x) * std::cos(y) * std::cos(z); });
    fill_physical(s.v[1], g, [a](double x, double y, double z) { return -a * std::cos(x) * std::sin(y) * std::cos(z); });
    return to_spectral(std::move(s));
}

SpectralState orszag_tang_3d(const Grid& g, double a) {
    const double b = 0.8 * a;
    SpectralState s(g, Rep::physical);
    fill_physical(s.v[0], g, [a](double, double y, double) { return -2.0 * a * std::sin(y); });
    fill_physical(s.v[1], g, [a](double x, double, double) { return 2.0 * a * std::sin(x); });
    fill_physical(s.B[0], g, [b](double, double y, double z) { return b * (-2.0 * std::sin(2.0 * y) + std::sin(z)); });
    fill_physical(s.B[1], g, [b](double x, double, double z) { return b * (2.0 * std::sin(x) + std::sin(z)); });
    fill_physical(s.B[2], g, [b](double x, double y, double) { return b * (std::sin(x) + std::sin(y)); });
    return to_spectral(std::move(s));
}

SpectralState random_band_raw(const Grid& g, std::uint64_t seed, int k_max, double scale) {
    if (k_max < 1 || 3 * k_max > g.n) throw std::invalid_argument("random_band: k_max outside the dealiased band");
    SplitMix64 rng(seed);
    SpectralState s(g, Rep::fourier);

    // Fill the k-half-space (first nonzero component positive) and mirror the
    // conjugate so the field is real. Draw order is fixed by the loop nest.
    auto fill = [&](VectorField& u) {
        for (int kx = -k_max; kx <= k_max; ++kx)
            for (int ky = -k_max; ky <= k_max; ++ky)
                for (int kz = -k_max; kz <= k_max; ++kz) {
                    if (kx == 0 && ky == 0 && kz == 0) continue;
                    const bool canonical = kx > 0 || (kx == 0 && (ky > 0 || (ky == 0 && kz > 0)));
                    if (!canonical) continue;
                    const std::size_t plus =
                        g.flat((kx + g.n) % g.n, (ky + g.n) % g.n, (kz + g.n) % g.n);
                    const std::size_t minus =
                        g.flat((g.n - kx) % g.n, (g.n - ky) % g.n, (g.n - kz) % g.n);
                    for (int c = 0; c < 3; ++c) {
                        const cplx val{rng.next_normal(), rng.next_normal()};
                        u[c].spec()[plus] = scale * val;
                        u[c].spec()[minus] = scale * std::conj(val);
                    }
                }
    };
    fill(s.v);
    fill(s.B);
    return leray_project(s);
}

SpectralState random_band(const Grid& g, std::uint64_t seed, int k_max, double amplitude) {
    SpectralState s = random_band_raw(g, seed, k_max, 1.0);
    const double linf = lp_norm_inf(s);
    const double factor = linf > 0.0 ? amplitude / linf : 0.0;
    for (int c = 0; c < 3; ++c) {
        for (auto& x : s.v[c].spec()) x *= factor;
        for (auto& x : s.B[c].spec()) x *= factor;
    }
    return s;
}

StateFields make_forcing(const Grid& g, const std::string& preset, double amplitude) {
    StateFields f(g, Rep::fourier);
    if (preset == "none" || amplitude == 0.0) return f;
    if (preset == "constant_v") {
        SpectralState s(g, Rep::physical);
        fill_physical(s.v[0], g, [amplitude](double, double, double) { return amplitude; });
        const SpectralState sf = to_spectral(std::move(s));
        f.v = sf.v;
        return f;
    }
    if (preset == "sin_shear") {
        SpectralState s(g, Rep::physical);
        fill_physical(s.v[1], g, [amplitude](double x, double, double) { return amplitude * std::sin(x); });
        const SpectralState sf = to_spectral(std::move(s));
        f.v = sf.v;
        return f;
    }
    throw std::invalid_argument("forcing: unknown preset '" + preset + "'");
}

}  // namespace tmhd
