#pragma once

#include <cmath>
#include <limits>

#include "tmhd/field.hpp"
#include "tmhd/norms.hpp"
#include "tmhd/operators.hpp"
#include "tmhd/presets.hpp"
#include "tmhd/rng.hpp"

namespace tmhd::test {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

template <typename F>
void fill_physical(ScalarField& f, const Grid& g, F&& fn) {
    auto& dst = f.phys();
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy)
            for (int iz = 0; iz < g.n; ++iz)
                dst[g.flat(ix, iy, iz)] = fn(g.coord(ix), g.coord(iy), g.coord(iz));
}

template <typename F>
ScalarField make_scalar(const Grid& g, F&& fn) {
    ScalarField f(g, Rep::physical);
    fill_physical(f, g, fn);
    return f;
}

template <typename Fx, typename Fy, typename Fz>
VectorField make_vector(const Grid& g, Fx&& fx, Fy&& fy, Fz&& fz) {
    VectorField u(g, Rep::physical);
    fill_physical(u[0], g, fx);
    fill_physical(u[1], g, fy);
    fill_physical(u[2], g, fz);
    return u;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double mx = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) mx = std::max(mx, std::abs(a[i] - b[i]));
    return mx;
}

inline double max_abs(const std::vector<double>& a) {
    double mx = 0.0;
    for (double x : a) mx = std::max(mx, std::abs(x));
    return mx;
}

inline double max_coeff(const ScalarField& f) {
    double mx = 0.0;
    for (const cplx& c : f.spec()) mx = std::max(mx, std::abs(c));
    return mx;
}

inline double max_coeff_diff(const VectorField& a, const VectorField& b) {
    double mx = 0.0;
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < a[c].spec().size(); ++i)
            mx = std::max(mx, std::abs(a[c].spec()[i] - b[c].spec()[i]));
    return mx;
}

inline double rel_diff(double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

// A divergence-free state band-limited to |k_i| <= k_max, scaled to the
// requested pointwise amplitude. Deterministic per seed.
inline SpectralState random_state(const Grid& g, std::uint64_t seed, int k_max, double amplitude) {
    return random_band(g, seed, k_max, amplitude);
}

}  // namespace tmhd::test
