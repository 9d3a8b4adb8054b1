#include "tmhd/norms.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tmhd {
namespace {

double abs2(const cplx& c) { return c.real() * c.real() + c.imag() * c.imag(); }

// Serial mode sum with weight (1 + |kappa|^2)^m * |kappa|^2q; reductions are
// kept in index order for reproducibility.
double weighted_mode_sum(const VectorField& u, int m, int grad_power) {
    const Grid& g = u.grid();
    const int n = g.n;
    const auto& sx = u[0].spec();
    const auto& sy = u[1].spec();
    const auto& sz = u[2].spec();
    double total = 0.0;
    for (int ix = 0; ix < n; ++ix) {
        const double kx = g.kappa(ix);
        for (int iy = 0; iy < n; ++iy) {
            const double ky = g.kappa(iy);
            std::size_t flat = g.flat(ix, iy, 0);
            for (int iz = 0; iz < n; ++iz, ++flat) {
                const double kz = g.kappa(iz);
                const double k2 = kx * kx + ky * ky + kz * kz;
                double w = 1.0;
                for (int j = 0; j < m; ++j) w *= 1.0 + k2;
                for (int j = 0; j < grad_power; ++j) w *= k2;
                total += w * (abs2(sx[flat]) + abs2(sy[flat]) + abs2(sz[flat]));
            }
        }
    }
    return total * g.volume();
}

}  // namespace

double sobolev_norm(const VectorField& u, int m) {
    if (u.rep() != Rep::fourier) return sobolev_norm(transform(u, Rep::fourier), m);
    return std::sqrt(weighted_mode_sum(u, m, 0));
}

double sobolev_norm(const SpectralState& y, int m) {
    if (y.rep() != Rep::fourier) return sobolev_norm(transform(y, Rep::fourier), m);
    return std::sqrt(weighted_mode_sum(y.v, m, 0) + weighted_mode_sum(y.B, m, 0));
}

double grad_energy_sq(const SpectralState& y) {
    if (y.rep() != Rep::fourier) return grad_energy_sq(transform(y, Rep::fourier));
    return weighted_mode_sum(y.v, 0, 1) + weighted_mode_sum(y.B, 0, 1);
}

double lp_norm(const SpectralState& y, double p) {
    if (p == std::numeric_limits<double>::infinity()) return lp_norm_inf(y);
    if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
    const SpectralState yp = y.rep() == Rep::physical ? y : transform(y, Rep::physical);
    const Grid& g = yp.grid();
    const auto& vx = yp.v[0].phys();
    const auto& vy = yp.v[1].phys();
    const auto& vz = yp.v[2].phys();
    const auto& bx = yp.B[0].phys();
    const auto& by = yp.B[1].phys();
    const auto& bz = yp.B[2].phys();
    const double half_p = 0.5 * p;
    double total = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double r = vx[i] * vx[i] + vy[i] * vy[i] + vz[i] * vz[i] + bx[i] * bx[i] +
                         by[i] * by[i] + bz[i] * bz[i];
        total += std::pow(r, half_p);
    }
    return std::pow(total * g.cell_volume(), 1.0 / p);
}

double lp_norm_inf(const SpectralState& y) {
    const SpectralState yp = y.rep() == Rep::physical ? y : transform(y, Rep::physical);
    const Grid& g = yp.grid();
    const auto& vx = yp.v[0].phys();
    const auto& vy = yp.v[1].phys();
    const auto& vz = yp.v[2].phys();
    const auto& bx = yp.B[0].phys();
    const auto& by = yp.B[1].phys();
    const auto& bz = yp.B[2].phys();
    double mx = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double r = vx[i] * vx[i] + vy[i] * vy[i] + vz[i] * vz[i] + bx[i] * bx[i] +
                         by[i] * by[i] + bz[i] * bz[i];
        mx = std::max(mx, r);
    }
    return std::sqrt(mx);
}

double scalar_lp_norm(const ScalarField& f, double p) {
    if (p < 1.0) throw std::invalid_argument("scalar_lp_norm: p must be >= 1");
    const ScalarField fp = f.rep() == Rep::physical ? f : transform(f, Rep::physical);
    double total = 0.0;
    for (double x : fp.phys()) total += std::pow(std::abs(x), p);
    return std::pow(total * fp.grid().cell_volume(), 1.0 / p);
}

double vector_l2_norm(const VectorField& u) {
    if (u.rep() == Rep::fourier) return std::sqrt(weighted_mode_sum(u, 0, 0));
    const Grid& g = u.grid();
    double total = 0.0;
    for (int c = 0; c < 3; ++c)
        for (double x : u[c].phys()) total += x * x;
    return std::sqrt(total * g.cell_volume());
}

double state_l2_distance(const SpectralState& a, const SpectralState& b) {
    if (a.rep() != Rep::fourier || b.rep() != Rep::fourier)
        return state_l2_distance(transform(a, Rep::fourier), transform(b, Rep::fourier));
    if (!(a.grid() == b.grid())) throw std::invalid_argument("state_l2_distance: grid mismatch");
    double total = 0.0;
    for (int c = 0; c < 3; ++c) {
        const auto& av = a.v[c].spec();
        const auto& bv = b.v[c].spec();
        const auto& ab = a.B[c].spec();
        const auto& bb = b.B[c].spec();
        for (std::size_t i = 0; i < av.size(); ++i) {
            total += abs2(av[i] - bv[i]) + abs2(ab[i] - bb[i]);
        }
    }
    return std::sqrt(total * a.grid().volume());
}

double vector_pairing(const VectorField& a, const VectorField& b, int m) {
    if (a.rep() != Rep::fourier || b.rep() != Rep::fourier)
        throw std::logic_error("vector_pairing: Fourier representation required");
    const Grid& g = a.grid();
    const int n = g.n;
    double total = 0.0;
    for (int ix = 0; ix < n; ++ix) {
        const double kx = g.kappa(ix);
        for (int iy = 0; iy < n; ++iy) {
            const double ky = g.kappa(iy);
            std::size_t flat = g.flat(ix, iy, 0);
            for (int iz = 0; iz < n; ++iz, ++flat) {
                const double kz = g.kappa(iz);
                const double k2 = kx * kx + ky * ky + kz * kz;
                double w = 1.0;
                for (int j = 0; j < m; ++j) w *= 1.0 + k2;
                double re = 0.0;
                for (int c = 0; c < 3; ++c) {
                    const cplx& ac = a[c].spec()[flat];
                    const cplx& bc = b[c].spec()[flat];
                    re += ac.real() * bc.real() + ac.imag() * bc.imag();
                }
                total += w * re;
            }
        }
    }
    return total * g.volume();
}

double state_pairing(const StateFields& a, const SpectralState& b, int m) {
    return vector_pairing(a.v, b.v, m) + vector_pairing(a.B, b.B, m);
}

NormReport norm_report(const SpectralState& y, const std::vector<double>& exponents) {
    NormReport rep;
    rep.h0 = sobolev_norm(y, 0);
    rep.h1 = sobolev_norm(y, 1);
    rep.h2 = sobolev_norm(y, 2);
    const SpectralState yp = y.rep() == Rep::physical ? y : transform(y, Rep::physical);
    for (double p : exponents) rep.lp[p] = lp_norm(yp, p);
    rep.linf = lp_norm_inf(yp);
    return rep;
}

}  // namespace tmhd
