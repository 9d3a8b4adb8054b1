#include "tmhd/galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tmhd/operators.hpp"
#include "tmhd/stepper.hpp"

namespace tmhd {
namespace {

struct ModeKey {
    double k_sq;
    std::array<int, 3> k;
    bool operator<(const ModeKey& o) const {
        if (k_sq != o.k_sq) return k_sq < o.k_sq;
        return k < o.k;
    }
};

// Two deterministic orthonormal polarization vectors perpendicular to k.
std::array<std::array<double, 3>, 2> polarizations(const std::array<int, 3>& k) {
    const double kx = k[0], ky = k[1], kz = k[2];
    const double norm = std::sqrt(kx * kx + ky * ky + kz * kz);
    const std::array<double, 3> a{kx / norm, ky / norm, kz / norm};
    // helper axis: the first coordinate axis not parallel to k
    std::array<double, 3> h{1.0, 0.0, 0.0};
    if (ky == 0.0 && kz == 0.0) h = {0.0, 1.0, 0.0};
    std::array<double, 3> q1{a[1] * h[2] - a[2] * h[1], a[2] * h[0] - a[0] * h[2],
                             a[0] * h[1] - a[1] * h[0]};
    const double q1n = std::sqrt(q1[0] * q1[0] + q1[1] * q1[1] + q1[2] * q1[2]);
    for (double& x : q1) x /= q1n;
    const std::array<double, 3> q2{a[1] * q1[2] - a[2] * q1[1], a[2] * q1[0] - a[0] * q1[2],
                                   a[0] * q1[1] - a[1] * q1[0]};
    return {q1, q2};
}

}  // namespace

int GalerkinBasis::max_modes(const Grid& g) {
    const int half = g.n / 2 - 1;
    const int per_axis = 2 * half + 1;
    const int k_count = per_axis * per_axis * per_axis;  // includes k = 0
    // 6 constants + 8 states per (k, -k) pair (2 pol x cos/sin x v/B)
    return 6 + 8 * ((k_count - 1) / 2);
}

GalerkinBasis GalerkinBasis::build(const Grid& g, int n_modes) {
    if (n_modes < 1 || n_modes > max_modes(g))
        throw std::invalid_argument("galerkin: n_modes exceeds the available divergence-free modes");

    GalerkinBasis basis;
    basis.grid_ = g;

    const double kscale = kTwoPi / g.box_length;
    const int half = g.n / 2 - 1;

    std::vector<ModeKey> keys;
    for (int kx = -half; kx <= half; ++kx)
        for (int ky = -half; ky <= half; ++ky)
            for (int kz = -half; kz <= half; ++kz) {
                const bool canonical =
                    kx > 0 || (kx == 0 && (ky > 0 || (ky == 0 && kz > 0)));
                if (!canonical) continue;
                const double k_sq = kscale * kscale * (kx * kx + ky * ky + kz * kz);
                keys.push_back({k_sq, {kx, ky, kz}});
            }
    std::sort(keys.begin(), keys.end());

    // Constants first: H^1 norm is volume * c^2, so c = volume^{-1/2}.
    const double c0 = 1.0 / std::sqrt(g.volume());
    for (int block = 0; block < 2; ++block)
        for (int comp = 0; comp < 3; ++comp) {
            BasisState s;
            s.entries.push_back({block, comp, g.flat(0, 0, 0), cplx{c0, 0.0}});
            basis.states_.push_back(std::move(s));
            if (basis.size() == n_modes) return basis;
        }

    for (const ModeKey& key : keys) {
        const auto [kx, ky, kz] = key.k;
        const std::size_t plus = g.flat((kx + g.n) % g.n, (ky + g.n) % g.n, (kz + g.n) % g.n);
        const std::size_t minus = g.flat((g.n - kx) % g.n, (g.n - ky) % g.n, (g.n - kz) % g.n);
        const auto pols = polarizations(key.k);
        // ||q cos(k.x)||^2_{L^2} = volume/2, so c = sqrt(2 / ((1+|kappa|^2) volume)).
        const double c = std::sqrt(2.0 / ((1.0 + key.k_sq) * g.volume()));
        for (int block = 0; block < 2; ++block)
            for (int trig = 0; trig < 2; ++trig)
                for (int pol = 0; pol < 2; ++pol) {
                    BasisState s;
                    s.k = key.k;
                    s.k_sq = key.k_sq;
                    for (int comp = 0; comp < 3; ++comp) {
                        const double amp = c * pols[pol][comp];
                        if (amp == 0.0) continue;
                        if (trig == 0) {  // cos: (e^{ikx} + e^{-ikx})/2
                            s.entries.push_back({block, comp, plus, cplx{0.5 * amp, 0.0}});
                            s.entries.push_back({block, comp, minus, cplx{0.5 * amp, 0.0}});
                        } else {  // sin: (e^{ikx} - e^{-ikx})/(2i)
                            s.entries.push_back({block, comp, plus, cplx{0.0, -0.5 * amp}});
                            s.entries.push_back({block, comp, minus, cplx{0.0, 0.5 * amp}});
                        }
                    }
                    basis.states_.push_back(std::move(s));
                    if (basis.size() == n_modes) return basis;
                }
    }
    return basis;
}

SpectralState GalerkinBasis::assemble(const std::vector<double>& z) const {
    if (static_cast<int>(z.size()) != size())
        throw std::invalid_argument("galerkin: coefficient count mismatch");
    SpectralState y(grid_, Rep::fourier);
    for (int i = 0; i < size(); ++i) {
        if (z[i] == 0.0) continue;
        for (const BasisState::Entry& e : states_[i].entries) {
            VectorField& block = e.block == 0 ? y.v : y.B;
            block[e.component].spec()[e.flat] += z[i] * e.value;
        }
    }
    return y;
}

double GalerkinBasis::pair_h1(const StateFields& a, int i) const {
    double total = 0.0;
    for (const BasisState::Entry& e : states_[i].entries) {
        const VectorField& block = e.block == 0 ? a.v : a.B;
        const cplx& c = block[e.component].spec()[e.flat];
        total += (1.0 + states_[i].k_sq) *
                 (c.real() * e.value.real() + c.imag() * e.value.imag());
    }
    return total * grid_.volume();
}

double GalerkinBasis::pair_h1_state(const SpectralState& a, int i) const {
    StateFields f;
    f.v = a.v;
    f.B = a.B;
    return pair_h1(f, i);
}

std::vector<double> GalerkinBasis::coefficients(const SpectralState& y) const {
    std::vector<double> z(size());
    for (int i = 0; i < size(); ++i) z[i] = pair_h1_state(y, i);
    return z;
}

GalerkinSystem::GalerkinSystem(GalerkinBasis basis_, TamingFunction tf_, const StateFields* forcing)
    : basis(std::move(basis_)), tf(tf_) {
    forcing_coeffs.assign(basis.size(), 0.0);
    if (forcing != nullptr) {
        for (int i = 0; i < basis.size(); ++i) forcing_coeffs[i] = basis.pair_h1(*forcing, i);
    }
}

std::vector<double> drift(const GalerkinSystem& system, const std::vector<double>& z) {
    const SpectralState y = system.basis.assemble(z);
    const RhsParts parts = rhs_full(y, &system.tf, nullptr);
    std::vector<double> b(system.basis.size());
    for (int i = 0; i < system.basis.size(); ++i) {
        b[i] = system.basis.pair_h1(parts.linear, i) + system.basis.pair_h1(parts.advective, i) +
               system.basis.pair_h1(parts.taming, i);
    }
    return b;
}

GalerkinTrajectory integrate_galerkin(const GalerkinSystem& system, const std::vector<double>& z0,
                                      double t_end, double dt, int sample_every) {
    const int n = system.basis.size();
    if (static_cast<int>(z0.size()) != n) throw std::invalid_argument("galerkin: bad z0 size");

    auto rhs = [&](const std::vector<double>& z) {
        std::vector<double> b = drift(system, z);
        for (int i = 0; i < n; ++i) b[i] += system.forcing_coeffs[i];
        return b;
    };

    GalerkinTrajectory traj;
    std::vector<double> z = z0;
    double t = 0.0;
    traj.times.push_back(t);
    traj.coeffs.push_back(z);

    int step_index = 0;
    while (t < t_end - 1e-14) {
        const double h = std::min(dt, t_end - t);
        const std::vector<double> k1 = rhs(z);
        std::vector<double> tmp(n);
        for (int i = 0; i < n; ++i) tmp[i] = z[i] + 0.5 * h * k1[i];
        const std::vector<double> k2 = rhs(tmp);
        for (int i = 0; i < n; ++i) tmp[i] = z[i] + 0.5 * h * k2[i];
        const std::vector<double> k3 = rhs(tmp);
        for (int i = 0; i < n; ++i) tmp[i] = z[i] + h * k3[i];
        const std::vector<double> k4 = rhs(tmp);
        for (int i = 0; i < n; ++i)
            z[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        t += h;
        for (double x : z)
            if (!std::isfinite(x)) throw BlowupError(t);
        ++step_index;
        if (t >= t_end - 1e-14 || step_index % sample_every == 0) {
            traj.times.push_back(t);
            traj.coeffs.push_back(z);
        }
    }
    return traj;
}

}  // namespace tmhd
