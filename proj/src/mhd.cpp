#include "tmhd/mhd.hpp"

#include <cmath>
#include <stdexcept>

#include "tmhd/norms.hpp"
#include "tmhd/operators.hpp"
#include "tmhd/parallel.hpp"

namespace tmhd {
namespace {

void require_same_grid(const Grid& a, const Grid& b) {
    if (!(a == b)) throw std::invalid_argument("mhd: grid mismatch");
}

VectorField add(const VectorField& a, const VectorField& b, double sb) {
    VectorField out = a;
    for (int c = 0; c < 3; ++c) {
        auto& dst = out[c].spec();
        const auto& src = b[c].spec();
        parallel_for(dst.size(), [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) dst[i] += sb * src[i];
        });
    }
    return out;
}

}  // namespace

VectorField advect(const VectorField& u, const VectorField& w) {
    require_same_grid(u.grid(), w.grid());
    if (u.rep() != Rep::fourier || w.rep() != Rep::fourier)
        throw std::logic_error("advect: Fourier representation required");
    const Grid& g = u.grid();

    const VectorField up = transform(u, Rep::physical);
    // dw[j][i] = d_j w_i in physical space
    ScalarField dw[3][3];
    for (int i = 0; i < 3; ++i) {
        VectorField grad_wi = gradient(w[i]);
        for (int j = 0; j < 3; ++j) dw[j][i] = transform(grad_wi[j], Rep::physical);
    }

    VectorField out(g, Rep::physical);
    for (int i = 0; i < 3; ++i) {
        auto& dst = out[i].phys();
        parallel_for(g.size(), [&](std::size_t lo, std::size_t hi) {
            for (std::size_t p = lo; p < hi; ++p) {
                dst[p] = up[0].phys()[p] * dw[0][i].phys()[p] + up[1].phys()[p] * dw[1][i].phys()[p] +
                         up[2].phys()[p] * dw[2][i].phys()[p];
            }
        });
    }
    return dealias(transform(out, Rep::fourier));
}

StateDerivatives state_derivatives(const SpectralState& y) {
    if (y.rep() != Rep::fourier)
        throw std::logic_error("state_derivatives: Fourier representation required");
    StateDerivatives der;
    der.phys = transform(y, Rep::physical);
    for (int i = 0; i < 3; ++i) {
        VectorField grad_vi = gradient(y.v[i]);
        VectorField grad_Bi = gradient(y.B[i]);
        for (int j = 0; j < 3; ++j) {
            der.dv[j][i] = transform(grad_vi[j], Rep::physical);
            der.dB[j][i] = transform(grad_Bi[j], Rep::physical);
        }
    }
    return der;
}

RhsParts rhs_full(const SpectralState& y, const TamingFunction* tf, const StateFields* forcing) {
    if (y.rep() != Rep::fourier) throw std::logic_error("rhs_full: Fourier representation required");
    const Grid& g = y.grid();
    RhsParts parts;

    parts.linear.v = laplacian(y.v);
    parts.linear.B = laplacian(y.B);

    // Advective terms with shared transforms: one physical copy of the state
    // and one set of the 18 derivative fields feeds all four products.
    const StateDerivatives der = state_derivatives(y);
    const SpectralState& yp = der.phys;
    VectorField adv_v(g, Rep::physical);  // (B.grad)B - (v.grad)v
    VectorField adv_B(g, Rep::physical);  // (B.grad)v - (v.grad)B
    for (int i = 0; i < 3; ++i) {
        auto& av = adv_v[i].phys();
        auto& ab = adv_B[i].phys();
        parallel_for(g.size(), [&](std::size_t lo, std::size_t hi) {
            for (std::size_t p = lo; p < hi; ++p) {
                double sv = 0.0, sb = 0.0;
                for (int j = 0; j < 3; ++j) {
                    const double vj = yp.v[j].phys()[p];
                    const double bj = yp.B[j].phys()[p];
                    sv += bj * der.dB[j][i].phys()[p] - vj * der.dv[j][i].phys()[p];
                    sb += bj * der.dv[j][i].phys()[p] - vj * der.dB[j][i].phys()[p];
                }
                av[p] = sv;
                ab[p] = sb;
            }
        });
    }
    parts.advective.v = leray_project(dealias(transform(adv_v, Rep::fourier)));
    parts.advective.B = leray_project(dealias(transform(adv_B, Rep::fourier)));

    parts.taming = StateFields(g, Rep::fourier);
    if (tf != nullptr) {
        if (max_pointwise_magnitude_sq(yp) > tf->threshold()) {
            parts.taming_active = true;
            auto [tv, tB] = apply_taming(*tf, yp);
            parts.taming.v = leray_project(transform(tv, Rep::fourier));
            parts.taming.B = leray_project(transform(tB, Rep::fourier));
            for (int c = 0; c < 3; ++c) {
                for (auto& x : parts.taming.v[c].spec()) x = -x;
                for (auto& x : parts.taming.B[c].spec()) x = -x;
            }
        }
    }

    if (forcing != nullptr) {
        parts.forcing = *forcing;
    } else {
        parts.forcing = StateFields(g, Rep::fourier);
    }
    return parts;
}

double rhs_pairing_h0(const SpectralState& y, const TamingFunction& tf) {
    const RhsParts parts = rhs_full(y, &tf, nullptr);
    return state_pairing(parts.linear, y, 0) + state_pairing(parts.advective, y, 0) +
           state_pairing(parts.taming, y, 0);
}

double rhs_pairing_h0_closed_form(const SpectralState& y, const TamingFunction& tf) {
    const SpectralState yp = transform(y, Rep::physical);
    return -grad_energy_sq(y) - taming_dissipation(yp, tf);
}

double rhs_pairing_h1(const SpectralState& y, const TamingFunction& tf) {
    const RhsParts parts = rhs_full(y, &tf, nullptr);
    return state_pairing(parts.linear, y, 1) + state_pairing(parts.advective, y, 1) +
           state_pairing(parts.taming, y, 1);
}

double taming_dissipation(const SpectralState& yp, const TamingFunction& tf) {
    if (yp.rep() != Rep::physical)
        throw std::logic_error("taming_dissipation: physical representation required");
    const Grid& g = yp.grid();
    const auto& vx = yp.v[0].phys();
    const auto& vy = yp.v[1].phys();
    const auto& vz = yp.v[2].phys();
    const auto& bx = yp.B[0].phys();
    const auto& by = yp.B[1].phys();
    const auto& bz = yp.B[2].phys();
    double total = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double r = vx[i] * vx[i] + vy[i] * vy[i] + vz[i] * vz[i] + bx[i] * bx[i] +
                         by[i] * by[i] + bz[i] * bz[i];
        total += tf.eval(r) * r;
    }
    return total * g.cell_volume();
}

double curl_identity_residual(const VectorField& v, const VectorField& B) {
    require_same_grid(v.grid(), B.grid());
    // Left side: -(v.grad)B + (B.grad)v
    VectorField lhs = add(advect(B, v), advect(v, B), -1.0);

    // Right side: curl of the dealiased pointwise product v x B
    const VectorField vp = transform(v, Rep::physical);
    const VectorField Bp = transform(B, Rep::physical);
    VectorField cross(v.grid(), Rep::physical);
    parallel_for(v.grid().size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            cross[0].phys()[i] = vp[1].phys()[i] * Bp[2].phys()[i] - vp[2].phys()[i] * Bp[1].phys()[i];
            cross[1].phys()[i] = vp[2].phys()[i] * Bp[0].phys()[i] - vp[0].phys()[i] * Bp[2].phys()[i];
            cross[2].phys()[i] = vp[0].phys()[i] * Bp[1].phys()[i] - vp[1].phys()[i] * Bp[0].phys()[i];
        }
    });
    const VectorField rhs = curl(dealias(transform(cross, Rep::fourier)));

    return vector_l2_norm(add(lhs, rhs, -1.0));
}

PressureSources pressure_sources(const SpectralState& y, const TamingFunction& tf,
                                 const StateDerivatives* pre) {
    const Grid& g = y.grid();
    StateDerivatives local;
    if (pre == nullptr) {
        local = state_derivatives(y);
        pre = &local;
    }
    const SpectralState& yp = pre->phys;
    PressureSources src;

    // (v.grad)v - (B.grad)B - B.(grad B), products dealiased together
    VectorField momentum(g, Rep::physical);
    for (int i = 0; i < 3; ++i) {
        auto& dst = momentum[i].phys();
        parallel_for(g.size(), [&](std::size_t lo, std::size_t hi) {
            for (std::size_t p = lo; p < hi; ++p) {
                double s = 0.0;
                for (int j = 0; j < 3; ++j) {
                    s += yp.v[j].phys()[p] * pre->dv[j][i].phys()[p] -
                         yp.B[j].phys()[p] * pre->dB[j][i].phys()[p] -
                         yp.B[j].phys()[p] * pre->dB[i][j].phys()[p];
                }
                dst[p] = s;
            }
        });
    }
    src.momentum = dealias(transform(momentum, Rep::fourier));

    // Taming products, pointwise without extra padding
    src.magnetic = VectorField(g, Rep::fourier);
    if (max_pointwise_magnitude_sq(yp) > tf.threshold()) {
        auto [tv, tB] = apply_taming(tf, yp);
        src.momentum = add(src.momentum, transform(tv, Rep::fourier), 1.0);
        src.magnetic = transform(tB, Rep::fourier);
    }
    return src;
}

PressureFields recover_pressures(const SpectralState& y, const TamingFunction& tf) {
    return recover_pressures(y, tf, nullptr);
}

PressureFields recover_pressures(const SpectralState& y, const TamingFunction& tf,
                                 const StateDerivatives* pre) {
    const Grid& g = y.grid();
    const PressureSources src = pressure_sources(y, tf, pre);

    auto solve_poisson = [&g](const VectorField& source) {
        ScalarField rhs = divergence(source);
        ScalarField out(g, Rep::fourier);
        const auto& s = rhs.spec();
        auto& dst = out.spec();
        const int n = g.n;
        for (int ix = 0; ix < n; ++ix) {
            const double kx = g.kappa(ix);
            for (int iy = 0; iy < n; ++iy) {
                const double ky = g.kappa(iy);
                std::size_t flat = g.flat(ix, iy, 0);
                for (int iz = 0; iz < n; ++iz, ++flat) {
                    const double kz = g.kappa(iz);
                    const double k2 = kx * kx + ky * ky + kz * kz;
                    dst[flat] = k2 == 0.0 ? cplx{0.0, 0.0} : -s[flat] / k2;
                }
            }
        }
        return out;
    };

    PressureFields out;
    out.p = solve_poisson(src.momentum);
    out.pi = solve_poisson(src.magnetic);
    return out;
}

ScalarField total_pressure(const ScalarField& p, const VectorField& Bp) {
    if (Bp.rep() != Rep::physical) throw std::logic_error("total_pressure: physical B required");
    ScalarField pp = p.rep() == Rep::physical ? p : transform(p, Rep::physical);
    auto& dst = pp.phys();
    parallel_for(dst.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            dst[i] += 0.5 * (Bp[0].phys()[i] * Bp[0].phys()[i] + Bp[1].phys()[i] * Bp[1].phys()[i] +
                             Bp[2].phys()[i] * Bp[2].phys()[i]);
        }
    });
    return pp;
}

}  // namespace tmhd
