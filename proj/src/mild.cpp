#include "tmhd/mild.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "tmhd/norms.hpp"
#include "tmhd/operators.hpp"
#include "tmhd/parallel.hpp"

namespace tmhd {
namespace {

const cplx kI{0.0, 1.0};

void heat_inplace(VectorField& u, double t) {
    const Grid& g = u.grid();
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
                const double e = std::exp(-(kx * kx + ky * ky + kz * kz) * t);
                for (int c = 0; c < 3; ++c) u[c].spec()[flat] *= e;
            }
        }
    });
}

void add_scaled(VectorField& dst, const VectorField& src, double alpha) {
    for (int c = 0; c < 3; ++c) {
        auto& d = dst[c].spec();
        const auto& s = src[c].spec();
        parallel_for(d.size(), [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) d[i] += alpha * s[i];
        });
    }
}

// G(u, w) = sum_k d_k [ P (u w_k) ], products dealiased. This is the
// s-integrand of the bilinear operator with the commuting heat factor
// stripped off.
VectorField bilinear_integrand(const VectorField& u_phys, const VectorField& w_phys) {
    const Grid& g = u_phys.grid();
    VectorField total(g, Rep::fourier);
    for (int kdir = 0; kdir < 3; ++kdir) {
        VectorField m(g, Rep::physical);
        for (int c = 0; c < 3; ++c) {
            auto& dst = m[c].phys();
            const auto& uc = u_phys[c].phys();
            const auto& wk = w_phys[kdir].phys();
            parallel_for(g.size(), [&](std::size_t lo, std::size_t hi) {
                for (std::size_t i = lo; i < hi; ++i) dst[i] = uc[i] * wk[i];
            });
        }
        VectorField mp = leray_project(dealias(transform(m, Rep::fourier)));
        // d_{kdir} multiplier
        const int n = g.n;
        parallel_for(static_cast<std::size_t>(n) * n, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t xy = lo; xy < hi; ++xy) {
                const int idx[2] = {static_cast<int>(xy) / n, static_cast<int>(xy) % n};
                std::size_t flat = xy * n;
                for (int iz = 0; iz < n; ++iz, ++flat) {
                    const int mode_idx = kdir == 0 ? idx[0] : (kdir == 1 ? idx[1] : iz);
                    const cplx factor = kI * g.kappa_odd(mode_idx);
                    for (int c = 0; c < 3; ++c) total[c].spec()[flat] += factor * mp[c].spec()[flat];
                }
            }
        });
    }
    return total;
}

// P(g(|y|^2) y - f) at one node (Fourier, both blocks).
StateFields taming_integrand(const SpectralState& y_phys, const TamingFunction& tf,
                             const StateFields* forcing) {
    const Grid& g = y_phys.grid();
    StateFields out(g, Rep::fourier);
    if (max_pointwise_magnitude_sq(y_phys) > tf.threshold()) {
        auto [tv, tB] = apply_taming(tf, y_phys);
        out.v = transform(tv, Rep::fourier);
        out.B = transform(tB, Rep::fourier);
    }
    if (forcing != nullptr) {
        add_scaled(out.v, forcing->v, -1.0);
        add_scaled(out.B, forcing->B, -1.0);
    }
    out.v = leray_project(out.v);
    out.B = leray_project(out.B);
    return out;
}

void check_node_range(const MildTrajectory& t, int node) {
    if (node < 0 || node >= t.count())
        throw std::invalid_argument("mild: node index outside the sampled trajectory");
}

}  // namespace

VectorField heat_propagate(const VectorField& u, double t) {
    if (t < 0.0) throw std::invalid_argument("heat_propagate: t must be >= 0");
    if (u.rep() != Rep::fourier) throw std::logic_error("heat_propagate: Fourier representation required");
    VectorField out = u;
    heat_inplace(out, t);
    return out;
}

SpectralState heat_propagate(const SpectralState& y0, double t) {
    SpectralState out = y0;
    out.v = heat_propagate(y0.v, t);
    out.B = heat_propagate(y0.B, t);
    out.time = y0.time + t;
    return out;
}

VectorField oseen_bilinear(const MildTrajectory& u, const MildTrajectory& w, int node) {
    check_node_range(u, node);
    check_node_range(w, node);
    const Grid& g = u.nodes.front().grid();
    VectorField acc(g, Rep::fourier);
    if (node == 0) return acc;
    for (int j = 0; j <= node; ++j) {
        const VectorField up = transform(u.nodes[j].v, Rep::physical);
        const VectorField wp = transform(w.nodes[j].v, Rep::physical);
        VectorField gj = bilinear_integrand(up, wp);
        heat_inplace(gj, u.h * (node - j));
        const double weight = (j == 0 || j == node) ? 0.5 * u.h : u.h;
        add_scaled(acc, gj, weight);
    }
    return acc;
}

StateFields mhd_bilinear(const MildTrajectory& y1, const MildTrajectory& y2, int node) {
    check_node_range(y1, node);
    check_node_range(y2, node);
    const Grid& g = y1.nodes.front().grid();
    StateFields acc(g, Rep::fourier);
    if (node == 0) return acc;
    for (int j = 0; j <= node; ++j) {
        const SpectralState a = transform(y1.nodes[j], Rep::physical);
        const SpectralState b = transform(y2.nodes[j], Rep::physical);
        VectorField g1 = bilinear_integrand(a.v, b.v);
        add_scaled(g1, bilinear_integrand(a.B, b.B), -1.0);
        VectorField g2 = bilinear_integrand(a.v, b.B);
        add_scaled(g2, bilinear_integrand(a.B, b.v), -1.0);
        heat_inplace(g1, y1.h * (node - j));
        heat_inplace(g2, y1.h * (node - j));
        const double weight = (j == 0 || j == node) ? 0.5 * y1.h : y1.h;
        add_scaled(acc.v, g1, weight);
        add_scaled(acc.B, g2, weight);
    }
    return acc;
}

SpectralState duhamel_forcing(const MildTrajectory& y, const SpectralState& y0,
                              const TamingFunction& tf, const StateFields* forcing, int node) {
    check_node_range(y, node);
    SpectralState out = heat_propagate(y0, y.time(node));
    for (int j = 0; j <= node && node > 0; ++j) {
        const SpectralState yp = transform(y.nodes[j], Rep::physical);
        StateFields tj = taming_integrand(yp, tf, forcing);
        heat_inplace(tj.v, y.h * (node - j));
        heat_inplace(tj.B, y.h * (node - j));
        const double weight = (j == 0 || j == node) ? 0.5 * y.h : y.h;
        add_scaled(out.v, tj.v, -weight);
        add_scaled(out.B, tj.B, -weight);
    }
    return out;
}

PicardResult picard_solve(const SpectralState& y0, const TamingFunction& tf,
                          const StateFields* forcing, double t_end, const MildConfig& cfg) {
    if (cfg.nodes < 8) throw std::invalid_argument("picard: need at least 8 quadrature nodes");
    if (!(cfg.tolerance > 0.0)) throw std::invalid_argument("picard: tolerance must be positive");
    if (y0.rep() != Rep::fourier) throw std::logic_error("picard: Fourier representation required");

    const Grid& g = y0.grid();
    const double h = t_end / cfg.nodes;
    const int count = cfg.nodes + 1;
    const double denom = 1.0 + sobolev_norm(y0, 0);

    MildTrajectory traj;
    traj.h = h;
    traj.nodes.reserve(count);
    for (int i = 0; i < count; ++i) traj.nodes.push_back(heat_propagate(y0, h * i));

    for (int iter = 1; iter <= cfg.max_iterations; ++iter) {
        // One sweep: trapezoid Duhamel sums advanced by the exact semigroup
        // recursion I_i = F_h I_{i-1} + h/2 (F_h G_{i-1} + G_i), equal to the
        // direct trapezoid sum because the heat multipliers factorize.
        MildTrajectory next;
        next.h = h;
        next.nodes.reserve(count);

        VectorField accV(g, Rep::fourier);   // B(v,v) - B(B,B)
        VectorField accB(g, Rep::fourier);   // B(v,B) - B(B,v)
        StateFields accT(g, Rep::fourier);   // Duhamel of P(g y - f)

        SpectralState prev_phys = transform(traj.nodes[0], Rep::physical);
        VectorField prev_g1 = bilinear_integrand(prev_phys.v, prev_phys.v);
        add_scaled(prev_g1, bilinear_integrand(prev_phys.B, prev_phys.B), -1.0);
        VectorField prev_g2 = bilinear_integrand(prev_phys.v, prev_phys.B);
        add_scaled(prev_g2, bilinear_integrand(prev_phys.B, prev_phys.v), -1.0);
        StateFields prev_t = taming_integrand(prev_phys, tf, forcing);

        SpectralState first = y0;
        first.time = 0.0;
        next.nodes.push_back(std::move(first));

        for (int i = 1; i < count; ++i) {
            const SpectralState cur_phys = transform(traj.nodes[i], Rep::physical);
            VectorField g1 = bilinear_integrand(cur_phys.v, cur_phys.v);
            add_scaled(g1, bilinear_integrand(cur_phys.B, cur_phys.B), -1.0);
            VectorField g2 = bilinear_integrand(cur_phys.v, cur_phys.B);
            add_scaled(g2, bilinear_integrand(cur_phys.B, cur_phys.v), -1.0);
            StateFields tj = taming_integrand(cur_phys, tf, forcing);

            auto advance = [&](VectorField& acc, VectorField& prev, const VectorField& cur) {
                heat_inplace(acc, h);
                VectorField carried = prev;
                heat_inplace(carried, h);
                add_scaled(acc, carried, 0.5 * h);
                add_scaled(acc, cur, 0.5 * h);
                prev = cur;
            };
            advance(accV, prev_g1, g1);
            advance(accB, prev_g2, g2);
            advance(accT.v, prev_t.v, tj.v);
            advance(accT.B, prev_t.B, tj.B);

            SpectralState yi = heat_propagate(y0, h * i);
            yi.time = h * i;
            add_scaled(yi.v, accT.v, -1.0);
            add_scaled(yi.B, accT.B, -1.0);
            add_scaled(yi.v, accV, -1.0);
            add_scaled(yi.B, accB, -1.0);
            next.nodes.push_back(std::move(yi));
        }

        double dist = 0.0;
        for (int i = 0; i < count; ++i) {
            const double d = state_l2_distance(next.nodes[i], traj.nodes[i]);
            if (!std::isfinite(d)) {
                dist = std::numeric_limits<double>::infinity();
                break;
            }
            dist = std::max(dist, d);
        }
        traj = std::move(next);
        if (dist / denom < cfg.tolerance) return {std::move(traj), iter};
    }
    throw NotConvergedError(cfg.max_iterations);
}

}  // namespace tmhd
