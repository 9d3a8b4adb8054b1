#include "tmhd/stepper.hpp"

#include <cmath>

#include "tmhd/norms.hpp"
#include "tmhd/operators.hpp"
#include "tmhd/parallel.hpp"
#include "tmhd/presets.hpp"
#include "tmhd/snapshot.hpp"

namespace tmhd {
namespace {

// phi1(z) = (e^z - 1)/z, phi2(z) = (e^z - 1 - z)/z^2, series below 1e-3 to
// avoid cancellation.
double phi1(double z) {
    if (std::abs(z) < 1e-3)
        return 1.0 + z * (0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z / 120.0)));
    return std::expm1(z) / z;
}

double phi2(double z) {
    if (std::abs(z) < 1e-3)
        return 0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z * (1.0 / 120.0 + z / 720.0)));
    return (std::expm1(z) - z) / (z * z);
}

// Assembled explicit part: P(advective) + P(taming) + forcing, Nyquist
// planes cleared. The taming term is skipped entirely (not just zero-valued)
// when the pointwise magnitude never exceeds the threshold, so runs that
// stay below it follow the untamed code path bit for bit.
StateFields explicit_part(const SpectralState& y, const TamingFunction* tf,
                          const StateFields* forcing, bool* active_out = nullptr) {
    RhsParts parts = rhs_full(y, tf, forcing);
    if (active_out != nullptr) *active_out = parts.taming_active;
    StateFields out;
    out.v = parts.advective.v;
    out.B = parts.advective.B;
    auto acc = [](VectorField& dst, const VectorField& add) {
        for (int c = 0; c < 3; ++c) {
            auto& d = dst[c].spec();
            const auto& s = add[c].spec();
            parallel_for(d.size(), [&](std::size_t lo, std::size_t hi) {
                for (std::size_t i = lo; i < hi; ++i) d[i] += s[i];
            });
        }
    };
    if (parts.taming_active) {
        acc(out.v, parts.taming.v);
        acc(out.B, parts.taming.B);
    }
    if (forcing != nullptr) {
        acc(out.v, parts.forcing.v);
        acc(out.B, parts.forcing.B);
    }
    zero_nyquist(out.v);
    zero_nyquist(out.B);
    return out;
}

void check_finite(const SpectralState& y, double t) {
    for (int c = 0; c < 3; ++c) {
        for (const cplx& x : y.v[c].spec())
            if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) throw BlowupError(t);
        for (const cplx& x : y.B[c].spec())
            if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) throw BlowupError(t);
    }
}

// y_{n+1} = e^{z} y + dt phi1(z) N(y) + dt phi2(z) (N(a) - N(y)),
// a = e^{z} y + dt phi1(z) N(y), z = -|kappa|^2 dt per mode.
SpectralState etd_rk2_step(const SpectralState& y, const TamingFunction* tf,
                           const StateFields* forcing, double dt, bool* active_out) {
    const Grid& g = y.grid();
    bool active1 = false;
    bool active2 = false;
    const StateFields n1 = explicit_part(y, tf, forcing, &active1);

    auto mode_combine = [&g, dt](const VectorField& yin, const VectorField& nin) {
        VectorField out(g, Rep::fourier);
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
                    const double z = -(kx * kx + ky * ky + kz * kz) * dt;
                    const double e = std::exp(z);
                    const double p1 = phi1(z);
                    for (int c = 0; c < 3; ++c) {
                        out[c].spec()[flat] =
                            e * yin[c].spec()[flat] + dt * p1 * nin[c].spec()[flat];
                    }
                }
            }
        });
        return out;
    };

    SpectralState a(g, Rep::fourier);
    a.v = mode_combine(y.v, n1.v);
    a.B = mode_combine(y.B, n1.B);
    a.time = y.time + dt;

    const StateFields n2 = explicit_part(a, tf, forcing, &active2);

    auto corrector = [&g, dt](VectorField& acc, const VectorField& nold, const VectorField& nnew) {
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
                    const double z = -(kx * kx + ky * ky + kz * kz) * dt;
                    const double p2 = phi2(z);
                    for (int c = 0; c < 3; ++c) {
                        acc[c].spec()[flat] +=
                            dt * p2 * (nnew[c].spec()[flat] - nold[c].spec()[flat]);
                    }
                }
            }
        });
    };
    corrector(a.v, n1.v, n2.v);
    corrector(a.B, n1.B, n2.B);

    if (active_out != nullptr) *active_out = active1 || active2;
    check_finite(a, a.time);
    return a;
}

VectorField heat_mult(const Grid& g, const VectorField& u, double t) {
    VectorField out(g, Rep::fourier);
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
                for (int c = 0; c < 3; ++c) out[c].spec()[flat] = e * u[c].spec()[flat];
            }
        }
    });
    return out;
}

SpectralState axpy_state(const Grid&, const SpectralState& base, const StateFields& add,
                         double alpha) {
    SpectralState out = base;
    for (int c = 0; c < 3; ++c) {
        auto& dv = out.v[c].spec();
        auto& db = out.B[c].spec();
        const auto& sv = add.v[c].spec();
        const auto& sb = add.B[c].spec();
        parallel_for(dv.size(), [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) {
                dv[i] += alpha * sv[i];
                db[i] += alpha * sb[i];
            }
        });
    }
    return out;
}

}  // namespace

SpectralState step(const SpectralState& y, const TamingFunction& tf, const StateFields* forcing,
                   double dt) {
    return etd_rk2_step(y, &tf, forcing, dt, nullptr);
}

SpectralState untamed_reference_step(const SpectralState& y, const StateFields* forcing, double dt) {
    return etd_rk2_step(y, nullptr, forcing, dt, nullptr);
}

// Integrating-factor RK4; exact diffusion between stages, classical weights.
SpectralState step_ifrk4(const SpectralState& y, const TamingFunction* tf,
                         const StateFields* forcing, double dt) {
    const Grid& g = y.grid();
    auto rhs = [&](const SpectralState& s) { return explicit_part(s, tf, forcing); };
    auto heat_state = [&](const SpectralState& s, double t) {
        SpectralState out = s;
        out.v = heat_mult(g, s.v, t);
        out.B = heat_mult(g, s.B, t);
        return out;
    };
    auto heat_fields = [&](const StateFields& s, double t) {
        StateFields out;
        out.v = heat_mult(g, s.v, t);
        out.B = heat_mult(g, s.B, t);
        return out;
    };

    const StateFields k1 = rhs(y);
    SpectralState u1 = heat_state(axpy_state(g, y, k1, 0.5 * dt), 0.5 * dt);
    u1.time = y.time + 0.5 * dt;
    const StateFields k2 = rhs(u1);

    SpectralState u2 = axpy_state(g, heat_state(y, 0.5 * dt), k2, 0.5 * dt);
    u2.time = y.time + 0.5 * dt;
    const StateFields k3 = rhs(u2);

    SpectralState u3 = axpy_state(g, heat_state(y, dt), heat_fields(k3, 0.5 * dt), dt);
    u3.time = y.time + dt;
    const StateFields k4 = rhs(u3);

    SpectralState out = heat_state(y, dt);
    out = axpy_state(g, out, heat_fields(k1, dt), dt / 6.0);
    out = axpy_state(g, out, heat_fields(k2, 0.5 * dt), dt / 3.0);
    out = axpy_state(g, out, heat_fields(k3, 0.5 * dt), dt / 3.0);
    out = axpy_state(g, out, k4, dt / 6.0);
    out.time = y.time + dt;
    check_finite(out, out.time);
    return out;
}

SpectralState make_initial_state(const SolverConfig& config) {
    const Grid g = Grid::make(config.grid.n, config.grid.box_length);
    const InitialSpec& init = config.initial;
    if (init.type == "taylor_green") return taylor_green(g, init.amplitude);
    if (init.type == "orszag_tang_3d") return orszag_tang_3d(g, init.amplitude);
    if (init.type == "random_band") return random_band(g, init.seed, init.k_max, init.amplitude);
    if (init.type == "file") {
        SpectralState y = load_snapshot_state(init.path);
        if (!(y.grid() == g)) throw std::invalid_argument("initial: snapshot grid does not match config");
        return leray_project(transform(y, Rep::fourier));
    }
    throw std::invalid_argument("initial: unknown type '" + init.type + "'");
}

RunResult run(const SolverConfig& config, const RunOptions& options) {
    const Grid g = Grid::make(config.grid.n, config.grid.box_length);
    const TamingFunction tf(config.taming_threshold);
    const TamingFunction* tf_ptr = options.tamed ? &tf : nullptr;

    RunResult result;
    result.forcing = make_forcing(g, config.forcing.type == "none" ? "none" : config.forcing.preset,
                                  config.forcing.type == "none" ? 0.0 : config.forcing.amplitude);
    bool forcing_nonzero = config.forcing.type != "none" && config.forcing.amplitude != 0.0;
    const StateFields* f_ptr = forcing_nonzero ? &result.forcing : nullptr;

    SpectralState y = make_initial_state(config);
    y.time = 0.0;

    DiagnosticsAccumulator acc;
    auto record_sample = [&](const SpectralState& s, bool active) {
        DiagnosticsRow row = acc.compute(s, tf_ptr, f_ptr, options.full_rows);
        row.taming_active = row.taming_active || active;
        result.taming_ever_active = result.taming_ever_active || row.taming_active;
        result.record.rows.push_back(row);
        if (options.keep_states) result.record.states.push_back(s);
        if (options.on_sample) options.on_sample(s, row);
    };

    record_sample(y, false);

    const TimeSpec& ts = config.time;
    const double t_end = ts.t_end;
    int step_index = 0;
    try {
        while (y.time < t_end - 1e-14) {
            double dt = ts.auto_dt
                            ? ts.cfl * g.dx() / std::max(1.0, lp_norm_inf(transform(y, Rep::physical)))
                            : ts.dt;
            dt = std::min(dt, ts.dt_max);
            dt = std::min(dt, t_end - y.time);
            bool active = false;
            if (ts.integrator == Integrator::etd_rk2) {
                y = etd_rk2_step(y, tf_ptr, f_ptr, dt, &active);
            } else {
                const SpectralState yp = transform(y, Rep::physical);
                active = tf_ptr != nullptr && max_pointwise_magnitude_sq(yp) > tf.threshold();
                y = step_ifrk4(y, tf_ptr, f_ptr, dt);
            }
            ++step_index;
            const bool at_end = y.time >= t_end - 1e-14;
            if (at_end || (config.output.every_steps > 0 && step_index % config.output.every_steps == 0)) {
                record_sample(y, active);
            } else {
                result.taming_ever_active = result.taming_ever_active || active;
            }
        }
        result.final_state = y;
    } catch (const BlowupError& err) {
        result.status = RunStatus::blew_up;
        result.blowup_time = err.time;
    }
    return result;
}

}  // namespace tmhd
