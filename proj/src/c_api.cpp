#include "tmhd/tmhd.h"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>

#include "tmhd/config.hpp"
#include "tmhd/galerkin.hpp"
#include "tmhd/mild.hpp"
#include "tmhd/norms.hpp"
#include "tmhd/operators.hpp"
#include "tmhd/presets.hpp"
#include "tmhd/snapshot.hpp"
#include "tmhd/stepper.hpp"
#include "tmhd/sweep.hpp"

using namespace tmhd;

extern "C" {
struct tmhd_config {
    SolverConfig cfg;
};
struct tmhd_result {
    TrajectoryRecord record;
};
}

namespace {

thread_local std::string g_last_error;

tmhd_status fail(tmhd_status code, const std::string& message) {
    g_last_error = message;
    return code;
}

template <typename Fn>
tmhd_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const BlowupError& e) {
        return fail(TMHD_BLOWUP, e.what());
    } catch (const NotConvergedError& e) {
        return fail(TMHD_NOT_CONVERGED, e.what());
    } catch (const std::exception& e) {
        return fail(TMHD_ERROR, e.what());
    } catch (...) {
        return fail(TMHD_ERROR, "unknown error");
    }
}

void write_run_outputs(const SolverConfig& cfg, const RunResult& result, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    write_diagnostics_csv(result.record, out_dir + "/diagnostics.csv");
    if (cfg.output.snapshots) {
        if (cfg.output.snapshot_every > 0) {
            for (std::size_t i = 0; i < result.record.states.size(); ++i) {
                char name[64];
                std::snprintf(name, sizeof name, "/state_%06zu.tmhd", i);
                save_snapshot(make_snapshot(result.record.states[i], cfg.taming_threshold),
                              out_dir + name);
            }
        }
        if (result.status == RunStatus::completed)
            save_snapshot(make_snapshot(result.final_state, cfg.taming_threshold),
                          out_dir + "/state_final.tmhd");
    }
}

}  // namespace

extern "C" {

const char* tmhd_version(void) { return "1.0.0"; }

const char* tmhd_last_error(void) { return g_last_error.c_str(); }

tmhd_status tmhd_config_load(const char* path, tmhd_config** out) {
    if (path == nullptr || out == nullptr) return fail(TMHD_ERROR, "null argument");
    return guarded([&] {
        auto* handle = new tmhd_config{load_config(path)};
        *out = handle;
        return TMHD_OK;
    });
}

tmhd_status tmhd_config_parse(const char* text, tmhd_config** out) {
    if (text == nullptr || out == nullptr) return fail(TMHD_ERROR, "null argument");
    return guarded([&] {
        auto* handle = new tmhd_config{parse_config(text)};
        *out = handle;
        return TMHD_OK;
    });
}

tmhd_status tmhd_config_set(tmhd_config* cfg, const char* key, const char* value) {
    if (cfg == nullptr || key == nullptr || value == nullptr) return fail(TMHD_ERROR, "null argument");
    return guarded([&] {
        const std::string qual(key);
        const auto dot = qual.find('.');
        if (dot == std::string::npos)
            throw std::invalid_argument("config: key must be section.key");
        apply_config_kv(cfg->cfg, qual.substr(0, dot), qual.substr(dot + 1), value);
        validate_config(cfg->cfg);
        return TMHD_OK;
    });
}

void tmhd_config_free(tmhd_config* cfg) { delete cfg; }

tmhd_status tmhd_run(const tmhd_config* cfg, const char* out_dir, tmhd_result** out) {
    if (cfg == nullptr) return fail(TMHD_ERROR, "null config");
    return guarded([&]() -> tmhd_status {
        RunOptions opts;
        opts.keep_states = cfg->cfg.output.snapshots && cfg->cfg.output.snapshot_every > 0;
        RunResult result = run(cfg->cfg, opts);
        if (out_dir != nullptr) write_run_outputs(cfg->cfg, result, out_dir);
        if (out != nullptr) *out = new tmhd_result{std::move(result.record)};
        if (result.status == RunStatus::blew_up)
            return fail(TMHD_BLOWUP, "blow-up at t = " + std::to_string(result.blowup_time) +
                                         "; partial diagnostics retained");
        return TMHD_OK;
    });
}

size_t tmhd_result_rows(const tmhd_result* res) { return res == nullptr ? 0 : res->record.rows.size(); }

size_t tmhd_result_cols(const tmhd_result* res) { return res == nullptr ? 0 : 15; }

const char* tmhd_result_header(const tmhd_result* res) {
    (void)res;
    return kDiagnosticsCsvHeader;
}

tmhd_status tmhd_result_get(const tmhd_result* res, size_t row, double* values, size_t count) {
    if (res == nullptr || values == nullptr) return fail(TMHD_ERROR, "null argument");
    if (row >= res->record.rows.size()) return fail(TMHD_ERROR, "row out of range");
    const DiagnosticsRow& r = res->record.rows[row];
    const double cols[15] = {r.t,     r.energy, r.grad_energy, r.h1,        r.h2,
                             r.taming_dissipation, r.wg_vv,  r.wg_BB,       r.wg_vB,     r.wg_Bv,
                             r.div_v_max,          r.div_B_max, r.p_l95,    r.pi_l95,
                             r.energy_residual};
    for (size_t i = 0; i < count && i < 15; ++i) values[i] = cols[i];
    return TMHD_OK;
}

void tmhd_result_free(tmhd_result* res) { delete res; }

tmhd_status tmhd_sweep_n(const tmhd_config* cfg, const double* n_list, size_t count,
                         const char* out_csv) {
    if (cfg == nullptr || n_list == nullptr || count == 0) return fail(TMHD_ERROR, "null argument");
    return guarded([&] {
        SolverConfig base = cfg->cfg;
        if (base.time.auto_dt) {
            base.time.auto_dt = false;
            base.time.dt = std::min(1e-3, base.time.dt_max);
        }
        const SweepReport report = n_sweep(base, std::vector<double>(n_list, n_list + count));
        if (out_csv != nullptr) write_sweep_csv(report, out_csv);
        return TMHD_OK;
    });
}

tmhd_status tmhd_galerkin_check(const tmhd_config* cfg, int modes, const char* out_csv,
                                double* rel_l2_error) {
    if (cfg == nullptr) return fail(TMHD_ERROR, "null config");
    return guarded([&] {
        SolverConfig base = cfg->cfg;
        if (base.time.auto_dt) {
            base.time.auto_dt = false;
            base.time.dt = 2.5e-4;
        }
        const Grid grid = Grid::make(base.grid.n, base.grid.box_length);
        const int n_modes = modes <= 0 ? GalerkinBasis::max_modes(grid) : modes;

        RunOptions opts;
        opts.keep_states = true;
        const RunResult spectral = run(base, opts);
        if (spectral.status != RunStatus::completed) throw BlowupError(spectral.blowup_time);

        GalerkinBasis basis = GalerkinBasis::build(grid, n_modes);
        const SpectralState y0 = make_initial_state(base);
        const bool forced = base.forcing.type != "none" && base.forcing.amplitude != 0.0;
        GalerkinSystem system(std::move(basis), TamingFunction(base.taming_threshold),
                              forced ? &spectral.forcing : nullptr);
        const double gdt = std::min(1e-3, base.time.dt);
        const GalerkinTrajectory gt =
            integrate_galerkin(system, system.basis.coefficients(y0), base.time.t_end, gdt);

        // Compare at the spectral output times (final sample in particular).
        std::FILE* f = out_csv != nullptr ? std::fopen(out_csv, "wb") : nullptr;
        if (f != nullptr) std::fprintf(f, "t,rel_l2_difference\n");
        double final_rel = 0.0;
        for (std::size_t i = 0; i < spectral.record.states.size(); ++i) {
            const SpectralState& ys = spectral.record.states[i];
            // locate the nearest Galerkin sample
            std::size_t j = 0;
            double best = 1e300;
            for (std::size_t q = 0; q < gt.times.size(); ++q) {
                const double d = std::abs(gt.times[q] - ys.time);
                if (d < best) {
                    best = d;
                    j = q;
                }
            }
            if (best > 1e-9) continue;
            const SpectralState yg = system.basis.assemble(gt.coeffs[j]);
            const double rel =
                state_l2_distance(ys, yg) / std::max(1e-300, sobolev_norm(ys, 0));
            if (f != nullptr) std::fprintf(f, "%.17g,%.17g\n", ys.time, rel);
            final_rel = rel;
        }
        if (f != nullptr) std::fclose(f);
        if (rel_l2_error != nullptr) *rel_l2_error = final_rel;
        return TMHD_OK;
    });
}

tmhd_status tmhd_mild_check(const tmhd_config* cfg, double t_end, int nodes, const char* out_csv,
                            double* rel_l2_diff, int* iterations) {
    if (cfg == nullptr) return fail(TMHD_ERROR, "null config");
    return guarded([&] {
        SolverConfig base = cfg->cfg;
        base.time.t_end = t_end;
        base.time.auto_dt = false;
        base.time.dt = t_end / (2.0 * nodes);
        base.output.every_steps = 2;  // stepper samples land on the quadrature nodes

        MildConfig mcfg;
        mcfg.nodes = nodes;
        const SpectralState y0 = make_initial_state(base);
        const Grid grid = y0.grid();
        const StateFields forcing = make_forcing(
            grid, base.forcing.type == "none" ? "none" : base.forcing.preset,
            base.forcing.type == "none" ? 0.0 : base.forcing.amplitude);
        const bool forced = base.forcing.type != "none" && base.forcing.amplitude != 0.0;
        const TamingFunction tf(base.taming_threshold);
        const PicardResult picard = picard_solve(y0, tf, forced ? &forcing : nullptr, t_end, mcfg);

        RunOptions opts;
        opts.keep_states = true;
        const RunResult spectral = run(base, opts);
        if (spectral.status != RunStatus::completed) throw BlowupError(spectral.blowup_time);

        std::FILE* f = out_csv != nullptr ? std::fopen(out_csv, "wb") : nullptr;
        if (f != nullptr) std::fprintf(f, "t,rel_l2_difference\n");
        double final_rel = 0.0;
        for (const SpectralState& ys : spectral.record.states) {
            const int node = static_cast<int>(std::llround(ys.time / picard.trajectory.h));
            if (node < 0 || node >= picard.trajectory.count()) continue;
            if (std::abs(picard.trajectory.time(node) - ys.time) > 1e-9) continue;
            const double rel = state_l2_distance(ys, picard.trajectory.nodes[node]) /
                               std::max(1e-300, sobolev_norm(ys, 0));
            if (f != nullptr) std::fprintf(f, "%.17g,%.17g\n", ys.time, rel);
            final_rel = rel;
        }
        if (f != nullptr) std::fclose(f);
        if (rel_l2_diff != nullptr) *rel_l2_diff = final_rel;
        if (iterations != nullptr) *iterations = picard.iterations;
        return TMHD_OK;
    });
}

tmhd_status tmhd_diagnose(const char* snapshot_path, char* report, size_t report_capacity) {
    if (snapshot_path == nullptr) return fail(TMHD_ERROR, "null snapshot path");
    std::string text;
    const tmhd_status status = guarded([&]() -> tmhd_status {
        const Snapshot snap = load_snapshot(snapshot_path);
        SpectralState y = transform(load_snapshot_state(snapshot_path), Rep::fourier);
        const TamingFunction tf(snap.taming_threshold > 0.0 ? snap.taming_threshold : 1.0);

        bool ok = true;
        auto check = [&](const std::string& name, bool pass, double value, double limit) {
            char line[160];
            std::snprintf(line, sizeof line, "[%s] %s (value %.3e, limit %.3e)\n",
                          pass ? "ok" : "FAIL", name.c_str(), value, limit);
            text += line;
            ok = ok && pass;
        };

        const double scale = 1.0 + sobolev_norm(y, 0);

        bool finite = true;
        for (int c = 0; c < 3 && finite; ++c) {
            for (const cplx& x : y.v[c].spec())
                if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) { finite = false; break; }
            for (const cplx& x : y.B[c].spec())
                if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) { finite = false; break; }
        }
        check("finite field values", finite, finite ? 0.0 : 1.0, 0.0);

        if (finite) {
            const double div_v = max_divergence(y.v);
            const double div_B = max_divergence(y.B);
            check("divergence-free velocity (max spectral divergence)", div_v <= 1e-10 * scale,
                  div_v, 1e-10 * scale);
            check("divergence-free magnetic field (max spectral divergence)", div_B <= 1e-10 * scale,
                  div_B, 1e-10 * scale);

            const double curl_scale =
                1.0 + sobolev_norm(y.v, 0) * sobolev_norm(y.B, 0);
            const double curl_res = curl_identity_residual(y.v, y.B);
            check("curl identity for the magnetic nonlinearity", curl_res <= 1e-10 * curl_scale,
                  curl_res, 1e-10 * curl_scale);

            const double lhs = rhs_pairing_h0(y, tf);
            const double rhs = rhs_pairing_h0_closed_form(y, tf);
            const double pair_scale = 1.0 + std::max(std::abs(lhs), std::abs(rhs));
            check("dissipation pairing two-sided agreement", std::abs(lhs - rhs) <= 1e-10 * pair_scale,
                  std::abs(lhs - rhs), 1e-10 * pair_scale);

            const PressureSources sources = pressure_sources(y, tf);
            const PressureFields pf = recover_pressures(y, tf);
            auto poisson_residual = [&](const ScalarField& p, const VectorField& src) {
                ScalarField lap = laplacian(p);
                ScalarField rhs_field = divergence(src);
                double num = 0.0, den = 1e-300;
                const auto& a = lap.spec();
                const auto& b = rhs_field.spec();
                for (std::size_t i = 0; i < a.size(); ++i) {
                    // k = 0 is gauge, skip
                    if (i == 0) continue;
                    num = std::max(num, std::abs(a[i] - b[i]));
                    den = std::max(den, std::abs(b[i]));
                }
                return num / den;
            };
            if (vector_l2_norm(sources.momentum) > 0.0) {
                const double pres = poisson_residual(pf.p, sources.momentum);
                check("kinematic pressure Poisson residual", pres <= 1e-10, pres, 1e-10);
            }
            if (vector_l2_norm(sources.magnetic) > 0.0) {
                const double pres = poisson_residual(pf.pi, sources.magnetic);
                check("magnetic pressure Poisson residual", pres <= 1e-10, pres, 1e-10);
            }
        }

        if (!ok) {
            g_last_error = "snapshot diagnostics failed:\n" + text;
            return TMHD_ASSERTION_FAILED;
        }
        return TMHD_OK;
    });
    if (report != nullptr && report_capacity > 0) {
        const size_t len = std::min(report_capacity - 1, text.size());
        std::memcpy(report, text.data(), len);
        report[len] = '\0';
    }
    return status;
}

}  // extern "C"
